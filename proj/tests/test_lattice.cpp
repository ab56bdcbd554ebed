#include <doctest.h>

#include <nspoly/corpus.hpp>
#include <nspoly/lattice.hpp>

#include "oracles.hpp"

using namespace nspoly;

TEST_CASE("pruned and unpruned vertex enumeration agree on small scenarios") {
    for (Scenario sc : {Scenario({"A"}, {"0", "1"}, {{"A"}}),
                        Scenario({"A", "B"}, {"0", "1"}, {{"A", "B"}}),
                        Scenario({"A", "B", "C"}, {"0", "1"}, {{"A", "B"}, {"B", "C"}, {"C", "A"}}),
                        bell_scenario()}) {
        ConstraintSystem sys = assemble_constraints(sc);
        auto pruned = enumerate_vertices(sys, true);
        auto oracle = enumerate_vertices(sys, false);
        REQUIRE(pruned.size() == oracle.size());
        for (std::size_t i = 0; i < pruned.size(); ++i) {
            CHECK(pruned[i].support == oracle[i].support);
            CHECK(pruned[i].point == oracle[i].point);
            CHECK(membership(sys, pruned[i].point));
            CHECK(vector_support(pruned[i].point) == pruned[i].support);
        }
    }
}

TEST_CASE("the (2,2,2) polytope has 24 vertices") {
    ConstraintSystem sys = assemble_constraints(bell_scenario());
    auto verts = enumerate_vertices(sys);
    CHECK(verts.size() == 24);
    int halves = 0;
    for (const auto& v : verts) {
        bool dichotomic = true;
        for (int i = 0; i < v.point.size(); ++i)
            if (v.point(i) != 0 && v.point(i) != Rational(1, 2)) dichotomic = false;
        if (dichotomic && v.support.count() == 8) ++halves;
    }
    CHECK(halves == 8);  // the PR-box-type vertices
}

TEST_CASE("support lattice equals the zero-set face enumeration: one variable") {
    ConstraintSystem sys = assemble_constraints(Scenario({"A"}, {"0", "1"}, {{"A"}}));
    SupportLattice lat = support_lattice(sys, /*verify_closure=*/true);
    CHECK(lat.nodes.size() == 4);  // bottom, two vertices, top segment
    OracleLattice oracle = face_lattice_oracle(sys);
    CHECK(oracle.faces.size() == 4);
    CHECK(testing::order_isomorphic(lat, oracle));
    CHECK(check_lattice_properties(lat).all_pass());
}

TEST_CASE("support lattice equals the zero-set face enumeration: tetrahedron") {
    ConstraintSystem sys = assemble_constraints(Scenario({"A", "B"}, {"0", "1"}, {{"A", "B"}}));
    SupportLattice lat = support_lattice(sys, /*verify_closure=*/true);
    CHECK(lat.nodes.size() == 16);  // boolean lattice of the 3-simplex
    OracleLattice oracle = face_lattice_oracle(sys);
    CHECK(testing::order_isomorphic(lat, oracle));
    auto rep = check_lattice_properties(lat);
    CHECK(rep.all_pass());
    CHECK(lat.nodes[lat.top].dimension == 3);
}

TEST_CASE("support lattice equals the zero-set face enumeration: (2,2,2)") {
    ConstraintSystem sys = assemble_constraints(bell_scenario());
    SupportLattice lat = support_lattice(sys);
    OracleLattice oracle = face_lattice_oracle(sys);
    CHECK(lat.nodes.size() == oracle.faces.size());
    CHECK(testing::order_isomorphic(lat, oracle));
    auto rep = check_lattice_properties(lat);
    CHECK(rep.join_closed);
    CHECK(rep.atomistic);
    CHECK(rep.coatomistic);
    CHECK(rep.graded);
    CHECK(rep.unique_top);
    CHECK(rep.unique_bottom);
}

TEST_CASE("joins and meets stay inside the lattice and agree across routes") {
    ConstraintSystem sys = assemble_constraints(bell_scenario());
    SupportLattice lat = support_lattice(sys);
    const int n = static_cast<int>(lat.nodes.size());
    for (int i = 0; i < n; i += 7)
        for (int j = 0; j < n; j += 11) {
            int join = lattice_join(lat, i, j);
            CHECK(support_leq(lat.nodes[i].support, lat.nodes[join].support));
            CHECK(support_leq(lat.nodes[j].support, lat.nodes[join].support));
            int meet_lp = lattice_meet(sys, lat, i, j);
            int meet_order = lattice_meet_by_order(lat, i, j);
            CHECK(meet_lp == meet_order);
        }
}

TEST_CASE("witnesses are relative-interior points of their nodes") {
    ConstraintSystem sys = assemble_constraints(bell_scenario());
    SupportLattice lat = support_lattice(sys);
    for (std::size_t i = 1; i < lat.nodes.size(); i += 9) {
        CHECK(membership(sys, lat.nodes[i].witness));
        CHECK(vector_support(lat.nodes[i].witness) == lat.nodes[i].support);
        CHECK(relint_membership(sys, lat.nodes[i].witness, lat.nodes[i].support, lat.vertices));
    }
}

TEST_CASE("lattice checker rejects mutants") {
    ConstraintSystem sys = assemble_constraints(Scenario({"A", "B"}, {"0", "1"}, {{"A", "B"}}));
    SupportLattice lat = support_lattice(sys);
    REQUIRE(check_lattice_properties(lat).all_pass());

    // drop an interior node: join-closure or atomisticity must break
    SupportLattice cut = lat;
    std::size_t victim = 0;
    for (std::size_t i = 1; i < cut.nodes.size(); ++i)
        if (cut.nodes[i].support.count() == 2) { victim = i; break; }
    REQUIRE(victim > 0);
    cut.nodes.erase(cut.nodes.begin() + static_cast<long>(victim));
    cut.top = static_cast<int>(cut.nodes.size()) - 1;
    CHECK_FALSE(check_lattice_properties(cut).all_pass());

    // corrupt a dimension: gradedness must break
    SupportLattice skew = lat;
    skew.nodes[skew.top].dimension += 1;
    auto rep = check_lattice_properties(skew);
    CHECK_FALSE(rep.graded);
}

TEST_CASE("degenerate systems yield the bottom-only lattice") {
    ConstraintSystem sys;
    sys.a = Mat::Zero(1, 2);
    sys.a(0, 0) = 1;
    sys.a(0, 1) = 1;
    sys.b = Vec::Zero(1);
    sys.b(0) = -1;  // x0 + x1 = -1, x >= 0: empty
    sys.column_labels = {"x", "y"};
    sys.row_tags = {RowTag::User};
    sys.row_notes = {""};
    sys.known_bounded = true;
    SupportLattice lat = support_lattice(sys);
    CHECK(lat.nodes.size() == 1);
    CHECK(lat.nodes[0].is_bottom);
}

TEST_CASE("face oracle size guard") {
    ConstraintSystem sys = assemble_constraints(model_s_scenario());
    CHECK_THROWS_AS(face_lattice_oracle(sys), std::invalid_argument);
}
