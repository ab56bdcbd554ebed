#include <doctest.h>

#include <nspoly/corpus.hpp>
#include <nspoly/lattice.hpp>
#include <nspoly/polytope.hpp>

using namespace nspoly;

namespace {

Vec model_vec(const RationalModel& m) {
    Vec x(static_cast<int>(m.cells.size()));
    for (std::size_t i = 0; i < m.cells.size(); ++i) x(static_cast<int>(i)) = m.cells[i];
    return x;
}

}  // namespace

TEST_CASE("assembled (2,2,2) system: 4 normalization + 8 no-signalling rows, rank 8") {
    ConstraintSystem sys = assemble_constraints(bell_scenario());
    CHECK(sys.columns() == 16);
    CHECK(sys.rows() == 12);
    int norm = 0, ns = 0;
    for (RowTag t : sys.row_tags) (t == RowTag::Normalization ? norm : ns)++;
    CHECK(norm == 4);
    CHECK(ns == 8);
    CHECK(matrix_rank(sys.a) == 8);
    CHECK(sys.columns() - matrix_rank(sys.a) == 8);  // polytope dimension
    for (int i = 0; i < sys.rows(); ++i)
        for (int j = 0; j < sys.columns(); ++j)
            CHECK((sys.a(i, j) == 0 || sys.a(i, j) == 1 || sys.a(i, j) == -1));
}

TEST_CASE("assembled pairwise three-outcome system: 6 + 36 rows, dimension 32") {
    ConstraintSystem sys = assemble_constraints(model_s_scenario());
    CHECK(sys.columns() == 54);
    CHECK(sys.rows() == 42);
    int ns = 0;
    for (RowTag t : sys.row_tags)
        if (t == RowTag::NoSignalling) ++ns;
    CHECK(ns == 36);
    CHECK(matrix_rank(sys.a) == 22);
    CHECK(sys.columns() - matrix_rank(sys.a) == 32);
}

TEST_CASE("membership is exact") {
    auto bell = corpus_bell_qm();
    ConstraintSystem sys = assemble_constraints(bell.scenario);
    Vec x = model_vec(*bell.rational_model);
    CHECK(membership(sys, x));
    x(0) += Rational(1, 1000000);
    CHECK_FALSE(membership(sys, x));
    x(0) = Rational(-1, 1000000);
    CHECK_FALSE(membership(sys, x));
}

TEST_CASE("boundedness check accepts assembled systems and rejects open cones") {
    ConstraintSystem sys = assemble_constraints(bell_scenario());
    CHECK(is_bounded(sys));
    ConstraintSystem cone;
    cone.a = Mat::Zero(1, 2);
    cone.a(0, 0) = 1;
    cone.a(0, 1) = -1;
    cone.b = Vec::Zero(1);
    cone.column_labels = {"x", "y"};
    cone.row_tags = {RowTag::User};
    cone.row_notes = {""};
    CHECK_FALSE(is_bounded(cone));
    CHECK_THROWS_AS(enumerate_vertices(cone), std::invalid_argument);
}

TEST_CASE("support closure computes the largest achievable sub-support") {
    ConstraintSystem sys = assemble_constraints(bell_scenario());
    SupportVector full(16);
    full.set();
    ClosureResult c = support_closure(sys, full);
    REQUIRE(c.nonempty);
    CHECK(c.closure == full);
    CHECK(membership(sys, c.witness));
    CHECK(vector_support(c.witness) == full);
    CHECK(is_achievable(sys, full));

    // zeroing one cell of a deterministic support forces the context empty:
    // nothing below is achievable
    auto verts = enumerate_vertices(sys);
    SupportVector vs = verts.front().support;
    int first = static_cast<int>(vs.find_first());
    SupportVector cut = vs;
    cut.reset(first);
    ClosureResult c2 = support_closure(sys, cut);
    CHECK_FALSE(c2.nonempty);
    CHECK_FALSE(is_achievable(sys, cut));

    CHECK(is_achievable(sys, vs));
    CHECK(support_closure(sys, vs).closure == vs);
}

TEST_CASE("face dimension and carrier face") {
    auto bell = corpus_bell_qm();
    ConstraintSystem sys = assemble_constraints(bell.scenario);
    SupportVector full(16);
    full.set();
    CHECK(face_dimension(sys, full) == 8);
    Face top = carrier_face(sys, model_vec(uniform_model(bell.scenario)));
    CHECK(top.support == full);
    CHECK(top.dimension == 8);

    Face f = carrier_face(sys, model_vec(*bell.rational_model));
    CHECK(f.support.count() == 14);
    CHECK(f.dimension < 8);
    CHECK(f.dimension >= 0);
    CHECK(is_achievable(sys, f.support));

    auto verts = enumerate_vertices(sys);
    Face v = carrier_face(sys, verts.front().point);
    CHECK(v.dimension == 0);

    SupportVector bogus = verts.front().support;
    bogus.reset(static_cast<int>(bogus.find_first()));
    CHECK_THROWS_AS(face_dimension(sys, bogus), std::invalid_argument);
}

TEST_CASE("relative interior membership by the segment-extension test") {
    auto bell = corpus_bell_qm();
    ConstraintSystem sys = assemble_constraints(bell.scenario);
    auto verts = enumerate_vertices(sys);
    SupportVector full(16);
    full.set();
    std::vector<Vec> pts = face_vertex_points(verts, full);
    CHECK(pts.size() == verts.size());
    CHECK(relint_membership(sys, model_vec(uniform_model(bell.scenario)), full, pts));
    // a vertex sits on the boundary of the whole polytope
    CHECK_FALSE(relint_membership(sys, verts.front().point, full, pts));
    // but in the relative interior of its own (zero-dimensional) face
    CHECK(relint_membership(sys, verts.front().point, verts.front().support,
                            face_vertex_points(verts, verts.front().support)));
    // the quantum table is interior to its carrier but not to the polytope
    Vec x = model_vec(*bell.rational_model);
    Face f = carrier_face(sys, x);
    CHECK(relint_membership(sys, x, f.support, face_vertex_points(verts, f.support)));
    CHECK_FALSE(relint_membership(sys, x, full, pts));
}
