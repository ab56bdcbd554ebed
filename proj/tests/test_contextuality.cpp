#include <doctest.h>

#include <nspoly/bellize.hpp>
#include <nspoly/contextuality.hpp>
#include <nspoly/corpus.hpp>

using namespace nspoly;

namespace {

BooleanModel pr_box_support() {
    Scenario sc = bell_scenario();
    std::vector<bool> cells(16, false);
    auto set = [&](int c, int v0, int v1) {
        Assignment a;
        a.vars = sc.contexts[c];
        a.vals = {v0, v1};
        cells[sc.cell_index(c, a)] = true;
    };
    set(0, 0, 0); set(0, 1, 1);
    set(1, 0, 0); set(1, 1, 1);
    set(2, 0, 0); set(2, 1, 1);
    set(3, 0, 1); set(3, 1, 0);  // anti-correlated on the primed pair
    return BooleanModel(sc, cells);
}

}  // namespace

TEST_CASE("the (2,2,2) quantum table is neither strongly nor logically contextual") {
    auto bell = corpus_bell_qm();
    BooleanModel p = possibilistic_collapse(*bell.rational_model);
    auto sc = is_strongly_contextual(p);
    CHECK_FALSE(sc.strongly_contextual);
    REQUIRE(sc.witness.has_value());
    // the witness restricts to a possible section in every context
    for (std::size_t c = 0; c < p.scenario.contexts.size(); ++c)
        CHECK(p.at(static_cast<int>(c),
                   restrict_assignment(*sc.witness, p.scenario.contexts[c])));
    CHECK_FALSE(is_logically_contextual(*bell.rational_model).logically_contextual);
}

TEST_CASE("the (2,2,2) quantum table is nonlocal") {
    auto bell = corpus_bell_qm();
    CHECK_FALSE(is_local(*bell.rational_model).has_value());
    // while any mixture of deterministic models is local, with exact weights back
    Scenario sc = bell.scenario;
    RationalModel mix = convex_combination(
        {deterministic_model(sc, sc.global_assignment_at(3)),
         deterministic_model(sc, sc.global_assignment_at(9))},
        {Rational(1, 4), Rational(3, 4)});
    auto dec = is_local(mix);
    REQUIRE(dec.has_value());
    Rational total(0);
    std::vector<RationalModel> parts;
    std::vector<Rational> weights;
    for (std::size_t g = 0; g < dec->weights.size(); ++g) {
        total += dec->weights[g];
        if (dec->weights[g] != 0) {
            parts.push_back(deterministic_model(sc, sc.global_assignment_at(
                static_cast<std::int64_t>(g))));
            weights.push_back(dec->weights[g]);
        }
    }
    CHECK(total == 1);
    CHECK(convex_combination(parts, weights) == mix);
}

TEST_CASE("vertex classification: 16 deterministic + 8 strongly contextual") {
    auto classes = classify_vertices(bell_scenario());
    REQUIRE(classes.size() == 24);
    int ld = 0, msc = 0;
    for (const auto& [v, cls] : classes) {
        if (cls.tag == VertexTag::LocalDeterministic) {
            ++ld;
            CHECK(cls.witness.has_value());
        } else {
            ++msc;
            CHECK(v.support.count() == 8);
            for (int i = 0; i < v.point.size(); ++i)
                CHECK((v.point(i) == 0 || v.point(i) == Rational(1, 2)));
        }
    }
    CHECK(ld == 16);
    CHECK(msc == 8);
}

TEST_CASE("local deterministic models: one per global assignment on (2,2,2)") {
    auto ld = local_deterministic_models(bell_scenario());
    CHECK(ld.size() == 16);  // all variables occur in contexts, no collapse
    for (const auto& e : ld) {
        CHECK(check_no_signalling(e.model).empty());
        CHECK(e.witnesses.size() == 1);
        CHECK(is_local(e.model).has_value());
    }
}

TEST_CASE("PR-box support: strongly contextual yet realizable") {
    BooleanModel pr = pr_box_support();
    CHECK(check_no_signalling(pr).empty());
    CHECK(is_strongly_contextual(pr).strongly_contextual);
    CHECK(is_logically_contextual(pr).logically_contextual);
    auto witness = is_realizable(pr);
    REQUIRE(witness.has_value());
    CHECK(possibilistic_collapse(*witness) == pr);
    CHECK(check_no_signalling(*witness).empty());
    CHECK(is_minimal_boolean_ns(pr));
}

TEST_CASE("counterexample model: strongly contextual, minimal, not realizable") {
    auto s = corpus_model_s();
    const BooleanModel& m = *s.boolean_model;
    CHECK(check_no_signalling(m).empty());
    CHECK(is_strongly_contextual(m).strongly_contextual);
    CHECK(is_minimal_boolean_ns(m));
    CHECK_FALSE(is_realizable(m).has_value());
}

TEST_CASE("minimality: full supports are not minimal, deterministic supports are") {
    Scenario sc = bell_scenario();
    std::vector<bool> all(16, true);
    CHECK_FALSE(is_minimal_boolean_ns(BooleanModel(sc, all)));
    RationalModel d = deterministic_model(sc, sc.global_assignment_at(6));
    CHECK(is_minimal_boolean_ns(possibilistic_collapse(d)));
    // signalling boolean input is rejected
    Scenario two({"A", "B"}, {"0", "1"}, {{"A"}, {"A", "B"}});
    std::vector<bool> cells(two.cell_count(), false);
    cells[0] = true;                          // A -> 0
    cells[two.context_offset(1) + 3] = true;  // (A,B) -> 11
    CHECK_THROWS_AS(is_minimal_boolean_ns(BooleanModel(two, cells)), std::invalid_argument);
}

TEST_CASE("the 18-vector one-hot model is strongly contextual") {
    auto ks = corpus_ks_18();
    CHECK(is_strongly_contextual(*ks.boolean_model).strongly_contextual);
    CHECK(is_logically_contextual(*ks.boolean_model).logically_contextual);
}

TEST_CASE("strong contextuality implies logical contextuality on the corpus") {
    for (const auto& e : corpus_all()) {
        BooleanModel m = e.boolean_model ? *e.boolean_model
                                         : possibilistic_collapse(*e.rational_model);
        if (is_strongly_contextual(m).strongly_contextual)
            CHECK(is_logically_contextual(m).logically_contextual);
    }
}

TEST_CASE("realizability rejects signalling boolean input") {
    Scenario two({"A", "B"}, {"0", "1"}, {{"A"}, {"A", "B"}});
    std::vector<bool> cells(two.cell_count(), false);
    cells[0] = true;                          // A -> 0 possible only
    cells[two.context_offset(1) + 3] = true;  // (A,B) -> 11 contradicts it
    CHECK_THROWS_AS(is_realizable(BooleanModel(two, cells)), std::invalid_argument);
}
