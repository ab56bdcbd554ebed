#ifndef NSPOLY_TESTS_PROPERTY_SUITES_HPP
#define NSPOLY_TESTS_PROPERTY_SUITES_HPP

// Randomized invariant suites shared by the property-test binary and the
// acceptance gate. Every suite takes the RNG by reference so a single fixed
// seed drives the whole run deterministically.

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include <nspoly/contextuality.hpp>
#include <nspoly/corpus.hpp>
#include <nspoly/lattice.hpp>
#include <nspoly/polytope.hpp>

#include "oracles.hpp"

namespace nspoly::testing {

constexpr unsigned kPropertySeed = 20240831;

struct VertexBank {
    std::string name;
    Scenario scenario;
    ConstraintSystem system;
    std::vector<Vertex> vertices;
};

/** Scenarios small enough for full vertex enumeration. */
inline std::vector<VertexBank> vertex_banks() {
    std::vector<VertexBank> banks;
    auto add = [&](std::string name, Scenario sc) {
        VertexBank b;
        b.name = std::move(name);
        b.system = assemble_constraints(sc);
        b.vertices = enumerate_vertices(b.system);
        b.scenario = std::move(sc);
        banks.push_back(std::move(b));
    };
    add("bell", bell_scenario());
    add("one-variable", Scenario({"A"}, {"0", "1"}, {{"A"}}));
    add("tetrahedron", Scenario({"A", "B"}, {"0", "1"}, {{"A", "B"}}));
    add("triangle", Scenario({"A", "B", "C"}, {"0", "1"}, {{"A", "B"}, {"B", "C"}, {"C", "A"}}));
    return banks;
}

inline Vec random_mixture(const std::vector<Vertex>& verts, std::mt19937_64& rng,
                          SupportVector* expected = nullptr) {
    std::uniform_int_distribution<int> howmany(1, 3);
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    std::uniform_int_distribution<int> num(1, 9);
    int k = howmany(rng);
    std::vector<const Vertex*> chosen;
    std::vector<Rational> weights;
    Rational total(0);
    for (int i = 0; i < k; ++i) {
        chosen.push_back(&verts[pick(rng)]);
        Rational w(num(rng), 10);
        weights.push_back(w);
        total += w;
    }
    Vec z = Vec::Zero(chosen.front()->point.size());
    SupportVector join(chosen.front()->support.size());
    for (int i = 0; i < k; ++i) {
        z += (weights[i] / total) * chosen[i]->point;
        join |= chosen[i]->support;
    }
    if (expected) *expected = join;
    return z;
}

/** supp(lambda x + (1 - lambda) y) = supp x v supp y on random vertex mixtures. */
inline bool suite_support_join(std::mt19937_64& rng, int trials_per_bank = 150) {
    for (const auto& bank : vertex_banks()) {
        for (int t = 0; t < trials_per_bank; ++t) {
            SupportVector expected;
            Vec z = random_mixture(bank.vertices, rng, &expected);
            if (vector_support(z) != expected) return false;
            if (!membership(bank.system, z)) return false;
        }
    }
    return true;
}

/** Possibilistic collapse of a no-signalling rational model is no-signalling. */
inline bool suite_collapse_ns(std::mt19937_64& rng, int trials_per_bank = 60) {
    for (const auto& bank : vertex_banks()) {
        for (int t = 0; t < trials_per_bank; ++t) {
            Vec z = random_mixture(bank.vertices, rng);
            std::vector<Rational> cells(z.data(), z.data() + z.size());
            RationalModel m = vector_to_model(bank.scenario, cells);
            if (!check_no_signalling(m).empty()) return false;
            if (!check_no_signalling(possibilistic_collapse(m)).empty()) return false;
        }
    }
    // plus the rational corpus entries themselves
    for (const auto& e : corpus_all())
        if (e.rational_model &&
            !check_no_signalling(possibilistic_collapse(*e.rational_model)).empty())
            return false;
    return true;
}

/**
 * F_x <= F_y iff supp x <= supp y on sampled pairs, with face inclusion
 * decided independently through vertex-set containment.
 */
inline bool suite_order_equivalence(std::mt19937_64& rng, int trials_per_bank = 60) {
    for (const auto& bank : vertex_banks()) {
        for (int t = 0; t < trials_per_bank; ++t) {
            Vec x = random_mixture(bank.vertices, rng);
            Vec y = random_mixture(bank.vertices, rng);
            SupportVector sx = vector_support(x), sy = vector_support(y);
            bool vertex_subset = true;
            for (const auto& v : bank.vertices)
                if (support_leq(v.support, sx) && !support_leq(v.support, sy)) {
                    vertex_subset = false;
                    break;
                }
            if (support_leq(sx, sy) != vertex_subset) return false;
        }
    }
    return true;
}

/** Every closure witness lies in the relative interior of its face (mu > 1 test). */
inline bool suite_relint(std::mt19937_64& rng, int trials_per_bank = 25) {
    for (const auto& bank : vertex_banks()) {
        std::uniform_int_distribution<std::size_t> pick(0, bank.vertices.size() - 1);
        for (int t = 0; t < trials_per_bank; ++t) {
            SupportVector sigma(bank.system.columns());
            int k = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < k; ++i) sigma |= bank.vertices[pick(rng)].support;
            ClosureResult c = support_closure(bank.system, sigma);
            if (!c.nonempty) return false;  // joins of vertex supports are achievable
            if (c.closure != sigma) return false;
            if (!relint_membership(bank.system, c.witness, sigma, bank.vertices)) return false;
            // and a vertex of a bigger face is never in that face's relint
            if (sigma.count() > bank.vertices[0].support.count()) {
                for (const auto& v : bank.vertices)
                    if (support_leq(v.support, sigma) && v.support != sigma) {
                        if (relint_membership(bank.system, v.point, sigma, bank.vertices))
                            return false;
                        break;
                    }
            }
        }
    }
    return true;
}

/**
 * Achievable strongly contextual supports in the four-variable, three-outcome
 * pairwise scenario. Full vertex enumeration there is out of reach, so the
 * sublattice below each support is built from the column-restricted system.
 */
inline std::vector<SupportVector> model_s_scenario_sc_supports() {
    Scenario sc = model_s_scenario();
    auto build = [&](const std::vector<std::vector<std::string>>& sections) {
        std::vector<bool> cells(sc.cell_count(), false);
        for (std::size_t c = 0; c < sections.size(); ++c)
            for (const auto& word : sections[c]) {
                Assignment a;
                a.vars = sc.contexts[c];
                for (char ch : word) a.vals.push_back(ch - '0');
                cells[sc.cell_index(static_cast<int>(c), a)] = true;
            }
        return model_support(BooleanModel(sc, cells));
    };
    // anti-correlated triangle on A,B,C with D pinned to 0, and the variant
    // with D free over {0,1}: both are supports of rational NS models
    return {
        build({{"01", "10"}, {"01", "10"}, {"00", "10"},
               {"01", "10"}, {"00", "10"}, {"00", "10"}}),
        build({{"01", "10"}, {"01", "10"}, {"00", "01", "10", "11"},
               {"01", "10"}, {"00", "01", "10", "11"}, {"00", "01", "10", "11"}}),
    };
}

/**
 * Strong contextuality is antitone in the support order: every lattice node
 * below a strongly contextual node is itself strongly contextual. Verified
 * with the independent backtracking search on every node of the sublattice
 * below each constructed SC support.
 */
inline bool suite_sc_antitone() {
    Scenario sc = model_s_scenario();
    ConstraintSystem sys = assemble_constraints(sc);
    for (const auto& sigma : model_s_scenario_sc_supports()) {
        if (!is_achievable(sys, sigma)) return false;
        if (!is_strongly_contextual(boolean_model_from_support(sc, sigma)).strongly_contextual)
            return false;
        // restrict to the sigma columns and build that face's own lattice
        std::vector<int> cols;
        for (int j = 0; j < sys.columns(); ++j)
            if (sigma.test(j)) cols.push_back(j);
        ConstraintSystem restricted;
        Mat ar(sys.rows(), static_cast<int>(cols.size()));
        for (int i = 0; i < sys.rows(); ++i)
            for (std::size_t jj = 0; jj < cols.size(); ++jj)
                ar(i, static_cast<int>(jj)) = sys.a(i, cols[jj]);
        ReducedSystem red = reduce_rows(ar, sys.b);
        if (!red.consistent) return false;
        restricted.a = red.a;
        restricted.b = red.b;
        restricted.column_labels.assign(cols.size(), "");
        restricted.row_tags.assign(red.a.rows(), RowTag::User);
        restricted.row_notes.assign(red.a.rows(), "");
        restricted.known_bounded = true;  // subset of a bounded polytope
        SupportLattice lat = support_lattice(restricted);
        for (std::size_t i = 1; i < lat.nodes.size(); ++i) {
            SupportVector full(sys.columns());
            for (std::size_t jj = 0; jj < cols.size(); ++jj)
                if (lat.nodes[i].support.test(jj)) full.set(cols[jj]);
            if (!support_leq(full, sigma)) return false;
            auto r = is_strongly_contextual(boolean_model_from_support(sc, full));
            if (!r.strongly_contextual) return false;
        }
    }
    return true;
}

/** Exact simplex agrees with the brute-force basic-solution oracle. */
inline bool suite_simplex_oracle(std::mt19937_64& rng, int trials = 200) {
    std::uniform_int_distribution<int> dim_m(1, 3), dim_n(2, 5), coef(-3, 3);
    for (int t = 0; t < trials; ++t) {
        int m = dim_m(rng), n = dim_n(rng);
        LPProblem p;
        p.a = Mat::Zero(m + 1, n);
        p.b = Vec::Zero(m + 1);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) p.a(i, j) = coef(rng);
            p.b(i) = coef(rng);
        }
        // bounding row sum x_j = K keeps the brute-force oracle sound
        for (int j = 0; j < n; ++j) p.a(m, j) = 1;
        p.b(m) = std::abs(coef(rng)) + 1;
        p.c = Vec::Zero(n);
        for (int j = 0; j < n; ++j) p.c(j) = coef(rng);
        p.maximize = (t % 2 == 0);
        LPResult got = lp_solve(p);
        BruteForceLP want = brute_force_lp(p);
        if (want.feasible != (got.status == LPStatus::Optimal)) return false;
        if (want.feasible && want.value != got.value) return false;
    }
    return true;
}

}  // namespace nspoly::testing

#endif  // NSPOLY_TESTS_PROPERTY_SUITES_HPP
