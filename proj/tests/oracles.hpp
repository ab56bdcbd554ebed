#ifndef NSPOLY_TESTS_ORACLES_HPP
#define NSPOLY_TESTS_ORACLES_HPP

// Independent reference implementations used to cross-check the library:
// a brute-force basic-solution LP oracle and an order-isomorphism checker
// between the support lattice and the zero-set face enumeration.

#include <map>
#include <optional>
#include <vector>

#include <nspoly/lattice.hpp>
#include <nspoly/linalg.hpp>
#include <nspoly/polytope.hpp>

namespace nspoly::testing {

struct BruteForceLP {
    bool feasible = false;
    Rational value;  // optimum in the caller's sense, when feasible
};

/**
 * Enumerates every basic feasible solution (independent column subsets of
 * size rank(A)) and takes the best objective. Only valid for systems whose
 * feasible set is bounded: a nonempty standard-form region always contains a
 * BFS, and a bounded LP attains its optimum at one.
 */
inline BruteForceLP brute_force_lp(const LPProblem& p) {
    const int n = static_cast<int>(p.a.cols());
    const int r = matrix_rank(p.a);
    BruteForceLP out;
    std::vector<int> cols;
    auto consider = [&]() {
        Mat ar(p.a.rows(), static_cast<int>(cols.size()));
        for (int i = 0; i < p.a.rows(); ++i)
            for (std::size_t jj = 0; jj < cols.size(); ++jj)
                ar(i, static_cast<int>(jj)) = p.a(i, cols[jj]);
        if (matrix_rank(ar) != static_cast<int>(cols.size())) return;
        AffineSolution sol = solve_affine(ar, p.b);
        if (!sol.consistent || sol.nullspace.cols() != 0) return;
        for (std::size_t jj = 0; jj < cols.size(); ++jj)
            if (sol.particular(static_cast<int>(jj)) < 0) return;
        Rational val(0);
        for (std::size_t jj = 0; jj < cols.size(); ++jj)
            val += p.c(cols[jj]) * sol.particular(static_cast<int>(jj));
        bool better = p.maximize ? val > out.value : val < out.value;
        if (!out.feasible || better) out.value = val;
        out.feasible = true;
    };
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cols.size()) == r) {
            consider();
            return;
        }
        if (n - start < r - static_cast<int>(cols.size())) return;
        for (int j = start; j < n; ++j) {
            cols.push_back(j);
            self(self, j + 1);
            cols.pop_back();
        }
    };
    if (r == 0) {
        // A = 0: feasible iff b = 0, optimum at x = 0
        bool zero = true;
        for (int i = 0; i < p.b.size(); ++i)
            if (p.b(i) != 0) zero = false;
        out.feasible = zero;
        out.value = 0;
        return out;
    }
    rec(rec, 0);
    return out;
}

/**
 * The main structural claim in executable form: face |-> join of the supports
 * of its vertices is an order-isomorphism from the zero-set face enumeration
 * onto the support lattice. Faces of a polytope are ordered by inclusion,
 * equivalently by containment of their vertex sets.
 */
inline bool order_isomorphic(const SupportLattice& lat, const OracleLattice& oracle) {
    std::vector<SupportVector> mapped;  // oracle face -> support-lattice key
    for (const auto& face : oracle.faces) {
        SupportVector join(lat.nodes.front().support.size());
        for (std::size_t v = 0; v < oracle.vertices.size(); ++v)
            if (face.test(v)) join |= oracle.vertices[v].support;
        mapped.push_back(std::move(join));
    }
    // bijectivity: distinct faces map to distinct nodes, counts agree
    std::map<SupportVector, int> node_of;
    node_of[SupportVector(lat.nodes.front().support.size())] = 0;
    for (std::size_t i = 1; i < lat.nodes.size(); ++i) node_of[lat.nodes[i].support] = 1;
    if (mapped.size() != lat.nodes.size()) return false;
    std::map<SupportVector, int> hits;
    for (const auto& s : mapped) {
        if (!node_of.count(s)) return false;
        if (++hits[s] > 1) return false;
    }
    // order preservation and reflection, both directions
    for (std::size_t i = 0; i < oracle.faces.size(); ++i)
        for (std::size_t j = 0; j < oracle.faces.size(); ++j) {
            bool face_leq = oracle.faces[i].is_subset_of(oracle.faces[j]);
            bool supp_leq = support_leq(mapped[i], mapped[j]);
            if (face_leq != supp_leq) return false;
        }
    return true;
}

}  // namespace nspoly::testing

#endif  // NSPOLY_TESTS_ORACLES_HPP
