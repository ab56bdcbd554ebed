#ifndef NSPOLY_POLYTOPE_HPP
#define NSPOLY_POLYTOPE_HPP

#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "model.hpp"
#include "scenario.hpp"
#include "support.hpp"

namespace nspoly {

enum class RowTag { Normalization, NoSignalling, User };

/**
 * A standard-form constraint system: P = {x >= 0 : Ax = b}. Rows carry
 * provenance tags; redundant equations are kept as assembled, rank
 * computations tolerate them.
 */
struct ConstraintSystem {
    Mat a;
    Vec b;
    std::vector<std::string> column_labels;
    std::vector<RowTag> row_tags;
    std::vector<std::string> row_notes;
    bool known_bounded = false;  // set for assembled N(Sigma) systems

    int columns() const { return static_cast<int>(a.cols()); }
    int rows() const { return static_cast<int>(a.rows()); }
};

/**
 * Normalization and no-signalling equations of the no-signalling polytope
 * N(Sigma), flattened onto the canonical cell coordinates. One normalization
 * row per context; one no-signalling row per unordered overlapping context
 * pair per shared assignment. Coefficients lie in {-1, 0, +1}.
 */
inline ConstraintSystem assemble_constraints(const Scenario& sc) {
    ConstraintSystem sys;
    const int n = static_cast<int>(sc.cell_count());
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;

    for (std::size_t c = 0; c < sc.contexts.size(); ++c) {
        std::vector<Rational> row(n, Rational(0));
        std::int64_t off = sc.context_offset(static_cast<int>(c));
        for (std::int64_t i = 0; i < sc.context_cells(static_cast<int>(c)); ++i) row[off + i] = 1;
        rows.push_back(std::move(row));
        rhs.push_back(1);
        sys.row_tags.push_back(RowTag::Normalization);
        sys.row_notes.push_back("norm " + sc.context_label(static_cast<int>(c)));
    }

    const std::size_t base = sc.outcomes.size();
    for (std::size_t c1 = 0; c1 < sc.contexts.size(); ++c1) {
        for (std::size_t c2 = c1 + 1; c2 < sc.contexts.size(); ++c2) {
            auto shared = context_overlap(sc, static_cast<int>(c1), static_cast<int>(c2));
            if (shared.empty()) continue;  // forced by normalization
            std::size_t shared_cells = 1;
            for (std::size_t i = 0; i < shared.size(); ++i) shared_cells *= base;
            for (std::size_t r = 0; r < shared_cells; ++r) {
                Assignment u;
                u.vars = shared;
                u.vals.assign(shared.size(), 0);
                std::size_t rr = r;
                for (std::size_t i = shared.size(); i-- > 0;) {
                    u.vals[i] = static_cast<int>(rr % base);
                    rr /= base;
                }
                std::vector<Rational> row(n, Rational(0));
                for (const auto& t : sc.assignments(static_cast<int>(c1)))
                    if (restrict_assignment(t, shared).vals == u.vals)
                        row[sc.cell_index(static_cast<int>(c1), t)] = 1;
                for (const auto& t : sc.assignments(static_cast<int>(c2)))
                    if (restrict_assignment(t, shared).vals == u.vals)
                        row[sc.cell_index(static_cast<int>(c2), t)] -= 1;
                rows.push_back(std::move(row));
                rhs.push_back(0);
                sys.row_tags.push_back(RowTag::NoSignalling);
                std::string note = "ns " + sc.context_label(static_cast<int>(c1)) + " ~ " +
                                   sc.context_label(static_cast<int>(c2)) + " @ ";
                for (std::size_t i = 0; i < shared.size(); ++i) {
                    if (i) note += ',';
                    note += sc.variables[shared[i]] + "=" + sc.outcomes[u.vals[i]];
                }
                sys.row_notes.push_back(std::move(note));
            }
        }
    }

    sys.a = Mat(static_cast<int>(rows.size()), n);
    sys.b = Vec(static_cast<int>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int j = 0; j < n; ++j) sys.a(static_cast<int>(i), j) = rows[i][j];
        sys.b(static_cast<int>(i)) = rhs[i];
    }
    for (std::int64_t i = 0; i < sc.cell_count(); ++i) {
        auto [c, asg] = sc.index_cell(i);
        sys.column_labels.push_back(sc.context_label(c) + ":" + sc.assignment_label(asg));
    }
    sys.known_bounded = true;  // normalization caps every coordinate at 1
    return sys;
}

/** Exact membership: Ax = b and x >= 0. */
inline bool membership(const ConstraintSystem& sys, const Vec& x) {
    if (x.size() != sys.columns()) throw std::invalid_argument("vector length mismatch");
    for (int j = 0; j < sys.columns(); ++j)
        if (x(j) < 0) return false;
    for (int i = 0; i < sys.rows(); ++i) {
        Rational s(0);
        for (int j = 0; j < sys.columns(); ++j) s += sys.a(i, j) * x(j);
        if (s != sys.b(i)) return false;
    }
    return true;
}

inline SupportVector vector_support(const Vec& x) {
    SupportVector s(x.size());
    for (int j = 0; j < x.size(); ++j)
        if (x(j) != 0) s.set(j);
    return s;
}

/**
 * Rejects unbounded user systems: each coordinate is maximized by LP. The
 * theorems are about polytopes, not polyhedra.
 */
inline bool is_bounded(const ConstraintSystem& sys) {
    if (sys.known_bounded) return true;
    for (int j = 0; j < sys.columns(); ++j) {
        LPProblem lp;
        lp.a = sys.a;
        lp.b = sys.b;
        lp.c = Vec::Zero(sys.columns());
        lp.c(j) = 1;
        lp.maximize = true;
        LPResult r = lp_solve(lp);
        if (r.status == LPStatus::Unbounded) return false;
        if (r.status == LPStatus::Infeasible) return true;  // empty is bounded
    }
    return true;
}

struct ClosureResult {
    bool nonempty = false;      // some nonzero point of P has support <= sigma
    SupportVector closure;      // largest achievable support <= sigma
    Vec witness;                // point with support exactly `closure`
};

/**
 * Largest achievable support below sigma, computed per coordinate: for each
 * i in sigma, maximize x_i subject to x in P and x_j = 0 off sigma. The
 * witness is the average of the per-coordinate optima, so its support is
 * exactly the closure. Rows are reduced to an independent equivalent set
 * first; an inconsistent or infeasible restriction yields the empty marker.
 */
inline ClosureResult support_closure(const ConstraintSystem& sys, const SupportVector& sigma) {
    const int n = sys.columns();
    if (static_cast<int>(sigma.size()) != n)
        throw std::invalid_argument("support length does not match system");
    ClosureResult out;
    out.closure = SupportVector(n);
    std::vector<int> cols;
    for (int j = 0; j < n; ++j)
        if (sigma.test(j)) cols.push_back(j);
    const int k = static_cast<int>(cols.size());
    Mat ar(sys.rows(), k);
    for (int i = 0; i < sys.rows(); ++i)
        for (int jj = 0; jj < k; ++jj) ar(i, jj) = sys.a(i, cols[jj]);
    ReducedSystem red = reduce_rows(ar, sys.b);
    if (!red.consistent) return out;

    Vec acc = Vec::Zero(n);
    int optima = 0;
    for (int jj = 0; jj < k; ++jj) {
        LPProblem lp;
        lp.a = red.a;
        lp.b = red.b;
        lp.c = Vec::Zero(k);
        lp.c(jj) = 1;
        lp.maximize = true;
        LPResult r = lp_solve(lp);
        if (r.status == LPStatus::Infeasible) return out;
        if (r.status == LPStatus::Unbounded)
            throw std::invalid_argument("unbounded system in support closure");
        if (r.value > 0) out.closure.set(cols[jj]);
        for (int q = 0; q < k; ++q) acc(cols[q]) += r.solution(q);
        ++optima;
    }
    if (k == 0) {
        // restriction to no columns: feasible iff b = 0, i.e. 0 in P
        for (int i = 0; i < sys.rows(); ++i)
            if (sys.b(i) != 0) return out;
        out.witness = Vec::Zero(n);
        return out;  // only the zero point: no nonempty face below sigma
    }
    out.witness = acc / Rational(optima);
    out.nonempty = out.closure.any();
    return out;
}

/** True iff sigma itself is the support of some point of P. */
inline bool is_achievable(const ConstraintSystem& sys, const SupportVector& sigma) {
    ClosureResult c = support_closure(sys, sigma);
    return c.nonempty && c.closure == sigma;
}

/**
 * A face of P keyed by its support; the bottom element (empty face) has
 * dimension -1 and no witness.
 */
struct Face {
    bool bottom = false;
    SupportVector support;
    long dimension = -1;
    Vec witness;
};

inline Face bottom_face(int columns) {
    Face f;
    f.bottom = true;
    f.support = SupportVector(columns);
    f.dimension = -1;
    return f;
}

/**
 * dim F = |sigma| - rank(A restricted to sigma columns). Valid because the
 * closure witness is strictly positive on sigma, so the face's affine hull
 * is the full solution set of the restricted equations.
 */
inline long restricted_rank(const ConstraintSystem& sys, const SupportVector& sigma) {
    std::vector<int> cols;
    for (int j = 0; j < sys.columns(); ++j)
        if (sigma.test(j)) cols.push_back(j);
    Mat ar(sys.rows(), static_cast<int>(cols.size()));
    for (int i = 0; i < sys.rows(); ++i)
        for (std::size_t jj = 0; jj < cols.size(); ++jj) ar(i, static_cast<int>(jj)) = sys.a(i, cols[jj]);
    return matrix_rank(ar);
}

inline long face_dimension_unchecked(const ConstraintSystem& sys, const SupportVector& sigma) {
    return static_cast<long>(sigma.count()) - restricted_rank(sys, sigma);
}

inline long face_dimension(const ConstraintSystem& sys, const SupportVector& sigma) {
    if (!is_achievable(sys, sigma))
        throw std::invalid_argument("support is not achievable");
    return face_dimension_unchecked(sys, sigma);
}

/** The unique face whose relative interior contains x; witness is x itself. */
inline Face carrier_face(const ConstraintSystem& sys, const Vec& x) {
    if (!membership(sys, x)) throw std::invalid_argument("point is not in the polytope");
    Face f;
    f.support = vector_support(x);
    f.dimension = face_dimension_unchecked(sys, f.support);
    f.witness = x;
    return f;
}

/**
 * relint membership via segment extension: x is in the relative interior of
 * F_sigma iff for every vertex v of that face some mu > 1 keeps
 * mu x + (1 - mu) v inside P. Decided by an LP maximizing mu per vertex
 * (checking against vertices suffices by convexity).
 */
inline bool relint_membership(const ConstraintSystem& sys, const Vec& x, const SupportVector& sigma,
                              const std::vector<Vec>& face_vertices) {
    if (!membership(sys, x)) throw std::invalid_argument("point is not in the polytope");
    if (!support_leq(vector_support(x), sigma))
        throw std::invalid_argument("point support exceeds the face support");
    const int n = sys.columns();
    for (const Vec& v : face_vertices) {
        // maximize mu subject to v + mu (x - v) >= 0; equations hold for all mu
        LPProblem lp;
        lp.a = Mat::Zero(n, n + 1);
        lp.b = Vec::Zero(n);
        for (int i = 0; i < n; ++i) {
            lp.a(i, 0) = x(i) - v(i);
            lp.a(i, i + 1) = -1;  // slack: mu (x_i - v_i) - s_i = -v_i
            lp.b(i) = -v(i);
        }
        lp.c = Vec::Zero(n + 1);
        lp.c(0) = 1;
        lp.maximize = true;
        LPResult r = lp_solve(lp);
        if (r.status == LPStatus::Unbounded) continue;  // segment extends forever
        if (r.status != LPStatus::Optimal) throw std::logic_error("relint LP must be feasible");
        if (!(r.value > 1)) return false;
    }
    return true;
}

}  // namespace nspoly

#endif  // NSPOLY_POLYTOPE_HPP
