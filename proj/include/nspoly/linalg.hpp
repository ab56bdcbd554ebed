#ifndef NSPOLY_LINALG_HPP
#define NSPOLY_LINALG_HPP

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rational.hpp"
#include "support.hpp"

namespace nspoly {

using Mat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

struct RrefResult {
    Mat reduced;
    int rank = 0;
    std::vector<int> pivot_cols;
};

/** Exact reduced row-echelon form by Gauss-Jordan elimination. */
inline RrefResult rref(Mat a) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    RrefResult res;
    int r = 0;
    for (int col = 0; col < n && r < m; ++col) {
        int piv = -1;
        for (int i = r; i < m; ++i)
            if (a(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) a.row(piv).swap(a.row(r));
        Rational inv = 1 / a(r, col);
        for (int j = col; j < n; ++j) a(r, j) *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == r || a(i, col) == 0) continue;
            Rational f = a(i, col);
            for (int j = col; j < n; ++j) a(i, j) -= f * a(r, j);
        }
        res.pivot_cols.push_back(col);
        ++r;
    }
    res.rank = r;
    res.reduced = std::move(a);
    return res;
}

inline int matrix_rank(const Mat& a) { return rref(a).rank; }

struct AffineSolution {
    bool consistent = false;
    Vec particular;     // one solution of Ax = b
    Mat nullspace;      // columns span the solution set of Ax = 0
};

/** Full parametrization of {x : Ax = b}; dimension = cols - rank(A). */
inline AffineSolution solve_affine(const Mat& a, const Vec& b) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    Mat aug(m, n + 1);
    aug.leftCols(n) = a;
    aug.col(n) = b;
    RrefResult rr = rref(std::move(aug));
    AffineSolution out;
    for (int c : rr.pivot_cols)
        if (c == n) return out;  // row 0 = 1: inconsistent
    out.consistent = true;
    std::vector<int> pivot_of_col(n, -1);
    for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i) pivot_of_col[rr.pivot_cols[i]] = static_cast<int>(i);
    out.particular = Vec::Zero(n);
    for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
        out.particular(rr.pivot_cols[i]) = rr.reduced(static_cast<int>(i), n);
    std::vector<int> free_cols;
    for (int j = 0; j < n; ++j)
        if (pivot_of_col[j] < 0) free_cols.push_back(j);
    out.nullspace = Mat::Zero(n, static_cast<int>(free_cols.size()));
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        int j = free_cols[k];
        out.nullspace(j, static_cast<int>(k)) = 1;
        for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
            out.nullspace(rr.pivot_cols[i], static_cast<int>(k)) = -rr.reduced(static_cast<int>(i), j);
    }
    return out;
}

/**
 * Equivalent system with independent rows only (rref of the augmented
 * matrix). consistent = false when the equations have no solution.
 */
struct ReducedSystem {
    bool consistent = false;
    Mat a;
    Vec b;
};

inline ReducedSystem reduce_rows(const Mat& a, const Vec& b) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    Mat aug(m, n + 1);
    aug.leftCols(n) = a;
    aug.col(n) = b;
    RrefResult rr = rref(std::move(aug));
    ReducedSystem out;
    for (int c : rr.pivot_cols)
        if (c == n) return out;
    out.consistent = true;
    out.a = rr.reduced.topLeftCorner(rr.rank, n);
    out.b = rr.reduced.topRightCorner(rr.rank, 1);
    return out;
}

enum class LPStatus { Optimal, Infeasible, Unbounded };

/** Standard form: optimize c.x subject to Ax = b, x >= 0. */
struct LPProblem {
    Mat a;
    Vec b;
    Vec c;
    bool maximize = false;
};

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Rational value;   // optimal objective, in the caller's sense
    Vec solution;     // when optimal
    Vec ray;          // improving ray when unbounded: A ray = 0, ray >= 0
};

namespace detail {

/**
 * Dense tableau for the two-phase simplex. Bland's rule throughout: the
 * degenerate vertices of no-signalling polytopes make cycling a live issue,
 * so the anti-cycling rule is always on.
 */
class SimplexTableau {
  public:
    // tableau is m x (ncols+1), rhs in the last column, rhs >= 0 invariant
    Mat t;
    Vec cost;  // reduced costs, size ncols; cost_shift tracks -objective
    Rational objective;
    std::vector<int> basis;
    int ncols;

    SimplexTableau(Mat tab, std::vector<int> basic, int total_cols)
        : t(std::move(tab)), objective(0), basis(std::move(basic)), ncols(total_cols) {}

    void set_costs(const Vec& c) {
        cost = c;
        objective = 0;
        for (std::size_t r = 0; r < basis.size(); ++r)
            reduce_cost_row(static_cast<int>(r));
    }

    void pivot(int r, int col) {
        Rational inv = 1 / t(r, col);
        for (int j = 0; j <= ncols; ++j) t(r, j) *= inv;
        for (int i = 0; i < t.rows(); ++i) {
            if (i == r || t(i, col) == 0) continue;
            Rational f = t(i, col);
            for (int j = 0; j <= ncols; ++j) t(i, j) -= f * t(r, j);
        }
        basis[r] = col;
        if (cost(col) != 0) {
            Rational f = cost(col);
            for (int j = 0; j < ncols; ++j) cost(j) -= f * t(r, j);
            objective += f * t(r, ncols);
        }
    }

    /** Runs Bland-rule minimization; returns entering column on unboundedness. */
    std::optional<int> minimize() {
        while (true) {
            int enter = -1;
            for (int j = 0; j < ncols; ++j)
                if (cost(j) < 0) { enter = j; break; }
            if (enter < 0) return std::nullopt;
            int leave = -1;
            Rational best;
            for (int r = 0; r < t.rows(); ++r) {
                if (t(r, enter) <= 0) continue;
                Rational ratio = t(r, ncols) / t(r, enter);
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[r] < basis[leave]))
                    { leave = r; best = ratio; }
            }
            if (leave < 0) return enter;
            pivot(leave, enter);
        }
    }

  private:
    void reduce_cost_row(int r) {
        int col = basis[r];
        if (cost(col) == 0) return;
        Rational f = cost(col);
        for (int j = 0; j < ncols; ++j) cost(j) -= f * t(r, j);
        objective += f * t(r, ncols);
    }
};

}  // namespace detail

/**
 * Exact two-phase simplex. Optimal solutions are verified against the
 * constraints before return; unbounded results carry a verified ray.
 */
inline LPResult lp_solve(const LPProblem& p) {
    const int m = static_cast<int>(p.a.rows());
    const int n = static_cast<int>(p.a.cols());
    if (p.c.size() != n) throw std::invalid_argument("objective length mismatch");
    if (p.b.size() != m) throw std::invalid_argument("rhs length mismatch");
    Vec c = p.maximize ? Vec(-p.c) : p.c;  // minimize internally

    // phase 1 tableau: [A I | b] with rhs made nonnegative
    Mat tab = Mat::Zero(m, n + m + 1);
    for (int i = 0; i < m; ++i) {
        bool flip = p.b(i) < 0;
        for (int j = 0; j < n; ++j) tab(i, j) = flip ? Rational(-p.a(i, j)) : p.a(i, j);
        tab(i, n + m) = flip ? Rational(-p.b(i)) : p.b(i);
        tab(i, n + i) = 1;
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;
    detail::SimplexTableau st(std::move(tab), std::move(basis), n + m);
    Vec phase1 = Vec::Zero(n + m);
    for (int i = 0; i < m; ++i) phase1(n + i) = 1;
    st.set_costs(phase1);
    st.minimize();  // bounded below by 0
    LPResult out;
    if (st.objective != 0) {
        out.status = LPStatus::Infeasible;
        return out;
    }

    // drive artificials out of the basis; rows that cannot pivot are redundant
    std::vector<int> keep;
    for (int r = 0; r < st.t.rows(); ++r) {
        if (st.basis[r] < n) { keep.push_back(r); continue; }
        int col = -1;
        for (int j = 0; j < n; ++j)
            if (st.t(r, j) != 0) { col = j; break; }
        if (col >= 0) { st.pivot(r, col); keep.push_back(r); }
    }
    Mat tab2(static_cast<int>(keep.size()), n + 1);
    std::vector<int> basis2;
    for (std::size_t k = 0; k < keep.size(); ++k) {
        for (int j = 0; j < n; ++j) tab2(static_cast<int>(k), j) = st.t(keep[k], j);
        tab2(static_cast<int>(k), n) = st.t(keep[k], n + m);
        basis2.push_back(st.basis[keep[k]]);
    }
    detail::SimplexTableau st2(std::move(tab2), std::move(basis2), n);
    st2.set_costs(c);
    auto unbounded_col = st2.minimize();

    if (unbounded_col) {
        out.status = LPStatus::Unbounded;
        Vec d = Vec::Zero(n);
        d(*unbounded_col) = 1;
        for (int r = 0; r < st2.t.rows(); ++r) d(st2.basis[r]) = -st2.t(r, *unbounded_col);
        // certificate: A d = 0, d >= 0, improving direction
        for (int i = 0; i < m; ++i) {
            Rational s(0);
            for (int j = 0; j < n; ++j) s += p.a(i, j) * d(j);
            if (s != 0) throw std::logic_error("simplex ray fails A d = 0");
        }
        for (int j = 0; j < n; ++j)
            if (d(j) < 0) throw std::logic_error("simplex ray not nonnegative");
        out.ray = std::move(d);
        return out;
    }

    Vec x = Vec::Zero(n);
    for (int r = 0; r < st2.t.rows(); ++r) x(st2.basis[r]) = st2.t(r, n);
    // in-solver certificate: exact feasibility and objective agreement
    for (int i = 0; i < m; ++i) {
        Rational s(0);
        for (int j = 0; j < n; ++j) s += p.a(i, j) * x(j);
        if (s != p.b(i)) throw std::logic_error("simplex solution fails Ax = b");
    }
    Rational val(0);
    for (int j = 0; j < n; ++j) {
        if (x(j) < 0) throw std::logic_error("simplex solution not nonnegative");
        val += p.c(j) * x(j);
    }
    out.status = LPStatus::Optimal;
    out.value = val;
    out.solution = std::move(x);
    return out;
}

struct MaxMinResult {
    bool feasible = false;
    Rational t;   // best uniform lower bound over the sigma coordinates
    Vec point;    // full-length optimal point
};

/**
 * Maximizes t subject to Ax = b, x_i = 0 for i outside sigma, x_i >= t for
 * i in sigma, 0 <= t <= 1. t > 0 iff sigma is achievable in one piece.
 * Encoded as a standard-form LP via x_i = t + y_i, y_i >= 0; the rewriting
 * is internal.
 */
inline MaxMinResult max_min_coordinate(const Mat& a, const Vec& b, const SupportVector& sigma) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    if (static_cast<int>(sigma.size()) != n)
        throw std::invalid_argument("support length does not match system columns");
    std::vector<int> cols;
    for (int j = 0; j < n; ++j)
        if (sigma.test(j)) cols.push_back(j);
    const int k = static_cast<int>(cols.size());
    // variables: y_0..y_{k-1}, t, u  (t + u = 1)
    LPProblem lp;
    lp.a = Mat::Zero(m + 1, k + 2);
    lp.b = Vec::Zero(m + 1);
    for (int i = 0; i < m; ++i) {
        Rational tcoef(0);
        for (int jj = 0; jj < k; ++jj) {
            lp.a(i, jj) = a(i, cols[jj]);
            tcoef += a(i, cols[jj]);
        }
        lp.a(i, k) = tcoef;
        lp.b(i) = b(i);
    }
    lp.a(m, k) = 1;
    lp.a(m, k + 1) = 1;
    lp.b(m) = 1;
    lp.c = Vec::Zero(k + 2);
    lp.c(k) = 1;
    lp.maximize = true;
    LPResult r = lp_solve(lp);
    MaxMinResult out;
    if (r.status != LPStatus::Optimal) return out;  // infeasible equality system
    out.feasible = true;
    out.t = r.value;
    out.point = Vec::Zero(n);
    for (int jj = 0; jj < k; ++jj) out.point(cols[jj]) = r.solution(jj) + r.solution(k);
    return out;
}

}  // namespace nspoly

#endif  // NSPOLY_LINALG_HPP
