#ifndef NSPOLY_MODEL_HPP
#define NSPOLY_MODEL_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "rational.hpp"
#include "scenario.hpp"
#include "support.hpp"

namespace nspoly {

/**
 * Commutative semiring instances. Both are spot-checked against the monoid
 * and distributivity laws in the unit tests; only these two ship.
 */
struct RationalSemiring {
    using Value = Rational;
    static Value zero() { return Value(0); }
    static Value one() { return Value(1); }
    static Value add(const Value& a, const Value& b) { return a + b; }
    static Value mul(const Value& a, const Value& b) { return a * b; }
    static bool eq(const Value& a, const Value& b) { return a == b; }
    static constexpr const char* name() { return "rational"; }
};

struct BooleanSemiring {
    using Value = bool;
    static Value zero() { return false; }
    static Value one() { return true; }
    static Value add(Value a, Value b) { return a || b; }  // idempotent
    static Value mul(Value a, Value b) { return a && b; }
    static bool eq(Value a, Value b) { return a == b; }
    static constexpr const char* name() { return "boolean"; }
};

/**
 * Semiring-parametric empirical model: one distribution table per context,
 * stored flattened in canonical cell order. Immutable after construction.
 */
template <typename S>
class EmpiricalModel {
  public:
    using Value = typename S::Value;

    Scenario scenario;
    std::vector<Value> cells;  // length scenario.cell_count()

    EmpiricalModel() = default;
    EmpiricalModel(Scenario sc, std::vector<Value> data)
        : scenario(std::move(sc)), cells(std::move(data)) {
        if (static_cast<std::int64_t>(cells.size()) != scenario.cell_count())
            throw std::invalid_argument("model table size does not match scenario cell count");
    }

    Value at(int c, const Assignment& a) const { return cells.at(scenario.cell_index(c, a)); }

    bool operator==(const EmpiricalModel& other) const {
        if (!(scenario == other.scenario)) return false;
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (!S::eq(cells[i], other.cells[i])) return false;
        return true;
    }
};

using RationalModel = EmpiricalModel<RationalSemiring>;
using BooleanModel  = EmpiricalModel<BooleanSemiring>;

/**
 * Marginal of e_C onto U (a subset of context c's variables), as a table
 * indexed by the lexicographic rank of assignments in O^U. Over the booleans
 * the semiring sum is existential disjunction.
 */
template <typename S>
std::vector<typename S::Value> marginalize(const EmpiricalModel<S>& model, int c,
                                           const std::vector<int>& sub) {
    const auto& ctx = model.scenario.contexts.at(c);
    for (int v : sub)
        if (std::find(ctx.begin(), ctx.end(), v) == ctx.end())
            throw std::invalid_argument("marginalization target is not a subset of the context");
    const std::size_t base = model.scenario.outcomes.size();
    std::size_t sub_cells = 1;
    for (std::size_t i = 0; i < sub.size(); ++i) sub_cells *= base;
    std::vector<typename S::Value> out(sub_cells, S::zero());
    for (const auto& t : model.scenario.assignments(c)) {
        std::size_t rank = 0;
        for (int v : sub) rank = rank * base + static_cast<std::size_t>(t.value_of(v));
        out[rank] = S::add(out[rank], model.at(c, t));
    }
    return out;
}

template <typename S>
struct NormalizationViolation {
    int context;
    typename S::Value sum;
};

/** Empty result iff every context's table sums (semiring-sum) to one. */
template <typename S>
std::vector<NormalizationViolation<S>> check_normalization(const EmpiricalModel<S>& model) {
    std::vector<NormalizationViolation<S>> out;
    for (std::size_t c = 0; c < model.scenario.contexts.size(); ++c) {
        typename S::Value sum = S::zero();
        std::int64_t off = model.scenario.context_offset(static_cast<int>(c));
        std::int64_t cnt = model.scenario.context_cells(static_cast<int>(c));
        for (std::int64_t i = 0; i < cnt; ++i) sum = S::add(sum, model.cells[off + i]);
        if (!S::eq(sum, S::one()))
            out.push_back({static_cast<int>(c), sum});
    }
    return out;
}

template <typename S>
struct NoSignallingViolation {
    int context_a;
    int context_b;
    Assignment shared;  // assignment on the overlap
    typename S::Value marginal_a;
    typename S::Value marginal_b;
};

/** Overlap of two contexts, ordered by scenario variable index. */
inline std::vector<int> context_overlap(const Scenario& sc, int c1, int c2) {
    std::vector<int> shared;
    for (std::size_t v = 0; v < sc.variables.size(); ++v) {
        int vi = static_cast<int>(v);
        const auto& a = sc.contexts[c1];
        const auto& b = sc.contexts[c2];
        if (std::find(a.begin(), a.end(), vi) != a.end() &&
            std::find(b.begin(), b.end(), vi) != b.end())
            shared.push_back(vi);
    }
    return shared;
}

/**
 * Compares marginals of every unordered overlapping context pair on every
 * shared assignment. Pairs with empty overlap are skipped: their shared
 * marginal is the total mass, forced by normalization.
 */
template <typename S>
std::vector<NoSignallingViolation<S>> check_no_signalling(const EmpiricalModel<S>& model) {
    std::vector<NoSignallingViolation<S>> out;
    const auto& sc = model.scenario;
    const std::size_t base = sc.outcomes.size();
    for (std::size_t c1 = 0; c1 < sc.contexts.size(); ++c1) {
        for (std::size_t c2 = c1 + 1; c2 < sc.contexts.size(); ++c2) {
            auto shared = context_overlap(sc, static_cast<int>(c1), static_cast<int>(c2));
            if (shared.empty()) continue;
            auto ma = marginalize(model, static_cast<int>(c1), shared);
            auto mb = marginalize(model, static_cast<int>(c2), shared);
            for (std::size_t r = 0; r < ma.size(); ++r) {
                if (S::eq(ma[r], mb[r])) continue;
                Assignment u;
                u.vars = shared;
                u.vals.assign(shared.size(), 0);
                std::size_t rr = r;
                for (std::size_t i = shared.size(); i-- > 0;) {
                    u.vals[i] = static_cast<int>(rr % base);
                    rr /= base;
                }
                out.push_back({static_cast<int>(c1), static_cast<int>(c2), u, ma[r], mb[r]});
            }
        }
    }
    return out;
}

/** Support bit per cell: 1 iff the entry is nonzero in the semiring. */
template <typename S>
SupportVector model_support(const EmpiricalModel<S>& model) {
    SupportVector s(model.cells.size());
    for (std::size_t i = 0; i < model.cells.size(); ++i)
        if (!S::eq(model.cells[i], S::zero())) s.set(i);
    return s;
}

/**
 * Pointwise application of the unique semiring homomorphism from the
 * nonnegative rationals to the booleans: an entry maps to 1 iff it is
 * strictly positive. Rejects negative entries (malformed input).
 */
inline BooleanModel possibilistic_collapse(const RationalModel& model) {
    std::vector<bool> bits(model.cells.size());
    for (std::size_t i = 0; i < model.cells.size(); ++i) {
        if (model.cells[i] < 0)
            throw std::invalid_argument("negative entry in probabilistic model");
        bits[i] = model.cells[i] > 0;
    }
    return BooleanModel(model.scenario, std::move(bits));
}

inline BooleanModel boolean_model_from_support(const Scenario& sc, const SupportVector& s) {
    if (static_cast<std::int64_t>(s.size()) != sc.cell_count())
        throw std::invalid_argument("support length does not match scenario");
    std::vector<bool> bits(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) bits[i] = s.test(i);
    return BooleanModel(sc, std::move(bits));
}

/** e_C(s) = 1 if s = g|_C, else 0, for a global assignment g. */
inline RationalModel deterministic_model(const Scenario& sc, const Assignment& g) {
    for (std::size_t v = 0; v < sc.variables.size(); ++v)
        if (g.value_of(static_cast<int>(v)) < 0)
            throw std::invalid_argument("deterministic model requires a global assignment");
    std::vector<Rational> cells(sc.cell_count(), Rational(0));
    for (std::size_t c = 0; c < sc.contexts.size(); ++c) {
        Assignment section = restrict_assignment(g, sc.contexts[c]);
        cells[sc.cell_index(static_cast<int>(c), section)] = 1;
    }
    return RationalModel(sc, std::move(cells));
}

/** e_C(s) = 1/|O|^|C| everywhere: the canonical strictly positive no-signalling point. */
inline RationalModel uniform_model(const Scenario& sc) {
    std::vector<Rational> cells(sc.cell_count());
    for (std::size_t c = 0; c < sc.contexts.size(); ++c) {
        Rational p(1, sc.context_cells(static_cast<int>(c)));
        std::int64_t off = sc.context_offset(static_cast<int>(c));
        for (std::int64_t i = 0; i < sc.context_cells(static_cast<int>(c)); ++i)
            cells[off + i] = p;
    }
    return RationalModel(sc, std::move(cells));
}

inline std::vector<Rational> model_to_vector(const RationalModel& model) { return model.cells; }

inline RationalModel vector_to_model(const Scenario& sc, const std::vector<Rational>& v) {
    if (static_cast<std::int64_t>(v.size()) != sc.cell_count())
        throw std::invalid_argument("vector length does not match scenario cell count");
    RationalModel m(sc, v);
    auto bad = check_normalization(m);
    if (!bad.empty())
        throw std::invalid_argument("vector is not normalized in context " +
                                    sc.context_label(bad.front().context));
    return m;
}

/** Cellwise weighted sum. Weights must be nonnegative and sum to one. */
inline RationalModel convex_combination(const std::vector<RationalModel>& models,
                                        const std::vector<Rational>& weights) {
    if (models.empty() || models.size() != weights.size())
        throw std::invalid_argument("convex combination needs matching models and weights");
    Rational total(0);
    for (const auto& w : weights) {
        if (w < 0) throw std::invalid_argument("negative weight in convex combination");
        total += w;
    }
    if (total != 1) throw std::invalid_argument("weights must sum to one");
    const Scenario& sc = models.front().scenario;
    for (const auto& m : models)
        if (!(m.scenario == sc)) throw std::invalid_argument("scenario mismatch in convex combination");
    std::vector<Rational> cells(sc.cell_count(), Rational(0));
    for (std::size_t k = 0; k < models.size(); ++k)
        for (std::size_t i = 0; i < cells.size(); ++i)
            cells[i] += weights[k] * models[k].cells[i];
    return RationalModel(sc, std::move(cells));
}

}  // namespace nspoly

#endif  // NSPOLY_MODEL_HPP
