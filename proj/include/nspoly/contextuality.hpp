#ifndef NSPOLY_CONTEXTUALITY_HPP
#define NSPOLY_CONTEXTUALITY_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "lattice.hpp"
#include "model.hpp"
#include "polytope.hpp"

namespace nspoly {

namespace detail {

/**
 * Backtracking search for a global assignment consistent with the support:
 * variables in scenario order, pruned by checking that every context still
 * has a possible section compatible with the partial assignment.
 */
class GlobalSectionSearch {
  public:
    explicit GlobalSectionSearch(const BooleanModel& model) : model_(model) {}

    /** `fixed` maps variable index -> outcome, -1 for free variables. */
    std::optional<Assignment> find(std::vector<int> fixed = {}) const {
        const auto& sc = model_.scenario;
        if (fixed.empty()) fixed.assign(sc.variables.size(), -1);
        if (!consistent(fixed)) return std::nullopt;
        if (search(fixed, 0)) {
            Assignment g;
            for (std::size_t v = 0; v < sc.variables.size(); ++v) {
                g.vars.push_back(static_cast<int>(v));
                g.vals.push_back(fixed[v]);
            }
            return g;
        }
        return std::nullopt;
    }

  private:
    const BooleanModel& model_;

    bool consistent(const std::vector<int>& fixed) const {
        const auto& sc = model_.scenario;
        for (std::size_t c = 0; c < sc.contexts.size(); ++c) {
            bool ok = false;
            for (const auto& s : sc.assignments(static_cast<int>(c))) {
                bool compatible = true;
                for (std::size_t i = 0; i < s.vars.size(); ++i)
                    if (fixed[s.vars[i]] >= 0 && fixed[s.vars[i]] != s.vals[i]) {
                        compatible = false;
                        break;
                    }
                if (compatible && model_.at(static_cast<int>(c), s)) { ok = true; break; }
            }
            if (!ok) return false;
        }
        return true;
    }

    bool search(std::vector<int>& fixed, std::size_t v) const {
        const auto& sc = model_.scenario;
        while (v < sc.variables.size() && fixed[v] >= 0) ++v;
        if (v == sc.variables.size()) return true;
        for (std::size_t o = 0; o < sc.outcomes.size(); ++o) {
            fixed[v] = static_cast<int>(o);
            if (consistent(fixed) && search(fixed, v + 1)) return true;
        }
        fixed[v] = -1;
        return false;
    }
};

}  // namespace detail

struct StrongContextualityResult {
    bool strongly_contextual = false;
    std::optional<Assignment> witness;  // a consistent global assignment, when one exists
};

/** Strong contextuality: no global assignment is consistent with the support. */
inline StrongContextualityResult is_strongly_contextual(const BooleanModel& model) {
    detail::GlobalSectionSearch search(model);
    StrongContextualityResult out;
    out.witness = search.find();
    out.strongly_contextual = !out.witness.has_value();
    return out;
}

struct LogicalContextualityResult {
    bool logically_contextual = false;
    std::optional<std::pair<int, Assignment>> witness;  // (context, stuck section)
};

/**
 * Logical contextuality: some possible section extends to no global
 * assignment consistent with the support. (Definition imported from the
 * sheaf-theoretic hierarchy; strong contextuality is the special case where
 * every section is stuck.)
 */
inline LogicalContextualityResult is_logically_contextual(const BooleanModel& model) {
    const auto& sc = model.scenario;
    detail::GlobalSectionSearch search(model);
    LogicalContextualityResult out;
    for (std::size_t c = 0; c < sc.contexts.size(); ++c) {
        for (const auto& s : sc.assignments(static_cast<int>(c))) {
            if (!model.at(static_cast<int>(c), s)) continue;
            std::vector<int> fixed(sc.variables.size(), -1);
            for (std::size_t i = 0; i < s.vars.size(); ++i) fixed[s.vars[i]] = s.vals[i];
            if (!search.find(fixed)) {
                out.logically_contextual = true;
                out.witness = {static_cast<int>(c), s};
                return out;
            }
        }
    }
    return out;
}

inline LogicalContextualityResult is_logically_contextual(const RationalModel& model) {
    return is_logically_contextual(possibilistic_collapse(model));
}

struct LocalDeterministicEntry {
    RationalModel model;
    std::vector<Assignment> witnesses;  // all global assignments inducing this model
};

/**
 * One deterministic model per global assignment, deduped by model (distinct
 * assignments collapse exactly when they agree on every variable occurring
 * in some context); all witnesses retained.
 */
inline std::vector<LocalDeterministicEntry> local_deterministic_models(
        const Scenario& sc, std::int64_t guard = 65536) {
    if (sc.global_assignment_count() > guard)
        throw std::invalid_argument("deterministic model enumeration exceeds the size guard");
    std::vector<LocalDeterministicEntry> out;
    std::map<std::vector<Rational>, std::size_t> index;
    sc.for_each_global_assignment([&](const Assignment& g) {
        RationalModel m = deterministic_model(sc, g);
        auto it = index.find(m.cells);
        if (it == index.end()) {
            index.emplace(m.cells, out.size());
            out.push_back({std::move(m), {g}});
        } else {
            out[it->second].witnesses.push_back(g);
        }
    });
    return out;
}

struct LocalDecomposition {
    std::vector<Rational> weights;  // over global assignments, in lexicographic order
};

/**
 * Membership in the local polytope Conv(LD): exact LP feasibility over
 * decomposition weights. Returns a decomposition or a definitive none.
 */
inline std::optional<LocalDecomposition> is_local(const RationalModel& model,
                                                  std::int64_t guard = 65536) {
    if (!check_no_signalling(model).empty())
        throw std::invalid_argument("is_local requires a no-signalling model");
    const Scenario& sc = model.scenario;
    const std::int64_t g_count = sc.global_assignment_count();
    if (g_count > guard)
        throw std::invalid_argument("local decomposition LP exceeds the size guard");
    const int n = static_cast<int>(sc.cell_count());
    LPProblem lp;
    lp.a = Mat::Zero(n, static_cast<int>(g_count));
    lp.b = Vec(n);
    for (int i = 0; i < n; ++i) lp.b(i) = model.cells[i];
    for (std::int64_t g = 0; g < g_count; ++g) {
        RationalModel d = deterministic_model(sc, sc.global_assignment_at(g));
        for (int i = 0; i < n; ++i) lp.a(i, static_cast<int>(g)) = d.cells[i];
    }
    lp.c = Vec::Zero(static_cast<int>(g_count));
    LPResult r = lp_solve(lp);
    if (r.status != LPStatus::Optimal) return std::nullopt;
    LocalDecomposition dec;
    dec.weights.resize(g_count);
    for (std::int64_t g = 0; g < g_count; ++g) dec.weights[g] = r.solution(static_cast<int>(g));
    return dec;
}

enum class VertexTag { LocalDeterministic, MinimalStronglyContextual };

struct VertexClass {
    VertexTag tag;
    std::optional<Assignment> witness;  // the inducing global assignment, for LD
};

/**
 * Tags every vertex of N(Sigma) as local deterministic or minimally strongly
 * contextual, asserting the disjoint-union decomposition: every non-LD
 * vertex's collapse must be strongly contextual and no vertex is both.
 */
inline std::vector<std::pair<Vertex, VertexClass>> classify_vertices(const Scenario& sc) {
    ConstraintSystem sys = assemble_constraints(sc);
    std::vector<Vertex> verts = enumerate_vertices(sys);
    auto ld = local_deterministic_models(sc);
    std::vector<std::pair<Vertex, VertexClass>> out;
    for (auto& v : verts) {
        std::optional<Assignment> ld_witness;
        for (const auto& entry : ld) {
            bool equal = true;
            for (int i = 0; i < v.point.size(); ++i)
                if (entry.model.cells[i] != v.point(i)) { equal = false; break; }
            if (equal) { ld_witness = entry.witnesses.front(); break; }
        }
        BooleanModel collapsed = boolean_model_from_support(sc, v.support);
        bool sc_flag = is_strongly_contextual(collapsed).strongly_contextual;
        if (ld_witness && sc_flag)
            throw std::logic_error("vertex classified both deterministic and strongly contextual");
        if (!ld_witness && !sc_flag)
            throw std::logic_error("non-deterministic vertex is not strongly contextual");
        VertexClass cls{ld_witness ? VertexTag::LocalDeterministic
                                   : VertexTag::MinimalStronglyContextual,
                        ld_witness};
        out.emplace_back(std::move(v), std::move(cls));
    }
    return out;
}

/**
 * Does any probabilistic no-signalling model have support exactly this
 * boolean model? Certificate-backed: the per-coordinate closure maxima are
 * computed exactly, and a successful answer returns the closure witness.
 */
inline std::optional<RationalModel> is_realizable(const BooleanModel& model) {
    if (!check_no_signalling(model).empty())
        throw std::invalid_argument(
            "boolean model violates no-signalling, so it cannot be a possibilistic collapse");
    ConstraintSystem sys = assemble_constraints(model.scenario);
    SupportVector sigma = model_support(model);
    ClosureResult c = support_closure(sys, sigma);
    if (!c.nonempty || c.closure != sigma) return std::nullopt;
    std::vector<Rational> cells(c.witness.size());
    for (int i = 0; i < c.witness.size(); ++i) cells[i] = c.witness(i);
    return RationalModel(model.scenario, std::move(cells));
}

/**
 * Minimality in the boolean no-signalling order: no boolean NS model lies
 * strictly below. For each possible cell, zero it and propagate: a marginal
 * possible on one side of an NS equation whose extensions are all impossible
 * on the other side forces those extensions to zero. Boolean NS models below
 * a given one are closed under join, so the propagation fixed point is the
 * unique maximal candidate; the model is minimal iff every such fixed point
 * empties some context.
 */
inline bool is_minimal_boolean_ns(const BooleanModel& model) {
    if (!check_no_signalling(model).empty())
        throw std::invalid_argument("minimality is defined for boolean no-signalling models");
    const Scenario& sc = model.scenario;
    const std::int64_t n = sc.cell_count();

    auto propagate = [&](std::vector<bool> cells) -> bool {
        // returns true when a valid strictly smaller boolean NS model survives
        bool changed = true;
        while (changed) {
            changed = false;
            BooleanModel cur(sc, cells);
            for (const auto& viol : check_no_signalling(cur)) {
                // zero every extension of the shared assignment on the possible side
                int live = viol.marginal_a ? viol.context_a : viol.context_b;
                for (const auto& t : sc.assignments(live)) {
                    bool extends = true;
                    for (std::size_t i = 0; i < viol.shared.vars.size(); ++i)
                        if (t.value_of(viol.shared.vars[i]) != viol.shared.vals[i]) {
                            extends = false;
                            break;
                        }
                    if (extends) cells[sc.cell_index(live, t)] = false;
                }
                changed = true;
            }
        }
        BooleanModel fixed(sc, cells);
        return check_normalization(fixed).empty();  // every context still nonempty
    };

    for (std::int64_t i = 0; i < n; ++i) {
        if (!model.cells[i]) continue;
        std::vector<bool> cells(model.cells.begin(), model.cells.end());
        cells[i] = false;
        if (propagate(std::move(cells))) return false;  // strictly smaller NS model exists
    }
    return true;
}

}  // namespace nspoly

#endif  // NSPOLY_CONTEXTUALITY_HPP
