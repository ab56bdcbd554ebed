#ifndef NSPOLY_SCENARIO_HPP
#define NSPOLY_SCENARIO_HPP

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nspoly {

/**
 * A partial assignment of outcomes to variables. Variables and outcomes are
 * stored as indices into the owning scenario's `variables` / `outcomes`
 * lists; `vars` keeps the order of the context it was enumerated from.
 */
struct Assignment {
    std::vector<int> vars;
    std::vector<int> vals;

    bool operator==(const Assignment& other) const = default;

    /** Value assigned to variable `v`, or -1 when `v` is outside the domain. */
    int value_of(int v) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == v) return vals[i];
        return -1;
    }
};

/** Restrict an assignment to the variables in `domain` (in `domain` order). */
inline Assignment restrict_assignment(const Assignment& a, const std::vector<int>& domain) {
    Assignment out;
    out.vars.reserve(domain.size());
    out.vals.reserve(domain.size());
    for (int v : domain) {
        int val = a.value_of(v);
        if (val < 0) throw std::invalid_argument("restriction outside assignment domain");
        out.vars.push_back(v);
        out.vals.push_back(val);
    }
    return out;
}

/**
 * A finite measurement scenario: named variables, a single outcome set shared
 * by all variables, and an ordered family of contexts (jointly measurable
 * variable subsets). Construction fixes a canonical flattening of all
 * (context, assignment) pairs onto the index range [0, n): contexts in input
 * order, assignments within a context in lexicographic order of outcome
 * indices with the first context variable most significant.
 */
class Scenario {
  public:
    std::vector<std::string> variables;
    std::vector<std::string> outcomes;
    std::vector<std::vector<int>> contexts;  // variable indices, context-local order

    Scenario() = default;

    Scenario(std::vector<std::string> vars, std::vector<std::string> outs,
             const std::vector<std::vector<std::string>>& ctxs)
        : variables(std::move(vars)), outcomes(std::move(outs)) {
        if (variables.empty()) throw std::invalid_argument("scenario needs at least one variable");
        if (outcomes.empty()) throw std::invalid_argument("scenario needs at least one outcome");
        check_distinct(variables, "variable");
        check_distinct(outcomes, "outcome");
        std::set<std::set<int>> seen;
        for (const auto& ctx : ctxs) {
            if (ctx.empty()) throw std::invalid_argument("empty context");
            std::vector<int> ids;
            for (const auto& name : ctx) {
                auto it = std::find(variables.begin(), variables.end(), name);
                if (it == variables.end())
                    throw std::invalid_argument("context references unknown variable: " + name);
                ids.push_back(static_cast<int>(it - variables.begin()));
            }
            std::set<int> as_set(ids.begin(), ids.end());
            if (as_set.size() != ids.size())
                throw std::invalid_argument("repeated variable in context");
            if (!seen.insert(as_set).second)
                throw std::invalid_argument("duplicate context");
            contexts.push_back(std::move(ids));
        }
        if (contexts.empty()) throw std::invalid_argument("scenario needs at least one context");
        offsets_.resize(contexts.size() + 1, 0);
        for (std::size_t c = 0; c < contexts.size(); ++c)
            offsets_[c + 1] = offsets_[c] + pow_outcomes(contexts[c].size());
    }

    /** Total cell count n = sum over contexts of |O|^|C|. */
    std::int64_t cell_count() const { return offsets_.back(); }

    std::int64_t context_offset(int c) const { return offsets_.at(c); }
    std::int64_t context_cells(int c) const { return offsets_.at(c + 1) - offsets_.at(c); }

    int context_index(const std::vector<int>& ctx) const {
        std::set<int> key(ctx.begin(), ctx.end());
        for (std::size_t c = 0; c < contexts.size(); ++c)
            if (std::set<int>(contexts[c].begin(), contexts[c].end()) == key)
                return static_cast<int>(c);
        throw std::invalid_argument("unknown context");
    }

    int variable_index(const std::string& name) const {
        auto it = std::find(variables.begin(), variables.end(), name);
        if (it == variables.end()) throw std::invalid_argument("unknown variable: " + name);
        return static_cast<int>(it - variables.begin());
    }

    /** Rank of an assignment within the lexicographic enumeration of O^C. */
    std::int64_t assignment_rank(int c, const Assignment& a) const {
        const auto& ctx = contexts.at(c);
        std::int64_t rank = 0;
        for (int v : ctx) {
            int val = a.value_of(v);
            if (val < 0) throw std::invalid_argument("assignment does not cover context");
            rank = rank * static_cast<std::int64_t>(outcomes.size()) + val;
        }
        return rank;
    }

    Assignment assignment_at(int c, std::int64_t rank) const {
        const auto& ctx = contexts.at(c);
        Assignment a;
        a.vars = ctx;
        a.vals.assign(ctx.size(), 0);
        std::int64_t r = rank;
        for (std::size_t i = ctx.size(); i-- > 0;) {
            a.vals[i] = static_cast<int>(r % outcomes.size());
            r /= static_cast<std::int64_t>(outcomes.size());
        }
        if (r != 0) throw std::out_of_range("assignment rank out of range");
        return a;
    }

    std::int64_t cell_index(int c, const Assignment& a) const {
        return context_offset(c) + assignment_rank(c, a);
    }

    std::pair<int, Assignment> index_cell(std::int64_t idx) const {
        if (idx < 0 || idx >= cell_count()) throw std::out_of_range("cell index out of range");
        int c = 0;
        while (offsets_[c + 1] <= idx) ++c;
        return {c, assignment_at(c, idx - offsets_[c])};
    }

    /** All |O|^|C| assignments of context `c`, lexicographic. */
    std::vector<Assignment> assignments(int c) const {
        std::vector<Assignment> out;
        std::int64_t total = context_cells(c);
        out.reserve(total);
        for (std::int64_t r = 0; r < total; ++r) out.push_back(assignment_at(c, r));
        return out;
    }

    std::int64_t global_assignment_count() const { return pow_outcomes(variables.size()); }

    Assignment global_assignment_at(std::int64_t rank) const {
        Assignment a;
        a.vars.resize(variables.size());
        for (std::size_t i = 0; i < variables.size(); ++i) a.vars[i] = static_cast<int>(i);
        a.vals.assign(variables.size(), 0);
        std::int64_t r = rank;
        for (std::size_t i = variables.size(); i-- > 0;) {
            a.vals[i] = static_cast<int>(r % outcomes.size());
            r /= static_cast<std::int64_t>(outcomes.size());
        }
        if (r != 0) throw std::out_of_range("global assignment rank out of range");
        return a;
    }

    /** Streams all global assignments in lexicographic order, without materializing. */
    template <typename F>
    void for_each_global_assignment(F&& f) const {
        Assignment a;
        a.vars.resize(variables.size());
        for (std::size_t i = 0; i < variables.size(); ++i) a.vars[i] = static_cast<int>(i);
        a.vals.assign(variables.size(), 0);
        const int base = static_cast<int>(outcomes.size());
        while (true) {
            f(const_cast<const Assignment&>(a));
            std::size_t i = variables.size();
            while (i-- > 0) {
                if (++a.vals[i] < base) break;
                a.vals[i] = 0;
                if (i == 0) return;
            }
        }
    }

    std::string assignment_label(const Assignment& a) const {
        std::string s;
        for (std::size_t i = 0; i < a.vars.size(); ++i) {
            if (i) s += ',';
            s += outcomes.at(a.vals[i]);
        }
        return s;
    }

    std::string context_label(int c) const {
        std::string s;
        for (std::size_t i = 0; i < contexts[c].size(); ++i) {
            if (i) s += ',';
            s += variables[contexts[c][i]];
        }
        return s;
    }

    bool operator==(const Scenario& other) const {
        return variables == other.variables && outcomes == other.outcomes &&
               contexts == other.contexts;
    }

  private:
    std::vector<std::int64_t> offsets_;

    std::int64_t pow_outcomes(std::size_t k) const {
        std::int64_t p = 1;
        for (std::size_t i = 0; i < k; ++i) p *= static_cast<std::int64_t>(outcomes.size());
        return p;
    }

    static void check_distinct(const std::vector<std::string>& xs, const std::string& what) {
        std::set<std::string> s(xs.begin(), xs.end());
        if (s.size() != xs.size()) throw std::invalid_argument("duplicate " + what);
    }
};

}  // namespace nspoly

#endif  // NSPOLY_SCENARIO_HPP
