#ifndef NSPOLY_BELLIZE_HPP
#define NSPOLY_BELLIZE_HPP

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "model.hpp"
#include "scenario.hpp"

namespace nspoly {

/**
 * Support of the single-variable boolean marginal, well-defined across
 * containing contexts by boolean no-signalling (asserted, not assumed).
 */
inline std::set<int> marginal_support(const BooleanModel& model, int variable) {
    const Scenario& sc = model.scenario;
    std::set<int> result;
    bool found = false;
    for (std::size_t c = 0; c < sc.contexts.size(); ++c) {
        const auto& ctx = sc.contexts[c];
        if (std::find(ctx.begin(), ctx.end(), variable) == ctx.end()) continue;
        auto marg = marginalize(model, static_cast<int>(c), {variable});
        std::set<int> here;
        for (std::size_t o = 0; o < marg.size(); ++o)
            if (marg[o]) here.insert(static_cast<int>(o));
        if (!found) {
            result = std::move(here);
            found = true;
        } else if (here != result) {
            throw std::invalid_argument("single-variable marginals disagree across contexts: "
                                        "input is not no-signalling");
        }
    }
    if (!found) throw std::invalid_argument("variable occurs in no context");
    return result;
}

inline std::string party_variable(const std::string& base, int party) {
    return base + "|" + std::to_string(party);
}

inline void require_complete_pairwise(const Scenario& sc) {
    std::set<std::set<int>> pairs;
    for (const auto& ctx : sc.contexts) {
        if (ctx.size() != 2)
            throw std::invalid_argument("bellization requires contexts of exactly two variables");
        pairs.insert(std::set<int>(ctx.begin(), ctx.end()));
    }
    const std::size_t v = sc.variables.size();
    if (pairs.size() != v * (v - 1) / 2)
        throw std::invalid_argument("bellization requires the complete family of variable pairs");
}

/**
 * Doubled bipartite scenario: party-1 copies P|1, party-2 copies P|2, one
 * context per pair (P|1, Q|2), outcomes unchanged. Contexts are ordered with
 * the party-1 variable ranging slowest.
 */
inline Scenario bellize_scenario(const Scenario& sc) {
    require_complete_pairwise(sc);
    std::vector<std::string> vars;
    for (const auto& v : sc.variables) vars.push_back(party_variable(v, 1));
    for (const auto& v : sc.variables) vars.push_back(party_variable(v, 2));
    std::vector<std::vector<std::string>> contexts;
    for (const auto& p : sc.variables)
        for (const auto& q : sc.variables)
            contexts.push_back({party_variable(p, 1), party_variable(q, 2)});
    return Scenario(std::move(vars), sc.outcomes, contexts);
}

/**
 * The Bell-type doubling of a possibilistic model on a complete pairwise
 * scenario. Context (P|1, Q|2) carries the original sections of {P, Q} with
 * the roles P -> P|1, Q -> Q|2; diagonal contexts (P|1, P|2) carry the
 * equality sections over the single-variable marginal support.
 */
inline BooleanModel bellize_model(const BooleanModel& model) {
    const Scenario& sc = model.scenario;
    require_complete_pairwise(sc);
    if (!check_no_signalling(model).empty())
        throw std::invalid_argument("bellization requires a boolean no-signalling model");
    Scenario doubled = bellize_scenario(sc);
    std::vector<bool> cells(doubled.cell_count(), false);
    const int v = static_cast<int>(sc.variables.size());
    for (int p = 0; p < v; ++p) {
        for (int q = 0; q < v; ++q) {
            int c = p * v + q;  // context (P|1, Q|2)
            if (p == q) {
                for (int o : marginal_support(model, p)) {
                    Assignment diag;
                    diag.vars = doubled.contexts[c];
                    diag.vals = {o, o};
                    cells[doubled.cell_index(c, diag)] = true;
                }
                continue;
            }
            int orig = sc.context_index({p, q});
            for (const auto& s : sc.assignments(orig)) {
                if (!model.at(orig, s)) continue;
                Assignment t;
                t.vars = doubled.contexts[c];
                t.vals = {s.value_of(p), s.value_of(q)};
                cells[doubled.cell_index(c, t)] = true;
            }
        }
    }
    BooleanModel out(doubled, std::move(cells));
    if (!check_no_signalling(out).empty())
        throw std::logic_error("bellized model lost no-signalling");
    return out;
}

}  // namespace nspoly

#endif  // NSPOLY_BELLIZE_HPP
