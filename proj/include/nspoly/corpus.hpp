#ifndef NSPOLY_CORPUS_HPP
#define NSPOLY_CORPUS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "model.hpp"
#include "scenario.hpp"

namespace nspoly {

/**
 * A named built-in example. Entries carry either a probabilistic or a
 * possibilistic model (or a bare scenario); every model re-validates
 * normalization and no-signalling at load time.
 */
struct CorpusEntry {
    std::string name;
    std::string note;
    Scenario scenario;
    std::optional<RationalModel> rational_model;
    std::optional<BooleanModel> boolean_model;
};

namespace detail {

inline BooleanModel sections_model(const Scenario& sc,
                                   const std::vector<std::vector<std::string>>& sections) {
    // sections[c] lists possible assignments of context c as outcome strings,
    // one character per context variable in context order
    if (sections.size() != sc.contexts.size())
        throw std::invalid_argument("section list does not cover every context");
    std::vector<bool> cells(sc.cell_count(), false);
    for (std::size_t c = 0; c < sections.size(); ++c) {
        for (const auto& word : sections[c]) {
            const auto& ctx = sc.contexts[c];
            if (word.size() != ctx.size())
                throw std::invalid_argument("section word length mismatch: " + word);
            Assignment a;
            a.vars = ctx;
            for (char ch : word) {
                auto it = std::find(sc.outcomes.begin(), sc.outcomes.end(), std::string(1, ch));
                if (it == sc.outcomes.end())
                    throw std::invalid_argument("unknown outcome in section word: " + word);
                a.vals.push_back(static_cast<int>(it - sc.outcomes.begin()));
            }
            cells[sc.cell_index(static_cast<int>(c), a)] = true;
        }
    }
    return BooleanModel(sc, std::move(cells));
}

inline void validate_entry(const CorpusEntry& e) {
    if (e.rational_model) {
        if (!check_normalization(*e.rational_model).empty())
            throw std::logic_error("corpus entry " + e.name + " fails normalization");
        if (!check_no_signalling(*e.rational_model).empty())
            throw std::logic_error("corpus entry " + e.name + " fails no-signalling");
    }
    if (e.boolean_model) {
        if (!check_normalization(*e.boolean_model).empty())
            throw std::logic_error("corpus entry " + e.name + " fails boolean normalization");
        if (!check_no_signalling(*e.boolean_model).empty())
            throw std::logic_error("corpus entry " + e.name + " fails boolean no-signalling");
    }
}

}  // namespace detail

inline Scenario bell_scenario() {
    return Scenario({"a", "a'", "b", "b'"}, {"0", "1"},
                    {{"a", "b"}, {"a'", "b"}, {"a", "b'"}, {"a'", "b'"}});
}

/** The two-party, two-setting, two-outcome quantum table. */
inline CorpusEntry corpus_bell_qm() {
    CorpusEntry e;
    e.name = "bell-qm";
    e.note = "bipartite (2,2,2) quantum correlations; nonlocal but no-signalling";
    e.scenario = bell_scenario();
    auto r = [](long p, long q) { return Rational(p, q); };
    std::vector<Rational> cells = {
        r(0, 1), r(1, 2), r(1, 2), r(0, 1),  // a,b
        r(3, 8), r(1, 8), r(1, 8), r(3, 8),  // a',b
        r(3, 8), r(1, 8), r(1, 8), r(3, 8),  // a,b'
        r(3, 8), r(1, 8), r(1, 8), r(3, 8),  // a',b'
    };
    e.rational_model = RationalModel(e.scenario, std::move(cells));
    detail::validate_entry(e);
    return e;
}

/**
 * An 18-variable, 9-context Kochen-Specker scenario; the one-hot model makes
 * possible exactly the sections assigning 1 to a single context variable.
 */
inline CorpusEntry corpus_ks_18() {
    CorpusEntry e;
    e.name = "ks-18";
    e.note = "18-vector Kochen-Specker construction with the one-hot possibilistic model";
    std::vector<std::string> vars;
    for (char c = 'A'; c <= 'R'; ++c) vars.emplace_back(1, c);
    std::vector<std::vector<std::string>> contexts = {
        {"A", "B", "C", "D"}, {"A", "E", "F", "G"}, {"H", "I", "C", "J"},
        {"H", "K", "G", "L"}, {"B", "E", "M", "N"}, {"I", "K", "N", "O"},
        {"P", "Q", "D", "J"}, {"P", "R", "F", "L"}, {"Q", "R", "M", "O"},
    };
    e.scenario = Scenario(std::move(vars), {"0", "1"}, contexts);
    std::vector<bool> cells(e.scenario.cell_count(), false);
    for (std::size_t c = 0; c < e.scenario.contexts.size(); ++c) {
        for (const auto& a : e.scenario.assignments(static_cast<int>(c))) {
            int ones = 0;
            for (int v : a.vals) ones += v;
            if (ones == 1) cells[e.scenario.cell_index(static_cast<int>(c), a)] = true;
        }
    }
    e.boolean_model = BooleanModel(e.scenario, std::move(cells));
    detail::validate_entry(e);
    return e;
}

inline Scenario model_s_scenario() {
    return Scenario({"A", "B", "C", "D"}, {"0", "1", "2"},
                    {{"A", "B"}, {"A", "C"}, {"A", "D"}, {"B", "C"}, {"B", "D"}, {"C", "D"}});
}

/**
 * The minimal possibilistic no-signalling model that is the support of no
 * probabilistic model: its coefficients collapse to a single unknown subject
 * to a = a + a, solvable in the booleans but not in the positive reals.
 */
inline CorpusEntry corpus_model_s() {
    CorpusEntry e;
    e.name = "model-s";
    e.note = "minimal possibilistic no-signalling model realizable by no probabilistic model";
    e.scenario = model_s_scenario();
    e.boolean_model = detail::sections_model(e.scenario, {
        {"00", "10", "21"},  // AB
        {"00", "11", "21"},  // AC
        {"01", "10", "21"},  // AD
        {"00", "11"},        // BC
        {"00", "11"},        // BD
        {"01", "10"},        // CD
    });
    detail::validate_entry(e);
    return e;
}

/**
 * The Bell-type doubling of model-s: two parties with four settings each and
 * three outcomes. Contexts run (P|1, Q|2) with the party-1 setting slowest;
 * a context named "Q|2 first" in two-index notation (e.g. A2B1) appears here
 * as (B|1, A|2) with its section words reversed accordingly.
 */
inline CorpusEntry corpus_model_s_bell() {
    CorpusEntry e;
    e.name = "model-s-bell";
    e.note = "Bell-type doubling of model-s; equally unrealizable and strongly contextual";
    std::vector<std::string> vars = {"A|1", "B|1", "C|1", "D|1", "A|2", "B|2", "C|2", "D|2"};
    std::vector<std::vector<std::string>> contexts;
    const char* names = "ABCD";
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            contexts.push_back({std::string(1, names[p]) + "|1", std::string(1, names[q]) + "|2"});
    e.scenario = Scenario(std::move(vars), {"0", "1", "2"}, contexts);
    e.boolean_model = detail::sections_model(e.scenario, {
        // row p = party-1 setting, column q = party-2 setting
        {"00", "11", "22"},  // A1 A2
        {"00", "10", "21"},  // A1 B2
        {"00", "11", "21"},  // A1 C2
        {"01", "10", "21"},  // A1 D2
        {"00", "01", "12"},  // B1 A2   (A2B1 -> 00,10,21 reversed)
        {"00", "11"},        // B1 B2
        {"00", "11"},        // B1 C2
        {"00", "11"},        // B1 D2
        {"00", "11", "12"},  // C1 A2   (A2C1 -> 00,11,21 reversed)
        {"00", "11"},        // C1 B2   (B2C1 -> 00,11 reversed)
        {"00", "11"},        // C1 C2
        {"01", "10"},        // C1 D2
        {"10", "01", "12"},  // D1 A2   (A2D1 -> 01,10,21 reversed)
        {"00", "11"},        // D1 B2   (B2D1 -> 00,11 reversed)
        {"10", "01"},        // D1 C2   (C2D1 -> 01,10 reversed)
        {"00", "11"},        // D1 D2
    });
    detail::validate_entry(e);
    return e;
}

inline std::vector<CorpusEntry> corpus_all() {
    return {corpus_bell_qm(), corpus_ks_18(), corpus_model_s(), corpus_model_s_bell()};
}

inline CorpusEntry corpus_lookup(const std::string& name) {
    for (auto& e : corpus_all())
        if (e.name == name) return e;
    throw std::invalid_argument("unknown corpus entry: " + name);
}

}  // namespace nspoly

#endif  // NSPOLY_CORPUS_HPP
