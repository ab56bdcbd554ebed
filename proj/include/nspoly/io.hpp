#ifndef NSPOLY_IO_HPP
#define NSPOLY_IO_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lattice.hpp"
#include "model.hpp"
#include "polytope.hpp"
#include "rational.hpp"
#include "scenario.hpp"
#include "support.hpp"

namespace nspoly {

// Documents are JSON with a "kind" discriminator. Serialization is canonical:
// keys sorted (nlohmann's default object ordering), rationals rendered "p/q"
// or as bare integers, boolean cells present iff possible. parse o serialize
// is the identity on canonical documents.

using Json = nlohmann::json;

inline std::string dump_document(const Json& j) { return j.dump(2) + "\n"; }

inline Json expect_kind(const std::string& text, const std::string& kind) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& err) {
        throw ParseError(std::string("invalid document: ") + err.what());
    }
    if (!j.is_object() || !j.contains("kind") || j["kind"] != kind)
        throw ParseError("expected a document of kind \"" + kind + "\"");
    return j;
}

// ---------------------------------------------------------------- scenario

inline Json scenario_to_json(const Scenario& sc) {
    Json j;
    j["kind"] = "scenario";
    j["variables"] = sc.variables;
    j["outcomes"] = sc.outcomes;
    Json ctxs = Json::array();
    for (std::size_t c = 0; c < sc.contexts.size(); ++c) {
        Json ctx = Json::array();
        for (int v : sc.contexts[c]) ctx.push_back(sc.variables[v]);
        ctxs.push_back(std::move(ctx));
    }
    j["contexts"] = std::move(ctxs);
    return j;
}

inline std::string serialize_scenario(const Scenario& sc) {
    return dump_document(scenario_to_json(sc));
}

inline Scenario scenario_from_json(const Json& j) {
    try {
        std::vector<std::string> vars = j.at("variables").get<std::vector<std::string>>();
        std::vector<std::string> outs = j.at("outcomes").get<std::vector<std::string>>();
        auto ctxs = j.at("contexts").get<std::vector<std::vector<std::string>>>();
        return Scenario(std::move(vars), std::move(outs), ctxs);
    } catch (const Json::exception& err) {
        throw ParseError(std::string("malformed scenario document: ") + err.what());
    } catch (const std::invalid_argument& err) {
        throw ParseError(std::string("invalid scenario: ") + err.what());
    }
}

inline Scenario parse_scenario(const std::string& text) {
    return scenario_from_json(expect_kind(text, "scenario"));
}

// ------------------------------------------------------------------- model

/**
 * Cells are an object keyed by "context-label:assignment-label". Rational
 * entries are "p/q" or integer strings; boolean entries are the number 1.
 * Zero cells are omitted, so the possibilistic documents read as supports.
 */
inline Json model_to_json(const RationalModel& m) {
    Json j;
    j["kind"] = "model";
    j["semiring"] = "rational";
    j["scenario"] = scenario_to_json(m.scenario);
    Json cells = Json::object();
    for (std::int64_t i = 0; i < m.scenario.cell_count(); ++i) {
        if (m.cells[i] == 0) continue;
        auto [c, a] = m.scenario.index_cell(i);
        cells[m.scenario.context_label(c) + ":" + m.scenario.assignment_label(a)] =
            rational_to_string(m.cells[i]);
    }
    j["cells"] = std::move(cells);
    return j;
}

inline Json model_to_json(const BooleanModel& m) {
    Json j;
    j["kind"] = "model";
    j["semiring"] = "boolean";
    j["scenario"] = scenario_to_json(m.scenario);
    Json cells = Json::object();
    for (std::int64_t i = 0; i < m.scenario.cell_count(); ++i) {
        if (!m.cells[i]) continue;
        auto [c, a] = m.scenario.index_cell(i);
        cells[m.scenario.context_label(c) + ":" + m.scenario.assignment_label(a)] = 1;
    }
    j["cells"] = std::move(cells);
    return j;
}

inline std::string serialize_model(const RationalModel& m) { return dump_document(model_to_json(m)); }
inline std::string serialize_model(const BooleanModel& m) { return dump_document(model_to_json(m)); }

namespace detail {

inline std::int64_t cell_index_of_label(const Scenario& sc, const std::string& label) {
    for (std::int64_t i = 0; i < sc.cell_count(); ++i) {
        auto [c, a] = sc.index_cell(i);
        if (sc.context_label(c) + ":" + sc.assignment_label(a) == label) return i;
    }
    throw ParseError("unknown cell label: " + label);
}

}  // namespace detail

struct ParsedModel {
    bool boolean = false;
    std::optional<RationalModel> rational;
    std::optional<BooleanModel> possibilistic;

    const Scenario& scenario() const {
        return boolean ? possibilistic->scenario : rational->scenario;
    }
};

inline ParsedModel model_from_json(const Json& j) {
    ParsedModel out;
    try {
        Scenario sc = scenario_from_json(j.at("scenario"));
        std::string semiring = j.at("semiring").get<std::string>();
        const Json& cells = j.at("cells");
        if (!cells.is_object()) throw ParseError("model cells must be an object");
        if (semiring == "rational") {
            std::vector<Rational> data(sc.cell_count(), Rational(0));
            for (auto it = cells.begin(); it != cells.end(); ++it) {
                std::string text = it.value().is_string() ? it.value().get<std::string>()
                                                          : it.value().dump();
                data[detail::cell_index_of_label(sc, it.key())] = parse_rational(text);
            }
            out.rational = RationalModel(std::move(sc), std::move(data));
        } else if (semiring == "boolean") {
            std::vector<bool> data(sc.cell_count(), false);
            for (auto it = cells.begin(); it != cells.end(); ++it) {
                if (!it.value().is_number_integer() ||
                    (it.value() != 0 && it.value() != 1))
                    throw ParseError("boolean cell must be 0 or 1: " + it.key());
                data[detail::cell_index_of_label(sc, it.key())] = (it.value() == 1);
            }
            out.boolean = true;
            out.possibilistic = BooleanModel(std::move(sc), std::move(data));
        } else {
            throw ParseError("unknown semiring: " + semiring);
        }
    } catch (const Json::exception& err) {
        throw ParseError(std::string("malformed model document: ") + err.what());
    }
    return out;
}

inline ParsedModel parse_model(const std::string& text) {
    return model_from_json(expect_kind(text, "model"));
}

// ------------------------------------------------------------------ system

inline Json vec_to_json(const Vec& v) {
    Json a = Json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(rational_to_string(v(i)));
    return a;
}

inline Vec vec_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("vector must be an array");
    Vec v(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<int>(i)) = parse_rational(j[i].get<std::string>());
    return v;
}

inline const char* row_tag_name(RowTag t) {
    switch (t) {
        case RowTag::Normalization: return "normalization";
        case RowTag::NoSignalling: return "no-signalling";
        default: return "user";
    }
}

inline RowTag row_tag_of(const std::string& s) {
    if (s == "normalization") return RowTag::Normalization;
    if (s == "no-signalling") return RowTag::NoSignalling;
    if (s == "user") return RowTag::User;
    throw ParseError("unknown row tag: " + s);
}

inline Json system_to_json(const ConstraintSystem& sys) {
    Json j;
    j["kind"] = "system";
    j["columns"] = sys.column_labels;
    Json rows = Json::array();
    for (int i = 0; i < sys.rows(); ++i) {
        Json row;
        Json coeffs = Json::object();
        for (int c = 0; c < sys.columns(); ++c)
            if (sys.a(i, c) != 0)
                coeffs[sys.column_labels[c]] = rational_to_string(sys.a(i, c));
        row["coefficients"] = std::move(coeffs);
        row["rhs"] = rational_to_string(sys.b(i));
        row["tag"] = row_tag_name(sys.row_tags[i]);
        row["note"] = sys.row_notes[i];
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

inline std::string serialize_system(const ConstraintSystem& sys) {
    return dump_document(system_to_json(sys));
}

inline ConstraintSystem system_from_json(const Json& j) {
    ConstraintSystem sys;
    try {
        sys.column_labels = j.at("columns").get<std::vector<std::string>>();
        std::map<std::string, int> col_index;
        for (std::size_t c = 0; c < sys.column_labels.size(); ++c)
            col_index[sys.column_labels[c]] = static_cast<int>(c);
        if (col_index.size() != sys.column_labels.size())
            throw ParseError("duplicate column label");
        const Json& rows = j.at("rows");
        sys.a = Mat::Zero(static_cast<int>(rows.size()), static_cast<int>(sys.column_labels.size()));
        sys.b = Vec::Zero(static_cast<int>(rows.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Json& row = rows[i];
            for (auto it = row.at("coefficients").begin(); it != row.at("coefficients").end(); ++it) {
                auto found = col_index.find(it.key());
                if (found == col_index.end()) throw ParseError("unknown column: " + it.key());
                sys.a(static_cast<int>(i), found->second) =
                    parse_rational(it.value().get<std::string>());
            }
            sys.b(static_cast<int>(i)) = parse_rational(row.at("rhs").get<std::string>());
            sys.row_tags.push_back(row_tag_of(row.at("tag").get<std::string>()));
            sys.row_notes.push_back(row.value("note", std::string()));
        }
    } catch (const Json::exception& err) {
        throw ParseError(std::string("malformed system document: ") + err.what());
    }
    return sys;
}

inline ConstraintSystem parse_system(const std::string& text) {
    return system_from_json(expect_kind(text, "system"));
}

// ----------------------------------------------------------------- lattice

inline Json lattice_to_json(const SupportLattice& lat) {
    Json j;
    j["kind"] = "lattice";
    Json nodes = Json::array();
    for (const auto& node : lat.nodes) {
        Json n;
        n["support"] = support_to_string(node.support);
        n["dimension"] = node.dimension;
        if (!node.is_bottom) n["witness"] = vec_to_json(node.witness);
        if (node.is_atom) n["atom"] = 1;
        nodes.push_back(std::move(n));
    }
    j["nodes"] = std::move(nodes);
    Json edges = Json::array();
    for (const auto& [lo, hi] : lat.hasse) edges.push_back(Json::array({lo, hi}));
    j["edges"] = std::move(edges);
    Json verts = Json::array();
    for (const auto& v : lat.vertices) {
        Json vj;
        vj["support"] = support_to_string(v.support);
        vj["point"] = vec_to_json(v.point);
        verts.push_back(std::move(vj));
    }
    j["vertices"] = std::move(verts);
    j["top"] = lat.top;
    return j;
}

inline std::string serialize_lattice(const SupportLattice& lat) {
    return dump_document(lattice_to_json(lat));
}

/** DOT rendering of the Hasse diagram: nodes "support/dim", edges = covers. */
inline std::string lattice_to_dot(const SupportLattice& lat) {
    std::string out = "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
        const auto& n = lat.nodes[i];
        std::string label = n.is_bottom ? std::string("bottom") : support_to_string(n.support);
        out += "  n" + std::to_string(i) + " [label=\"" + label + "/" +
               std::to_string(n.dimension) + "\"];\n";
    }
    for (const auto& [lo, hi] : lat.hasse)
        out += "  n" + std::to_string(lo) + " -> n" + std::to_string(hi) + ";\n";
    out += "}\n";
    return out;
}

// ------------------------------------------------------------------ report

/** Flat ordered report: a list of (key, value-string) findings plus a verdict. */
inline Json report_to_json(const std::string& subject, bool ok,
                           const std::vector<std::pair<std::string, std::string>>& findings) {
    Json j;
    j["kind"] = "report";
    j["subject"] = subject;
    j["ok"] = ok ? 1 : 0;
    Json f = Json::array();
    for (const auto& [k, v] : findings) f.push_back(Json::array({k, v}));
    j["findings"] = std::move(f);
    return j;
}

inline std::string serialize_report(const std::string& subject, bool ok,
                                    const std::vector<std::pair<std::string, std::string>>& findings) {
    return dump_document(report_to_json(subject, ok, findings));
}

}  // namespace nspoly

#endif  // NSPOLY_IO_HPP
