// nspoly: exact analysis of no-signalling polytopes from the command line.
//
// Exit codes: 0 = success / property holds, 1 = property fails,
// 2 = usage or parse error. All outputs are canonical documents, so any
// witness printed here can be piped back into `validate`.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <nspoly/bellize.hpp>
#include <nspoly/contextuality.hpp>
#include <nspoly/corpus.hpp>
#include <nspoly/io.hpp>
#include <nspoly/lattice.hpp>
#include <nspoly/polytope.hpp>

namespace {

using namespace nspoly;

std::string read_input_file(const std::string& arg) {
    std::ifstream in(arg);
    if (!in.is_open()) {
        const char* dir = std::getenv("NSPOLY_CORPUS_DIR");
        if (dir) in.open(std::string(dir) + "/" + arg);
    }
    if (!in.is_open()) throw ParseError("cannot open input: " + arg);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_corpus_name(const std::string& arg) {
    for (const auto& e : corpus_all())
        if (e.name == arg) return true;
    return false;
}

/** Inputs are corpus entry names, file paths, or paths under NSPOLY_CORPUS_DIR. */
ParsedModel load_model(const std::string& arg) {
    if (is_corpus_name(arg)) {
        CorpusEntry e = corpus_lookup(arg);
        ParsedModel m;
        if (e.rational_model) {
            m.rational = e.rational_model;
        } else if (e.boolean_model) {
            m.boolean = true;
            m.possibilistic = e.boolean_model;
        } else {
            throw ParseError("corpus entry " + arg + " carries no model");
        }
        return m;
    }
    return parse_model(read_input_file(arg));
}

Scenario load_scenario(const std::string& arg) {
    if (is_corpus_name(arg)) return corpus_lookup(arg).scenario;
    std::string text = read_input_file(arg);
    Json j = Json::parse(text, nullptr, false);
    if (j.is_object() && j.value("kind", "") == "model")
        return model_from_json(j).scenario();
    return parse_scenario(text);
}

RationalModel require_rational(const ParsedModel& m, const std::string& what) {
    if (m.boolean) throw ParseError(what + " requires a rational model");
    return *m.rational;
}

BooleanModel as_boolean(const ParsedModel& m) {
    if (m.boolean) return *m.possibilistic;
    return possibilistic_collapse(*m.rational);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out.is_open()) throw ParseError("cannot open output: " + out_path);
    out << text;
}

template <typename S>
int run_validate(const EmpiricalModel<S>& m, const std::string& out_path) {
    std::vector<std::pair<std::string, std::string>> findings;
    for (const auto& v : check_normalization(m)) {
        std::ostringstream ss;
        ss << v.sum;
        findings.emplace_back("normalization " + m.scenario.context_label(v.context),
                              "sums to " + ss.str());
    }
    for (const auto& v : check_no_signalling(m)) {
        std::ostringstream sa, sb;
        sa << v.marginal_a;
        sb << v.marginal_b;
        std::string where;
        for (std::size_t i = 0; i < v.shared.vars.size(); ++i) {
            if (i) where += ',';
            where += m.scenario.variables[v.shared.vars[i]] + "=" +
                     m.scenario.outcomes[v.shared.vals[i]];
        }
        findings.emplace_back("no-signalling " + m.scenario.context_label(v.context_a) + " ~ " +
                                  m.scenario.context_label(v.context_b) + " @ " + where,
                              sa.str() + " != " + sb.str());
    }
    emit(serialize_report("validate", findings.empty(), findings), out_path);
    return findings.empty() ? 0 : 1;
}

int run_selftest(unsigned seed) {
    std::mt19937_64 rng(seed);
    Scenario sc = bell_scenario();
    ConstraintSystem sys = assemble_constraints(sc);
    auto verts = enumerate_vertices(sys);
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    std::uniform_int_distribution<int> num(1, 7);
    for (int trial = 0; trial < 100; ++trial) {
        const Vertex& x = verts[pick(rng)];
        const Vertex& y = verts[pick(rng)];
        Rational lambda(num(rng), 8);
        Vec z = lambda * x.point + (Rational(1) - lambda) * y.point;
        if (vector_support(z) != support_join(x.support, y.support)) {
            std::cerr << "selftest: support-join law failed\n";
            return 1;
        }
        if (!membership(sys, z)) {
            std::cerr << "selftest: mixture left the polytope\n";
            return 1;
        }
        RationalModel m = vector_to_model(sc, std::vector<Rational>(z.data(), z.data() + z.size()));
        if (!check_no_signalling(possibilistic_collapse(m)).empty()) {
            std::cerr << "selftest: collapse broke no-signalling\n";
            return 1;
        }
    }
    std::cout << "selftest ok (seed " << seed << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact toolkit for no-signalling polytopes of measurement scenarios"};
    app.require_subcommand(1);
    std::string input, assignment, out_path;
    bool classify = false, dot = false, want_witness = false;
    unsigned seed = 20240831;
    int guard = 65536, max_columns = 20;

    auto* c_validate = app.add_subcommand("validate", "Check normalization and no-signalling");
    c_validate->add_option("model", input)->required();
    c_validate->add_option("--out", out_path);

    auto* c_collapse = app.add_subcommand("collapse", "Possibilistic collapse of a rational model");
    c_collapse->add_option("model", input)->required();
    c_collapse->add_option("--out", out_path);

    auto* c_vertices = app.add_subcommand("vertices", "Enumerate polytope vertices of a scenario");
    c_vertices->add_option("scenario", input)->required();
    c_vertices->add_flag("--classify", classify, "Tag vertices deterministic / strongly contextual");
    c_vertices->add_option("--out", out_path);

    auto* c_lattice = app.add_subcommand("lattice", "Support lattice (= face lattice) of a scenario");
    c_lattice->add_option("scenario", input)->required();
    c_lattice->add_flag("--dot", dot, "Emit a DOT graph of the Hasse diagram");
    c_lattice->add_option("--out", out_path);

    auto* c_carrier = app.add_subcommand("carrier", "Carrier face of a rational model");
    c_carrier->add_option("model", input)->required();
    c_carrier->add_option("--out", out_path);

    auto* c_realizable =
        app.add_subcommand("realizable", "Is the support the collapse of a rational model?");
    c_realizable->add_option("model", input)->required();
    c_realizable->add_flag("--witness", want_witness, "Print a realizing model when one exists");
    c_realizable->add_option("--out", out_path);

    auto* c_sc = app.add_subcommand("sc", "Strong contextuality of a model's support");
    c_sc->add_option("model", input)->required();
    c_sc->add_option("--out", out_path);

    auto* c_local = app.add_subcommand("local", "Membership in the local polytope Conv(LD)");
    c_local->add_option("model", input)->required();
    c_local->add_option("--guard", guard, "Refuse above this many global assignments");
    c_local->add_option("--out", out_path);

    auto* c_bellize = app.add_subcommand("bellize", "Bell-type doubling of a pairwise model");
    c_bellize->add_option("model", input)->required();
    c_bellize->add_option("--out", out_path);

    auto* c_dim = app.add_subcommand("dim", "Dimension of the no-signalling polytope");
    c_dim->add_option("scenario", input)->required();

    auto* c_corpus = app.add_subcommand("corpus", "List or dump built-in examples");
    std::string corpus_action = "list", corpus_name;
    c_corpus->add_option("action", corpus_action)->check(CLI::IsMember({"list", "dump"}));
    c_corpus->add_option("name", corpus_name,
                         "Entry name, uniform:<scenario>, or det:<scenario>:<outcomes>");
    c_corpus->add_option("--out", out_path);

    auto* c_selftest = app.add_subcommand("selftest", "Randomized invariant spot-checks");
    c_selftest->add_option("--seed", seed);

    (void)max_columns;
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        using namespace nspoly;
        if (c_validate->parsed()) {
            ParsedModel m = load_model(input);
            return m.boolean ? run_validate(*m.possibilistic, out_path)
                             : run_validate(*m.rational, out_path);
        }
        if (c_collapse->parsed()) {
            RationalModel m = require_rational(load_model(input), "collapse");
            emit(serialize_model(possibilistic_collapse(m)), out_path);
            return 0;
        }
        if (c_vertices->parsed()) {
            Scenario sc = load_scenario(input);
            std::vector<std::pair<std::string, std::string>> findings;
            if (classify) {
                for (const auto& [v, cls] : classify_vertices(sc))
                    findings.emplace_back(support_to_string(v.support),
                                          cls.tag == VertexTag::LocalDeterministic
                                              ? "local deterministic"
                                              : "minimal strongly contextual");
            } else {
                ConstraintSystem sys = assemble_constraints(sc);
                for (const auto& v : enumerate_vertices(sys)) {
                    std::string point;
                    for (int i = 0; i < v.point.size(); ++i) {
                        if (i) point += ' ';
                        point += rational_to_string(v.point(i));
                    }
                    findings.emplace_back(support_to_string(v.support), point);
                }
            }
            emit(serialize_report("vertices", true, findings), out_path);
            return 0;
        }
        if (c_lattice->parsed()) {
            Scenario sc = load_scenario(input);
            SupportLattice lat = support_lattice(assemble_constraints(sc));
            emit(dot ? lattice_to_dot(lat) : serialize_lattice(lat), out_path);
            return 0;
        }
        if (c_carrier->parsed()) {
            RationalModel m = require_rational(load_model(input), "carrier");
            ConstraintSystem sys = assemble_constraints(m.scenario);
            Vec x(static_cast<int>(m.cells.size()));
            for (std::size_t i = 0; i < m.cells.size(); ++i) x(static_cast<int>(i)) = m.cells[i];
            Face f = carrier_face(sys, x);
            emit(serialize_report("carrier", true,
                                  {{"support", support_to_string(f.support)},
                                   {"dimension", std::to_string(f.dimension)}}),
                 out_path);
            return 0;
        }
        if (c_realizable->parsed()) {
            BooleanModel m = as_boolean(load_model(input));
            auto witness = is_realizable(m);
            if (!witness) {
                emit("NOT realizable\n", out_path);
                return 1;
            }
            emit(want_witness ? serialize_model(*witness) : std::string("realizable\n"), out_path);
            return 0;
        }
        if (c_sc->parsed()) {
            BooleanModel m = as_boolean(load_model(input));
            auto r = is_strongly_contextual(m);
            if (r.strongly_contextual) {
                emit("strongly contextual\n", out_path);
                return 0;
            }
            emit(serialize_report(
                     "sc", false,
                     {{"global assignment", m.scenario.assignment_label(*r.witness)}}),
                 out_path);
            return 1;
        }
        if (c_local->parsed()) {
            RationalModel m = require_rational(load_model(input), "local");
            auto dec = is_local(m, guard);
            if (!dec) {
                emit("NOT local\n", out_path);
                return 1;
            }
            std::vector<std::pair<std::string, std::string>> findings;
            for (std::size_t g = 0; g < dec->weights.size(); ++g) {
                if (dec->weights[g] == 0) continue;
                findings.emplace_back(
                    m.scenario.assignment_label(
                        m.scenario.global_assignment_at(static_cast<std::int64_t>(g))),
                    rational_to_string(dec->weights[g]));
            }
            emit(serialize_report("local", true, findings), out_path);
            return 0;
        }
        if (c_bellize->parsed()) {
            BooleanModel m = as_boolean(load_model(input));
            emit(serialize_model(bellize_model(m)), out_path);
            return 0;
        }
        if (c_dim->parsed()) {
            Scenario sc = load_scenario(input);
            ConstraintSystem sys = assemble_constraints(sc);
            std::cout << (sys.columns() - matrix_rank(sys.a)) << "\n";
            return 0;
        }
        if (c_corpus->parsed()) {
            if (corpus_action == "list") {
                for (const auto& e : corpus_all()) std::cout << e.name << "\t" << e.note << "\n";
                return 0;
            }
            if (corpus_name.rfind("uniform:", 0) == 0) {
                Scenario sc = load_scenario(corpus_name.substr(8));
                emit(serialize_model(uniform_model(sc)), out_path);
                return 0;
            }
            if (corpus_name.rfind("det:", 0) == 0) {
                std::string rest = corpus_name.substr(4);
                auto colon = rest.rfind(':');
                if (colon == std::string::npos)
                    throw ParseError("det generator needs det:<scenario>:<outcomes>");
                Scenario sc = load_scenario(rest.substr(0, colon));
                std::string word = rest.substr(colon + 1);
                if (word.size() != sc.variables.size())
                    throw ParseError("det generator needs one outcome per variable");
                Assignment g;
                for (std::size_t v = 0; v < sc.variables.size(); ++v) {
                    auto it = std::find(sc.outcomes.begin(), sc.outcomes.end(),
                                        std::string(1, word[v]));
                    if (it == sc.outcomes.end()) throw ParseError("unknown outcome in: " + word);
                    g.vars.push_back(static_cast<int>(v));
                    g.vals.push_back(static_cast<int>(it - sc.outcomes.begin()));
                }
                emit(serialize_model(deterministic_model(sc, g)), out_path);
                return 0;
            }
            CorpusEntry e = corpus_lookup(corpus_name);
            if (e.rational_model) emit(serialize_model(*e.rational_model), out_path);
            else if (e.boolean_model) emit(serialize_model(*e.boolean_model), out_path);
            else emit(serialize_scenario(e.scenario), out_path);
            return 0;
        }
        if (c_selftest->parsed()) return run_selftest(seed);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
