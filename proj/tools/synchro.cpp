// Command-line front end. Exit codes: 0 success, 1 negative verdict, 2 input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "synchro/corpus.hpp"
#include "synchro/dot.hpp"
#include "synchro/io.hpp"
#include "synchro/language.hpp"
#include "synchro/refinement.hpp"
#include "synchro/simulate.hpp"

namespace fs = std::filesystem;
using namespace synchro;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

struct InputError : Error {
    using Error::Error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << text;
}

ModelDocument load(const std::string& path)
{
    ParseResult r = parse_document(read_file(path));
    if (!r.ok()) {
        std::string msg;
        for (const auto& e : r.errors) msg += path + ":" + to_string(e) + "\n";
        msg.pop_back();
        throw InputError(msg);
    }
    return *r.document;
}

// A standalone document holding one automaton as the whole system.
std::string single_automaton_document(const FiniteAutomaton& a)
{
    ModelDocument doc;
    doc.alphabet = a.alphabet;
    doc.automata.emplace(a.name, a);
    doc.system = {a.name};
    return serialize_document(doc);
}

nlohmann::ordered_json report_json(const RefinementReport& r)
{
    nlohmann::ordered_json j;
    j["holds"] = r.holds;
    if (r.holds) {
        nlohmann::ordered_json blocks = nlohmann::ordered_json::object();
        for (const auto& [q, block] : r.witness.blocks) blocks[q] = block;
        j["witness"] = blocks;
    }
    j["diagnostics"] = r.diagnostics;
    nlohmann::ordered_json unmatched = nlohmann::ordered_json::array();
    for (const auto& t : r.unmatched_transitions) unmatched.push_back(to_string(t));
    j["unmatched_transitions"] = unmatched;
    j["unmatched_initials"] = r.unmatched_initials;
    return j;
}

FiniteAutomaton product_of(const std::string& path, bool reachable)
{
    return build_product(build_system(load(path)), reachable);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Systems of synchronized finite automata: products, simulation, refinement"};
    app.require_subcommand(1);
    int status = kOk;

    std::string doc_path;
    std::string other_path;
    std::string automaton_name;

    auto* validate = app.add_subcommand("validate", "Parse a document and report diagnostics");
    validate->add_option("doc", doc_path)->required();
    validate->callback([&] {
        ModelDocument doc = load(doc_path);
        auto diagnostics = validate_document(doc);
        for (const auto& d : diagnostics) std::cout << to_string(d) << "\n";
        if (has_errors(diagnostics)) throw InputError("document is invalid");
        System s = build_system(doc);
        std::cout << "ok: " << s.size() << " member(s)\n";
    });

    auto* unfold_cmd = app.add_subcommand("unfold", "Print the unfolding of a member as a document");
    unfold_cmd->add_option("doc", doc_path)->required();
    unfold_cmd->add_option("--automaton", automaton_name)->required();
    unfold_cmd->callback([&] { std::cout << single_automaton_document(member_automaton(load(doc_path), automaton_name)); });

    bool reachable = false;
    auto* product = app.add_subcommand("product", "Print the synchronized product as a state and transition listing");
    product->add_option("doc", doc_path)->required();
    product->add_flag("--reachable", reachable, "Keep only states reachable from the initials");
    product->callback([&] {
        // Global state names are not identifiers, so the product is listed in
        // trace notation rather than as a document.
        FiniteAutomaton a = product_of(doc_path, reachable);
        std::cout << "states " << a.states.size() << "\n";
        for (const auto& q : a.states) std::cout << (a.initials.count(q) ? "initial " : "state ") << q << "\n";
        std::cout << "transitions " << a.transitions.size() << "\n";
        for (const auto& t : a.transitions) std::cout << t.source << " --" << t.label.name() << "--> " << t.target << "\n";
    });

    std::size_t steps = 0;
    std::uint64_t seed = 0;
    std::string word_text;
    bool interactive = false;
    auto* simulate = app.add_subcommand("simulate", "Run the system randomly, along a word, or interactively");
    simulate->add_option("doc", doc_path)->required();
    auto* steps_opt = simulate->add_option("--steps", steps);
    auto* seed_opt = simulate->add_option("--seed", seed);
    auto* word_opt = simulate->add_option("--word", word_text, "Comma-separated labels");
    auto* inter_opt = simulate->add_flag("--interactive", interactive);
    steps_opt->needs(seed_opt);
    seed_opt->needs(steps_opt);
    steps_opt->excludes(word_opt)->excludes(inter_opt);
    word_opt->excludes(inter_opt);
    simulate->callback([&] {
        System s = build_system(load(doc_path));
        if (interactive) {
            Trace t = simulate_interactive(s, std::cin, std::cout);
            std::cout << format_trace(t);
        } else if (*word_opt) {
            Word w = parse_word(word_text);
            try {
                std::cout << format_trace(simulate_scripted(s, w));
            } catch (const BlockedStep& blocked) {
                std::cout << "blocked: " << blocked.what() << "\n";
                status = kNegative;
            }
        } else if (*steps_opt) {
            std::cout << format_trace(simulate_random(s, seed, steps));
        } else {
            throw InputError("simulate needs --steps with --seed, --word, or --interactive");
        }
    });

    std::string trace_path;
    auto* check = app.add_subcommand("check-trace", "Check a trace file against a document");
    check->add_option("doc", doc_path)->required();
    check->add_option("--trace", trace_path)->required();
    check->callback([&] {
        System s = build_system(load(doc_path));
        Trace t = parse_trace(read_file(trace_path));
        TraceVerdict v = validate_trace(s, t);
        if (v.accepted) {
            std::cout << "accepted: " << t.steps() << " step(s)\n";
        } else {
            std::cout << "rejected at step " << v.step << ": " << v.message << "\n";
            status = kNegative;
        }
    });

    bool relaxed = false;
    auto* refine = app.add_subcommand("refine", "Decide whether the second system refines the first");
    refine->add_option("abstract", doc_path)->required();
    refine->add_option("refined", other_path)->required();
    refine->add_flag("--relaxed-partition", relaxed, "Allow empty blocks");
    refine->callback([&] {
        auto r = system_leq(build_system(load(doc_path)), build_system(load(other_path)), {relaxed});
        nlohmann::ordered_json j;
        j["holds"] = r.holds;
        nlohmann::ordered_json components = nlohmann::ordered_json::array();
        for (const auto& c : r.components) {
            nlohmann::ordered_json cj;
            cj["abstract"] = c.abstract_name;
            cj["refined"] = c.refined_name;
            cj.update(report_json(c.report));
            components.push_back(cj);
        }
        j["components"] = components;
        j["sync_violations"] = r.sync_violations;
        j["diagnostics"] = r.diagnostics;
        std::cout << j.dump(2) << "\n";
        if (!r.holds) status = kNegative;
    });

    bool project_flag = false;
    bool tau_epsilon = false;
    auto* include = app.add_subcommand("include", "Decide L(sub) included in L(super) on the products");
    include->add_option("super", doc_path)->required();
    include->add_option("sub", other_path)->required();
    include->add_flag("--project", project_flag, "Hide letters of sub outside the alphabet of super");
    include->add_flag("--tau-epsilon", tau_epsilon, "Treat tau as the empty word");
    include->callback([&] {
        FiniteAutomaton sup = product_of(doc_path, false);
        FiniteAutomaton sub = product_of(other_path, false);
        if (project_flag) sub = project(sub, sup.alphabet);
        auto r = language_includes(sup, sub, {tau_epsilon});
        if (r.holds) {
            std::cout << "holds\n";
        } else {
            std::cout << "fails: counterexample \"" << to_string(*r.counterexample) << "\"\n";
            status = kNegative;
        }
    });

    auto* simulates_cmd = app.add_subcommand("simulates", "Decide whether the first product simulates the second");
    simulates_cmd->add_option("abstract", doc_path)->required();
    simulates_cmd->add_option("refined", other_path)->required();
    simulates_cmd->add_flag("--project", project_flag, "Hide letters of refined outside the alphabet of abstract");
    simulates_cmd->callback([&] {
        FiniteAutomaton abstract = product_of(doc_path, false);
        FiniteAutomaton refined = product_of(other_path, false);
        if (project_flag) refined = project(refined, abstract.alphabet);
        auto r = simulates(abstract, refined);
        std::cout << (r.holds ? "holds" : "fails") << ": " << r.relation.size() << " pair(s) in the greatest simulation\n";
        if (!r.holds) status = kNegative;
    });

    std::vector<int> stages;
    std::string params_name;
    std::string emit_dir;
    bool with_examples = false;
    auto* corpus_cmd = app.add_subcommand("corpus", "Write the case-study documents and traces");
    corpus_cmd->add_option("--stage", stages, "Stage 1 to 7 (repeatable; default all)")->check(CLI::Range(1, 7));
    corpus_cmd->add_option("--params", params_name, "Parameter set for stages 4 to 7")->check(CLI::IsMember({"money"}));
    corpus_cmd->add_option("--emit", emit_dir)->required();
    corpus_cmd->add_flag("--examples", with_examples, "Also write the small illustration documents");
    corpus_cmd->callback([&] {
        std::optional<corpus::StageParams> params;
        if (params_name == "money") params = corpus::money_params();
        if (stages.empty()) stages = {1, 2, 3, 4, 5, 6, 7};
        fs::path dir(emit_dir);
        fs::create_directories(dir);
        for (int k : stages) {
            if (k >= 4 && !params) throw InputError("stage " + std::to_string(k) + " needs --params");
            auto st = corpus::stage(k, params);
            std::string base = "stage" + std::to_string(k);
            write_file(dir / (base + ".model"), serialize_document(st.document));
            if (k >= 3 && k <= 6) {
                fs::create_directories(dir / "traces");
                write_file(dir / "traces" / (base + ".trace"), format_trace(corpus::reference_traces(k).front()));
            }
            std::cout << "wrote " << (dir / (base + ".model")).string() << "\n";
        }
        if (with_examples) {
            fs::path ex = dir / "examples";
            fs::create_directories(ex);
            write_file(ex / "rendezvous.model", serialize_document(corpus::examples::rendezvous()));
            auto traces = corpus::examples::rendezvous_traces();
            for (std::size_t i = 0; i < traces.size(); ++i) {
                write_file(ex / ("rendezvous_" + std::to_string(i + 1) + ".trace"), format_trace(traces[i]));
            }
            write_file(ex / "unfolding.model", serialize_document(corpus::examples::unfolding()));
            write_file(ex / "graph_transition.model", serialize_document(corpus::examples::graph_transition()));
            write_file(ex / "refinement_abstract.model", serialize_document(corpus::examples::refinement_abstract()));
            write_file(ex / "refinement_refined.model", serialize_document(corpus::examples::refinement_refined()));
            std::cout << "wrote " << ex.string() << "\n";
        }
    });

    bool unfolded = false;
    auto* dot = app.add_subcommand("export-dot", "Print a member as Graphviz text");
    dot->add_option("doc", doc_path)->required();
    dot->add_option("--automaton", automaton_name)->required();
    dot->add_flag("--unfolded", unfolded, "Draw a compact member after unfolding");
    dot->callback([&] {
        ModelDocument doc = load(doc_path);
        auto c = doc.compacts.find(automaton_name);
        if (c != doc.compacts.end() && !unfolded) {
            std::cout << export_dot(c->second);
        } else {
            std::cout << export_dot(member_automaton(doc, automaton_name));
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return status;
}
