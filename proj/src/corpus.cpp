#include "synchro/corpus.hpp"

namespace synchro::corpus {

namespace {

const Label tau = Label::tau();

Label L(const std::string& name) { return Label::letter(name); }

FiniteAutomaton automaton(std::string name, const Alphabet& alphabet, std::set<State> states,
                          std::set<State> initials, std::vector<Transition> transitions)
{
    FiniteAutomaton a;
    a.name = std::move(name);
    a.alphabet = alphabet;
    a.states = std::move(states);
    a.initials = std::move(initials);
    a.transitions.insert(transitions.begin(), transitions.end());
    return a;
}

void add(ModelDocument& doc, FiniteAutomaton a)
{
    doc.system.push_back(a.name);
    doc.automata.emplace(a.name, std::move(a));
}

void add(ModelDocument& doc, CompactAutomaton c)
{
    doc.system.push_back(c.name);
    doc.compacts.emplace(c.name, std::move(c));
}

std::set<std::string> letters(const std::vector<std::set<std::string>>& parts)
{
    std::set<std::string> out;
    for (const auto& p : parts) out.insert(p.begin(), p.end());
    return out;
}

const std::set<std::string> kStress = {"s", "nostress"};
const std::set<std::string> kEvaluation = {"g", "b"};

// Cognitive appraisal with a single awake state (stages 3 to 5).
FiniteAutomaton appraisal(const std::string& name, const Alphabet& sigma, const std::set<std::string>& environment)
{
    std::vector<Transition> t = {
        {"na", tau, "a"}, {"a", tau, "na"}, {"a", tau, "a"}, {"a", L("s"), "a"}, {"a", L("nostress"), "a"},
    };
    for (const auto& x : environment) t.push_back({"a", L(x), "a"});
    return automaton(name, sigma, {"na", "a"}, {"na"}, t);
}

// Primary appraisal split from secondary appraisal (stages 6 and 7).
FiniteAutomaton split_appraisal(const std::string& name, const Alphabet& sigma, const std::set<std::string>& environment)
{
    std::vector<Transition> t = {
        {"na", tau, "pa"}, {"pa", tau, "na"}, {"pa", L("s"), "sa"}, {"sa", L("g"), "pa"},
        {"sa", L("b"), "pa"}, {"pa", L("nostress"), "pa"},
    };
    for (const auto& x : environment) t.push_back({"pa", L(x), "pa"});
    return automaton(name, sigma, {"na", "pa", "sa"}, {"na"}, t);
}

FiniteAutomaton stress(const std::string& name, const Alphabet& sigma)
{
    return automaton(name, sigma, {"f"}, {"f"}, {{"f", L("s"), "f"}, {"f", L("nostress"), "f"}, {"f", tau, "f"}});
}

// Environment over X: tau drift, optional coping edges, and a loop
// broadcasting the current element.
CompactAutomaton environment(const std::string& name, const Alphabet& sigma, const StageParams& p,
                             const std::string& target, const std::optional<std::string>& coping_graph)
{
    CompactAutomaton c;
    c.name = name;
    c.alphabet = sigma;
    c.universe = p.environment;
    c.images = {{"x", p.environment.elements}, {target, p.environment.elements}};
    c.initials = {p.x0};
    c.graphs.emplace(p.g_tau.name, p.g_tau);
    c.transitions.insert({"x", Guard::edge_in(p.g_tau.name), target});
    if (coping_graph) {
        LabeledGraph g = p.g_env;
        g.name = *coping_graph;
        c.graphs.emplace(g.name, g);
        c.transitions.insert({"x", Guard::edge_in(g.name), target});
    }
    c.transitions.insert({"x", Guard::label_is_source_name(), "x"});
    return c;
}

ElementUniverse coping_universe(const std::set<std::string>& coping)
{
    ElementUniverse u;
    u.name = "Coping";
    u.elements.insert("rho");
    for (const auto& c : coping) {
        std::string eval = "eval_" + c;
        std::string engage = "engage_" + c;
        u.elements.insert(eval);
        u.elements.insert(engage);
        u.underlying_letter[eval] = c;
        u.underlying_letter[engage] = c;
        u.pair(eval, engage);
    }
    return u;
}

CompactAutomaton secondary_appraisal(const std::string& name, const Alphabet& sigma, const std::set<std::string>& coping)
{
    CompactAutomaton c;
    c.name = name;
    c.alphabet = sigma;
    c.universe = coping_universe(coping);
    c.images["rho"] = {"rho"};
    for (const auto& letter : coping) {
        c.images["eval"].insert("eval_" + letter);
        c.images["engage"].insert("engage_" + letter);
    }
    c.initials = {"rho"};
    c.transitions = {
        {"rho", Guard::label_is(L("s")), "eval"},
        {"eval", Guard::label_is(L("b")), "rho"},
        {"eval", Guard::target_is_counterpart() && Guard::label_is(L("g")), "engage"},
        {"engage", Guard::label_is_source_underlying(), "rho"},
        {"rho", Guard::label_is(L("nostress")), "rho"},
    };
    return c;
}

CompactAutomaton internal_parameters(const std::string& name, const Alphabet& sigma, const StageParams& p)
{
    CompactAutomaton c;
    c.name = name;
    c.alphabet = sigma;
    c.universe = p.commitments;
    c.images = {{"phi", p.commitments.elements}, {"phi_prime", p.commitments.elements}};
    c.initials = {p.phi0};
    c.graphs.emplace(p.g_commit.name, p.g_commit);
    c.transitions.insert({"phi", Guard::edge_in(p.g_commit.name), "phi_prime"});
    return c;
}

void add_declarations(ModelDocument& doc, const StageParams& p, bool commitments)
{
    doc.sets.emplace(p.environment.name, p.environment);
    for (const auto& [name, c] : doc.compacts) {
        for (const auto& [gname, g] : c.graphs) doc.graphs.emplace(gname, g);
        doc.sets.emplace(c.universe.name, c.universe);
    }
    if (commitments) doc.sets.emplace(p.commitments.name, p.commitments);
}

void require_valid(const StageParams& p)
{
    auto d = validate_params(p);
    if (has_errors(d)) {
        std::string msg = "invalid stage parameters:";
        for (const auto& e : d) {
            if (e.severity == Severity::error) msg += " " + e.message + ";";
        }
        throw Error(msg);
    }
}

GlobalState G(std::vector<State> components) { return GlobalState{std::move(components)}; }

Trace trace(std::vector<GlobalState> states, std::vector<Label> labels)
{
    Trace t;
    t.states = std::move(states);
    t.labels = std::move(labels);
    return t;
}

} // namespace

std::vector<Diagnostic> validate_params(const StageParams& p)
{
    std::vector<Diagnostic> out;
    auto error = [&](std::string m) { out.push_back({Severity::error, std::move(m)}); };

    Alphabet sigma;
    try {
        sigma = Alphabet(letters({kStress, kEvaluation, p.environment.elements, p.coping}));
    } catch (const Error& e) {
        error(e.what());
        return out;
    }
    std::size_t expected = kStress.size() + kEvaluation.size() + p.environment.elements.size() + p.coping.size();
    if (sigma.letters().size() != expected) error("environment elements, coping letters and fixed letters must be distinct");
    if (p.environment.elements.empty()) error("the environment has no element");
    if (p.coping.empty()) error("no coping strategy");
    if (p.commitments.elements.empty()) error("no commitment");
    for (const auto& x : p.environment.elements) {
        auto it = p.environment.linked_letter.find(x);
        if (it == p.environment.linked_letter.end() || it->second != x) {
            error("environment element '" + x + "' must be linked to the letter of its name");
        }
    }
    for (const auto& d : validate_universe(p.environment, sigma)) out.push_back(d);
    for (const auto& d : validate_universe(p.commitments, sigma)) out.push_back(d);

    auto check_graph = [&](const LabeledGraph& g, const ElementUniverse& u, bool tau_only) {
        if (g.universe != u.name) error("graph '" + g.name + "' must be over '" + u.name + "'");
        for (const auto& d : validate_graph(g, u, sigma)) out.push_back(d);
        for (const auto& l : g.labels) {
            bool ok = tau_only ? l.is_tau() : (!l.is_tau() && p.coping.count(l.name()));
            if (!ok) error("graph '" + g.name + "' may not carry label '" + l.name() + "'");
        }
    };
    check_graph(p.g_tau, p.environment, true);
    check_graph(p.g_env, p.environment, false);
    check_graph(p.g_commit, p.commitments, false);
    if (p.g_tau.name == p.g_env.name) error("the tau graph and the coping graph need distinct names");

    if (!p.environment.elements.count(p.x0)) error("x0 '" + p.x0 + "' is not an environment element");
    if (!p.commitments.elements.count(p.phi0)) error("phi0 '" + p.phi0 + "' is not a commitment");
    for (const auto& phi : p.commitments.elements) {
        for (const auto& x : p.environment.elements) {
            auto it = p.commitment_table.find({phi, x});
            if (it == p.commitment_table.end()) {
                error("commitment table lacks (" + phi + ", " + x + ")");
            } else if (it->second != 0 && it->second != 1) {
                error("commitment table value for (" + phi + ", " + x + ") is not 0 or 1");
            }
        }
    }
    for (const auto& [key, v] : p.commitment_table) {
        if (!p.commitments.elements.count(key.first) || !p.environment.elements.count(key.second)) {
            error("commitment table entry (" + key.first + ", " + key.second + ") names an unknown element");
        }
    }
    return out;
}

StageParams money_params()
{
    const std::string ge = "x_ge1000";
    const std::string lt = "x_lt1000";
    StageParams p;
    p.environment.name = "X";
    p.environment.elements = {ge, lt};
    p.environment.linked_letter = {{ge, ge}, {lt, lt}};
    p.coping = {"c1", "c2"};
    p.commitments.name = "Phi";
    p.commitments.elements = {"phi", "one_minus_phi", "one", "zero"};

    p.g_tau = {"Gtau", "X", {tau}, {{ge, tau, lt}, {lt, tau, lt}}};
    p.g_env = {"GX",
               "X",
               {L("c1"), L("c2")},
               {{lt, L("c1"), lt}, {lt, L("c1"), ge}, {ge, L("c1"), ge}, {lt, L("c2"), lt}, {ge, L("c2"), ge}}};
    p.g_commit = {"GPhi",
                  "Phi",
                  {L("c1"), L("c2")},
                  {{"phi", L("c2"), "phi"},
                   {"phi", L("c2"), "one"},
                   {"one", L("c2"), "one"},
                   {"phi", L("c1"), "phi"},
                   {"one", L("c1"), "one"}}};
    p.x0 = ge;
    p.phi0 = "phi";
    p.commitment_table = {
        {{"phi", ge}, 1},  {{"phi", lt}, 0},  {{"one_minus_phi", ge}, 0}, {{"one_minus_phi", lt}, 1},
        {{"one", ge}, 1},  {{"one", lt}, 1},  {{"zero", ge}, 0},          {{"zero", lt}, 0},
    };
    return p;
}

Stage stage(int k, const std::optional<StageParams>& params)
{
    if (k < 1 || k > 7) throw Error("no stage " + std::to_string(k) + "; stages run from 1 to 7");
    if (k >= 4 && !params) throw Error("stage " + std::to_string(k) + " needs parameters");
    if (params) require_valid(*params);

    ModelDocument doc;
    std::vector<std::string> notes;
    switch (k) {
    case 1:
        doc.alphabet = Alphabet{};
        add(doc, automaton("A11", doc.alphabet, {"uni"}, {"uni"}, {{"uni", tau, "uni"}}));
        notes = {"initial system: one state with an unspecified internal activity"};
        break;
    case 2:
        doc.alphabet = Alphabet{};
        add(doc, automaton("A21", doc.alphabet, {"non_awake", "appraisal"}, {"non_awake"},
                           {{"non_awake", tau, "appraisal"}, {"appraisal", tau, "appraisal"}, {"appraisal", tau, "non_awake"}}));
        notes = {"cognitive appraisal happens only while awake"};
        break;
    case 3:
        doc.alphabet = Alphabet(kStress);
        add(doc, appraisal("A31", doc.alphabet, {}));
        add(doc, stress("A32", doc.alphabet));
        notes = {"stress and no-stress synchronize appraisal with the stress calculation",
                    "the initial appraisal state is na"};
        break;
    case 4: {
        const auto& p = *params;
        doc.alphabet = Alphabet(letters({kStress, p.environment.elements}));
        add(doc, appraisal("A41", doc.alphabet, p.environment.elements));
        add(doc, stress("A42", doc.alphabet));
        add(doc, environment("A43", doc.alphabet, p, "y", std::nullopt));
        add_declarations(doc, p, false);
        notes = {"the environment broadcasts its state to appraisal through the letters of X"};
        break;
    }
    case 5: {
        const auto& p = *params;
        doc.alphabet = Alphabet(letters({kStress, p.environment.elements, p.coping}));
        add(doc, appraisal("A51", doc.alphabet, p.environment.elements));
        add(doc, stress("A52", doc.alphabet));
        add(doc, environment("A53", doc.alphabet, p, "y", std::string("GC")));
        std::vector<Transition> t = {{"rho", L("s"), "coping"}, {"rho", L("nostress"), "rho"}};
        for (const auto& c : p.coping) t.push_back({"coping", L(c), "rho"});
        add(doc, automaton("A54", doc.alphabet, {"rho", "coping"}, {"rho"}, t));
        add_declarations(doc, p, false);
        notes = {"coping letters move the environment along the coping graph"};
        break;
    }
    case 6:
    case 7: {
        const auto& p = *params;
        std::string prefix = "A" + std::to_string(k);
        doc.alphabet = Alphabet(letters({kStress, kEvaluation, p.environment.elements, p.coping}));
        add(doc, split_appraisal(prefix + "1", doc.alphabet, p.environment.elements));
        add(doc, stress(prefix + "2", doc.alphabet));
        add(doc, environment(prefix + "3", doc.alphabet, p, "z", p.g_env.name));
        add(doc, secondary_appraisal(prefix + "4", doc.alphabet, p.coping));
        if (k == 7) add(doc, internal_parameters(prefix + "5", doc.alphabet, p));
        add_declarations(doc, p, k == 7);
        notes = {"appraisal splits into primary and secondary appraisal; strategies are evaluated good or bad",
                    "primary appraisal carries no internal loop"};
        if (k == 7) notes.push_back("coping letters also move the commitment along its graph");
        break;
    }
    }
    System system = build_system(doc);
    return Stage{k, std::move(doc), std::move(system), std::move(notes)};
}

std::vector<Trace> reference_traces(int k)
{
    const Label s = L("s");
    const Label ns = L("nostress");
    const StageParams p = money_params();
    const std::string x0 = p.x0;
    switch (k) {
    case 3:
        return {trace({G({"na", "f"}), G({"a", "f"}), G({"a", "f"}), G({"a", "f"}), G({"na", "f"})}, {tau, s, ns, tau})};
    case 4: {
        // (x0, tau, x1) must be a drift edge.
        const std::string x1 = "x_lt1000";
        return {trace({G({"na", "f", x0}), G({"a", "f", x0}), G({"a", "f", x0}), G({"a", "f", x0}), G({"a", "f", x1}),
                       G({"a", "f", x1}), G({"a", "f", x1})},
                      {tau, L(x0), s, tau, L(x1), ns})};
    }
    case 5: {
        // (x0, c1, x1) must be a coping edge starting from the initial element.
        const std::string x1 = "x_ge1000";
        return {trace({G({"na", "f", x0, "rho"}), G({"a", "f", x0, "rho"}), G({"a", "f", x0, "rho"}),
                       G({"a", "f", x0, "coping"}), G({"a", "f", x1, "rho"}), G({"a", "f", x1, "rho"}),
                       G({"a", "f", x1, "rho"})},
                      {tau, L(x0), s, L("c1"), L(x1), ns})};
    }
    case 6: {
        // c1 is judged bad, c2 good; (x0, c2, x1) must be a coping edge.
        const std::string x1 = "x_ge1000";
        return {trace({G({"na", "f", x0, "rho"}), G({"pa", "f", x0, "rho"}), G({"pa", "f", x0, "rho"}),
                       G({"sa", "f", x0, "eval_c1"}), G({"pa", "f", x0, "rho"}), G({"sa", "f", x0, "eval_c2"}),
                       G({"pa", "f", x0, "engage_c2"}), G({"pa", "f", x1, "rho"}), G({"pa", "f", x1, "rho"}),
                       G({"pa", "f", x1, "rho"})},
                      {tau, L(x0), s, L("b"), s, L("g"), L("c2"), L(x1), ns})};
    }
    default: throw Error("no worked execution for stage " + std::to_string(k));
    }
}

bool stressed(const std::string& x, const std::string& phi, const StageParams& params)
{
    if (!params.environment.elements.count(x)) throw Error("unknown environment element '" + x + "'");
    if (!params.commitments.elements.count(phi)) throw Error("unknown commitment '" + phi + "'");
    auto it = params.commitment_table.find({phi, x});
    if (it == params.commitment_table.end()) throw Error("commitment table lacks (" + phi + ", " + x + ")");
    return it->second == 0;
}

namespace examples {

ModelDocument rendezvous()
{
    ModelDocument doc;
    doc.alphabet = Alphabet({"a", "b"});
    add(doc, automaton("A1", doc.alphabet, {"q1", "q2"}, {"q1"}, {{"q1", L("a"), "q2"}, {"q2", tau, "q1"}, {"q2", tau, "q2"}}));
    add(doc, automaton("A2", doc.alphabet, {"p"}, {"p"}, {{"p", L("a"), "p"}}));
    add(doc, automaton("A3", doc.alphabet, {"r"}, {"r"}, {{"r", L("b"), "r"}, {"r", tau, "r"}}));
    return doc;
}

std::vector<Trace> rendezvous_traces()
{
    const GlobalState q1 = G({"q1", "p", "r"});
    const GlobalState q2 = G({"q2", "p", "r"});
    const Label a = L("a");
    const Label b = L("b");
    return {trace({q1, q2, q2, q2, q1, q1}, {a, b, tau, tau, tau}), trace({q1, q1, q2, q2, q2}, {b, a, b, tau})};
}

namespace {

ElementUniverse three_elements()
{
    ElementUniverse u;
    u.name = "X";
    u.elements = {"x0", "x1", "x2"};
    return u;
}

} // namespace

ModelDocument unfolding()
{
    ModelDocument doc;
    doc.alphabet = Alphabet({"a", "b"});
    CompactAutomaton c;
    c.name = "A1";
    c.alphabet = doc.alphabet;
    c.universe = three_elements();
    c.images = {{"q", c.universe.elements}, {"p", c.universe.elements}};
    c.initials = {"x0"};
    c.transitions = {{"q", Guard::label_is(L("a")), "p"}, {"q", Guard::label_is(L("b")), "q"}};
    doc.sets.emplace(c.universe.name, c.universe);
    add(doc, std::move(c));
    return doc;
}

ModelDocument graph_transition()
{
    ModelDocument doc;
    doc.alphabet = Alphabet({"a", "b"});
    LabeledGraph g{"G", "X", {L("a"), L("b")}, {{"x0", L("a"), "x1"}, {"x0", L("b"), "x2"}, {"x1", L("b"), "x1"}}};
    CompactAutomaton c;
    c.name = "A2";
    c.alphabet = doc.alphabet;
    c.universe = three_elements();
    c.images = {{"x", c.universe.elements}, {"y", c.universe.elements}};
    c.initials = {"x0"};
    c.graphs.emplace(g.name, g);
    c.transitions = {{"x", Guard::edge_in("G"), "y"}};
    doc.sets.emplace(c.universe.name, c.universe);
    doc.graphs.emplace(g.name, g);
    add(doc, std::move(c));
    return doc;
}

ModelDocument refinement_abstract()
{
    ModelDocument doc;
    doc.alphabet = Alphabet({"a"});
    add(doc, automaton("Ai", doc.alphabet, {"q1", "q2"}, {"q1"}, {{"q1", tau, "q1"}, {"q1", tau, "q2"}, {"q2", L("a"), "q1"}}));
    return doc;
}

ModelDocument refinement_refined()
{
    ModelDocument doc;
    doc.alphabet = Alphabet({"a", "b", "c"});
    add(doc, automaton("Aj", doc.alphabet, {"p1", "p2", "p3", "p4", "p5"}, {"p1"},
                       {{"p1", tau, "p2"}, {"p2", L("b"), "p4"}, {"p5", L("a"), "p1"}, {"p2", L("c"), "p2"}}));
    return doc;
}

} // namespace examples

} // namespace synchro::corpus
