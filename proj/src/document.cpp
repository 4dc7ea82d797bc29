#include "synchro/document.hpp"

namespace synchro {

FiniteAutomaton member_automaton(const ModelDocument& doc, const std::string& name)
{
    if (auto it = doc.automata.find(name); it != doc.automata.end()) return it->second;
    if (auto it = doc.compacts.find(name); it != doc.compacts.end()) return unfold(it->second);
    throw Error("no automaton named '" + name + "'");
}

System build_system(const ModelDocument& doc)
{
    if (doc.system.empty()) throw Error("missing system declaration");
    std::vector<FiniteAutomaton> members;
    members.reserve(doc.system.size());
    for (const auto& name : doc.system) members.push_back(member_automaton(doc, name));
    return System(std::move(members));
}

std::vector<Diagnostic> validate_document(const ModelDocument& doc)
{
    std::vector<Diagnostic> out;
    auto append = [&](std::vector<Diagnostic> more) {
        for (auto& d : more) out.push_back(std::move(d));
    };
    for (const auto& [name, set] : doc.sets) append(validate_universe(set, doc.alphabet));
    for (const auto& [name, graph] : doc.graphs) {
        auto it = doc.sets.find(graph.universe);
        if (it == doc.sets.end()) {
            out.push_back({Severity::error, "graph " + name + ": unknown set '" + graph.universe + "'"});
        } else {
            append(validate_graph(graph, it->second, doc.alphabet));
        }
    }
    for (const auto& [name, a] : doc.automata) append(validate_automaton(a));
    for (const auto& [name, c] : doc.compacts) {
        auto diagnostics = validate_compact(c);
        bool fatal = has_errors(diagnostics);
        append(std::move(diagnostics));
        if (!fatal) append(validate_automaton(unfold(c)));
    }
    if (doc.system.empty()) out.push_back({Severity::error, "missing system declaration"});
    if (!has_errors(out)) {
        try {
            build_system(doc);
        } catch (const Error& e) {
            out.push_back({Severity::error, e.what()});
        }
    }
    return out;
}

} // namespace synchro
