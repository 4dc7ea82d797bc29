#include "synchro/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace synchro {

std::string to_string(const Transition& t)
{
    return "(" + t.source + "," + t.label.name() + "," + t.target + ")";
}

std::string to_string(const Diagnostic& d)
{
    return std::string(d.severity == Severity::error ? "error: " : "warning: ") + d.message;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics)
{
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::vector<Diagnostic> validate_automaton(const FiniteAutomaton& a)
{
    std::vector<Diagnostic> out;
    auto error = [&](std::string msg) {
        out.push_back({Severity::error, "automaton " + a.name + ": " + std::move(msg)});
    };
    for (const auto& t : a.transitions) {
        if (!a.states.count(t.source)) {
            error("transition " + to_string(t) + " has unknown source state '" + t.source + "'");
        }
        if (!a.states.count(t.target)) {
            error("transition " + to_string(t) + " has unknown target state '" + t.target + "'");
        }
        if (!a.alphabet.contains(t.label)) {
            error("transition " + to_string(t) + " uses label '" + t.label.name() +
                  "' outside the alphabet");
        }
    }
    for (const auto& q : a.initials) {
        if (!a.states.count(q)) error("initial state '" + q + "' is not a state");
    }
    if (a.initials.empty()) error("empty initial set");
    return out;
}

std::set<State> successors(const FiniteAutomaton& a, const State& q, const Label& label)
{
    if (!a.states.count(q)) throw Error("automaton " + a.name + ": unknown state '" + q + "'");
    if (!a.alphabet.contains(label)) {
        throw Error("automaton " + a.name + ": label '" + label.name() + "' is not in the alphabet");
    }
    std::set<State> out;
    // transitions are ordered by source first, so the range starts at (q, label, "")
    for (auto it = a.transitions.lower_bound({q, label, ""});
         it != a.transitions.end() && it->source == q && it->label == label; ++it) {
        out.insert(it->target);
    }
    return out;
}

std::set<Label> letters_used(const FiniteAutomaton& a)
{
    std::set<Label> out;
    for (const auto& t : a.transitions) out.insert(t.label);
    return out;
}

std::set<State> reachable_states(const FiniteAutomaton& a)
{
    std::map<State, std::vector<State>> next;
    for (const auto& t : a.transitions) next[t.source].push_back(t.target);

    std::set<State> seen;
    std::deque<State> frontier;
    for (const auto& q : a.initials) {
        if (seen.insert(q).second) frontier.push_back(q);
    }
    while (!frontier.empty()) {
        State q = std::move(frontier.front());
        frontier.pop_front();
        auto it = next.find(q);
        if (it == next.end()) continue;
        for (const auto& r : it->second) {
            if (seen.insert(r).second) frontier.push_back(r);
        }
    }
    return seen;
}

} // namespace synchro
