#pragma once

#include <set>
#include <string>
#include <vector>

#include "synchro/label.hpp"

namespace synchro {

using State = std::string;

struct Transition {
    State source;
    Label label;
    State target;

    friend auto operator<=>(const Transition&, const Transition&) = default;
    friend bool operator==(const Transition&, const Transition&) = default;
};

std::string to_string(const Transition& t);

/// A finite automaton without accepting states. Transitions have set semantics.
///
/// The struct does not enforce its invariants; validate_automaton() reports
/// violations so that standalone automata can be inspected while invalid.
struct FiniteAutomaton {
    std::string name;
    Alphabet alphabet;
    std::set<State> states;
    std::set<Transition> transitions;
    std::set<State> initials;

    void add(State source, Label label, State target)
    {
        transitions.insert({std::move(source), std::move(label), std::move(target)});
    }

    friend bool operator==(const FiniteAutomaton&, const FiniteAutomaton&) = default;
};

enum class Severity { error, warning };

struct Diagnostic {
    Severity severity = Severity::error;
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::string to_string(const Diagnostic& d);

/// Only error-severity diagnostics count.
bool has_errors(const std::vector<Diagnostic>& diagnostics);

std::vector<Diagnostic> validate_automaton(const FiniteAutomaton& a);

/// { q' | (q, label, q') in transitions }. Throws Error on an unknown state or label.
std::set<State> successors(const FiniteAutomaton& a, const State& q, const Label& label);

std::set<Label> letters_used(const FiniteAutomaton& a);

std::set<State> reachable_states(const FiniteAutomaton& a);

} // namespace synchro
