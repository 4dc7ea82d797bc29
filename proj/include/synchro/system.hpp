#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "synchro/automaton.hpp"

namespace synchro {

/// An ordered tuple of automata over one shared alphabet, synchronized by
/// generalized rendezvous. Component indices are 0-based in the API and
/// printed 1-based by the command-line tool.
class System {
public:
    /// Throws Error if the list is empty, alphabets differ, or any member has
    /// error diagnostics.
    explicit System(std::vector<FiniteAutomaton> automata);

    std::size_t size() const { return automata_.size(); }
    const Alphabet& alphabet() const { return automata_.front().alphabet; }
    std::span<const FiniteAutomaton> automata() const { return automata_; }
    const FiniteAutomaton& operator[](std::size_t i) const { return automata_[i]; }

    friend bool operator==(const System&, const System&) = default;

private:
    std::vector<FiniteAutomaton> automata_;
};

struct GlobalState {
    std::vector<State> components;

    friend auto operator<=>(const GlobalState&, const GlobalState&) = default;
    friend bool operator==(const GlobalState&, const GlobalState&) = default;
};

/// "(q1,q2,...,qn)"
std::string to_string(const GlobalState& g);

/// A step of the product. `movers` records which components could have
/// produced it (for tau) or J_a (for a letter); it takes no part in equality
/// or ordering.
struct GlobalTransition {
    GlobalState source;
    Label label;
    GlobalState target;
    std::set<std::size_t> movers;

    friend bool operator==(const GlobalTransition& lhs, const GlobalTransition& rhs)
    {
        return lhs.source == rhs.source && lhs.label == rhs.label && lhs.target == rhs.target;
    }
};

/// Canonical order: label (tau last), then steps that change the state before
/// stutters, then target tuple, then source tuple.
bool canonical_less(const GlobalTransition& lhs, const GlobalTransition& rhs);

std::string to_string(const GlobalTransition& t);

/// J_a: indices of the members with at least one `letter` transition anywhere.
/// Throws Error for tau.
std::set<std::size_t> sync_indices(const System& s, const Label& letter);

/// Throws Error unless `g` has the system's arity and each component is a
/// state of its automaton.
void check_global_state(const System& s, const GlobalState& g);

/// I_1 x ... x I_n, sorted.
std::vector<GlobalState> global_initials(const System& s);

/// Every step licensed at `g` by the tau rule and the synchronized rule, in
/// canonical order with movers merged.
std::vector<GlobalTransition> enabled_global_transitions(const System& s, const GlobalState& g);

/// The automaton A(S). States are named by to_string(GlobalState). With
/// `reachable_only` the state set is pruned to what the initials reach;
/// otherwise it is the full Cartesian product.
FiniteAutomaton build_product(const System& s, bool reachable_only = false);

} // namespace synchro
