#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "synchro/automaton.hpp"

namespace synchro {

using Word = std::vector<Label>;

/// Comma-separated label names; the empty word is the empty string.
std::string to_string(const Word& word);
Word parse_word(const std::string& text);

/// Every state is accepting: a word belongs to the language when some run
/// from an initial state reads it.
struct WordSet {
    std::set<Word> words;
    std::size_t bound = 0;

    friend bool operator==(const WordSet&, const WordSet&) = default;
};

/// Relabels every letter outside `target` as tau. States and initials are
/// kept; identical relabeled transitions collapse.
FiniteAutomaton project(const FiniteAutomaton& a, const Alphabet& target);

WordSet words_upto(const FiniteAutomaton& a, std::size_t bound);

struct LanguageOptions {
    /// Treat tau as the empty word (closure under tau steps on both sides).
    bool tau_as_epsilon = false;
};

struct InclusionResult {
    bool holds = false;
    /// Shortest word of the subset side the superset side rejects; ties go to
    /// the canonically smallest.
    std::optional<Word> counterexample;
};

InclusionResult language_includes(const FiniteAutomaton& superset, const FiniteAutomaton& subset,
                                  const LanguageOptions& options = {});

/// Subset construction on `a` (tau an ordinary letter). States are named by
/// the sorted set of original states they stand for.
FiniteAutomaton determinize(const FiniteAutomaton& a);

struct SimulationResult {
    bool holds = false;
    /// The greatest simulation: pairs (abstract state, refined state).
    std::set<std::pair<State, State>> relation;
};

/// Greatest strong simulation of `refined` by `abstract`; holds when every
/// refined initial state is simulated by some abstract initial state.
SimulationResult simulates(const FiniteAutomaton& abstract, const FiniteAutomaton& refined);

} // namespace synchro
