#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "synchro/system.hpp"

namespace synchro {

/// tau refines to anything; every label refines to itself.
bool label_leq(const Label& abstract, const Label& refined);

/// Compares labels only; endpoints are ignored.
bool transition_leq(const Transition& abstract, const Transition& refined);

struct RefinementOptions {
    /// Allow abstract states with an empty block (a total map refined -> abstract).
    bool relaxed_partition = false;
};

/// Abstract state -> the refined states it stands for.
struct PartitionWitness {
    std::map<State, std::set<State>> blocks;

    friend bool operator==(const PartitionWitness&, const PartitionWitness&) = default;
};

struct RefinementReport {
    bool holds = false;
    /// Present when `holds`.
    PartitionWitness witness;
    /// When failing: the alphabet mismatch, or the refined transitions and
    /// initial states left unmatched by the assignment that matched the most.
    std::vector<std::string> diagnostics;
    std::vector<Transition> unmatched_transitions;
    std::vector<State> unmatched_initials;
};

/// Decides abstract <= refined by exhaustive branch-and-bound over block
/// assignments. Candidate blocks for each refined state are tried from the
/// last abstract state backwards, so the first witness found keeps early
/// abstract blocks as small as possible.
RefinementReport automaton_leq(const FiniteAutomaton& abstract, const FiniteAutomaton& refined,
                               const RefinementOptions& options = {});

/// Direct check of the refinement conditions for a given witness. Throws Error
/// if the witness names states foreign to the pair.
bool verify_witness(const FiniteAutomaton& abstract, const FiniteAutomaton& refined,
                    const PartitionWitness& witness, const RefinementOptions& options = {});

struct ComponentReport {
    std::string abstract_name;
    std::string refined_name;
    RefinementReport report;
};

struct SystemRefinementReport {
    bool holds = false;
    std::vector<ComponentReport> components;
    /// Letters whose J set is not included in the refined one, with messages.
    std::vector<std::string> sync_violations;
    std::vector<std::string> diagnostics;
};

SystemRefinementReport system_leq(const System& abstract, const System& refined,
                                  const RefinementOptions& options = {});

} // namespace synchro
