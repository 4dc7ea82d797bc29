#pragma once

#include <map>
#include <string>
#include <vector>

#include "synchro/compact.hpp"
#include "synchro/system.hpp"

namespace synchro {

inline constexpr int kFormatVersion = 1;

/// Everything a model file declares. Compact automata carry copies of their
/// universe and graphs, resolved from the declarations by name.
struct ModelDocument {
    int format_version = kFormatVersion;
    Alphabet alphabet;
    std::map<std::string, ElementUniverse> sets;
    std::map<std::string, LabeledGraph> graphs;
    std::map<std::string, FiniteAutomaton> automata;
    std::map<std::string, CompactAutomaton> compacts;
    /// Ordered member names.
    std::vector<std::string> system;

    friend bool operator==(const ModelDocument&, const ModelDocument&) = default;
};

/// Plain member as is, compact member unfolded. Throws Error on an unknown name.
FiniteAutomaton member_automaton(const ModelDocument& doc, const std::string& name);

/// Unfolds compact members and assembles the system in declared order.
System build_system(const ModelDocument& doc);

/// Diagnostics for every declaration plus the system itself.
std::vector<Diagnostic> validate_document(const ModelDocument& doc);

} // namespace synchro
