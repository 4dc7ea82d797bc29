#pragma once

#include <string>

#include "synchro/compact.hpp"

namespace synchro {

/// Graphviz text. Initial states get an arrow from a point node.
std::string export_dot(const FiniteAutomaton& a);

/// Compact states with more than one element are double circles; edge-guard
/// transitions are labeled `G/{labels}`; initials are listed in a note node.
std::string export_dot(const CompactAutomaton& c);

} // namespace synchro
