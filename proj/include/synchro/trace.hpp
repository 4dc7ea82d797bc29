#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "synchro/system.hpp"

namespace synchro {

/// Alternating sequence g0, l1, g1, ..., lk, gk.
struct Trace {
    std::vector<GlobalState> states;
    std::vector<Label> labels;
    /// Set when a simulation stopped because nothing was enabled.
    bool deadlock = false;

    std::size_t steps() const { return labels.size(); }

    friend bool operator==(const Trace&, const Trace&) = default;
};

enum class TraceFailure { none, empty, malformed, not_initial, step_not_enabled };

struct TraceVerdict {
    bool accepted = false;
    TraceFailure failure = TraceFailure::none;
    /// 1-based index of the first rejected step; 0 when the failure concerns g0.
    std::size_t step = 0;
    std::string message;
};

TraceVerdict validate_trace(const System& s, const Trace& trace);

/// One line per step: `(q1,...,qn) --label--> (q1',...,qn')`. A trace with no
/// step is the single line `(q1,...,qn)`. A final `deadlock` line marks a
/// deadlocked simulation. Every line ends with '\n'.
std::string format_trace(const Trace& trace);

/// Inverse of format_trace. Blank lines and `#` comments are ignored. Throws
/// Error naming the line on malformed or discontinuous input.
Trace parse_trace(std::string_view text);

} // namespace synchro
