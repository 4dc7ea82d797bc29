#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>

#include "synchro/trace.hpp"

namespace synchro {

/// splitmix64; chosen so other implementations can reproduce random runs.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();

private:
    std::uint64_t state_;
};

/// Raised by scripted simulation when the requested label is not enabled.
class BlockedStep : public Error {
public:
    BlockedStep(std::size_t step, Label label, std::set<std::size_t> blocking);

    /// 1-based step index within the script.
    std::size_t step() const { return step_; }
    const Label& label() const { return label_; }
    /// 0-based indices of the members that cannot fire the label.
    const std::set<std::size_t>& blocking() const { return blocking_; }

private:
    std::size_t step_;
    Label label_;
    std::set<std::size_t> blocking_;
};

/// All simulations start from the first global initial state in sorted order.
/// Each step picks index `next() % enabled.size()` in canonical order.
Trace simulate_random(const System& s, std::uint64_t seed, std::size_t max_steps);

/// Fires, for each label in turn, the first enabled transition carrying it.
Trace simulate_scripted(const System& s, std::span<const Label> word);

/// Prints a numbered menu of enabled transitions per step and reads one choice
/// per line from `in`; `q` or end of input stops the session.
Trace simulate_interactive(const System& s, std::istream& in, std::ostream& out,
                           std::size_t max_steps = SIZE_MAX);

} // namespace synchro
