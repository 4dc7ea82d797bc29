#include "synchro/simulate.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

namespace synchro {

std::uint64_t SplitMix64::next()
{
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

BlockedStep::BlockedStep(std::size_t step, Label label, std::set<std::size_t> blocking)
    : Error([&] {
          std::string msg = "step " + std::to_string(step) + ": '" + label.name() + "' is not enabled";
          if (!blocking.empty()) {
              msg += "; blocked by component";
              msg += blocking.size() > 1 ? "s" : "";
              for (auto i : blocking) msg += " " + std::to_string(i + 1);
          }
          return msg;
      }()),
      step_(step), label_(std::move(label)), blocking_(std::move(blocking))
{
}

namespace {

Trace start(const System& s)
{
    Trace trace;
    auto initials = global_initials(s);
    if (initials.empty()) throw Error("the system has no global initial state");
    trace.states.push_back(initials.front());
    return trace;
}

void fire(Trace& trace, const GlobalTransition& t)
{
    trace.labels.push_back(t.label);
    trace.states.push_back(t.target);
}

std::set<std::size_t> blocking_components(const System& s, const GlobalState& g, const Label& label)
{
    std::set<std::size_t> out;
    if (label.is_tau()) {
        for (std::size_t i = 0; i < s.size(); ++i) out.insert(i);
        return out;
    }
    for (auto i : sync_indices(s, label)) {
        if (successors(s[i], g.components[i], label).empty()) out.insert(i);
    }
    return out;
}

} // namespace

Trace simulate_random(const System& s, std::uint64_t seed, std::size_t max_steps)
{
    SplitMix64 rng(seed);
    Trace trace = start(s);
    for (std::size_t step = 0; step < max_steps; ++step) {
        auto enabled = enabled_global_transitions(s, trace.states.back());
        if (enabled.empty()) {
            trace.deadlock = true;
            break;
        }
        fire(trace, enabled[rng.next() % enabled.size()]);
    }
    return trace;
}

Trace simulate_scripted(const System& s, std::span<const Label> word)
{
    Trace trace = start(s);
    for (std::size_t k = 0; k < word.size(); ++k) {
        const Label& label = word[k];
        if (!s.alphabet().contains(label)) {
            throw Error("step " + std::to_string(k + 1) + ": '" + label.name() + "' is not in the alphabet");
        }
        auto enabled = enabled_global_transitions(s, trace.states.back());
        auto it = std::find_if(enabled.begin(), enabled.end(),
                               [&](const GlobalTransition& t) { return t.label == label; });
        if (it == enabled.end()) {
            throw BlockedStep(k + 1, label, blocking_components(s, trace.states.back(), label));
        }
        fire(trace, *it);
    }
    return trace;
}

Trace simulate_interactive(const System& s, std::istream& in, std::ostream& out, std::size_t max_steps)
{
    Trace trace = start(s);
    while (trace.steps() < max_steps) {
        const auto& current = trace.states.back();
        auto enabled = enabled_global_transitions(s, current);
        out << "state " << to_string(current) << '\n';
        if (enabled.empty()) {
            out << "deadlock\n";
            trace.deadlock = true;
            break;
        }
        for (std::size_t i = 0; i < enabled.size(); ++i) {
            out << "  " << i + 1 << ": --" << enabled[i].label.name() << "--> " << to_string(enabled[i].target)
                << '\n';
        }
        std::size_t choice = 0;
        while (choice == 0) {
            out << "> " << std::flush;
            std::string line;
            if (!std::getline(in, line) || line == "q") {
                out << '\n';
                return trace;
            }
            try {
                std::size_t used = 0;
                unsigned long n = std::stoul(line, &used);
                if (used == line.size() && n >= 1 && n <= enabled.size()) choice = n;
            } catch (const std::exception&) {
            }
            if (choice == 0) out << "enter a number from 1 to " << enabled.size() << ", or q\n";
        }
        fire(trace, enabled[choice - 1]);
    }
    return trace;
}

} // namespace synchro
