#include "synchro/trace.hpp"

#include <algorithm>

namespace synchro {

TraceVerdict validate_trace(const System& s, const Trace& trace)
{
    TraceVerdict v;
    if (trace.states.empty()) {
        v.failure = TraceFailure::empty;
        v.message = "trace has no state";
        return v;
    }
    if (trace.states.size() != trace.labels.size() + 1) {
        v.failure = TraceFailure::malformed;
        v.message = "trace has " + std::to_string(trace.states.size()) + " states for " +
                    std::to_string(trace.labels.size()) + " labels";
        return v;
    }
    auto initials = global_initials(s);
    if (!std::binary_search(initials.begin(), initials.end(), trace.states.front())) {
        v.failure = TraceFailure::not_initial;
        v.message = to_string(trace.states.front()) + " is not a global initial state";
        return v;
    }
    for (std::size_t j = 1; j <= trace.labels.size(); ++j) {
        const auto& from = trace.states[j - 1];
        const auto& label = trace.labels[j - 1];
        const auto& to = trace.states[j];
        GlobalTransition wanted{from, label, to, {}};
        auto enabled = enabled_global_transitions(s, from);
        if (std::find(enabled.begin(), enabled.end(), wanted) == enabled.end()) {
            v.failure = TraceFailure::step_not_enabled;
            v.step = j;
            v.message = "step " + std::to_string(j) + ": " + to_string(wanted) + " is not a transition";
            return v;
        }
    }
    v.accepted = true;
    return v;
}

std::string format_trace(const Trace& trace)
{
    std::string out;
    if (trace.labels.empty()) {
        if (!trace.states.empty()) out += to_string(trace.states.front()) + "\n";
    }
    for (std::size_t j = 0; j < trace.labels.size(); ++j) {
        out += to_string(GlobalTransition{trace.states[j], trace.labels[j], trace.states[j + 1], {}});
        out += '\n';
    }
    if (trace.deadlock) out += "deadlock\n";
    return out;
}

namespace {

std::string_view trim(std::string_view s)
{
    auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && space(s.front())) s.remove_prefix(1);
    while (!s.empty() && space(s.back())) s.remove_suffix(1);
    return s;
}

// Reads "(a,b,...)" at the front of `s`, advancing past it.
GlobalState read_tuple(std::string_view& s, std::size_t line)
{
    auto fail = [&](const std::string& what) {
        throw Error("trace line " + std::to_string(line) + ": " + what);
    };
    s = trim(s);
    if (s.empty() || s.front() != '(') fail("expected '('");
    auto close = s.find(')');
    if (close == std::string_view::npos) fail("missing ')'");
    std::string_view body = s.substr(1, close - 1);
    s.remove_prefix(close + 1);
    GlobalState g;
    while (true) {
        auto comma = body.find(',');
        auto item = trim(body.substr(0, comma));
        if (item.empty()) fail("empty component");
        g.components.emplace_back(item);
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    return g;
}

} // namespace

Trace parse_trace(std::string_view text)
{
    Trace trace;
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;

        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        auto fail = [&](const std::string& what) {
            throw Error("trace line " + std::to_string(line_no) + ": " + what);
        };
        if (trace.deadlock) fail("nothing may follow 'deadlock'");
        if (line == "deadlock") {
            if (trace.states.empty()) fail("'deadlock' before any state");
            trace.deadlock = true;
            continue;
        }

        GlobalState source = read_tuple(line, line_no);
        line = trim(line);
        if (line.empty()) {
            if (!trace.states.empty()) fail("a bare state is only allowed as the whole trace");
            trace.states.push_back(std::move(source));
            continue;
        }
        if (!trace.states.empty() && trace.labels.empty()) fail("a bare state is only allowed as the whole trace");
        if (line.substr(0, 2) != "--") fail("expected '--label-->'");
        line.remove_prefix(2);
        auto arrow = line.find("-->");
        if (arrow == std::string_view::npos) fail("expected '-->'");
        std::string_view label_text = trim(line.substr(0, arrow));
        line.remove_prefix(arrow + 3);
        Label label;
        try {
            label = Label::parse(label_text);
        } catch (const Error& e) {
            fail(e.what());
        }
        GlobalState target = read_tuple(line, line_no);
        if (!trim(line).empty()) fail("trailing text after target state");

        if (trace.states.empty()) {
            trace.states.push_back(std::move(source));
        } else if (trace.states.back() != source) {
            fail("step starts at " + to_string(source) + " but the previous step ended at " +
                 to_string(trace.states.back()));
        }
        trace.labels.push_back(std::move(label));
        trace.states.push_back(std::move(target));
    }
    return trace;
}

} // namespace synchro
