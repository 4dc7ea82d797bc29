#include "synchro/dot.hpp"

#include <sstream>

namespace synchro {

namespace {

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string join(const std::set<std::string>& items)
{
    std::string out;
    for (const auto& i : items) out += (out.empty() ? "" : ",") + i;
    return out;
}

// A guard that is a single graph atom, optionally conjoined with label atoms,
// prints as `G/{labels}`; a bare name broadcast prints as the compact state.
std::string edge_label(const CompactTransition& t, const CompactAutomaton& c)
{
    const Guard& g = t.guard;
    if (g.kind() == Guard::Kind::edge_in) {
        auto it = c.graphs.find(g.name());
        std::string labels;
        if (it != c.graphs.end()) {
            for (const auto& l : it->second.labels) labels += (labels.empty() ? "" : ",") + l.name();
        }
        return g.name() + "/{" + labels + "}";
    }
    if (g.kind() == Guard::Kind::label_is_source_name) return t.source;
    return to_string(g);
}

} // namespace

std::string export_dot(const FiniteAutomaton& a)
{
    std::ostringstream out;
    out << "digraph " << quote(a.name) << " {\n  rankdir=LR;\n";
    for (const auto& q : a.states) out << "  " << quote(q) << " [shape=circle];\n";
    for (const auto& q : a.initials) {
        out << "  " << quote("__init_" + q) << " [shape=point];\n";
        out << "  " << quote("__init_" + q) << " -> " << quote(q) << ";\n";
    }
    for (const auto& t : a.transitions) {
        out << "  " << quote(t.source) << " -> " << quote(t.target) << " [label=" << quote(t.label.name()) << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string export_dot(const CompactAutomaton& c)
{
    std::ostringstream out;
    out << "digraph " << quote(c.name) << " {\n  rankdir=LR;\n";
    for (const auto& [q, image] : c.images) {
        out << "  " << quote(q) << " [shape=" << (image.size() > 1 ? "doublecircle" : "circle")
            << ", tooltip=" << quote("{" + join(image) + "}") << "];\n";
    }
    out << "  " << quote("__initials") << " [shape=note, label=" << quote("init {" + join(c.initials) + "}") << "];\n";
    for (const auto& t : c.transitions) {
        out << "  " << quote(t.source) << " -> " << quote(t.target) << " [label=" << quote(edge_label(t, c)) << "];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace synchro
