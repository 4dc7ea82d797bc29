#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "synchro/automaton.hpp"

namespace synchro {

/// The element set X of a compact automaton, with optional per-element links:
/// a letter the element broadcasts under its own name, an underlying letter
/// (an evaluation or engagement state carries its coping letter), and a
/// counterpart pairing those two kinds of state. The counterpart map is kept
/// symmetric.
struct ElementUniverse {
    std::string name;
    std::set<std::string> elements;
    std::map<std::string, std::string> linked_letter;
    std::map<std::string, std::string> underlying_letter;
    std::map<std::string, std::string> counterpart;

    void pair(const std::string& a, const std::string& b)
    {
        counterpart[a] = b;
        counterpart[b] = a;
    }

    friend bool operator==(const ElementUniverse&, const ElementUniverse&) = default;
};

std::vector<Diagnostic> validate_universe(const ElementUniverse& u, const Alphabet& alphabet);

/// A directed graph over a universe whose edges carry labels from `labels`.
struct LabeledGraph {
    std::string name;
    std::string universe;
    std::set<Label> labels;
    std::set<Transition> edges;

    bool has_edge(const std::string& from, const Label& label, const std::string& to) const
    {
        return edges.count({from, label, to}) > 0;
    }

    friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;
};

std::vector<Diagnostic> validate_graph(const LabeledGraph& g, const ElementUniverse& u,
                                       const Alphabet& alphabet);

/// Quantifier-free formula over (source element, label, target element).
class Guard {
public:
    enum class Kind {
        truth,
        label_is,
        label_is_source_name,
        label_is_source_underlying,
        target_is_counterpart,
        source_is,
        target_is,
        edge_in,
        conjunction,
        disjunction,
        negation,
    };

    Guard();

    static Guard truth() { return Guard{}; }
    static Guard label_is(Label label);
    static Guard label_is_source_name();
    static Guard label_is_source_underlying();
    static Guard target_is_counterpart();
    static Guard source_is(std::string element);
    static Guard target_is(std::string element);
    static Guard edge_in(std::string graph);

    friend Guard operator&&(Guard lhs, Guard rhs);
    friend Guard operator||(Guard lhs, Guard rhs);
    friend Guard operator!(Guard operand);

    Kind kind() const;
    /// LabelIs: its label.
    const Label& label() const;
    /// SourceIs/TargetIs: the element; EdgeIn: the graph name.
    const std::string& name() const;
    const Guard& lhs() const;
    const Guard& rhs() const;
    /// Negation operand.
    const Guard& operand() const { return lhs(); }

    friend bool operator==(const Guard& lhs, const Guard& rhs);
    friend std::strong_ordering operator<=>(const Guard& lhs, const Guard& rhs);

private:
    struct Node;
    explicit Guard(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

/// Concrete syntax: `label s`, `label src.name`, `label src.under`,
/// `target counterpart`, `src e`, `target e`, `edge G`, `true`, combined with
/// `!`, `&`, `|` (tightest first) and parentheses. Binary operators associate
/// to the left; the output reparses to a structurally equal guard.
std::string to_string(const Guard& guard);

/// Names of every graph the guard mentions.
std::set<std::string> referenced_graphs(const Guard& guard);

struct GuardContext {
    const ElementUniverse& universe;
    const std::map<std::string, LabeledGraph>& graphs;
};

/// Atoms needing an annotation that `source` lacks evaluate to false, as does
/// an edge atom naming an unknown graph.
bool eval_guard(const Guard& guard, const GuardContext& context, const std::string& source,
                const Label& label, const std::string& target);

struct CompactTransition {
    std::string source;
    Guard guard;
    std::string target;

    friend bool operator==(const CompactTransition&, const CompactTransition&) = default;
    friend auto operator<=>(const CompactTransition& lhs, const CompactTransition& rhs)
    {
        if (auto c = lhs.source <=> rhs.source; c != 0) return c;
        if (auto c = lhs.target <=> rhs.target; c != 0) return c;
        return lhs.guard <=> rhs.guard;
    }
};

/// States map to sets of elements of one universe; transitions carry guards.
/// Element identity is global: compact states with overlapping images share
/// unfolded states.
struct CompactAutomaton {
    std::string name;
    Alphabet alphabet;
    ElementUniverse universe;
    /// Graphs mentioned by guards, by name.
    std::map<std::string, LabeledGraph> graphs;
    /// The unfolding function: compact state -> image.
    std::map<std::string, std::set<std::string>> images;
    std::set<CompactTransition> transitions;
    std::set<std::string> initials;

    friend bool operator==(const CompactAutomaton&, const CompactAutomaton&) = default;
};

std::vector<Diagnostic> validate_compact(const CompactAutomaton& c);

/// Expands `c` into a plain automaton over the union of the images. Transitions
/// between distinct compact states admit every (x, a, y) satisfying the guard,
/// x = y included; compact self-loops only admit (x, a, x). Throws Error when
/// validate_compact reports errors.
FiniteAutomaton unfold(const CompactAutomaton& c);

} // namespace synchro
