#include "synchro/compact.hpp"

namespace synchro {

struct Guard::Node {
    Kind kind = Kind::truth;
    Label label;
    std::string name;
    std::vector<Guard> operands;
};

namespace {

int precedence(Guard::Kind k)
{
    switch (k) {
    case Guard::Kind::disjunction: return 1;
    case Guard::Kind::conjunction: return 2;
    case Guard::Kind::negation: return 3;
    default: return 4;
    }
}

} // namespace

Guard::Guard()
{
    static const auto truth = std::make_shared<const Node>();
    node_ = truth;
}

Guard::Guard(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Guard Guard::label_is(Label label)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::label_is;
    n->label = std::move(label);
    return Guard(std::move(n));
}

Guard Guard::label_is_source_name()
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::label_is_source_name;
    return Guard(std::move(n));
}

Guard Guard::label_is_source_underlying()
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::label_is_source_underlying;
    return Guard(std::move(n));
}

Guard Guard::target_is_counterpart()
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::target_is_counterpart;
    return Guard(std::move(n));
}

Guard Guard::source_is(std::string element)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::source_is;
    n->name = std::move(element);
    return Guard(std::move(n));
}

Guard Guard::target_is(std::string element)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::target_is;
    n->name = std::move(element);
    return Guard(std::move(n));
}

Guard Guard::edge_in(std::string graph)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::edge_in;
    n->name = std::move(graph);
    return Guard(std::move(n));
}

Guard operator&&(Guard lhs, Guard rhs)
{
    auto n = std::make_shared<Guard::Node>();
    n->kind = Guard::Kind::conjunction;
    n->operands = {std::move(lhs), std::move(rhs)};
    return Guard(std::move(n));
}

Guard operator||(Guard lhs, Guard rhs)
{
    auto n = std::make_shared<Guard::Node>();
    n->kind = Guard::Kind::disjunction;
    n->operands = {std::move(lhs), std::move(rhs)};
    return Guard(std::move(n));
}

Guard operator!(Guard operand)
{
    auto n = std::make_shared<Guard::Node>();
    n->kind = Guard::Kind::negation;
    n->operands = {std::move(operand)};
    return Guard(std::move(n));
}

Guard::Kind Guard::kind() const { return node_->kind; }
const Label& Guard::label() const { return node_->label; }
const std::string& Guard::name() const { return node_->name; }

const Guard& Guard::lhs() const
{
    if (node_->operands.empty()) throw Error("guard has no operand");
    return node_->operands.front();
}

const Guard& Guard::rhs() const
{
    if (node_->operands.size() < 2) throw Error("guard has no second operand");
    return node_->operands[1];
}

bool operator==(const Guard& lhs, const Guard& rhs)
{
    return (lhs <=> rhs) == 0;
}

std::strong_ordering operator<=>(const Guard& lhs, const Guard& rhs)
{
    if (lhs.node_ == rhs.node_) return std::strong_ordering::equal;
    if (auto c = lhs.kind() <=> rhs.kind(); c != 0) return c;
    if (auto c = lhs.label() <=> rhs.label(); c != 0) return c;
    if (auto c = lhs.name() <=> rhs.name(); c != 0) return c;
    const auto& a = lhs.node_->operands;
    const auto& b = rhs.node_->operands;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (auto c = a[i] <=> b[i]; c != 0) return c;
    }
    return a.size() <=> b.size();
}

namespace {

void print(const Guard& g, int min_precedence, std::string& out)
{
    int p = precedence(g.kind());
    bool paren = p < min_precedence;
    if (paren) out += '(';
    switch (g.kind()) {
    case Guard::Kind::truth: out += "true"; break;
    case Guard::Kind::label_is: out += "label " + g.label().name(); break;
    case Guard::Kind::label_is_source_name: out += "label src.name"; break;
    case Guard::Kind::label_is_source_underlying: out += "label src.under"; break;
    case Guard::Kind::target_is_counterpart: out += "target counterpart"; break;
    case Guard::Kind::source_is: out += "src " + g.name(); break;
    case Guard::Kind::target_is: out += "target " + g.name(); break;
    case Guard::Kind::edge_in: out += "edge " + g.name(); break;
    case Guard::Kind::conjunction:
    case Guard::Kind::disjunction:
        print(g.lhs(), p, out);
        out += g.kind() == Guard::Kind::conjunction ? " & " : " | ";
        print(g.rhs(), p + 1, out);
        break;
    case Guard::Kind::negation:
        out += '!';
        print(g.operand(), p, out);
        break;
    }
    if (paren) out += ')';
}

template <typename F>
void visit_atoms(const Guard& g, F&& f)
{
    switch (g.kind()) {
    case Guard::Kind::conjunction:
    case Guard::Kind::disjunction:
        visit_atoms(g.lhs(), f);
        visit_atoms(g.rhs(), f);
        break;
    case Guard::Kind::negation: visit_atoms(g.operand(), f); break;
    default: f(g);
    }
}

template <typename Map>
const typename Map::mapped_type* lookup(const Map& m, const std::string& key)
{
    auto it = m.find(key);
    return it == m.end() ? nullptr : &it->second;
}

} // namespace

std::string to_string(const Guard& guard)
{
    std::string out;
    print(guard, 0, out);
    return out;
}

std::set<std::string> referenced_graphs(const Guard& guard)
{
    std::set<std::string> out;
    visit_atoms(guard, [&](const Guard& atom) {
        if (atom.kind() == Guard::Kind::edge_in) out.insert(atom.name());
    });
    return out;
}

bool eval_guard(const Guard& guard, const GuardContext& context, const std::string& source, const Label& label,
                const std::string& target)
{
    const auto& u = context.universe;
    switch (guard.kind()) {
    case Guard::Kind::truth: return true;
    case Guard::Kind::label_is: return label == guard.label();
    case Guard::Kind::label_is_source_name: {
        const auto* letter = lookup(u.linked_letter, source);
        return letter && !label.is_tau() && label.name() == *letter;
    }
    case Guard::Kind::label_is_source_underlying: {
        const auto* letter = lookup(u.underlying_letter, source);
        return letter && !label.is_tau() && label.name() == *letter;
    }
    case Guard::Kind::target_is_counterpart: {
        const auto* other = lookup(u.counterpart, source);
        return other && *other == target;
    }
    case Guard::Kind::source_is: return source == guard.name();
    case Guard::Kind::target_is: return target == guard.name();
    case Guard::Kind::edge_in: {
        auto it = context.graphs.find(guard.name());
        return it != context.graphs.end() && it->second.has_edge(source, label, target);
    }
    case Guard::Kind::conjunction:
        return eval_guard(guard.lhs(), context, source, label, target) &&
               eval_guard(guard.rhs(), context, source, label, target);
    case Guard::Kind::disjunction:
        return eval_guard(guard.lhs(), context, source, label, target) ||
               eval_guard(guard.rhs(), context, source, label, target);
    case Guard::Kind::negation: return !eval_guard(guard.operand(), context, source, label, target);
    }
    return false;
}

std::vector<Diagnostic> validate_universe(const ElementUniverse& u, const Alphabet& alphabet)
{
    std::vector<Diagnostic> out;
    auto error = [&](std::string msg) { out.push_back({Severity::error, "set " + u.name + ": " + std::move(msg)}); };
    if (u.elements.empty()) error("no element");
    for (const auto& e : u.elements) {
        if (!is_identifier(e)) error("invalid element name '" + e + "'");
        if (e == "counterpart") error("element name 'counterpart' is reserved");
    }
    for (const auto* links : {&u.linked_letter, &u.underlying_letter}) {
        for (const auto& [e, letter] : *links) {
            if (!u.elements.count(e)) error("annotation on unknown element '" + e + "'");
            if (!alphabet.contains_letter(letter)) {
                error("element '" + e + "' refers to letter '" + letter + "' outside the alphabet");
            }
        }
    }
    for (const auto& [e, other] : u.counterpart) {
        if (!u.elements.count(e)) error("counterpart annotation on unknown element '" + e + "'");
        if (!u.elements.count(other)) error("element '" + e + "' is paired with unknown element '" + other + "'");
        if (e == other) error("element '" + e + "' is paired with itself");
        const auto* back = lookup(u.counterpart, other);
        if (!back || *back != e) error("pairing of '" + e + "' and '" + other + "' is not symmetric");
    }
    return out;
}

std::vector<Diagnostic> validate_graph(const LabeledGraph& g, const ElementUniverse& u, const Alphabet& alphabet)
{
    std::vector<Diagnostic> out;
    auto error = [&](std::string msg) {
        out.push_back({Severity::error, "graph " + g.name + ": " + std::move(msg)});
    };
    if (g.universe != u.name) error("declared over '" + g.universe + "' but checked against '" + u.name + "'");
    for (const auto& l : g.labels) {
        if (!alphabet.contains(l)) error("label '" + l.name() + "' is not in the alphabet");
    }
    for (const auto& e : g.edges) {
        if (!u.elements.count(e.source)) error("edge " + to_string(e) + " leaves unknown element '" + e.source + "'");
        if (!u.elements.count(e.target)) error("edge " + to_string(e) + " enters unknown element '" + e.target + "'");
        if (!g.labels.count(e.label)) error("edge " + to_string(e) + " carries a label outside the graph's label set");
    }
    return out;
}

std::vector<Diagnostic> validate_compact(const CompactAutomaton& c)
{
    std::vector<Diagnostic> out = validate_universe(c.universe, c.alphabet);
    auto report = [&](Severity sev, std::string msg) {
        out.push_back({sev, "compact " + c.name + ": " + std::move(msg)});
    };
    auto error = [&](std::string msg) { report(Severity::error, std::move(msg)); };

    for (const auto& [name, graph] : c.graphs) {
        if (graph.universe != c.universe.name) {
            error("graph " + name + " is over '" + graph.universe + "', not '" + c.universe.name + "'");
            continue;
        }
        for (auto& d : validate_graph(graph, c.universe, c.alphabet)) out.push_back(std::move(d));
    }

    std::set<std::string> all;
    for (const auto& [q, image] : c.images) {
        if (!is_identifier(q)) error("invalid compact state name '" + q + "'");
        if (image.empty()) error("compact state " + q + " has an empty image");
        for (const auto& e : image) {
            if (!c.universe.elements.count(e)) error("image of " + q + " contains unknown element '" + e + "'");
            all.insert(e);
        }
    }
    if (c.images.empty()) error("no compact state");
    if (c.initials.empty()) error("empty initial set");
    for (const auto& e : c.initials) {
        if (!all.count(e)) error("initial element '" + e + "' lies outside every image");
    }

    for (const auto& t : c.transitions) {
        std::string where = "transition " + t.source + " -[" + to_string(t.guard) + "]-> " + t.target;
        const auto* source_image = lookup(c.images, t.source);
        if (!source_image) error(where + ": unknown compact state '" + t.source + "'");
        if (!c.images.count(t.target)) error(where + ": unknown compact state '" + t.target + "'");
        auto unannotated = [&](const std::map<std::string, std::string>& links, const char* what) {
            if (!source_image) return;
            for (const auto& e : *source_image) {
                if (!links.count(e)) {
                    report(Severity::warning, where + ": element '" + e + "' has no " + what);
                }
            }
        };
        visit_atoms(t.guard, [&](const Guard& atom) {
            switch (atom.kind()) {
            case Guard::Kind::label_is:
                if (!c.alphabet.contains(atom.label())) {
                    error(where + ": label '" + atom.label().name() + "' is not in the alphabet");
                }
                break;
            case Guard::Kind::source_is:
            case Guard::Kind::target_is:
                if (!c.universe.elements.count(atom.name())) error(where + ": unknown element '" + atom.name() + "'");
                break;
            case Guard::Kind::edge_in:
                if (!c.graphs.count(atom.name())) error(where + ": unknown graph '" + atom.name() + "'");
                break;
            case Guard::Kind::label_is_source_name: unannotated(c.universe.linked_letter, "linked letter"); break;
            case Guard::Kind::label_is_source_underlying:
                unannotated(c.universe.underlying_letter, "underlying letter");
                break;
            case Guard::Kind::target_is_counterpart: unannotated(c.universe.counterpart, "counterpart"); break;
            default: break;
            }
        });
    }
    return out;
}

FiniteAutomaton unfold(const CompactAutomaton& c)
{
    auto diagnostics = validate_compact(c);
    for (const auto& d : diagnostics) {
        if (d.severity == Severity::error) throw Error(d.message);
    }

    FiniteAutomaton a;
    a.name = c.name;
    a.alphabet = c.alphabet;
    a.initials = c.initials;
    for (const auto& [q, image] : c.images) a.states.insert(image.begin(), image.end());

    const GuardContext context{c.universe, c.graphs};
    const auto labels = c.alphabet.labels();
    for (const auto& t : c.transitions) {
        const auto& from = c.images.at(t.source);
        if (t.source != t.target) {
            for (const auto& x : from) {
                for (const auto& y : c.images.at(t.target)) {
                    for (const auto& l : labels) {
                        if (eval_guard(t.guard, context, x, l, y)) a.add(x, l, y);
                    }
                }
            }
        } else {
            for (const auto& x : from) {
                for (const auto& l : labels) {
                    if (eval_guard(t.guard, context, x, l, x)) a.add(x, l, x);
                }
            }
        }
    }
    return a;
}

} // namespace synchro
