#include "synchro/language.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace synchro {

std::string to_string(const Word& word)
{
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) out += ',';
        out += word[i].name();
    }
    return out;
}

Word parse_word(const std::string& text)
{
    Word out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        out.push_back(Label::parse(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

FiniteAutomaton project(const FiniteAutomaton& a, const Alphabet& target)
{
    FiniteAutomaton out;
    out.name = a.name;
    out.alphabet = target;
    out.states = a.states;
    out.initials = a.initials;
    for (const auto& t : a.transitions) {
        out.add(t.source, target.contains(t.label) ? t.label : Label::tau(), t.target);
    }
    return out;
}

namespace {

using StateSet = std::set<State>;

// Outgoing transitions grouped by (source, label).
class Successors {
public:
    explicit Successors(const FiniteAutomaton& a)
    {
        for (const auto& t : a.transitions) next_[{t.source, t.label}].insert(t.target);
    }

    StateSet post(const StateSet& from, const Label& label) const
    {
        StateSet out;
        for (const auto& q : from) {
            auto it = next_.find({q, label});
            if (it != next_.end()) out.insert(it->second.begin(), it->second.end());
        }
        return out;
    }

    StateSet tau_closure(StateSet from) const
    {
        std::deque<State> frontier(from.begin(), from.end());
        while (!frontier.empty()) {
            State q = std::move(frontier.front());
            frontier.pop_front();
            auto it = next_.find({q, Label::tau()});
            if (it == next_.end()) continue;
            for (const auto& r : it->second) {
                if (from.insert(r).second) frontier.push_back(r);
            }
        }
        return from;
    }

private:
    std::map<std::pair<State, Label>, StateSet> next_;
};

std::set<Label> all_labels(const FiniteAutomaton& a)
{
    std::set<Label> out;
    for (const auto& l : a.alphabet.labels()) out.insert(l);
    for (const auto& t : a.transitions) out.insert(t.label);
    return out;
}

void collect_words(const Successors& next, const std::set<Label>& labels, const StateSet& current, Word& prefix,
                   std::size_t bound, std::set<Word>& out)
{
    out.insert(prefix);
    if (prefix.size() == bound) return;
    for (const auto& l : labels) {
        StateSet target = next.post(current, l);
        if (target.empty()) continue;
        prefix.push_back(l);
        collect_words(next, labels, target, prefix, bound, out);
        prefix.pop_back();
    }
}

std::string set_name(const StateSet& s)
{
    std::string out = "{";
    bool first = true;
    for (const auto& q : s) {
        if (!first) out += ',';
        out += q;
        first = false;
    }
    return out + "}";
}

} // namespace

WordSet words_upto(const FiniteAutomaton& a, std::size_t bound)
{
    WordSet out;
    out.bound = bound;
    if (a.initials.empty()) return out;
    Successors next(a);
    Word prefix;
    collect_words(next, all_labels(a), a.initials, prefix, bound, out.words);
    return out;
}

InclusionResult language_includes(const FiniteAutomaton& superset, const FiniteAutomaton& subset,
                                  const LanguageOptions& options)
{
    InclusionResult result;
    const Successors sup(superset);
    const Successors sub(subset);
    std::set<Label> labels = all_labels(subset);
    if (options.tau_as_epsilon) labels.erase(Label::tau());

    auto close = [&](const Successors& s, StateSet states) {
        return options.tau_as_epsilon ? s.tau_closure(std::move(states)) : states;
    };

    using Pair = std::pair<StateSet, StateSet>;
    Pair start{close(sub, subset.initials), close(sup, superset.initials)};
    if (start.first.empty()) {
        result.holds = true;
        return result;
    }
    if (start.second.empty()) {
        result.counterexample = Word{};
        return result;
    }

    std::map<Pair, std::size_t> index;
    std::vector<Pair> nodes;
    // parent node and label leading to each node; the start node has none
    std::vector<std::pair<std::size_t, Label>> parent;
    index.emplace(start, 0);
    nodes.push_back(start);
    parent.push_back({0, Label::tau()});

    auto word_to = [&](std::size_t node) {
        Word w;
        while (node != 0) {
            w.push_back(parent[node].second);
            node = parent[node].first;
        }
        return Word(w.rbegin(), w.rend());
    };

    for (std::size_t current = 0; current < nodes.size(); ++current) {
        for (const auto& l : labels) {
            StateSet sub_next = close(sub, sub.post(nodes[current].first, l));
            if (sub_next.empty()) continue;
            StateSet sup_next = close(sup, sup.post(nodes[current].second, l));
            if (sup_next.empty()) {
                Word w = word_to(current);
                w.push_back(l);
                result.counterexample = std::move(w);
                return result;
            }
            Pair next{std::move(sub_next), std::move(sup_next)};
            if (index.count(next)) continue;
            index.emplace(next, nodes.size());
            nodes.push_back(std::move(next));
            parent.push_back({current, l});
        }
    }
    result.holds = true;
    return result;
}

FiniteAutomaton determinize(const FiniteAutomaton& a)
{
    FiniteAutomaton out;
    out.name = a.name;
    out.alphabet = a.alphabet;
    if (a.initials.empty()) return out;

    const Successors next(a);
    const auto labels = all_labels(a);
    std::set<StateSet> seen{a.initials};
    std::deque<StateSet> frontier{a.initials};
    out.initials.insert(set_name(a.initials));
    while (!frontier.empty()) {
        StateSet current = std::move(frontier.front());
        frontier.pop_front();
        out.states.insert(set_name(current));
        for (const auto& l : labels) {
            StateSet target = next.post(current, l);
            if (target.empty()) continue;
            out.add(set_name(current), l, set_name(target));
            if (seen.insert(target).second) frontier.push_back(std::move(target));
        }
    }
    return out;
}

SimulationResult simulates(const FiniteAutomaton& abstract, const FiniteAutomaton& refined)
{
    const std::vector<State> as(abstract.states.begin(), abstract.states.end());
    const std::vector<State> rs(refined.states.begin(), refined.states.end());
    const Successors abstract_next(abstract);

    std::map<State, std::vector<const Transition*>> refined_out;
    for (const auto& t : refined.transitions) refined_out[t.source].push_back(&t);

    std::set<std::pair<State, State>> relation;
    for (const auto& p : as) {
        for (const auto& q : rs) relation.insert({p, q});
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = relation.begin(); it != relation.end();) {
            const auto& [p, q] = *it;
            bool ok = true;
            auto outgoing = refined_out.find(q);
            if (outgoing != refined_out.end()) {
                for (const Transition* t : outgoing->second) {
                    bool matched = false;
                    for (const auto& p2 : abstract_next.post({p}, t->label)) {
                        if (relation.count({p2, t->target})) {
                            matched = true;
                            break;
                        }
                    }
                    if (!matched) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) {
                ++it;
            } else {
                it = relation.erase(it);
                changed = true;
            }
        }
    }

    SimulationResult result;
    result.holds = std::all_of(refined.initials.begin(), refined.initials.end(), [&](const State& q) {
        return std::any_of(abstract.initials.begin(), abstract.initials.end(),
                           [&](const State& p) { return relation.count({p, q}) > 0; });
    });
    result.relation = std::move(relation);
    return result;
}

} // namespace synchro
