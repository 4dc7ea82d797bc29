#pragma once

// Shared fixtures and independent oracles. The oracles restate the
// definitions as directly as possible and share no code with the library
// beyond its data types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "synchro/compact.hpp"
#include "synchro/corpus.hpp"
#include "synchro/system.hpp"

namespace support {

using namespace synchro;

inline const Label tau = Label::tau();
inline Label L(const std::string& name) { return Label::letter(name); }

inline std::string corpus_dir() { return SYNCHRO_CORPUS_DIR; }

// ---------------------------------------------------------------- generators

inline FiniteAutomaton random_automaton(std::mt19937_64& rng, const std::string& name, const Alphabet& sigma,
                                        std::size_t n_states, std::size_t n_transitions, const std::string& prefix = "q")
{
    FiniteAutomaton a;
    a.name = name;
    a.alphabet = sigma;
    for (std::size_t i = 0; i < n_states; ++i) a.states.insert(prefix + std::to_string(i));
    std::vector<State> states(a.states.begin(), a.states.end());
    std::vector<Label> labels = sigma.labels();
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    for (std::size_t k = 0; k < n_transitions; ++k) {
        a.add(states[pick(states.size())], labels[pick(labels.size())], states[pick(states.size())]);
    }
    a.initials.insert(states[pick(states.size())]);
    if (pick(3) == 0) a.initials.insert(states[pick(states.size())]);
    return a;
}

inline Alphabet small_alphabet(std::size_t n)
{
    std::set<std::string> letters;
    for (std::size_t i = 0; i < n; ++i) letters.insert(std::string(1, static_cast<char>('a' + i)));
    return Alphabet(letters);
}

// ---------------------------------------------------------------- step oracle

inline bool has_transition(const FiniteAutomaton& a, const State& p, const Label& l, const State& q)
{
    return a.transitions.count({p, l, q}) > 0;
}

inline std::vector<GlobalState> all_global_states(const System& s)
{
    std::vector<GlobalState> out{GlobalState{}};
    for (const auto& a : s.automata()) {
        std::vector<GlobalState> next;
        for (const auto& g : out) {
            for (const auto& q : a.states) {
                auto h = g;
                h.components.push_back(q);
                next.push_back(h);
            }
        }
        out = next;
    }
    return out;
}

// Whether g --l--> h is licensed, decided from the rule statements alone.
inline bool step_licensed(const System& s, const GlobalState& g, const Label& l, const GlobalState& h)
{
    const std::size_t n = s.size();
    if (l.is_tau()) {
        std::vector<std::size_t> changed;
        for (std::size_t i = 0; i < n; ++i) {
            if (g.components[i] != h.components[i]) changed.push_back(i);
        }
        if (changed.size() > 1) return false;
        if (changed.size() == 1) {
            auto i = changed.front();
            return has_transition(s[i], g.components[i], tau, h.components[i]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (has_transition(s[i], g.components[i], tau, g.components[i])) return true;
        }
        return false;
    }
    bool any_member = false;
    for (std::size_t i = 0; i < n; ++i) {
        bool member = std::any_of(s[i].transitions.begin(), s[i].transitions.end(),
                                  [&](const Transition& t) { return t.label == l; });
        any_member = any_member || member;
        if (member) {
            if (!has_transition(s[i], g.components[i], l, h.components[i])) return false;
        } else if (g.components[i] != h.components[i]) {
            return false;
        }
    }
    return any_member;
}

// ---------------------------------------------------------------- unfolding oracle

inline bool oracle_guard(const Guard& g, const ElementUniverse& u, const std::map<std::string, LabeledGraph>& graphs,
                         const std::string& x, const Label& a, const std::string& y)
{
    auto annotation = [](const std::map<std::string, std::string>& m, const std::string& k) -> std::optional<std::string> {
        auto it = m.find(k);
        if (it == m.end()) return std::nullopt;
        return it->second;
    };
    switch (g.kind()) {
    case Guard::Kind::truth: return true;
    case Guard::Kind::label_is: return a == g.label();
    case Guard::Kind::label_is_source_name: {
        auto letter = annotation(u.linked_letter, x);
        return letter && !a.is_tau() && a.name() == *letter;
    }
    case Guard::Kind::label_is_source_underlying: {
        auto letter = annotation(u.underlying_letter, x);
        return letter && !a.is_tau() && a.name() == *letter;
    }
    case Guard::Kind::target_is_counterpart: {
        auto other = annotation(u.counterpart, x);
        return other && *other == y;
    }
    case Guard::Kind::source_is: return x == g.name();
    case Guard::Kind::target_is: return y == g.name();
    case Guard::Kind::edge_in: {
        auto it = graphs.find(g.name());
        return it != graphs.end() && it->second.edges.count({x, a, y}) > 0;
    }
    case Guard::Kind::conjunction:
        return oracle_guard(g.lhs(), u, graphs, x, a, y) && oracle_guard(g.rhs(), u, graphs, x, a, y);
    case Guard::Kind::disjunction:
        return oracle_guard(g.lhs(), u, graphs, x, a, y) || oracle_guard(g.rhs(), u, graphs, x, a, y);
    case Guard::Kind::negation: return !oracle_guard(g.operand(), u, graphs, x, a, y);
    }
    return false;
}

// Brute force over every (x, a, y) in U x Sigma_tau x U.
inline std::set<Transition> oracle_unfold(const CompactAutomaton& c)
{
    std::set<std::string> all;
    for (const auto& [q, image] : c.images) all.insert(image.begin(), image.end());
    std::vector<Label> labels;
    for (const auto& l : c.alphabet.letters()) labels.push_back(L(l));
    labels.push_back(tau);
    std::set<Transition> out;
    for (const auto& x : all) {
        for (const auto& a : labels) {
            for (const auto& y : all) {
                for (const auto& t : c.transitions) {
                    const auto& from = c.images.at(t.source);
                    const auto& to = c.images.at(t.target);
                    if (!from.count(x) || !to.count(y)) continue;
                    if (t.source == t.target && x != y) continue;
                    if (oracle_guard(t.guard, c.universe, c.graphs, x, a, y)) out.insert({x, a, y});
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- partition oracle

// Checks the refinement conditions for a total map refined -> abstract.
inline bool assignment_refines(const FiniteAutomaton& abs, const FiniteAutomaton& ref,
                               const std::map<State, State>& h, bool relaxed)
{
    for (const auto& l : abs.alphabet.letters()) {
        if (!ref.alphabet.contains_letter(l)) return false;
    }
    if (!relaxed) {
        std::set<State> used;
        for (const auto& [p, q] : h) used.insert(q);
        if (used.size() != abs.states.size()) return false;
    }
    for (const auto& t : ref.transitions) {
        const State& p = h.at(t.source);
        const State& q = h.at(t.target);
        bool found = has_transition(abs, p, tau, q) || (!t.label.is_tau() && has_transition(abs, p, t.label, q));
        if (!found) return false;
    }
    for (const auto& i : ref.initials) {
        if (!abs.initials.count(h.at(i))) return false;
    }
    return true;
}

// Enumerates every map refined -> abstract; the callback may stop the search
// by returning true.
inline void for_each_assignment(const FiniteAutomaton& abs, const FiniteAutomaton& ref,
                                const std::function<bool(const std::map<State, State>&)>& visit)
{
    std::vector<State> qs(abs.states.begin(), abs.states.end());
    std::vector<State> ps(ref.states.begin(), ref.states.end());
    if (qs.empty()) {
        if (ps.empty()) visit({});
        return;
    }
    std::vector<std::size_t> digits(ps.size(), 0);
    while (true) {
        std::map<State, State> h;
        for (std::size_t i = 0; i < ps.size(); ++i) h[ps[i]] = qs[digits[i]];
        if (visit(h)) return;
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == qs.size()) digits[i++] = 0;
        if (i == digits.size()) return;
    }
}

inline bool oracle_leq(const FiniteAutomaton& abs, const FiniteAutomaton& ref, bool relaxed = false)
{
    bool found = false;
    for_each_assignment(abs, ref, [&](const std::map<State, State>& h) {
        found = assignment_refines(abs, ref, h, relaxed);
        return found;
    });
    return found;
}

inline std::set<std::size_t> oracle_sync(const System& s, const std::string& letter)
{
    std::set<std::size_t> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (const auto& t : s[i].transitions) {
            if (!t.label.is_tau() && t.label.name() == letter) out.insert(i);
        }
    }
    return out;
}

inline bool oracle_system_leq(const System& abs, const System& ref)
{
    if (abs.size() > ref.size()) return false;
    for (std::size_t i = 0; i < abs.size(); ++i) {
        if (!oracle_leq(abs[i], ref[i])) return false;
    }
    for (const auto& a : abs.alphabet().letters()) {
        auto j = oracle_sync(abs, a);
        auto k = oracle_sync(ref, a);
        if (!std::includes(k.begin(), k.end(), j.begin(), j.end())) return false;
    }
    return true;
}

// ---------------------------------------------------------------- corpus

inline std::optional<corpus::StageParams> params_for(int k)
{
    if (k >= 4) return corpus::money_params();
    return std::nullopt;
}

inline corpus::Stage money_stage(int k) { return corpus::stage(k, params_for(k)); }

// Every plain automaton of the corpus, compact members unfolded.
inline std::vector<FiniteAutomaton> corpus_automata()
{
    std::vector<FiniteAutomaton> out;
    for (int k = 1; k <= 7; ++k) {
        auto st = money_stage(k);
        for (const auto& a : st.system.automata()) out.push_back(a);
    }
    for (const auto& doc : {corpus::examples::rendezvous(), corpus::examples::unfolding(),
                            corpus::examples::graph_transition(), corpus::examples::refinement_abstract(),
                            corpus::examples::refinement_refined()}) {
        auto s = build_system(doc);
        for (const auto& a : s.automata()) out.push_back(a);
    }
    return out;
}

} // namespace support
