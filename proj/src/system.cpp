#include "synchro/system.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace synchro {

System::System(std::vector<FiniteAutomaton> automata) : automata_(std::move(automata))
{
    if (automata_.empty()) throw Error("a system needs at least one automaton");
    for (const auto& a : automata_) {
        if (a.alphabet != automata_.front().alphabet) {
            throw Error("automaton " + a.name + " does not share the alphabet of " + automata_.front().name);
        }
        auto diagnostics = validate_automaton(a);
        for (const auto& d : diagnostics) {
            if (d.severity == Severity::error) throw Error(d.message);
        }
    }
}

std::string to_string(const GlobalState& g)
{
    std::string out = "(";
    for (std::size_t i = 0; i < g.components.size(); ++i) {
        if (i) out += ',';
        out += g.components[i];
    }
    return out + ")";
}

bool canonical_less(const GlobalTransition& lhs, const GlobalTransition& rhs)
{
    if (lhs.label != rhs.label) return lhs.label < rhs.label;
    bool lhs_stays = lhs.target == lhs.source;
    bool rhs_stays = rhs.target == rhs.source;
    if (lhs_stays != rhs_stays) return rhs_stays;
    if (lhs.target != rhs.target) return lhs.target < rhs.target;
    return lhs.source < rhs.source;
}

std::string to_string(const GlobalTransition& t)
{
    return to_string(t.source) + " --" + t.label.name() + "--> " + to_string(t.target);
}

std::set<std::size_t> sync_indices(const System& s, const Label& letter)
{
    if (letter.is_tau()) throw Error("J is defined only for letters of Sigma, not tau");
    std::set<std::size_t> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& delta = s[i].transitions;
        if (std::any_of(delta.begin(), delta.end(), [&](const Transition& t) { return t.label == letter; })) {
            out.insert(i);
        }
    }
    return out;
}

void check_global_state(const System& s, const GlobalState& g)
{
    if (g.components.size() != s.size()) {
        throw Error("global state " + to_string(g) + " has " + std::to_string(g.components.size()) +
                    " components, the system has " + std::to_string(s.size()));
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s[i].states.count(g.components[i])) {
            throw Error("global state " + to_string(g) + ": '" + g.components[i] +
                        "' is not a state of " + s[i].name);
        }
    }
}

std::vector<GlobalState> global_initials(const System& s)
{
    std::vector<GlobalState> out{GlobalState{}};
    for (const auto& a : s.automata()) {
        std::vector<GlobalState> next;
        for (const auto& prefix : out) {
            for (const auto& q : a.initials) {
                GlobalState g = prefix;
                g.components.push_back(q);
                next.push_back(std::move(g));
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

using StepKey = std::pair<Label, GlobalState>;

// Per-system data reused across calls on the same system within one product build.
struct SyncTable {
    std::vector<Label> letters;
    std::vector<std::set<std::size_t>> indices;

    explicit SyncTable(const System& s)
    {
        for (const auto& name : s.alphabet().letters()) {
            auto l = Label::letter(name);
            auto j = sync_indices(s, l);
            if (j.empty()) continue;
            letters.push_back(l);
            indices.push_back(std::move(j));
        }
    }
};

std::vector<GlobalTransition> enabled_with(const System& s, const SyncTable& table, const GlobalState& g)
{
    std::map<StepKey, std::set<std::size_t>> steps;

    for (std::size_t i = 0; i < s.size(); ++i) {
        for (const auto& q : successors(s[i], g.components[i], Label::tau())) {
            GlobalState target = g;
            target.components[i] = q;
            steps[{Label::tau(), std::move(target)}].insert(i);
        }
    }

    for (std::size_t k = 0; k < table.letters.size(); ++k) {
        const auto& letter = table.letters[k];
        const auto& movers = table.indices[k];
        std::vector<GlobalState> targets{g};
        for (auto i : movers) {
            auto next_states = successors(s[i], g.components[i], letter);
            std::vector<GlobalState> expanded;
            for (const auto& partial : targets) {
                for (const auto& q : next_states) {
                    GlobalState t = partial;
                    t.components[i] = q;
                    expanded.push_back(std::move(t));
                }
            }
            targets = std::move(expanded);
            if (targets.empty()) break;
        }
        for (auto& t : targets) steps[{letter, std::move(t)}] = movers;
    }

    std::vector<GlobalTransition> out;
    out.reserve(steps.size());
    for (auto& [key, movers] : steps) out.push_back({g, key.first, key.second, std::move(movers)});
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

} // namespace

std::vector<GlobalTransition> enabled_global_transitions(const System& s, const GlobalState& g)
{
    check_global_state(s, g);
    return enabled_with(s, SyncTable(s), g);
}

FiniteAutomaton build_product(const System& s, bool reachable_only)
{
    SyncTable table(s);
    FiniteAutomaton product;
    product.name = "product";
    product.alphabet = s.alphabet();

    std::vector<GlobalState> initials = global_initials(s);
    for (const auto& g : initials) product.initials.insert(to_string(g));

    auto expand = [&](const GlobalState& g, auto&& on_target) {
        for (const auto& t : enabled_with(s, table, g)) {
            product.add(to_string(t.source), t.label, to_string(t.target));
            on_target(t.target);
        }
    };

    if (reachable_only) {
        std::set<GlobalState> seen(initials.begin(), initials.end());
        std::deque<GlobalState> frontier(initials.begin(), initials.end());
        while (!frontier.empty()) {
            GlobalState g = std::move(frontier.front());
            frontier.pop_front();
            product.states.insert(to_string(g));
            expand(g, [&](const GlobalState& t) {
                if (seen.insert(t).second) frontier.push_back(t);
            });
        }
        return product;
    }

    std::vector<GlobalState> all{GlobalState{}};
    for (const auto& a : s.automata()) {
        std::vector<GlobalState> next;
        next.reserve(all.size() * a.states.size());
        for (const auto& prefix : all) {
            for (const auto& q : a.states) {
                GlobalState g = prefix;
                g.components.push_back(q);
                next.push_back(std::move(g));
            }
        }
        all = std::move(next);
    }
    for (const auto& g : all) {
        product.states.insert(to_string(g));
        expand(g, [](const GlobalState&) {});
    }
    return product;
}

} // namespace synchro
