#include "synchro/refinement.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace synchro {

bool label_leq(const Label& abstract, const Label& refined)
{
    return abstract.is_tau() || abstract == refined;
}

bool transition_leq(const Transition& abstract, const Transition& refined)
{
    return label_leq(abstract.label, refined.label);
}

namespace {

constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

struct IndexedTransition {
    std::size_t source;
    Label label;
    std::size_t target;
};

// Branch-and-bound over maps refined state -> abstract state, minimizing the
// number of unmatched refined transitions plus misplaced refined initials.
class PartitionSearch {
public:
    PartitionSearch(const FiniteAutomaton& abstract, const FiniteAutomaton& refined, bool relaxed)
        : abstract_states_(abstract.states.begin(), abstract.states.end()),
          refined_states_(refined.states.begin(), refined.states.end()), relaxed_(relaxed)
    {
        const std::size_t n = abstract_states_.size();
        const std::size_t m = refined_states_.size();
        abstract_tau_.assign(n * n, false);
        abstract_labels_.assign(n * n, {});
        for (const auto& t : abstract.transitions) {
            auto p = abstract_index(t.source);
            auto q = abstract_index(t.target);
            if (p == kUnassigned || q == kUnassigned) continue;
            if (t.label.is_tau()) {
                abstract_tau_[p * n + q] = true;
            } else {
                abstract_labels_[p * n + q].insert(t.label);
            }
        }
        for (std::size_t i = 0; i < n; ++i) abstract_initial_.push_back(abstract.initials.count(abstract_states_[i]) > 0);

        refined_initial_.assign(m, false);
        for (std::size_t i = 0; i < m; ++i) refined_initial_[i] = refined.initials.count(refined_states_[i]) > 0;
        for (const auto& t : refined.transitions) {
            auto p = refined_index(t.source);
            auto q = refined_index(t.target);
            if (p == kUnassigned || q == kUnassigned) continue;
            transitions_.push_back({p, t.label, q});
        }
        order_variables();
    }

    // Returns false when no admissible assignment exists at all (strict mode
    // with fewer refined than abstract states).
    bool run()
    {
        const std::size_t n = abstract_states_.size();
        const std::size_t m = refined_states_.size();
        if (n == 0 && m > 0) return false;
        if (!relaxed_ && m < n) return false;
        assignment_.assign(m, kUnassigned);
        block_sizes_.assign(n, 0);
        empty_blocks_ = n;
        search(0, 0);
        return best_cost_ != kUnassigned;
    }

    std::size_t best_cost() const { return best_cost_; }

    PartitionWitness witness() const
    {
        PartitionWitness w;
        for (const auto& q : abstract_states_) w.blocks[q];
        for (std::size_t i = 0; i < best_.size(); ++i) {
            w.blocks[abstract_states_[best_[i]]].insert(refined_states_[i]);
        }
        return w;
    }

    void explain(RefinementReport& report) const
    {
        for (const auto& t : transitions_) {
            if (!matched(best_[t.source], t.label, best_[t.target])) {
                Transition concrete{refined_states_[t.source], t.label, refined_states_[t.target]};
                report.unmatched_transitions.push_back(concrete);
                report.diagnostics.push_back("refined transition " + to_string(concrete) + " has no abstract match (" +
                                             abstract_states_[best_[t.source]] + " to " +
                                             abstract_states_[best_[t.target]] + " with tau or " + t.label.name() +
                                             ") in the closest partition");
            }
        }
        for (std::size_t i = 0; i < refined_states_.size(); ++i) {
            if (refined_initial_[i] && !abstract_initial_[best_[i]]) {
                report.unmatched_initials.push_back(refined_states_[i]);
                report.diagnostics.push_back("refined initial state '" + refined_states_[i] + "' falls in the block of '" +
                                             abstract_states_[best_[i]] +
                                             "', which is not initial, in the closest partition");
            }
        }
    }

private:
    std::size_t abstract_index(const State& q) const
    {
        auto it = std::lower_bound(abstract_states_.begin(), abstract_states_.end(), q);
        return it != abstract_states_.end() && *it == q ? std::size_t(it - abstract_states_.begin()) : kUnassigned;
    }

    std::size_t refined_index(const State& q) const
    {
        auto it = std::lower_bound(refined_states_.begin(), refined_states_.end(), q);
        return it != refined_states_.end() && *it == q ? std::size_t(it - refined_states_.begin()) : kUnassigned;
    }

    bool matched(std::size_t p, const Label& label, std::size_t q) const
    {
        const std::size_t n = abstract_states_.size();
        return abstract_tau_[p * n + q] || (!label.is_tau() && abstract_labels_[p * n + q].count(label));
    }

    // Initial states first, then breadth-first over the refined graph, so that
    // transitions become checkable as early as possible.
    void order_variables()
    {
        const std::size_t m = refined_states_.size();
        std::vector<std::vector<std::size_t>> neighbours(m);
        for (const auto& t : transitions_) {
            neighbours[t.source].push_back(t.target);
            neighbours[t.target].push_back(t.source);
        }
        std::vector<bool> placed(m, false);
        std::deque<std::size_t> frontier;
        auto place = [&](std::size_t i) {
            if (placed[i]) return;
            placed[i] = true;
            order_.push_back(i);
            frontier.push_back(i);
        };
        for (std::size_t i = 0; i < m; ++i) {
            if (refined_initial_[i]) place(i);
        }
        for (std::size_t root = 0; root <= m; ++root) {
            while (!frontier.empty()) {
                auto i = frontier.front();
                frontier.pop_front();
                auto next = neighbours[i];
                std::sort(next.begin(), next.end());
                for (auto j : next) place(j);
            }
            if (root < m) place(root);
        }

        std::vector<std::size_t> position(m);
        for (std::size_t k = 0; k < m; ++k) position[order_[k]] = k;
        checks_.assign(m, {});
        for (std::size_t k = 0; k < transitions_.size(); ++k) {
            const auto& t = transitions_[k];
            auto last = std::max(position[t.source], position[t.target]);
            checks_[order_[last]].push_back(k);
        }
    }

    std::size_t local_cost(std::size_t var) const
    {
        std::size_t cost = 0;
        if (refined_initial_[var] && !abstract_initial_[assignment_[var]]) ++cost;
        for (auto k : checks_[var]) {
            const auto& t = transitions_[k];
            if (!matched(assignment_[t.source], t.label, assignment_[t.target])) ++cost;
        }
        return cost;
    }

    void search(std::size_t depth, std::size_t cost)
    {
        if (cost >= best_cost_) return;
        const std::size_t m = refined_states_.size();
        if (!relaxed_ && empty_blocks_ > m - depth) return;
        if (depth == m) {
            best_cost_ = cost;
            best_ = assignment_;
            return;
        }
        const std::size_t var = order_[depth];
        const std::size_t n = abstract_states_.size();
        std::vector<std::size_t> values;
        values.reserve(n);
        for (std::size_t pass = 0; pass < 2; ++pass) {
            for (std::size_t v = n; v-- > 0;) {
                bool preferred = !refined_initial_[var] || abstract_initial_[v];
                if (preferred == (pass == 0)) values.push_back(v);
            }
        }
        for (auto v : values) {
            assignment_[var] = v;
            if (block_sizes_[v]++ == 0) --empty_blocks_;
            search(depth + 1, cost + local_cost(var));
            if (--block_sizes_[v] == 0) ++empty_blocks_;
            assignment_[var] = kUnassigned;
            if (best_cost_ == 0) return;
        }
    }

    std::vector<State> abstract_states_;
    std::vector<State> refined_states_;
    bool relaxed_;
    std::vector<bool> abstract_tau_;
    std::vector<std::set<Label>> abstract_labels_;
    std::vector<bool> abstract_initial_;
    std::vector<bool> refined_initial_;
    std::vector<IndexedTransition> transitions_;
    std::vector<std::size_t> order_;
    std::vector<std::vector<std::size_t>> checks_;

    std::vector<std::size_t> assignment_;
    std::vector<std::size_t> block_sizes_;
    std::size_t empty_blocks_ = 0;
    std::size_t best_cost_ = kUnassigned;
    std::vector<std::size_t> best_;
};

} // namespace

RefinementReport automaton_leq(const FiniteAutomaton& abstract, const FiniteAutomaton& refined,
                               const RefinementOptions& options)
{
    RefinementReport report;
    bool alphabet_ok = abstract.alphabet.subset_of(refined.alphabet);
    if (!alphabet_ok) {
        for (const auto& l : abstract.alphabet.letters()) {
            if (!refined.alphabet.contains_letter(l)) {
                report.diagnostics.push_back("letter '" + l + "' of " + abstract.name + " is missing from the alphabet of " +
                                             refined.name);
            }
        }
    }

    PartitionSearch search(abstract, refined, options.relaxed_partition);
    if (!search.run()) {
        report.diagnostics.push_back(refined.name + " has " + std::to_string(refined.states.size()) +
                                     " states, too few to give each of the " + std::to_string(abstract.states.size()) +
                                     " states of " + abstract.name + " a nonempty block");
        return report;
    }
    if (search.best_cost() == 0) {
        report.witness = search.witness();
        report.holds = alphabet_ok;
        return report;
    }
    search.explain(report);
    return report;
}

bool verify_witness(const FiniteAutomaton& abstract, const FiniteAutomaton& refined, const PartitionWitness& witness,
                    const RefinementOptions& options)
{
    std::map<State, State> block_of;
    bool well_formed = true;
    for (const auto& [q, block] : witness.blocks) {
        if (!abstract.states.count(q)) throw Error("witness block for unknown abstract state '" + q + "'");
        for (const auto& r : block) {
            if (!refined.states.count(r)) throw Error("witness places unknown refined state '" + r + "'");
            if (!block_of.emplace(r, q).second) well_formed = false;
        }
    }
    if (!well_formed) return false;
    if (block_of.size() != refined.states.size()) return false;
    if (!options.relaxed_partition) {
        for (const auto& q : abstract.states) {
            auto it = witness.blocks.find(q);
            if (it == witness.blocks.end() || it->second.empty()) return false;
        }
    }
    if (!abstract.alphabet.subset_of(refined.alphabet)) return false;

    for (const auto& t : refined.transitions) {
        const State& p = block_of.at(t.source);
        const State& q = block_of.at(t.target);
        bool found = std::any_of(abstract.transitions.begin(), abstract.transitions.end(), [&](const Transition& a) {
            return a.source == p && a.target == q && transition_leq(a, t);
        });
        if (!found) return false;
    }
    for (const auto& r : refined.initials) {
        if (!abstract.initials.count(block_of.at(r))) return false;
    }
    return true;
}

SystemRefinementReport system_leq(const System& abstract, const System& refined, const RefinementOptions& options)
{
    SystemRefinementReport out;
    bool holds = true;
    if (abstract.size() > refined.size()) {
        holds = false;
        out.diagnostics.push_back("the abstract system has " + std::to_string(abstract.size()) +
                                  " automata, the refined one only " + std::to_string(refined.size()));
    }
    for (std::size_t i = 0; i < abstract.size() && i < refined.size(); ++i) {
        ComponentReport c{abstract[i].name, refined[i].name, automaton_leq(abstract[i], refined[i], options)};
        if (!c.report.holds) {
            holds = false;
            for (const auto& d : c.report.diagnostics) {
                out.diagnostics.push_back("component " + std::to_string(i + 1) + " (" + c.abstract_name + " vs " +
                                          c.refined_name + "): " + d);
            }
        }
        out.components.push_back(std::move(c));
    }
    for (const auto& name : abstract.alphabet().letters()) {
        auto letter = Label::letter(name);
        auto mine = sync_indices(abstract, letter);
        auto theirs = sync_indices(refined, letter);
        if (!std::includes(theirs.begin(), theirs.end(), mine.begin(), mine.end())) {
            holds = false;
            std::string msg = "J_" + name + " = {";
            bool first = true;
            for (auto i : mine) {
                msg += (first ? "" : ",") + std::to_string(i + 1);
                first = false;
            }
            msg += "} is not included in the refined J_" + name + " = {";
            first = true;
            for (auto i : theirs) {
                msg += (first ? "" : ",") + std::to_string(i + 1);
                first = false;
            }
            msg += "}";
            out.sync_violations.push_back(msg);
            out.diagnostics.push_back(msg);
        }
    }
    out.holds = holds;
    return out;
}

} // namespace synchro
