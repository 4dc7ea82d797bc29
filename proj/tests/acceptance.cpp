// One line per acceptance criterion; exit status is the number of failures.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "support.hpp"
#include "synchro/io.hpp"
#include "synchro/language.hpp"
#include "synchro/refinement.hpp"
#include "synchro/simulate.hpp"

using namespace support;

namespace {

// Collects the first few failed expectations of one criterion.
struct Check {
    std::vector<std::string> failures;
    void expect(bool ok, const std::string& what)
    {
        if (!ok && failures.size() < 5) failures.push_back(what);
    }
};

FiniteAutomaton only_member(const ModelDocument& doc) { return build_system(doc)[0]; }

std::size_t count(const FiniteAutomaton& a, const Label& l, bool loops)
{
    std::size_t n = 0;
    for (const auto& t : a.transitions) n += (t.label == l && (t.source == t.target) == loops);
    return n;
}

void unfolding_letters(Check& c)
{
    auto a = unfold(corpus::examples::unfolding().compacts.at("A1"));
    c.expect(a.states.size() == 3, "3 states");
    c.expect(a.transitions.size() == 12, "12 transitions, got " + std::to_string(a.transitions.size()));
    c.expect(count(a, L("a"), false) == 6, "6 non-loop a-transitions");
    c.expect(count(a, L("a"), true) == 3, "3 a-loops");
    c.expect(count(a, L("b"), true) == 3, "3 b-loops");
    c.expect(count(a, L("b"), false) == 0, "no non-loop b-transition");
    c.expect(a.transitions == oracle_unfold(corpus::examples::unfolding().compacts.at("A1")), "oracle agreement");
}

void unfolding_graph(Check& c)
{
    auto a = unfold(corpus::examples::graph_transition().compacts.at("A2"));
    std::set<Transition> expected = {{"x0", L("a"), "x1"}, {"x0", L("b"), "x2"}, {"x1", L("b"), "x1"}};
    c.expect(a.transitions == expected, "exactly the three graph edges");
}

void rendezvous_semantics(Check& c)
{
    auto s = build_system(corpus::examples::rendezvous());
    GlobalState q1{{"q1", "p", "r"}};
    GlobalState q2{{"q2", "p", "r"}};
    auto has = [&](const GlobalState& g, const Label& l, const std::optional<GlobalState>& h) {
        for (const auto& t : enabled_global_transitions(s, g)) {
            if (t.label == l && (!h || t.target == *h)) return true;
        }
        return false;
    };
    c.expect(has(q1, L("a"), q2), "a enabled at (q1,p,r)");
    c.expect(!has(q2, L("a"), std::nullopt), "no a at (q2,p,r)");
    c.expect(has(q2, tau, q1), "tau to (q1,p,r) at (q2,p,r)");
    c.expect(step_licensed(s, q1, L("a"), q2) && !step_licensed(s, q2, L("a"), q2), "rule oracle agrees");
    auto traces = corpus::examples::rendezvous_traces();
    c.expect(traces.size() == 2 && traces[0].steps() == 5 && traces[1].steps() == 4, "two executions as printed");
    for (const auto& t : traces) c.expect(validate_trace(s, t).accepted, "execution validates");
}

void trace_replay(Check& c)
{
    for (int k = 3; k <= 6; ++k) {
        auto s = money_stage(k).system;
        auto states = all_global_states(s);
        auto labels = s.alphabet().labels();
        for (const auto& t : corpus::reference_traces(k)) {
            auto v = validate_trace(s, t);
            c.expect(v.accepted, "stage " + std::to_string(k) + " execution: " + v.message);
            std::size_t mutations = 0;
            for (std::size_t j = 1; j <= t.steps(); ++j) {
                const auto& before = t.states[j - 1];
                for (const auto& l : labels) {
                    if (l == t.labels[j - 1] || step_licensed(s, before, l, t.states[j])) continue;
                    Trace m = t;
                    m.labels[j - 1] = l;
                    auto mv = validate_trace(s, m);
                    ++mutations;
                    c.expect(!mv.accepted && mv.step == j, "stage " + std::to_string(k) + " wrong label at step " +
                                                                std::to_string(j) + " rejected there");
                }
                for (const auto& h : states) {
                    if (h == t.states[j] || step_licensed(s, before, t.labels[j - 1], h)) continue;
                    Trace m = t;
                    m.states[j] = h;
                    auto mv = validate_trace(s, m);
                    ++mutations;
                    c.expect(!mv.accepted && mv.step == j, "stage " + std::to_string(k) + " wrong target at step " +
                                                                std::to_string(j) + " rejected there");
                }
            }
            c.expect(mutations > t.steps(), "mutation set is not trivial");
        }
    }
}

void proved_pairs(Check& c)
{
    c.expect(system_leq(corpus::stage(1).system, corpus::stage(2).system).holds, "S1 <= S2");
    auto r = system_leq(corpus::stage(2).system, corpus::stage(3).system);
    c.expect(r.holds, "S2 <= S3");
    PartitionWitness expected{{{"non_awake", {"na"}}, {"appraisal", {"a"}}}};
    c.expect(!r.components.empty() && r.components[0].report.witness == expected, "witness non_awake->{na}, appraisal->{a}");
}

void partition_example(Check& c)
{
    auto abs = only_member(corpus::examples::refinement_abstract());
    auto ref = only_member(corpus::examples::refinement_refined());
    auto r = automaton_leq(abs, ref);
    PartitionWitness expected{{{"q1", {"p1", "p2"}}, {"q2", {"p3", "p4", "p5"}}}};
    c.expect(r.holds, "refinement holds");
    c.expect(r.witness == expected, "blocks {p1,p2} and {p3,p4,p5}");
    c.expect(verify_witness(abs, ref, r.witness), "verify_witness confirms");
}

void oracle_agreement(Check& c)
{
    for (int k = 1; k <= 6; ++k) {
        auto abs = money_stage(k).system;
        auto ref = money_stage(k + 1).system;
        auto r = system_leq(abs, ref);
        std::string pair = "S" + std::to_string(k) + " vs S" + std::to_string(k + 1);
        c.expect(r.holds == oracle_system_leq(abs, ref), pair + " verdict");
        if (!r.holds) {
            bool named = !r.sync_violations.empty();
            for (const auto& comp : r.components) named = named || !comp.report.unmatched_transitions.empty();
            c.expect(named, pair + " names an unmatched transition");
        }
    }
    auto all = corpus_automata();
    for (const auto& abs : all) {
        for (const auto& ref : all) {
            if (ref.states.size() > 8) continue;
            auto r = automaton_leq(abs, ref);
            c.expect(r.holds == oracle_leq(abs, ref), abs.name + " vs " + ref.name + " verdict");
            if (r.holds) c.expect(verify_witness(abs, ref, r.witness), abs.name + " vs " + ref.name + " witness");
        }
    }
}

void quasi_order(Check& c)
{
    auto all = corpus_automata();
    std::size_t n = all.size();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) leq[i][j] = automaton_leq(all[i], all[j]).holds;
    }
    for (std::size_t i = 0; i < n; ++i) c.expect(leq[i][i], all[i].name + " reflexive");
    std::size_t chains = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (!leq[i][j] || !leq[j][k]) continue;
                ++chains;
                c.expect(leq[i][k], all[i].name + " <= " + all[j].name + " <= " + all[k].name + " transitive");
            }
        }
    }
    c.expect(chains > n, "nontrivial chains sampled");
}

void product_exactness(Check& c)
{
    auto p3 = build_product(corpus::stage(3).system);
    c.expect(p3.states == std::set<State>{"(na,f)", "(a,f)"}, "A(S3) has two states");
    std::set<Transition> expected = {
        {"(na,f)", tau, "(a,f)"}, {"(na,f)", tau, "(na,f)"},       {"(a,f)", tau, "(na,f)"},
        {"(a,f)", tau, "(a,f)"},  {"(a,f)", L("s"), "(a,f)"},      {"(a,f)", L("nostress"), "(a,f)"},
    };
    c.expect(p3.transitions == expected, "A(S3) has the six listed transitions");
    c.expect(build_product(money_stage(7).system).states.size() == 120, "A(S7) has 120 states");
    for (int k = 1; k <= 7; ++k) {
        auto s = money_stage(k).system;
        auto product = build_product(s);
        std::set<Transition> from_enabled;
        std::set<Transition> from_rules;
        auto states = all_global_states(s);
        for (const auto& g : states) {
            for (const auto& t : enabled_global_transitions(s, g)) {
                from_enabled.insert({to_string(t.source), t.label, to_string(t.target)});
            }
            for (const auto& l : s.alphabet().labels()) {
                for (const auto& h : states) {
                    if (step_licensed(s, g, l, h)) from_rules.insert({to_string(g), l, to_string(h)});
                }
            }
        }
        c.expect(product.transitions == from_enabled, "stage " + std::to_string(k) + " product equals enabled steps");
        c.expect(from_enabled == from_rules, "stage " + std::to_string(k) + " enabled steps equal the rule oracle");
    }
}

// Words of length exactly n in `sub` but not in `sup`, from bounded enumerations.
std::optional<Word> first_missing(const WordSet& sub, const WordSet& sup)
{
    std::optional<Word> best;
    for (const auto& w : sub.words) {
        if (sup.words.count(w)) continue;
        if (!best || w.size() < best->size() || (w.size() == best->size() && w < *best)) best = w;
    }
    return best;
}

void language_coherence(Check& c)
{
    std::vector<std::pair<FiniteAutomaton, FiniteAutomaton>> pairs;
    auto all = corpus_automata();
    for (const auto& a : all) {
        for (const auto& b : all) pairs.emplace_back(a, b);
    }
    for (int k = 1; k <= 6; ++k) {
        auto abs = build_product(money_stage(k).system, true);
        auto ref = build_product(money_stage(k + 1).system, true);
        pairs.emplace_back(abs, project(ref, abs.alphabet));
        pairs.emplace_back(ref, abs);
    }
    const std::size_t bound = 6;
    std::map<std::string, WordSet> cache;
    auto words = [&](const FiniteAutomaton& a) {
        std::string key = serialize_document([&] {
            ModelDocument d;
            d.alphabet = a.alphabet;
            FiniteAutomaton named = a;
            named.name = "K";
            d.automata.emplace("K", named);
            d.system = {"K"};
            return d;
        }());
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, words_upto(a, bound)).first;
        return it->second;
    };
    std::size_t simulated = 0;
    for (const auto& [sup, sub] : pairs) {
        std::string name = sup.name + " vs " + sub.name;
        auto r = language_includes(sup, sub);
        auto missing = first_missing(words(sub), words(sup));
        if (r.holds) {
            c.expect(!missing, name + ": inclusion holds but a bounded word is missing");
        } else if (r.counterexample && r.counterexample->size() <= bound) {
            c.expect(missing && *missing == *r.counterexample, name + ": counterexample is the shortest, smallest word");
        } else {
            c.expect(r.counterexample.has_value() && !missing, name + ": long counterexample but a short word is missing");
        }
        if (simulates(sup, sub).holds) {
            ++simulated;
            c.expect(r.holds, name + ": simulation without inclusion");
        }
    }
    c.expect(simulated > 0, "some pair is in the simulation preorder");
}

void round_trip(Check& c)
{
    std::vector<std::string> texts;
    for (int k = 1; k <= 7; ++k) {
        auto doc = money_stage(k).document;
        std::ifstream in(corpus_dir() + "/stage" + std::to_string(k) + ".model");
        std::ostringstream buf;
        buf << in.rdbuf();
        texts.push_back(buf.str());
        c.expect(buf.str() == serialize_document(doc), "shipped stage " + std::to_string(k) + " equals the builder");
    }
    for (const auto& doc : {corpus::examples::rendezvous(), corpus::examples::unfolding(),
                            corpus::examples::graph_transition(), corpus::examples::refinement_abstract(),
                            corpus::examples::refinement_refined()}) {
        texts.push_back(serialize_document(doc));
    }
    for (const auto& text : texts) {
        auto r = parse_document(text);
        c.expect(r.ok(), "corpus text parses");
        if (!r.ok()) continue;
        auto again = serialize_document(*r.document);
        c.expect(again == text, "serialize is idempotent");
        auto r2 = parse_document(again);
        c.expect(r2.ok() && *r2.document == *r.document, "parse after serialize is the identity");
    }
    for (int k = 1; k <= 7; ++k) {
        auto s = money_stage(k).system;
        for (std::uint64_t seed : {1ULL, 77ULL, 123456789ULL}) {
            c.expect(simulate_random(s, seed, 60) == simulate_random(s, seed, 60), "identical traces per seed");
        }
    }
    std::mt19937_64 rng(20261018);
    const std::string symbols = "{}()[];:=*&|!.-> \n\tabxyz_09#";
    for (int round = 0; round < 4000; ++round) {
        std::string text = texts[rng() % texts.size()];
        if (round % 2) {
            for (int e = 0; e < 1 + static_cast<int>(rng() % 8) && !text.empty(); ++e) {
                std::size_t pos = rng() % text.size();
                if (rng() % 2) {
                    text.erase(pos, 1 + rng() % 16);
                } else {
                    text.insert(pos, 1, rng() % 4 ? symbols[rng() % symbols.size()] : static_cast<char>(rng() % 256));
                }
            }
        } else {
            text.clear();
            for (std::size_t i = 0, n = rng() % 256; i < n; ++i) text += static_cast<char>(rng() % 256);
        }
        try {
            auto r = parse_document(text);
            c.expect(r.ok() == r.errors.empty(), "parse result is either a document or errors");
        } catch (...) {
            c.expect(false, "parser threw on fuzz input");
        }
    }
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        void (*run)(Check&);
    };
    const Criterion criteria[] = {
        {"unfolding of letter guards: 3 states, 12 transitions", unfolding_letters},
        {"unfolding of an edge guard: exactly the graph edges", unfolding_graph},
        {"rendezvous example: enabled steps and both executions", rendezvous_semantics},
        {"case-study executions replay; single-step mutations rejected at their step", trace_replay},
        {"proved refinement pairs and their witness", proved_pairs},
        {"partition witness {p1,p2} / {p3,p4,p5} found and verified", partition_example},
        {"refinement verdicts equal the exhaustive partition oracle", oracle_agreement},
        {"refinement is reflexive and transitive on the corpus", quasi_order},
        {"product exactness", product_exactness},
        {"language inclusion, bounded words and simulation agree", language_coherence},
        {"round-trip, determinism and parser robustness", round_trip},
    };
    int failed = 0;
    int index = 0;
    for (const auto& criterion : criteria) {
        ++index;
        Check check;
        try {
            criterion.run(check);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        bool ok = check.failures.empty();
        failed += !ok;
        std::printf("[%s] %2d %s\n", ok ? "PASS" : "FAIL", index, criterion.name);
        for (const auto& f : check.failures) std::printf("       %s\n", f.c_str());
    }
    std::printf("%d of %d criteria passed\n", index - failed, index);
    return failed;
}
