#include "shiftkms/krieger.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "shiftkms/automaton.hpp"
#include "shiftkms/errors.hpp"

namespace shiftkms {
namespace {

using StateSet = std::vector<std::uint64_t>;

StateSet empty_set(std::size_t n) { return StateSet((n + 63) / 64, 0); }
bool test(const StateSet& s, std::size_t i) { return (s[i / 64] >> (i % 64)) & 1U; }
void set_bit(StateSet& s, std::size_t i) { s[i / 64] |= std::uint64_t{1} << (i % 64); }
bool is_empty(const StateSet& s) {
    return std::all_of(s.begin(), s.end(), [](std::uint64_t x) { return x == 0; });
}

// States reachable from the start in at most l steps.
std::vector<std::size_t> reachable_within(const LanguageAutomaton& automaton, int l) {
    const std::size_t n = automaton.state_count();
    std::vector<int> dist(n, -1);
    std::queue<std::size_t> queue;
    dist[automaton.start()] = 0;
    queue.push(automaton.start());
    while (!queue.empty()) {
        const std::size_t s = queue.front();
        queue.pop();
        if (dist[s] == l) continue;
        for (Symbol a = 1; a <= automaton.alphabet(); ++a) {
            const auto t = automaton.transition(s, a);
            if (t < 0 || dist[static_cast<std::size_t>(t)] >= 0) continue;
            dist[static_cast<std::size_t>(t)] = dist[s] + 1;
            queue.push(static_cast<std::size_t>(t));
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < n; ++s)
        if (dist[s] >= 0) out.push_back(s);
    return out;
}

// Class counts at depth-1 and depth. For a word w, G(w) is the set of states
// that can read w; G(a w) = { q : delta(q, a) in G(w) }. The class of an
// admissible w (start in G(w)) is G(w) restricted to the states reachable in
// <= l steps, which is in bijection with its predecessor set.
std::pair<std::size_t, std::size_t> count_classes(const LanguageAutomaton& automaton, int l, int depth) {
    const std::size_t n = automaton.state_count();
    const auto past_states = reachable_within(automaton, l);

    auto count_keys = [&](const std::set<StateSet>& sets) {
        std::set<StateSet> keys;
        for (const auto& g : sets) {
            if (!test(g, automaton.start())) continue;
            StateSet key = empty_set(past_states.size());
            for (std::size_t i = 0; i < past_states.size(); ++i)
                if (test(g, past_states[i])) set_bit(key, i);
            keys.insert(std::move(key));
        }
        return keys.size();
    };

    std::set<StateSet> level;
    StateSet all = empty_set(n);
    for (std::size_t s = 0; s < n; ++s) set_bit(all, s);
    level.insert(all);

    std::size_t previous = count_keys(level);
    for (int k = 1; k <= depth; ++k) {
        if (k == depth) previous = count_keys(level);
        std::set<StateSet> next;
        for (const auto& g : level) {
            for (Symbol a = 1; a <= automaton.alphabet(); ++a) {
                StateSet pre = empty_set(n);
                for (std::size_t q = 0; q < n; ++q) {
                    const auto t = automaton.transition(q, a);
                    if (t >= 0 && test(g, static_cast<std::size_t>(t))) set_bit(pre, q);
                }
                if (!is_empty(pre)) next.insert(std::move(pre));
            }
        }
        level.swap(next);
    }
    return {previous, count_keys(level)};
}

void require_depth(int l, int depth) {
    if (l < 0) throw InvalidInput("past depth l must be >= 0");
    if (depth < std::max(l, 1)) {
        throw InvalidInput("proxy depth " + std::to_string(depth) + " must be >= max(l, 1) = " +
                           std::to_string(std::max(l, 1)));
    }
}

// Admissible words of length <= l with the automaton state they end in, in
// shortlex order.
std::vector<std::pair<Word, std::size_t>> words_up_to(const LanguageAutomaton& automaton, int l) {
    std::vector<std::pair<Word, std::size_t>> out{{Word{}, automaton.start()}};
    std::size_t level_begin = 0;
    for (int len = 1; len <= l; ++len) {
        const std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (Symbol a = 1; a <= automaton.alphabet(); ++a) {
                const auto t = automaton.transition(out[i].second, a);
                if (t == LanguageAutomaton::kUnknown) throw InsufficientDigits("predecessor enumeration ran past the horizon");
                if (t < 0) continue;
                Word w = out[i].first;
                w.push_back(a);
                out.emplace_back(std::move(w), static_cast<std::size_t>(t));
            }
        }
        level_begin = level_end;
    }
    return out;
}

}  // namespace

std::vector<Word> predecessor_set(const Word& w, int l, const SubshiftSpec& spec) {
    if (l < 0) throw InvalidInput("predecessor_set: l must be >= 0");
    if (w.empty()) throw InvalidInput("predecessor_set: w must be nonempty");
    if (!admissible(w, spec)) throw InvalidInput("predecessor_set: w is not admissible");
    const auto automaton = LanguageAutomaton::build(spec, static_cast<std::size_t>(l) + w.size());
    std::vector<Word> out;
    for (auto& [mu, state] : words_up_to(automaton, l))
        if (automaton.run(state, w) != LanguageAutomaton::kNone) out.push_back(std::move(mu));
    return out;
}

PastPartition omega_l(const SubshiftSpec& spec, int l, int depth) {
    require_depth(l, depth);
    const auto automaton = LanguageAutomaton::build(spec, static_cast<std::size_t>(l + depth));
    const auto past = words_up_to(automaton, l);
    std::vector<std::size_t> past_states;
    for (const auto& [mu, state] : past) past_states.push_back(state);
    std::sort(past_states.begin(), past_states.end());
    past_states.erase(std::unique(past_states.begin(), past_states.end()), past_states.end());

    PastPartition out;
    out.l = l;
    out.depth = depth;
    std::map<std::vector<bool>, std::size_t> class_of;
    std::vector<std::vector<bool>> keys;

    // Depth-first over admissible words of length `depth` in lexicographic order.
    Word w;
    std::vector<std::size_t> states{automaton.start()};
    std::vector<Symbol> next_symbol{1};
    while (!states.empty()) {
        if (w.size() == static_cast<std::size_t>(depth)) {
            std::vector<bool> key(past_states.size());
            for (std::size_t i = 0; i < past_states.size(); ++i)
                key[i] = automaton.run(past_states[i], w) != LanguageAutomaton::kNone;
            auto [it, inserted] = class_of.emplace(key, out.classes.size());
            if (inserted) {
                out.classes.emplace_back();
                keys.push_back(std::move(key));
            }
            out.classes[it->second].push_back(w);
            states.pop_back();
            next_symbol.pop_back();
            if (!w.empty()) w.pop_back();
            continue;
        }
        Symbol& a = next_symbol.back();
        if (a > automaton.alphabet()) {
            states.pop_back();
            next_symbol.pop_back();
            if (!w.empty()) w.pop_back();
            continue;
        }
        const auto t = automaton.transition(states.back(), a);
        const Symbol chosen = a++;
        if (t == LanguageAutomaton::kUnknown) throw InsufficientDigits("omega_l: enumeration ran past the horizon");
        if (t < 0) continue;
        w.push_back(chosen);
        states.push_back(static_cast<std::size_t>(t));
        next_symbol.push_back(1);
    }
    if (out.classes.empty()) {
        throw InvalidInput("omega_l: no admissible words of length " + std::to_string(depth));
    }

    for (const auto& key : keys) {
        std::vector<Word> preds;
        for (const auto& [mu, state] : past) {
            const auto pos = std::lower_bound(past_states.begin(), past_states.end(), state) - past_states.begin();
            if (key[static_cast<std::size_t>(pos)]) preds.push_back(mu);
        }
        out.predecessor_sets.push_back(std::move(preds));
    }
    out.class_count = out.classes.size();
    out.previous_class_count = count_classes(automaton, l, depth).first;
    out.stabilized = out.previous_class_count == out.class_count;
    return out;
}

DimQ dim_q(const SubshiftSpec& spec, int n, int depth) {
    require_depth(n, depth);
    const auto automaton = LanguageAutomaton::build(spec, static_cast<std::size_t>(n + depth));
    const auto [previous, current] = count_classes(automaton, n, depth);
    if (current == 0) throw InvalidInput("dim_q: no admissible words of length " + std::to_string(depth));
    return DimQ{current, previous, previous == current, depth};
}

namespace {

bool constant_stabilized_tail(const SoficReport& r) {
    if (r.counts.size() < r.window) return false;
    const std::size_t begin = r.counts.size() - r.window;
    for (std::size_t i = begin; i < r.counts.size(); ++i)
        if (r.counts[i] != r.counts[begin] || !r.stabilized[i]) return false;
    return true;
}

SoficReport class_counts(const SubshiftSpec& spec, int l_max, int depth) {
    SoficReport out;
    for (int l = 1; l <= l_max; ++l) {
        const int m = std::max(depth, l);
        const DimQ q = dim_q(spec, l, m);
        out.counts.push_back(q.value);
        out.stabilized.push_back(q.stabilized);
        out.depths.push_back(m);
    }
    out.sofic_detected = constant_stabilized_tail(out);
    return out;
}

}  // namespace

SoficReport sofic_check(const SubshiftSpec& spec, int l_max, int depth) {
    if (l_max < 2) throw InvalidInput("sofic_check: l_max must be >= 2");
    return class_counts(spec, l_max, depth);
}

EntropyBracket entropy_bracket(const SubshiftSpec& spec, int n_max, int depth) {
    if (n_max < 4) throw InvalidInput("entropy_bracket: n_max must be >= 4");
    EntropyBracket out;
    out.lower = topological_entropy(spec, n_max).extrapolated;
    const SoficReport counts = class_counts(spec, n_max, depth);
    for (int n = 1; n <= n_max; ++n) {
        const double dim = static_cast<double>(counts.counts[static_cast<std::size_t>(n - 1)]);
        out.correction_sequence.push_back(2.0 * std::log(dim) / n);
    }
    out.sofic_detected = counts.sofic_detected;
    out.trailing_window = std::max<std::size_t>(3, static_cast<std::size_t>(n_max) / 4);
    if (out.sofic_detected) {
        out.correction = 0.0;
    } else {
        out.correction = *std::min_element(out.correction_sequence.end() - static_cast<std::ptrdiff_t>(out.trailing_window),
                                           out.correction_sequence.end());
    }
    out.upper = out.lower + out.correction;
    return out;
}

}  // namespace shiftkms
