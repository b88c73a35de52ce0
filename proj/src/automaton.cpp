#include "shiftkms/automaton.hpp"

#include <array>
#include <queue>
#include <string>

#include "shiftkms/errors.hpp"

namespace shiftkms {
namespace {

struct Table {
    int alphabet = 0;
    std::vector<std::int32_t> next;  // states x alphabet
    std::size_t start = 0;

    std::size_t states() const { return next.size() / static_cast<std::size_t>(alphabet); }
    std::int32_t& at(std::size_t s, int a) { return next[s * static_cast<std::size_t>(alphabet) + static_cast<std::size_t>(a)]; }
    std::int32_t at(std::size_t s, int a) const {
        return next[s * static_cast<std::size_t>(alphabet) + static_cast<std::size_t>(a)];
    }
};

// Keeps the states that are reachable from the start and have an infinite
// future. Unknown transitions count as live.
Table trim(const Table& in) {
    const std::size_t n = in.states();
    std::vector<bool> live(n, true);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < n; ++s) {
            if (!live[s]) continue;
            bool any = false;
            for (int a = 0; a < in.alphabet && !any; ++a) {
                const auto t = in.at(s, a);
                any = t == LanguageAutomaton::kUnknown || (t >= 0 && live[static_cast<std::size_t>(t)]);
            }
            if (!any) {
                live[s] = false;
                changed = true;
            }
        }
    }

    std::vector<bool> reachable(n, false);
    if (live[in.start]) {
        std::queue<std::size_t> queue;
        reachable[in.start] = true;
        queue.push(in.start);
        while (!queue.empty()) {
            const std::size_t s = queue.front();
            queue.pop();
            for (int a = 0; a < in.alphabet; ++a) {
                const auto t = in.at(s, a);
                if (t < 0) continue;
                const auto u = static_cast<std::size_t>(t);
                if (live[u] && !reachable[u]) {
                    reachable[u] = true;
                    queue.push(u);
                }
            }
        }
    } else {
        // Empty subshift: keep a lone start state that accepts nothing.
        Table empty{in.alphabet, std::vector<std::int32_t>(static_cast<std::size_t>(in.alphabet), LanguageAutomaton::kNone), 0};
        return empty;
    }

    std::vector<std::int32_t> index(n, -1);
    std::int32_t next_index = 0;
    // Start first, then the rest in original order.
    index[in.start] = next_index++;
    for (std::size_t s = 0; s < n; ++s)
        if (reachable[s] && s != in.start) index[s] = next_index++;

    Table out{in.alphabet, std::vector<std::int32_t>(static_cast<std::size_t>(next_index) * static_cast<std::size_t>(in.alphabet)), 0};
    for (std::size_t s = 0; s < n; ++s) {
        if (index[s] < 0) continue;
        for (int a = 0; a < in.alphabet; ++a) {
            const auto t = in.at(s, a);
            std::int32_t mapped = t;
            if (t >= 0) mapped = index[static_cast<std::size_t>(t)] >= 0 ? index[static_cast<std::size_t>(t)] : LanguageAutomaton::kNone;
            out.at(static_cast<std::size_t>(index[s]), a) = mapped;
        }
    }
    return out;
}

Table full_table(int d) {
    return Table{d, std::vector<std::int32_t>(static_cast<std::size_t>(d), 0), 0};
}

Table sft_table(const ZeroOneMatrix& m) {
    const int d = static_cast<int>(m.dim());
    Table t{d, std::vector<std::int32_t>(static_cast<std::size_t>(d + 1) * static_cast<std::size_t>(d), LanguageAutomaton::kNone), 0};
    for (int a = 0; a < d; ++a) t.at(0, a) = a + 1;
    for (int s = 0; s < d; ++s)
        for (int a = 0; a < d; ++a)
            if (m(static_cast<std::size_t>(s), static_cast<std::size_t>(a))) t.at(static_cast<std::size_t>(s + 1), a) = a + 1;
    return t;
}

Table aho_corasick_table(const ForbiddenShift& f) {
    const int d = f.alphabet;
    std::vector<std::vector<std::int32_t>> child(1, std::vector<std::int32_t>(static_cast<std::size_t>(d), -1));
    std::vector<bool> terminal(1, false);
    for (const Word& w : f.words) {
        std::size_t node = 0;
        for (Symbol s : w) {
            auto& slot = child[node][static_cast<std::size_t>(s - 1)];
            if (slot < 0) {
                slot = static_cast<std::int32_t>(child.size());
                child.emplace_back(static_cast<std::size_t>(d), -1);
                terminal.push_back(false);
            }
            node = static_cast<std::size_t>(slot);
        }
        terminal[node] = true;
    }

    const std::size_t n = child.size();
    std::vector<std::size_t> fail(n, 0);
    Table t{d, std::vector<std::int32_t>(n * static_cast<std::size_t>(d)), 0};
    std::queue<std::size_t> queue;
    for (int a = 0; a < d; ++a) {
        const auto c = child[0][static_cast<std::size_t>(a)];
        if (c >= 0) {
            fail[static_cast<std::size_t>(c)] = 0;
            queue.push(static_cast<std::size_t>(c));
            t.at(0, a) = c;
        } else {
            t.at(0, a) = 0;
        }
    }
    while (!queue.empty()) {
        const std::size_t node = queue.front();
        queue.pop();
        if (terminal[fail[node]]) terminal[node] = true;
        for (int a = 0; a < d; ++a) {
            const auto c = child[node][static_cast<std::size_t>(a)];
            if (c >= 0) {
                fail[static_cast<std::size_t>(c)] = static_cast<std::size_t>(t.at(fail[node], a));
                queue.push(static_cast<std::size_t>(c));
                t.at(node, a) = c;
            } else {
                t.at(node, a) = t.at(fail[node], a);
            }
        }
    }
    for (std::size_t s = 0; s < n; ++s)
        for (int a = 0; a < d; ++a) {
            auto& target = t.at(s, a);
            if (terminal[static_cast<std::size_t>(target)]) target = LanguageAutomaton::kNone;
        }
    // Terminal nodes themselves are never entered any more; trim drops them.
    for (std::size_t s = 0; s < n; ++s)
        if (terminal[s])
            for (int a = 0; a < d; ++a) t.at(s, a) = LanguageAutomaton::kNone;
    return t;
}

Table beta_table(const BetaShift& b, int alphabet, std::size_t horizon) {
    const BetaExpansion& e = b.expansion;
    const bool periodic = e.periodic();
    if (!periodic && e.known.size() < horizon) {
        throw InsufficientDigits("beta-shift: words of length " + std::to_string(horizon) + " need " +
                                 std::to_string(horizon) + " digits of the expansion of 1, only " +
                                 std::to_string(e.known.size()) + " computed; increase digit_depth");
    }
    const std::size_t n = periodic ? e.preperiod + e.period : horizon + 1;
    Table t{alphabet, std::vector<std::int32_t>(n * static_cast<std::size_t>(alphabet), LanguageAutomaton::kNone), 0};
    for (std::size_t k = 0; k < n; ++k) {
        if (!periodic && k >= horizon) {
            for (int a = 0; a < alphabet; ++a) t.at(k, a) = LanguageAutomaton::kUnknown;
            continue;
        }
        const int bound = e.digit(k + 1);
        std::size_t advance = k + 1;
        if (periodic && advance == n) advance -= e.period;
        for (int digit = 0; digit < alphabet; ++digit) {
            if (digit < bound) t.at(k, digit) = 0;
            else if (digit == bound) t.at(k, digit) = static_cast<std::int32_t>(advance);
        }
    }
    return t;
}

}  // namespace

LanguageAutomaton LanguageAutomaton::build(const SubshiftSpec& spec, std::size_t horizon) {
    Table table;
    bool finite = true;
    if (const auto* f = spec.as<FullShift>()) {
        table = full_table(f->alphabet);
    } else if (const auto* s = spec.as<SftShift>()) {
        table = sft_table(s->matrix);
    } else if (const auto* f = spec.as<ForbiddenShift>()) {
        table = aho_corasick_table(*f);
    } else if (const auto* b = spec.as<BetaShift>()) {
        table = beta_table(*b, spec.alphabet_size(), horizon);
        finite = b->expansion.periodic();
    }
    Table trimmed = trim(table);
    return LanguageAutomaton(trimmed.alphabet, std::move(trimmed.next), trimmed.start, finite);
}

std::int32_t LanguageAutomaton::run(std::size_t state, const Word& w) const {
    auto current = static_cast<std::int32_t>(state);
    for (Symbol s : w) {
        current = transition(static_cast<std::size_t>(current), s);
        if (current == kUnknown) throw InsufficientDigits("automaton: word runs past the computed horizon");
        if (current == kNone) return kNone;
    }
    return current;
}

std::vector<BigInt> LanguageAutomaton::count_paths(int n_max) const {
    const std::size_t n = state_count();
    std::vector<BigInt> theta;
    theta.reserve(static_cast<std::size_t>(n_max) + 1);
    std::vector<BigInt> counts(n), next(n);
    counts[start_] = 1;
    theta.push_back(1);
    for (int step = 1; step <= n_max; ++step) {
        for (auto& c : next) c = 0;
        for (std::size_t s = 0; s < n; ++s) {
            if (counts[s] == 0) continue;
            for (int a = 1; a <= alphabet_; ++a) {
                const auto t = transition(s, a);
                if (t == kNone) continue;
                if (t == kUnknown) {
                    throw InsufficientDigits("automaton: counting words of length " + std::to_string(step) +
                                             " runs past the computed horizon");
                }
                next[static_cast<std::size_t>(t)] += counts[s];
            }
        }
        counts.swap(next);
        BigInt total = 0;
        for (const auto& c : counts) total += c;
        theta.push_back(std::move(total));
    }
    return theta;
}

}  // namespace shiftkms
