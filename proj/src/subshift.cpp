#include "shiftkms/subshift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "shiftkms/automaton.hpp"
#include "shiftkms/errors.hpp"

namespace shiftkms {

namespace detail {

// Every avoiding word of length <= M-1 (M = longest forbidden word) is a
// context; a context is live when it has an infinite avoiding continuation.
// Contexts of length L are indexed offset[L] + base-d value.
struct ContextGraph {
    int alphabet = 0;
    std::size_t memory = 0;  // M - 1
    std::vector<std::size_t> offset;
    std::vector<bool> live;

    std::size_t index_of(const Word& w, std::size_t begin, std::size_t length) const {
        std::size_t value = 0;
        for (std::size_t i = 0; i < length; ++i) value = value * static_cast<std::size_t>(alphabet) + static_cast<std::size_t>(w[begin + i] - 1);
        return offset[length] + value;
    }
};

}  // namespace detail

namespace {

constexpr std::size_t kMaxContexts = std::size_t{1} << 22;

bool ends_with(const Word& w, std::size_t end, const Word& suffix) {
    if (suffix.size() > end) return false;
    return std::equal(suffix.begin(), suffix.end(), w.begin() + static_cast<std::ptrdiff_t>(end - suffix.size()));
}

bool has_forbidden_suffix(const Word& w, std::size_t end, const std::vector<Word>& words) {
    return std::any_of(words.begin(), words.end(), [&](const Word& f) { return ends_with(w, end, f); });
}

std::shared_ptr<const detail::ContextGraph> build_context_graph(const ForbiddenShift& f) {
    auto graph = std::make_shared<detail::ContextGraph>();
    const auto d = static_cast<std::size_t>(f.alphabet);
    std::size_t longest = 0;
    for (const auto& w : f.words) longest = std::max(longest, w.size());
    graph->alphabet = f.alphabet;
    graph->memory = longest == 0 ? 0 : longest - 1;

    std::size_t total = 0;
    std::size_t level = 1;
    for (std::size_t len = 0; len <= graph->memory; ++len) {
        graph->offset.push_back(total);
        total += level;
        if (total > kMaxContexts) {
            throw InvalidInput("forbidden: words of length " + std::to_string(longest) + " over " +
                               std::to_string(d) + " symbols are too long for direct admissibility checks");
        }
        level *= d;
    }
    graph->offset.push_back(total);

    // Decode each index back into a word to build its successor list.
    std::vector<bool> avoiding(total, false);
    std::vector<std::vector<std::size_t>> successors(total);
    Word w;
    for (std::size_t len = 0; len <= graph->memory; ++len) {
        const std::size_t count = graph->offset[len + 1] - graph->offset[len];
        for (std::size_t value = 0; value < count; ++value) {
            w.assign(len, 1);
            std::size_t rest = value;
            for (std::size_t i = len; i-- > 0;) {
                w[i] = static_cast<Symbol>(rest % d) + 1;
                rest /= d;
            }
            bool ok = true;
            for (std::size_t end = 1; end <= len && ok; ++end) ok = !has_forbidden_suffix(w, end, f.words);
            const std::size_t node = graph->offset[len] + value;
            avoiding[node] = ok;
            if (!ok) continue;
            w.push_back(1);
            for (std::size_t a = 0; a < d; ++a) {
                w.back() = static_cast<Symbol>(a) + 1;
                if (has_forbidden_suffix(w, w.size(), f.words)) continue;
                const std::size_t keep = std::min(w.size(), graph->memory);
                successors[node].push_back(graph->index_of(w, w.size() - keep, keep));
            }
            w.pop_back();
        }
    }

    graph->live = avoiding;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t node = 0; node < total; ++node) {
            if (!graph->live[node]) continue;
            const bool any = std::any_of(successors[node].begin(), successors[node].end(),
                                         [&](std::size_t t) { return graph->live[t]; });
            if (!any) {
                graph->live[node] = false;
                changed = true;
            }
        }
    }
    return graph;
}

bool beta_admissible(const Word& w, const BetaShift& b) {
    // Every suffix, read as digits, must be lexicographically <= the prefix of
    // the quasi-greedy expansion of 1 with the same length.
    const BetaExpansion& e = b.expansion;
    if (!e.periodic() && e.known.size() < w.size()) {
        throw InsufficientDigits("beta-shift: admissibility of a word of length " + std::to_string(w.size()) +
                                 " needs that many digits of the expansion of 1; increase digit_depth");
    }
    for (std::size_t start = 0; start < w.size(); ++start) {
        for (std::size_t i = start; i < w.size(); ++i) {
            const int digit = w[i] - 1;
            const int bound = e.digit(i - start + 1);
            if (digit < bound) break;
            if (digit > bound) return false;
        }
    }
    return true;
}

}  // namespace

SubshiftSpec::SubshiftSpec(Kind kind, int alphabet) : kind_(std::move(kind)), alphabet_(alphabet) {}

SubshiftSpec SubshiftSpec::full(int alphabet) {
    if (alphabet < 1) throw InvalidInput("alphabet: must be >= 1");
    return SubshiftSpec(FullShift{alphabet}, alphabet);
}

SubshiftSpec SubshiftSpec::sft(ZeroOneMatrix matrix) {
    matrix.require_cuntz_krieger();
    const int d = static_cast<int>(matrix.dim());
    return SubshiftSpec(SftShift{std::move(matrix)}, d);
}

SubshiftSpec SubshiftSpec::forbidden(int alphabet, std::vector<Word> words, std::optional<int> length_cap) {
    if (alphabet < 1) throw InvalidInput("alphabet: must be >= 1");
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].empty()) throw InvalidInput("words: entry " + std::to_string(i + 1) + " is empty");
        validate_word(words[i], alphabet);
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    ForbiddenShift shift{alphabet, std::move(words), length_cap};
    auto graph = build_context_graph(shift);
    SubshiftSpec spec(std::move(shift), alphabet);
    spec.context_graph_ = std::move(graph);
    return spec;
}

SubshiftSpec SubshiftSpec::beta(double beta, int digit_depth, const BetaExpansionOptions& opts) {
    BetaExpansion expansion = beta_expansion_of_one(beta, digit_depth, opts);
    const int alphabet = static_cast<int>(std::ceil(beta));
    return SubshiftSpec(BetaShift{beta, digit_depth, std::move(expansion)}, alphabet);
}

SubshiftSpec SubshiftSpec::even_shift(int length_cap) {
    if (length_cap < 3) throw InvalidInput("length_cap: the even shift needs length_cap >= 3");
    std::vector<Word> words;
    for (int ones = 1; ones + 2 <= length_cap; ones += 2) {
        Word w(static_cast<std::size_t>(ones) + 2, 1);
        w.front() = 2;
        w.back() = 2;
        words.push_back(std::move(w));
    }
    return forbidden(2, std::move(words), length_cap);
}

std::string SubshiftSpec::kind_name() const {
    switch (kind_.index()) {
        case 0: return "full";
        case 1: return "sft";
        case 2: return "forbidden";
        default: return "beta";
    }
}

void validate_word(const Word& w, int alphabet) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] < 1 || w[i] > alphabet) {
            throw InvalidInput("word: symbol " + std::to_string(w[i]) + " at position " + std::to_string(i + 1) +
                               " is outside {1,...," + std::to_string(alphabet) + "}");
        }
    }
}

bool admissible(const Word& w, const SubshiftSpec& spec) {
    validate_word(w, spec.alphabet_size());
    if (spec.as<FullShift>()) return true;
    if (const auto* s = spec.as<SftShift>()) {
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (!s->matrix(static_cast<std::size_t>(w[i] - 1), static_cast<std::size_t>(w[i + 1] - 1))) return false;
        return true;
    }
    if (const auto* f = spec.as<ForbiddenShift>()) {
        for (std::size_t end = 1; end <= w.size(); ++end)
            if (has_forbidden_suffix(w, end, f->words)) return false;
        const auto& graph = *spec.context_graph();
        const std::size_t keep = std::min(w.size(), graph.memory);
        return graph.live[graph.index_of(w, w.size() - keep, keep)];
    }
    return beta_admissible(w, *spec.as<BetaShift>());
}

BigInt count_words(const SubshiftSpec& spec, int n) {
    if (n < 0) throw InvalidInput("count_words: n must be >= 0");
    if (n == 0) return 1;
    const auto automaton = LanguageAutomaton::build(spec, static_cast<std::size_t>(n));
    return automaton.count_paths(n).back();
}

double log_big(const BigInt& x) {
    if (x <= 0) return -std::numeric_limits<double>::infinity();
    if (boost::multiprecision::msb(x) < 1000) return std::log(x.convert_to<double>());
    return boost::multiprecision::log(boost::multiprecision::cpp_bin_float_double_extended(x)).convert_to<double>();
}

EntropyEstimate topological_entropy(const SubshiftSpec& spec, int n_max) {
    if (n_max < 2) throw InvalidInput("topological_entropy: n_max must be >= 2");
    const auto automaton = LanguageAutomaton::build(spec, static_cast<std::size_t>(n_max));
    std::vector<BigInt> counts = automaton.count_paths(n_max);
    if (counts[1] == 0) throw InvalidInput("topological_entropy: the subshift is empty");

    EntropyEstimate out;
    out.theta.assign(counts.begin() + 1, counts.end());
    out.fekete_bound = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= n_max; ++n) {
        const double rate = log_big(out.theta[static_cast<std::size_t>(n - 1)]) / n;
        out.log_rates.push_back(rate);
        out.fekete_bound = std::min(out.fekete_bound, rate);
    }
    // theta_n ~ c h^n with c >= 1, so (1/n) log theta_n overshoots by log(c)/n.
    // The half-window difference quotient cancels c; the Fekete infimum stays a
    // rigorous cap.
    const int half = (n_max + 1) / 2;
    const double quotient =
        (log_big(out.theta[static_cast<std::size_t>(n_max - 1)]) - log_big(out.theta[static_cast<std::size_t>(half - 1)])) /
        static_cast<double>(n_max - half);
    out.extrapolated = std::min(out.fekete_bound, quotient);
    out.method = "difference-quotient(n/2..n) capped by fekete-infimum";

    if (const auto* f = spec.as<FullShift>()) out.exact = std::log(static_cast<double>(f->alphabet));
    if (const auto* s = spec.as<SftShift>()) out.exact = sft_entropy_exact(s->matrix);
    return out;
}

double sft_entropy_exact(const ZeroOneMatrix& a, const PowerOptions& opts) {
    a.require_cuntz_krieger();
    return std::log(spectral_radius(a, opts));
}

}  // namespace shiftkms
