#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shiftkms/beta_expansion.hpp"
#include "shiftkms/matrix.hpp"
#include "shiftkms/spectral.hpp"

namespace shiftkms {

// Symbols are 1-based: the alphabet of a d-symbol subshift is {1, ..., d}.
using Symbol = int;
using Word = std::vector<Symbol>;

struct FullShift {
    int alphabet = 0;
};

struct SftShift {
    ZeroOneMatrix matrix;
};

struct ForbiddenShift {
    int alphabet = 0;
    std::vector<Word> words;
    // Set when the list is a finite truncation of an infinite forbidden family
    // (e.g. the even shift); carried into reports.
    std::optional<int> length_cap;
};

// beta-shift on digits {0, ..., ceil(beta) - 1}, stored as symbols digit + 1.
struct BetaShift {
    double beta = 0.0;
    int digit_depth = 0;
    BetaExpansion expansion;
};

namespace detail {
struct ContextGraph;
}

// One-sided subshift given by one of four presentations. Immutable once built.
class SubshiftSpec {
public:
    using Kind = std::variant<FullShift, SftShift, ForbiddenShift, BetaShift>;

    static SubshiftSpec full(int alphabet);
    // Throws InvalidInput on a zero row or zero column.
    static SubshiftSpec sft(ZeroOneMatrix matrix);
    // Throws InvalidInput on empty words, symbols out of range or an empty list
    // of words for an empty alphabet.
    static SubshiftSpec forbidden(int alphabet, std::vector<Word> words, std::optional<int> length_cap = {});
    static SubshiftSpec beta(double beta, int digit_depth, const BetaExpansionOptions& opts = {});

    // Even shift (blocks 2 1^{odd} 2 forbidden, symbol 1 playing the role of 0)
    // truncated to forbidden words of length <= length_cap.
    static SubshiftSpec even_shift(int length_cap);

    const Kind& kind() const noexcept { return kind_; }
    int alphabet_size() const noexcept { return alphabet_; }
    std::string kind_name() const;

    template <class T>
    const T* as() const noexcept {
        return std::get_if<T>(&kind_);
    }

    // Liveness table over contexts of a forbidden presentation (null otherwise).
    const detail::ContextGraph* context_graph() const noexcept { return context_graph_.get(); }

private:
    SubshiftSpec(Kind kind, int alphabet);

    Kind kind_;
    int alphabet_ = 0;
    std::shared_ptr<const detail::ContextGraph> context_graph_;
};

// Throws InvalidInput if a symbol lies outside {1, ..., alphabet}.
void validate_word(const Word& w, int alphabet);

// Membership of w in the language, checked directly from the presentation:
// consecutive pairs for an SFT, forbidden factors plus right-extendability for
// a forbidden list, Parry's suffix comparison against the quasi-greedy
// expansion of 1 for a beta-shift.
bool admissible(const Word& w, const SubshiftSpec& spec);

// theta_n, exactly. theta_0 = 1.
BigInt count_words(const SubshiftSpec& spec, int n);

struct EntropyEstimate {
    std::vector<BigInt> theta;       // theta_1 .. theta_{n_max}
    std::vector<double> log_rates;   // (1/n) log theta_n
    double fekete_bound = 0.0;       // min_n log_rates, an upper bound for h_top
    double extrapolated = 0.0;
    std::optional<double> exact;     // log r(A) for SFT, log d for the full shift
    std::string method;
};

// Throws InvalidInput for n_max < 2 or an empty subshift.
EntropyEstimate topological_entropy(const SubshiftSpec& spec, int n_max);

double sft_entropy_exact(const ZeroOneMatrix& a, const PowerOptions& opts = {});

// Natural log of a nonnegative big integer (-inf for zero).
double log_big(const BigInt& x);

}  // namespace shiftkms
