#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "shiftkms/spectral.hpp"
#include "shiftkms/subshift.hpp"

namespace shiftkms {

// Deterministic, trimmed automaton whose language (words readable from the
// start state) is the language of a subshift. Every state has an infinite
// future, so the language is factorial and right-extendable.
//
//   full      one state
//   sft       start state plus one state per last symbol (transfer matrix)
//   forbidden Aho-Corasick automaton over the forbidden words, terminal and
//             dead states removed
//   beta      Parry's follower automaton: state k = length of the longest
//             suffix equal to a prefix of the quasi-greedy expansion of 1;
//             periodic expansions fold to a finite automaton
//
// A non-periodic beta expansion only determines states up to the number of
// known digits. Transitions past that point are kUnknown and reading one
// throws InsufficientDigits.
class LanguageAutomaton {
public:
    static constexpr std::int32_t kNone = -1;
    static constexpr std::int32_t kUnknown = -2;

    // `horizon` is the longest word length that must be readable from the
    // start state. Throws InsufficientDigits when a beta expansion is too short.
    static LanguageAutomaton build(const SubshiftSpec& spec, std::size_t horizon);

    std::size_t state_count() const noexcept { return transitions_.size() / static_cast<std::size_t>(alphabet_); }
    int alphabet() const noexcept { return alphabet_; }
    std::size_t start() const noexcept { return start_; }
    bool finite() const noexcept { return finite_; }

    // Raw transition: a state index, kNone or kUnknown.
    std::int32_t transition(std::size_t state, Symbol symbol) const noexcept {
        return transitions_[state * static_cast<std::size_t>(alphabet_) + static_cast<std::size_t>(symbol - 1)];
    }

    // Runs w from `state`; returns kNone if rejected. Throws InsufficientDigits
    // on an unknown transition.
    std::int32_t run(std::size_t state, const Word& w) const;

    // theta_0 .. theta_{n_max} by dynamic programming over states.
    std::vector<BigInt> count_paths(int n_max) const;

private:
    LanguageAutomaton(int alphabet, std::vector<std::int32_t> transitions, std::size_t start, bool finite)
        : alphabet_(alphabet), transitions_(std::move(transitions)), start_(start), finite_(finite) {}

    int alphabet_ = 0;
    std::vector<std::int32_t> transitions_;
    std::size_t start_ = 0;
    bool finite_ = true;
};

}  // namespace shiftkms
