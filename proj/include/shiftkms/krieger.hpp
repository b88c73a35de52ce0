#pragma once

#include <cstddef>
#include <vector>

#include "shiftkms/subshift.hpp"

namespace shiftkms {

// Partition of the admissible words of length `depth` into l-past classes.
// A finite word w stands in for the infinite points that begin with it; two
// words share a class iff the same words of length <= l may precede them.
struct PastPartition {
    int l = 0;
    int depth = 0;
    // Classes ordered by their lexicographically smallest member; members sorted.
    std::vector<std::vector<Word>> classes;
    // Canonical predecessor set of each class (sorted by length, then lexicographically).
    std::vector<std::vector<Word>> predecessor_sets;
    std::size_t class_count = 0;
    std::size_t previous_class_count = 0;  // at depth - 1
    bool stabilized = false;
};

// All admissible mu with |mu| <= l and mu w admissible, including the empty
// word, sorted by length then lexicographically. Throws InvalidInput when w is
// not admissible.
std::vector<Word> predecessor_set(const Word& w, int l, const SubshiftSpec& spec);

// Requires depth >= max(l, 1). Enumerates the admissible words of length
// `depth`, so keep depth at desk scale. Throws InvalidInput if there are none.
PastPartition omega_l(const SubshiftSpec& spec, int l, int depth);

struct DimQ {
    std::size_t value = 0;
    std::size_t previous = 0;  // class count at depth - 1
    bool stabilized = false;   // non-stabilized values are lower bounds
    int depth = 0;
};

// |Omega_n| at the given proxy depth, computed without enumerating words: the
// predecessor set of w is fixed by which automaton states reachable in <= n
// steps can read w, and those state sets are propagated letter by letter.
DimQ dim_q(const SubshiftSpec& spec, int n, int depth);

struct SoficReport {
    bool sofic_detected = false;
    std::vector<std::size_t> counts;  // dim_q for l = 1..l_max
    std::vector<bool> stabilized;
    std::vector<int> depths;
    std::size_t window = 3;
};

// Semi-decision: a constant, stabilized tail of length >= 3 reports sofic;
// false means only "not detected up to l_max". The proxy depth used for l is
// max(depth, l). Requires l_max >= 2.
SoficReport sofic_check(const SubshiftSpec& spec, int l_max, int depth);

struct EntropyBracket {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<double> correction_sequence;  // 2 (1/n) log dim Q_n, n = 1..n_max
    double correction = 0.0;                  // added to lower to form upper
    bool sofic_detected = false;
    std::size_t trailing_window = 0;
};

// h_top <= ht <= h_top + 2 limsup (1/n) log dim Q_n. When the class counts are
// detected bounded (sofic) the limsup is exactly zero; otherwise it is
// estimated by the minimum of the correction sequence over the trailing
// quarter (at least three terms). Requires n_max >= 4.
EntropyBracket entropy_bracket(const SubshiftSpec& spec, int n_max, int depth);

}  // namespace shiftkms
