#pragma once

#include <cstddef>
#include <vector>

namespace shiftkms {

struct BetaExpansionOptions {
    // Absolute uncertainty assumed on the input beta. While the accumulated
    // sensitivity keeps the induced band on beta*x_{k-1} below `landing_window`,
    // a value within that band of a positive integer is taken as an exact
    // landing (the greedy expansion terminates). This is what lets a double
    // approximation of a simple Parry number, e.g. the golden ratio, produce
    // its terminating expansion.
    double landing_tolerance = 1e-9;
    double landing_window = 1e-6;
};

// Greedy (Renyi) expansion of 1 in base beta together with the quasi-greedy
// expansion used for admissibility.
//
// Arithmetic is exact: beta is the exact binary value of the double and every
// remainder is a rational number, so no digit is affected by rounding and
// eventual periodicity is detected exactly.
struct BetaExpansion {
    double beta = 0.0;
    std::vector<int> greedy;  // digits d_1, d_2, ... as computed

    bool terminating = false;  // greedy expansion is finite (length greedy.size())
    bool eventually_periodic = false;
    std::size_t preperiod = 0;  // quasi-greedy = prefix(preperiod) cycle(period)^inf
    std::size_t period = 0;

    // Quasi-greedy digits: `known` holds the first known digits. When periodic,
    // digit i > preperiod is known[preperiod + (i - preperiod - 1) % period].
    std::vector<int> known;

    bool periodic() const noexcept { return period > 0; }

    // Number of quasi-greedy digits available; unbounded when periodic.
    std::size_t available_digits() const noexcept;

    // 1-based quasi-greedy digit. Throws InsufficientDigits beyond the computed range.
    int digit(std::size_t index) const;
};

// Throws InvalidInput for beta <= 1, non-finite beta or n_digits < 1.
BetaExpansion beta_expansion_of_one(double beta, int n_digits, const BetaExpansionOptions& opts = {});

}  // namespace shiftkms
