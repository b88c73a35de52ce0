#include "shiftkms/beta_expansion.hpp"

#include <cmath>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "shiftkms/errors.hpp"

namespace shiftkms {
namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_rational exact_value(double x) {
    int exponent = 0;
    const double mantissa = std::frexp(x, &exponent);
    // mantissa * 2^53 is an integer for every finite double.
    const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    exponent -= 53;
    cpp_rational value{cpp_int(scaled)};
    if (exponent >= 0) return value * cpp_rational(cpp_int(1) << exponent);
    return value / cpp_rational(cpp_int(1) << -exponent);
}

}  // namespace

std::size_t BetaExpansion::available_digits() const noexcept {
    return periodic() ? static_cast<std::size_t>(-1) : known.size();
}

int BetaExpansion::digit(std::size_t index) const {
    if (index == 0) throw InvalidInput("beta expansion: digits are 1-based");
    if (index <= known.size()) return known[index - 1];
    if (!periodic()) {
        throw InsufficientDigits("beta expansion: digit " + std::to_string(index) + " requested but only " +
                                 std::to_string(known.size()) + " are known; increase digit_depth");
    }
    return known[preperiod + (index - preperiod - 1) % period];
}

BetaExpansion beta_expansion_of_one(double beta, int n_digits, const BetaExpansionOptions& opts) {
    if (!std::isfinite(beta) || beta <= 1.0) throw InvalidInput("beta: must be a finite real > 1");
    if (n_digits < 1) throw InvalidInput("digit_depth: must be >= 1");

    BetaExpansion out;
    out.beta = beta;
    const cpp_rational exact_beta = exact_value(beta);

    cpp_rational x = 1;
    double x_approx = 1.0;
    double sensitivity = 0.0;  // d(x_k)/d(beta)
    std::map<cpp_rational, std::size_t> seen;

    for (int k = 1; k <= n_digits; ++k) {
        const cpp_rational y = exact_beta * x;
        const double y_approx = y.convert_to<double>();
        const double y_sensitivity = x_approx + beta * sensitivity;

        cpp_int digit = boost::multiprecision::numerator(y) / boost::multiprecision::denominator(y);
        cpp_rational remainder = y - cpp_rational(digit);

        const double nearest = std::round(y_approx);
        const double band = y_sensitivity * opts.landing_tolerance;
        if (remainder != 0 && nearest >= 1.0 && band <= opts.landing_window &&
            std::fabs(y_approx - nearest) <= band) {
            digit = cpp_int(static_cast<long long>(nearest));
            remainder = 0;
        }

        out.greedy.push_back(digit.convert_to<int>());
        if (remainder == 0) {
            out.terminating = true;
            break;
        }
        if (auto it = seen.find(remainder); it != seen.end()) {
            out.eventually_periodic = true;
            out.preperiod = it->second;
            out.period = static_cast<std::size_t>(k) - it->second;
            break;
        }
        seen.emplace(remainder, static_cast<std::size_t>(k));
        x = remainder;
        x_approx = remainder.convert_to<double>();
        sensitivity = y_sensitivity;
    }

    if (out.terminating) {
        // (d_1 ... d_{m-1} (d_m - 1))^inf
        out.known = out.greedy;
        out.known.back() -= 1;
        out.eventually_periodic = true;
        out.preperiod = 0;
        out.period = out.known.size();
    } else {
        out.known = out.greedy;
    }
    return out;
}

}  // namespace shiftkms
