#include "shiftkms/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>

#include "shiftkms/errors.hpp"
#include "shiftkms/kernels.hpp"

namespace shiftkms {
namespace {

std::vector<bool> reachable_from(const NonnegativeMatrix& a, std::size_t source, bool reverse) {
    const std::size_t d = a.dim();
    std::vector<bool> seen(d, false);
    std::queue<std::size_t> queue;
    seen[source] = true;
    queue.push(source);
    while (!queue.empty()) {
        const std::size_t i = queue.front();
        queue.pop();
        for (std::size_t j = 0; j < d; ++j) {
            const double w = reverse ? a(j, i) : a(i, j);
            if (w > 0.0 && !seen[j]) {
                seen[j] = true;
                queue.push(j);
            }
        }
    }
    return seen;
}

bool has_cycle(const NonnegativeMatrix& a, const std::vector<std::size_t>& component) {
    return component.size() > 1 || a(component[0], component[0]) > 0.0;
}

// Collatz-Wielandt iteration: for positive x the ratios (Bx)_i / x_i bracket
// r(B), so their spread bounds the eigenvalue error.
struct Direction {
    Vector x;
    double lambda = 0.0;
    double gap = std::numeric_limits<double>::infinity();
};

Direction iterate_until(const NonnegativeMatrix& b, Vector x, double target_gap, int& iterations, int max_iter) {
    const std::size_t d = b.dim();
    Vector y(d);
    double last_gap = std::numeric_limits<double>::infinity();
    while (true) {
        kernels::matvec(b.data(), x, y);
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        bool positive = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (x[i] <= 0.0) {
                positive = false;
                break;
            }
            const double ratio = y[i] / x[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        const double gap = positive ? hi - lo : std::numeric_limits<double>::infinity();
        if (gap <= target_gap) return Direction{std::move(x), 0.5 * (lo + hi), gap};
        last_gap = gap;
        if (iterations >= max_iter) {
            throw ConvergenceError("power iteration did not converge in " + std::to_string(max_iter) +
                                       " iterations (Collatz-Wielandt gap " + std::to_string(last_gap) + ")",
                                   std::move(x), last_gap);
        }
        ++iterations;
        const double total = kernels::sum(y);
        if (!(total > 0.0)) throw ConvergenceError("power iteration collapsed to the zero vector", std::move(x), gap);
        kernels::scale(y, 1.0 / total);
        std::swap(x, y);
    }
}

double eigen_residual(const NonnegativeMatrix& a, bool transposed, const Vector& x, double lambda) {
    Vector ax = transposed ? a.apply_transposed(x) : a.apply(x);
    Vector lx = x;
    kernels::scale(lx, lambda);
    return kernels::l1_distance(ax, lx);
}

double radius_irreducible(const NonnegativeMatrix& a, const PowerOptions& opts) {
    const double shift = period(a) > 1 ? 1.0 : 0.0;
    const NonnegativeMatrix b = a.shifted(shift);
    int iterations = 0;
    const Vector start(a.dim(), 1.0 / static_cast<double>(a.dim()));
    return iterate_until(b, start, opts.tol, iterations, opts.max_iter).lambda - shift;
}

}  // namespace

bool irreducible(const NonnegativeMatrix& a) {
    if (a.dim() == 1) return a(0, 0) > 0.0;
    const auto forward = reachable_from(a, 0, false);
    const auto backward = reachable_from(a, 0, true);
    return std::all_of(forward.begin(), forward.end(), [](bool b) { return b; }) &&
           std::all_of(backward.begin(), backward.end(), [](bool b) { return b; });
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const NonnegativeMatrix& a) {
    // Tarjan; d is small enough for recursion.
    const std::size_t d = a.dim();
    constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(d, unvisited), low(d, 0);
    std::vector<bool> on_stack(d, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    std::size_t counter = 0;

    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w = 0; w < d; ++w) {
            if (a(v, w) <= 0.0) continue;
            if (index[w] == unvisited) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::size_t> component;
            std::size_t w = 0;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                component.push_back(w);
            } while (w != v);
            std::sort(component.begin(), component.end());
            components.push_back(std::move(component));
        }
    };
    for (std::size_t v = 0; v < d; ++v)
        if (index[v] == unvisited) visit(v);
    std::sort(components.begin(), components.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return components;
}

std::size_t period(const NonnegativeMatrix& a) {
    if (!irreducible(a)) throw PreconditionViolation("period: matrix is not irreducible");
    const std::size_t d = a.dim();
    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> level(d, unset);
    std::queue<std::size_t> queue;
    level[0] = 0;
    queue.push(0);
    while (!queue.empty()) {
        const std::size_t i = queue.front();
        queue.pop();
        for (std::size_t j = 0; j < d; ++j) {
            if (a(i, j) > 0.0 && level[j] == unset) {
                level[j] = level[i] + 1;
                queue.push(j);
            }
        }
    }
    std::size_t g = 0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (a(i, j) <= 0.0) continue;
            const auto lhs = static_cast<long long>(level[i]) + 1;
            const auto rhs = static_cast<long long>(level[j]);
            g = std::gcd(g, static_cast<std::size_t>(std::llabs(lhs - rhs)));
        }
    }
    return g;
}

double spectral_radius(const NonnegativeMatrix& a, const PowerOptions& opts) {
    const auto data = a.data();
    if (std::all_of(data.begin(), data.end(), [](double x) { return x == 0.0; })) {
        throw InvalidInput("spectral_radius: matrix is identically zero");
    }
    if (irreducible(a)) return radius_irreducible(a, opts);
    double radius = 0.0;
    for (const auto& component : strongly_connected_components(a)) {
        if (!has_cycle(a, component)) continue;
        radius = std::max(radius, radius_irreducible(a.submatrix(component), opts));
    }
    return radius;
}

PerronData perron_vectors(const NonnegativeMatrix& a, const PowerOptions& opts) {
    if (!irreducible(a)) {
        throw PreconditionViolation("perron_vectors: matrix is reducible; use perron_by_component");
    }
    const std::size_t d = a.dim();
    const double shift = period(a) > 1 ? 1.0 : 0.0;
    const NonnegativeMatrix b = a.shifted(shift);
    const NonnegativeMatrix bt = b.transposed();

    PerronData out;
    Vector right(d, 1.0 / static_cast<double>(d));
    Vector left = right;
    double target = opts.tol;
    int iterations = 0;
    while (true) {
        Direction r = iterate_until(b, std::move(right), target, iterations, opts.max_iter);
        Direction l = iterate_until(bt, std::move(left), target, iterations, opts.max_iter);
        right = r.x;
        left = l.x;

        out.lambda = r.lambda - shift;
        out.u = right;
        kernels::scale(out.u, 1.0 / kernels::sum(out.u));
        out.v = left;
        kernels::scale(out.v, 1.0 / kernels::dot(out.u, out.v));
        out.residual = std::max(eigen_residual(a, false, out.u, out.lambda),
                                eigen_residual(a, true, out.v, out.lambda));
        out.iterations = iterations;
        if (out.residual <= opts.tol) return out;

        // The normalized left vector can be much larger than the iterate, so
        // tighten the gap until the scaled residual meets the tolerance.
        target /= 16.0;
        if (target < 8.0 * std::numeric_limits<double>::epsilon() * (r.lambda + 1.0)) {
            std::ostringstream msg;
            msg << "perron_vectors: residual " << out.residual << " cannot reach tolerance " << opts.tol
                << " in double precision";
            throw ConvergenceError(msg.str(),
                                   out.u, out.residual);
        }
    }
}

ComponentSpectrum perron_by_component(const NonnegativeMatrix& a, const PowerOptions& opts) {
    ComponentSpectrum out;
    bool first = true;
    for (auto& component : strongly_connected_components(a)) {
        if (!has_cycle(a, component)) {
            ++out.acyclic_components;
            continue;
        }
        PerronData perron = perron_vectors(a.submatrix(component), opts);
        if (first) {
            out.min_lambda = out.max_lambda = perron.lambda;
            first = false;
        } else {
            out.min_lambda = std::min(out.min_lambda, perron.lambda);
            out.max_lambda = std::max(out.max_lambda, perron.lambda);
        }
        out.components.push_back(ComponentPerron{std::move(component), std::move(perron)});
    }
    return out;
}

std::vector<std::uint64_t> column_sum_powers(const ZeroOneMatrix& a, int r) {
    if (r < 1) throw InvalidInput("column_sum_powers: r must be >= 1");
    const std::size_t d = a.dim();
    std::vector<std::uint64_t> sums(d, 1), next(d);
    for (int step = 0; step < r; ++step) {
        for (std::size_t k = 0; k < d; ++k) {
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < d; ++i) {
                if (!a(i, k)) continue;
                if (__builtin_add_overflow(acc, sums[i], &acc)) {
                    throw OverflowError("column_sum_powers: 64-bit overflow at power " + std::to_string(step + 1) +
                                        "; use column_sum_powers_big");
                }
            }
            next[k] = acc;
        }
        sums.swap(next);
    }
    return sums;
}

std::vector<BigInt> column_sum_powers_big(const ZeroOneMatrix& a, int r) {
    if (r < 1) throw InvalidInput("column_sum_powers: r must be >= 1");
    const std::size_t d = a.dim();
    std::vector<BigInt> sums(d, BigInt(1)), next(d);
    for (int step = 0; step < r; ++step) {
        for (std::size_t k = 0; k < d; ++k) {
            BigInt acc = 0;
            for (std::size_t i = 0; i < d; ++i)
                if (a(i, k)) acc += sums[i];
            next[k] = std::move(acc);
        }
        sums.swap(next);
    }
    return sums;
}

BracketSequences spectral_radius_bracket_sequences(const NonnegativeMatrix& a, int n_max) {
    if (n_max < 1) throw InvalidInput("spectral_radius_bracket_sequences: n_max must be >= 1");
    const std::size_t d = a.dim();
    BracketSequences out;
    out.lower.reserve(static_cast<std::size_t>(n_max));
    out.upper.reserve(static_cast<std::size_t>(n_max));
    // Row vector 1^T A^n, kept as (scaled vector, log scale).
    Vector row(d, 1.0);
    double log_scale = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        row = a.apply_transposed(row);
        const double hi = *std::max_element(row.begin(), row.end());
        const double lo = *std::min_element(row.begin(), row.end());
        const double inv_n = 1.0 / static_cast<double>(n);
        if (hi <= 0.0) {
            out.lower.push_back(0.0);
            out.upper.push_back(0.0);
            continue;
        }
        out.upper.push_back(std::exp((std::log(hi) + log_scale) * inv_n));
        out.lower.push_back(lo > 0.0 ? std::exp((std::log(lo) + log_scale) * inv_n) : 0.0);
        kernels::scale(row, 1.0 / hi);
        log_scale += std::log(hi);
    }
    return out;
}

}  // namespace shiftkms
