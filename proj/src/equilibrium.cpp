#include "shiftkms/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include <Eigen/Dense>

#include "shiftkms/errors.hpp"
#include "shiftkms/kernels.hpp"

namespace shiftkms {
namespace {

constexpr double kStochasticTol = 1e-12;
constexpr double kDominanceTol = 1e-9;

void check_chain(const std::vector<Vector>& p, const Vector& pi, const char* what) {
    const std::size_t d = p.size();
    for (std::size_t i = 0; i < d; ++i) {
        if (std::fabs(kernels::sum(p[i]) - 1.0) > kStochasticTol)
            throw InvariantViolation(std::string(what) + ": row " + std::to_string(i + 1) + " does not sum to 1");
    }
    if (std::fabs(kernels::sum(pi) - 1.0) > kStochasticTol)
        throw InvariantViolation(std::string(what) + ": stationary vector does not sum to 1");
    for (std::size_t j = 0; j < d; ++j) {
        double mass = 0.0;
        for (std::size_t i = 0; i < d; ++i) mass += pi[i] * p[i][j];
        if (std::fabs(mass - pi[j]) > kStochasticTol)
            throw InvariantViolation(std::string(what) + ": pi P != pi at coordinate " + std::to_string(j + 1));
    }
}

}  // namespace

MarkovMeasure parry_measure(const ZeroOneMatrix& a, const PowerOptions& opts) {
    if (!irreducible(a)) throw PreconditionViolation("parry_measure: matrix is reducible");
    const PerronData perron = perron_vectors(a, opts);
    const std::size_t d = a.dim();
    MarkovMeasure m;
    m.a = a;
    m.lambda = perron.lambda;
    m.u = perron.u;
    m.v = perron.v;
    m.p.assign(d, Vector(d, 0.0));
    m.pi.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j)
            if (a(i, j)) m.p[i][j] = m.u[j] / (m.lambda * m.u[i]);
        m.pi[i] = m.u[i] * m.v[i];
    }
    check_chain(m.p, m.pi, "parry_measure");
    return m;
}

double cylinder(const MarkovMeasure& m, const Word& w) {
    if (w.empty()) throw InvalidInput("cylinder: word must be nonempty");
    validate_word(w, static_cast<int>(m.a.dim()));
    const auto idx = [&](std::size_t k) { return static_cast<std::size_t>(w[k] - 1); };

    double chain = m.pi[idx(0)];
    bool allowed = true;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        chain *= m.p[idx(k)][idx(k + 1)];
        allowed = allowed && m.a(idx(k), idx(k + 1));
    }
    if (!allowed) return 0.0;
    // Perron form; lambda^{-(r-1)} in logs so long words do not underflow early.
    const double perron = m.v[idx(0)] * m.u[idx(w.size() - 1)] *
                          std::exp(-static_cast<double>(w.size() - 1) * std::log(m.lambda));
    if (std::fabs(chain - perron) > 1e-10 * std::max(chain, perron) + 1e-300) {
        throw InvariantViolation("cylinder: the two cylinder formulas disagree (" + std::to_string(chain) + " vs " +
                                 std::to_string(perron) + ")");
    }
    return chain;
}

double markov_entropy(const std::vector<Vector>& p, const Vector& pi) {
    double h = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double row = 0.0;
        for (double x : p[i])
            if (x > 0.0) row -= x * std::log(x);
        h += pi[i] * row;
    }
    return h;
}

ResolventVector resolvent_vector(const ZeroOneMatrix& a, const PerronData& perron, double t) {
    if (!(t > perron.lambda)) {
        throw InvalidInput("resolvent_vector: t = " + std::to_string(t) + " must exceed lambda = " +
                           std::to_string(perron.lambda));
    }
    const auto d = static_cast<Eigen::Index>(a.dim());
    Eigen::MatrixXd m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            m(i, j) = (i == j ? t : 0.0) - (a(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) ? 1.0 : 0.0);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (!lu.isInvertible()) throw InvariantViolation("resolvent_vector: tI - A^T is numerically singular");
    const Eigen::VectorXd x = lu.solve(Eigen::VectorXd::Ones(d));

    ResolventVector out;
    out.t = t;
    out.a_t.resize(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) out.a_t[static_cast<std::size_t>(i)] = (t - perron.lambda) * x(i);
    out.pairing = kernels::dot(perron.u, out.a_t);
    return out;
}

Vector stationary_vector(const std::vector<Vector>& p, const PowerOptions& opts) {
    const std::size_t d = p.size();
    std::vector<std::vector<double>> rows(d, std::vector<double>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) rows[i][j] = 0.5 * p[i][j] + (i == j ? 0.5 : 0.0);
    const NonnegativeMatrix lazy(rows);

    // Stop well below tol: the stationarity defect can exceed the step size by
    // the inverse spectral gap.
    const double stop = std::max(opts.tol * 1e-2, 8e-16 * static_cast<double>(d));
    Vector pi(d, 1.0 / static_cast<double>(d));
    double change = 0.0;
    for (int it = 0; it < opts.max_iter; ++it) {
        Vector next = lazy.apply_transposed(pi);
        kernels::scale(next, 1.0 / kernels::sum(next));
        change = kernels::l1_distance(next, pi);
        pi = std::move(next);
        if (change <= stop) return pi;
    }
    throw ConvergenceError("stationary_vector: power iteration did not converge", pi, change);
}

std::vector<Vector> sample_compatible_matrix(const ZeroOneMatrix& a, std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    std::exponential_distribution<double> exponential(1.0);
    const std::size_t d = a.dim();
    std::vector<Vector> p(d, Vector(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        double total = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            if (!a(i, j)) continue;
            // Dirichlet(1, ..., 1) as normalized unit exponentials; nudge away
            // from an exact zero so the support matches A.
            p[i][j] = std::max(exponential(rng), 1e-300);
            total += p[i][j];
        }
        for (double& x : p[i]) x /= total;
    }
    return p;
}

VariationalReport variational_scan(const ZeroOneMatrix& a, std::size_t n_samples, std::uint64_t seed,
                                   const PowerOptions& opts, unsigned threads) {
    if (n_samples < 1) throw InvalidInput("variational_scan: n_samples must be >= 1");
    const MarkovMeasure parry = parry_measure(a, opts);

    VariationalReport out;
    out.n_samples = n_samples;
    out.seed = seed;
    out.log_r = std::log(parry.lambda);
    out.parry_entropy = markov_entropy(parry);
    out.sample_entropies.assign(n_samples, 0.0);

    const auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const auto p = sample_compatible_matrix(a, seed, k);
            out.sample_entropies[k] = markov_entropy(p, stationary_vector(p, opts));
        }
    };
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, (n_samples + 63) / 64));
    if (threads <= 1) {
        work(0, n_samples);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n_samples + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = std::min(n_samples, t * chunk);
            pool.emplace_back(work, begin, std::min(n_samples, begin + chunk));
        }
        for (auto& th : pool) th.join();
    }

    out.max_sample_entropy = *std::max_element(out.sample_entropies.begin(), out.sample_entropies.end());
    out.max_entropy = std::max(out.max_sample_entropy, out.parry_entropy);
    out.gap = out.log_r - out.max_entropy;
    for (double h : out.sample_entropies) {
        if (h > out.log_r + kDominanceTol) ++out.violations;
        if (h < out.log_r - kDominanceTol) ++out.strictly_below;
    }
    return out;
}

}  // namespace shiftkms
