#include "shiftkms/tracespace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include <Eigen/Dense>

#include "shiftkms/errors.hpp"
#include "shiftkms/kernels.hpp"

namespace shiftkms {
namespace {

constexpr double kSimplexTol = 1e-12;

void require_no_zero_lines(const NonnegativeMatrix& a) {
    if (a.has_zero_row()) throw InvalidInput("matrix: has a zero row");
    if (a.has_zero_column()) throw InvalidInput("matrix: has a zero column");
}

}  // namespace

TraceVector::TraceVector(Vector values) : values_(std::move(values)) {
    if (values_.empty()) throw InvalidInput("trace: empty vector");
    for (double x : values_)
        if (!std::isfinite(x) || x < 0.0) throw InvalidInput("trace: entries must be finite and >= 0");
    if (std::fabs(kernels::sum(values_) - 1.0) > kSimplexTol) throw InvalidInput("trace: entries must sum to 1");
}

TraceVector TraceVector::normalized(Vector values) {
    for (double x : values)
        if (!std::isfinite(x) || x < 0.0) throw InvalidInput("trace: entries must be finite and >= 0");
    const double total = kernels::sum(values);
    if (!(total > 0.0)) throw InvalidInput("trace: vector is zero");
    kernels::scale(values, 1.0 / total);
    return TraceVector(std::move(values));
}

TraceVector TraceVector::uniform(std::size_t dim) {
    return TraceVector(Vector(dim, 1.0 / static_cast<double>(dim)));
}

double CoherentSequence::max_residual() const noexcept {
    return residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
}

CoherentSequence make_sequence(const ZeroOneMatrix& a, std::vector<Vector> levels) {
    CoherentSequence seq;
    seq.a = a;
    seq.levels = std::move(levels);
    for (std::size_t r = 0; r + 1 < seq.levels.size(); ++r) {
        const Vector image = a.values().apply(seq.levels[r + 1]);
        seq.residuals.push_back(kernels::l1_distance(image, seq.levels[r]));
    }
    seq.normalized = !seq.levels.empty() && std::fabs(kernels::sum(seq.levels[0]) - 1.0) <= kSimplexTol;
    return seq;
}

CoherentSequence s_prime(const CoherentSequence& seq) {
    if (seq.levels.empty()) return seq;
    std::vector<Vector> levels;
    levels.reserve(seq.levels.size());
    levels.push_back(seq.a.values().apply(seq.levels[0]));
    levels.insert(levels.end(), seq.levels.begin(), seq.levels.end() - 1);
    return make_sequence(seq.a, std::move(levels));
}

CoherentSequence t_prime(const CoherentSequence& seq) {
    if (seq.depth() == 0) throw InvalidInput("t_prime: sequence has depth 0, nothing to shift");
    return make_sequence(seq.a, std::vector<Vector>(seq.levels.begin() + 1, seq.levels.end()));
}

std::vector<TraceVector> k_iterate(const ZeroOneMatrix& a, const TraceVector& t, int n) {
    if (t.dim() != a.dim()) throw InvalidInput("k_iterate: dimension mismatch");
    std::vector<TraceVector> out;
    Vector current = t.values();
    for (int step = 0; step < n; ++step) {
        Vector next = a.values().apply(current);
        const double epsilon = kernels::sum(next);
        if (!(epsilon > 0.0)) throw InvariantViolation("k_iterate: 1^T A t vanished; A has a zero column?");
        kernels::scale(next, 1.0 / epsilon);
        out.push_back(TraceVector::normalized(next));
        current = std::move(next);
    }
    return out;
}

CoherentSequence h_iterate(const CoherentSequence& seq, int n) {
    if (n < 0) throw InvalidInput("h_iterate: n must be >= 0");
    if (seq.depth() < static_cast<std::size_t>(n)) {
        throw InvalidInput("h_iterate: depth " + std::to_string(seq.depth()) + " is less than n = " + std::to_string(n));
    }
    std::vector<Vector> levels = seq.levels;
    for (int step = 0; step < n; ++step) {
        if (levels.size() < 2) throw InvalidInput("h_iterate: sequence too shallow");
        const double delta = kernels::sum(levels[1]);
        if (!(delta > 0.0)) throw InvalidInput("h_iterate: sum of t_1 is zero");
        levels.erase(levels.begin());
        for (auto& level : levels) kernels::scale(level, 1.0 / delta);
    }
    return make_sequence(seq.a, std::move(levels));
}

CoherentSequence kms_eigen_sequence(const ZeroOneMatrix& a, int depth, const PowerOptions& opts) {
    if (depth < 0) throw InvalidInput("kms_eigen_sequence: depth must be >= 0");
    const PerronData perron = perron_vectors(a, opts);
    std::vector<Vector> levels;
    Vector level = perron.u;
    for (int r = 0; r <= depth; ++r) {
        levels.push_back(level);
        kernels::scale(level, 1.0 / perron.lambda);
    }
    return make_sequence(a, std::move(levels));
}

CoherentSequence coherent_from_boundary(const ZeroOneMatrix& a, const Vector& boundary, int depth) {
    if (depth < 0) throw InvalidInput("coherent_from_boundary: depth must be >= 0");
    if (boundary.size() != a.dim()) throw InvalidInput("coherent_from_boundary: dimension mismatch");
    std::vector<Vector> levels(static_cast<std::size_t>(depth) + 1);
    levels.back() = boundary;
    for (int r = depth - 1; r >= 0; --r) levels[static_cast<std::size_t>(r)] = a.values().apply(levels[static_cast<std::size_t>(r) + 1]);
    const double total = kernels::sum(levels.front());
    if (!(total > 0.0)) throw InvalidInput("coherent_from_boundary: top level vanishes");
    // Rescale the boundary and rebuild upwards so t_r = A t_{r+1} holds
    // exactly as computed rather than up to the rounding of the rescale.
    kernels::scale(levels.back(), 1.0 / total);
    for (int r = depth - 1; r >= 0; --r) levels[static_cast<std::size_t>(r)] = a.values().apply(levels[static_cast<std::size_t>(r) + 1]);
    return make_sequence(a, std::move(levels));
}

CoherentSequence coherent_from_top(const ZeroOneMatrix& a, const TraceVector& top, int depth) {
    if (depth < 0) throw InvalidInput("coherent_from_top: depth must be >= 0");
    if (top.dim() != a.dim()) throw InvalidInput("coherent_from_top: dimension mismatch");
    const auto d = static_cast<Eigen::Index>(a.dim());
    Eigen::MatrixXd m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = a.values()(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> solver(m);

    std::vector<Vector> levels{top.values()};
    for (int r = 0; r < depth; ++r) {
        const Eigen::Map<const Eigen::VectorXd> rhs(levels.back().data(), d);
        Eigen::VectorXd x = solver.solve(rhs);
        Vector next(static_cast<std::size_t>(d));
        for (Eigen::Index i = 0; i < d; ++i) next[static_cast<std::size_t>(i)] = std::max(0.0, x(i));
        levels.push_back(std::move(next));
    }
    return make_sequence(a, std::move(levels));
}

std::vector<double> normalization_weights(const CoherentSequence& seq) {
    std::vector<double> out;
    // d_{r,.} = 1^T A^r as a row vector.
    Vector column_sums(seq.a.dim(), 1.0);
    for (std::size_t r = 0; r < seq.levels.size(); ++r) {
        if (r > 0) column_sums = seq.a.values().apply_transposed(column_sums);
        out.push_back(kernels::dot(column_sums, seq.levels[r]));
    }
    return out;
}

EpsilonSequence epsilon_sequence(const NonnegativeMatrix& a, const TraceVector& t, int n_max) {
    if (n_max < 1) throw InvalidInput("epsilon_sequence: n_max must be >= 1");
    if (t.dim() != a.dim()) throw InvalidInput("epsilon_sequence: dimension mismatch");
    EpsilonSequence out;
    Vector current = t.values();
    double log_scale = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        current = a.apply(current);
        const double total = kernels::sum(current);
        const double log_eps = total > 0.0 ? std::log(total) + log_scale : -std::numeric_limits<double>::infinity();
        out.log_epsilon.push_back(log_eps);
        out.rate.push_back(log_eps / n);
        out.epsilon.push_back(std::exp(log_eps));
        if (total > 0.0) {
            kernels::scale(current, 1.0 / total);
            log_scale += std::log(total);
        }
    }
    return out;
}

double temperature_from_trace(const NonnegativeMatrix& a, const TraceVector& t, int n_max) {
    for (double x : t.values())
        if (!(x > 0.0)) throw InvalidInput("temperature_from_trace: trace must be strictly positive");
    return epsilon_sequence(a, t, n_max).rate.back();
}

KmsReport kms_temperature(const ZeroOneMatrix& a, const KmsOptions& opts) {
    a.require_cuntz_krieger();
    KmsReport out;
    if (irreducible(a)) {
        const PerronData perron = perron_vectors(a, opts.power);
        out.lambda = perron.lambda;
        out.kms_beta = std::log(perron.lambda);
        out.unique = aperiodic(a);
        std::vector<Vector> levels;
        Vector level = perron.u;
        for (int r = 0; r <= opts.depth; ++r) {
            levels.push_back(level);
            kernels::scale(level, 1.0 / perron.lambda);
        }
        out.eigen_sequence = make_sequence(a, std::move(levels));
        return out;
    }
    if (!opts.reducible_mode) {
        throw PreconditionViolation("kms_temperature: matrix is reducible; enable reducible mode for a bracket");
    }
    const ComponentSpectrum spectrum = perron_by_component(a.values(), opts.power);
    out.lambda = spectrum.max_lambda;
    out.kms_beta = std::log(spectrum.max_lambda);
    out.bracket = std::make_pair(std::log(spectrum.min_lambda), std::log(spectrum.max_lambda));
    return out;
}

BimoduleKms bimodule_kms(const NonnegativeMatrix& lambda_matrix, int depth, const PowerOptions& opts) {
    if (!irreducible(lambda_matrix)) throw PreconditionViolation("bimodule_kms: matrix is reducible");
    if (depth < 0) throw InvalidInput("bimodule_kms: depth must be >= 0");
    const PerronData perron = perron_vectors(lambda_matrix, opts);
    BimoduleKms out;
    out.lambda = perron.lambda;
    out.kms_beta = std::log(perron.lambda);
    out.v0 = perron.u;
    Vector level = perron.u;
    for (int r = 0; r <= depth; ++r) {
        out.sequence.push_back(level);
        kernels::scale(level, 1.0 / perron.lambda);
    }
    return out;
}

TemperatureSignReport temperature_sign(const NonnegativeMatrix& a, int n_max, double tol) {
    require_no_zero_lines(a);
    TemperatureSignReport out;
    out.bracket = spectral_radius_bracket_sequences(a, n_max);

    const std::size_t d = a.dim();
    const auto components = strongly_connected_components(a);
    std::vector<double> component_radius(components.size(), 0.0);
    std::vector<std::size_t> component_of(d);
    for (std::size_t c = 0; c < components.size(); ++c) {
        for (std::size_t v : components[c]) component_of[v] = c;
        const bool cyclic = components[c].size() > 1 || a(components[c][0], components[c][0]) > 0.0;
        if (cyclic) component_radius[c] = spectral_radius(a.submatrix(components[c]));
    }
    double lower = std::numeric_limits<double>::infinity();
    double upper = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        // Vertices with a path into k.
        std::vector<bool> seen(d, false);
        std::queue<std::size_t> queue;
        seen[k] = true;
        queue.push(k);
        double growth = 0.0;
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop();
            growth = std::max(growth, component_radius[component_of[v]]);
            for (std::size_t u = 0; u < d; ++u) {
                if (a(u, v) > 0.0 && !seen[u]) {
                    seen[u] = true;
                    queue.push(u);
                }
            }
        }
        lower = std::min(lower, growth);
        upper = std::max(upper, growth);
    }
    out.lower_limit = lower;
    out.upper_limit = upper;

    if (lower > 1.0 + tol) out.sign = TemperatureSign::Positive;
    else if (upper < 1.0 - tol) out.sign = TemperatureSign::Negative;
    else if (std::fabs(lower - 1.0) <= tol && std::fabs(upper - 1.0) <= tol) out.sign = TemperatureSign::Tracial;
    else out.sign = TemperatureSign::Mixed;
    return out;
}

const char* to_string(TemperatureSign sign) noexcept {
    switch (sign) {
        case TemperatureSign::Positive: return "positive";
        case TemperatureSign::Tracial: return "tracial";
        case TemperatureSign::Negative: return "negative";
        case TemperatureSign::Mixed: return "mixed";
    }
    return "mixed";
}

}  // namespace shiftkms
