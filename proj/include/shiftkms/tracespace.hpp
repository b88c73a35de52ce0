#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "shiftkms/matrix.hpp"
#include "shiftkms/spectral.hpp"

namespace shiftkms {

// Trace on the diagonal of the degree-zero part, recorded by its values on the
// minimal projections: nonnegative, summing to 1.
class TraceVector {
public:
    // Throws InvalidInput unless entries are >= 0 and sum to 1 within 1e-12.
    explicit TraceVector(Vector values);
    // Rescales a nonnegative, nonzero vector to sum 1.
    static TraceVector normalized(Vector values);
    static TraceVector uniform(std::size_t dim);

    const Vector& values() const noexcept { return values_; }
    std::size_t dim() const noexcept { return values_.size(); }

private:
    Vector values_;
};

// Truncated coherent sequence (t_0, ..., t_R) with A t_{r+1} = t_r.
// residuals[r] = ||A t_{r+1} - t_r||_1.
struct CoherentSequence {
    ZeroOneMatrix a;
    std::vector<Vector> levels;
    std::vector<double> residuals;
    bool normalized = false;  // sum(t_0) == 1 within 1e-12

    std::size_t depth() const noexcept { return levels.empty() ? 0 : levels.size() - 1; }
    double max_residual() const noexcept;
};

// Recomputes residuals and the normalization flag.
CoherentSequence make_sequence(const ZeroOneMatrix& a, std::vector<Vector> levels);

// (t_r) -> (A t_0, t_0, ..., t_{R-1}); depth is unchanged.
CoherentSequence s_prime(const CoherentSequence& seq);
// (t_r) -> (t_1, ..., t_R). Throws InvalidInput at depth 0.
CoherentSequence t_prime(const CoherentSequence& seq);

// One step t -> A t / (1^T A t), n times; returns t_1..t_n. Throws
// InvariantViolation if an iterate vanishes.
std::vector<TraceVector> k_iterate(const ZeroOneMatrix& a, const TraceVector& t, int n);

// n steps of (t_r) -> (t_{r+1}) / sum(t_1). Throws InvalidInput if the
// sequence is shallower than n or sum(t_1) == 0.
CoherentSequence h_iterate(const CoherentSequence& seq, int n);

// (lambda^{-r} u), r = 0..R, u the Perron vector with sum 1.
CoherentSequence kms_eigen_sequence(const ZeroOneMatrix& a, int depth, const PowerOptions& opts = {});

// Truncation determined by its deepest level: t_R is the boundary scaled so
// that sum(t_0) = 1 up to rounding, and each t_r is computed as A t_{r+1}, so
// the coherence relations hold exactly in floating point.
CoherentSequence coherent_from_boundary(const ZeroOneMatrix& a, const Vector& boundary, int depth);

// Truncation grown downwards from t_0 by solving A t_{r+1} = t_r in least
// squares and projecting onto the nonnegative cone; residuals record the
// coherence defect introduced by the projection.
CoherentSequence coherent_from_top(const ZeroOneMatrix& a, const TraceVector& top, int depth);

// Normalization weights sum_k t_r(k) d_{r,k}, one per level, where d_{r,k}
// is the k-th column sum of A^r.
std::vector<double> normalization_weights(const CoherentSequence& seq);

struct EpsilonSequence {
    std::vector<double> log_epsilon;  // log(1^T A^n t), n = 1..n_max
    std::vector<double> rate;         // (1/n) log(1^T A^n t)
    std::vector<double> epsilon;      // exp(log_epsilon); +inf once it overflows
};

// Evaluated with a running log scale so it never overflows.
EpsilonSequence epsilon_sequence(const NonnegativeMatrix& a, const TraceVector& t, int n_max);
inline EpsilonSequence epsilon_sequence(const ZeroOneMatrix& a, const TraceVector& t, int n_max) {
    return epsilon_sequence(a.values(), t, n_max);
}

// Trailing (1/n) log eps_n at n = n_max. Throws InvalidInput unless t > 0.
double temperature_from_trace(const NonnegativeMatrix& a, const TraceVector& t, int n_max);
inline double temperature_from_trace(const ZeroOneMatrix& a, const TraceVector& t, int n_max) {
    return temperature_from_trace(a.values(), t, n_max);
}

struct KmsReport {
    double lambda = 0.0;
    double kms_beta = 0.0;  // log(lambda)
    std::optional<CoherentSequence> eigen_sequence;
    bool unique = false;  // A aperiodic
    // Reducible mode only: (log min, log max) over components with a cycle.
    // Candidate extremes, not the exact set of inverse temperatures.
    std::optional<std::pair<double, double>> bracket;
};

struct KmsOptions {
    PowerOptions power;
    int depth = 16;  // levels of the reported eigen-sequence
    bool reducible_mode = false;
};

// Throws InvalidInput on a zero row or column, PreconditionViolation for
// reducible A unless opts.reducible_mode.
KmsReport kms_temperature(const ZeroOneMatrix& a, const KmsOptions& opts = {});

struct BimoduleKms {
    double lambda = 0.0;
    double kms_beta = 0.0;
    Vector v0;                      // Perron vector, sum 1
    std::vector<Vector> sequence;   // v^r = lambda^{-r} v0, r = 0..depth
};

// Throws PreconditionViolation for reducible input.
BimoduleKms bimodule_kms(const NonnegativeMatrix& lambda_matrix, int depth = 16, const PowerOptions& opts = {});

enum class TemperatureSign { Positive, Tracial, Negative, Mixed };

struct TemperatureSignReport {
    TemperatureSign sign = TemperatureSign::Mixed;
    // Limits of min/max column sums of A^n to the power 1/n.
    double lower_limit = 0.0;
    double upper_limit = 0.0;
    BracketSequences bracket;  // finite-n values
};

// The limits are exact growth rates read off the strongly connected
// components: column k grows like the largest radius among components that
// reach k. Throws InvalidInput on a zero row or column.
TemperatureSignReport temperature_sign(const NonnegativeMatrix& a, int n_max = 64, double tol = 1e-9);
inline TemperatureSignReport temperature_sign(const ZeroOneMatrix& a, int n_max = 64, double tol = 1e-9) {
    return temperature_sign(a.values(), n_max, tol);
}

const char* to_string(TemperatureSign sign) noexcept;

}  // namespace shiftkms
