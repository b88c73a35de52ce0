#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "shiftkms/matrix.hpp"
#include "shiftkms/spectral.hpp"
#include "shiftkms/subshift.hpp"

namespace shiftkms {

// Maximal-entropy Markov measure of an irreducible 0/1 matrix:
// p_ij = a_ij u_j / (lambda u_i), pi_i = u_i v_i.
struct MarkovMeasure {
    ZeroOneMatrix a;
    double lambda = 0.0;
    Vector u;
    Vector v;
    std::vector<Vector> p;  // row-stochastic
    Vector pi;
};

// Throws PreconditionViolation for reducible A and InvariantViolation if the
// constructed chain fails its stochasticity or stationarity checks.
MarkovMeasure parry_measure(const ZeroOneMatrix& a, const PowerOptions& opts = {});

// Mass of the cylinder [w]. Computed both as pi_{w1} prod p and as
// v_{w1} u_{wr} prod a / lambda^{r-1}; a disagreement throws InvariantViolation.
// Throws InvalidInput for an empty word or out-of-range symbols.
double cylinder(const MarkovMeasure& m, const Word& w);

// -sum_i pi_i sum_j p_ij log p_ij with 0 log 0 = 0.
double markov_entropy(const std::vector<Vector>& p, const Vector& pi);
inline double markov_entropy(const MarkovMeasure& m) { return markov_entropy(m.p, m.pi); }

struct ResolventVector {
    double t = 0.0;
    Vector a_t;           // (t - lambda) (tI - A^T)^{-1} 1
    double pairing = 0.0; // u^T a_t
};

// Throws InvalidInput unless t > perron.lambda; a numerically singular solve
// throws InvariantViolation.
ResolventVector resolvent_vector(const ZeroOneMatrix& a, const PerronData& perron, double t);

// Stationary vector of an irreducible stochastic matrix, by power iteration on
// the lazy chain (P + I) / 2 so periodic chains converge too.
Vector stationary_vector(const std::vector<Vector>& p, const PowerOptions& opts = {});

struct VariationalReport {
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    double log_r = 0.0;
    double parry_entropy = 0.0;
    std::vector<double> sample_entropies;  // in sample order
    double max_sample_entropy = 0.0;
    double max_entropy = 0.0;              // over samples and the Parry entry
    double gap = 0.0;                      // log_r - max_entropy
    std::size_t violations = 0;            // samples with entropy > log_r + 1e-9
    std::size_t strictly_below = 0;        // samples with entropy < log_r - 1e-9
};

// Samples compatible stochastic matrices (each row symmetric Dirichlet(1) on
// the allowed positions) from generators seeded by (seed, index), so the
// result does not depend on how samples are split across threads.
VariationalReport variational_scan(const ZeroOneMatrix& a, std::size_t n_samples, std::uint64_t seed,
                                   const PowerOptions& opts = {}, unsigned threads = 0);

// The sampled matrix with the given index, exposed for reproduction.
std::vector<Vector> sample_compatible_matrix(const ZeroOneMatrix& a, std::uint64_t seed, std::uint64_t index);

}  // namespace shiftkms
