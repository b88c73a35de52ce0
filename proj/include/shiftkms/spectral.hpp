#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "shiftkms/matrix.hpp"

namespace shiftkms {

using BigInt = boost::multiprecision::cpp_int;

struct PowerOptions {
    double tol = 1e-12;
    int max_iter = 100000;
};

// Perron-Frobenius data of an irreducible nonnegative matrix.
//
// A u = lambda u and v^T A = lambda v^T with u normalized to sum 1 and v scaled
// so that sum_i u_i v_i = 1. `residual` is the larger of the two l1 eigen
// residuals after normalization.
struct PerronData {
    double lambda = 0.0;
    Vector u;
    Vector v;
    int iterations = 0;
    double residual = 0.0;
};

// Digraph helpers on the support of A (edge i -> j when A[i][j] > 0).
bool irreducible(const NonnegativeMatrix& a);
inline bool irreducible(const ZeroOneMatrix& a) { return irreducible(a.values()); }

// Components in ascending order of their smallest vertex; vertices sorted.
std::vector<std::vector<std::size_t>> strongly_connected_components(const NonnegativeMatrix& a);

// gcd of cycle lengths. Throws PreconditionViolation for reducible input.
std::size_t period(const NonnegativeMatrix& a);
inline std::size_t period(const ZeroOneMatrix& a) { return period(a.values()); }
inline bool aperiodic(const NonnegativeMatrix& a) { return period(a) == 1; }
inline bool aperiodic(const ZeroOneMatrix& a) { return period(a) == 1; }

// r(A) to within opts.tol. Reducible inputs take the maximum over strongly
// connected components. Throws InvalidInput for the zero matrix.
double spectral_radius(const NonnegativeMatrix& a, const PowerOptions& opts = {});
inline double spectral_radius(const ZeroOneMatrix& a, const PowerOptions& opts = {}) {
    return spectral_radius(a.values(), opts);
}

// Deterministic power iteration from the uniform vector; periodic matrices are
// iterated as A + I. Throws PreconditionViolation for reducible input and
// ConvergenceError when opts.max_iter is exhausted.
PerronData perron_vectors(const NonnegativeMatrix& a, const PowerOptions& opts = {});
inline PerronData perron_vectors(const ZeroOneMatrix& a, const PowerOptions& opts = {}) {
    return perron_vectors(a.values(), opts);
}

struct ComponentPerron {
    std::vector<std::size_t> indices;
    PerronData perron;
};

// Per-component Perron data for reducible matrices. Components without a
// cycle (a single vertex with no self-loop) have radius 0 and are only counted.
struct ComponentSpectrum {
    std::vector<ComponentPerron> components;
    std::size_t acyclic_components = 0;
    double min_lambda = 0.0;
    double max_lambda = 0.0;
};

ComponentSpectrum perron_by_component(const NonnegativeMatrix& a, const PowerOptions& opts = {});

// Column sums d_{r,k} = sum_i (A^r)[i][k], exactly. Throws OverflowError when a
// value does not fit in 64 bits; use the BigInt overload then.
std::vector<std::uint64_t> column_sum_powers(const ZeroOneMatrix& a, int r);
std::vector<BigInt> column_sum_powers_big(const ZeroOneMatrix& a, int r);

// lower[n-1] = min_k colsum(A^n)^(1/n), upper[n-1] = max_k colsum(A^n)^(1/n)
// for n = 1..n_max, evaluated with a running log scale so large powers do not
// overflow.
struct BracketSequences {
    std::vector<double> lower;
    std::vector<double> upper;
};

BracketSequences spectral_radius_bracket_sequences(const NonnegativeMatrix& a, int n_max);
inline BracketSequences spectral_radius_bracket_sequences(const ZeroOneMatrix& a, int n_max) {
    return spectral_radius_bracket_sequences(a.values(), n_max);
}

}  // namespace shiftkms
