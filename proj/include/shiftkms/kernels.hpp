#pragma once

// Dense double-precision kernels used by the iterative solvers.
//
// Every kernel has a portable scalar reference implementation. On x86-64 an
// AVX2+FMA variant and on aarch64 a NEON variant are compiled alongside it and
// selected once at startup from the CPU's feature bits. Matrices are square,
// row-major, with `n` rows of `n` entries.
//
// Vectorized variants reassociate sums, so results agree with the scalar
// reference to rounding, not bit-for-bit, unless every partial sum is exact
// (e.g. small-integer inputs).

#include <cstddef>
#include <span>
#include <string_view>

namespace shiftkms::kernels {

enum class Backend { Scalar, Avx2, Neon };

struct KernelTable {
    Backend backend;
    std::string_view name;
    // y = A x
    void (*matvec)(const double* a, std::size_t n, const double* x, double* y);
    // y = A^T x
    void (*matvec_transposed)(const double* a, std::size_t n, const double* x, double* y);
    double (*dot)(const double* x, const double* y, std::size_t n);
    double (*sum)(const double* x, std::size_t n);
    double (*l1_distance)(const double* x, const double* y, std::size_t n);
    void (*scale)(double* x, std::size_t n, double factor);
};

const KernelTable& scalar_table() noexcept;

// Null when the variant was not compiled in or the CPU lacks the feature.
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;

// The table used by the library. Defaults to the best supported variant.
const KernelTable& active() noexcept;

// Returns false (and leaves the selection unchanged) if `backend` is unavailable.
bool select_backend(Backend backend) noexcept;

Backend best_available() noexcept;

std::string_view backend_name(Backend backend) noexcept;

// Span conveniences over the active table. Sizes are checked with assertions only.
void matvec(std::span<const double> a, std::span<const double> x, std::span<double> y);
void matvec_transposed(std::span<const double> a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> x);
double l1_distance(std::span<const double> x, std::span<const double> y);
void scale(std::span<double> x, double factor);

}  // namespace shiftkms::kernels
