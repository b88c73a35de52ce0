// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "variants.hpp"

namespace shiftkms::kernels::detail {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void matvec(const double* a, std::size_t n, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] = dot(a + i * n, x, n);
}

void matvec_transposed(const double* a, std::size_t n, const double* x, double* y) {
    for (std::size_t j = 0; j < n; ++j) y[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = a + i * n;
        const __m256d xi = _mm256_set1_pd(x[i]);
        std::size_t j = 0;
        for (; j + 4 <= n; j += 4) {
            const __m256d acc = _mm256_loadu_pd(y + j);
            _mm256_storeu_pd(y + j, _mm256_fmadd_pd(xi, _mm256_loadu_pd(row + j), acc));
        }
        for (; j < n; ++j) y[j] = std::fma(x[i], row[j], y[j]);
    }
}

double sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double total = hsum(acc);
    for (; i < n; ++i) total += x[i];
    return total;
}

double l1_distance(const double* x, const double* y, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, diff));
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += std::fabs(x[i] - y[i]);
    return total;
}

void scale(double* x, std::size_t n, double factor) {
    const __m256d f = _mm256_set1_pd(factor);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), f));
    for (; i < n; ++i) x[i] *= factor;
}

}  // namespace

const KernelTable& avx2_variant() noexcept {
    static const KernelTable table{Backend::Avx2, "avx2", matvec, matvec_transposed,
                                   dot,           sum,    l1_distance, scale};
    return table;
}

}  // namespace shiftkms::kernels::detail
