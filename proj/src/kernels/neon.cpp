#include <arm_neon.h>

#include <cmath>

#include "variants.hpp"

namespace shiftkms::kernels::detail {
namespace {

double dot(const double* x, const double* y, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
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
        const float64x2_t xi = vdupq_n_f64(x[i]);
        std::size_t j = 0;
        for (; j + 2 <= n; j += 2) vst1q_f64(y + j, vfmaq_f64(vld1q_f64(y + j), xi, vld1q_f64(row + j)));
        for (; j < n; ++j) y[j] = std::fma(x[i], row[j], y[j]);
    }
}

double sum(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
    double total = vaddvq_f64(acc);
    for (; i < n; ++i) total += x[i];
    return total;
}

double l1_distance(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vabdq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    double total = vaddvq_f64(acc);
    for (; i < n; ++i) total += std::fabs(x[i] - y[i]);
    return total;
}

void scale(double* x, std::size_t n, double factor) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_n_f64(vld1q_f64(x + i), factor));
    for (; i < n; ++i) x[i] *= factor;
}

}  // namespace

const KernelTable& neon_variant() noexcept {
    static const KernelTable table{Backend::Neon, "neon", matvec, matvec_transposed,
                                   dot,           sum,    l1_distance, scale};
    return table;
}

}  // namespace shiftkms::kernels::detail
