#include <cmath>

#include "variants.hpp"

namespace shiftkms::kernels::detail {
namespace {

void matvec(const double* a, std::size_t n, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = a + i * n;
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

void matvec_transposed(const double* a, std::size_t n, const double* x, double* y) {
    for (std::size_t j = 0; j < n; ++j) y[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = a + i * n;
        const double xi = x[i];
        for (std::size_t j = 0; j < n; ++j) y[j] += xi * row[j];
    }
}

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double l1_distance(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i] - y[i]);
    return acc;
}

void scale(double* x, std::size_t n, double factor) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= factor;
}

}  // namespace

const KernelTable& scalar_variant() noexcept {
    static const KernelTable table{Backend::Scalar, "scalar", matvec, matvec_transposed,
                                   dot,             sum,      l1_distance, scale};
    return table;
}

}  // namespace shiftkms::kernels::detail
