#include <atomic>
#include <cassert>

#include "variants.hpp"

namespace shiftkms::kernels {
namespace {

const KernelTable* initial_table() noexcept {
    if (const auto* t = avx2_table()) return t;
    if (const auto* t = neon_table()) return t;
    return &scalar_table();
}

std::atomic<const KernelTable*>& current() noexcept {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return detail::scalar_variant(); }

const KernelTable* avx2_table() noexcept {
#if defined(SHIFTKMS_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &detail::avx2_variant() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable* neon_table() noexcept {
#if defined(SHIFTKMS_HAVE_NEON)
    // Advanced SIMD is mandatory on aarch64.
    return &detail::neon_variant();
#else
    return nullptr;
#endif
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

bool select_backend(Backend backend) noexcept {
    const KernelTable* table = nullptr;
    switch (backend) {
        case Backend::Scalar: table = &scalar_table(); break;
        case Backend::Avx2: table = avx2_table(); break;
        case Backend::Neon: table = neon_table(); break;
    }
    if (table == nullptr) return false;
    current().store(table, std::memory_order_release);
    return true;
}

Backend best_available() noexcept { return initial_table()->backend; }

std::string_view backend_name(Backend backend) noexcept {
    switch (backend) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "unknown";
}

void matvec(std::span<const double> a, std::span<const double> x, std::span<double> y) {
    assert(a.size() == x.size() * x.size() && y.size() == x.size());
    active().matvec(a.data(), x.size(), x.data(), y.data());
}

void matvec_transposed(std::span<const double> a, std::span<const double> x, std::span<double> y) {
    assert(a.size() == x.size() * x.size() && y.size() == x.size());
    active().matvec_transposed(a.data(), x.size(), x.data(), y.data());
}

double dot(std::span<const double> x, std::span<const double> y) {
    assert(x.size() == y.size());
    return active().dot(x.data(), y.data(), x.size());
}

double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

double l1_distance(std::span<const double> x, std::span<const double> y) {
    assert(x.size() == y.size());
    return active().l1_distance(x.data(), y.data(), x.size());
}

void scale(std::span<double> x, double factor) { active().scale(x.data(), x.size(), factor); }

}  // namespace shiftkms::kernels
