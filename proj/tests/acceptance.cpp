// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <limits>
#include <numeric>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "shiftkms/equilibrium.hpp"
#include "shiftkms/krieger.hpp"
#include "shiftkms/spectral.hpp"
#include "shiftkms/subshift.hpp"
#include "shiftkms/tracespace.hpp"

using namespace shiftkms;

namespace {

const ZeroOneMatrix kGolden({{1, 1}, {1, 0}});
const double kPhi = std::numbers::phi;

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok) detail << "; ";
            detail << what;
            ok = false;
        }
    }
};

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << x;
    return s.str();
}

std::vector<ZeroOneMatrix> random_matrices(std::uint64_t base, int count, int max_dim) {
    std::vector<ZeroOneMatrix> out;
    for (int i = 0; i < count; ++i) out.emplace_back(oracle::random_irreducible(base + static_cast<std::uint64_t>(i), max_dim));
    return out;
}

double oracle_log_r(const ZeroOneMatrix& a) { return std::log(oracle::spectral_radius(a.to_rows())); }

void cuntz(Outcome& o) {
    for (int d = 2; d <= 6; ++d) {
        const double kms = kms_temperature(ZeroOneMatrix::ones(static_cast<std::size_t>(d))).kms_beta;
        const double exact = *topological_entropy(SubshiftSpec::full(d), 8).exact;
        const double err = std::max(std::fabs(kms - std::log(d)), std::fabs(exact - std::log(d)));
        o.check(err <= 1e-12, "d=" + std::to_string(d) + " error " + fmt(err));
    }
}

void golden_chain(Outcome& o) {
    const double log_phi = std::log(kPhi);
    const double r = spectral_radius(kGolden);
    o.check(std::fabs(r - kPhi) <= 1e-10, "spectral radius off by " + fmt(r - kPhi));
    const auto est = topological_entropy(SubshiftSpec::sft(kGolden), 30);
    o.check(std::fabs(est.extrapolated - log_phi) <= 5e-3, "extrapolated entropy off by " + fmt(est.extrapolated - log_phi));
    const double h = markov_entropy(parry_measure(kGolden));
    o.check(std::fabs(h - log_phi) <= 1e-9, "parry entropy off by " + fmt(h - log_phi));
    const double kms = kms_temperature(kGolden).kms_beta;
    o.check(std::fabs(kms - log_phi) <= 1e-10, "kms beta off by " + fmt(kms - log_phi));
    o.check(std::fabs(kms - h) <= 1e-9 && std::fabs(kms - std::log(r)) <= 1e-12, "chain disagrees with kms beta");
}

void growth_of_traces(Outcome& o) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> weight(0.05, 1.0);
    for (const auto& a : random_matrices(3100, 5, 6)) {
        const double log_r = oracle_log_r(a);
        for (int k = 0; k < 3; ++k) {
            Vector t(a.dim());
            for (double& x : t) x = weight(rng);
            const double rate = temperature_from_trace(a, TraceVector::normalized(t), 300);
            o.check(std::fabs(rate - log_r) < 1e-2, "rate off by " + fmt(rate - log_r));
        }
    }
}

void variational(Outcome& o) {
    std::vector<ZeroOneMatrix> mats{ZeroOneMatrix::ones(2), kGolden};
    for (auto& a : random_matrices(4100, 3, 5)) mats.push_back(a);
    const std::size_t cycle[] = {1, 2, 0};
    mats.push_back(ZeroOneMatrix::permutation(cycle));
    for (const auto& a : mats) {
        const auto r = variational_scan(a, 1000, 7);
        const double log_r = oracle_log_r(a);
        o.check(r.violations == 0, std::to_string(r.violations) + " violations (d=" + std::to_string(a.dim()) + ")");
        o.check(std::fabs(r.parry_entropy - log_r) <= 1e-9, "parry entry off by " + fmt(r.parry_entropy - log_r));
    }
}

void resolvent(Outcome& o) {
    std::vector<ZeroOneMatrix> mats{kGolden, ZeroOneMatrix::ones(3)};
    for (auto& a : random_matrices(5100, 3, 6)) mats.push_back(a);
    for (const auto& a : mats) {
        const PerronData p = perron_vectors(a);
        Vector v = p.v;
        const double vs = std::accumulate(v.begin(), v.end(), 0.0);
        for (double& x : v) x /= vs;
        double last = std::numeric_limits<double>::infinity();
        for (double offset : {0.5, 0.1, 0.01, 1e-4}) {
            const auto r = resolvent_vector(a, p, p.lambda + offset);
            if (offset >= 0.01) o.check(std::fabs(r.pairing - 1.0) <= 1e-10, "pairing off by " + fmt(r.pairing - 1.0));
            const double s = std::accumulate(r.a_t.begin(), r.a_t.end(), 0.0);
            double dist = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) dist += std::fabs(r.a_t[i] / s - v[i]);
            o.check(dist <= last + 1e-14, "distance not decreasing at offset " + fmt(offset));
            if (offset == 1e-4) o.check(dist < 1e-3, "distance " + fmt(dist) + " at lambda+1e-4");
            last = dist;
        }
    }
}

void krieger_counts(Outcome& o) {
    for (int d = 2; d <= 3; ++d)
        for (int l = 1; l <= 8; ++l) {
            const auto q = dim_q(SubshiftSpec::full(d), l, 12);
            o.check(q.value == 1, "full(" + std::to_string(d) + ") l=" + std::to_string(l) + " gives " + std::to_string(q.value));
        }
    for (int l = 1; l <= 8; ++l) {
        const auto q = dim_q(SubshiftSpec::sft(kGolden), l, 12);
        o.check(q.value == 2 && q.stabilized, "golden mean l=" + std::to_string(l) + " gives " + std::to_string(q.value));
    }
    const auto beta = SubshiftSpec::beta(1.7, 64);
    const auto brute = oracle::class_counts(oracle::beta(1.7), 8, 12);
    for (int l = 1; l <= 8; ++l) {
        const auto part = omega_l(beta, l, 12);
        const auto q = dim_q(beta, l, 12);
        const auto want = static_cast<std::size_t>(l + 1);
        o.check(part.class_count == want && q.value == want && brute[static_cast<std::size_t>(l - 1)] == want,
                "beta(1.7) l=" + std::to_string(l) + ": omega " + std::to_string(part.class_count) + ", dim_q " +
                    std::to_string(q.value) + ", brute force " + std::to_string(brute[static_cast<std::size_t>(l - 1)]));
    }
}

void bracket(Outcome& o) {
    const std::vector<std::pair<std::string, SubshiftSpec>> sofic{
        {"full(2)", SubshiftSpec::full(2)},
        {"full(3)", SubshiftSpec::full(3)},
        {"golden mean", SubshiftSpec::sft(kGolden)},
        {"no 11", SubshiftSpec::forbidden(2, {{1, 1}})},
        {"no 111, 212", SubshiftSpec::forbidden(2, {{1, 1, 1}, {2, 1, 2}})},
        {"even shift (cap 9)", SubshiftSpec::even_shift(9)},
        {"beta(phi)", SubshiftSpec::beta(kPhi, 64)},
    };
    for (const auto& [name, spec] : sofic) {
        const auto b = entropy_bracket(spec, 30, 12);
        o.check(b.sofic_detected && b.upper - b.lower == 0.0, name + " width " + fmt(b.upper - b.lower));
    }
    const auto b = entropy_bracket(SubshiftSpec::beta(1.7, 256), 100, 12);
    const double c100 = b.correction_sequence.back();
    o.check(std::fabs(c100 - 2.0 * std::log(101.0) / 100.0) <= 1e-12, "beta(1.7) correction at n=100 is " + fmt(c100));
    o.check(c100 < 0.1 && b.correction < 0.1 && !b.sofic_detected, "beta(1.7) correction " + fmt(b.correction));
}

void structural(Outcome& o) {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> weight(0.1, 1.0);
    std::vector<ZeroOneMatrix> mats{kGolden, ZeroOneMatrix::ones(3)};
    for (auto& a : random_matrices(8100, 3, 6)) mats.push_back(a);
    for (const auto& a : mats) {
        Vector boundary(a.dim());
        for (double& x : boundary) x = weight(rng);
        const auto seq = coherent_from_boundary(a, boundary, 10);
        const auto ts = t_prime(s_prime(seq));
        const auto st = s_prime(t_prime(seq));
        o.check(std::equal(ts.levels.begin(), ts.levels.end(), seq.levels.begin()), "t' s' is not the identity");
        o.check(std::equal(st.levels.begin() + 0, st.levels.end(), seq.levels.begin()), "s' t' is not the identity");
        o.check(seq.max_residual() == 0.0, "truncation not coherent");

        const auto eig = kms_eigen_sequence(a, 12);
        const auto h = h_iterate(eig, 3);
        double err = 0.0;
        for (std::size_t r = 0; r < h.levels.size(); ++r)
            for (std::size_t k = 0; k < a.dim(); ++k) err = std::max(err, std::fabs(h.levels[r][k] - eig.levels[r][k]));
        o.check(err <= 1e-12, "h moves the eigen-sequence by " + fmt(err));

        for (const auto* s : {&seq, &eig}) {
            const auto w = normalization_weights(*s);
            for (double x : w) o.check(std::fabs(x - w.front()) <= 1e-9, "normalization drifts by " + fmt(x - w.front()));
        }
    }
}

void oracle_equivalence(Outcome& o) {
    const std::vector<std::pair<SubshiftSpec, oracle::Language>> cases{
        {SubshiftSpec::full(2), oracle::full(2)},
        {SubshiftSpec::full(3), oracle::full(3)},
        {SubshiftSpec::sft(kGolden), oracle::sft({{1, 1}, {1, 0}})},
        {SubshiftSpec::sft(ZeroOneMatrix({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})), oracle::sft({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})},
        {SubshiftSpec::forbidden(2, {{1, 1, 1}, {2, 1, 2}}), oracle::forbidden(2, {{1, 1, 1}, {2, 1, 2}})},
        {SubshiftSpec::forbidden(3, {{1, 2}, {3, 3}, {2, 1, 1}}), oracle::forbidden(3, {{1, 2}, {3, 3}, {2, 1, 1}})},
        {SubshiftSpec::forbidden(2, {{2, 2}, {1, 2, 1}}), oracle::forbidden(2, {{2, 2}, {1, 2, 1}})},
        {SubshiftSpec::beta(1.7, 64), oracle::beta(1.7)},
        {SubshiftSpec::beta(2.5, 64), oracle::beta(2.5)},
    };
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto& [spec, lang] = cases[c];
        const auto brute = oracle::brute_counts(lang, 12);
        for (int n = 1; n <= 12; ++n) {
            const BigInt got = count_words(spec, n);
            o.check(got == brute[static_cast<std::size_t>(n - 1)],
                    "case " + std::to_string(c) + " n=" + std::to_string(n) + ": " + got.str() + " vs " +
                        std::to_string(brute[static_cast<std::size_t>(n - 1)]));
        }
        if (c == 1 || c == 8) continue;  // large alphabets: counts only
        for (int depth = 1; depth <= 8; depth += 3) {
            const auto words = oracle::words_of_length(lang, depth);
            for (std::size_t i = 0; i < words.size(); i += 1 + words.size() / 12)
                for (int l = 0; l <= 4; ++l) {
                    const bool same = predecessor_set(words[i], l, spec) == oracle::predecessors(lang, words[i], l);
                    o.check(same, "case " + std::to_string(c) + " predecessor set differs at l=" + std::to_string(l));
                }
        }
    }
}

void measure_consistency(Outcome& o) {
    std::vector<ZeroOneMatrix> mats{kGolden};
    for (auto& a : random_matrices(10100, 3, 4)) mats.push_back(a);
    for (const auto& a : mats) {
        const auto m = parry_measure(a);
        const int d = static_cast<int>(a.dim());
        double worst = 0.0;
        oracle::Language lang = oracle::sft(a.to_rows());
        for (int len = 1; len <= 8; ++len) {
            for (const auto& w : oracle::words_of_length(lang, len)) {
                const double c = cylinder(m, w);
                double right = 0.0, left = 0.0;
                for (int s = 1; s <= d; ++s) {
                    Word wr = w;
                    wr.push_back(s);
                    Word wl{s};
                    wl.insert(wl.end(), w.begin(), w.end());
                    right += cylinder(m, wr);
                    left += cylinder(m, wl);
                }
                worst = std::max({worst, std::fabs(right - c), std::fabs(left - c)});
            }
        }
        o.check(worst <= 1e-10, "d=" + std::to_string(d) + " defect " + fmt(worst));
    }
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    void (*run)(Outcome&);
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "full shifts: kms beta = entropy = log d", 1.0, cuntz},
        {2, "golden mean: radius, entropy, Parry entropy, kms beta agree", 5.0, golden_chain},
        {3, "trace growth rates converge to log r(A) at n = 300", 5.0, growth_of_traces},
        {4, "variational dominance over 1000 sampled measures", 30.0, variational},
        {5, "resolvent pairing and limit", 1.0, resolvent},
        {6, "Krieger class counts (full, golden mean, beta 1.7)", 60.0, krieger_counts},
        {7, "entropy bracket: sofic width 0, beta(1.7) correction < 0.1", 10.0, bracket},
        {8, "trace-space identities: s'/t' inverses, h fixed points, normalization", 1.0, structural},
        {9, "word counts and predecessor sets match brute force", 60.0, oracle_equivalence},
        {10, "Parry cylinders: Kolmogorov consistency and shift invariance", 5.0, measure_consistency},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.check(secs < c.budget_seconds, "took " + fmt(secs) + " s, budget " + fmt(c.budget_seconds) + " s");
        std::printf("[%s] %2d  %s  (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.ok ? "" : "  -- ",
                    o.detail.str().c_str());
        failures += o.ok ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
    return failures == 0 ? 0 : 1;
}
