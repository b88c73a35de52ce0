#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "shiftkms/errors.hpp"
#include "shiftkms/spectral.hpp"

using namespace shiftkms;

namespace {

const ZeroOneMatrix kGolden({{1, 1}, {1, 0}});
const ZeroOneMatrix kSwap({{0, 1}, {1, 0}});
const std::size_t kCycle3[] = {1, 2, 0};

double l1_residual(const NonnegativeMatrix& a, const Vector& x, double lambda, bool transposed) {
    const Vector ax = transposed ? a.apply_transposed(x) : a.apply(x);
    double r = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) r += std::fabs(ax[i] - lambda * x[i]);
    return r;
}

}  // namespace

TEST_SUITE("spectral") {
    TEST_CASE("matrix validation") {
        CHECK_THROWS_AS(NonnegativeMatrix({{1, -1}, {0, 1}}), InvalidInput);
        CHECK_THROWS_AS(NonnegativeMatrix(std::vector<std::vector<double>>{{1, 1}}), InvalidInput);
        CHECK_THROWS_AS(NonnegativeMatrix(std::vector<std::vector<double>>{}), InvalidInput);
        CHECK_THROWS_AS(ZeroOneMatrix({{0, 2}, {1, 0}}), InvalidInput);
        CHECK(ZeroOneMatrix({{1, 0}, {0, 0}}).has_zero_row());
        CHECK(ZeroOneMatrix({{1, 0}, {1, 0}}).has_zero_column());
        CHECK_THROWS_AS(ZeroOneMatrix({{1, 0}, {1, 0}}).require_cuntz_krieger(), InvalidInput);
        CHECK(ZeroOneMatrix::permutation(kCycle3)(0, 1));
    }

    TEST_CASE("irreducible and aperiodic") {
        CHECK(irreducible(kSwap));
        CHECK_FALSE(irreducible(ZeroOneMatrix({{1, 1}, {0, 1}})));
        CHECK(irreducible(kGolden));
        CHECK_FALSE(aperiodic(kSwap));
        CHECK(aperiodic(kGolden));
        CHECK_FALSE(aperiodic(ZeroOneMatrix::permutation(kCycle3)));
        CHECK(period(ZeroOneMatrix::permutation(kCycle3)) == 3);
        CHECK_THROWS_AS(aperiodic(ZeroOneMatrix({{1, 1}, {0, 1}})), PreconditionViolation);
        CHECK_FALSE(irreducible(ZeroOneMatrix(std::vector<std::vector<int>>{{0}})));
        CHECK(irreducible(ZeroOneMatrix(std::vector<std::vector<int>>{{1}})));
    }

    TEST_CASE("irreducibility agrees with a reachability oracle on random matrices") {
        std::mt19937_64 rng(5);
        std::bernoulli_distribution bit(0.35);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t d = 1 + trial % 6;
            std::vector<std::vector<int>> rows(d, std::vector<int>(d));
            for (auto& r : rows)
                for (auto& x : r) x = bit(rng);
            CHECK(irreducible(ZeroOneMatrix(rows)) == oracle::strongly_connected(rows));
        }
    }

    TEST_CASE("spectral radius") {
        CHECK(spectral_radius(kGolden) == doctest::Approx(std::numbers::phi).epsilon(1e-12));
        for (std::size_t d = 1; d <= 5; ++d) {
            CHECK(spectral_radius(ZeroOneMatrix::identity(d)) == 1.0);
            CHECK(spectral_radius(ZeroOneMatrix::ones(d)) == doctest::Approx(static_cast<double>(d)).epsilon(1e-12));
        }
        CHECK(spectral_radius(ZeroOneMatrix::permutation(kCycle3)) == 1.0);
        CHECK(spectral_radius(kSwap) == 1.0);
        CHECK_THROWS_AS(spectral_radius(NonnegativeMatrix({{0, 0}, {0, 0}})), InvalidInput);
        // Reducible: maximum over the diagonal blocks.
        CHECK(spectral_radius(NonnegativeMatrix({{2, 1}, {0, 3}})) == doctest::Approx(3.0));
        CHECK(spectral_radius(NonnegativeMatrix({{0, 1}, {0, 0}})) == 0.0);
    }

    TEST_CASE("spectral radius agrees with a dense eigen-solver") {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const auto rows = oracle::random_irreducible(seed, 8, 0.3);
            const ZeroOneMatrix a(rows);
            const double r = spectral_radius(a);
            CHECK(r == doctest::Approx(oracle::spectral_radius(rows)).epsilon(1e-10));
            CHECK(spectral_radius(a.transposed()) == doctest::Approx(r).epsilon(2e-12));
        }
    }

    TEST_CASE("Perron vectors satisfy their normalizations") {
        SUBCASE("ones") {
            const auto p = perron_vectors(ZeroOneMatrix::ones(2));
            CHECK(p.lambda == doctest::Approx(2.0));
            CHECK(p.u[0] == doctest::Approx(0.5));
            CHECK(p.v[1] == doctest::Approx(1.0));
        }
        SUBCASE("golden mean") {
            const double phi = std::numbers::phi;
            const auto p = perron_vectors(kGolden);
            CHECK(p.lambda == doctest::Approx(phi).epsilon(1e-12));
            CHECK(p.u[0] == doctest::Approx(phi / (phi + 1)).epsilon(1e-12));
            // v is proportional to (phi, 1) with sum u_i v_i = 1.
            const double c = 1.0 / (phi * phi / (phi + 1) + 1.0 / (phi + 1));
            CHECK(p.v[0] == doctest::Approx(c * phi).epsilon(1e-11));
            CHECK(p.v[1] == doctest::Approx(c).epsilon(1e-11));
        }
        SUBCASE("swap is periodic") {
            const auto p = perron_vectors(kSwap);
            CHECK(p.lambda == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(p.u[0] == doctest::Approx(0.5));
            CHECK(p.v[0] == doctest::Approx(1.0));
        }
        SUBCASE("random matrices") {
            for (std::uint64_t seed = 100; seed < 130; ++seed) {
                const ZeroOneMatrix a(oracle::random_irreducible(seed, 8, 0.3));
                const auto p = perron_vectors(a);
                double su = 0, suv = 0;
                for (std::size_t i = 0; i < a.dim(); ++i) {
                    CHECK(p.u[i] > 0.0);
                    CHECK(p.v[i] > 0.0);
                    su += p.u[i];
                    suv += p.u[i] * p.v[i];
                }
                CHECK(std::fabs(su - 1) < 1e-12);
                CHECK(std::fabs(suv - 1) < 1e-12);
                CHECK(l1_residual(a.values(), p.u, p.lambda, false) <= 1e-12);
                CHECK(l1_residual(a.values(), p.v, p.lambda, true) <= 1e-12);
                CHECK(p.residual <= 1e-12);
            }
        }
        CHECK_THROWS_AS(perron_vectors(ZeroOneMatrix({{1, 1}, {0, 1}})), PreconditionViolation);
    }

    TEST_CASE("an iteration cap that is too small reports the last iterate") {
        try {
            perron_vectors(ZeroOneMatrix({{1, 1, 0}, {0, 0, 1}, {1, 0, 1}}), PowerOptions{1e-12, 2});
            FAIL("expected ConvergenceError");
        } catch (const ConvergenceError& e) {
            CHECK(e.last_iterate().size() == 3);
            CHECK(e.residual() > 0.0);
        }
    }

    TEST_CASE("per-component Perron data") {
        const NonnegativeMatrix blocks({{1, 1, 0, 0, 0},
                                        {1, 1, 0, 0, 0},
                                        {0, 0, 1, 1, 1},
                                        {0, 0, 1, 1, 1},
                                        {0, 0, 1, 1, 1}});
        const auto s = perron_by_component(blocks);
        CHECK(s.components.size() == 2);
        CHECK(s.min_lambda == doctest::Approx(2.0));
        CHECK(s.max_lambda == doctest::Approx(3.0));
        const auto t = perron_by_component(NonnegativeMatrix({{1, 1, 0}, {0, 0, 1}, {0, 0, 1}}));
        CHECK(t.acyclic_components == 1);
        CHECK(t.min_lambda == doctest::Approx(1.0));
    }

    TEST_CASE("column sums of powers") {
        // A^3 = 4 * ones for ones(2).
        CHECK(column_sum_powers(ZeroOneMatrix::ones(2), 3) == std::vector<std::uint64_t>{8, 8});
        CHECK(column_sum_powers(ZeroOneMatrix::identity(3), 7) == std::vector<std::uint64_t>{1, 1, 1});
        CHECK(column_sum_powers(kGolden, 2) == std::vector<std::uint64_t>{3, 2});
        CHECK_THROWS_AS(column_sum_powers(ZeroOneMatrix::ones(2), 70), OverflowError);
        const auto big = column_sum_powers_big(ZeroOneMatrix::ones(2), 70);
        CHECK(big[0] == (BigInt(1) << 70));
        // Agreement between the two on a random matrix.
        const ZeroOneMatrix a(oracle::random_irreducible(77, 5));
        const auto small = column_sum_powers(a, 12);
        const auto large = column_sum_powers_big(a, 12);
        for (std::size_t k = 0; k < a.dim(); ++k) CHECK(BigInt(small[k]) == large[k]);
    }

    TEST_CASE("bracket sequences") {
        const auto id = spectral_radius_bracket_sequences(ZeroOneMatrix::identity(3), 5);
        for (double x : id.lower) CHECK(x == doctest::Approx(1.0));
        for (double x : id.upper) CHECK(x == doctest::Approx(1.0));
        const auto g = spectral_radius_bracket_sequences(kGolden, 200);
        CHECK(g.lower[1] == doctest::Approx(std::sqrt(2.0)));
        CHECK(g.upper[1] == doctest::Approx(std::sqrt(3.0)));
        for (std::size_t n = 0; n < 200; ++n) {
            CHECK(g.lower[n] <= std::numbers::phi + 1e-12);
            CHECK(g.upper[n] >= std::numbers::phi - 1e-12);
        }
        CHECK(g.lower.back() == doctest::Approx(std::numbers::phi).epsilon(1e-2));
        const auto ones = spectral_radius_bracket_sequences(ZeroOneMatrix::ones(4), 50);
        CHECK(ones.lower.back() == doctest::Approx(4.0));
        CHECK(ones.upper.back() == doctest::Approx(4.0));
    }
}
