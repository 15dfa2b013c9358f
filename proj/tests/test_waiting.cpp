#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dtrw/specfn.hpp"
#include "dtrw/waiting.hpp"

using namespace dtrw;

TEST_CASE("Sibuya pmf and survival, first values")
{
    const SibuyaModel s(0.5);
    CHECK(s.pmf(0) == 0.0);
    CHECK(s.pmf(1) == doctest::Approx(0.5));
    CHECK(s.pmf(2) == doctest::Approx(0.125));
    CHECK(s.pmf(3) == doctest::Approx(0.0625));
    CHECK(s.survival(0) == 1.0);
    CHECK(s.survival(1) == doctest::Approx(0.5));
    CHECK(s.survival(2) == doctest::Approx(0.375));
    CHECK(sibuya_pmf(s, 1) == s.pmf(1));
    CHECK(sibuya_survival(s, 2) == s.survival(2));
}

TEST_CASE("Sibuya survival is binom(m - alpha, m) and telescopes the pmf")
{
    for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
        const SibuyaModel s(alpha);
        double cdf = 0.0;
        for (std::int64_t m = 1; m <= 3000; ++m) {
            cdf += s.pmf(m);
            CHECK(std::abs(cdf - (1.0 - s.survival(m))) < 1e-13);
            if (m % 97 == 0) {
                // m - alpha in long double: rounding it in double alone costs ~1e-12.
                const auto ref = static_cast<double>(
                    gen_binomial(static_cast<long double>(m) - static_cast<long double>(alpha), m));
                CHECK(std::abs(s.survival(m) - ref) < 1e-12 * ref);
            }
        }
    }
}

TEST_CASE("survival past the table follows the Gamma-ratio closed form")
{
    const SibuyaModel s(0.6);
    const std::int64_t m = SibuyaModel::kTableLimit + 12345;
    const double expected = std::exp(std::lgamma(m + 1 - 0.6) - std::lgamma(m + 1.0) - std::lgamma(0.4));
    CHECK(s.survival(m) == doctest::Approx(expected).epsilon(1e-10));
    // Continuity across the table limit.
    const std::int64_t edge = SibuyaModel::kTableLimit;
    CHECK(s.survival(edge) == doctest::Approx(s.survival(edge - 1) * (1.0 - 0.6 / edge)).epsilon(1e-10));
}

TEST_CASE("stratified uniforms land in exactly the survival brackets")
{
    for (double alpha : {0.3, 0.5, 0.9}) {
        const SibuyaModel s(alpha);
        const int strata = 20000;
        for (int j = 0; j < strata; ++j) {
            const double u = (j + 0.5) / strata;
            const std::int64_t m = s.sample(u);
            REQUIRE(m >= 1);
            CHECK(s.survival(m) <= u);
            CHECK(u < s.survival(m - 1));
        }
        for (std::int64_t m : {1, 2, 10, 1000, 100000}) {
            CHECK(s.sample(s.survival(m)) == m);
            CHECK(s.sample(std::nextafter(s.survival(m), 0.0)) > m);
        }
    }
}

TEST_CASE("far-tail draws bracket correctly or saturate")
{
    const SibuyaModel s(0.5);
    const double u = 1e-7;
    const std::int64_t m = s.sample(u);
    CHECK(m > SibuyaModel::kTableLimit);
    CHECK(s.survival(m) <= u);
    CHECK(u < s.survival(m - 1));
    CHECK(s.sample(1e-300) == kUnboundedWait);
    CHECK(s.sample(0.0) == kUnboundedWait);
    CHECK_THROWS_AS(s.sample(1.0), std::domain_error);
    CHECK_THROWS_AS(s.sample(-0.1), std::domain_error);
}

TEST_CASE("alpha = 1 gives unit waits")
{
    const SibuyaModel s(1.0);
    CHECK(s.pmf(1) == 1.0);
    CHECK(s.pmf(2) == 0.0);
    CHECK(s.survival(1) == 0.0);
    for (double u : {0.0, 1e-12, 0.3, 0.999999})
        CHECK(s.sample(u) == 1);
    const auto k = memory_kernel(WaitingTimeModel{s}, 50);
    CHECK(k[1] == 1.0);
    for (std::int64_t m = 2; m <= 50; ++m)
        CHECK(k[m] == 0.0);
}

TEST_CASE("geometric waits")
{
    const GeometricModel g(0.3);
    CHECK(g.pmf(1) == doctest::Approx(0.3));
    CHECK(g.pmf(3) == doctest::Approx(0.3 * 0.49));
    CHECK(geometric_pmf(g, 3) == g.pmf(3));
    CHECK(g.survival(2) == doctest::Approx(0.49));
    for (int j = 0; j < 5000; ++j) {
        const double u = (j + 0.5) / 5000;
        const std::int64_t m = g.sample(u);
        CHECK(g.survival(m) <= u);
        CHECK(u < g.survival(m - 1));
    }
    CHECK(GeometricModel(1.0).sample(0.7) == 1);
    const auto k = memory_kernel(WaitingTimeModel{g}, 10);
    CHECK(k[1] == 0.3);
    CHECK(k.coefficients.sum() == 0.3);
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS(SibuyaModel(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SibuyaModel(1.01), std::invalid_argument);
    CHECK_THROWS_AS(GeometricModel(0.0), std::invalid_argument);
    CHECK_THROWS_AS(GeometricModel(1.5), std::invalid_argument);
}

TEST_CASE("copies own an independent table")
{
    SibuyaModel a(0.4);
    (void)a.survival(5000);
    const SibuyaModel b = a;
    CHECK(b.table_size() == a.table_size());
    CHECK(b.survival(4321) == a.survival(4321));
    (void)a.survival(100000);
    CHECK(a.table_size() > b.table_size());
}

TEST_CASE("kernel convolution identity K * Phi = phi")
{
    for (double alpha : {0.3, 0.5, 0.7, 0.9, 1.0}) {
        const WaitingTimeModel w = SibuyaModel(alpha);
        const std::int64_t n_max = 2000;
        const auto k = memory_kernel(w, n_max);
        CHECK(k[0] == 0.0);
        CHECK(k[1] == alpha);
        double worst = 0.0;
        for (std::int64_t n = 1; n <= n_max; ++n) {
            double conv = 0.0;
            for (std::int64_t j = 1; j <= n; ++j)
                conv += k[j] * waiting_survival(w, n - j);
            worst = std::max(worst, std::abs(conv - waiting_pmf(w, n)));
        }
        CAPTURE(alpha);
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("kernel equals the product and binomial forms")
{
    for (double alpha : {0.3, 0.5, 0.8}) {
        const auto k = memory_kernel(WaitingTimeModel{SibuyaModel(alpha)}, 300);
        const auto kl = memory_kernel<long double>(WaitingTimeModel{SibuyaModel(alpha)}, 300);
        double product = 1.0;
        for (std::int64_t m = 1; m <= 300; ++m) {
            product *= 1.0 - (2.0 - alpha) / static_cast<double>(m);
            if (m < 2)
                continue;
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            CHECK(k[m] == doctest::Approx(product).epsilon(1e-12));
            CHECK(k[m] == doctest::Approx(sign * gen_binomial(1.0 - alpha, m)).epsilon(1e-11));
            CHECK(static_cast<double>(kl[m]) == doctest::Approx(k[m]).epsilon(1e-13));
            CHECK(k[m] < 0.0);
        }
    }
}
