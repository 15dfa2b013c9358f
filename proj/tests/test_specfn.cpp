#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dtrw/specfn.hpp"

using dtrw::gen_binomial;
using dtrw::mittag_leffler_neg;

namespace {

struct BinomialCase {
    double x;
    std::int64_t m;
    double value;
};

struct MlCase {
    double alpha;
    double x;
    double value;
};

// tests/oracles/specfn_oracle.py, 120-digit mpmath.
const BinomialCase kBinomialOracle[] = {
    {0.5, 3, 0.0625},
    {-0.3, 7, -0.084325848749999994925},
    {2.5, 100, -1.1056547675758021315e-7},
    {-1.7, 200, 45.042159038388772787},
    {0.3, 1000, -0.000029101324728067148192},
    {0.7, 5000, -1.2050406445789968816e-7},
    {-0.5, 65, -0.069844660691784246139},
};

const MlCase kMlOracle[] = {
    {0.3, 0.1, 0.8988115365027225481},     {0.3, 1.0, 0.45659440832969067062},
    {0.3, 3.0, 0.21180263319643578203},    {0.3, 8.0, 0.089493095818620724136},
    {0.3, 12.0, 0.061135915996519465044},  {0.3, 30.0, 0.025182617502927700311},
    {0.3, 100.0, 0.0076588562222866414911}, {0.3, 1000.0, 0.00076993246495257769278},
    {0.5, 0.1, 0.89645697996912663666},    {0.5, 1.0, 0.42758357615580700441},
    {0.5, 3.0, 0.17900115118138995042},    {0.5, 8.0, 0.069985166200880927723},
    {0.5, 12.0, 0.04685422101489376262},   {0.5, 30.0, 0.018795888861416751497},
    {0.5, 100.0, 0.0056416137829894329036}, {0.5, 1000.0, 0.0005641893014533876542},
    {0.7, 0.1, 0.89756112693138677065},    {0.7, 1.0, 0.39961197811559939027},
    {0.7, 3.0, 0.13789710966502708216},    {0.7, 8.0, 0.046069992385362385726},
    {0.7, 12.0, 0.029761168325449356606},  {0.7, 30.0, 0.011444251527526973394},
    {0.7, 100.0, 0.003369687416305994348}, {0.7, 1000.0, 0.00033454145717409959777},
    {0.9, 0.1, 0.90175694244985939876},    {0.9, 1.0, 0.37606602142464187902},
    {0.9, 3.0, 0.083888354033773262067},   {0.9, 8.0, 0.017095144580796805831},
    {0.9, 12.0, 0.010275288049933644937},  {0.9, 30.0, 0.003713707698459852111},
    {0.9, 100.0, 0.0010689724182870923703}, {0.9, 1000.0, 0.00010528835943209589052},
};

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

long double erfcx(long double x) { return std::exp(x * x) * std::erfc(x); }

}  // namespace

TEST_CASE("gen_binomial matches high-precision values")
{
    for (const auto& c : kBinomialOracle) {
        CAPTURE(c.x);
        CAPTURE(c.m);
        CHECK(rel_err(gen_binomial(c.x, c.m), c.value) < 1e-11);
    }
}

TEST_CASE("gen_binomial edge cases")
{
    CHECK(gen_binomial(3.7, 0) == 1.0);
    CHECK(gen_binomial(3.7, -1) == 0.0);
    CHECK(gen_binomial(5.0, 2) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(gen_binomial(5.0, 7) == 0.0);    // product route
    CHECK(gen_binomial(5.0, 100) == 0.0);  // log-gamma route
    CHECK(gen_binomial(-1.0, 101) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("gen_binomial obeys Pascal's rule on both routes")
{
    for (double x : {-2.3, -0.5, 0.25, 0.7, 3.3}) {
        for (std::int64_t m : {1, 5, 40, 64, 65, 66, 150, 400}) {
            CAPTURE(x);
            CAPTURE(m);
            const double lhs = gen_binomial(x, m);
            const double rhs = gen_binomial(x - 1.0, m) + gen_binomial(x - 1.0, m - 1);
            CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(std::abs(lhs), 1e-300) + 1e-300);
        }
    }
}

TEST_CASE("gen_binomial reflection binom(-x, m) = (-1)^m binom(x + m - 1, m)")
{
    for (double x : {0.3, 1.5, 2.75}) {
        for (std::int64_t m : {3, 63, 64, 65, 90, 300}) {
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            CHECK(rel_err(gen_binomial(-x, m), sign * gen_binomial(x + m - 1.0, m)) < 1e-11);
        }
    }
}

TEST_CASE("Mittag-Leffler matches high-precision values")
{
    for (const auto& c : kMlOracle) {
        CAPTURE(c.alpha);
        CAPTURE(c.x);
        CHECK(rel_err(mittag_leffler_neg(c.alpha, c.x), c.value) < 1e-10);
    }
}

TEST_CASE("Mittag-Leffler reduces to exp and erfcx")
{
    for (double x = 0.0; x <= 30.0; x += 0.25) {
        CAPTURE(x);
        CHECK(rel_err(mittag_leffler_neg(1.0, x), std::exp(-x)) < 1e-14);
        CHECK(rel_err(mittag_leffler_neg(0.5, x), static_cast<double>(erfcx(x))) < 1e-10);
    }
    CHECK(mittag_leffler_neg(0.5, 0.0) == 1.0);
}

TEST_CASE("evaluation routes agree where they overlap")
{
    for (double alpha : {0.4, 0.6, 0.8}) {
        const auto series = dtrw::mittag_leffler_power_series(alpha, 2.0, 200);
        REQUIRE(series.has_value());
        CHECK(rel_err(*series, dtrw::mittag_leffler_integral(alpha, 2.0)) < 1e-11);
        const auto asym = dtrw::mittag_leffler_asymptotic(alpha, 200.0, 50);
        REQUIRE(asym.has_value());
        CHECK(rel_err(*asym, dtrw::mittag_leffler_integral(alpha, 200.0)) < 1e-11);
    }
}

TEST_CASE("Mittag-Leffler is continuous across the crossover and decreasing")
{
    for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
        CAPTURE(alpha);
        const double below = mittag_leffler_neg(alpha, 10.0 * (1.0 - 1e-12));
        const double above = mittag_leffler_neg(alpha, 10.0 * (1.0 + 1e-12));
        CHECK(rel_err(below, above) < 1e-9);

        dtrw::MittagLefflerParams moved;
        moved.crossover_magnitude = 3.0;
        CHECK(rel_err(mittag_leffler_neg(alpha, 5.0, moved), mittag_leffler_neg(alpha, 5.0)) < 1e-10);

        double prev = 1.0;
        for (double x = 0.05; x < 60.0; x *= 1.1) {
            const double v = mittag_leffler_neg(alpha, x);
            CHECK(v < prev);
            CHECK(v > 0.0);
            prev = v;
        }
    }
}

TEST_CASE("Mittag-Leffler argument checks")
{
    CHECK_THROWS_AS(mittag_leffler_neg(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(mittag_leffler_neg(1.2, 1.0), std::domain_error);
    CHECK_THROWS_AS(mittag_leffler_neg(0.5, -1.0), std::domain_error);
    CHECK(mittag_leffler_neg(0.5, INFINITY) == 0.0);
}
