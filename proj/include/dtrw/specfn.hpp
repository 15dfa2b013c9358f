#ifndef DTRW_SPECFN_HPP
#define DTRW_SPECFN_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <type_traits>

namespace dtrw {

/// Below this order gen_binomial uses the exact falling-factorial product.
inline constexpr std::int64_t kBinomialProductLimit = 64;

namespace detail {

/// log|binom(x, m)| and its sign, evaluated through log-gamma in long double.
struct SignedLog {
    long double log_abs;
    int sign;  // 0 when the coefficient vanishes exactly
};

SignedLog log_binomial(long double x, std::int64_t m);

}  // namespace detail

/// Generalized binomial coefficient x(x-1)...(x-m+1)/m! for real x.
///
/// Orders up to kBinomialProductLimit use the finite product, which is exact
/// whenever a factor vanishes. Larger orders go through log-gamma with explicit
/// sign tracking for builtin floating types; other scalar types (e.g. Boost
/// multiprecision) always use the product so no precision is lost. Negative m
/// yields 0.
template <typename Scalar>
Scalar gen_binomial(const Scalar& x, std::int64_t m)
{
    if (m < 0)
        return Scalar(0);
    if (m <= kBinomialProductLimit || !std::is_floating_point_v<Scalar>) {
        Scalar result(1);
        for (std::int64_t j = 0; j < m; ++j)
            result *= (x - Scalar(j)) / Scalar(j + 1);
        return result;
    }
    if constexpr (std::is_floating_point_v<Scalar>) {
        const auto lb = detail::log_binomial(static_cast<long double>(x), m);
        if (lb.sign == 0)
            return Scalar(0);
        return static_cast<Scalar>(lb.sign * std::exp(lb.log_abs));
    }
    return Scalar(0);
}

struct MittagLefflerParams {
    int taylor_term_cap = 200;
    int asymptotic_term_cap = 50;
    double crossover_magnitude = 10.0;
};

/// E_alpha(-x) for 0 < alpha <= 1 and x >= 0.
///
/// The power series is used below crossover_magnitude and the asymptotic
/// expansion above it, each only when it converges within its term cap without
/// destructive cancellation. Otherwise the value comes from the positive
/// integral representation
///   E_a(-x) = sin(a pi)/(a pi) * int_0^inf exp(-v^(1/a)) x / (v^2 + 2 v x cos(a pi) + x^2) dv,
/// and alpha == 1 is exp(-x). Throws std::domain_error for alpha outside (0,1]
/// or negative x.
double mittag_leffler_neg(double alpha, double x, const MittagLefflerParams& params = {});

/// Individual evaluation routes, exposed for cross-checking. The series return
/// nullopt when they cannot certify a result to roughly 1e-12 relative.
std::optional<double> mittag_leffler_power_series(double alpha, double x, int term_cap);
std::optional<double> mittag_leffler_asymptotic(double alpha, double x, int term_cap);
double mittag_leffler_integral(double alpha, double x);

}  // namespace dtrw

#endif  // DTRW_SPECFN_HPP
