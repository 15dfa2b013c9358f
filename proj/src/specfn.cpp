#include "dtrw/specfn.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace dtrw {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

// sin(pi z) with the argument reduced to [-1/2, 1/2] around the nearest integer.
long double sinpi(long double z)
{
    const long double k = std::nearbyint(z);
    const long double d = z - k;
    const long double s = std::sin(kPi * d);
    return std::fmod(k, 2.0L) == 0.0L ? s : -s;
}

struct SignedLogGamma {
    long double log_abs;
    int sign;
};

// z must not be a non-positive integer.
SignedLogGamma log_gamma(long double z)
{
    if (z > 0.0L)
        return {std::lgamma(z), 1};
    const long double s = sinpi(z);
    return {std::log(kPi) - std::log(std::fabs(s)) - std::lgamma(1.0L - z), s > 0.0L ? 1 : -1};
}

bool is_integer(long double v) { return std::nearbyint(v) == v; }

}  // namespace

namespace detail {

SignedLog log_binomial(long double x, std::int64_t m)
{
    if (m == 0)
        return {0.0L, 1};
    const auto ml = static_cast<long double>(m);
    if (is_integer(x) && x >= 0.0L && x < ml)
        return {0.0L, 0};

    int sign = 1;
    if (x < 0.0L) {
        // binom(x, m) = (-1)^m binom(m - x - 1, m); every gamma argument is then positive.
        x = ml - x - 1.0L;
        sign = (m % 2 == 0) ? 1 : -1;
    }
    const auto top = log_gamma(x + 1.0L);
    const auto low = log_gamma(x - ml + 1.0L);
    return {top.log_abs - std::lgamma(ml + 1.0L) - low.log_abs, sign * top.sign * low.sign};
}

}  // namespace detail

std::optional<double> mittag_leffler_power_series(double alpha, double x, int term_cap)
{
    if (x == 0.0)
        return 1.0;
    const long double a = alpha;
    const long double log_x = std::log(static_cast<long double>(x));
    long double sum = 0.0L;
    long double largest = 0.0L;
    long double previous = std::numeric_limits<long double>::infinity();
    for (int k = 0; k <= term_cap; ++k) {
        const long double magnitude = std::exp(k * log_x - std::lgamma(1.0L + a * k));
        sum += (k % 2 == 0) ? magnitude : -magnitude;
        largest = std::max(largest, magnitude);
        if (k > 0 && magnitude < previous && magnitude <= 1e-18L * std::fabs(sum)) {
            // Cancellation costs log10(largest/|sum|) of the ~19 long double digits.
            if (largest > 1e6L * std::fabs(sum))
                return std::nullopt;
            return static_cast<double>(sum);
        }
        previous = magnitude;
    }
    return std::nullopt;
}

std::optional<double> mittag_leffler_asymptotic(double alpha, double x, int term_cap)
{
    if (x <= 0.0)
        return std::nullopt;
    const long double a = alpha;
    const long double log_x = std::log(static_cast<long double>(x));
    long double sum = 0.0L;
    long double previous = std::numeric_limits<long double>::infinity();
    for (int k = 1; k <= term_cap; ++k) {
        // 1/Gamma(1 - a k) = sin(pi a k) Gamma(a k) / pi
        const long double envelope = std::exp(std::lgamma(a * k) - k * log_x) / kPi;
        if (envelope > previous)
            return std::nullopt;  // past the optimal truncation point
        const long double term = sinpi(a * k) * envelope;
        sum += (k % 2 == 1) ? term : -term;
        if (sum != 0.0L && envelope <= 1e-18L * std::fabs(sum))
            return static_cast<double>(sum);
        previous = envelope;
    }
    return std::nullopt;
}

double mittag_leffler_integral(double alpha, double x)
{
    if (x == 0.0)
        return 1.0;
    if (alpha == 1.0)
        return std::exp(-x);

    const double pi = std::numbers::pi;
    const double c = std::cos(alpha * pi);
    const double s = std::sin(alpha * pi);
    const double inv_alpha = 1.0 / alpha;
    auto integrand = [=](double v) {
        const double denom = v * v + 2.0 * v * x * c + x * x;
        return std::exp(-std::pow(v, inv_alpha)) * (x / denom);
    };

    // exp(-v^(1/a)) is below 1e-300 past v_max.
    const double v_max = std::pow(700.0, alpha);
    const double peak = std::max(0.0, -x * c);
    const double width = x * s;
    std::vector<double> breaks{0.0, v_max, 1.0, x, peak, peak - width, peak + width,
                               peak - 4.0 * width, peak + 4.0 * width};
    std::erase_if(breaks, [&](double b) { return b < 0.0 || b > v_max; });
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        total += Quadrature::integrate(integrand, breaks[i], breaks[i + 1], 12, 1e-12);
    return s / (alpha * pi) * total;
}

double mittag_leffler_neg(double alpha, double x, const MittagLefflerParams& params)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("mittag_leffler_neg: alpha must lie in (0, 1], got " +
                                std::to_string(alpha));
    if (!(x >= 0.0))
        throw std::domain_error("mittag_leffler_neg: argument magnitude must be >= 0");
    if (!(params.crossover_magnitude > 0.0))
        throw std::domain_error("mittag_leffler_neg: crossover_magnitude must be positive");

    if (x == 0.0)
        return 1.0;
    if (alpha == 1.0)
        return std::exp(-x);
    if (std::isinf(x))
        return 0.0;

    const auto series = x < params.crossover_magnitude
                            ? mittag_leffler_power_series(alpha, x, params.taylor_term_cap)
                            : mittag_leffler_asymptotic(alpha, x, params.asymptotic_term_cap);
    return series ? *series : mittag_leffler_integral(alpha, x);
}

}  // namespace dtrw
