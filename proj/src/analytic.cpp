#include "dtrw/analytic.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

namespace dtrw {

namespace {

constexpr int kTailOrders = 3;

// sum_{n>=1} cos(n theta) / n^(2j) for theta in [0, 2 pi], via Bernoulli polynomials.
double cosine_zeta(int j, double theta)
{
    constexpr double pi = std::numbers::pi;
    const double y = theta / (2.0 * pi);
    const double w = std::pow(2.0 * pi, 2 * j);
    switch (j) {
    case 1:
        return w * (y * y - y + 1.0 / 6.0) / 4.0;
    case 2:
        return -w * (std::pow(y, 4) - 2.0 * std::pow(y, 3) + y * y - 1.0 / 30.0) / 48.0;
    case 3:
        return w *
               (std::pow(y, 6) - 3.0 * std::pow(y, 5) + 2.5 * std::pow(y, 4) - 0.5 * y * y + 1.0 / 42.0) /
               1440.0;
    default:
        throw std::logic_error("cosine_zeta: order not tabulated");
    }
}

}  // namespace

void SeriesSolutionParams::validate() const
{
    if (n_terms < 1)
        throw std::invalid_argument("SeriesSolutionParams: n_terms must be >= 1");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("SeriesSolutionParams: alpha must lie in (0, 1]");
    if (!(D_alpha > 0.0))
        throw std::invalid_argument("SeriesSolutionParams: D_alpha must be positive");
}

SeriesSolution::SeriesSolution(const SeriesSolutionParams& params, double t) : params_(params), t_(t)
{
    params_.validate();
    if (!(t > 0.0))
        throw std::invalid_argument("analytic_u: t must be positive");

    constexpr double pi = std::numbers::pi;
    const double c = pi * pi * params_.D_alpha * std::pow(t, params_.alpha);
    coefficients_.resize(static_cast<std::size_t>(params_.n_terms));
    for (int n = 1; n <= params_.n_terms; ++n) {
        const double nn = static_cast<double>(n);
        coefficients_[n - 1] = mittag_leffler_neg(params_.alpha, c * nn * nn, params_.ml);
    }

    if (params_.tail_correction) {
        // E_a(-z) ~ sum_j (-1)^(j-1) z^(-j) / Gamma(1 - a j), with 1/Gamma(1-s) = sin(pi s) Gamma(s) / pi.
        for (int j = 1; j <= kTailOrders; ++j) {
            const double s = params_.alpha * j;
            const double inv_gamma = boost::math::sin_pi(s) * boost::math::tgamma(s) / pi;
            tail_weights_.push_back((j % 2 == 1 ? 1.0 : -1.0) * std::pow(c, -j) * inv_gamma);
        }
    }
}

double SeriesSolution::operator()(double x) const
{
    constexpr double pi = std::numbers::pi;
    // (-1)^n cos(n pi (x-1)) = cos(n pi x); summed from the smallest terms up.
    const double theta = pi * std::abs(x);
    double sum = 0.0;
    for (int n = params_.n_terms; n >= 1; --n)
        sum += coefficients_[n - 1] * std::cos(n * theta);

    if (!tail_weights_.empty() && theta <= 2.0 * pi) {
        for (int j = 1; j <= kTailOrders; ++j) {
            double head = 0.0;
            for (int n = params_.n_terms; n >= 1; --n)
                head += std::cos(n * theta) / std::pow(static_cast<double>(n), 2 * j);
            sum += tail_weights_[j - 1] * (cosine_zeta(j, theta) - head);
        }
    }
    return 0.5 + sum;
}

double analytic_u(const SeriesSolutionParams& params, double x, double t)
{
    return SeriesSolution(params, t)(x);
}

}  // namespace dtrw
