#ifndef DTRW_ANALYTIC_HPP
#define DTRW_ANALYTIC_HPP

#include <vector>

#include "dtrw/specfn.hpp"

namespace dtrw {

struct SeriesSolutionParams {
    double alpha = 1.0;
    double D_alpha = 0.1;
    int n_terms = 900;
    /// Adds the closed-form sum of the leading asymptotic terms of the
    /// coefficients beyond n_terms. Off by default.
    bool tail_correction = false;
    MittagLefflerParams ml;

    /// Throws std::invalid_argument unless n_terms >= 1, alpha in (0,1], D_alpha > 0.
    void validate() const;
};

/// Zero-flux solution on [-1,1] for a unit delta at the origin:
///   u(x,t) = 1/2 + sum_{n=1}^{n_terms} (-1)^n E_alpha(-(n pi)^2 D_alpha t^alpha) cos(n pi (x-1)).
/// Throws std::invalid_argument if t <= 0.
double analytic_u(const SeriesSolutionParams& params, double x, double t);

/// The same series with its Mittag-Leffler coefficients computed once for a
/// fixed t, for evaluation at many points.
class SeriesSolution {
public:
    SeriesSolution(const SeriesSolutionParams& params, double t);

    double operator()(double x) const;
    double time() const { return t_; }
    const std::vector<double>& coefficients() const { return coefficients_; }

private:
    SeriesSolutionParams params_;
    double t_;
    std::vector<double> coefficients_;  // E_alpha(-(n pi)^2 D t^alpha), n = 1..n_terms
    std::vector<double> tail_weights_;  // a_j in E_alpha(-c n^2) ~ sum_j a_j n^(-2j)
};

}  // namespace dtrw

#endif  // DTRW_ANALYTIC_HPP
