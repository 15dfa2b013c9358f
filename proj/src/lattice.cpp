#include "dtrw/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dtrw {

void JumpModel::validate() const
{
    if (!(p_left >= 0.0 && p_right >= 0.0 && std::fabs(p_left + p_right - 1.0) <= 1e-12))
        throw std::invalid_argument("JumpModel: p_left and p_right must be probabilities summing to 1");
    if (!(r > 0.0 && r <= 1.0))
        throw std::invalid_argument("JumpModel: r must lie in (0, 1], got " + std::to_string(r));
}

LatticeDomain LatticeDomain::unbounded(double delta_x, double x_origin)
{
    if (!(delta_x > 0.0))
        throw std::invalid_argument("LatticeDomain: delta_x must be positive");
    LatticeDomain d;
    d.kind_ = Kind::Unbounded;
    d.delta_x_ = delta_x;
    d.ref_site_ = 0;
    d.x_ref_ = x_origin;
    return d;
}

LatticeDomain LatticeDomain::bounded(std::int64_t i_min, std::int64_t i_max, double delta_x,
                                     double x_left)
{
    if (!(i_min < i_max))
        throw std::invalid_argument("LatticeDomain: bounded domain needs i_min < i_max");
    if (!(delta_x > 0.0))
        throw std::invalid_argument("LatticeDomain: delta_x must be positive");
    LatticeDomain d;
    d.kind_ = Kind::Bounded;
    d.i_min_ = i_min;
    d.i_max_ = i_max;
    d.delta_x_ = delta_x;
    d.ref_site_ = i_min;
    d.x_ref_ = x_left;
    return d;
}

LatticeDomain LatticeDomain::interval(double lo, double hi, double delta_x)
{
    if (!(hi > lo) || !(delta_x > 0.0))
        throw std::invalid_argument("LatticeDomain: interval needs lo < hi and delta_x > 0");
    const double cells = (hi - lo) / delta_x;
    const double rounded = std::round(cells);
    if (std::fabs(cells - rounded) > 1e-9 * std::max(1.0, cells))
        throw std::invalid_argument("LatticeDomain: interval length is not a multiple of delta_x");
    const double offset = lo / delta_x;
    const bool aligned = std::fabs(offset - std::round(offset)) <= 1e-9 * std::max(1.0, std::fabs(offset));
    const auto i_min = aligned ? static_cast<std::int64_t>(std::llround(offset)) : std::int64_t{0};
    return bounded(i_min, i_min + static_cast<std::int64_t>(rounded), delta_x, lo);
}

std::int64_t LatticeDomain::nearest_site(double x) const
{
    const auto site = ref_site_ + static_cast<std::int64_t>(std::llround((x - x_ref_) / delta_x_));
    if (kind_ == Kind::Bounded)
        return std::clamp(site, i_min_, i_max_);
    return site;
}

}  // namespace dtrw
