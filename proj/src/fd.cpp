#include "dtrw/fd.hpp"

namespace dtrw {

GridCalibration calibrate_grid(double alpha, double d_alpha, double delta_x, double r)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("calibrate_grid: alpha must lie in (0, 1]");
    if (!(d_alpha > 0.0) || !(delta_x > 0.0))
        throw std::invalid_argument("calibrate_grid: D_alpha and delta_x must be positive");
    if (!(r > 0.0 && r <= 1.0))
        throw std::invalid_argument("calibrate_grid: r must lie in (0, 1]");
    GridCalibration grid;
    grid.alpha = alpha;
    grid.delta_x = delta_x;
    grid.delta_t = std::pow(r * delta_x * delta_x / (2.0 * d_alpha), 1.0 / alpha);
    return grid;
}

template class BasicFdSolver<double>;

}  // namespace dtrw
