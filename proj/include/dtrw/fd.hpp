#ifndef DTRW_FD_HPP
#define DTRW_FD_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dtrw/lattice.hpp"
#include "dtrw/waiting.hpp"

namespace dtrw {

/// Thrown when an explicit step produces mass below -1e-12.
class StabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Time step matched to a diffusion coefficient: D_alpha = r dx^2 / (2 dt^alpha).
struct GridCalibration {
    double alpha = 1.0;
    double delta_x = 1.0;
    double delta_t = 1.0;

    /// floor(t / dt), with a relative 1e-9 allowance so exact multiples are not lost.
    std::int64_t steps_for(double t) const
    {
        return static_cast<std::int64_t>(std::floor(t / delta_t * (1.0 + 1e-9)));
    }
    double time_of(std::int64_t n) const { return static_cast<double>(n) * delta_t; }
};

/// dt = (r dx^2 / (2 D_alpha))^(1/alpha). Throws std::invalid_argument on
/// nonpositive inputs or r outside (0, 1].
GridCalibration calibrate_grid(double alpha, double d_alpha, double delta_x, double r);

/// Explicit solver for the generalized master equation
///   U(.,n) = U(.,n-1) + L sum_{m<n} K(n-m) U(.,m),
/// where L is the nearest-neighbour operator r (p_right U(i-1) + p_left U(i+1) - U(i)).
/// On a bounded domain the row of a wall site keeps the blocked jump on the
/// diagonal, matching the walker's reflect-as-stay rule. On an unbounded domain
/// the grid is padded so no mass ever reaches the storage edge.
///
/// The full history is kept; step n costs n multiply-adds per site, and
/// flux_op_count() accumulates exactly that.
template <typename Scalar>
class BasicFdSolver {
public:
    using Field = BasicDensityField<Scalar>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    BasicFdSolver(WaitingTimeModel waiting, JumpModel jumps, LatticeDomain domain,
                  const Field& initial, std::int64_t expected_steps = 64);

    /// Advances one step (fd_step).
    void step();
    void advance(std::int64_t steps)
    {
        for (std::int64_t s = 0; s < steps; ++s)
            step();
    }

    std::int64_t step_counter() const { return steps_; }
    std::int64_t flux_op_count() const { return flux_ops_; }
    const LatticeDomain& domain() const { return domain_; }
    const BasicMemoryKernel<Scalar>& kernel() const { return kernel_; }

    /// Snapshot of step n <= step_counter(); unbounded fields are trimmed to
    /// their nonzero support.
    Field field(std::int64_t n) const;
    Field current() const { return field(steps_); }

private:
    void reserve_steps(std::int64_t steps);
    void pad_rows(std::int64_t extra);
    Vector apply_operator(const Vector& v) const;

    WaitingTimeModel waiting_;
    JumpModel jumps_;
    LatticeDomain domain_;
    BasicMemoryKernel<Scalar> kernel_;
    Matrix history_;  // one column per step, one row per stored site
    std::int64_t first_site_ = 0;
    std::int64_t steps_ = 0;
    std::int64_t flux_ops_ = 0;
};

using FdSolver = BasicFdSolver<double>;

/// Runs n_steps steps and returns the fields of steps 0..n_steps.
template <typename Scalar = double>
std::vector<BasicDensityField<Scalar>> fd_solve(const WaitingTimeModel& waiting,
                                                const JumpModel& jumps,
                                                const LatticeDomain& domain,
                                                const BasicDensityField<Scalar>& initial,
                                                std::int64_t n_steps);

// --------------------------------------------------------------------------

template <typename Scalar>
BasicFdSolver<Scalar>::BasicFdSolver(WaitingTimeModel waiting, JumpModel jumps,
                                     LatticeDomain domain, const Field& initial,
                                     std::int64_t expected_steps)
    : waiting_(std::move(waiting)), jumps_(jumps), domain_(std::move(domain))
{
    jumps_.validate();
    if (initial.mass.size() == 0)
        throw std::invalid_argument("BasicFdSolver: empty initial field");
    using std::abs;
    if (abs(initial.total() - Scalar(1)) > Scalar(1e-12))
        throw std::invalid_argument("BasicFdSolver: initial field is not normalized");

    const Eigen::Index cols = std::max<std::int64_t>(expected_steps, 1) + 1;
    if (domain_.is_bounded()) {
        if (initial.first_site < domain_.i_min() || initial.last_site() > domain_.i_max())
            throw std::invalid_argument("BasicFdSolver: initial field leaves the domain");
        first_site_ = domain_.i_min();
        history_ = Matrix::Zero(domain_.site_count(), cols);
        history_.col(0).segment(initial.first_site - first_site_, initial.mass.size()) = initial.mass;
    } else {
        const std::int64_t margin = std::max<std::int64_t>(expected_steps, 8) + 1;
        first_site_ = initial.first_site - margin;
        history_ = Matrix::Zero(initial.mass.size() + 2 * margin, cols);
        history_.col(0).segment(margin, initial.mass.size()) = initial.mass;
    }
    kernel_ = memory_kernel<Scalar>(waiting_, cols);
}

template <typename Scalar>
void BasicFdSolver<Scalar>::reserve_steps(std::int64_t steps)
{
    if (steps + 1 <= history_.cols())
        return;
    const Eigen::Index cols = std::max<Eigen::Index>(steps + 1, 2 * history_.cols());
    history_.conservativeResize(Eigen::NoChange, cols);
    kernel_ = memory_kernel<Scalar>(waiting_, cols);
}

template <typename Scalar>
void BasicFdSolver<Scalar>::pad_rows(std::int64_t extra)
{
    Matrix grown = Matrix::Zero(history_.rows() + 2 * extra, history_.cols());
    grown.middleRows(extra, history_.rows()) = history_;
    history_.swap(grown);
    first_site_ -= extra;
}

template <typename Scalar>
typename BasicFdSolver<Scalar>::Vector BasicFdSolver<Scalar>::apply_operator(const Vector& v) const
{
    const Eigen::Index n = v.size();
    const Scalar r(jumps_.r);
    const Scalar p_left(jumps_.p_left);
    const Scalar p_right(jumps_.p_right);
    Vector out = -v;
    out.tail(n - 1) += p_right * v.head(n - 1);  // arrivals from i-1
    out.head(n - 1) += p_left * v.tail(n - 1);   // arrivals from i+1
    if (domain_.is_bounded()) {
        out(0) += p_left * v(0);
        out(n - 1) += p_right * v(n - 1);
    }
    return r * out;
}

template <typename Scalar>
void BasicFdSolver<Scalar>::step()
{
    const std::int64_t n = steps_ + 1;
    reserve_steps(n);
    if (!domain_.is_bounded()) {
        const auto& last = history_.col(steps_);
        const Eigen::Index rows = history_.rows();
        if (last(0) != Scalar(0) || last(1) != Scalar(0) || last(rows - 1) != Scalar(0) ||
            last(rows - 2) != Scalar(0))
            pad_rows(std::max<Eigen::Index>(rows, 16));
    }

    // sum_{m=0}^{n-1} K(n-m) U(., m)
    const Vector weights = kernel_.coefficients.segment(1, n).reverse();
    const Vector memory = history_.leftCols(n) * weights;
    history_.col(n) = history_.col(n - 1) + apply_operator(memory);
    flux_ops_ += n * static_cast<std::int64_t>(history_.rows());
    steps_ = n;

    const Scalar lowest = history_.col(n).minCoeff();
    if (lowest < Scalar(-1e-12)) {
        throw StabilityError("fd_step: negative mass " +
                             std::to_string(static_cast<double>(lowest)) + " at step " +
                             std::to_string(n));
    }
}

template <typename Scalar>
typename BasicFdSolver<Scalar>::Field BasicFdSolver<Scalar>::field(std::int64_t n) const
{
    if (n < 0 || n > steps_)
        throw std::out_of_range("BasicFdSolver::field: step not computed");
    Field out;
    out.domain = domain_;
    out.time_step = n;
    Eigen::Index lo = 0;
    Eigen::Index hi = history_.rows() - 1;
    if (!domain_.is_bounded()) {
        // Trim the zero padding of the unbounded grid.
        while (lo < hi && history_(lo, n) == Scalar(0))
            ++lo;
        while (hi > lo && history_(hi, n) == Scalar(0))
            --hi;
    }
    out.first_site = first_site_ + lo;
    out.mass = history_.col(n).segment(lo, hi - lo + 1);
    return out;
}

template <typename Scalar>
std::vector<BasicDensityField<Scalar>> fd_solve(const WaitingTimeModel& waiting,
                                                const JumpModel& jumps,
                                                const LatticeDomain& domain,
                                                const BasicDensityField<Scalar>& initial,
                                                std::int64_t n_steps)
{
    if (n_steps < 0)
        throw std::invalid_argument("fd_solve: negative step count");
    BasicFdSolver<Scalar> solver(waiting, jumps, domain, initial, n_steps);
    std::vector<BasicDensityField<Scalar>> fields;
    fields.reserve(static_cast<std::size_t>(n_steps + 1));
    fields.push_back(solver.field(0));
    for (std::int64_t n = 1; n <= n_steps; ++n) {
        solver.step();
        fields.push_back(solver.field(n));
    }
    return fields;
}

}  // namespace dtrw

#endif  // DTRW_FD_HPP
