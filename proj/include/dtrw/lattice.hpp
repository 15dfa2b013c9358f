#ifndef DTRW_LATTICE_HPP
#define DTRW_LATTICE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Core>

namespace dtrw {

/// Nearest-neighbour jump law with self jumps: left with r p_left, right with
/// r p_right, stay with 1 - r. p_right moves i -> i+1.
struct JumpModel {
    double p_left = 0.5;
    double p_right = 0.5;
    double r = 1.0;

    static JumpModel symmetric(double r = 1.0) { return {0.5, 0.5, r}; }

    /// Throws std::invalid_argument unless p_left + p_right = 1 and 0 < r <= 1.
    void validate() const;

    /// Decodes one uniform draw: u < r p_left -> -1, u < r -> +1, else 0.
    int decode(double u) const
    {
        if (u < r * p_left)
            return -1;
        if (u < r)
            return 1;
        return 0;
    }
};

/// One-dimensional lattice, either unbounded or a bounded interval with
/// reflect-as-stay walls: a jump that would leave [i_min, i_max] becomes a stay.
class LatticeDomain {
public:
    enum class Kind { Unbounded, Bounded };

    /// Unbounded lattice with x(i) = x_origin + i delta_x.
    static LatticeDomain unbounded(double delta_x = 1.0, double x_origin = 0.0);

    /// Sites i_min..i_max with x(i) = x_left + (i - i_min) delta_x.
    static LatticeDomain bounded(std::int64_t i_min, std::int64_t i_max, double delta_x,
                                 double x_left);

    /// Sites covering [lo, hi] at spacing delta_x, numbered so that site 0 sits
    /// at x = 0 whenever the grid passes through the origin.
    static LatticeDomain interval(double lo, double hi, double delta_x);

    Kind kind() const { return kind_; }
    bool is_bounded() const { return kind_ == Kind::Bounded; }
    std::int64_t i_min() const { return i_min_; }
    std::int64_t i_max() const { return i_max_; }
    std::int64_t site_count() const { return i_max_ - i_min_ + 1; }
    double delta_x() const { return delta_x_; }

    double coordinate(std::int64_t site) const
    {
        return x_ref_ + static_cast<double>(site - ref_site_) * delta_x_;
    }

    /// Site whose coordinate is nearest to x (clamped into a bounded domain).
    std::int64_t nearest_site(double x) const;

    bool contains(std::int64_t site) const
    {
        return kind_ == Kind::Unbounded || (site >= i_min_ && site <= i_max_);
    }

    std::int64_t apply_boundary(std::int64_t proposed_site, std::int64_t current_site) const
    {
        return contains(proposed_site) ? proposed_site : current_site;
    }

    bool operator==(const LatticeDomain&) const = default;

private:
    Kind kind_ = Kind::Unbounded;
    std::int64_t i_min_ = 0;
    std::int64_t i_max_ = -1;
    double delta_x_ = 1.0;
    std::int64_t ref_site_ = 0;
    double x_ref_ = 0.0;
};

inline std::int64_t apply_boundary(const LatticeDomain& domain, std::int64_t proposed_site,
                                   std::int64_t current_site)
{
    return domain.apply_boundary(proposed_site, current_site);
}

/// Probability mass per lattice site at time step time_step; mass(j) belongs
/// to site first_site + j. Sites outside the stored range carry no mass.
template <typename Scalar>
struct BasicDensityField {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    LatticeDomain domain;
    std::int64_t time_step = 0;
    std::int64_t first_site = 0;
    Vector mass;

    std::int64_t last_site() const { return first_site + mass.size() - 1; }

    Scalar at(std::int64_t site) const
    {
        const std::int64_t j = site - first_site;
        return (j >= 0 && j < mass.size()) ? mass(j) : Scalar(0);
    }

    Scalar total() const { return mass.sum(); }

    /// Unit mass on one site.
    static BasicDensityField delta(const LatticeDomain& domain, std::int64_t site)
    {
        BasicDensityField field;
        field.domain = domain;
        if (domain.is_bounded()) {
            field.first_site = domain.i_min();
            field.mass = Vector::Zero(domain.site_count());
        } else {
            field.first_site = site;
            field.mass = Vector::Zero(1);
        }
        field.mass(site - field.first_site) = Scalar(1);
        return field;
    }

    template <typename Other>
    BasicDensityField<Other> cast() const
    {
        return {domain, time_step, first_site, mass.template cast<Other>()};
    }
};

using DensityField = BasicDensityField<double>;

/// sum_i x(i)^order U(i) for order 1 or 2.
template <typename Scalar>
Scalar estimate_moment(const BasicDensityField<Scalar>& field, int order)
{
    if (order != 1 && order != 2)
        throw std::invalid_argument("estimate_moment: order must be 1 or 2");
    Scalar sum(0);
    for (Eigen::Index j = 0; j < field.mass.size(); ++j) {
        const Scalar x(field.domain.coordinate(field.first_site + j));
        sum += (order == 1 ? x : x * x) * field.mass(j);
    }
    return sum;
}

/// Largest |a(i) - b(i)| over the union of both supports.
template <typename Scalar>
Scalar max_abs_difference(const BasicDensityField<Scalar>& a, const BasicDensityField<Scalar>& b)
{
    using std::abs;
    const std::int64_t lo = std::min(a.first_site, b.first_site);
    const std::int64_t hi = std::max(a.last_site(), b.last_site());
    Scalar worst(0);
    for (std::int64_t i = lo; i <= hi; ++i)
        worst = std::max<Scalar>(worst, abs(a.at(i) - b.at(i)));
    return worst;
}

}  // namespace dtrw

#endif  // DTRW_LATTICE_HPP
