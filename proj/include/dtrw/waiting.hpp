#ifndef DTRW_WAITING_HPP
#define DTRW_WAITING_HPP

#include <cstdint>
#include <limits>
#include <memory>
#include <shared_mutex>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace dtrw {

/// Sentinel waiting time returned when u is so small that the wait exceeds any
/// representable step count. Callers compare against their horizon, never add.
inline constexpr std::int64_t kUnboundedWait = std::numeric_limits<std::int64_t>::max();

/// Sibuya(alpha) waiting times: phi(m) = (alpha/m) prod_{l<m} (1 - alpha/l).
///
/// Survival values Phi(m) = prod_{l<=m} (1 - alpha/l) live in a table that is
/// extended lazily by doubling, up to kTableLimit entries. Beyond that the
/// survival is evaluated as Gamma(m+1-alpha) / (Gamma(m+1) Gamma(1-alpha)).
/// The table is guarded by a shared mutex, so one model may be sampled from
/// many threads; copies get an independent table.
class SibuyaModel {
public:
    static constexpr std::int64_t kTableLimit = std::int64_t{1} << 20;

    explicit SibuyaModel(double alpha);
    SibuyaModel(const SibuyaModel& other);
    SibuyaModel& operator=(const SibuyaModel& other);
    SibuyaModel(SibuyaModel&&) noexcept = default;
    SibuyaModel& operator=(SibuyaModel&&) noexcept = default;
    ~SibuyaModel() = default;

    double alpha() const { return alpha_; }

    double pmf(std::int64_t m) const;
    double survival(std::int64_t m) const;

    /// The unique m >= 1 with Phi(m) <= u < Phi(m-1).
    std::int64_t sample(double u) const;

    /// Number of survival values currently tabulated.
    std::int64_t table_size() const;

private:
    struct Table {
        mutable std::shared_mutex mutex;
        std::vector<double> survival;
    };

    void ensure_table(std::int64_t size) const;
    double tabulated(std::int64_t m) const;
    double survival_lgamma(std::int64_t m) const;

    double alpha_;
    std::unique_ptr<Table> table_;
};

/// Geometric waiting times: a jump happens in each step with probability sigma.
class GeometricModel {
public:
    explicit GeometricModel(double sigma);

    double sigma() const { return sigma_; }
    double pmf(std::int64_t m) const;
    double survival(std::int64_t m) const;
    std::int64_t sample(double u) const;

private:
    double sigma_;
};

using WaitingTimeModel = std::variant<SibuyaModel, GeometricModel>;

double sibuya_pmf(const SibuyaModel& model, std::int64_t m);
double sibuya_survival(const SibuyaModel& model, std::int64_t m);
double geometric_pmf(const GeometricModel& model, std::int64_t m);

double waiting_pmf(const WaitingTimeModel& model, std::int64_t m);
double waiting_survival(const WaitingTimeModel& model, std::int64_t m);

/// Inverse-survival draw: the unique m >= 1 with Phi(m) <= u < Phi(m-1), for
/// u in [0, 1). The law is never truncated; kUnboundedWait stands in for waits
/// that overflow a 64-bit step count.
std::int64_t sample_waiting_time(const WaitingTimeModel& model, double u);

/// Memory kernel K(0..n_max): the Z-transform of K is Z{phi}/Z{Phi}.
template <typename Scalar>
struct BasicMemoryKernel {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> coefficients;

    Scalar operator[](std::int64_t m) const { return coefficients(m); }
    std::int64_t n_max() const { return coefficients.size() - 1; }
};

using MemoryKernel = BasicMemoryKernel<double>;

/// Sibuya: K(m) = (-1)^m binom(1-alpha, m) - delta_{0m} + delta_{1m}, built from
/// the ratio (-1)^m binom(1-alpha,m) / (-1)^(m-1) binom(1-alpha,m-1) = 1 - (2-alpha)/m.
/// Geometric: K(m) = sigma delta_{1m}.
template <typename Scalar = double>
BasicMemoryKernel<Scalar> memory_kernel(const WaitingTimeModel& model, std::int64_t n_max);

double waiting_alpha(const WaitingTimeModel& model);

// --------------------------------------------------------------------------

template <typename Scalar>
BasicMemoryKernel<Scalar> memory_kernel(const WaitingTimeModel& model, std::int64_t n_max)
{
    if (n_max < 1)
        n_max = 1;
    BasicMemoryKernel<Scalar> kernel;
    kernel.coefficients.setZero(n_max + 1);
    if (const auto* sibuya = std::get_if<SibuyaModel>(&model)) {
        const Scalar alpha(sibuya->alpha());
        Scalar gl(1);  // (-1)^m binom(1 - alpha, m)
        for (std::int64_t m = 1; m <= n_max; ++m) {
            gl *= Scalar(1) - (Scalar(2) - alpha) / Scalar(m);
            kernel.coefficients(m) = gl;
        }
        kernel.coefficients(1) = alpha;
    } else {
        kernel.coefficients(1) = Scalar(std::get<GeometricModel>(model).sigma());
    }
    return kernel;
}

}  // namespace dtrw

#endif  // DTRW_WAITING_HPP
