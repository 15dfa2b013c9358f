#include "dtrw/waiting.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace dtrw {

namespace {

constexpr std::int64_t kInitialTable = 1024;

void check_uniform(double u)
{
    if (!(u >= 0.0 && u < 1.0))
        throw std::domain_error("sample_waiting_time: u must lie in [0, 1), got " +
                                std::to_string(u));
}

}  // namespace

SibuyaModel::SibuyaModel(double alpha) : alpha_(alpha), table_(std::make_unique<Table>())
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("SibuyaModel: alpha must lie in (0, 1], got " +
                                    std::to_string(alpha));
    table_->survival.push_back(1.0);
    ensure_table(kInitialTable);
}

SibuyaModel::SibuyaModel(const SibuyaModel& other)
    : alpha_(other.alpha_), table_(std::make_unique<Table>())
{
    std::shared_lock lock(other.table_->mutex);
    table_->survival = other.table_->survival;
}

SibuyaModel& SibuyaModel::operator=(const SibuyaModel& other)
{
    if (this != &other) {
        SibuyaModel copy(other);
        *this = std::move(copy);
    }
    return *this;
}

std::int64_t SibuyaModel::table_size() const
{
    std::shared_lock lock(table_->mutex);
    return static_cast<std::int64_t>(table_->survival.size());
}

void SibuyaModel::ensure_table(std::int64_t size) const
{
    size = std::min(size, kTableLimit);
    {
        std::shared_lock lock(table_->mutex);
        if (static_cast<std::int64_t>(table_->survival.size()) >= size)
            return;
    }
    std::unique_lock lock(table_->mutex);
    auto& values = table_->survival;
    auto target = static_cast<std::int64_t>(values.size());
    while (target < size)
        target *= 2;
    target = std::min(target, kTableLimit);
    values.reserve(static_cast<std::size_t>(target));
    for (auto m = static_cast<std::int64_t>(values.size()); m < target; ++m)
        values.push_back(values.back() * (1.0 - alpha_ / static_cast<double>(m)));
}

double SibuyaModel::tabulated(std::int64_t m) const
{
    ensure_table(m + 1);
    std::shared_lock lock(table_->mutex);
    return table_->survival[static_cast<std::size_t>(m)];
}

double SibuyaModel::survival_lgamma(std::int64_t m) const
{
    if (alpha_ == 1.0)
        return 0.0;
    const long double ml = static_cast<long double>(m);
    const long double a = alpha_;
    return static_cast<double>(
        std::exp(std::lgamma(ml + 1.0L - a) - std::lgamma(ml + 1.0L) - std::lgamma(1.0L - a)));
}

double SibuyaModel::survival(std::int64_t m) const
{
    if (m <= 0)
        return 1.0;
    if (m < kTableLimit)
        return tabulated(m);
    return survival_lgamma(m);
}

double SibuyaModel::pmf(std::int64_t m) const
{
    if (m <= 0)
        return 0.0;
    return alpha_ / static_cast<double>(m) * survival(m - 1);
}

std::int64_t SibuyaModel::sample(double u) const
{
    check_uniform(u);
    for (;;) {
        {
            std::shared_lock lock(table_->mutex);
            const auto& values = table_->survival;
            if (values.back() <= u) {
                const auto it = std::partition_point(values.begin(), values.end(),
                                                     [u](double phi) { return phi > u; });
                return static_cast<std::int64_t>(it - values.begin());
            }
            if (static_cast<std::int64_t>(values.size()) >= kTableLimit)
                break;
        }
        ensure_table(2 * table_size());
    }

    // Far tail: Phi(lo) > u is known; bracket then bisect on the closed form.
    std::int64_t lo = kTableLimit - 1;
    std::int64_t hi = 2 * kTableLimit;
    while (survival_lgamma(hi) > u) {
        if (hi > kUnboundedWait / 4)
            return kUnboundedWait;
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (survival_lgamma(mid) > u)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

GeometricModel::GeometricModel(double sigma) : sigma_(sigma)
{
    if (!(sigma > 0.0 && sigma <= 1.0))
        throw std::invalid_argument("GeometricModel: sigma must lie in (0, 1], got " +
                                    std::to_string(sigma));
}

double GeometricModel::pmf(std::int64_t m) const
{
    if (m < 1)
        return 0.0;
    return sigma_ * std::pow(1.0 - sigma_, static_cast<double>(m - 1));
}

double GeometricModel::survival(std::int64_t m) const
{
    if (m <= 0)
        return 1.0;
    return std::pow(1.0 - sigma_, static_cast<double>(m));
}

std::int64_t GeometricModel::sample(double u) const
{
    check_uniform(u);
    if (sigma_ == 1.0)
        return 1;
    const double guess = std::ceil(std::log(u) / std::log1p(-sigma_));
    if (!(guess < 4.0e18))
        return kUnboundedWait;
    auto m = std::max<std::int64_t>(1, static_cast<std::int64_t>(guess));
    // The closed-form guess may be off by one through rounding.
    while (survival(m) > u)
        ++m;
    while (m > 1 && survival(m - 1) <= u)
        --m;
    return m;
}

double sibuya_pmf(const SibuyaModel& model, std::int64_t m) { return model.pmf(m); }
double sibuya_survival(const SibuyaModel& model, std::int64_t m) { return model.survival(m); }
double geometric_pmf(const GeometricModel& model, std::int64_t m) { return model.pmf(m); }

double waiting_pmf(const WaitingTimeModel& model, std::int64_t m)
{
    return std::visit([m](const auto& w) { return w.pmf(m); }, model);
}

double waiting_survival(const WaitingTimeModel& model, std::int64_t m)
{
    return std::visit([m](const auto& w) { return w.survival(m); }, model);
}

std::int64_t sample_waiting_time(const WaitingTimeModel& model, double u)
{
    return std::visit([u](const auto& w) { return w.sample(u); }, model);
}

double waiting_alpha(const WaitingTimeModel& model)
{
    if (const auto* sibuya = std::get_if<SibuyaModel>(&model))
        return sibuya->alpha();
    return 1.0;
}

}  // namespace dtrw
