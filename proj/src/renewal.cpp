#include "dtrw/renewal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dtrw/specfn.hpp"

namespace dtrw {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

void check_alpha(double alpha)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1], got " + std::to_string(alpha));
}

void check_closed_form_args(std::int64_t n, std::int64_t k)
{
    if (n < 0 || k < 0)
        throw std::invalid_argument("closed form: n and k must be nonnegative");
    if (n > kClosedFormHorizon)
        throw std::domain_error("closed form: n = " + std::to_string(n) +
                                " is past the cancellation horizon " +
                                std::to_string(kClosedFormHorizon));
}

// (-1)^n sum_{l=0}^k (-1)^l binom(k,l) binom(l alpha + shift, n)
double alternating_binomial_sum(double alpha, std::int64_t n, std::int64_t k, const Wide& shift,
                                const Wide& slope_offset)
{
    const Wide a(alpha);
    Wide sum(0);
    Wide choose(1);  // binom(k, l)
    for (std::int64_t l = 0; l <= k; ++l) {
        const Wide term = choose * gen_binomial<Wide>((Wide(l) + slope_offset) * a + shift, n);
        sum += (l % 2 == 0) ? term : Wide(-term);
        choose = choose * Wide(k - l) / Wide(l + 1);
    }
    if (n % 2 == 1)
        sum = -sum;
    return sum.convert_to<double>();
}

double walk_probability(std::int64_t k, std::int64_t i, double p_right)
{
    if (std::abs(i) > k || (k + i) % 2 != 0)
        return 0.0;
    const std::int64_t rights = (k + i) / 2;
    const std::int64_t lefts = k - rights;
    const long double p_r = p_right;
    const long double p_l = 1.0L - p_r;
    if ((p_r == 0.0L && rights > 0) || (p_l == 0.0L && lefts > 0))
        return 0.0;
    long double log_p = std::lgamma(static_cast<long double>(k) + 1.0L) -
                        std::lgamma(static_cast<long double>(rights) + 1.0L) -
                        std::lgamma(static_cast<long double>(lefts) + 1.0L);
    if (rights > 0)
        log_p += rights * std::log(p_r);
    if (lefts > 0)
        log_p += lefts * std::log(p_l);
    return static_cast<double>(std::exp(log_p));
}

void check_subordination_args(const JumpCountTable& table, double p_right, std::int64_t n)
{
    if (n < 0 || n > table.n_max)
        throw std::invalid_argument("subordinated density: n outside the jump-count table");
    if (!(p_right >= 0.0 && p_right <= 1.0))
        throw std::invalid_argument("subordinated density: p_right must be a probability");
}

}  // namespace

std::int64_t default_k_max(double alpha, std::int64_t n_max)
{
    check_alpha(alpha);
    if (n_max <= 0)
        return 0;
    // P[k_n > K] = P[T_{K+1} <= n] <= (1 - Phi(n))^(K+1).
    const double survival = SibuyaModel(alpha).survival(n_max);
    if (survival <= 0.0)
        return n_max;
    const double k = std::ceil(std::log(kJumpTailBound) / std::log1p(-survival));
    return k >= static_cast<double>(n_max) ? n_max : static_cast<std::int64_t>(k);
}

JumpCountTable build_jump_counts(double alpha, std::int64_t n_max)
{
    return build_jump_counts(alpha, n_max, default_k_max(alpha, n_max));
}

JumpCountTable build_jump_counts(double alpha, std::int64_t n_max, std::int64_t k_max)
{
    check_alpha(alpha);
    if (n_max < 0 || k_max < 0)
        throw std::invalid_argument("build_jump_counts: horizons must be nonnegative");
    if (k_max > n_max)
        throw std::invalid_argument("build_jump_counts: k_max = " + std::to_string(k_max) +
                                    " exceeds n_max = " + std::to_string(n_max));

    const SibuyaModel waiting(alpha);
    Eigen::VectorXd phi(n_max + 1);
    Eigen::VectorXd survival(n_max + 1);
    for (std::int64_t m = 0; m <= n_max; ++m) {
        phi(m) = waiting.pmf(m);
        survival(m) = waiting.survival(m);
    }

    JumpCountTable table;
    table.alpha = alpha;
    table.n_max = n_max;
    table.k_max = k_max;
    table.b = Eigen::MatrixXd::Zero(n_max + 1, k_max + 1);
    table.c = Eigen::MatrixXd::Zero(n_max + 1, k_max + 2);
    table.b(0, 0) = 1.0;

    for (std::int64_t k = 1; k <= k_max + 1; ++k) {
        // b(m, k-1) vanishes for m < k-1.
        for (std::int64_t m = k - 1; m < n_max; ++m) {
            const double weight = table.b(m, k - 1);
            if (weight == 0.0)
                continue;
            const std::int64_t len = n_max - m;
            if (k <= k_max)
                table.b.col(k).segment(m + 1, len) += weight * phi.segment(1, len);
            table.c.col(k).segment(m + 1, len) += weight * survival.segment(1, len);
        }
    }
    table.p = table.b + table.c.rightCols(k_max + 1);
    return table;
}

double jump_count_closed_form(double alpha, std::int64_t n, std::int64_t k)
{
    check_alpha(alpha);
    check_closed_form_args(n, k);
    return alternating_binomial_sum(alpha, n, k, Wide(-1), Wide(1));
}

double first_passage_closed_form(double alpha, std::int64_t n, std::int64_t k)
{
    check_alpha(alpha);
    check_closed_form_args(n, k);
    return alternating_binomial_sum(alpha, n, k, Wide(0), Wide(0));
}

double expected_jumps(const JumpCountTable& table, std::int64_t n)
{
    if (n < 0 || n > table.n_max)
        throw std::invalid_argument("expected_jumps: n outside the table");
    const double captured = table.captured_mass(n);
    if (captured < 1.0 - 1e-10)
        throw std::runtime_error("expected_jumps: k_max = " + std::to_string(table.k_max) +
                                 " captures only " + std::to_string(captured) +
                                 " of the jump-count mass at n = " + std::to_string(n));
    const auto ks = Eigen::VectorXd::LinSpaced(table.k_max + 1, 0.0, static_cast<double>(table.k_max));
    return table.p.row(n).dot(ks);
}

Eigen::VectorXd renewal_function(const WaitingTimeModel& waiting, std::int64_t n_max)
{
    if (n_max < 0)
        throw std::invalid_argument("renewal_function: negative horizon");
    Eigen::VectorXd phi(n_max + 1);
    for (std::int64_t m = 0; m <= n_max; ++m)
        phi(m) = waiting_pmf(waiting, m);

    Eigen::VectorXd density = Eigen::VectorXd::Zero(n_max + 1);
    density(0) = 1.0;
    for (std::int64_t m = 0; m < n_max; ++m) {
        const std::int64_t len = n_max - m;
        density.segment(m + 1, len) += density(m) * phi.segment(1, len);
    }

    Eigen::VectorXd expected(n_max + 1);
    expected(0) = 0.0;
    for (std::int64_t n = 1; n <= n_max; ++n)
        expected(n) = expected(n - 1) + density(n);
    return expected;
}

double subordinated_density(const JumpCountTable& table, double p_right, std::int64_t i,
                            std::int64_t n)
{
    check_subordination_args(table, p_right, n);
    double sum = 0.0;
    for (std::int64_t k = std::abs(i); k <= std::min(n, table.k_max); k += 2)
        sum += walk_probability(k, i, p_right) * table.p(n, k);
    return sum;
}

double subordinated_density(double alpha, double p_right, std::int64_t i, std::int64_t n)
{
    if (n < 0)
        throw std::invalid_argument("subordinated_density: negative n");
    return subordinated_density(build_jump_counts(alpha, n, n), p_right, i, n);
}

DensityField subordinated_field(const JumpCountTable& table, double p_right, std::int64_t n,
                                double delta_x)
{
    check_subordination_args(table, p_right, n);
    const Eigen::Index width = 2 * n + 1;
    Eigen::VectorXd walk = Eigen::VectorXd::Zero(width);
    Eigen::VectorXd next(width);
    walk(n) = 1.0;

    DensityField field;
    field.domain = LatticeDomain::unbounded(delta_x);
    field.time_step = n;
    field.first_site = -n;
    field.mass = table.p(n, 0) * walk;
    const double p_left = 1.0 - p_right;
    for (std::int64_t k = 1; k <= std::min(n, table.k_max); ++k) {
        next.setZero();
        next.tail(width - 1) += p_right * walk.head(width - 1);
        next.head(width - 1) += p_left * walk.tail(width - 1);
        walk.swap(next);
        field.mass += table.p(n, k) * walk;
    }
    return field;
}

}  // namespace dtrw
