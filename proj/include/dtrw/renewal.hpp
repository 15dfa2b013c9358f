#ifndef DTRW_RENEWAL_HPP
#define DTRW_RENEWAL_HPP

#include <cstdint>

#include <Eigen/Core>

#include "dtrw/lattice.hpp"
#include "dtrw/waiting.hpp"

namespace dtrw {

/// Jump-count law of the Sibuya renewal process up to (n_max, k_max).
///   b(n,k) = P[T_k = n]
///   c(n,k) = P[T_{k-1} < n < T_k]
///   p(n,k) = P[T_k <= n < T_{k+1}] = b(n,k) + c(n,k+1)
struct JumpCountTable {
    double alpha = 1.0;
    std::int64_t n_max = 0;
    std::int64_t k_max = 0;
    Eigen::MatrixXd b;  // (n_max+1) x (k_max+1)
    Eigen::MatrixXd c;  // (n_max+1) x (k_max+2); column 0 unused
    Eigen::MatrixXd p;  // (n_max+1) x (k_max+1)

    /// sum_{k<=k_max} p(n,k): the jump-count mass captured at step n.
    double captured_mass(std::int64_t n) const { return p.row(n).sum(); }
};

/// Jump-count mass beyond default_k_max is at most this.
inline constexpr double kJumpTailBound = 1e-13;

/// Smallest K with (1 - Phi(n_max))^(K+1) <= kJumpTailBound, capped at n_max.
/// Each of K+1 jumps needs a wait of at most n_max, so this bounds P[k_n > K]
/// for every n <= n_max.
std::int64_t default_k_max(double alpha, std::int64_t n_max);

/// Builds b and c by the forward convolutions
///   b(n,k) = sum_m b(m,k-1) phi(n-m),  c(n,k) = sum_m b(m,k-1) Phi(n-m),
/// starting from b(n,0) = delta_{n0}. Every summand is nonnegative.
/// Throws std::invalid_argument if k_max > n_max or alpha is outside (0,1].
JumpCountTable build_jump_counts(double alpha, std::int64_t n_max, std::int64_t k_max);
JumpCountTable build_jump_counts(double alpha, std::int64_t n_max);

/// Largest n accepted by jump_count_closed_form.
inline constexpr std::int64_t kClosedFormHorizon = 60;

/// P[T_k <= n < T_{k+1}] = (-1)^n sum_{l=0}^k (-1)^l binom(k,l) binom((l+1)alpha - 1, n),
/// summed in 50-digit arithmetic. The alternating sum loses about log10 of
/// binom(k, k/2) digits, so n is capped at kClosedFormHorizon (std::domain_error).
double jump_count_closed_form(double alpha, std::int64_t n, std::int64_t k);

/// P[T_k = n] = (-1)^n sum_{l=0}^k (-1)^l binom(k,l) binom(l alpha, n), same arithmetic and cap.
double first_passage_closed_form(double alpha, std::int64_t n, std::int64_t k);

/// sum_k k p(n,k). Throws std::runtime_error when less than 1 - 1e-10 of the
/// jump-count mass at n lies within k_max.
double expected_jumps(const JumpCountTable& table, std::int64_t n);

/// E[k_n] for n = 0..n_max from the renewal density h = delta_0 + h * phi,
/// E[k_n] = sum_{m=1}^n h(m). O(n_max^2), no k truncation.
Eigen::VectorXd renewal_function(const WaitingTimeModel& waiting, std::int64_t n_max);

/// U(i,n) for the simple walk (r = 1) started at the origin of the unbounded
/// lattice: sum over k of P[X_k = i] p(n,k). Throws std::invalid_argument if
/// n exceeds the table or p_right is not a probability.
double subordinated_density(const JumpCountTable& table, double p_right, std::int64_t i,
                            std::int64_t n);
double subordinated_density(double alpha, double p_right, std::int64_t i, std::int64_t n);

/// The whole field U(., n) on sites -n..n, built by convolving the walk law
/// one jump at a time.
DensityField subordinated_field(const JumpCountTable& table, double p_right, std::int64_t n,
                                double delta_x = 1.0);

}  // namespace dtrw

#endif  // DTRW_RENEWAL_HPP
