#ifndef DTRW_MC_HPP
#define DTRW_MC_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "dtrw/lattice.hpp"
#include "dtrw/waiting.hpp"

namespace dtrw {

struct EnsembleConfig {
    std::int64_t n_paths = 1'000'000;
    std::uint64_t seed = 20170101;
    std::int64_t n_steps = 0;
    /// Sorted steps in [0, n_steps] to snapshot; empty means {n_steps}.
    std::vector<std::int64_t> report_times;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned workers = 0;

    /// Throws std::invalid_argument on a nonpositive path count, a negative
    /// horizon, or unsorted / out-of-range report times.
    void validate() const;
};

struct RunCounters {
    std::int64_t total_jump_events = 0;
    std::int64_t total_waiting_draws = 0;
    double wall_time = 0.0;  // seconds
};

struct EnsembleResult {
    std::int64_t n_paths = 0;
    std::vector<DensityField> fields;  // one per report time
    RunCounters counters;
};

/// Simulates n_paths independent walks from start_site and histograms their
/// positions at each report time: U(i,n) = #{paths at i} / n_paths.
///
/// Path j draws from PathStream(seed, j), and per-worker integer histograms
/// are summed, so the result does not depend on the worker count.
EnsembleResult run_ensemble(const WaitingTimeModel& waiting, const JumpModel& jumps,
                            const LatticeDomain& domain, std::int64_t start_site,
                            const EnsembleConfig& config);

/// Binomial standard error sqrt(U (1 - U) / N) per stored site.
Eigen::VectorXd standard_error(const DensityField& field, std::int64_t n_paths);

}  // namespace dtrw

#endif  // DTRW_MC_HPP
