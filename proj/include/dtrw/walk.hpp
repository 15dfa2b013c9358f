#ifndef DTRW_WALK_HPP
#define DTRW_WALK_HPP

#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "dtrw/lattice.hpp"
#include "dtrw/waiting.hpp"

namespace dtrw {

/// Source of uniform doubles on [0, 1).
template <typename T>
concept UniformSource = requires(T& source) {
    { source() } -> std::convertible_to<double>;
};

struct PathOutcome {
    std::int64_t final_site = 0;
    std::int64_t jumps_taken = 0;
    std::int64_t steps_simulated = 0;
    std::int64_t waiting_draws = 0;
};

/// Generates one DTRW path up to step n and records the occupied site at each
/// of the sorted report steps (all <= n).
///
/// Draw order per jump is fixed: one uniform for the waiting time, then one for
/// the jump direction. A wait that overshoots n ends the path, so no jump
/// happens after the horizon; self jumps count as jumps.
template <UniformSource Source>
PathOutcome trace_path(const WaitingTimeModel& waiting, const JumpModel& jumps,
                       const LatticeDomain& domain, std::int64_t start_site, std::int64_t n,
                       std::span<const std::int64_t> report_steps,
                       std::span<std::int64_t> sites_at_report, Source&& uniform)
{
    if (!domain.contains(start_site))
        throw std::invalid_argument("trace_path: start site outside the domain");
    if (n < 0)
        throw std::invalid_argument("trace_path: negative horizon");

    PathOutcome out;
    out.steps_simulated = n;
    std::int64_t time = 0;
    std::int64_t site = start_site;
    std::size_t next = 0;
    for (;;) {
        const std::int64_t wait = sample_waiting_time(waiting, uniform());
        ++out.waiting_draws;
        if (wait > n - time)
            break;
        time += wait;
        while (next < report_steps.size() && report_steps[next] < time)
            sites_at_report[next++] = site;
        site = domain.apply_boundary(site + jumps.decode(uniform()), site);
        ++out.jumps_taken;
    }
    while (next < report_steps.size())
        sites_at_report[next++] = site;
    out.final_site = site;
    return out;
}

/// The site occupied at step n and the number of jump events up to n.
template <UniformSource Source>
PathOutcome simulate_path(const WaitingTimeModel& waiting, const JumpModel& jumps,
                          const LatticeDomain& domain, std::int64_t start_site, std::int64_t n,
                          Source&& uniform)
{
    return trace_path(waiting, jumps, domain, start_site, n, {}, {}, uniform);
}

}  // namespace dtrw

#endif  // DTRW_WALK_HPP
