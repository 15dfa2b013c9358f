#include "dtrw/mc.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <stdexcept>
#include <thread>

#include "dtrw/rng.hpp"
#include "dtrw/walk.hpp"

namespace dtrw {

namespace {

// Integer occupancy counts over a contiguous site range, grown on demand.
class SiteHistogram {
public:
    SiteHistogram() = default;
    SiteHistogram(std::int64_t first, std::int64_t size)
        : first_(first), counts_(static_cast<std::size_t>(size), 0)
    {
    }

    void add(std::int64_t site, std::int64_t count = 1)
    {
        if (counts_.empty()) {
            first_ = site;
            counts_.assign(1, 0);
        } else if (site < first_) {
            const std::int64_t grow = std::max<std::int64_t>(first_ - site, size());
            counts_.insert(counts_.begin(), static_cast<std::size_t>(grow), 0);
            first_ -= grow;
        } else if (site > last()) {
            const std::int64_t grow = std::max<std::int64_t>(site - last(), size());
            counts_.resize(counts_.size() + static_cast<std::size_t>(grow), 0);
        }
        counts_[static_cast<std::size_t>(site - first_)] += count;
    }

    void merge(const SiteHistogram& other)
    {
        for (std::int64_t j = 0; j < other.size(); ++j)
            if (const auto c = other.counts_[static_cast<std::size_t>(j)]; c != 0)
                add(other.first_ + j, c);
    }

    std::int64_t size() const { return static_cast<std::int64_t>(counts_.size()); }
    std::int64_t first() const { return first_; }
    std::int64_t last() const { return first_ + size() - 1; }
    std::int64_t count(std::int64_t site) const
    {
        const std::int64_t j = site - first_;
        return (j >= 0 && j < size()) ? counts_[static_cast<std::size_t>(j)] : 0;
    }

    // Observed support, ignoring zero counts at the ends.
    std::pair<std::int64_t, std::int64_t> support() const
    {
        std::int64_t lo = first_;
        std::int64_t hi = last();
        while (lo < hi && count(lo) == 0)
            ++lo;
        while (hi > lo && count(hi) == 0)
            --hi;
        return {lo, hi};
    }

private:
    std::int64_t first_ = 0;
    std::vector<std::int64_t> counts_;
};

struct WorkerResult {
    std::vector<SiteHistogram> histograms;
    std::int64_t jump_events = 0;
    std::int64_t waiting_draws = 0;
};

WorkerResult run_paths(const WaitingTimeModel& waiting, const JumpModel& jumps,
                       const LatticeDomain& domain, std::int64_t start_site,
                       const EnsembleConfig& config, const std::vector<std::int64_t>& reports,
                       std::int64_t begin, std::int64_t end)
{
    WorkerResult out;
    for (std::size_t r = 0; r < reports.size(); ++r) {
        if (domain.is_bounded())
            out.histograms.emplace_back(domain.i_min(), domain.site_count());
        else
            out.histograms.emplace_back();
    }
    std::vector<std::int64_t> sites(reports.size());
    for (std::int64_t path = begin; path < end; ++path) {
        PathStream stream(config.seed, static_cast<std::uint64_t>(path));
        const PathOutcome outcome =
            trace_path(waiting, jumps, domain, start_site, config.n_steps, reports, sites, stream);
        for (std::size_t r = 0; r < reports.size(); ++r)
            out.histograms[r].add(sites[r]);
        out.jump_events += outcome.jumps_taken;
        out.waiting_draws += outcome.waiting_draws;
    }
    return out;
}

DensityField to_field(const SiteHistogram& histogram, const LatticeDomain& domain,
                      std::int64_t start_site, std::int64_t step, std::int64_t n_paths)
{
    DensityField field;
    field.domain = domain;
    field.time_step = step;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    if (domain.is_bounded()) {
        lo = domain.i_min();
        hi = domain.i_max();
    } else {
        const auto [first, last] = histogram.support();
        const std::int64_t reach = std::max(start_site - first, last - start_site) + 1;
        lo = start_site - reach;
        hi = start_site + reach;
    }
    field.first_site = lo;
    field.mass.resize(hi - lo + 1);
    const double inv_n = 1.0 / static_cast<double>(n_paths);
    for (std::int64_t i = lo; i <= hi; ++i)
        field.mass(i - lo) = static_cast<double>(histogram.count(i)) * inv_n;
    return field;
}

}  // namespace

void EnsembleConfig::validate() const
{
    if (n_paths <= 0)
        throw std::invalid_argument("EnsembleConfig: n_paths must be positive");
    if (n_steps < 0)
        throw std::invalid_argument("EnsembleConfig: n_steps must be nonnegative");
    if (!std::is_sorted(report_times.begin(), report_times.end()))
        throw std::invalid_argument("EnsembleConfig: report_times must be sorted");
    if (!report_times.empty() && (report_times.front() < 0 || report_times.back() > n_steps))
        throw std::invalid_argument("EnsembleConfig: report_times must lie in [0, n_steps]");
}

EnsembleResult run_ensemble(const WaitingTimeModel& waiting, const JumpModel& jumps,
                            const LatticeDomain& domain, std::int64_t start_site,
                            const EnsembleConfig& config)
{
    config.validate();
    jumps.validate();
    if (!domain.contains(start_site))
        throw std::invalid_argument("run_ensemble: start site outside the domain");

    const auto started = std::chrono::steady_clock::now();
    const std::vector<std::int64_t> reports =
        config.report_times.empty() ? std::vector<std::int64_t>{config.n_steps} : config.report_times;

    unsigned workers = config.workers != 0 ? config.workers : std::thread::hardware_concurrency();
    workers = std::max(1u, workers);
    workers = static_cast<unsigned>(std::min<std::int64_t>(workers, config.n_paths));

    std::vector<WorkerResult> partial(workers);
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::int64_t begin = config.n_paths * w / workers;
            const std::int64_t end = config.n_paths * (w + 1) / workers;
            threads.emplace_back([&, w, begin, end] {
                try {
                    // Each worker samples from its own copy of the survival table.
                    const WaitingTimeModel local = waiting;
                    partial[w] = run_paths(local, jumps, domain, start_site, config, reports, begin, end);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& error : errors)
        if (error)
            std::rethrow_exception(error);

    EnsembleResult result;
    result.n_paths = config.n_paths;
    for (std::size_t r = 0; r < reports.size(); ++r) {
        SiteHistogram merged = std::move(partial[0].histograms[r]);
        for (unsigned w = 1; w < workers; ++w)
            merged.merge(partial[w].histograms[r]);
        result.fields.push_back(to_field(merged, domain, start_site, reports[r], config.n_paths));
    }
    for (const auto& p : partial) {
        result.counters.total_jump_events += p.jump_events;
        result.counters.total_waiting_draws += p.waiting_draws;
    }
    result.counters.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

Eigen::VectorXd standard_error(const DensityField& field, std::int64_t n_paths)
{
    if (n_paths <= 0)
        throw std::invalid_argument("standard_error: n_paths must be positive");
    return (field.mass.array() * (1.0 - field.mass.array()) / static_cast<double>(n_paths)).sqrt();
}

}  // namespace dtrw
