#ifndef DTRW_EXPERIMENT_HPP
#define DTRW_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dtrw/fd.hpp"
#include "dtrw/lattice.hpp"

namespace dtrw {

/// Invalid parameter combination. The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Method { mc, fd, subordination, analytic };

std::string to_string(Method method);
Method parse_method(const std::string& name);

struct DomainSpec {
    bool bounded = true;
    double lo = -1.0;
    double hi = 1.0;

    static DomainSpec unbounded() { return {false, 0.0, 0.0}; }
    /// "lo,hi" or "unbounded".
    static DomainSpec parse(const std::string& text);
    std::string to_string() const;
    LatticeDomain lattice(double delta_x) const;
};

struct ExperimentSpec {
    Method method = Method::fd;
    double alpha = 0.5;
    double D_alpha = 0.1;
    double delta_x = 0.2;
    double r = 1.0;
    double p_right = 0.5;
    double t_final = 0.5;
    std::int64_t n_paths = 1'000'000;
    std::uint64_t seed = 20170101;
    unsigned workers = 0;
    int n_terms = 900;
    bool tail_correction = false;
    DomainSpec domain;
    /// Extra snapshot times; t_final is always reported.
    std::vector<double> report_times;
    std::string output;

    /// Throws ValidationError on any out-of-range field or unsupported combination.
    void validate() const;
    GridCalibration grid() const;
    std::int64_t n_steps() const;
};

/// u = U / delta_x per site (or the series value for the analytic method),
/// at the grid time n delta_t.
struct Snapshot {
    std::int64_t step = 0;
    double t = 0.0;
    Eigen::VectorXd x;
    Eigen::VectorXd u;
    std::optional<Eigen::VectorXd> stderr_u;  // mc only
};

struct ExperimentResult {
    ExperimentSpec spec;
    double delta_t = 0.0;
    std::int64_t n_steps = 0;
    std::vector<Snapshot> snapshots;  // report times in ascending order, t_final last
    std::int64_t op_count = 0;        // fd: flux multiply-adds; mc: jump events
    std::int64_t waiting_draws = 0;   // mc only
    double wall_time = 0.0;

    const Snapshot& final() const { return snapshots.back(); }
};

/// Runs the experiment in memory. Deterministic given the spec.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Writes the density CSV(s) and the JSON sidecar. With several snapshots the
/// earlier ones go to "<stem>_n<step>.csv"; the final one always goes to
/// spec.output. Returns every path written.
std::vector<std::filesystem::path> write_outputs(const ExperimentResult& result);

/// CSV "x,u[,stderr]" with 17 significant digits.
void write_density_csv(const std::filesystem::path& path, const Snapshot& snapshot);
Snapshot read_density_csv(const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& csv);
std::string sidecar_json(const ExperimentResult& result);
ExperimentSpec spec_from_sidecar(const std::filesystem::path& sidecar);

/// fd, mc and analytic on the grid of base, for each alpha.
struct ErrorRow {
    double alpha = 0.0;
    double t = 0.0;  // grid time n delta_t used for all three
    Eigen::VectorXd x;
    Eigen::VectorXd fd, mc, analytic;
    double max_fd_analytic = 0.0;
    double max_mc_analytic = 0.0;
    double max_mc_fd = 0.0;
};

std::vector<ErrorRow> run_error_table(const std::vector<double>& alphas, const ExperimentSpec& base);
void write_error_table(const std::filesystem::path& path, const std::vector<ErrorRow>& rows);

struct BenchRecord {
    std::string method;
    double alpha = 0.0;
    double t = 0.0;
    double wall_time_s = 0.0;
    std::int64_t op_count = 0;
    std::optional<std::int64_t> n_paths;  // mc only
};

enum class BenchMode { vary_alpha, vary_t };
BenchMode parse_bench_mode(const std::string& name);

/// Runs fd and mc for each value of the varied parameter.
std::vector<BenchRecord> run_bench(BenchMode mode, const std::vector<double>& values,
                                   const ExperimentSpec& base);
std::string bench_json(const std::vector<BenchRecord>& records);

}  // namespace dtrw

#endif  // DTRW_EXPERIMENT_HPP
