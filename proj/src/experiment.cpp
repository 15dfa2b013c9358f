#include "dtrw/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "dtrw/analytic.hpp"
#include "dtrw/mc.hpp"
#include "dtrw/renewal.hpp"

namespace dtrw {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Snapshot grid_snapshot(const DensityField& field, double delta_t)
{
    Snapshot s;
    s.step = field.time_step;
    s.t = static_cast<double>(field.time_step) * delta_t;
    const Eigen::Index n = field.mass.size();
    s.x.resize(n);
    for (Eigen::Index j = 0; j < n; ++j)
        s.x(j) = field.domain.coordinate(field.first_site + j);
    s.u = field.mass / field.domain.delta_x();
    return s;
}

std::vector<std::int64_t> report_steps(const ExperimentSpec& spec)
{
    const GridCalibration grid = spec.grid();
    std::vector<std::int64_t> steps;
    for (double t : spec.report_times)
        steps.push_back(grid.steps_for(t));
    steps.push_back(grid.steps_for(spec.t_final));
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    return steps;
}

}  // namespace

std::string to_string(Method method)
{
    switch (method) {
    case Method::mc:
        return "mc";
    case Method::fd:
        return "fd";
    case Method::subordination:
        return "subordination";
    case Method::analytic:
        return "analytic";
    }
    return "?";
}

Method parse_method(const std::string& name)
{
    for (Method m : {Method::mc, Method::fd, Method::subordination, Method::analytic})
        if (to_string(m) == name)
            return m;
    throw ValidationError("unknown method '" + name + "'");
}

DomainSpec DomainSpec::parse(const std::string& text)
{
    if (text == "unbounded")
        return unbounded();
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw ValidationError("domain must be 'lo,hi' or 'unbounded', got '" + text + "'");
    try {
        std::size_t used_lo = 0;
        std::size_t used_hi = 0;
        const std::string lo_text = text.substr(0, comma);
        const std::string hi_text = text.substr(comma + 1);
        DomainSpec d{true, std::stod(lo_text, &used_lo), std::stod(hi_text, &used_hi)};
        if (used_lo != lo_text.size() || used_hi != hi_text.size())
            throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ValidationError("cannot parse domain '" + text + "'");
    }
}

std::string DomainSpec::to_string() const
{
    if (!bounded)
        return "unbounded";
    std::ostringstream out;
    out.precision(17);
    out << lo << ',' << hi;
    return out.str();
}

LatticeDomain DomainSpec::lattice(double delta_x) const
{
    if (!bounded)
        return LatticeDomain::unbounded(delta_x);
    try {
        return LatticeDomain::interval(lo, hi, delta_x);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
}

void ExperimentSpec::validate() const
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw ValidationError("alpha must lie in (0, 1]");
    if (!(D_alpha > 0.0))
        throw ValidationError("D_alpha must be positive");
    if (!(delta_x > 0.0))
        throw ValidationError("dx must be positive");
    if (!(r > 0.0 && r <= 1.0))
        throw ValidationError("r must lie in (0, 1]");
    if (!(p_right >= 0.0 && p_right <= 1.0))
        throw ValidationError("p_right must lie in [0, 1]");
    if (!(t_final > 0.0))
        throw ValidationError("t must be positive");
    if (method == Method::mc && n_paths < 1)
        throw ValidationError("mc needs at least one path (n_paths = " + std::to_string(n_paths) + ")");
    if (n_terms < 1)
        throw ValidationError("terms must be >= 1");

    if (domain.bounded) {
        if (!(domain.hi > domain.lo))
            throw ValidationError("domain needs lo < hi");
        if (!(domain.lo <= 0.0 && domain.hi >= 0.0))
            throw ValidationError("domain must contain the release point x = 0");
    }
    const LatticeDomain lattice = domain.lattice(delta_x);
    if (std::abs(lattice.coordinate(lattice.nearest_site(0.0))) > 1e-9 * delta_x)
        throw ValidationError("x = 0 is not a grid point");

    const GridCalibration g = grid();
    if (t_final < g.delta_t)
        throw ValidationError("t = " + std::to_string(t_final) + " is shorter than one step dt = " +
                              std::to_string(g.delta_t));
    for (double t : report_times)
        if (!(t >= g.delta_t && t <= t_final))
            throw ValidationError("report times must lie in [dt, t]");

    if (method == Method::subordination && (domain.bounded || r != 1.0))
        throw ValidationError("subordination needs an unbounded domain and r = 1");
    if (method == Method::analytic &&
        (!domain.bounded || domain.lo != -1.0 || domain.hi != 1.0 || p_right != 0.5))
        throw ValidationError("the analytic series needs domain -1,1 and p_right = 0.5");
}

GridCalibration ExperimentSpec::grid() const
{
    try {
        return calibrate_grid(alpha, D_alpha, delta_x, r);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
}

std::int64_t ExperimentSpec::n_steps() const { return grid().steps_for(t_final); }

ExperimentResult run_experiment(const ExperimentSpec& spec)
{
    spec.validate();
    const auto started = Clock::now();
    const GridCalibration grid = spec.grid();
    const LatticeDomain lattice = spec.domain.lattice(spec.delta_x);
    const std::int64_t start = lattice.nearest_site(0.0);
    const std::vector<std::int64_t> steps = report_steps(spec);
    const JumpModel jumps{1.0 - spec.p_right, spec.p_right, spec.r};

    ExperimentResult result;
    result.spec = spec;
    result.delta_t = grid.delta_t;
    result.n_steps = steps.back();

    switch (spec.method) {
    case Method::fd: {
        FdSolver solver(SibuyaModel(spec.alpha), jumps, lattice, DensityField::delta(lattice, start),
                        result.n_steps);
        for (std::int64_t n : steps) {
            solver.advance(n - solver.step_counter());
            result.snapshots.push_back(grid_snapshot(solver.field(n), grid.delta_t));
        }
        result.op_count = solver.flux_op_count();
        break;
    }
    case Method::mc: {
        EnsembleConfig config;
        config.n_paths = spec.n_paths;
        config.seed = spec.seed;
        config.n_steps = result.n_steps;
        config.report_times = steps;
        config.workers = spec.workers;
        const EnsembleResult ensemble =
            run_ensemble(SibuyaModel(spec.alpha), jumps, lattice, start, config);
        for (const DensityField& field : ensemble.fields) {
            Snapshot s = grid_snapshot(field, grid.delta_t);
            s.stderr_u = standard_error(field, spec.n_paths) / spec.delta_x;
            result.snapshots.push_back(std::move(s));
        }
        result.op_count = ensemble.counters.total_jump_events;
        result.waiting_draws = ensemble.counters.total_waiting_draws;
        break;
    }
    case Method::subordination: {
        const JumpCountTable table = build_jump_counts(spec.alpha, result.n_steps, result.n_steps);
        for (std::int64_t n : steps) {
            DensityField field = subordinated_field(table, spec.p_right, n, spec.delta_x);
            result.snapshots.push_back(grid_snapshot(field, grid.delta_t));
        }
        break;
    }
    case Method::analytic: {
        SeriesSolutionParams params;
        params.alpha = spec.alpha;
        params.D_alpha = spec.D_alpha;
        params.n_terms = spec.n_terms;
        params.tail_correction = spec.tail_correction;
        for (std::int64_t n : steps) {
            const SeriesSolution u(params, grid.time_of(n));
            Snapshot s;
            s.step = n;
            s.t = grid.time_of(n);
            s.x.resize(lattice.site_count());
            s.u.resize(lattice.site_count());
            for (std::int64_t i = lattice.i_min(); i <= lattice.i_max(); ++i) {
                s.x(i - lattice.i_min()) = lattice.coordinate(i);
                s.u(i - lattice.i_min()) = u(lattice.coordinate(i));
            }
            result.snapshots.push_back(std::move(s));
        }
        break;
    }
    }
    result.wall_time = seconds_since(started);
    return result;
}

std::vector<ErrorRow> run_error_table(const std::vector<double>& alphas, const ExperimentSpec& base)
{
    std::vector<ErrorRow> rows;
    for (double alpha : alphas) {
        ExperimentSpec spec = base;
        spec.alpha = alpha;
        spec.report_times.clear();

        spec.method = Method::fd;
        const ExperimentResult fd = run_experiment(spec);
        spec.method = Method::mc;
        const ExperimentResult mc = run_experiment(spec);
        spec.method = Method::analytic;
        const ExperimentResult an = run_experiment(spec);

        ErrorRow row;
        row.alpha = alpha;
        row.t = fd.final().t;
        row.x = fd.final().x;
        row.fd = fd.final().u;
        row.analytic = an.final().u;
        row.mc = mc.final().u;
        row.max_fd_analytic = (row.fd - row.analytic).cwiseAbs().maxCoeff();
        row.max_mc_analytic = (row.mc - row.analytic).cwiseAbs().maxCoeff();
        row.max_mc_fd = (row.mc - row.fd).cwiseAbs().maxCoeff();
        rows.push_back(std::move(row));
    }
    return rows;
}

BenchMode parse_bench_mode(const std::string& name)
{
    if (name == "vary-alpha")
        return BenchMode::vary_alpha;
    if (name == "vary-t")
        return BenchMode::vary_t;
    throw ValidationError("bench mode must be vary-alpha or vary-t, got '" + name + "'");
}

std::vector<BenchRecord> run_bench(BenchMode mode, const std::vector<double>& values,
                                   const ExperimentSpec& base)
{
    std::vector<BenchRecord> records;
    for (double value : values) {
        ExperimentSpec spec = base;
        spec.report_times.clear();
        (mode == BenchMode::vary_alpha ? spec.alpha : spec.t_final) = value;
        for (Method method : {Method::fd, Method::mc}) {
            spec.method = method;
            const ExperimentResult run = run_experiment(spec);
            BenchRecord rec;
            rec.method = to_string(method);
            rec.alpha = spec.alpha;
            rec.t = spec.t_final;
            rec.wall_time_s = run.wall_time;
            rec.op_count = run.op_count;
            if (method == Method::mc)
                rec.n_paths = spec.n_paths;
            records.push_back(rec);
        }
    }
    return records;
}

}  // namespace dtrw
