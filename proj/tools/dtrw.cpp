// dtrw: command-line driver for the subdiffusion solvers.
//
//   dtrw fd --alpha 0.7 --out fd.csv
//   dtrw mc --alpha 0.7 --paths 1000000 --seed 7 --out mc.csv
//   dtrw errors --alphas 0.5,0.7,0.9 --out errors.csv
//   dtrw bench --mode vary-t --values 0.5,1,2 --out bench.json
//   dtrw replay mc.json
//
// Exit codes: 0 success, 2 invalid parameters, 3 numerical failure.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dtrw/dtrw.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct Options {
    dtrw::ExperimentSpec spec;
    std::string domain = "-1,1";
};

void add_experiment_flags(CLI::App* cmd, Options& o)
{
    auto& s = o.spec;
    cmd->add_option("--alpha", s.alpha, "Anomalous exponent in (0,1]")->capture_default_str();
    cmd->add_option("--d-alpha", s.D_alpha, "Generalized diffusion coefficient")->capture_default_str();
    cmd->add_option("--dx", s.delta_x, "Lattice spacing")->capture_default_str();
    cmd->add_option("--r", s.r, "Jump probability per event (1 - r stays)")->capture_default_str();
    cmd->add_option("--p-right", s.p_right, "Probability of a jump i -> i+1")->capture_default_str();
    cmd->add_option("--t", s.t_final, "Final time")->capture_default_str();
    cmd->add_option("--domain", o.domain, "lo,hi or unbounded")->capture_default_str();
    cmd->add_option("--report-times", s.report_times, "Extra snapshot times")->delimiter(',');
    cmd->add_option("--out", s.output, "Density CSV path (sidecar gets .json)");
}

void add_mc_flags(CLI::App* cmd, Options& o)
{
    cmd->add_option("--paths", o.spec.n_paths, "Number of walkers")->capture_default_str();
    cmd->add_option("--seed", o.spec.seed, "Master seed")->capture_default_str();
    cmd->add_option("--workers", o.spec.workers, "Threads (0 = all cores)")->capture_default_str();
}

void add_series_flags(CLI::App* cmd, Options& o)
{
    cmd->add_option("--terms", o.spec.n_terms, "Series terms")->capture_default_str();
    cmd->add_flag("--tail-correction", o.spec.tail_correction, "Add the summed asymptotic tail");
}

void emit(const dtrw::ExperimentResult& result)
{
    if (result.spec.output.empty()) {
        const auto& s = result.final();
        std::cout.precision(17);
        std::cout << (s.stderr_u ? "x,u,stderr\n" : "x,u\n");
        for (Eigen::Index j = 0; j < s.x.size(); ++j) {
            std::cout << s.x(j) << ',' << s.u(j);
            if (s.stderr_u)
                std::cout << ',' << (*s.stderr_u)(j);
            std::cout << '\n';
        }
        return;
    }
    for (const auto& path : dtrw::write_outputs(result))
        std::cerr << "wrote " << path.string() << '\n';
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path);
    out << text << '\n';
}

int run_jumps(double alpha, std::int64_t n_max, std::int64_t k_max, bool expected, const std::string& out)
{
    std::ostringstream text;
    text.precision(17);
    if (expected) {
        const Eigen::VectorXd e = dtrw::renewal_function(dtrw::SibuyaModel(alpha), n_max);
        text << "n,expected_jumps\n";
        for (std::int64_t n = 0; n <= n_max; ++n)
            text << n << ',' << e(n) << '\n';
    } else {
        const auto table = dtrw::build_jump_counts(alpha, n_max, k_max < 0 ? n_max : k_max);
        text << "n,k,p\n";
        for (std::int64_t n = 0; n <= n_max; ++n)
            for (std::int64_t k = 0; k <= std::min(n, table.k_max); ++k)
                text << n << ',' << k << ',' << table.p(n, k) << '\n';
    }
    std::string body = text.str();
    body.pop_back();
    write_text(out, body);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Discrete time random walk solvers for fractional subdiffusion"};
    app.require_subcommand(1);

    Options o;
    std::vector<CLI::App*> experiments;
    auto* mc = app.add_subcommand("mc", "Monte Carlo ensemble of Sibuya walkers");
    auto* fd = app.add_subcommand("fd", "Explicit memory-kernel finite differences");
    auto* an = app.add_subcommand("analytic", "Mittag-Leffler series on [-1,1]");
    auto* sub = app.add_subcommand("subordinate", "Subordination formula on the unbounded lattice");
    for (auto* cmd : {mc, fd, an, sub}) {
        add_experiment_flags(cmd, o);
        experiments.push_back(cmd);
    }
    add_mc_flags(mc, o);
    add_series_flags(an, o);

    auto* errors = app.add_subcommand("errors", "fd, mc and analytic differences per alpha");
    std::vector<double> alphas{0.5, 0.7, 0.9};
    add_experiment_flags(errors, o);
    add_mc_flags(errors, o);
    add_series_flags(errors, o);
    errors->add_option("--alphas", alphas, "Exponents to tabulate")->delimiter(',')->capture_default_str();

    auto* bench = app.add_subcommand("bench", "Operation counts and wall time for fd and mc");
    std::string bench_mode = "vary-t";
    std::vector<double> values{0.5, 1.0, 2.0};
    add_experiment_flags(bench, o);
    add_mc_flags(bench, o);
    bench->add_option("--mode", bench_mode, "vary-alpha or vary-t")->capture_default_str();
    bench->add_option("--values", values, "Grid of the varied parameter")->delimiter(',')->capture_default_str();

    auto* jumps = app.add_subcommand("jumps", "Jump-count law P_k(n) or expected jumps");
    double j_alpha = 0.5;
    std::int64_t j_steps = 40;
    std::int64_t j_kmax = -1;
    bool j_expected = false;
    std::string j_out;
    jumps->add_option("--alpha", j_alpha)->capture_default_str();
    jumps->add_option("--steps", j_steps, "Largest n")->capture_default_str();
    jumps->add_option("--k-max", j_kmax, "Largest k (default n)");
    jumps->add_flag("--expected", j_expected, "Emit E[k_n] instead of the table");
    jumps->add_option("--out", j_out);

    auto* replay = app.add_subcommand("replay", "Re-run an experiment from its JSON sidecar");
    std::string sidecar;
    std::string replay_out;
    replay->add_option("sidecar", sidecar)->required();
    replay->add_option("--out", replay_out, "Override the recorded output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*jumps)
            return run_jumps(j_alpha, j_steps, j_kmax, j_expected, j_out);

        if (*replay) {
            auto spec = dtrw::spec_from_sidecar(sidecar);
            if (!replay_out.empty())
                spec.output = replay_out;
            emit(dtrw::run_experiment(spec));
            return 0;
        }

        o.spec.domain = dtrw::DomainSpec::parse(o.domain);
        if (*sub && o.domain == "-1,1" && sub->count("--domain") == 0)
            o.spec.domain = dtrw::DomainSpec::unbounded();

        if (*errors) {
            const auto rows = dtrw::run_error_table(alphas, o.spec);
            if (!o.spec.output.empty())
                dtrw::write_error_table(o.spec.output, rows);
            std::cout << "alpha,t,max_fd_analytic,max_mc_analytic,max_mc_fd\n";
            std::cout.precision(6);
            for (const auto& row : rows)
                std::cout << row.alpha << ',' << row.t << ',' << row.max_fd_analytic << ','
                          << row.max_mc_analytic << ',' << row.max_mc_fd << '\n';
            return 0;
        }
        if (*bench) {
            const auto records = dtrw::run_bench(dtrw::parse_bench_mode(bench_mode), values, o.spec);
            write_text(o.spec.output, dtrw::bench_json(records));
            return 0;
        }

        if (*mc)
            o.spec.method = dtrw::Method::mc;
        else if (*fd)
            o.spec.method = dtrw::Method::fd;
        else if (*an)
            o.spec.method = dtrw::Method::analytic;
        else
            o.spec.method = dtrw::Method::subordination;
        emit(dtrw::run_experiment(o.spec));
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "dtrw: invalid parameters: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "dtrw: " << e.what() << '\n';
        return kExitNumerical;
    }
}
