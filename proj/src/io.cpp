#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dtrw/experiment.hpp"

namespace dtrw {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_for_writing(const fs::path& path)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.precision(17);
    return out;
}

fs::path snapshot_path(const fs::path& output, std::int64_t step)
{
    fs::path p = output;
    p.replace_filename(output.stem().string() + "_n" + std::to_string(step) + output.extension().string());
    return p;
}

json spec_json(const ExperimentSpec& spec)
{
    return {
        {"method", to_string(spec.method)},
        {"alpha", spec.alpha},
        {"D_alpha", spec.D_alpha},
        {"delta_x", spec.delta_x},
        {"r", spec.r},
        {"p_right", spec.p_right},
        {"t_final", spec.t_final},
        {"n_paths", spec.n_paths},
        {"seed", spec.seed},
        {"workers", spec.workers},
        {"n_terms", spec.n_terms},
        {"tail_correction", spec.tail_correction},
        {"domain", spec.domain.to_string()},
        {"report_times", spec.report_times},
        {"output", spec.output},
    };
}

}  // namespace

void write_density_csv(const fs::path& path, const Snapshot& snapshot)
{
    std::ofstream out = open_for_writing(path);
    out << (snapshot.stderr_u ? "x,u,stderr\n" : "x,u\n");
    for (Eigen::Index j = 0; j < snapshot.x.size(); ++j) {
        out << snapshot.x(j) << ',' << snapshot.u(j);
        if (snapshot.stderr_u)
            out << ',' << (*snapshot.stderr_u)(j);
        out << '\n';
    }
}

Snapshot read_density_csv(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    const bool has_stderr = line == "x,u,stderr";
    if (!has_stderr && line != "x,u")
        throw std::runtime_error(path.string() + ": unexpected header '" + line + "'");

    std::vector<double> x, u, se;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        x.push_back(std::stod(cell));
        std::getline(row, cell, ',');
        u.push_back(std::stod(cell));
        if (has_stderr) {
            std::getline(row, cell, ',');
            se.push_back(std::stod(cell));
        }
    }
    Snapshot s;
    s.x = Eigen::Map<Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
    s.u = Eigen::Map<Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
    if (has_stderr)
        s.stderr_u = Eigen::Map<Eigen::VectorXd>(se.data(), static_cast<Eigen::Index>(se.size()));
    return s;
}

fs::path sidecar_path(const fs::path& csv)
{
    fs::path p = csv;
    return p.replace_extension(".json");
}

std::string sidecar_json(const ExperimentResult& result)
{
    json steps = json::array();
    for (const Snapshot& s : result.snapshots)
        steps.push_back({{"step", s.step}, {"t", s.t}});
    json counters = {{"op_count", result.op_count}};
    if (result.spec.method == Method::mc) {
        counters["total_jump_events"] = result.op_count;
        counters["total_waiting_draws"] = result.waiting_draws;
    }
    const json doc = {
        {"spec", spec_json(result.spec)},
        {"delta_t", result.delta_t},
        {"n_steps", result.n_steps},
        {"seed", result.spec.seed},
        {"snapshots", steps},
        {"counters", counters},
        {"wall_time_s", result.wall_time},
    };
    return doc.dump(2);
}

ExperimentSpec spec_from_sidecar(const fs::path& sidecar)
{
    std::ifstream in(sidecar);
    if (!in)
        throw std::runtime_error("cannot open " + sidecar.string());
    json doc;
    try {
        doc = json::parse(in);
        const json& j = doc.at("spec");
        ExperimentSpec spec;
        spec.method = parse_method(j.at("method").get<std::string>());
        spec.alpha = j.at("alpha").get<double>();
        spec.D_alpha = j.at("D_alpha").get<double>();
        spec.delta_x = j.at("delta_x").get<double>();
        spec.r = j.at("r").get<double>();
        spec.p_right = j.at("p_right").get<double>();
        spec.t_final = j.at("t_final").get<double>();
        spec.n_paths = j.at("n_paths").get<std::int64_t>();
        spec.seed = j.at("seed").get<std::uint64_t>();
        spec.workers = j.at("workers").get<unsigned>();
        spec.n_terms = j.at("n_terms").get<int>();
        spec.tail_correction = j.at("tail_correction").get<bool>();
        spec.domain = DomainSpec::parse(j.at("domain").get<std::string>());
        spec.report_times = j.at("report_times").get<std::vector<double>>();
        spec.output = j.at("output").get<std::string>();
        return spec;
    } catch (const json::exception& e) {
        throw ValidationError(sidecar.string() + ": " + e.what());
    }
}

std::vector<fs::path> write_outputs(const ExperimentResult& result)
{
    if (result.spec.output.empty())
        throw ValidationError("no output path given");
    const fs::path output = result.spec.output;
    std::vector<fs::path> written;
    for (std::size_t k = 0; k + 1 < result.snapshots.size(); ++k) {
        const fs::path p = snapshot_path(output, result.snapshots[k].step);
        write_density_csv(p, result.snapshots[k]);
        written.push_back(p);
    }
    write_density_csv(output, result.final());
    written.push_back(output);

    const fs::path meta = sidecar_path(output);
    open_for_writing(meta) << sidecar_json(result) << '\n';
    written.push_back(meta);
    return written;
}

void write_error_table(const fs::path& path, const std::vector<ErrorRow>& rows)
{
    std::ofstream out = open_for_writing(path);
    out << "alpha,t,x,fd,mc,analytic,abs_fd_analytic,abs_mc_analytic,abs_mc_fd\n";
    for (const ErrorRow& row : rows) {
        for (Eigen::Index j = 0; j < row.x.size(); ++j) {
            out << row.alpha << ',' << row.t << ',' << row.x(j) << ',' << row.fd(j) << ',' << row.mc(j)
                << ',' << row.analytic(j) << ',' << std::abs(row.fd(j) - row.analytic(j)) << ','
                << std::abs(row.mc(j) - row.analytic(j)) << ',' << std::abs(row.mc(j) - row.fd(j))
                << '\n';
        }
    }

    fs::path summary = path;
    summary.replace_filename(path.stem().string() + "_max" + path.extension().string());
    std::ofstream max_out = open_for_writing(summary);
    max_out << "alpha,t,max_fd_analytic,max_mc_analytic,max_mc_fd\n";
    for (const ErrorRow& row : rows)
        max_out << row.alpha << ',' << row.t << ',' << row.max_fd_analytic << ','
                << row.max_mc_analytic << ',' << row.max_mc_fd << '\n';
}

std::string bench_json(const std::vector<BenchRecord>& records)
{
    json doc = json::array();
    for (const BenchRecord& r : records) {
        doc.push_back({
            {"method", r.method},
            {"alpha", r.alpha},
            {"t", r.t},
            {"wall_time_s", r.wall_time_s},
            {"op_count", r.op_count},
            {"n_paths", r.n_paths ? json(*r.n_paths) : json(nullptr)},
        });
    }
    return doc.dump(2);
}

}  // namespace dtrw
