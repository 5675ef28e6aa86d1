// Batch front-end: run experiments from a config file, design impedance
// values for a target refraction coefficient, and compare solution tables.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wavescat/compare.hpp"
#include "wavescat/config.hpp"
#include "wavescat/experiment.hpp"

namespace {

using namespace wavescat;

struct Table {
    std::vector<Vec3> points;
    std::vector<Cplx> values;
};

Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read table '" + path + "'");
    Table t;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("x,", 0) == 0) continue;  // header
        std::stringstream ss(line);
        std::string item;
        std::vector<double> cols;
        while (std::getline(ss, item, ',')) cols.push_back(std::stod(item));
        if (cols.size() != 5) throw std::runtime_error("expected 5 columns (x,y,z,re,im) in '" + path + "'");
        t.points.push_back({cols[0], cols[1], cols[2]});
        t.values.emplace_back(cols[3], cols[4]);
    }
    if (t.points.empty()) throw std::runtime_error("table '" + path + "' holds no rows");
    return t;
}

std::string basename_no_ext(const std::string& path) {
    auto slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

int compare_tables(const std::string& path_a, const std::string& path_b, int p_side, double side,
                   const std::string& out_path) {
    const Table a = read_table(path_a);
    const Table b = read_table(path_b);

    // B's comparison value for an A point: the value at B's nearest point
    const SubcubePartition agg = make_partition(side, Vec3{}, p_side);
    std::vector<Cplx> b_at_a(a.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        std::size_t best = 0;
        double best_d = norm(a.points[i] - b.points[0]);
        for (std::size_t j = 1; j < b.points.size(); ++j) {
            const double d = norm(a.points[i] - b.points[j]);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        b_at_a[i] = b.values[best];
    }
    std::vector<Cplx> abs_diffs(a.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) abs_diffs[i] = a.values[i] - b_at_a[i];

    // sup-mean over the aggregation subcubes; cells without samples are skipped
    std::vector<double> sum(static_cast<std::size_t>(agg.count()), 0.0);
    std::vector<std::int64_t> count(static_cast<std::size_t>(agg.count()), 0);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        const auto q = static_cast<std::size_t>(subcube_of(agg, a.points[i]));
        sum[q] += std::abs(abs_diffs[i]);
        ++count[q];
    }
    double metric = 0.0;
    std::vector<std::pair<std::int64_t, double>> per;
    for (std::size_t q = 0; q < sum.size(); ++q) {
        if (count[q] == 0) continue;
        const double mean = sum[q] / static_cast<double>(count[q]);
        per.emplace_back(static_cast<std::int64_t>(q), mean);
        metric = std::max(metric, mean);
    }

    const std::string pair = basename_no_ext(path_a) + "-" + basename_no_ext(path_b);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", round4(metric));
    std::cout << "pair = " << pair << "\nmetric = " << buf << "\n";
    if (!out_path.empty()) {
        std::ofstream os(out_path);
        if (!os) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return ExitIo;
        }
        os << "# pair=" << pair << " metric=" << metric << "\nsubcube,mean_abs_diff\n";
        for (const auto& [q, mean] : per) os << q << ',' << mean << "\n";
    }
    return ExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matrix-free solver for scalar wave scattering by many small impedance particles"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "solve the formulations requested by a config file");
    run_cmd->add_option("config", config_path, "experiment config file")->required();

    std::string design_config, design_n;
    auto* design_cmd = app.add_subcommand("design", "impedance h for a target refraction coefficient");
    design_cmd->add_option("config", design_config, "experiment config file")->required();
    design_cmd->add_option("--n", design_n, "target refraction coefficient, e.g. -1+0.001i");

    std::string table_a, table_b, compare_out;
    int compare_p_side = 20;
    double compare_side = 1.0;
    auto* compare_cmd = app.add_subcommand("compare", "sup-mean difference of two report-grid tables");
    compare_cmd->add_option("tableA", table_a, "first table (x,y,z,re,im CSV)")->required();
    compare_cmd->add_option("tableB", table_b, "second table")->required();
    compare_cmd->add_option("--partition", compare_p_side, "aggregation subcubes per side");
    compare_cmd->add_option("--side", compare_side, "domain edge length");
    compare_cmd->add_option("--out", compare_out, "write the per-subcube table here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : wavescat::ExitConfig;
    }

    try {
        if (run_cmd->parsed()) {
            const auto cfg = wavescat::parse_config_file(config_path);
            return wavescat::run_experiment(cfg, std::cout);
        }
        if (design_cmd->parsed()) {
            auto cfg = wavescat::parse_config_file(design_config);
            if (!design_n.empty()) cfg.n_target = wavescat::parse_complex(design_n);
            return wavescat::run_design(cfg, std::cout);
        }
        if (compare_cmd->parsed()) {
            return compare_tables(table_a, table_b, compare_p_side, compare_side, compare_out);
        }
    } catch (const wavescat::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wavescat::ExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wavescat::ExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wavescat::ExitIo;
    }
    return 0;
}
