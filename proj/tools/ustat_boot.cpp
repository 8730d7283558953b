// ustat-boot: command line front end for the U-statistic block bootstrap
// experiments.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ustatboot/blocksel.hpp"
#include "ustatboot/error.hpp"
#include "ustatboot/experiments.hpp"
#include "ustatboot/procgen.hpp"
#include "ustatboot/table_io.hpp"

namespace {

using namespace ustatboot;

struct ProcessOptions {
    std::string kind = "ar1";
    double phi = 0.5;
    double sd = 1.0;

    void add_to(CLI::App& app) {
        app.add_option("--process", kind, "Process: ar1 or iid_normal")->capture_default_str();
        app.add_option("--phi", phi, "AR(1) coefficient")->capture_default_str();
        app.add_option("--sd", sd, "Innovation standard deviation")->capture_default_str();
    }

    [[nodiscard]] ProcessSpec spec() const {
        switch (process_kind_from_string(kind)) {
            case ProcessKind::Ar1: return ProcessSpec::ar1(phi, sd);
            case ProcessKind::IidNormal: return ProcessSpec::iid_normal(sd);
            case ProcessKind::DiscreteMarkov: break;
        }
        fail(ErrorKind::Config, "discrete_markov processes are only available through a config file");
    }
};

struct KernelOptions {
    KernelSpec spec;

    void add_to(CLI::App& app) {
        app.add_option("--kernel", spec.name, "Kernel: variance or indicator")->capture_default_str();
        app.add_option("--t", spec.t, "Indicator kernel threshold")->capture_default_str();
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Config, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Config, "cannot write '" + path + "'");
    out << text;
}

std::string json_path_for(const std::string& csv_path) {
    const auto dot = csv_path.find_last_of('.');
    const auto slash = csv_path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return csv_path + ".json";
    return csv_path.substr(0, dot) + ".json";
}

Sample read_series(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<double> xs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        try {
            std::size_t used = 0;
            xs.push_back(std::stod(line, &used));
        } catch (const std::exception&) {
            fail(ErrorKind::InvalidInput, path + ":" + std::to_string(lineno) + ": not a number");
        }
    }
    return Sample(std::move(xs));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"U-statistics of dependent data: block bootstrap versus normal approximation"};
    app.require_subcommand(1);

    // table
    auto* table = app.add_subcommand("table", "Run the D_boot / D_norm comparison table");
    std::string config_path;
    std::string out_path = "results.csv";
    std::string json_out;
    std::optional<std::uint64_t> table_seed;
    std::optional<std::size_t> rows;
    std::optional<std::string> table_scheme;
    std::optional<std::size_t> table_reps;
    table->add_option("--config", config_path, "JSON run configuration (defaults when omitted)");
    table->add_option("--out", out_path, "CSV output path")->capture_default_str();
    table->add_option("--json-out", json_out, "JSON output path (default: CSV path with .json)");
    table->add_option("--seed", table_seed, "Master seed, overrides the configuration");
    table->add_option("--rows", rows, "Run only the first N cells");
    table->add_option("--scheme", table_scheme, "Block scheme, overrides the configuration");
    table->add_option("--reps", table_reps, "Realizations per cell, overrides the configuration");

    // cell
    auto* cell = app.add_subcommand("cell", "Run a single (n, l) cell");
    CellConfig cell_cfg;
    std::string cell_scheme = "circular";
    std::string cell_center = "exact";
    std::uint64_t cell_seed = 42;
    ProcessOptions cell_process;
    KernelOptions cell_kernel;
    cell->add_option("--n", cell_cfg.n, "Sample size")->capture_default_str();
    cell->add_option("--l", cell_cfg.l, "Block length and normal-approximation lag")->capture_default_str();
    cell->add_option("--reps", cell_cfg.reps, "Realizations")->capture_default_str();
    cell->add_option("--boot-reps", cell_cfg.boot_reps, "Bootstrap replicates per realization")->capture_default_str();
    cell->add_option("--ref-reps", cell_cfg.ref_reps, "Draws for the reference distribution")->capture_default_str();
    cell->add_option("--scheme", cell_scheme, "circular, moving or nonoverlapping")->capture_default_str();
    cell->add_option("--center", cell_center, "Bootstrap centring: exact or mc")->capture_default_str();
    cell->add_option("--seed", cell_seed, "Master seed")->capture_default_str();
    cell_process.add_to(*cell);
    cell_kernel.add_to(*cell);

    // select-l
    auto* select = app.add_subcommand("select-l", "Subsampling MSE block-length selection");
    std::size_t sel_n = 500;
    BlockSelectConfig sel_cfg{7, 60, 0.25, 200, BlockKind::Circular};
    std::string sel_scheme = "circular";
    std::string sel_input;
    std::string sel_out;
    std::uint64_t sel_seed = 42;
    ProcessOptions sel_process;
    KernelOptions sel_kernel;
    select->add_option("--n", sel_n, "Length of the simulated series")->capture_default_str();
    select->add_option("--m", sel_cfg.subsample_size, "Subsample (window) size")->capture_default_str();
    select->add_option("--pilot", sel_cfg.pilot_length, "Pilot block length")->capture_default_str();
    select->add_option("--eps", sel_cfg.epsilon, "Grid parameter epsilon")->capture_default_str();
    select->add_option("--bsel", sel_cfg.boot_reps, "Bootstrap replicates per variance")->capture_default_str();
    select->add_option("--scheme", sel_scheme, "circular, moving or nonoverlapping")->capture_default_str();
    select->add_option("--input", sel_input, "Read the series from a file (one value per line) instead");
    select->add_option("--out", sel_out, "Write the MSE curve CSV here instead of standard output");
    select->add_option("--seed", sel_seed, "Master seed")->capture_default_str();
    sel_process.add_to(*select);
    sel_kernel.add_to(*select);

    // decay
    auto* decay = app.add_subcommand("decay", "E[n U_n(h2)^2] across sample sizes");
    std::vector<std::size_t> decay_ns{50, 100, 200, 400};
    std::size_t decay_reps = 2000;
    std::uint64_t decay_seed = 42;
    ProcessOptions decay_process;
    KernelOptions decay_kernel;
    decay->add_option("--ns", decay_ns, "Comma-separated sample sizes")->delimiter(',')->capture_default_str();
    decay->add_option("--reps", decay_reps, "Replications per sample size")->capture_default_str();
    decay->add_option("--seed", decay_seed, "Master seed")->capture_default_str();
    decay_process.add_to(*decay);
    decay_kernel.add_to(*decay);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*table) {
            TableConfig cfg = config_path.empty() ? TableConfig{} : parse_table_config(read_file(config_path));
            if (table_seed) cfg.seed = *table_seed;
            if (table_scheme) cfg.scheme = block_kind_from_string(*table_scheme);
            if (table_reps) cfg.reps = *table_reps;
            const TableResult result = run_table(cfg, rows);
            const std::string csv = table_to_csv(result);
            write_file(out_path, csv);
            write_file(json_out.empty() ? json_path_for(out_path) : json_out, table_to_json(result));
            std::cout << csv;
        } else if (*cell) {
            cell_cfg.scheme = block_kind_from_string(cell_scheme);
            if (cell_center == "exact") {
                cell_cfg.center = CenterMode::Exact;
            } else if (cell_center == "mc") {
                cell_cfg.center = CenterMode::MonteCarlo;
            } else {
                fail(ErrorKind::Config, "--center must be exact or mc");
            }
            cell_cfg.process = cell_process.spec();
            const Kernel k = make_kernel(cell_kernel.spec);
            TableResult result;
            result.config.seed = cell_seed;
            result.cells.push_back(run_cell(cell_cfg, k, cell_stream(RngStream(cell_seed), cell_cfg.n, cell_cfg.l)));
            std::cout << table_to_csv(result);
        } else if (*select) {
            sel_cfg.scheme = block_kind_from_string(sel_scheme);
            const RngStream root(sel_seed);
            Sample series;
            if (sel_input.empty()) {
                RngStream series_rng = root.child(Purpose::Series);
                series = simulate(sel_process.spec(), sel_n, series_rng);
            } else {
                series = read_series(sel_input);
            }
            const Kernel k = make_kernel(sel_kernel.spec);
            const auto result = select_block_length(series, k, sel_cfg, root.child(Purpose::Bootstrap));
            std::ostringstream curve;
            curve << "l,mse\n";
            for (const auto& [l, mse] : result.mse_curve) curve << l << ',' << format_double(mse) << '\n';
            if (sel_out.empty()) {
                std::cout << curve.str();
            } else {
                write_file(sel_out, curve.str());
            }
            std::cout << "l_hat," << result.l_hat << '\n';
        } else if (*decay) {
            const Kernel k = make_kernel(decay_kernel.spec);
            const auto points = decay_study(k, decay_process.spec(), decay_ns, decay_reps, RngStream(decay_seed));
            std::cout << "n,estimate,std_error,reps\n";
            for (const auto& p : points) {
                std::cout << p.n << ',' << format_double(p.estimate.mean) << ','
                          << format_double(p.estimate.std_error) << ',' << p.estimate.reps << '\n';
            }
        }
    } catch (const Error& e) {
        std::cerr << "ustat-boot: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
