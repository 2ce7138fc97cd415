#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hcol/colouring.hpp"
#include "hcol/experiments.hpp"

namespace {

using hcol::ExperimentConfig;
using hcol::OutputFormat;
using nlohmann::json;

// A config file wins over anything given on the command line.
void apply_config_file(const std::string& path, ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j = json::parse(in);
    if (j.contains("q")) cfg.q_grid = j["q"].get<std::vector<int>>();
    if (j.contains("k")) cfg.k_grid = j["k"].get<std::vector<int>>();
    if (j.contains("c")) cfg.c_grid = j["c"].get<std::vector<double>>();
    if (j.contains("n")) cfg.n = j["n"].get<std::int64_t>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
    if (j.contains("seed")) cfg.base_seed = j["seed"].get<std::uint64_t>();
    if (j.contains("L")) cfg.L = j["L"].get<int>();
    if (j.contains("depthBudget")) cfg.depth_budget = j["depthBudget"].get<int>();
    if (j.contains("vertexCap")) cfg.vertex_cap = j["vertexCap"].get<int>();
    if (j.contains("planted")) cfg.planted = j["planted"].get<bool>();
    if (j.contains("scanSamples")) cfg.scan_samples = j["scanSamples"].get<std::int64_t>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
    if (j.contains("format")) {
        const auto f = j["format"].get<std::string>();
        if (f == "csv") cfg.format = OutputFormat::csv;
        else if (f == "json") cfg.format = OutputFormat::json;
        else throw std::invalid_argument("config: format must be csv or json");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random hypergraph colouring experiments"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string out_path;
    std::string config_path;
    std::string format = "csv";

    for (const char* name : {"thresholds", "cycles", "core", "frozen", "moments", "oracle"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--q", cfg.q_grid, "colour counts");
        sub->add_option("--k", cfg.k_grid, "edge sizes");
        sub->add_option("--c", cfg.c_grid, "edge densities m/n");
        sub->add_option("--n", cfg.n, "vertex count");
        sub->add_option("--trials", cfg.trials, "independent trials");
        sub->add_option("--seed", cfg.base_seed, "base seed; trial t uses seed+t");
        sub->add_option("--L", cfg.L, "max cycle length");
        sub->add_option("--depth-budget", cfg.depth_budget, "certificate depth budget");
        sub->add_option("--vertex-cap", cfg.vertex_cap, "certificate attempts per trial");
        sub->add_flag("--planted", cfg.planted, "plant a balanced map first");
        sub->add_option("--samples", cfg.scan_samples, "landscape scan samples");
        sub->add_option("--workers", cfg.workers, "worker threads");
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--config", config_path, "JSON config; overrides flags");
        sub->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
        if (!config_path.empty()) apply_config_file(config_path, cfg);
        cfg.validate();

        std::ofstream file;
        if (!out_path.empty()) {
            file.open(out_path);
            if (!file) throw std::invalid_argument("cannot open output file: " + out_path);
        }
        std::ostream& os = out_path.empty() ? std::cout : file;

        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "thresholds") return hcol::run_thresholds(cfg, os);
        if (cmd == "cycles") return hcol::run_cycles(cfg, os);
        if (cmd == "core") return hcol::run_core(cfg, os);
        if (cmd == "frozen") return hcol::run_frozen(cfg, os);
        if (cmd == "moments") return hcol::run_moments(cfg, os);
        return hcol::run_oracle(cfg, os);
    } catch (const hcol::ResourceGuardError& e) {
        std::cerr << "resource guard: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
