// cellout: outage experiments from the command line.
//
//   cellout analytic --config exp.json --out results/
//   cellout simulate --config exp.json --seed 7 --threads 8 --dump-samples
//   cellout compare a.csv b.csv
//   cellout reproduce-paper --out figures/
//
// Exit codes: 0 success, 2 bad config or arguments, 3 numeric failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cellout/errors.hpp"
#include "cellout/harness/config.hpp"
#include "cellout/harness/experiment.hpp"

namespace {

using namespace cellout;
using namespace cellout::harness;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Globals {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
};

ExperimentConfig load(const Globals& g) {
    ExperimentConfig cfg = g.config.empty() ? ExperimentConfig{} : load_config(g.config);
    if (!g.out.empty()) {
        cfg.output.directory = g.out;
    }
    if (g.seed) {
        cfg.sim.seed = *g.seed;
    }
    return cfg;
}

void drop_model(ExperimentConfig& cfg, Model m) {
    std::erase(cfg.models, m);
    if (cfg.models.empty()) {
        throw ConfigError("no analytic model selected", 0);
    }
}

void print_report(const std::vector<ReportRow>& rows) {
    for (const auto& row : rows) {
        std::printf("%-30s %-9s vs %-9s max_dev=%.4f  d10: %s / %s dB  shift=%s dB\n",
                    row.key.tag().c_str(), to_string(row.model_a), to_string(row.model_b),
                    row.report.max_deviation, format_number(row.report.delta10_a_db).c_str(),
                    format_number(row.report.delta10_b_db).c_str(),
                    format_number(row.report.shift_db).c_str());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Downlink SINR outage: analytic models and hexagonal Monte Carlo"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config, "Experiment config (JSON)")->check(CLI::ExistingFile);
    app.add_option("--out", g.out, "Output directory (overrides the config)");
    app.add_option("--seed", g.seed, "Base seed for the simulations");
    app.add_option("--threads", g.threads, "Simulation worker threads, 0 = all cores");

    auto* analytic = app.add_subcommand("analytic", "Analytic outage curves and report");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo outage curves");
    bool dump = false;
    simulate->add_flag("--dump-samples", dump, "Also write raw SINR samples and the layout");
    auto* cmp = app.add_subcommand("compare", "Compare two curve files, or run every model");
    std::vector<std::string> files;
    cmp->add_option("curves", files, "Two curve CSV files")->expected(0, 2)->check(CLI::ExistingFile);
    auto* coverage = app.add_subcommand("coverage", "Coverage radius table");
    auto* capacity = app.add_subcommand("capacity", "Mean Shannon capacity table");
    auto* sweep = app.add_subcommand("mf-sweep", "m_f against the shadowing spread");
    auto* figures = app.add_subcommand("reproduce-paper", "Run the full figure suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (cmp->parsed() && !files.empty()) {
            if (files.size() != 2) {
                std::cerr << "compare: give two curve files or none\n";
                return kExitConfig;
            }
            const auto r = compare(read_curve_csv(files[0]), read_curve_csv(files[1]));
            std::cout << "max_dev,delta10_a_db,delta10_b_db,shift_db\n"
                      << format_number(r.max_deviation) << ',' << format_number(r.delta10_a_db)
                      << ',' << format_number(r.delta10_b_db) << ','
                      << format_number(r.shift_db) << '\n';
            return 0;
        }

        auto cfg = load(g);
        if (analytic->parsed()) {
            drop_model(cfg, Model::MonteCarlo);
            print_report(run_experiment(cfg, g.threads).rows);
        } else if (simulate->parsed()) {
            cfg.models = {Model::MonteCarlo};
            run_experiment(cfg, g.threads);
            if (dump) {
                dump_samples(cfg, g.threads);
            }
        } else if (cmp->parsed()) {
            print_report(run_experiment(cfg, g.threads).rows);
        } else if (coverage->parsed()) {
            coverage_table(cfg);
        } else if (capacity->parsed()) {
            capacity_table(cfg, g.threads);
        } else if (sweep->parsed()) {
            mf_sweep(cfg);
        } else if (figures->parsed()) {
            reproduce_figures(cfg, g.threads);
        }
        std::cerr << "wrote " << cfg.output.directory.string() << '\n';
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}
