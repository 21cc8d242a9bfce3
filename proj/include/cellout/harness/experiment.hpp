#pragma once

// Experiment orchestration: analytic and simulated outage curves over a
// parameter sweep, pairwise comparison reports and the CSV/SVG writers.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cellout/channel.hpp"
#include "cellout/harness/config.hpp"
#include "cellout/hexnet.hpp"
#include "cellout/mcsim.hpp"
#include "cellout/outage.hpp"

namespace cellout::harness {

struct ComparisonReport {
    double max_deviation = 0.0;
    double delta10_a_db = 0.0;  ///< NaN when curve a never crosses p
    double delta10_b_db = 0.0;
    double shift_db = 0.0;      ///< delta10_b_db - delta10_a_db
};

/// Compares two curves on the same grid. Throws DomainError on a grid
/// mismatch.
ComparisonReport compare(const OutageCurve& a, const OutageCurve& b, double p = 0.1);

/// One (eta, sigma, r, channel mode) combination.
struct CurveKey {
    double eta = 3.0;
    double sigma_db = 0.0;
    double r_over_rc = 1.0;
    OutageMode mode = OutageMode::Fading;

    /// e.g. "eta3_sigma3_r1_fading".
    std::string tag() const;
};

struct CurveResult {
    CurveKey key;
    Model model = Model::Fluid;
    OutageCurve curve;
    std::vector<double> standard_error;  ///< zeros for analytic curves
    std::vector<double> samples_db;      ///< raw SINR samples, mc with keep_samples only
};

struct ReportRow {
    CurveKey key;
    Model model_a = Model::Fluid;
    Model model_b = Model::MonteCarlo;
    ComparisonReport report;
};

struct ExperimentResult {
    std::vector<CurveResult> curves;
    std::vector<ReportRow> rows;
};

/// Geometry shared by all curves of an experiment.
struct Geometry {
    NetworkLayout layout;
    FluidParams fluid;
};

Geometry make_geometry(const ExperimentConfig& cfg);

/// Analytic curve for one model (Discrete or Fluid).
CurveResult analytic_curve(const ExperimentConfig& cfg, const Geometry& geo, const CurveKey& key,
                           Model model);

/// Monte Carlo curve. The seed is derived from cfg.sim.seed and the key tag.
CurveResult simulated_curve(const ExperimentConfig& cfg, const Geometry& geo,
                            const CurveKey& key, unsigned threads, bool keep_samples = false);

/// Simulator settings for `key`: ring placement at r, shadowing when
/// sigma > 0, fading in fading mode.
SimConfig sim_config_for(const ExperimentConfig& cfg, const Geometry& geo, const CurveKey& key);

/// Seed used for the simulated curve of `key`.
std::uint64_t curve_seed(std::uint64_t base_seed, const CurveKey& key);

/// Every combination of the config, in a fixed order.
std::vector<CurveKey> curve_keys(const ExperimentConfig& cfg);

/// Computes all curves and comparisons without touching the filesystem.
ExperimentResult evaluate_experiment(const ExperimentConfig& cfg, unsigned threads);

/// Writes curve_<tag>_<model>.csv files, report.csv and (optionally) one SVG
/// per combination into cfg.output.directory.
void write_experiment(const ExperimentConfig& cfg, const ExperimentResult& result);

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads);

/// Raw Monte Carlo output: layout.csv, samples_<tag>.csv per combination and
/// samples_meta.json with the layout hash, seed and sampler settings.
void dump_samples(const ExperimentConfig& cfg, unsigned threads);

/// mf_vs_sigma.csv and mf_saturation.csv (fluid geometry).
void mf_sweep(const ExperimentConfig& cfg);

/// coverage.csv: coverage radius per (eta, sigma, mode, delta).
void coverage_table(const ExperimentConfig& cfg);

/// capacity.csv: mean capacity per (eta, sigma, r, mode, model).
void capacity_table(const ExperimentConfig& cfg, unsigned threads);

/// Runs the figure suite into fig2 .. fig6 subdirectories of
/// cfg.output.directory and writes a summary CSV of headline numbers.
void reproduce_figures(const ExperimentConfig& cfg, unsigned threads);

// CSV helpers, exposed for the CLI and tests.

/// Shortest round-trip decimal, "nan" for NaN.
std::string format_number(double v);

void write_curve_csv(std::ostream& os, const OutageCurve& curve,
                     const std::vector<double>& standard_error);

/// Reads a `delta_db,prob[,stderr]` file. Throws DomainError on bad input.
OutageCurve read_curve_csv(const std::filesystem::path& path);

void write_report_csv(std::ostream& os, const std::vector<ReportRow>& rows);

}  // namespace cellout::harness
