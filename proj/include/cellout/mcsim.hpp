#pragma once

// Snapshot Monte Carlo on the hexagonal layout. Each snapshot draws
// independent shadowing and fast-fading variates on every link and records
// the SINR of the mobile(s) placed at the requested positions.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "cellout/channel.hpp"
#include "cellout/hexnet.hpp"

namespace cellout {

struct FixedPoint {
    Point position;
};

/// n_angles mobiles on the circle of radius r (see ring_positions).
struct RingPlacement {
    double r = 0.0;
    int n_angles = 1;
};

using MobileSpec = std::variant<FixedPoint, RingPlacement>;

struct SimConfig {
    std::uint64_t snapshots = 100000;
    std::uint64_t seed = 1;
    MobileSpec mobile = RingPlacement{};
    bool shadowing = true;
    bool fading = true;             ///< Rayleigh fading on the serving link
    bool interferer_fading = true;  ///< Rayleigh fading on interfering links (needs `fading`)
    bool allow_outside_cell = false;

    void validate() const;
    /// Deterministic one-line description, stored with the samples.
    std::string echo() const;
};

struct SampleMeta {
    std::uint64_t layout_hash = 0;
    std::string config_echo;
};

/// values_db[snapshot * positions + position_index].
struct SinrSamples {
    std::vector<double> values_db;
    std::uint64_t snapshots = 0;
    std::size_t positions = 0;
    SampleMeta meta;

    /// CSV with header `snapshot,angle_index,sinr_db`.
    void write_csv(std::ostream& os) const;
};

/// Runs the simulation with `threads` workers (0 = hardware concurrency).
/// Output is bit-identical for any thread count.
SinrSamples simulate(const NetworkLayout& layout, const ChannelParams& params,
                     const SimConfig& sc, unsigned threads = 1);

struct EmpiricalOutage {
    OutageCurve curve;
    std::vector<double> standard_error;  ///< binomial standard error per grid point
};

/// probs[i] = fraction of samples strictly below grid[i].
EmpiricalOutage empirical_outage(const SinrSamples& s, const std::vector<double>& grid_db);
EmpiricalOutage empirical_outage(const std::vector<double>& samples_db,
                                 const std::vector<double>& grid_db);

struct LognormalSumSample {
    double mean_linear = 0.0;  ///< sample mean of sum_j P K r_j^-eta Y_j
    double mean_db = 0.0;      ///< sample mean of the sum in dB
    double sigma_t_db = 0.0;   ///< sample standard deviation of the sum in dB
    /// Spread of the lognormal with the sample's linear mean and variance,
    /// sqrt(ln(1 + var / mean^2)) / a: the quantity moment matching predicts.
    double sigma_matched_db = 0.0;
};

/// Sampling oracle for the Fenton-Wilkinson interference moments.
LognormalSumSample sample_lognormal_sum(const DistanceProfile& profile,
                                        const ChannelParams& params, std::uint64_t n,
                                        std::uint64_t seed);

/// Sample mean and standard deviation of 10 log10(Y_f) with shadowing only.
struct YfSample {
    double mean_db = 0.0;
    double std_db = 0.0;
};
YfSample sample_yf_db(const DistanceProfile& profile, const ChannelParams& params,
                      std::uint64_t n, std::uint64_t seed);

}  // namespace cellout
