#pragma once

// Shared numeric primitives: dB conversions, the Gaussian tail function and
// the propagation-model parameter records used by every other module.

#include <numbers>
#include <vector>

namespace cellout {

/// a = ln(10)/10, converts a dB quantity to the natural-log domain.
/// This is the only definition; every dB <-> neper conversion uses it.
inline constexpr double kDbToNeper = std::numbers::ln10 / 10.0;

double db_to_linear(double x_db) noexcept;

/// Throws DomainError for x <= 0.
double linear_to_db(double x);

/// Gaussian tail probability Q(u) = erfc(u / sqrt(2)) / 2.
double q_function(double u) noexcept;

/// CDF of the Rayleigh fast-fading power gain X ~ Exp(1). Throws for x < 0.
double rayleigh_power_cdf(double x);

/// Propagation model p = power * k_const * r^-eta * Y, Y lognormal with
/// dB spread sigma_db.
struct ChannelParams {
    double eta = 3.0;
    double sigma_db = 0.0;
    double power = 1.0;
    double k_const = 1.0;
    double noise = 0.0;  ///< thermal noise; carried for completeness, never used

    /// Throws DomainError unless eta > 2, sigma_db >= 0, power > 0, k_const > 0.
    void validate() const;

    bool operator==(const ChannelParams&) const = default;
};

/// Parameters of a lognormal variable, expressed in dB.
struct LognormalParams {
    double mu_db = 0.0;
    double sigma_db = 0.0;

    void validate() const;
};

/// Outage probability P(SINR < delta) sampled on a threshold grid.
struct OutageCurve {
    std::vector<double> thresholds_db;
    std::vector<double> probs;

    /// Checks equal lengths, strictly increasing thresholds, probabilities
    /// in [0,1] and nondecreasing.
    void validate() const;
};

/// Throws DomainError unless the grid is nonempty and strictly increasing.
void validate_threshold_grid(const std::vector<double>& grid_db);

}  // namespace cellout
