#pragma once

// Fenton-Wilkinson moment matching for the inverse-SINR factor
//   Y_f = sum_j r_j^-eta Y_j / (r^-eta Y_0)
// on a discrete set of interferers. All stations share power and sigma.

#include <span>
#include <vector>

#include "cellout/channel.hpp"
#include "cellout/hexnet.hpp"

namespace cellout {

/// Lognormal approximation of the total interference power.
struct InterferenceMoments {
    /// Linear value of the dB-domain mean, i.e. 10^(m/10) where m is the mean
    /// of 10*log10(I) under the matched lognormal (the geometric mean).
    double mean_linear = 0.0;
    /// Spread of the matched lognormal, in dB.
    double sigma_t_db = 0.0;

    /// Arithmetic mean E[I] of the matched lognormal; equals the exact mean of
    /// the sum since the matching preserves the first moment.
    double expected_power() const noexcept;
};

/// Lognormal parameters of Y_f together with the factors that produce them.
struct YfMoments {
    double m_f_db = 0.0;      ///< mean of 10*log10(Y_f)
    double s_f_db = 0.0;      ///< standard deviation of 10*log10(Y_f)
    double g_factor = 1.0;    ///< topological factor G in (0, 1]
    double y_f_linear = 0.0;  ///< shadowing-free value y_f
    double h_factor = 1.0;    ///< shadowing correction H in [1, G^-1/2]

    /// The same location expressed linearly: y_f * H = 10^(m_f_db / 10).
    double m_f_linear() const noexcept { return y_f_linear * h_factor; }
};

/// Compensated (Neumaier) sum of the terms in the order given.
double compensated_sum(std::span<const double> terms) noexcept;

/// y_f = sum_j (r_j / r)^-eta. Throws DomainError for an empty interferer
/// list, eta <= 2 or non-positive distances.
double y_factor_discrete(const DistanceProfile& profile, double eta);

/// G = sum_j r_j^-2eta / (sum_j r_j^-eta)^2.
double g_factor_discrete(const DistanceProfile& profile, double eta);

/// H = e^(a^2 s^2 / 2) * (G (e^(a^2 s^2) - 1) + 1)^-1/2.
/// Throws DomainError unless 0 < g <= 1 and sigma_db >= 0.
double h_function(double g, double sigma_db);

/// Moments from y_f, G and sigma. Shared by the discrete and fluid routes.
YfMoments yf_moments_from_factors(double y_f, double g, double sigma_db);

InterferenceMoments sum_lognormal_moments(const DistanceProfile& profile,
                                          const ChannelParams& params);

/// Per-station parameter overload. Stations must agree on power, k_const,
/// sigma and eta; anything else raises UnsupportedConfigurationError.
InterferenceMoments sum_lognormal_moments(const DistanceProfile& profile,
                                          std::span<const ChannelParams> per_station);

YfMoments yf_moments_discrete(const DistanceProfile& profile, const ChannelParams& params);

}  // namespace cellout
