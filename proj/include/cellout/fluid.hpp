#pragma once

// Fluid network model: the interfering stations are replaced by a uniform
// density rho_bs on the annulus [2 rc, r_nw] around the serving station, so
// that y_f and G depend on the serving distance r only.

#include <vector>

#include "cellout/channel.hpp"
#include "cellout/fenton.hpp"

namespace cellout {

struct FluidParams {
    double rho_bs = 0.0;  ///< stations per m^2
    double rc = 0.0;      ///< half inter-site distance (m)
    double r_nw = 0.0;    ///< network radius (m)

    /// Density of the hexagonal lattice with inter-site distance 2 rc.
    static FluidParams hexagonal(double rc, double r_nw);

    /// Requires rho_bs >= 0 and 0 < 2 rc <= r_nw. A zero density is accepted
    /// as the degenerate interference-free network.
    void validate() const;
};

/// 2 pi rho r^eta / (eta - 2) * [(2 rc - r)^(2-eta) - (r_nw - r)^(2-eta)].
///
/// Requires 0 < r < 2 rc and r < r_nw; r is capped at 2 rc (1 - 1e-9) to
/// keep the first term finite. eta <= 2 raises SingularityError.
double y_fluid(double r, double eta, const FluidParams& fp);

/// y_fluid(r, 2 eta) / y_fluid(r, eta)^2. A value outside (0, 1] raises
/// ModelViolationError carrying the value; it is never clamped.
double g_fluid(double r, double eta, const FluidParams& fp);

YfMoments yf_moments_fluid(double r, const ChannelParams& params, const FluidParams& fp);

struct SaturationPoint {
    double sigma_db = 0.0;
    YfMoments moments;
};

/// m_f (and the other moments) across a grid of shadowing spreads.
std::vector<SaturationPoint> h_saturation_curve(double r, double eta, const FluidParams& fp,
                                                const std::vector<double>& sigma_grid_db);

}  // namespace cellout
