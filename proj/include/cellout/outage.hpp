#pragma once

// Outage probability P(SINR < delta) for the lognormal inverse-SINR factor
// Y_f, with or without Rayleigh fading on the serving link, plus the coverage
// radius and Shannon capacity derived from it.

#include <vector>

#include "cellout/channel.hpp"
#include "cellout/fenton.hpp"
#include "cellout/fluid.hpp"

namespace cellout {

enum class OutageMode { Shadowing, Fading };

enum class QuadratureMethod {
    /// Closed form below the Q transition, Gauss-Legendre panels across it
    /// and a Gauss-Laguerre rule for the e^-x tail beyond it.
    GaussLaguerre,
    /// Adaptive Gauss-Kronrod after substituting t = e^-x.
    Adaptive,
};

struct QuadratureConfig {
    QuadratureMethod method = QuadratureMethod::GaussLaguerre;
    int nodes = 64;
    double abs_tol = 1e-8;

    void validate() const;
};

/// Q((-delta_db - m_f_db) / s_f_db); for s_f_db == 0 the step
/// 0 below -m_f_db, 1 above, 0.5 at the step.
double outage_shadowing(const YfMoments& m, double delta_db);

/// int_0^inf Q((10 log10(x / delta) - m_f_db) / s_f_db) e^-x dx.
/// For s_f_db == 0 returns 1 - exp(-delta * 10^(m_f_db / 10)).
/// Adaptive mode throws NumericError if abs_tol cannot be reached.
double outage_fading(const YfMoments& m, double delta_db, const QuadratureConfig& qc = {});

double outage_probability(const YfMoments& m, double delta_db, OutageMode mode,
                          const QuadratureConfig& qc = {});

/// Pointwise evaluation on a strictly increasing grid.
OutageCurve outage_curve(const YfMoments& m, const std::vector<double>& grid_db,
                         OutageMode mode, const QuadratureConfig& qc = {});

/// Threshold (dB) at which the analytic outage equals p, by bisection on
/// delta to tol_db. Throws DomainError unless 0 < p < 1 and RangeError when
/// p is not attained on [-400, 200] dB.
double sinr_at_outage(const YfMoments& m, OutageMode mode, double p,
                      const QuadratureConfig& qc = {}, double tol_db = 1e-6);

/// Threshold at which a tabulated curve reaches p: locate the first grid
/// point with prob >= p by bisection and interpolate linearly from the
/// previous point. Throws RangeError if p lies outside the curve's range.
double sinr_at_outage(const OutageCurve& curve, double p);

/// Analytic model as a function of the serving distance (fluid geometry).
struct OutageModel {
    ChannelParams channel;
    FluidParams fluid;
    OutageMode mode = OutageMode::Fading;
    QuadratureConfig quadrature;

    YfMoments moments_at(double r) const;
    double outage(double r, double delta_db) const;
};

enum class CoverageStatus { Interior, FullCell, NoCoverage };

struct CoverageResult {
    double radius = 0.0;  ///< 0 when status is NoCoverage
    CoverageStatus status = CoverageStatus::Interior;
    int iterations = 0;
    double bracket_width = 0.0;
};

/// Largest r in (0, rc] with outage(r, delta) <= p_target, by bisection until
/// the outage at the returned radius is within 1e-6 of p_target or the bracket
/// is below rc * 1e-12. Requires 0 < p_target <= 1.
/// Throws ConsistencyError if outage is found to decrease with r.
CoverageResult coverage_radius(const OutageModel& model, double delta_db, double p_target);

/// E[log2(1 + SINR)] in bit/s/Hz, integrating the SINR survival function
/// over the dB axis.
double mean_capacity(const YfMoments& m, OutageMode mode, const QuadratureConfig& qc = {});

const char* to_string(OutageMode mode) noexcept;
const char* to_string(CoverageStatus status) noexcept;

}  // namespace cellout
