#include "cellout/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cellout/errors.hpp"

namespace cellout {

namespace {

constexpr double kEdgeGuard = 1e-9;

}  // namespace

FluidParams FluidParams::hexagonal(double rc, double r_nw) {
    if (!(rc > 0.0)) {
        throw DomainError("FluidParams: rc must be positive");
    }
    FluidParams fp{1.0 / (2.0 * std::numbers::sqrt3 * rc * rc), rc, r_nw};
    fp.validate();
    return fp;
}

void FluidParams::validate() const {
    if (!(rho_bs >= 0.0) || !std::isfinite(rho_bs)) {
        throw DomainError("FluidParams: rho_bs must be nonnegative and finite");
    }
    if (!(rc > 0.0)) {
        throw DomainError("FluidParams: rc must be positive");
    }
    if (!(r_nw >= 2.0 * rc) || !std::isfinite(r_nw)) {
        throw DomainError("FluidParams: r_nw must be finite and at least 2 rc");
    }
}

double y_fluid(double r, double eta, const FluidParams& fp) {
    fp.validate();
    if (!(eta > 2.0)) {
        throw SingularityError("fluid model requires eta > 2, got " + std::to_string(eta));
    }
    if (!(r > 0.0 && r < 2.0 * fp.rc && r < fp.r_nw)) {
        throw DomainError("fluid model requires 0 < r < min(2 rc, r_nw), got r = " +
                          std::to_string(r));
    }
    r = std::min(r, 2.0 * fp.rc * (1.0 - kEdgeGuard));

    // Work with distances relative to r: the prefactor r^eta cancels against
    // the bracket, leaving a function of the ratios alone.
    const double inner = (2.0 * fp.rc - r) / r;
    const double outer = (fp.r_nw - r) / r;
    const double bracket = std::pow(inner, 2.0 - eta) - std::pow(outer, 2.0 - eta);
    return 2.0 * std::numbers::pi * fp.rho_bs * r * r / (eta - 2.0) * bracket;
}

double g_fluid(double r, double eta, const FluidParams& fp) {
    const double y1 = y_fluid(r, eta, fp);
    const double y2 = y_fluid(r, 2.0 * eta, fp);
    const double g = y2 / (y1 * y1);
    if (!(g > 0.0 && g <= 1.0)) {
        throw ModelViolationError("fluid G factor outside (0, 1]: " + std::to_string(g), g);
    }
    return g;
}

YfMoments yf_moments_fluid(double r, const ChannelParams& params, const FluidParams& fp) {
    params.validate();
    return yf_moments_from_factors(y_fluid(r, params.eta, fp), g_fluid(r, params.eta, fp),
                                   params.sigma_db);
}

std::vector<SaturationPoint> h_saturation_curve(double r, double eta, const FluidParams& fp,
                                                const std::vector<double>& sigma_grid_db) {
    if (sigma_grid_db.empty()) {
        throw DomainError("h_saturation_curve: empty sigma grid");
    }
    const double y = y_fluid(r, eta, fp);
    const double g = g_fluid(r, eta, fp);
    std::vector<SaturationPoint> out;
    out.reserve(sigma_grid_db.size());
    for (double sigma : sigma_grid_db) {
        out.push_back({sigma, yf_moments_from_factors(y, g, sigma)});
    }
    return out;
}

}  // namespace cellout
