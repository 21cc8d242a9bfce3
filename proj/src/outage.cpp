#include "cellout/outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cellout/errors.hpp"
#include "cellout/quadrature.hpp"

namespace cellout {

namespace {

// Q(+-9) differs from 0/1 by about 1e-19: beyond it the Q factor is a constant.
constexpr double kQCut = 9.0;
// e^-x underflows to zero in double precision past this point.
constexpr double kExpCut = 746.0;
constexpr int kPanelNodes = 12;
constexpr int kBisectionCap = 200;
constexpr double kDeltaLow = -400.0;
constexpr double kDeltaHigh = 200.0;

void check_moments(const YfMoments& m) {
    if (!(m.s_f_db >= 0.0) || !std::isfinite(m.m_f_db)) {
        throw DomainError("invalid Y_f moments (need finite m_f_db and s_f_db >= 0)");
    }
}

// Q argument as a function of x: u = (ln x - ln x0) / c, with
// ln x0 = a (delta_db + m_f_db) and c = a s_f_db.
double fading_laguerre(double ln_x0, double c, int tail_nodes) {
    const double ln_lo = ln_x0 - c * kQCut;
    const double ln_hi = ln_x0 + c * kQCut;
    const double x_lo = std::exp(ln_lo);
    if (x_lo >= kExpCut) {
        return 1.0;
    }
    // Below x_lo the integrand is e^-x to within 1e-19.
    double total = -std::expm1(-x_lo);

    // Transition: integrate Q(u) e^-x(u) dx/du over u in [-kQCut, u_end].
    const double u_end = std::min(kQCut, (std::log(kExpCut) - ln_x0) / c);
    if (u_end > -kQCut) {
        const auto& rule = quad::gauss_legendre(kPanelNodes);
        const double width = std::min(0.5, 0.5 / c);
        const int panels = std::max(1, static_cast<int>(std::ceil((u_end + kQCut) / width)));
        const double h = (u_end + kQCut) / panels;
        double part = 0.0;
        for (int k = 0; k < panels; ++k) {
            const double center = -kQCut + (k + 0.5) * h;
            double panel = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double u = center + 0.5 * h * rule.nodes[i];
                const double x = std::exp(ln_x0 + c * u);
                panel += rule.weights[i] * q_function(u) * std::exp(-x) * c * x;
            }
            part += 0.5 * h * panel;
        }
        total += part;
    }

    // Tail beyond the transition: e^-x_hi int_0^inf Q(u(x_hi + t)) e^-t dt.
    if (ln_hi < std::log(kExpCut)) {
        const double x_hi = std::exp(ln_hi);
        const auto& rule = quad::gauss_laguerre(tail_nodes);
        double tail = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double u = (std::log(x_hi + rule.nodes[i]) - ln_x0) / c;
            tail += rule.weights[i] * q_function(u);
        }
        total += std::exp(-x_hi) * tail;
    }
    return std::clamp(total, 0.0, 1.0);
}

double fading_adaptive(double ln_x0, double c, double abs_tol) {
    auto integrand = [ln_x0, c](double t) {
        const double x = -std::log(t);
        if (!(x > 0.0)) {
            return 1.0;
        }
        return q_function((std::log(x) - ln_x0) / c);
    };
    std::vector<double> breaks{0.0, 1.0};
    for (int k = -static_cast<int>(kQCut); k <= static_cast<int>(kQCut); ++k) {
        const double t = std::exp(-std::exp(ln_x0 + c * k));
        if (t > 0.0 && t < 1.0) {
            breaks.push_back(t);
        }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    const auto res = quad::integrate_adaptive(integrand, breaks, abs_tol);
    if (!res.converged) {
        throw NumericError("adaptive outage quadrature did not reach abs_tol (achieved " +
                               std::to_string(res.error_estimate) + ")",
                           res.error_estimate);
    }
    return std::clamp(res.value, 0.0, 1.0);
}

}  // namespace

void QuadratureConfig::validate() const {
    if (nodes < 2) {
        throw DomainError("QuadratureConfig: nodes must be at least 2");
    }
    if (!(abs_tol > 0.0)) {
        throw DomainError("QuadratureConfig: abs_tol must be positive");
    }
}

double outage_shadowing(const YfMoments& m, double delta_db) {
    check_moments(m);
    const double z = -delta_db - m.m_f_db;
    if (m.s_f_db == 0.0) {
        if (z > 0.0) {
            return 0.0;
        }
        return z < 0.0 ? 1.0 : 0.5;
    }
    return q_function(z / m.s_f_db);
}

double outage_fading(const YfMoments& m, double delta_db, const QuadratureConfig& qc) {
    check_moments(m);
    qc.validate();
    const double ln_x0 = kDbToNeper * (delta_db + m.m_f_db);
    if (m.s_f_db == 0.0) {
        return -std::expm1(-std::exp(ln_x0));
    }
    const double c = kDbToNeper * m.s_f_db;
    if (qc.method == QuadratureMethod::Adaptive) {
        return fading_adaptive(ln_x0, c, qc.abs_tol);
    }
    return fading_laguerre(ln_x0, c, qc.nodes);
}

double outage_probability(const YfMoments& m, double delta_db, OutageMode mode,
                          const QuadratureConfig& qc) {
    return mode == OutageMode::Shadowing ? outage_shadowing(m, delta_db)
                                         : outage_fading(m, delta_db, qc);
}

OutageCurve outage_curve(const YfMoments& m, const std::vector<double>& grid_db,
                         OutageMode mode, const QuadratureConfig& qc) {
    validate_threshold_grid(grid_db);
    OutageCurve curve;
    curve.thresholds_db = grid_db;
    curve.probs.reserve(grid_db.size());
    for (double d : grid_db) {
        curve.probs.push_back(outage_probability(m, d, mode, qc));
    }
    // Quadrature noise at the 1e-16 level must not break the CDF contract.
    for (std::size_t i = 1; i < curve.probs.size(); ++i) {
        curve.probs[i] = std::max(curve.probs[i], curve.probs[i - 1]);
    }
    return curve;
}

double sinr_at_outage(const YfMoments& m, OutageMode mode, double p,
                      const QuadratureConfig& qc, double tol_db) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("sinr_at_outage: p must lie in (0, 1)");
    }
    double lo = kDeltaLow;
    double hi = kDeltaHigh;
    const double f_lo = outage_probability(m, lo, mode, qc);
    const double f_hi = outage_probability(m, hi, mode, qc);
    if (p < f_lo || p > f_hi) {
        throw RangeError("sinr_at_outage: target probability not attained on [-400, 200] dB");
    }
    for (int it = 0; it < kBisectionCap && hi - lo > tol_db; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (outage_probability(m, mid, mode, qc) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double sinr_at_outage(const OutageCurve& curve, double p) {
    curve.validate();
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("sinr_at_outage: p must lie in (0, 1)");
    }
    const auto& pr = curve.probs;
    if (p < pr.front() || p > pr.back()) {
        throw RangeError("sinr_at_outage: target probability outside the curve's range");
    }
    const auto it = std::lower_bound(pr.begin(), pr.end(), p);
    const auto i = static_cast<std::size_t>(it - pr.begin());
    if (i == 0 || pr[i] == pr[i - 1]) {
        return curve.thresholds_db[i];
    }
    const double t = (p - pr[i - 1]) / (pr[i] - pr[i - 1]);
    return curve.thresholds_db[i - 1] + t * (curve.thresholds_db[i] - curve.thresholds_db[i - 1]);
}

YfMoments OutageModel::moments_at(double r) const { return yf_moments_fluid(r, channel, fluid); }

double OutageModel::outage(double r, double delta_db) const {
    return outage_probability(moments_at(r), delta_db, mode, quadrature);
}

CoverageResult coverage_radius(const OutageModel& model, double delta_db, double p_target) {
    if (!(p_target > 0.0 && p_target <= 1.0)) {
        throw DomainError("coverage_radius: p_target must lie in (0, 1]");
    }
    const double rc = model.fluid.rc;
    const double r_min = rc * 1e-4;
    const double bracket_floor = rc * 1e-12;
    const double prob_tol = 1e-6;
    CoverageResult result;

    const double f_edge = model.outage(rc, delta_db);
    if (f_edge <= p_target) {
        result.radius = rc;
        result.status = CoverageStatus::FullCell;
        return result;
    }
    double lo = r_min;
    const double f_lo = model.outage(lo, delta_db);
    if (f_lo > p_target) {
        result.status = CoverageStatus::NoCoverage;
        return result;
    }
    if (f_lo > f_edge) {
        throw ConsistencyError("coverage_radius: outage decreases with distance");
    }
    double hi = rc;
    double f_hi = f_edge;
    double f_lo_cur = f_lo;
    int it = 0;
    for (; it < kBisectionCap && hi - lo > bracket_floor && p_target - f_lo_cur > prob_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = model.outage(mid, delta_db);
        if (f_mid < f_lo_cur || f_mid > f_hi) {
            throw ConsistencyError("coverage_radius: outage is not monotone in r");
        }
        if (f_mid <= p_target) {
            lo = mid;
            f_lo_cur = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    result.radius = lo;
    result.status = CoverageStatus::Interior;
    result.iterations = it;
    result.bracket_width = hi - lo;
    return result;
}

double mean_capacity(const YfMoments& m, OutageMode mode, const QuadratureConfig& qc) {
    check_moments(m);
    qc.validate();
    // E[log2(1+g)] = int (1 - F(d)) * a g / ((1 + g) ln 2) dd, g = 10^(d/10).
    auto integrand = [&](double d) {
        const double survival = 1.0 - outage_probability(m, d, mode, qc);
        const double g_ratio = 1.0 / (1.0 + std::exp(-kDbToNeper * d));  // g / (1 + g)
        return survival * kDbToNeper * g_ratio / std::numbers::ln2;
    };
    const double center = -m.m_f_db;
    const double lo = center - 12.0 * m.s_f_db - 160.0;
    const double hi = center + 12.0 * m.s_f_db + 40.0;
    std::vector<double> breaks{lo};
    for (int k = -6; k <= 6; ++k) {
        const double b = center + k * std::max(m.s_f_db, 1.0);
        if (b > lo && b < hi) {
            breaks.push_back(b);
        }
    }
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    const auto res = quad::integrate_adaptive(integrand, breaks, std::max(qc.abs_tol, 1e-10));
    if (!res.converged) {
        throw NumericError("capacity quadrature did not converge", res.error_estimate);
    }
    return res.value;
}

const char* to_string(OutageMode mode) noexcept {
    return mode == OutageMode::Shadowing ? "shadowing" : "fading";
}

const char* to_string(CoverageStatus status) noexcept {
    switch (status) {
        case CoverageStatus::Interior:
            return "interior";
        case CoverageStatus::FullCell:
            return "full-cell";
        case CoverageStatus::NoCoverage:
            return "no-coverage";
    }
    return "unknown";
}

}  // namespace cellout
