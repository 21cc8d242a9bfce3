#include "cellout/fenton.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "cellout/errors.hpp"

namespace cellout {

namespace {

void check_profile(const DistanceProfile& profile, double eta) {
    if (profile.interferer_distances.empty()) {
        throw DomainError("Y_f is undefined without interferers");
    }
    if (!(eta > 2.0)) {
        throw DomainError("pathloss exponent must exceed 2, got " + std::to_string(eta));
    }
    if (!(profile.r > 0.0)) {
        throw DomainError("serving distance must be positive");
    }
    for (double d : profile.interferer_distances) {
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw DomainError("interferer distances must be positive and finite");
        }
    }
}

// sum_j (r_j / scale)^-exponent, largest terms first.
double scaled_power_sum(const std::vector<double>& distances, double scale, double exponent) {
    std::vector<double> terms;
    terms.reserve(distances.size());
    for (double d : distances) {
        terms.push_back(std::pow(d / scale, -exponent));
    }
    std::sort(terms.begin(), terms.end(), std::greater<>());
    return compensated_sum(terms);
}

// e^(a^2 s^2) - 1 without cancellation for small sigma.
double lognormal_excess(double sigma_db) {
    const double s = kDbToNeper * sigma_db;
    return std::expm1(s * s);
}

}  // namespace

double InterferenceMoments::expected_power() const noexcept {
    const double s = kDbToNeper * sigma_t_db;
    return mean_linear * std::exp(0.5 * s * s);
}

double compensated_sum(std::span<const double> terms) noexcept {
    double sum = 0.0;
    double comp = 0.0;
    for (double t : terms) {
        const double next = sum + t;
        if (std::abs(sum) >= std::abs(t)) {
            comp += (sum - next) + t;
        } else {
            comp += (t - next) + sum;
        }
        sum = next;
    }
    return sum + comp;
}

double y_factor_discrete(const DistanceProfile& profile, double eta) {
    check_profile(profile, eta);
    return scaled_power_sum(profile.interferer_distances, profile.r, eta);
}

double g_factor_discrete(const DistanceProfile& profile, double eta) {
    check_profile(profile, eta);
    // G is scale-free; normalising by the nearest interferer keeps the
    // r^-2eta terms away from underflow whatever the serving distance.
    const double nearest = profile.interferer_distances.front();
    const double s1 = scaled_power_sum(profile.interferer_distances, nearest, eta);
    const double s2 = scaled_power_sum(profile.interferer_distances, nearest, 2.0 * eta);
    return s2 / (s1 * s1);
}

double h_function(double g, double sigma_db) {
    if (!(g > 0.0 && g <= 1.0)) {
        throw DomainError("h_function: G must lie in (0, 1], got " + std::to_string(g));
    }
    if (!(sigma_db >= 0.0)) {
        throw DomainError("h_function: sigma_db must be nonnegative");
    }
    const double s = kDbToNeper * sigma_db;
    // ln H = a^2 s^2 / 2 - ln(1 + G (e^(a^2 s^2) - 1)) / 2
    return std::exp(0.5 * s * s - 0.5 * std::log1p(g * lognormal_excess(sigma_db)));
}

YfMoments yf_moments_from_factors(double y_f, double g, double sigma_db) {
    if (!(y_f > 0.0) || !std::isfinite(y_f)) {
        throw DomainError("y_f must be positive and finite");
    }
    YfMoments m;
    m.y_f_linear = y_f;
    m.g_factor = g;
    m.h_factor = h_function(g, sigma_db);
    m.m_f_db = linear_to_db(y_f) + linear_to_db(m.h_factor);
    const double ln_h_db2 = std::log(m.h_factor) / (kDbToNeper * kDbToNeper);
    // Rounding can push 2(s^2 - ln H / a^2) a hair below zero when G == 1.
    m.s_f_db = std::sqrt(std::max(0.0, 2.0 * (sigma_db * sigma_db - ln_h_db2)));
    return m;
}

InterferenceMoments sum_lognormal_moments(const DistanceProfile& profile,
                                          const ChannelParams& params) {
    params.validate();
    check_profile(profile, params.eta);
    const double g = g_factor_discrete(profile, params.eta);
    // P K sum_j r_j^-eta, evaluated relative to the nearest interferer.
    const double nearest = profile.interferer_distances.front();
    const double ln_sum = std::log(scaled_power_sum(profile.interferer_distances, nearest, params.eta)) -
                          params.eta * std::log(nearest);
    const double ln_pk = std::log(params.power) + std::log(params.k_const);
    const double s = kDbToNeper * params.sigma_db;
    // Matched log-variance a^2 sigma_t^2 = ln(1 + G (e^(a^2 s^2) - 1)).
    const double var_t = std::log1p(g * lognormal_excess(params.sigma_db));

    InterferenceMoments out;
    out.mean_linear = std::exp(ln_pk + ln_sum + 0.5 * s * s - 0.5 * var_t);
    out.sigma_t_db = std::sqrt(var_t) / kDbToNeper;
    return out;
}

InterferenceMoments sum_lognormal_moments(const DistanceProfile& profile,
                                          std::span<const ChannelParams> per_station) {
    if (per_station.size() != profile.interferer_distances.size()) {
        throw DomainError("one ChannelParams entry is required per interferer");
    }
    if (per_station.empty()) {
        throw DomainError("Y_f is undefined without interferers");
    }
    const ChannelParams& first = per_station.front();
    for (const auto& p : per_station) {
        if (p.power != first.power || p.sigma_db != first.sigma_db ||
            p.k_const != first.k_const || p.eta != first.eta) {
            throw UnsupportedConfigurationError(
                "heterogeneous station powers or shadowing spreads are not supported");
        }
    }
    return sum_lognormal_moments(profile, first);
}

YfMoments yf_moments_discrete(const DistanceProfile& profile, const ChannelParams& params) {
    params.validate();
    return yf_moments_from_factors(y_factor_discrete(profile, params.eta),
                                   g_factor_discrete(profile, params.eta), params.sigma_db);
}

}  // namespace cellout
