#include "cellout/channel.hpp"

#include <cmath>
#include <string>

#include "cellout/errors.hpp"

namespace cellout {

double db_to_linear(double x_db) noexcept { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double x) {
    if (!(x > 0.0)) {
        throw DomainError("linear_to_db: argument must be positive, got " + std::to_string(x));
    }
    return 10.0 * std::log10(x);
}

// glibc erfc is accurate to a few ulp over the whole real line, which meets
// the 1e-10 relative contract; tests check it against a series oracle.
double q_function(double u) noexcept { return 0.5 * std::erfc(u / std::numbers::sqrt2); }

double rayleigh_power_cdf(double x) {
    if (x < 0.0 || std::isnan(x)) {
        throw DomainError("rayleigh_power_cdf: x must be nonnegative");
    }
    return -std::expm1(-x);
}

void ChannelParams::validate() const {
    if (!(eta > 2.0)) {
        throw DomainError("ChannelParams: eta must exceed 2, got " + std::to_string(eta));
    }
    if (!(sigma_db >= 0.0)) {
        throw DomainError("ChannelParams: sigma_db must be nonnegative");
    }
    if (!(power > 0.0)) {
        throw DomainError("ChannelParams: power must be positive");
    }
    if (!(k_const > 0.0)) {
        throw DomainError("ChannelParams: k_const must be positive");
    }
}

void LognormalParams::validate() const {
    if (!(sigma_db >= 0.0)) {
        throw DomainError("LognormalParams: sigma_db must be nonnegative");
    }
}

void validate_threshold_grid(const std::vector<double>& grid_db) {
    if (grid_db.empty()) {
        throw DomainError("threshold grid is empty");
    }
    for (std::size_t i = 0; i < grid_db.size(); ++i) {
        if (!std::isfinite(grid_db[i])) {
            throw DomainError("threshold grid contains a non-finite value");
        }
        if (i > 0 && !(grid_db[i] > grid_db[i - 1])) {
            throw DomainError("threshold grid must be strictly increasing (index " +
                              std::to_string(i) + ")");
        }
    }
}

void OutageCurve::validate() const {
    if (thresholds_db.size() != probs.size()) {
        throw DomainError("OutageCurve: thresholds and probabilities differ in length");
    }
    validate_threshold_grid(thresholds_db);
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (!(probs[i] >= 0.0 && probs[i] <= 1.0)) {
            throw DomainError("OutageCurve: probability out of [0,1] at index " + std::to_string(i));
        }
        if (i > 0 && probs[i] < probs[i - 1]) {
            throw DomainError("OutageCurve: probabilities decrease at index " + std::to_string(i));
        }
    }
}

}  // namespace cellout
