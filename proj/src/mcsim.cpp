#include "cellout/mcsim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <ostream>
#include <sstream>
#include <thread>

#include "cellout/errors.hpp"
#include "cellout/fenton.hpp"
#include "cellout/rng.hpp"

namespace cellout {

namespace {

using rng::VariateKind;

// One mobile position: distances and the pathloss weights (r_j / r)^-eta of
// its interferers, largest weight first, with the original station index so
// that each link keeps its own random stream.
struct Link {
    double weight;
    std::uint32_t station;
};

struct Position {
    std::vector<Link> links;
};

double shadow_gain(double sigma_db, double u) {
    return db_to_linear(sigma_db * rng::normal_quantile(u));
}

double fading_gain(double u) {
    return -std::log1p(-u);
}

// Combined shadowing and fading gain of one link, drawing only what is used.
double link_gain(double sigma_db, bool shadow, bool fade, std::uint64_t seed, std::uint64_t snap,
                 std::uint32_t station, std::uint32_t pos) {
    if (shadow && fade) {
        const auto u = rng::uniform_pair(seed, snap, station, pos);
        return shadow_gain(sigma_db, u.shadowing) * fading_gain(u.fading);
    }
    if (shadow) {
        return shadow_gain(sigma_db, rng::uniform(seed, snap, station, pos, VariateKind::Shadowing));
    }
    if (fade) {
        return fading_gain(rng::uniform(seed, snap, station, pos, VariateKind::Fading));
    }
    return 1.0;
}

std::vector<Point> mobile_points(const NetworkLayout& layout, const MobileSpec& spec) {
    if (const auto* fixed = std::get_if<FixedPoint>(&spec)) {
        return {fixed->position};
    }
    const auto& ring = std::get<RingPlacement>(spec);
    return ring_positions(layout.rc(), ring.r, ring.n_angles);
}

std::string fmt_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

void SimConfig::validate() const {
    if (snapshots < 1) {
        throw DomainError("SimConfig: snapshots must be at least 1");
    }
    if (const auto* ring = std::get_if<RingPlacement>(&mobile)) {
        if (ring->n_angles < 1) {
            throw DomainError("SimConfig: n_angles must be at least 1");
        }
    }
}

std::string SimConfig::echo() const {
    std::ostringstream os;
    os << "snapshots=" << snapshots << ";seed=" << seed << ";mobile=";
    if (const auto* fixed = std::get_if<FixedPoint>(&mobile)) {
        os << "point(" << fmt_double(fixed->position.x) << "," << fmt_double(fixed->position.y)
           << ")";
    } else {
        const auto& ring = std::get<RingPlacement>(mobile);
        os << "ring(" << fmt_double(ring.r) << "," << ring.n_angles << ")";
    }
    os << ";shadowing=" << shadowing << ";fading=" << fading
       << ";interferer_fading=" << interferer_fading;
    return os.str();
}

void SinrSamples::write_csv(std::ostream& os) const {
    os << "snapshot,angle_index,sinr_db\n";
    char buf[32];
    for (std::uint64_t s = 0; s < snapshots; ++s) {
        for (std::size_t k = 0; k < positions; ++k) {
            auto res = std::to_chars(buf, buf + sizeof buf, values_db[s * positions + k]);
            os << s << ',' << k << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf))
               << '\n';
        }
    }
}

SinrSamples simulate(const NetworkLayout& layout, const ChannelParams& params,
                     const SimConfig& sc, unsigned threads) {
    params.validate();
    sc.validate();
    if (layout.station_count() < 2) {
        throw DomainError("simulate: the layout has no interfering station");
    }

    const auto points = mobile_points(layout, sc.mobile);
    std::vector<Position> positions;
    positions.reserve(points.size());
    const auto& stations = layout.positions();
    for (const auto& pt : points) {
        // Validates cell membership and r > 0.
        const auto profile = distance_profile(layout, pt, sc.allow_outside_cell);
        Position pos;
        for (std::uint32_t j = 1; j < stations.size(); ++j) {
            pos.links.push_back({std::pow(distance(pt, stations[j]) / profile.r, -params.eta), j});
        }
        std::stable_sort(pos.links.begin(), pos.links.end(),
                         [](const Link& a, const Link& b) { return a.weight > b.weight; });
        positions.push_back(std::move(pos));
    }

    SinrSamples out;
    out.snapshots = sc.snapshots;
    out.positions = positions.size();
    out.values_db.assign(sc.snapshots * positions.size(), 0.0);
    out.meta = {layout.hash(), sc.echo()};

    const bool shadow = sc.shadowing && params.sigma_db > 0.0;
    const bool fade_serving = sc.fading;
    const bool fade_interf = sc.fading && sc.interferer_fading;

    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<double> terms;
        for (std::uint64_t snap = begin; snap < end; ++snap) {
            for (std::uint32_t k = 0; k < positions.size(); ++k) {
                const auto& links = positions[k].links;
                const double serving =
                    link_gain(params.sigma_db, shadow, fade_serving, sc.seed, snap, 0, k);
                terms.clear();
                for (const auto& link : links) {
                    terms.push_back(link.weight * link_gain(params.sigma_db, shadow, fade_interf,
                                                            sc.seed, snap, link.station, k));
                }
                const double interference = compensated_sum(terms);
                out.values_db[snap * positions.size() + k] =
                    linear_to_db(serving) - linear_to_db(interference);
            }
        }
    };

    unsigned workers = threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, sc.snapshots));
    if (workers <= 1) {
        run_range(0, sc.snapshots);
        return out;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::uint64_t chunk = (sc.snapshots + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = std::min(sc.snapshots, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                run_range(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

EmpiricalOutage empirical_outage(const std::vector<double>& samples_db,
                                 const std::vector<double>& grid_db) {
    if (samples_db.empty()) {
        throw DomainError("empirical_outage: no samples");
    }
    validate_threshold_grid(grid_db);
    std::vector<double> sorted = samples_db;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    EmpiricalOutage result;
    result.curve.thresholds_db = grid_db;
    result.curve.probs.reserve(grid_db.size());
    result.standard_error.reserve(grid_db.size());
    for (double d : grid_db) {
        const auto below = std::lower_bound(sorted.begin(), sorted.end(), d) - sorted.begin();
        const double p = static_cast<double>(below) / n;
        result.curve.probs.push_back(p);
        result.standard_error.push_back(std::sqrt(p * (1.0 - p) / n));
    }
    return result;
}

EmpiricalOutage empirical_outage(const SinrSamples& s, const std::vector<double>& grid_db) {
    return empirical_outage(s.values_db, grid_db);
}

LognormalSumSample sample_lognormal_sum(const DistanceProfile& profile,
                                        const ChannelParams& params, std::uint64_t n,
                                        std::uint64_t seed) {
    params.validate();
    if (n < 2) {
        throw DomainError("sample_lognormal_sum: need at least two samples");
    }
    if (profile.interferer_distances.empty()) {
        throw DomainError("sample_lognormal_sum: empty profile");
    }
    std::vector<double> base;
    for (double d : profile.interferer_distances) {
        base.push_back(params.power * params.k_const * std::pow(d, -params.eta));
    }
    std::vector<double> terms(base.size());
    // Welford in both domains; the linear one is scaled by the deterministic
    // sum to keep the squares in range.
    const double scale = compensated_sum(base);
    double mean_lin = 0.0;
    double m2_lin = 0.0;
    double mean_db = 0.0;
    double m2_db = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < base.size(); ++j) {
            terms[j] = base[j] * (params.sigma_db > 0.0
                                      ? link_gain(params.sigma_db, true, false, seed, i, j + 1, 0)
                                      : 1.0);
        }
        const double total = compensated_sum(terms);
        const double k = static_cast<double>(i + 1);
        const double u = total / scale;
        const double du = u - mean_lin;
        mean_lin += du / k;
        m2_lin += du * (u - mean_lin);
        const double x = linear_to_db(total);
        const double dx = x - mean_db;
        mean_db += dx / k;
        m2_db += dx * (x - mean_db);
    }
    LognormalSumSample out;
    out.mean_linear = mean_lin * scale;
    out.mean_db = mean_db;
    out.sigma_t_db = std::sqrt(m2_db / static_cast<double>(n - 1));
    const double var_lin = m2_lin / static_cast<double>(n - 1);
    out.sigma_matched_db = std::sqrt(std::log1p(var_lin / (mean_lin * mean_lin))) / kDbToNeper;
    return out;
}

YfSample sample_yf_db(const DistanceProfile& profile, const ChannelParams& params,
                      std::uint64_t n, std::uint64_t seed) {
    params.validate();
    if (n < 2) {
        throw DomainError("sample_yf_db: need at least two samples");
    }
    if (profile.interferer_distances.empty()) {
        throw DomainError("sample_yf_db: empty profile");
    }
    std::vector<double> weights;
    for (double d : profile.interferer_distances) {
        weights.push_back(std::pow(d / profile.r, -params.eta));
    }
    std::vector<double> terms(weights.size());
    double mean = 0.0;
    double m2 = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < weights.size(); ++j) {
            terms[j] = weights[j] * link_gain(params.sigma_db, true, false, seed, i, j + 1, 0);
        }
        const double serving = link_gain(params.sigma_db, true, false, seed, i, 0, 0);
        const double x = linear_to_db(compensated_sum(terms)) - linear_to_db(serving);
        const double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
    }
    return {mean, std::sqrt(m2 / static_cast<double>(n - 1))};
}

}  // namespace cellout
