#include "cellout/hexnet.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <tuple>

#include "cellout/errors.hpp"

namespace cellout {

namespace {

// Tolerance for the cell-membership test at the cell border.
constexpr double kBorderSlack = 1e-9;

}  // namespace

double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

NetworkLayout build_hex_network(int rings, double rc) {
    if (!(rc > 0.0) || !std::isfinite(rc)) {
        throw DomainError("build_hex_network: rc must be positive and finite");
    }
    if (rings < 0) {
        throw DomainError("build_hex_network: rings must be nonnegative");
    }

    // Axial coordinates (q, s); the hexagonal distance from the origin is
    // max(|q|, |s|, |q + s|) and equals the ring index.
    struct Site {
        int ring;
        double angle;
        Point p;
    };
    std::vector<Site> sites;
    const double spacing = 2.0 * rc;
    for (int q = -rings; q <= rings; ++q) {
        for (int s = -rings; s <= rings; ++s) {
            const int ring = std::max({std::abs(q), std::abs(s), std::abs(q + s)});
            if (ring > rings) {
                continue;
            }
            const Point p{spacing * (q + 0.5 * s), spacing * (std::numbers::sqrt3 / 2.0) * s};
            double angle = std::atan2(p.y, p.x);
            if (angle < 0.0) {
                angle += 2.0 * std::numbers::pi;
            }
            sites.push_back({ring, ring == 0 ? 0.0 : angle, ring == 0 ? Point{} : p});
        }
    }
    std::sort(sites.begin(), sites.end(), [](const Site& a, const Site& b) {
        return std::tie(a.ring, a.angle) < std::tie(b.ring, b.angle);
    });

    NetworkLayout layout;
    layout.positions_.reserve(sites.size());
    layout.rings_of_.reserve(sites.size());
    double outermost = 0.0;
    for (const auto& site : sites) {
        layout.positions_.push_back(site.p);
        layout.rings_of_.push_back(site.ring);
        outermost = std::max(outermost, std::hypot(site.p.x, site.p.y));
    }
    layout.rc_ = rc;
    layout.rings_ = rings;
    layout.r_nw_ = outermost + rc;
    layout.rho_bs_ = 1.0 / (2.0 * std::numbers::sqrt3 * rc * rc);
    return layout;
}

NetworkLayout NetworkLayout::with_network_radius(double r_nw) const {
    if (!(r_nw >= rc_) || !std::isfinite(r_nw)) {
        throw DomainError("network radius must be finite and at least rc");
    }
    NetworkLayout copy = *this;
    copy.r_nw_ = r_nw;
    return copy;
}

std::uint64_t NetworkLayout::hash() const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    mix(std::bit_cast<std::uint64_t>(rc_));
    for (const auto& p : positions_) {
        mix(std::bit_cast<std::uint64_t>(p.x));
        mix(std::bit_cast<std::uint64_t>(p.y));
    }
    return h;
}

void NetworkLayout::write_csv(std::ostream& os) const {
    os << "x_m,y_m,ring_index\n";
    char buf[64];
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d\n", positions_[i].x, positions_[i].y,
                      rings_of_[i]);
        os << buf;
    }
}

DistanceProfile distance_profile(const NetworkLayout& layout, Point mobile,
                                 bool allow_outside_cell) {
    const auto& pos = layout.positions();
    DistanceProfile profile;
    profile.r = distance(mobile, pos.front());
    if (!(profile.r > 0.0)) {
        throw DomainError("distance_profile: mobile coincides with the serving station");
    }
    profile.interferer_distances.reserve(pos.size() - 1);
    const double slack = kBorderSlack * layout.rc();
    for (std::size_t j = 1; j < pos.size(); ++j) {
        const double d = distance(mobile, pos[j]);
        if (!(d > 0.0)) {
            throw DomainError("distance_profile: mobile coincides with interfering station " +
                              std::to_string(j));
        }
        if (!allow_outside_cell && d + slack < profile.r) {
            throw PreconditionError(
                "distance_profile: mobile lies outside the central cell (closer to station " +
                std::to_string(j) + ")");
        }
        profile.interferer_distances.push_back(d);
    }
    std::sort(profile.interferer_distances.begin(), profile.interferer_distances.end());
    return profile;
}

std::vector<Point> ring_positions(double rc, double r, int n_angles) {
    if (!(rc > 0.0)) {
        throw DomainError("ring_positions: rc must be positive");
    }
    if (!(r > 0.0 && r <= rc)) {
        throw DomainError("ring_positions: radius must satisfy 0 < r <= rc");
    }
    if (n_angles < 1) {
        throw DomainError("ring_positions: n_angles must be at least 1");
    }
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(n_angles));
    for (int k = 0; k < n_angles; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n_angles;
        points.push_back({r * std::cos(theta), r * std::sin(theta)});
    }
    return points;
}

}  // namespace cellout
