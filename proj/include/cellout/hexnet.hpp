#pragma once

// Homogeneous hexagonal base-station layout: a central cell surrounded by
// rings of cells on a triangular lattice with inter-site distance 2*rc.
// The serving station is always the one at the origin.

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace cellout {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance(Point a, Point b) noexcept;

class NetworkLayout {
public:
    /// Station positions, serving station first (at the origin).
    const std::vector<Point>& positions() const noexcept { return positions_; }
    /// Hexagonal ring index of each station, parallel to positions().
    const std::vector<int>& ring_indices() const noexcept { return rings_of_; }

    double rc() const noexcept { return rc_; }
    int rings() const noexcept { return rings_; }
    double r_nw() const noexcept { return r_nw_; }
    double rho_bs() const noexcept { return rho_bs_; }
    std::size_t station_count() const noexcept { return positions_.size(); }

    /// Copy with the network radius replaced; throws unless r_nw >= rc.
    NetworkLayout with_network_radius(double r_nw) const;

    /// FNV-1a hash of positions and rc, for tagging simulation output.
    std::uint64_t hash() const noexcept;

    /// CSV with header `x_m,y_m,ring_index`.
    void write_csv(std::ostream& os) const;

private:
    friend NetworkLayout build_hex_network(int rings, double rc);

    std::vector<Point> positions_;
    std::vector<int> rings_of_;
    double rc_ = 0.0;
    int rings_ = 0;
    double r_nw_ = 0.0;
    double rho_bs_ = 0.0;
};

/// Lattice of 1 + 3*rings*(rings+1) stations. r_nw is the outermost station
/// distance plus rc; rho_bs = 1 / (2*sqrt(3)*rc^2).
/// Throws DomainError for rc <= 0 or rings < 0.
NetworkLayout build_hex_network(int rings, double rc);

/// Serving distance plus ascending interferer distances.
struct DistanceProfile {
    double r = 0.0;
    std::vector<double> interferer_distances;
};

/// Distances from `mobile` to the serving station and to every interferer.
///
/// Without `allow_outside_cell` the mobile must be at least as close to the
/// origin as to any other station (ties at the cell border are accepted);
/// otherwise a PreconditionError is raised. A mobile exactly at a station
/// position is a DomainError.
DistanceProfile distance_profile(const NetworkLayout& layout, Point mobile,
                                 bool allow_outside_cell = false);

/// `n_angles` points evenly spaced in azimuth on the circle of radius r,
/// starting at azimuth 0 (towards the neighbour at (2*rc, 0)).
/// Requires 0 < r <= rc and n_angles >= 1.
std::vector<Point> ring_positions(double rc, double r, int n_angles);

}  // namespace cellout
