#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cellout/errors.hpp"
#include "cellout/fenton.hpp"
#include "cellout/mcsim.hpp"

using namespace cellout;

TEST_CASE("deterministic channel reproduces y_f exactly") {
    const auto net = build_hex_network(4, 1000.0);
    ChannelParams p;
    p.eta = 3.0;
    SimConfig sc;
    sc.snapshots = 10;
    sc.shadowing = false;
    sc.fading = false;
    sc.mobile = RingPlacement{1000.0, 12};
    const auto s = simulate(net, p, sc);
    REQUIRE(s.values_db.size() == 120);
    const auto pts = ring_positions(1000.0, 1000.0, 12);
    for (std::size_t k = 0; k < 12; ++k) {
        const double want = -linear_to_db(y_factor_discrete(distance_profile(net, pts[k]), 3.0));
        for (std::uint64_t snap = 0; snap < 10; ++snap) {
            CHECK(s.values_db[snap * 12 + k] == want);
        }
    }
}

TEST_CASE("serving-link fading alone") {
    const auto net = build_hex_network(1, 1.0);
    ChannelParams p;
    p.eta = 3.0;
    SimConfig sc;
    sc.snapshots = 1000000;
    sc.shadowing = false;
    sc.mobile = FixedPoint{{0.2, 0.0}};
    sc.interferer_fading = false;
    auto s = simulate(net, p, sc, 2);
    // SINR = X0 / y_f and the median of X0 is ln 2.
    const double yf = y_factor_discrete(distance_profile(net, {0.2, 0.0}), 3.0);
    std::nth_element(s.values_db.begin(), s.values_db.begin() + 500000, s.values_db.end());
    CHECK(std::abs(s.values_db[500000] - linear_to_db(std::log(2.0) / yf)) < 0.05);
}

TEST_CASE("single interferer: X0 / X1 has median one") {
    // A steep pathloss leaves one interferer at the serving distance; the
    // rest are weighted below 1e-9, so the SINR is 10 log10(X0 / X1).
    const auto net = build_hex_network(1, 1.0);
    ChannelParams p;
    p.eta = 40.0;  // the nearest interferer dominates by 1e-9 or more
    SimConfig sc;
    sc.snapshots = 1000000;
    sc.shadowing = false;
    sc.mobile = FixedPoint{{1.0, 0.0}};  // equidistant from serving and one neighbour
    auto s = simulate(net, p, sc);
    std::nth_element(s.values_db.begin(), s.values_db.begin() + 500000, s.values_db.end());
    CHECK(std::abs(s.values_db[500000]) < 0.05);
}

TEST_CASE("bit-identical across thread counts and runs") {
    const auto net = build_hex_network(3, 500.0);
    ChannelParams p;
    p.eta = 3.5;
    p.sigma_db = 6.0;
    SimConfig sc;
    sc.snapshots = 3001;
    sc.seed = 42;
    sc.mobile = RingPlacement{400.0, 5};
    const auto base = simulate(net, p, sc, 1);
    for (unsigned t : {2U, 3U, 7U, 0U}) {
        const auto other = simulate(net, p, sc, t);
        CHECK(other.values_db == base.values_db);
    }
    CHECK(simulate(net, p, sc, 1).values_db == base.values_db);
    sc.seed = 43;
    CHECK(simulate(net, p, sc, 1).values_db != base.values_db);
    CHECK(base.meta.layout_hash == net.hash());
    CHECK(base.meta.config_echo.find("seed=42") != std::string::npos);
}

TEST_CASE("simulation preconditions") {
    ChannelParams p;
    SimConfig sc;
    sc.snapshots = 1;
    sc.mobile = FixedPoint{{0.5, 0.0}};
    CHECK_THROWS_AS(simulate(build_hex_network(0, 1.0), p, sc), DomainError);
    sc.mobile = FixedPoint{{1.5, 0.0}};
    CHECK_THROWS_AS(simulate(build_hex_network(2, 1.0), p, sc), PreconditionError);
    sc.snapshots = 0;
    CHECK_THROWS_AS(simulate(build_hex_network(2, 1.0), p, sc), DomainError);
}

TEST_CASE("empirical outage") {
    const auto e = empirical_outage(std::vector<double>(10, 0.0), {-1.0, 1.0});
    CHECK(e.curve.probs == std::vector<double>{0.0, 1.0});
    CHECK(e.standard_error == std::vector<double>{0.0, 0.0});
    const auto f = empirical_outage(std::vector<double>{-3.0, -1.0, 2.0, 5.0}, {-10.0, 0.0, 10.0});
    CHECK(f.curve.probs == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(f.standard_error[1] == doctest::Approx(0.25));
    CHECK_THROWS_AS(empirical_outage(std::vector<double>{}, {0.0}), DomainError);
}

TEST_CASE("sample CSV") {
    SinrSamples s;
    s.values_db = {1.5, -2.0, 0.25, 3.0};
    s.snapshots = 2;
    s.positions = 2;
    std::ostringstream os;
    s.write_csv(os);
    CHECK(os.str() == "snapshot,angle_index,sinr_db\n0,0,1.5\n0,1,-2\n1,0,0.25\n1,1,3\n");
}

TEST_CASE("lognormal sum sampler") {
    ChannelParams p;
    p.eta = 3.0;
    p.sigma_db = 0.0;
    const DistanceProfile prof{1.0, {2.0, 3.0, 3.5}};
    const auto det = sample_lognormal_sum(prof, p, 10, 1);
    CHECK(det.mean_linear == compensated_sum(std::vector<double>{std::pow(2.0, -3.0), std::pow(3.0, -3.0),
                                                                 std::pow(3.5, -3.0)}));
    CHECK(det.sigma_t_db == 0.0);

    p.sigma_db = 6.0;
    const auto one = sample_lognormal_sum({1.0, {2.0}}, p, 1000000, 3);
    CHECK(std::abs(one.sigma_t_db - 6.0) < 0.05);
    CHECK(std::abs(one.mean_db - 10.0 * std::log10(0.125)) < 0.05);
}
