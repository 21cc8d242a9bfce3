#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cellout/errors.hpp"
#include "cellout/fenton.hpp"
#include "cellout/fluid.hpp"
#include "cellout/hexnet.hpp"
#include "../oracles.hpp"

using namespace cellout;

namespace {

// 2 pi rho r^eta int_{2rc - r}^{r_nw - r} u^(1 - eta) du, integrated
// numerically in log-space.
double y_fluid_oracle(double r, double eta, const FluidParams& fp) {
    const long double lo = std::log(static_cast<long double>(2.0 * fp.rc - r));
    const long double hi = std::log(static_cast<long double>(fp.r_nw - r));
    if (hi <= lo) {
        return 0.0;
    }
    // Integrand scaled to one at the lower limit so the tolerance is relative.
    const long double k = 2.0L - eta;
    const long double integral =
        std::exp(k * lo) *
        oracle::simpson([&](long double t) { return std::exp(k * (t - lo)); }, lo, hi, 1e-16L);
    return static_cast<double>(2.0L * std::numbers::pi_v<long double> * fp.rho_bs *
                               std::pow(static_cast<long double>(r), static_cast<long double>(eta)) *
                               integral);
}

const double kRho = 1.0 / (2.0 * std::sqrt(3.0));

}  // namespace

TEST_CASE("fluid y_f examples") {
    CHECK(y_fluid(0.5, 3.0, {kRho, 1.0, 2.0}) == 0.0);
    CHECK(y_fluid(0.5, 3.0, {0.0, 1.0, 10.0}) == 0.0);
    const FluidParams fp{kRho, 1.0, 10.0};
    CHECK(y_fluid(0.5, 4.0, fp) == doctest::Approx(2.456e-2).epsilon(1e-4 / 2.456e-2));
    CHECK(std::abs(y_fluid(0.5, 4.0, fp) - 2.456e-2) < 1e-4);

    CHECK_THROWS_AS(y_fluid(0.5, 2.0, fp), SingularityError);
    CHECK_THROWS_AS(y_fluid(0.5, 1.5, fp), SingularityError);
    CHECK_THROWS_AS(y_fluid(0.0, 3.0, fp), DomainError);
    CHECK_THROWS_AS(y_fluid(2.0, 3.0, fp), DomainError);
    CHECK_THROWS_AS(y_fluid(0.5, 3.0, {kRho, 1.0, 1.5}), DomainError);
}

TEST_CASE("fluid G") {
    const FluidParams fp{kRho, 1.0, 10.0};
    const double g = g_fluid(1.0, 3.0, fp);
    CHECK(g > 0.0);
    CHECK(g == doctest::Approx(y_fluid(1.0, 6.0, fp) / std::pow(y_fluid(1.0, 3.0, fp), 2)).epsilon(1e-12));

    // Rings=4 edge: the continuum smears out the two nearest interferers, so
    // the fluid G sits about a third below the discrete one (0.180 vs 0.274).
    const auto net = build_hex_network(4, 1.0);
    const double g_disc = g_factor_discrete(distance_profile(net, {1.0, 0.0}), 3.0);
    const double g_fl = g_fluid(1.0, 3.0, FluidParams::hexagonal(1.0, 9.0));
    CHECK(g_fl < g_disc);
    CHECK(g_fl / g_disc > 0.6);
    CHECK(g_fl / g_disc < 0.75);

    // A density this low makes the fluid G exceed 1; it must be reported.
    try {
        g_fluid(1.0, 3.0, {1e-4, 1.0, 10.0});
        FAIL("expected ModelViolationError");
    } catch (const ModelViolationError& e) {
        CHECK(e.value() > 1.0);
    }
}

TEST_CASE("fluid Y_f moments") {
    const auto fp = FluidParams::hexagonal(1000.0, 9000.0);
    ChannelParams p;
    p.eta = 3.0;
    p.sigma_db = 0.0;
    const auto m0 = yf_moments_fluid(1000.0, p, fp);
    CHECK(m0.m_f_db == doctest::Approx(10.0 * std::log10(y_fluid(1000.0, 3.0, fp))).epsilon(1e-14));
    CHECK(m0.s_f_db == 0.0);

    for (double s : {0.0, 3.0, 6.0, 12.0, 30.0}) {
        p.sigma_db = s;
        const auto m = yf_moments_fluid(1000.0, p, fp);
        CHECK(m.h_factor <= 1.0 / std::sqrt(m.g_factor) * (1.0 + 1e-14));
    }

    p.sigma_db = 6.0;
    const auto net = build_hex_network(4, 1000.0);
    const auto disc = yf_moments_discrete(distance_profile(net, {1000.0, 0.0}), p);
    const auto fl = yf_moments_fluid(1000.0, p, FluidParams::hexagonal(1000.0, net.r_nw()));
    CHECK(std::abs(fl.m_f_db - disc.m_f_db) < 1.5);
}

TEST_CASE("saturation curve") {
    const auto fp = FluidParams::hexagonal(1.0, 9.0);
    const auto single = h_saturation_curve(1.0, 3.0, fp, {0.0});
    REQUIRE(single.size() == 1);
    CHECK(single[0].moments.m_f_db == doctest::Approx(10.0 * std::log10(y_fluid(1.0, 3.0, fp))));

    std::vector<double> grid;
    for (double s = 0.0; s <= 20.0; s += 0.25) {
        grid.push_back(s);
    }
    const auto curve = h_saturation_curve(1.0, 3.0, fp, grid);
    for (std::size_t i = 1; i < curve.size(); ++i) {
        CHECK(curve[i].moments.m_f_db >= curve[i - 1].moments.m_f_db);
    }
    const double g = g_fluid(1.0, 3.0, fp);
    CHECK(h_function(g, 12.0) >= 0.9 / std::sqrt(g));
    CHECK_THROWS_AS(h_saturation_curve(1.0, 3.0, fp, {}), DomainError);
}

TEST_CASE("property: fluid closed form against quadrature") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double rc = 10.0 + 2000.0 * unit(gen);
        const FluidParams fp{kRho / (rc * rc) * (0.5 + unit(gen)), rc, rc * (2.5 + 30.0 * unit(gen))};
        const double r = rc * (0.02 + 0.98 * unit(gen));
        const double eta = 2.2 + 3.8 * unit(gen);
        const double ref = y_fluid_oracle(r, eta, fp);
        const double got = y_fluid(r, eta, fp);
        INFO("r=" << r << " eta=" << eta << " rc=" << rc << " r_nw=" << fp.r_nw);
        CHECK(std::abs(got / ref - 1.0) < 1e-9);
    }
}
