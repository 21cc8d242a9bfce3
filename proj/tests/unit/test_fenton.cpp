#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "cellout/errors.hpp"
#include "cellout/fenton.hpp"
#include "cellout/hexnet.hpp"
#include "cellout/mcsim.hpp"

using namespace cellout;

namespace {

const double a = std::log(10.0) / 10.0;

DistanceProfile edge_profile(int rings) {
    return distance_profile(build_hex_network(rings, 1.0), {1.0, 0.0});
}

// Direct summation, no sorting or compensation.
double naive_yf(const DistanceProfile& p, double eta) {
    double s = 0.0;
    for (double d : p.interferer_distances) {
        s += std::pow(d / p.r, -eta);
    }
    return s;
}

}  // namespace

TEST_CASE("y_f and G on simple profiles") {
    const DistanceProfile one{1000.0, {2000.0}};
    CHECK(y_factor_discrete(one, 3.0) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(g_factor_discrete(one, 3.0) == doctest::Approx(1.0).epsilon(1e-15));

    const double want = 1.0 + 2.0 * std::pow(3.0, -1.5) + 2.0 * std::pow(7.0, -1.5) + std::pow(3.0, -3.0);
    CHECK(y_factor_discrete(edge_profile(1), 3.0) == doctest::Approx(want).epsilon(1e-14));
    CHECK(want == doctest::Approx(1.5299).epsilon(1e-4));

    const DistanceProfile equal{1.0, std::vector<double>(5, 3.0)};
    CHECK(y_factor_discrete(equal, 4.0) == doctest::Approx(5.0 * std::pow(3.0, -4.0)).epsilon(1e-14));
    CHECK(g_factor_discrete(equal, 4.0) == doctest::Approx(0.2).epsilon(1e-14));

    CHECK_THROWS_AS(y_factor_discrete({1.0, {}}, 3.0), DomainError);
    CHECK_THROWS_AS(g_factor_discrete({1.0, {}}, 3.0), DomainError);
    CHECK_THROWS_AS(y_factor_discrete(one, 2.0), DomainError);
}

TEST_CASE("H function") {
    for (double g : {0.01, 0.3, 1.0}) {
        CHECK(h_function(g, 0.0) == 1.0);
    }
    for (double s : {1.0, 6.0, 20.0}) {
        CHECK(h_function(1.0, s) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(h_function(0.0, 3.0), DomainError);
    CHECK_THROWS_AS(h_function(1.5, 3.0), DomainError);
    CHECK_THROWS_AS(h_function(0.5, -1.0), DomainError);
}

TEST_CASE("H against a sampled two-interferer mean") {
    // Two unit-distance interferers give G = 1/2. The lognormal matched to the
    // sample mean and variance of Y_1 + Y_2 has location 2 H.
    std::mt19937_64 gen(20240611);
    std::normal_distribution<double> xi(0.0, 6.0);
    const int n = 4000000;
    double mean = 0.0, m2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = std::pow(10.0, xi(gen) / 10.0) + std::pow(10.0, xi(gen) / 10.0);
        const double d = s - mean;
        mean += d / (i + 1);
        m2 += d * (s - mean);
    }
    const double var = m2 / (n - 1);
    const double h_sample = mean / std::sqrt(1.0 + var / (mean * mean)) / 2.0;
    CHECK(std::abs(10.0 * std::log10(h_sample / h_function(0.5, 6.0))) < 0.1);
}

TEST_CASE("sum of lognormals") {
    ChannelParams p;
    p.eta = 3.0;
    p.sigma_db = 6.0;
    p.power = 2.0;
    const DistanceProfile one{1.0, {2.0}};
    const auto m1 = sum_lognormal_moments(one, p);
    CHECK(m1.mean_linear == doctest::Approx(2.0 * 0.125).epsilon(1e-14));
    CHECK(m1.sigma_t_db == doctest::Approx(6.0).epsilon(1e-13));

    p.sigma_db = 0.0;
    const auto prof = edge_profile(2);
    const auto m0 = sum_lognormal_moments(prof, p);
    double direct = 0.0;
    for (double d : prof.interferer_distances) {
        direct += 2.0 * std::pow(d, -3.0);
    }
    CHECK(m0.mean_linear == doctest::Approx(direct).epsilon(1e-14));
    CHECK(m0.sigma_t_db == 0.0);

    std::vector<ChannelParams> mixed(prof.interferer_distances.size(), p);
    CHECK(sum_lognormal_moments(prof, mixed).mean_linear == doctest::Approx(direct));
    mixed[3].power = 5.0;
    CHECK_THROWS_AS(sum_lognormal_moments(prof, mixed), UnsupportedConfigurationError);
    mixed[3] = p;
    mixed[1].sigma_db = 3.0;
    CHECK_THROWS_AS(sum_lognormal_moments(prof, mixed), UnsupportedConfigurationError);
}

TEST_CASE("sum of lognormals against an independent sampler") {
    ChannelParams p;
    p.eta = 3.0;
    p.sigma_db = 6.0;
    const auto prof = edge_profile(1);
    const auto fw = sum_lognormal_moments(prof, p);

    std::mt19937_64 gen(7);
    std::normal_distribution<double> xi(0.0, 6.0);
    const int n = 1000000;
    double mean = 0.0, m2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (double d : prof.interferer_distances) {
            s += std::pow(d, -3.0) * std::pow(10.0, xi(gen) / 10.0);
        }
        const double dd = s - mean;
        mean += dd / (i + 1);
        m2 += dd * (s - mean);
    }
    const double var = m2 / (n - 1);
    const double sigma_matched = std::sqrt(std::log1p(var / (mean * mean))) / a;
    CHECK(std::abs(mean / fw.expected_power() - 1.0) < 0.01);
    CHECK(std::abs(sigma_matched - fw.sigma_t_db) < 0.15);

    // The library's own sampler agrees as well.
    const auto lib = sample_lognormal_sum(prof, p, 1000000, 99);
    CHECK(std::abs(lib.mean_linear / fw.expected_power() - 1.0) < 0.01);
    CHECK(std::abs(lib.sigma_matched_db - fw.sigma_t_db) < 0.15);
}

TEST_CASE("Y_f moments") {
    ChannelParams p;
    p.eta = 3.0;
    p.sigma_db = 6.0;
    const auto m = yf_moments_discrete({1.0, {2.0}}, p);
    CHECK(m.m_f_db == doctest::Approx(10.0 * std::log10(0.125)).epsilon(1e-13));
    CHECK(m.m_f_db == doctest::Approx(-9.031).epsilon(1e-4));
    CHECK(m.s_f_db == doctest::Approx(std::sqrt(2.0) * 6.0).epsilon(1e-12));

    p.sigma_db = 0.0;
    const auto prof = edge_profile(3);
    const auto m0 = yf_moments_discrete(prof, p);
    CHECK(m0.m_f_db == doctest::Approx(10.0 * std::log10(naive_yf(prof, 3.0))).epsilon(1e-13));
    CHECK(m0.s_f_db == 0.0);
    CHECK(m0.h_factor == 1.0);
}

TEST_CASE("property: discrete factors on random profiles") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        DistanceProfile prof;
        prof.r = 0.05 + 0.95 * unit(gen);
        const int count = 1 + static_cast<int>(unit(gen) * 80);
        for (int k = 0; k < count; ++k) {
            prof.interferer_distances.push_back(1.0 + 40.0 * unit(gen));
        }
        std::sort(prof.interferer_distances.begin(), prof.interferer_distances.end());
        ChannelParams p;
        p.eta = 2.1 + 3.9 * unit(gen);
        p.sigma_db = 14.0 * unit(gen);

        const double g = g_factor_discrete(prof, p.eta);
        CHECK(g > 0.0);
        CHECK(g <= 1.0 + 1e-15);
        const double h = h_function(std::min(g, 1.0), p.sigma_db);
        CHECK(h >= 1.0 - 1e-15);
        CHECK(h <= (1.0 + 1e-12) / std::sqrt(g));

        const auto m = yf_moments_discrete(prof, p);
        CHECK(m.s_f_db * m.s_f_db <= 2.0 * p.sigma_db * p.sigma_db * (1.0 + 1e-12) + 1e-24);
        // m_f = 10 log10(y_f H) with y_f from plain summation.
        const double y = naive_yf(prof, p.eta);
        CHECK(std::abs(m.m_f_linear() / (y * m.h_factor) - 1.0) < 1e-12);
        CHECK(std::abs(db_to_linear(m.m_f_db) / m.m_f_linear() - 1.0) < 1e-12);
    }
}
