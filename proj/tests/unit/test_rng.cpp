#include <doctest.h>

#include <cmath>

#include "cellout/rng.hpp"
#include "../oracles.hpp"

using namespace cellout;

TEST_CASE("Philox4x32-10 known-answer vectors") {
    using rng::Counter;
    CHECK(rng::philox4x32({0, 0, 0, 0}, {0, 0}) ==
          Counter{0x6627e8d5U, 0xe169c58dU, 0xbc57ac4cU, 0x9b00dbd8U});
    CHECK(rng::philox4x32({0xffffffffU, 0xffffffffU, 0xffffffffU, 0xffffffffU},
                          {0xffffffffU, 0xffffffffU}) ==
          Counter{0x408f276dU, 0x41c83b0eU, 0xa20bc7c6U, 0x6d5451fdU});
    CHECK(rng::philox4x32({0x243f6a88U, 0x85a308d3U, 0x13198a2eU, 0x03707344U},
                          {0xa4093822U, 0x299f31d0U}) ==
          Counter{0xd16cfe09U, 0x94fdccebU, 0x5001e420U, 0x24126ea1U});
}

TEST_CASE("uniforms lie in the open unit interval and pair consistently") {
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng::uniform(5, i, 3, 7, rng::VariateKind::Fading);
        CHECK((u > 0.0 && u < 1.0));
        sum += u;
        const auto pair = rng::uniform_pair(5, i, 3, 7);
        CHECK(pair.fading == u);
        CHECK(pair.shadowing == rng::uniform(5, i, 3, 7, rng::VariateKind::Shadowing));
    }
    CHECK(std::abs(sum / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(rng::uniform(1, 0, 0, 0, rng::VariateKind::Shadowing) !=
          rng::uniform(2, 0, 0, 0, rng::VariateKind::Shadowing));
}

TEST_CASE("normal quantile inverts the oracle CDF") {
    for (double p : {1e-300, 1e-100, 1e-20, 1e-8, 1e-3, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.9, 0.975,
                     0.999, 1.0 - 1e-10}) {
        const double z = rng::normal_quantile(p);
        const double back = p < 0.5 ? oracle::q(-z) : 1.0 - oracle::q(z);
        INFO("p=" << p);
        CHECK(back == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK(rng::normal_quantile(0.5) == 0.0);
    CHECK(rng::normal_quantile(0.1) == doctest::Approx(-1.2815515655446004).epsilon(1e-15));
    for (int i = 1; i < 1000; ++i) {
        const double p = i / 1000.0;
        CHECK(rng::normal_quantile(p) == doctest::Approx(-rng::normal_quantile(1.0 - p)).epsilon(1e-14));
    }
}

TEST_CASE("mix64 decorrelates neighbouring seeds") {
    CHECK(rng::mix64(0) != rng::mix64(1));
    CHECK(rng::mix64(1) == rng::mix64(1));
}
