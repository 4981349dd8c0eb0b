// SPDX-License-Identifier: Apache-2.0
//
// star-secrecy: STAR-RIS wiretap simulation and TARC optimization
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#include <array>
#include <cmath>
#include <numbers>

#include <doctest.h>

#include "starsec/scenario.hpp"

using namespace starsec;
using doctest::Approx;

namespace {

// Closed-form amplitude d^(-exponent/2), written independently of pathloss_amplitude.
double amp(double dx, double dy, double exponent) { return std::pow(std::hypot(dx, dy), -exponent / 2.0); }

}  // namespace

TEST_CASE("distance") {
    CHECK(distance({0, 0}, {8, 0}) == 8.0);
    CHECK(distance({3, 4}, {3, 4}) == 0.0);
    CHECK(distance({0, 0}, {3, 4}) == 5.0);
}

TEST_CASE("default scenario geometry and powers") {
    const Scenario s;
    CHECK(s.positions.alice.x == 0.0);
    CHECK(s.positions.bob_r.x == 12.0);
    CHECK(s.positions.bob_r.y == 2.0);
    CHECK(s.positions.bob_t.y == -2.0);
    CHECK(s.positions.eve_r.x == 10.0);
    CHECK(s.positions.eve_t.y == -2.0);
    CHECK(s.positions.surface.x == 8.0);
    CHECK(s.transmit_power == 20.0);
    CHECK(s.noise_power == 1.0);
    CHECK(s.pathloss_exp_legit == 2.2);
    CHECK(s.pathloss_exp_eve == 2.0);
    CHECK_NOTHROW(s.validate());
}

TEST_CASE("scenario validation rejects out-of-range values") {
    auto bad = [](auto mutate) {
        Scenario s;
        mutate(s);
        CHECK_THROWS_AS(s.validate(), ConfigError);
    };
    bad([](Scenario& s) { s.num_elements = 0; });
    bad([](Scenario& s) { s.transmit_power = 0.0; });
    bad([](Scenario& s) { s.noise_power = -1.0; });
    bad([](Scenario& s) { s.energy_r = -0.1; });
    bad([](Scenario& s) { s.energy_t = NAN; });
    bad([](Scenario& s) { s.pathloss_exp_legit = 0.0; });
    bad([](Scenario& s) { s.pathloss_exp_eve = -2.0; });
    bad([](Scenario& s) { s.trials = 0; });
}

TEST_CASE("channel magnitudes follow the path-loss law") {
    const Scenario s;
    const ChannelSet c = generate_channels(s, 42);
    REQUIRE(c.num_elements() == 10);
    for (int m = 0; m < 10; ++m) {
        CHECK(std::abs(c.H(m)) == Approx(0.10153).epsilon(1e-4));
        CHECK(std::abs(c.H(m)) == Approx(amp(8, 0, 2.2)).epsilon(1e-13));
        CHECK(std::abs(c.h_r(m)) == Approx(amp(4, 2, 2.2)).epsilon(1e-13));
        CHECK(std::abs(c.h_t(m)) == Approx(amp(4, -2, 2.2)).epsilon(1e-13));
        CHECK(std::abs(c.v_r(m)) == Approx(amp(2, 2, 2.0)).epsilon(1e-13));
        CHECK(std::abs(c.v_t(m)) == Approx(amp(2, -2, 2.0)).epsilon(1e-13));
    }
    CHECK(std::abs(c.g_r) == Approx(1.0 / std::sqrt(104.0)).epsilon(1e-13));
    CHECK(std::abs(c.g_t) == Approx(1.0 / std::sqrt(104.0)).epsilon(1e-13));
    CHECK(std::abs(c.f_r) == Approx(amp(12, 2, 2.2)).epsilon(1e-13));
    CHECK(std::abs(c.f_t) == Approx(amp(12, -2, 2.2)).epsilon(1e-13));
}

TEST_CASE("coincident nodes are a configuration error") {
    Scenario s;
    s.positions.surface = s.positions.alice;
    CHECK_THROWS_AS(generate_channels(s, 1), ConfigError);
    CHECK_THROWS_AS(pathloss_amplitude(0.0, 2.0), ConfigError);
}

TEST_CASE("channel generation is a pure function of the seed") {
    Scenario s;
    s.num_elements = 7;
    const ChannelSet a = generate_channels(s, 123);
    const ChannelSet b = generate_channels(s, 123);
    const ChannelSet c = generate_channels(s, 124);
    CHECK(a.H == b.H);
    CHECK(a.h_r == b.h_r);
    CHECK(a.v_t == b.v_t);
    CHECK(a.f_t == b.f_t);
    CHECK(a.g_r == b.g_r);
    CHECK(a.H != c.H);
}

TEST_CASE("magnitudes are exact and phases uniform over many draws") {
    Scenario s;
    s.num_elements = 1;
    std::array<int, 8> bins{};
    const int draws = 10000;
    Rng rng(2024);
    const double ah = amp(8, 0, 2.2), ag = 1.0 / std::sqrt(104.0);
    double worst = 0.0;
    for (int i = 0; i < draws; ++i) {
        const ChannelSet c = generate_channels(s, rng);
        worst = std::max(worst, std::abs(std::abs(c.H(0)) - ah) / ah);
        worst = std::max(worst, std::abs(std::abs(c.g_r) - ag) / ag);
        const double ph = std::arg(c.H(0)) + std::numbers::pi;  // [0, 2 pi]
        bins[std::min(7, static_cast<int>(ph / (2 * std::numbers::pi) * 8))]++;
    }
    CHECK(worst < 1e-13);
    for (int b : bins) CHECK(std::abs(b / double(draws) - 0.125) <= 0.02);
}

TEST_CASE("uniform01 and derive_seed") {
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const double u = uniform01(rng);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("scenario JSON round trip and overrides") {
    const Scenario s = parse_scenario(R"({"m": 20, "p_s": 40, "e_r": 0.05, "e_t": 0.12, "protocol": "ts",
                                          "positions": {"eve_r": [9, 3]}, "seed": 99, "trials": 5})");
    CHECK(s.num_elements == 20);
    CHECK(s.transmit_power == 40.0);
    CHECK(s.energy_r == 0.05);
    CHECK(s.energy_t == 0.12);
    CHECK(s.protocol == Protocol::TS);
    CHECK(s.positions.eve_r.x == 9.0);
    CHECK(s.positions.eve_r.y == 3.0);
    CHECK(s.positions.bob_r.x == 12.0);
    CHECK(s.seed == 99);
    CHECK(s.trials == 5);

    const Scenario r = parse_scenario(scenario_to_json(s));
    CHECK(r.num_elements == s.num_elements);
    CHECK(r.energy_t == s.energy_t);
    CHECK(r.positions.eve_r.y == s.positions.eve_r.y);
    CHECK(r.protocol == s.protocol);
    CHECK(r.seed == s.seed);

    const Scenario d = parse_scenario("{}");
    CHECK(d.num_elements == 10);
    CHECK(d.energy_r == 0.1);
}

TEST_CASE("scenario JSON errors") {
    CHECK_THROWS_AS(parse_scenario("{"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[]"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"bogus": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"m": 0})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"protocol": "xyz"})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"positions": {"carol": [0, 0]}})"), ConfigError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ConfigError);
}

TEST_CASE("protocol names") {
    CHECK(parse_protocol("es") == Protocol::ES);
    CHECK(parse_protocol("MS") == Protocol::MS);
    CHECK(parse_protocol("Ts") == Protocol::TS);
    CHECK(parse_protocol("ris") == Protocol::RIS);
    CHECK(parse_protocol("none") == Protocol::NONE);
    CHECK(to_string(Protocol::RIS) == "RIS");
}
