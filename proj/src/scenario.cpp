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
#include "starsec/scenario.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace starsec {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 6> kNodeNames = {"alice", "bob_r", "bob_t", "eve_r", "eve_t", "surface"};

template <typename Positions>
auto node_slot(Positions& pos, std::string_view name) -> decltype(&pos.alice) {
    if (name == "alice") return &pos.alice;
    if (name == "bob_r") return &pos.bob_r;
    if (name == "bob_t") return &pos.bob_t;
    if (name == "eve_r") return &pos.eve_r;
    if (name == "eve_t") return &pos.eve_t;
    if (name == "surface") return &pos.surface;
    return nullptr;
}

Point parse_point(const json& j, std::string_view name) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError("position '" + std::string(name) + "' must be a [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
T number(const json& j, std::string_view key) {
    if (!j.is_number()) throw ConfigError("key '" + std::string(key) + "' must be numeric");
    if constexpr (std::is_integral_v<T>) {
        if (!j.is_number_integer()) throw ConfigError("key '" + std::string(key) + "' must be an integer");
    }
    return j.get<T>();
}

Complex random_phase(double amplitude, Rng& rng) {
    return std::polar(amplitude, 2.0 * std::numbers::pi * uniform01(rng));
}

}  // namespace

std::string_view to_string(Protocol p) {
    switch (p) {
        case Protocol::ES: return "ES";
        case Protocol::MS: return "MS";
        case Protocol::TS: return "TS";
        case Protocol::RIS: return "RIS";
        case Protocol::NONE: return "NONE";
    }
    return "?";
}

std::string_view to_string(Side s) { return s == Side::R ? "r" : "t"; }

Protocol parse_protocol(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "es") return Protocol::ES;
    if (lower == "ms") return Protocol::MS;
    if (lower == "ts") return Protocol::TS;
    if (lower == "ris") return Protocol::RIS;
    if (lower == "none") return Protocol::NONE;
    throw ConfigError("unknown protocol '" + std::string(name) + "' (expected es|ms|ts|ris|none)");
}

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

void Scenario::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (num_elements < 1) throw ConfigError("m must be >= 1");
    if (!(transmit_power > 0.0) || !finite(transmit_power)) throw ConfigError("p_s must be > 0");
    if (!(noise_power > 0.0) || !finite(noise_power)) throw ConfigError("sigma2 must be > 0");
    if (!(energy_r >= 0.0) || !finite(energy_r)) throw ConfigError("e_r must be >= 0");
    if (!(energy_t >= 0.0) || !finite(energy_t)) throw ConfigError("e_t must be >= 0");
    if (!(pathloss_exp_legit > 0.0)) throw ConfigError("alpha must be > 0");
    if (!(pathloss_exp_eve > 0.0)) throw ConfigError("alpha_e must be > 0");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    const auto& p = positions;
    for (const Point* pt : {&p.alice, &p.bob_r, &p.bob_t, &p.eve_r, &p.eve_t, &p.surface}) {
        if (!finite(pt->x) || !finite(pt->y)) throw ConfigError("node positions must be finite");
    }
}

Scenario parse_scenario(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed scenario JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("scenario JSON must be an object");

    Scenario s;
    for (const auto& [key, value] : root.items()) {
        if (key == "positions") {
            if (value.is_object()) {
                for (const auto& [node, pt] : value.items()) {
                    Point* slot = node_slot(s.positions, node);
                    if (!slot) throw ConfigError("unknown node '" + node + "' in positions");
                    *slot = parse_point(pt, node);
                }
            } else if (value.is_array() && value.size() == kNodeNames.size()) {
                for (std::size_t i = 0; i < kNodeNames.size(); ++i)
                    *node_slot(s.positions, kNodeNames[i]) = parse_point(value[i], kNodeNames[i]);
            } else {
                throw ConfigError("positions must be an object keyed by node or a list of 6 points");
            }
        } else if (key == "m") {
            s.num_elements = number<int>(value, key);
        } else if (key == "p_s") {
            s.transmit_power = number<double>(value, key);
        } else if (key == "sigma2") {
            s.noise_power = number<double>(value, key);
        } else if (key == "e_r") {
            s.energy_r = number<double>(value, key);
        } else if (key == "e_t") {
            s.energy_t = number<double>(value, key);
        } else if (key == "alpha") {
            s.pathloss_exp_legit = number<double>(value, key);
        } else if (key == "alpha_e") {
            s.pathloss_exp_eve = number<double>(value, key);
        } else if (key == "protocol") {
            if (!value.is_string()) throw ConfigError("protocol must be a string");
            s.protocol = parse_protocol(value.get<std::string>());
        } else if (key == "trials") {
            s.trials = number<int>(value, key);
        } else if (key == "seed") {
            if (!value.is_number_integer()) throw ConfigError("seed must be an integer");
            s.seed = value.is_number_unsigned() ? value.get<std::uint64_t>()
                                                : static_cast<std::uint64_t>(value.get<std::int64_t>());
        } else {
            throw ConfigError("unknown scenario key '" + key + "'");
        }
    }
    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string scenario_to_json(const Scenario& s) {
    json pos = json::object();
    for (auto name : kNodeNames) {
        const Point* pt = node_slot(s.positions, name);
        pos[std::string(name)] = {pt->x, pt->y};
    }
    json j = {{"positions", pos},
              {"m", s.num_elements},
              {"p_s", s.transmit_power},
              {"sigma2", s.noise_power},
              {"e_r", s.energy_r},
              {"e_t", s.energy_t},
              {"alpha", s.pathloss_exp_legit},
              {"alpha_e", s.pathloss_exp_eve},
              {"protocol", to_string(s.protocol)},
              {"trials", s.trials},
              {"seed", s.seed}};
    return j.dump(2);
}

ChannelSet ChannelSet::zeros(int m) {
    ChannelSet c;
    c.H = c.h_r = c.h_t = c.v_r = c.v_t = Eigen::VectorXcd::Zero(m);
    c.f_r = c.f_t = c.g_r = c.g_t = Complex{};
    return c;
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

double pathloss_amplitude(double dist, double exponent) {
    if (!(dist > 0.0)) throw ConfigError("coincident node positions (zero link distance)");
    return std::sqrt(std::pow(1.0 / dist, exponent));
}

ChannelSet generate_channels(const Scenario& scenario, Rng& rng) {
    scenario.validate();
    const auto& pos = scenario.positions;
    const double a = scenario.pathloss_exp_legit;
    const double ae = scenario.pathloss_exp_eve;
    const int m = scenario.num_elements;

    const double amp_as = pathloss_amplitude(distance(pos.alice, pos.surface), a);
    double amp_sb[2], amp_se[2], amp_ab[2], amp_ae[2];
    for (Side s : kSides) {
        amp_sb[index(s)] = pathloss_amplitude(distance(pos.surface, pos.bob(s)), a);
        amp_se[index(s)] = pathloss_amplitude(distance(pos.surface, pos.eve(s)), ae);
        amp_ab[index(s)] = pathloss_amplitude(distance(pos.alice, pos.bob(s)), a);
        amp_ae[index(s)] = pathloss_amplitude(distance(pos.alice, pos.eve(s)), ae);
    }

    // Draw order is part of the reproducibility contract.
    auto draw_vector = [&](double amp) {
        Eigen::VectorXcd v(m);
        for (int i = 0; i < m; ++i) v(i) = random_phase(amp, rng);
        return v;
    };
    ChannelSet c;
    c.H = draw_vector(amp_as);
    c.h_r = draw_vector(amp_sb[0]);
    c.h_t = draw_vector(amp_sb[1]);
    c.v_r = draw_vector(amp_se[0]);
    c.v_t = draw_vector(amp_se[1]);
    c.f_r = random_phase(amp_ab[0], rng);
    c.f_t = random_phase(amp_ab[1], rng);
    c.g_r = random_phase(amp_ae[0], rng);
    c.g_t = random_phase(amp_ae[1], rng);
    return c;
}

ChannelSet generate_channels(const Scenario& scenario, std::uint64_t seed) {
    Rng rng(seed);
    return generate_channels(scenario, rng);
}

}  // namespace starsec
