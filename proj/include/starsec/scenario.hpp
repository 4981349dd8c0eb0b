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
#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace starsec {

using Complex = std::complex<double>;

/// Raised for invalid scenario parameters or unreadable configuration files.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Surface operating protocol. RIS is the reflect-only baseline, NONE has no surface.
enum class Protocol { ES, MS, TS, RIS, NONE };

/// Surface side: reflection region (r) or transmission region (t).
enum class Side { R = 0, T = 1 };

inline constexpr Side kSides[] = {Side::R, Side::T};

constexpr std::size_t index(Side s) { return static_cast<std::size_t>(s); }

std::string_view to_string(Protocol p);
std::string_view to_string(Side s);

/// Parses "es", "ms", "ts", "ris", "none" (case-insensitive).
Protocol parse_protocol(std::string_view name);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point& a, const Point& b);

struct NodePositions {
    Point alice{0.0, 0.0};
    Point bob_r{12.0, 2.0};
    Point bob_t{12.0, -2.0};
    Point eve_r{10.0, 2.0};
    Point eve_t{10.0, -2.0};
    Point surface{8.0, 0.0};

    const Point& bob(Side s) const { return s == Side::R ? bob_r : bob_t; }
    const Point& eve(Side s) const { return s == Side::R ? eve_r : eve_t; }
};

/// Experiment configuration. All quantities are dimensionless linear units.
struct Scenario {
    NodePositions positions;
    int num_elements = 10;
    double transmit_power = 20.0;
    double noise_power = 1.0;
    double energy_r = 0.1;
    double energy_t = 0.1;
    double pathloss_exp_legit = 2.2;
    double pathloss_exp_eve = 2.0;
    Protocol protocol = Protocol::ES;
    int trials = 50;
    std::uint64_t seed = 0;

    double energy(Side s) const { return s == Side::R ? energy_r : energy_t; }

    /// Throws ConfigError when an invariant is violated.
    void validate() const;
};

/// Loads a JSON scenario file. Missing keys keep their defaults.
Scenario load_scenario(const std::string& path);

/// Parses scenario JSON text (same schema as load_scenario).
Scenario parse_scenario(std::string_view json_text);

/// Serializes every scenario key, e.g. for result metadata.
std::string scenario_to_json(const Scenario& scenario);

/// One realization of every complex channel coefficient.
struct ChannelSet {
    Eigen::VectorXcd H;     ///< Alice -> surface
    Eigen::VectorXcd h_r;   ///< surface -> Bob_r
    Eigen::VectorXcd h_t;   ///< surface -> Bob_t
    Eigen::VectorXcd v_r;   ///< surface -> Eve_r
    Eigen::VectorXcd v_t;   ///< surface -> Eve_t
    Complex f_r, f_t;       ///< Alice -> Bob_k direct
    Complex g_r, g_t;       ///< Alice -> Eve_k direct

    int num_elements() const { return static_cast<int>(H.size()); }
    const Eigen::VectorXcd& h(Side s) const { return s == Side::R ? h_r : h_t; }
    const Eigen::VectorXcd& v(Side s) const { return s == Side::R ? v_r : v_t; }
    Complex f(Side s) const { return s == Side::R ? f_r : f_t; }
    Complex g(Side s) const { return s == Side::R ? g_r : g_t; }

    /// All-zero channels of the given size.
    static ChannelSet zeros(int num_elements);
};

/// Generator used for every random draw in the library.
using Rng = std::mt19937_64;
inline constexpr std::string_view kRngName = "mt19937_64";

/// Uniform draw on [0, 1) from the top 53 bits, identical on every standard library.
double uniform01(Rng& rng);

/// Deterministic per-trial seed from (base seed, trial index) via splitmix64.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Path-loss amplitude sqrt((1/d)^exponent).
double pathloss_amplitude(double dist, double exponent);

/// Draws one channel realization: deterministic magnitudes, i.i.d. uniform phases per element.
ChannelSet generate_channels(const Scenario& scenario, Rng& rng);
ChannelSet generate_channels(const Scenario& scenario, std::uint64_t seed);

}  // namespace starsec
