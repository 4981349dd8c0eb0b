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
#include "starsec/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace starsec {

namespace {

constexpr double kSplitTol = 1e-9;
constexpr double kBinaryTol = 1e-6;

void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument("invalid TARC configuration: " + what);
}

TarcConfig filled(int m, double beta_r, double beta_t) {
    TarcConfig c;
    c.beta_r = Eigen::VectorXd::Constant(m, beta_r);
    c.beta_t = Eigen::VectorXd::Constant(m, beta_t);
    c.phi_r = Eigen::VectorXd::Zero(m);
    c.phi_t = Eigen::VectorXd::Zero(m);
    return c;
}

}  // namespace

TarcConfig TarcConfig::off(int m) {
    TarcConfig c = filled(m, 0.0, 0.0);
    c.protocol = Protocol::NONE;
    return c;
}

TarcConfig TarcConfig::reflect_only(int m) {
    TarcConfig c = filled(m, 1.0, 0.0);
    c.protocol = Protocol::RIS;
    return c;
}

TarcConfig TarcConfig::even_split(int m) {
    TarcConfig c = filled(m, 0.5, 0.5);
    c.protocol = Protocol::ES;
    return c;
}

TarcConfig TarcConfig::time_switching(int m, double lambda_r) {
    TarcConfig c = filled(m, 1.0, 1.0);
    c.protocol = Protocol::TS;
    c.lambda_r = lambda_r;
    c.lambda_t = 1.0 - lambda_r;
    return c;
}

void TarcConfig::validate() const {
    const auto m = beta_r.size();
    require(beta_t.size() == m && phi_r.size() == m && phi_t.size() == m, "vector lengths differ");
    for (Eigen::Index i = 0; i < m; ++i) {
        require(beta_r(i) >= -kSplitTol && beta_r(i) <= 1.0 + kSplitTol, "beta_r outside [0,1]");
        require(beta_t(i) >= -kSplitTol && beta_t(i) <= 1.0 + kSplitTol, "beta_t outside [0,1]");
        require(std::isfinite(phi_r(i)) && std::isfinite(phi_t(i)), "non-finite phase");
    }
    auto near = [](double a, double b, double tol) { return std::abs(a - b) <= tol; };
    switch (protocol) {
        case Protocol::ES:
            for (Eigen::Index i = 0; i < m; ++i)
                require(near(beta_r(i) + beta_t(i), 1.0, kSplitTol), "ES requires beta_t + beta_r = 1");
            break;
        case Protocol::MS:
            for (Eigen::Index i = 0; i < m; ++i) {
                require(near(beta_r(i) + beta_t(i), 1.0, kSplitTol), "MS requires beta_t + beta_r = 1");
                require(near(beta_t(i), std::round(beta_t(i)), kBinaryTol), "MS requires binary beta");
            }
            break;
        case Protocol::TS:
            for (Eigen::Index i = 0; i < m; ++i)
                require(near(beta_r(i), 1.0, kSplitTol) && near(beta_t(i), 1.0, kSplitTol),
                        "TS requires unit amplitudes");
            require(lambda_r >= -kSplitTol && lambda_t >= -kSplitTol, "negative time share");
            require(near(lambda_r + lambda_t, 1.0, kSplitTol), "TS requires lambda_t + lambda_r = 1");
            break;
        case Protocol::RIS:
            for (Eigen::Index i = 0; i < m; ++i)
                require(near(beta_r(i), 1.0, kSplitTol) && near(beta_t(i), 0.0, kSplitTol),
                        "RIS baseline is reflect-only");
            break;
        case Protocol::NONE:
            for (Eigen::Index i = 0; i < m; ++i)
                require(near(beta_r(i), 0.0, kSplitTol) && near(beta_t(i), 0.0, kSplitTol),
                        "NONE baseline has no surface");
            break;
    }
}

Eigen::VectorXcd tarc_coefficients(const TarcConfig& config, Side side) {
    const auto& beta = config.beta(side);
    const auto& phi = config.phi(side);
    Eigen::VectorXcd d(beta.size());
    for (Eigen::Index i = 0; i < beta.size(); ++i) d(i) = std::polar(std::sqrt(std::max(beta(i), 0.0)), phi(i));
    return d;
}

TarcMatrix tarc_matrix(const TarcConfig& config, Side side) { return TarcMatrix(tarc_coefficients(config, side)); }

Complex effective_gain(const Eigen::VectorXcd& channel_vec, const TarcMatrix& tarc, const Eigen::VectorXcd& H,
                       Complex direct) {
    if (channel_vec.size() != H.size() || tarc.rows() != H.size())
        throw std::invalid_argument("effective_gain: dimension mismatch");
    // h^H diag(d) H = sum conj(h_m) d_m H_m
    return channel_vec.dot(tarc.diagonal().cwiseProduct(H)) + direct;
}

double snr(const ChannelSet& ch, const TarcConfig& config, Node node, double transmit_power, double noise_power) {
    const bool is_bob = node == Node::BobR || node == Node::BobT;
    const Side side = (node == Node::BobR || node == Node::EveR) ? Side::R : Side::T;
    const TarcMatrix tarc = tarc_matrix(config, side);
    const Complex gain = is_bob ? effective_gain(ch.h(side), tarc, ch.H, ch.f(side))
                                : effective_gain(ch.v(side), tarc, ch.H, ch.g(side));
    return std::norm(gain) * transmit_power / noise_power;
}

double harvested_energy(const ChannelSet& ch, const TarcConfig& config, Side eve, double transmit_power) {
    const Complex gain = effective_gain(ch.v(eve), tarc_matrix(config, eve), ch.H, ch.g(eve));
    return std::norm(gain) * transmit_power;
}

PerformanceMetrics secrecy_rate(const ChannelSet& ch, const TarcConfig& config, double transmit_power,
                                double noise_power) {
    PerformanceMetrics pm;
    pm.snr_bob_r = snr(ch, config, Node::BobR, transmit_power, noise_power);
    pm.snr_bob_t = snr(ch, config, Node::BobT, transmit_power, noise_power);
    pm.snr_eve_r = snr(ch, config, Node::EveR, transmit_power, noise_power);
    pm.snr_eve_t = snr(ch, config, Node::EveT, transmit_power, noise_power);
    pm.energy_eve_r = harvested_energy(ch, config, Side::R, transmit_power);
    pm.energy_eve_t = harvested_energy(ch, config, Side::T, transmit_power);

    auto clamped = [](double bob, double eve) { return std::max(std::log1p(bob) - std::log1p(eve), 0.0); };
    pm.rate_r = clamped(pm.snr_bob_r, pm.snr_eve_r);
    pm.rate_t = clamped(pm.snr_bob_t, pm.snr_eve_t);
    if (config.protocol == Protocol::TS) {
        pm.rate_r *= config.lambda_r;
        pm.rate_t *= config.lambda_t;
    }
    pm.rate_sum = pm.rate_r + pm.rate_t;
    return pm;
}

double wrap_phase(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(phi, two_pi);
    if (w < 0.0) w += two_pi;
    if (w >= two_pi) w = 0.0;
    return w;
}

}  // namespace starsec
