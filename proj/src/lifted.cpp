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
#include <algorithm>
#include <cmath>

#include "starsec/optimizer.hpp"

namespace starsec {

namespace {

constexpr double kZeroAmplitude = 1e-14;

}  // namespace

LiftedData build_lifted(const ChannelSet& ch, double transmit_power) {
    const int m = ch.num_elements();
    LiftedData L;
    L.transmit_power = transmit_power;
    for (Side s : kSides) {
        const auto k = index(s);
        L.W[k] = Eigen::VectorXcd(m + 1);
        L.G[k] = Eigen::VectorXcd(m + 1);
        L.W[k].head(m) = ch.h(s).conjugate().cwiseProduct(ch.H);
        L.G[k].head(m) = ch.v(s).conjugate().cwiseProduct(ch.H);
        L.W[k](m) = ch.f(s);
        L.G[k](m) = ch.g(s);
        L.W_B[k] = transmit_power * L.W[k] * L.W[k].adjoint();
        L.G_E[k] = transmit_power * L.G[k] * L.G[k].adjoint();
    }
    return L;
}

double surrogate_ratio(const LiftedData& L, Side side, const Eigen::MatrixXcd& Q, double noise_power) {
    const auto k = index(side);
    const double num = noise_power + L.W_B[k].cwiseProduct(Q.transpose()).sum().real();
    const double den = noise_power + L.G_E[k].cwiseProduct(Q.transpose()).sum().real();
    return num / den;
}

double surrogate_ratio(const LiftedData& L, Side side, const Eigen::VectorXcd& q, double noise_power) {
    const auto k = index(side);
    const double num = noise_power + L.transmit_power * std::norm(L.W[k].dot(q));
    const double den = noise_power + L.transmit_power * std::norm(L.G[k].dot(q));
    return num / den;
}

std::array<double, 2> dinkelbach_update(const LiftedData& L, const Eigen::MatrixXcd& Q_r, const Eigen::MatrixXcd& Q_t,
                                        double noise_power) {
    return {surrogate_ratio(L, Side::R, Q_r, noise_power), surrogate_ratio(L, Side::T, Q_t, noise_power)};
}

Eigen::VectorXcd tarc_vector(const TarcConfig& config, Side side) {
    const int m = config.num_elements();
    Eigen::VectorXcd q(m + 1);
    q.head(m) = tarc_coefficients(config, side).conjugate();
    q(m) = 1.0;
    return q;
}

void apply_tarc_vector(const Eigen::VectorXcd& q, Side side, TarcConfig& config) {
    const int m = static_cast<int>(q.size()) - 1;
    auto& beta = config.beta(side);
    auto& phi = config.phi(side);
    beta.resize(m);
    phi.resize(m);
    for (int i = 0; i < m; ++i) {
        const double amp = std::abs(q(i));
        beta(i) = std::min(amp * amp, 1.0);
        phi(i) = amp > kZeroAmplitude ? wrap_phase(-std::arg(q(i))) : 0.0;
    }
}

}  // namespace starsec
