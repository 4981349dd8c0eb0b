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

#include <Eigen/Dense>

#include "starsec/scenario.hpp"

namespace starsec {

using TarcMatrix = Eigen::DiagonalMatrix<Complex, Eigen::Dynamic>;

/// Per-element amplitudes (beta) and phases (phi) on both sides, plus TS time shares.
struct TarcConfig {
    Protocol protocol = Protocol::NONE;
    Eigen::VectorXd beta_r, beta_t;
    Eigen::VectorXd phi_r, phi_t;
    double lambda_r = 0.5;
    double lambda_t = 0.5;

    int num_elements() const { return static_cast<int>(beta_r.size()); }
    const Eigen::VectorXd& beta(Side s) const { return s == Side::R ? beta_r : beta_t; }
    const Eigen::VectorXd& phi(Side s) const { return s == Side::R ? phi_r : phi_t; }
    Eigen::VectorXd& beta(Side s) { return s == Side::R ? beta_r : beta_t; }
    Eigen::VectorXd& phi(Side s) { return s == Side::R ? phi_r : phi_t; }
    double lambda(Side s) const { return s == Side::R ? lambda_r : lambda_t; }

    /// Surface switched off (NONE baseline).
    static TarcConfig off(int num_elements);
    /// Reflect-only conventional RIS with zero phases.
    static TarcConfig reflect_only(int num_elements);
    /// Even ES split with zero phases.
    static TarcConfig even_split(int num_elements);
    /// TS configuration with unit amplitudes on both sides.
    static TarcConfig time_switching(int num_elements, double lambda_r);

    /// Throws std::invalid_argument when the protocol's feasible-set invariants fail.
    void validate() const;
};

/// Diagonal entries sqrt(beta_m) * exp(j phi_m) of one side's TARC matrix.
Eigen::VectorXcd tarc_coefficients(const TarcConfig& config, Side side);
TarcMatrix tarc_matrix(const TarcConfig& config, Side side);

/// channel_vec^H * tarc * H + direct. Throws std::invalid_argument on dimension mismatch.
Complex effective_gain(const Eigen::VectorXcd& channel_vec, const TarcMatrix& tarc, const Eigen::VectorXcd& H,
                       Complex direct);

enum class Node { BobR, BobT, EveR, EveT };

double snr(const ChannelSet& channels, const TarcConfig& config, Node node, double transmit_power,
           double noise_power);

/// |v_k^H Phi_k H + g_k|^2 P_s, the energy harvested at Eve_k.
double harvested_energy(const ChannelSet& channels, const TarcConfig& config, Side eve, double transmit_power);

/// Rates are in nats per channel use.
struct PerformanceMetrics {
    double snr_bob_r = 0.0, snr_bob_t = 0.0;
    double snr_eve_r = 0.0, snr_eve_t = 0.0;
    double rate_r = 0.0, rate_t = 0.0;
    double rate_sum = 0.0;
    double energy_eve_r = 0.0, energy_eve_t = 0.0;

    double rate(Side s) const { return s == Side::R ? rate_r : rate_t; }
    double energy(Side s) const { return s == Side::R ? energy_eve_r : energy_eve_t; }
};

/// Clamped secrecy rates for every side; TS rates are weighted by the time shares.
PerformanceMetrics secrecy_rate(const ChannelSet& channels, const TarcConfig& config, double transmit_power,
                                double noise_power);

/// Wraps an angle to [0, 2*pi).
double wrap_phase(double phi);

}  // namespace starsec
