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

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "starsec/model.hpp"
#include "starsec/scenario.hpp"
#include "starsec/sdp.hpp"

namespace starsec {

/// Lifted channel data. W_k stacks diag(h_k^H) H over f_k, G_k stacks diag(v_k^H) H over g_k.
/// A TARC vector q (conjugated coefficients, last entry 1) gives q^H W_B^k q = P_s |h_k^H Phi_k H + f_k|^2.
struct LiftedData {
    std::array<Eigen::VectorXcd, 2> W;
    std::array<Eigen::VectorXcd, 2> G;
    std::array<Eigen::MatrixXcd, 2> W_B;
    std::array<Eigen::MatrixXcd, 2> G_E;
    double transmit_power = 0.0;

    int dim() const { return static_cast<int>(W[0].size()); }
};

LiftedData build_lifted(const ChannelSet& channels, double transmit_power);

/// (sigma^2 + tr(W_B Q)) / (sigma^2 + tr(G_E Q)) for one side.
double surrogate_ratio(const LiftedData& lifted, Side side, const Eigen::MatrixXcd& Q, double noise_power);

/// Same ratio for a rank-one q, evaluated through the lifted vectors.
double surrogate_ratio(const LiftedData& lifted, Side side, const Eigen::VectorXcd& q, double noise_power);

/// Ratio update gamma_k = (sigma^2 + tr(W_B^k Q^k)) / (sigma^2 + tr(G_E^k Q^k)) for both sides.
std::array<double, 2> dinkelbach_update(const LiftedData& lifted, const Eigen::MatrixXcd& Q_r,
                                        const Eigen::MatrixXcd& Q_t, double noise_power);

/// TARC vector q = conj(sqrt(beta) e^{j phi}) with a trailing 1, and its inverse.
Eigen::VectorXcd tarc_vector(const TarcConfig& config, Side side);
void apply_tarc_vector(const Eigen::VectorXcd& q, Side side, TarcConfig& config);

struct DinkelbachState {
    double gamma_r = 0.0;
    double gamma_t = 0.0;
    int iteration = 0;
    double objective = 0.0;  ///< Dinkelbach objective F at the iterate solved with these ratios
};

struct OptimizerSettings {
    double eps1 = 1e-4;
    double eps2 = 1e-4;
    double eta0 = 1e-2;
    double omega = 10.0;
    int max_dinkelbach = 50;
    int max_penalty_outer = 30;
    double lambda_grid_step = 0.01;
    int randomization_samples = 1000;
    std::uint64_t randomization_seed = 0;
    double rank_one_tol = 1e-6;
    double ms_beta_init = 0.5;
    /// ES only: after the ratio-sum Dinkelbach, also run weighted Dinkelbach steps on the log-ratio sum
    /// and keep whichever extracted configuration has the larger true secrecy rate.
    bool rate_refinement = true;
    int max_refinement = 20;
    sdp::SolverSettings solver;

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

enum class OptStatus { Converged, MaxIterations, Infeasible };

std::string_view to_string(OptStatus s);

struct OptResult {
    TarcConfig config;
    double sdr_bound = 0.0;          ///< relaxed surrogate value sum_k ratio_k(Q_k) (TS: lambda-weighted)
    double extracted_surrogate = 0.0;
    PerformanceMetrics metrics;
    bool feasible = false;
    OptStatus status = OptStatus::Converged;
    std::vector<DinkelbachState> gamma_trace;
    int iterations_ic = 0;  ///< Dinkelbach SDP solves (summed over penalty rounds for MS)
    int iterations_id = 0;  ///< penalty outer rounds (MS only)
    double rank_gap = 0.0;  ///< (sdr_bound - extracted_surrogate) / |sdr_bound|
    std::array<Eigen::MatrixXcd, 2> relaxed;  ///< final relaxed Q_r, Q_t
};

struct ExtractionResult {
    Eigen::VectorXcd q;
    bool feasible = false;
    bool rank_one = false;
    double surrogate = 0.0;
};

/// Rank-one recovery: principal eigenvector when Q is numerically rank one, else Gaussian
/// randomization with projection onto the protocol's amplitude set. beta_target empty means unit
/// amplitudes (TS). Samples failing tr(G_E q q^H) >= energy are discarded.
/// Throws std::invalid_argument when Q has an eigenvalue below -1e-6 * max(1, ||Q||).
ExtractionResult extract_rank_one(const Eigen::MatrixXcd& Q, const Eigen::VectorXd& beta_target,
                                  const LiftedData& lifted, Side side, double energy, double noise_power,
                                  const OptimizerSettings& settings, Rng& rng);

OptResult solve_es(const ChannelSet& channels, const Scenario& scenario, const OptimizerSettings& settings = {});
OptResult solve_ms(const ChannelSet& channels, const Scenario& scenario, const OptimizerSettings& settings = {});
OptResult solve_ts(const ChannelSet& channels, const Scenario& scenario, const OptimizerSettings& settings = {});

/// TS at one fixed time split: two decoupled lambda-weighted Dinkelbach problems.
OptResult solve_ts_fixed_lambda(const ChannelSet& channels, const Scenario& scenario, double lambda_r,
                                const OptimizerSettings& settings = {});

/// RIS: reflect-only surface with optimized r-side phases; NONE: no surface.
OptResult solve_baseline(const ChannelSet& channels, const Scenario& scenario, const OptimizerSettings& settings,
                         Protocol kind);

/// Dispatches on scenario.protocol.
OptResult optimize(const ChannelSet& channels, const Scenario& scenario, const OptimizerSettings& settings = {});

struct OracleResult {
    TarcConfig config;
    PerformanceMetrics metrics;
    bool feasible = false;
    double best_surrogate = 0.0;  ///< max over feasible grid points of the (TS: lambda-weighted) ratio sum
    long long evaluations = 0;
};

/// Exhaustive grid search over per-element phases (and beta for ES, binary beta for MS, lambda for TS).
/// Throws std::invalid_argument for M > 3.
OracleResult brute_force_oracle(const ChannelSet& channels, const Scenario& scenario, int phase_points,
                                int beta_points, double lambda_step = 0.01);

}  // namespace starsec
