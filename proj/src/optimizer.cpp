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
#include <stdexcept>

#include "starsec/optimizer.hpp"

namespace starsec {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

constexpr double kEnergySlack = 1e-6;
// A non-optimal solver exit is still usable when its residual and gap are this small.
constexpr double kUsableResidual = 1e-6;
constexpr double kUsableGap = 1e-5;

struct Penalty {
    double eta = 0.0;
    VectorXd beta_hat_r;
    VectorXd beta_hat_t;
};

bool usable(const sdp::SdpSolution& sol) {
    if (sol.status == sdp::SolveStatus::Optimal) return true;
    if (sol.status == sdp::SolveStatus::Infeasible) return false;
    return sol.primal_residual <= kUsableResidual && sol.duality_gap <= kUsableGap &&
           std::isfinite(sol.objective_value);
}

double energy_requirement(const Scenario& sc, Side s) { return sc.energy(s); }

// Ratio at the zero-TARC point q = e_{M+1}.
double direct_ratio(const LiftedData& L, Side s, double sigma2) {
    const auto k = index(s);
    const int m = L.dim() - 1;
    return (sigma2 + L.W_B[k](m, m).real()) / (sigma2 + L.G_E[k](m, m).real());
}

double dinkelbach_value(const LiftedData& L, Side s, const MatrixXcd& Q, double gamma, double sigma2) {
    const auto k = index(s);
    const double num = sigma2 + L.W_B[k].cwiseProduct(Q.transpose()).sum().real();
    const double den = sigma2 + L.G_E[k].cwiseProduct(Q.transpose()).sum().real();
    return num - gamma * den;
}

// ES / MS relaxation over (Q_r, Q_t). The amplitudes are eliminated through beta_k(i) = Q_k(i, i); the
// box 0 <= beta <= 1 follows from Q_k >= 0 and Q_r(i, i) + Q_t(i, i) = 1.
sdp::HermitianSdp build_split_problem(const LiftedData& L, const std::array<double, 2>& gamma, double sigma2,
                                      const std::array<double, 2>& energy, const Penalty* pen,
                                      const std::array<double, 2>& weight = {1.0, 1.0}) {
    const int n = L.dim();
    const int m = n - 1;
    sdp::HermitianSdp p;
    p.block_dims = {n, n};

    for (Side s : kSides) {
        const auto k = index(s);
        const int b = static_cast<int>(k);
        Eigen::MatrixXcd cost = L.W_B[k] - gamma[k] * L.G_E[k];
        if (pen) {
            // eta * sum f(beta_hat, beta) with f(b0, b) = b0^2 + (1 - 2 b0) b, subtracted from the objective.
            const VectorXd& hat = s == Side::R ? pen->beta_hat_r : pen->beta_hat_t;
            for (int i = 0; i < m; ++i) {
                cost(i, i) -= pen->eta * (1.0 - 2.0 * hat(i));
                p.objective.constant -= pen->eta * hat(i) * hat(i);
            }
        }
        p.objective.terms.push_back(sdp::BlockTerm::dense(b, weight[k] * cost));
        p.objective.constant += weight[k] * sigma2 * (1.0 - gamma[k]);
        p.equalities.push_back({{sdp::BlockTerm::diagonal(b, m)}, {}, 1.0});
        if (energy[k] > 0.0) p.inequalities.push_back({{sdp::BlockTerm::dense(b, L.G_E[k])}, {}, energy[k]});
    }
    for (int i = 0; i < m; ++i)
        p.equalities.push_back({{sdp::BlockTerm::diagonal(0, i), sdp::BlockTerm::diagonal(1, i)}, {}, 1.0});
    return p;
}

// One side with unit-modulus diagonal (TS, and the reflect side of the RIS baseline).
sdp::HermitianSdp build_unit_problem(const LiftedData& L, Side s, double gamma, double sigma2, double energy,
                                     double weight) {
    const int n = L.dim();
    const auto k = index(s);
    sdp::HermitianSdp p;
    p.block_dims = {n};
    if (weight != 0.0) {
        p.objective.terms.push_back(sdp::BlockTerm::dense(0, weight * (L.W_B[k] - gamma * L.G_E[k])));
        p.objective.constant = weight * sigma2 * (1.0 - gamma);
    }
    for (int i = 0; i < n; ++i) p.equalities.push_back({{sdp::BlockTerm::diagonal(0, i)}, {}, 1.0});
    if (energy > 0.0) p.inequalities.push_back({{sdp::BlockTerm::dense(0, L.G_E[k])}, {}, energy});
    return p;
}

LiftedData restrict_elements(const LiftedData& L, const std::vector<int>& active) {
    const int m = L.dim() - 1;
    const int n = static_cast<int>(active.size()) + 1;
    LiftedData out;
    out.transmit_power = L.transmit_power;
    for (std::size_t k = 0; k < 2; ++k) {
        out.W[k] = VectorXcd(n);
        out.G[k] = VectorXcd(n);
        for (int j = 0; j + 1 < n; ++j) {
            out.W[k](j) = L.W[k](active[j]);
            out.G[k](j) = L.G[k](active[j]);
        }
        out.W[k](n - 1) = L.W[k](m);
        out.G[k](n - 1) = L.G[k](m);
        out.W_B[k] = L.transmit_power * out.W[k] * out.W[k].adjoint();
        out.G_E[k] = L.transmit_power * out.G[k] * out.G[k].adjoint();
    }
    return out;
}

struct SplitRun {
    bool infeasible = false;
    bool converged = false;
    std::array<MatrixXcd, 2> Q;
    VectorXd beta_r, beta_t;
    std::array<double, 2> next_gamma{};
};

SplitRun run_split_dinkelbach(const LiftedData& L, const Scenario& sc, const OptimizerSettings& st,
                              std::array<double, 2> gamma, const Penalty* pen, std::vector<DinkelbachState>& trace,
                              int& solves) {
    const double sigma2 = sc.noise_power;
    const std::array<double, 2> energy = {energy_requirement(sc, Side::R), energy_requirement(sc, Side::T)};
    const int m = L.dim() - 1;
    SplitRun run;
    bool have = false;
    for (int j = 1; j <= st.max_dinkelbach; ++j) {
        const auto sol = sdp::solve(build_split_problem(L, gamma, sigma2, energy, pen), st.solver);
        ++solves;
        if (!usable(sol)) {
            if (!have) run.infeasible = true;
            break;
        }
        have = true;
        run.Q = {sol.block_values[0], sol.block_values[1]};
        run.beta_r = run.Q[0].diagonal().head(m).real();
        run.beta_t = run.Q[1].diagonal().head(m).real();
        const double F = dinkelbach_value(L, Side::R, run.Q[0], gamma[0], sigma2) +
                         dinkelbach_value(L, Side::T, run.Q[1], gamma[1], sigma2);
        trace.push_back({gamma[0], gamma[1], static_cast<int>(trace.size()) + 1, F});
        run.next_gamma = dinkelbach_update(L, run.Q[0], run.Q[1], sigma2);
        if (std::abs(F) <= st.eps1) {
            run.converged = true;
            break;
        }
        gamma = run.next_gamma;
    }
    return run;
}

struct SideRun {
    bool infeasible = false;
    bool converged = false;
    MatrixXcd Q;
    std::vector<double> gammas;
    std::vector<double> values;  // weighted F per iteration
};

SideRun run_unit_dinkelbach(const LiftedData& L, Side s, double weight, const Scenario& sc,
                            const OptimizerSettings& st, int& solves) {
    const double sigma2 = sc.noise_power;
    const double energy = energy_requirement(sc, s);
    double gamma = direct_ratio(L, s, sigma2);
    SideRun run;
    for (int j = 1; j <= st.max_dinkelbach; ++j) {
        const auto sol = sdp::solve(build_unit_problem(L, s, gamma, sigma2, energy, weight), st.solver);
        ++solves;
        if (!usable(sol)) {
            if (run.gammas.empty()) run.infeasible = true;
            break;
        }
        run.Q = sol.block_values[0];
        const double F = weight * dinkelbach_value(L, s, run.Q, gamma, sigma2);
        run.gammas.push_back(gamma);
        run.values.push_back(F);
        if (std::abs(F) <= st.eps1) {
            run.converged = true;
            break;
        }
        gamma = surrogate_ratio(L, s, run.Q, sigma2);
    }
    return run;
}

// Pads the shorter side with its final state.
std::vector<DinkelbachState> merge_traces(const SideRun& r, const SideRun& t) {
    std::vector<DinkelbachState> out;
    const std::size_t len = std::max(r.gammas.size(), t.gammas.size());
    for (std::size_t j = 0; j < len; ++j) {
        const std::size_t jr = std::min(j, r.gammas.size() - 1);
        const std::size_t jt = std::min(j, t.gammas.size() - 1);
        out.push_back({r.gammas[jr], t.gammas[jt], static_cast<int>(j) + 1, r.values[jr] + t.values[jt]});
    }
    return out;
}

OptResult infeasible_result(const ChannelSet& ch, const Scenario& sc, Protocol protocol) {
    OptResult res;
    res.config = TarcConfig::off(ch.num_elements());
    res.metrics = secrecy_rate(ch, res.config, sc.transmit_power, sc.noise_power);
    res.metrics.rate_r = res.metrics.rate_t = res.metrics.rate_sum = 0.0;
    res.feasible = false;
    res.status = OptStatus::Infeasible;
    (void)protocol;
    return res;
}

bool energy_feasible(const PerformanceMetrics& pm, const Scenario& sc) {
    return pm.energy_eve_r >= sc.energy_r - kEnergySlack && pm.energy_eve_t >= sc.energy_t - kEnergySlack;
}

void finalize(OptResult& res, const ChannelSet& ch, const Scenario& sc, bool extraction_ok) {
    res.metrics = secrecy_rate(ch, res.config, sc.transmit_power, sc.noise_power);
    res.feasible = extraction_ok && energy_feasible(res.metrics, sc);
    const double denom = std::max(std::abs(res.sdr_bound), 1e-300);
    res.rank_gap = (res.sdr_bound - res.extracted_surrogate) / denom;
}

Rng side_rng(const OptimizerSettings& st, Side s) { return Rng(derive_seed(st.randomization_seed, index(s) + 1)); }

// Relaxed secrecy rate sum_k [log(N_k / D_k)]^+.
double log_ratio_sum(const LiftedData& L, const std::array<MatrixXcd, 2>& Q, double sigma2) {
    return std::max(std::log(surrogate_ratio(L, Side::R, Q[0], sigma2)), 0.0) +
           std::max(std::log(surrogate_ratio(L, Side::T, Q[1], sigma2)), 0.0);
}

// Weighted Dinkelbach on sum_k [log(N_k / D_k)]^+, started from Q: each step maximizes
// sum_k w_k (N_k - gamma_k D_k) with gamma_k = N_k^(j) / D_k^(j), w_k = 1 / N_k^(j) on sides with
// gamma_k > 1 and 0 elsewhere. Sides outside `mask` keep weight 0 (only their constraints remain).
// A single-side mask weights its side whatever gamma_k and tracks the unclamped log-ratio, which is
// single-ratio Dinkelbach on that side. Stops when the objective stalls.
std::array<MatrixXcd, 2> refine_log_rate(const LiftedData& L, const Scenario& sc, const OptimizerSettings& st,
                                         std::array<MatrixXcd, 2> Q, std::array<bool, 2> mask) {
    const double sigma2 = sc.noise_power;
    const std::array<double, 2> energy = {sc.energy_r, sc.energy_t};
    const bool single = mask[0] != mask[1];
    const Side only = mask[0] ? Side::R : Side::T;
    auto objective = [&](const std::array<MatrixXcd, 2>& X) {
        return single ? std::log(surrogate_ratio(L, only, X[index(only)], sigma2)) : log_ratio_sum(L, X, sigma2);
    };
    double value = objective(Q);
    for (int j = 0; j < st.max_refinement; ++j) {
        std::array<double, 2> gamma{}, weight{};
        for (Side s : kSides) {
            const auto k = index(s);
            const double num = sigma2 + L.W_B[k].cwiseProduct(Q[k].transpose()).sum().real();
            gamma[k] = surrogate_ratio(L, s, Q[k], sigma2);
            weight[k] = mask[k] && (single || gamma[k] > 1.0) ? 1.0 / num : 0.0;
        }
        if (weight[0] == 0.0 && weight[1] == 0.0) break;
        const auto sol = sdp::solve(build_split_problem(L, gamma, sigma2, energy, nullptr, weight), st.solver);
        if (!usable(sol)) break;
        const std::array<MatrixXcd, 2> next = {sol.block_values[0], sol.block_values[1]};
        const double next_value = objective(next);
        if (!(next_value > value) && j > 0) break;
        Q = next;
        const bool done = next_value - value <= st.eps1;
        value = next_value;
        if (done) break;
    }
    return Q;
}

OptResult solve_split(const ChannelSet& ch, const Scenario& sc, const OptimizerSettings& st, bool binary) {
    st.validate();
    const Protocol protocol = binary ? Protocol::MS : Protocol::ES;
    const LiftedData L = build_lifted(ch, sc.transmit_power);
    const int m = ch.num_elements();
    const double sigma2 = sc.noise_power;
    std::array<double, 2> gamma = {direct_ratio(L, Side::R, sigma2), direct_ratio(L, Side::T, sigma2)};

    OptResult res;
    SplitRun run;
    bool converged = false;
    if (!binary) {
        run = run_split_dinkelbach(L, sc, st, gamma, nullptr, res.gamma_trace, res.iterations_ic);
        if (run.infeasible) return infeasible_result(ch, sc, protocol);
        converged = run.converged;
    } else {
        Penalty pen{st.eta0, VectorXd::Constant(m, st.ms_beta_init), VectorXd::Constant(m, 1.0 - st.ms_beta_init)};
        bool have = false;
        for (int d = 1; d <= st.max_penalty_outer; ++d) {
            SplitRun r = run_split_dinkelbach(L, sc, st, gamma, &pen, res.gamma_trace, res.iterations_ic);
            if (r.infeasible) {
                if (!have) return infeasible_result(ch, sc, protocol);
                break;
            }
            run = std::move(r);
            have = true;
            res.iterations_id = d;
            const double violation = (run.beta_r.array() - run.beta_r.array().square()).sum() +
                                     (run.beta_t.array() - run.beta_t.array().square()).sum();
            if (violation <= st.eps2) {
                converged = true;
                break;
            }
            pen.beta_hat_r = run.beta_r;
            pen.beta_hat_t = run.beta_t;
            pen.eta *= st.omega;
            gamma = run.next_gamma;
        }
    }
    res.status = converged ? OptStatus::Converged : OptStatus::MaxIterations;
    res.relaxed = run.Q;

    auto extract = [&](const std::array<MatrixXcd, 2>& Q, const VectorXd& beta_relaxed, TarcConfig& config,
                       double& surrogate) {
        VectorXd beta_r = beta_relaxed.cwiseMax(0.0).cwiseMin(1.0);
        if (binary) beta_r = beta_r.array().round().matrix();
        const VectorXd beta_t = (1.0 - beta_r.array()).matrix();
        config = TarcConfig::off(m);
        config.protocol = protocol;
        surrogate = 0.0;
        bool ok = true;
        for (Side s : kSides) {
            const VectorXd& target = s == Side::R ? beta_r : beta_t;
            Rng rng = side_rng(st, s);
            ExtractionResult ex;
            bool polished = false;
            if (binary) {
                // Phases of the elements assigned to this side, re-optimized at the rounded assignment.
                std::vector<int> active;
                for (int i = 0; i < m; ++i)
                    if (target(i) > 0.5) active.push_back(i);
                const LiftedData sub = restrict_elements(L, active);
                int solves = 0;
                const SideRun pr = run_unit_dinkelbach(sub, s, 1.0, sc, st, solves);
                if (!pr.infeasible) {
                    const auto sub_ex = extract_rank_one(pr.Q, VectorXd(), sub, s, sc.energy(s), sigma2, st, rng);
                    if (sub_ex.feasible) {
                        ex = sub_ex;
                        ex.q = VectorXcd::Zero(m + 1);
                        for (std::size_t j = 0; j < active.size(); ++j)
                            ex.q(active[j]) = sub_ex.q(static_cast<int>(j));
                        ex.q(m) = 1.0;
                        polished = true;
                    }
                }
            }
            if (!polished) ex = extract_rank_one(Q[index(s)], target, L, s, sc.energy(s), sigma2, st, rng);
            apply_tarc_vector(ex.q, s, config);
            config.beta(s) = target;
            ok = ok && ex.feasible;
            surrogate += ex.surrogate;
        }
        return ok;
    };

    res.sdr_bound = surrogate_ratio(L, Side::R, run.Q[0], sigma2) + surrogate_ratio(L, Side::T, run.Q[1], sigma2);
    bool ok = extract(run.Q, run.beta_r, res.config, res.extracted_surrogate);

    if (!binary && st.rate_refinement) {
        auto best = secrecy_rate(ch, res.config, sc.transmit_power, sc.noise_power);
        bool best_feasible = ok && energy_feasible(best, sc);
        const std::array<std::array<bool, 2>, 3> masks = {{{true, true}, {true, false}, {false, true}}};
        for (const auto& mask : masks) {
            const auto refined = refine_log_rate(L, sc, st, run.Q, mask);
            TarcConfig alt;
            double alt_surrogate = 0.0;
            const bool alt_ok = extract(refined, refined[0].diagonal().head(m).real(), alt, alt_surrogate);
            const auto cand = secrecy_rate(ch, alt, sc.transmit_power, sc.noise_power);
            if (!(alt_ok && energy_feasible(cand, sc))) continue;
            if (!best_feasible || cand.rate_sum > best.rate_sum) {
                res.config = alt;
                res.extracted_surrogate = alt_surrogate;
                ok = alt_ok;
                best = cand;
                best_feasible = true;
            }
        }
    }
    finalize(res, ch, sc, ok);
    return res;
}

}  // namespace

void OptimizerSettings::validate() const {
    auto bad = [](const char* what) { throw std::invalid_argument(std::string("OptimizerSettings: ") + what); };
    if (!(eps1 > 0.0)) bad("eps1 must be > 0");
    if (!(eps2 > 0.0)) bad("eps2 must be > 0");
    if (!(omega > 1.0)) bad("omega must be > 1");
    if (!(eta0 > 0.0)) bad("eta0 must be > 0");
    if (!(lambda_grid_step > 0.0 && lambda_grid_step <= 0.5)) bad("lambda_grid_step must lie in (0, 0.5]");
    if (max_dinkelbach < 1 || max_penalty_outer < 1) bad("iteration caps must be >= 1");
    if (max_refinement < 0) bad("max_refinement must be >= 0");
    if (randomization_samples < 0) bad("randomization_samples must be >= 0");
    if (!(ms_beta_init >= 0.0 && ms_beta_init <= 1.0)) bad("ms_beta_init must lie in [0, 1]");
}

std::string_view to_string(OptStatus s) {
    switch (s) {
        case OptStatus::Converged: return "converged";
        case OptStatus::MaxIterations: return "max_iterations";
        case OptStatus::Infeasible: return "infeasible";
    }
    return "?";
}

OptResult solve_es(const ChannelSet& ch, const Scenario& sc, const OptimizerSettings& st) {
    return solve_split(ch, sc, st, false);
}

OptResult solve_ms(const ChannelSet& ch, const Scenario& sc, const OptimizerSettings& st) {
    return solve_split(ch, sc, st, true);
}

OptResult solve_ts_fixed_lambda(const ChannelSet& ch, const Scenario& sc, double lambda_r,
                                const OptimizerSettings& st) {
    st.validate();
    if (!(lambda_r >= 0.0 && lambda_r <= 1.0)) throw std::invalid_argument("lambda_r must lie in [0, 1]");
    const LiftedData L = build_lifted(ch, sc.transmit_power);
    const int m = ch.num_elements();
    const double sigma2 = sc.noise_power;
    const std::array<double, 2> weight = {lambda_r, 1.0 - lambda_r};

    OptResult res;
    int solves_r = 0, solves_t = 0;
    const SideRun r = run_unit_dinkelbach(L, Side::R, weight[0], sc, st, solves_r);
    const SideRun t = run_unit_dinkelbach(L, Side::T, weight[1], sc, st, solves_t);
    if (r.infeasible || t.infeasible) return infeasible_result(ch, sc, Protocol::TS);
    res.gamma_trace = merge_traces(r, t);
    res.iterations_ic = std::max(solves_r, solves_t);
    res.status = r.converged && t.converged ? OptStatus::Converged : OptStatus::MaxIterations;
    res.relaxed = {r.Q, t.Q};

    res.config = TarcConfig::time_switching(m, lambda_r);
    bool ok = true;
    for (Side s : kSides) {
        Rng rng = side_rng(st, s);
        const auto ex = extract_rank_one(res.relaxed[index(s)], VectorXd(), L, s, sc.energy(s), sigma2, st, rng);
        apply_tarc_vector(ex.q, s, res.config);
        res.config.beta(s) = VectorXd::Ones(m);
        ok = ok && ex.feasible;
        res.sdr_bound += weight[index(s)] * surrogate_ratio(L, s, res.relaxed[index(s)], sigma2);
        res.extracted_surrogate += weight[index(s)] * ex.surrogate;
    }
    finalize(res, ch, sc, ok);
    return res;
}

OptResult solve_ts(const ChannelSet& ch, const Scenario& sc, const OptimizerSettings& st) {
    st.validate();
    const LiftedData L = build_lifted(ch, sc.transmit_power);
    const int m = ch.num_elements();
    const double sigma2 = sc.noise_power;

    // For lambda_k > 0 the weighted objective is a positive multiple of the unweighted one and the
    // ratio update ignores the weight, so each side's Dinkelbach sequence is lambda-invariant. Solve
    // once per side and scan the lambda grid over the extracted rates.
    int solves_r = 0, solves_t = 0;
    const SideRun r = run_unit_dinkelbach(L, Side::R, 1.0, sc, st, solves_r);
    const SideRun t = run_unit_dinkelbach(L, Side::T, 1.0, sc, st, solves_t);
    if (r.infeasible || t.infeasible) return infeasible_result(ch, sc, Protocol::TS);

    OptResult res;
    res.iterations_ic = std::max(solves_r, solves_t);
    res.status = r.converged && t.converged ? OptStatus::Converged : OptStatus::MaxIterations;
    res.relaxed = {r.Q, t.Q};
    res.config = TarcConfig::time_switching(m, 0.0);
    bool ok = true;
    std::array<double, 2> relaxed_ratio{}, extracted_ratio{};
    for (Side s : kSides) {
        Rng rng = side_rng(st, s);
        const auto ex = extract_rank_one(res.relaxed[index(s)], VectorXd(), L, s, sc.energy(s), sigma2, st, rng);
        apply_tarc_vector(ex.q, s, res.config);
        res.config.beta(s) = VectorXd::Ones(m);
        ok = ok && ex.feasible;
        relaxed_ratio[index(s)] = surrogate_ratio(L, s, res.relaxed[index(s)], sigma2);
        extracted_ratio[index(s)] = ex.surrogate;
    }

    // Unweighted per-side secrecy rates at the extracted phases.
    TarcConfig unit = res.config;
    unit.protocol = Protocol::ES;  // evaluate without the time-share weights
    const PerformanceMetrics full = secrecy_rate(ch, unit, sc.transmit_power, sc.noise_power);

    const int steps = static_cast<int>(std::llround(1.0 / st.lambda_grid_step));
    double best_rate = -1.0, best_lambda = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double lam = std::min(1.0, i * st.lambda_grid_step);
        const double rate = lam * full.rate_r + (1.0 - lam) * full.rate_t;
        // Smallest lambda_r wins among ties.
        if (rate > best_rate + 1e-12 * (1.0 + std::abs(best_rate))) {
            best_rate = rate;
            best_lambda = lam;
        }
    }
    res.config.lambda_r = best_lambda;
    res.config.lambda_t = 1.0 - best_lambda;
    res.sdr_bound = best_lambda * relaxed_ratio[0] + (1.0 - best_lambda) * relaxed_ratio[1];
    res.extracted_surrogate = best_lambda * extracted_ratio[0] + (1.0 - best_lambda) * extracted_ratio[1];

    // Trace reported at the chosen split.
    SideRun rw = r, tw = t;
    for (auto& v : rw.values) v *= best_lambda;
    for (auto& v : tw.values) v *= 1.0 - best_lambda;
    res.gamma_trace = merge_traces(rw, tw);
    finalize(res, ch, sc, ok);
    return res;
}

OptResult solve_baseline(const ChannelSet& ch, const Scenario& sc, const OptimizerSettings& st, Protocol kind) {
    st.validate();
    const int m = ch.num_elements();
    const double sigma2 = sc.noise_power;
    const LiftedData L = build_lifted(ch, sc.transmit_power);
    OptResult res;

    if (kind == Protocol::NONE) {
        res.config = TarcConfig::off(m);
        res.sdr_bound = direct_ratio(L, Side::R, sigma2) + direct_ratio(L, Side::T, sigma2);
        res.extracted_surrogate = res.sdr_bound;
        finalize(res, ch, sc, true);
        res.status = res.feasible ? OptStatus::Converged : OptStatus::Infeasible;
        return res;
    }
    if (kind != Protocol::RIS) throw std::invalid_argument("solve_baseline: kind must be RIS or NONE");

    // Reflect side: unit amplitudes, phases optimized. Transmit side: direct links only.
    int solves = 0;
    const SideRun r = run_unit_dinkelbach(L, Side::R, 1.0, sc, st, solves);
    if (r.infeasible) return infeasible_result(ch, sc, Protocol::RIS);
    res.iterations_ic = solves;
    res.status = r.converged ? OptStatus::Converged : OptStatus::MaxIterations;
    MatrixXcd q_t = MatrixXcd::Zero(m + 1, m + 1);
    q_t(m, m) = 1.0;
    res.relaxed = {r.Q, q_t};
    for (std::size_t j = 0; j < r.gammas.size(); ++j)
        res.gamma_trace.push_back({r.gammas[j], direct_ratio(L, Side::T, sigma2), static_cast<int>(j) + 1, r.values[j]});

    res.config = TarcConfig::reflect_only(m);
    Rng rng = side_rng(st, Side::R);
    const auto ex = extract_rank_one(r.Q, VectorXd(), L, Side::R, sc.energy_r, sigma2, st, rng);
    apply_tarc_vector(ex.q, Side::R, res.config);
    res.config.beta_r = VectorXd::Ones(m);
    res.sdr_bound = surrogate_ratio(L, Side::R, r.Q, sigma2) + direct_ratio(L, Side::T, sigma2);
    res.extracted_surrogate = ex.surrogate + direct_ratio(L, Side::T, sigma2);
    finalize(res, ch, sc, ex.feasible);
    if (!res.feasible) res.status = OptStatus::Infeasible;
    return res;
}

OptResult optimize(const ChannelSet& ch, const Scenario& sc, const OptimizerSettings& st) {
    switch (sc.protocol) {
        case Protocol::ES: return solve_es(ch, sc, st);
        case Protocol::MS: return solve_ms(ch, sc, st);
        case Protocol::TS: return solve_ts(ch, sc, st);
        case Protocol::RIS:
        case Protocol::NONE: return solve_baseline(ch, sc, st, sc.protocol);
    }
    throw std::invalid_argument("optimize: unknown protocol");
}

}  // namespace starsec
