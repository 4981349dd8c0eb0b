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
#include <numbers>
#include <stdexcept>

#include "starsec/optimizer.hpp"

namespace starsec {

namespace {

struct SideBest {
    bool feasible = false;
    double rate = -1.0;
    Eigen::VectorXd phi;
    double surrogate = -1.0;  // max over feasible phases, independent of the rate maximizer
};

// Enumerates phase_points^M phase vectors for one side at fixed amplitudes.
SideBest search_side(const ChannelSet& ch, const Scenario& sc, Side s, const Eigen::VectorXd& beta, int phase_points,
                     long long& evaluations) {
    const int m = ch.num_elements();
    const double p = sc.transmit_power;
    const double sigma2 = sc.noise_power;
    const double energy = sc.energy(s);
    const double step = 2.0 * std::numbers::pi / phase_points;

    Eigen::VectorXcd bob_path(m), eve_path(m);
    for (int i = 0; i < m; ++i) {
        bob_path(i) = std::conj(ch.h(s)(i)) * ch.H(i) * std::sqrt(beta(i));
        eve_path(i) = std::conj(ch.v(s)(i)) * ch.H(i) * std::sqrt(beta(i));
    }

    SideBest best;
    std::vector<int> idx(m, 0);
    Eigen::VectorXd phi(m);
    while (true) {
        Complex gb = ch.f(s), ge = ch.g(s);
        for (int i = 0; i < m; ++i) {
            phi(i) = idx[i] * step;
            const Complex rot = std::polar(1.0, phi(i));
            gb += bob_path(i) * rot;
            ge += eve_path(i) * rot;
        }
        ++evaluations;
        const double bob = p * std::norm(gb), eve = p * std::norm(ge);
        if (eve >= energy) {
            const double rate = std::max(std::log1p(bob / sigma2) - std::log1p(eve / sigma2), 0.0);
            const double ratio = (sigma2 + bob) / (sigma2 + eve);
            if (rate > best.rate) {
                best.rate = rate;
                best.phi = phi;
            }
            best.surrogate = std::max(best.surrogate, ratio);
            best.feasible = true;
        }
        int d = 0;
        while (d < m && ++idx[d] == phase_points) idx[d++] = 0;
        if (d == m) break;
    }
    if (m == 0) best.phi.resize(0);
    return best;
}

// Evaluates every beta_r vector in the product grid `levels`^M.
template <typename Visit>
void for_each_beta(int m, const std::vector<double>& levels, Visit&& visit) {
    std::vector<int> idx(m, 0);
    Eigen::VectorXd beta(m);
    const int n = static_cast<int>(levels.size());
    while (true) {
        for (int i = 0; i < m; ++i) beta(i) = levels[idx[i]];
        visit(beta);
        int d = 0;
        while (d < m && ++idx[d] == n) idx[d++] = 0;
        if (d == m) break;
    }
}

}  // namespace

OracleResult brute_force_oracle(const ChannelSet& ch, const Scenario& sc, int phase_points, int beta_points,
                                double lambda_step) {
    const int m = ch.num_elements();
    if (m > 3) throw std::invalid_argument("brute_force_oracle: M must be at most 3");
    if (phase_points < 1) throw std::invalid_argument("brute_force_oracle: phase_points must be >= 1");
    if (!(lambda_step > 0.0 && lambda_step <= 0.5))
        throw std::invalid_argument("brute_force_oracle: lambda_step must lie in (0, 0.5]");

    OracleResult out;
    out.best_surrogate = -1.0;
    out.config = TarcConfig::off(m);
    double best_rate = -1.0;
    const Protocol protocol = sc.protocol;

    auto finish = [&]() {
        if (out.feasible) out.metrics = secrecy_rate(ch, out.config, sc.transmit_power, sc.noise_power);
        return out;
    };

    if (protocol == Protocol::NONE) {
        ++out.evaluations;
        out.metrics = secrecy_rate(ch, out.config, sc.transmit_power, sc.noise_power);
        out.feasible = out.metrics.energy_eve_r >= sc.energy_r && out.metrics.energy_eve_t >= sc.energy_t;
        const double r = (sc.noise_power + sc.transmit_power * std::norm(ch.f_r)) /
                         (sc.noise_power + sc.transmit_power * std::norm(ch.g_r));
        const double t = (sc.noise_power + sc.transmit_power * std::norm(ch.f_t)) /
                         (sc.noise_power + sc.transmit_power * std::norm(ch.g_t));
        out.best_surrogate = out.feasible ? r + t : -1.0;
        return out;
    }

    if (protocol == Protocol::TS || protocol == Protocol::RIS) {
        const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
        const SideBest r = search_side(ch, sc, Side::R, ones, phase_points, out.evaluations);
        SideBest t;
        if (protocol == Protocol::TS) {
            t = search_side(ch, sc, Side::T, ones, phase_points, out.evaluations);
        } else {
            t = search_side(ch, sc, Side::T, Eigen::VectorXd::Zero(m), 1, out.evaluations);
        }
        if (!r.feasible || !t.feasible) return out;
        out.feasible = true;
        if (protocol == Protocol::RIS) {
            out.config = TarcConfig::reflect_only(m);
            out.config.phi_r = r.phi;
            out.best_surrogate = r.surrogate + t.surrogate;
            return finish();
        }
        out.config = TarcConfig::time_switching(m, 0.0);
        out.config.phi_r = r.phi;
        out.config.phi_t = t.phi;
        const int steps = static_cast<int>(std::llround(1.0 / lambda_step));
        for (int i = 0; i <= steps; ++i) {
            const double lam = std::min(1.0, i * lambda_step);
            const double rate = lam * r.rate + (1.0 - lam) * t.rate;
            if (rate > best_rate + 1e-12 * (1.0 + std::abs(best_rate))) {
                best_rate = rate;
                out.config.lambda_r = lam;
                out.config.lambda_t = 1.0 - lam;
            }
            out.best_surrogate = std::max(out.best_surrogate, lam * r.surrogate + (1.0 - lam) * t.surrogate);
        }
        return finish();
    }

    std::vector<double> levels;
    if (protocol == Protocol::MS) {
        levels = {0.0, 1.0};
    } else {
        if (beta_points < 2) throw std::invalid_argument("brute_force_oracle: beta_points must be >= 2 for ES");
        for (int i = 0; i < beta_points; ++i) levels.push_back(static_cast<double>(i) / (beta_points - 1));
    }
    for_each_beta(m, levels, [&](const Eigen::VectorXd& beta_r) {
        const Eigen::VectorXd beta_t = (1.0 - beta_r.array()).matrix();
        const SideBest r = search_side(ch, sc, Side::R, beta_r, phase_points, out.evaluations);
        if (!r.feasible) return;
        const SideBest t = search_side(ch, sc, Side::T, beta_t, phase_points, out.evaluations);
        if (!t.feasible) return;
        out.feasible = true;
        out.best_surrogate = std::max(out.best_surrogate, r.surrogate + t.surrogate);
        if (r.rate + t.rate > best_rate) {
            best_rate = r.rate + t.rate;
            out.config.protocol = protocol;
            out.config.beta_r = beta_r;
            out.config.beta_t = beta_t;
            out.config.phi_r = r.phi;
            out.config.phi_t = t.phi;
        }
    });
    return finish();
}

}  // namespace starsec
