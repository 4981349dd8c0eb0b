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

constexpr double kNegativeEigTol = 1e-6;

// Standard circularly-symmetric complex normal from two Box-Muller uniforms.
Complex complex_normal(Rng& rng) {
    const double u1 = 1.0 - uniform01(rng);  // (0, 1]
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-std::log(u1));  // E|z|^2 = 1
    return std::polar(r, 2.0 * std::numbers::pi * u2);
}

}  // namespace

ExtractionResult extract_rank_one(const Eigen::MatrixXcd& Q, const Eigen::VectorXd& beta_target,
                                  const LiftedData& lifted, Side side, double energy, double noise_power,
                                  const OptimizerSettings& settings, Rng& rng) {
    const auto n = Q.rows();
    const auto m = n - 1;
    if (Q.cols() != n || n != lifted.dim()) throw std::invalid_argument("extract_rank_one: dimension mismatch");
    if (beta_target.size() != 0 && beta_target.size() != m)
        throw std::invalid_argument("extract_rank_one: beta_target length must be M");

    const Eigen::MatrixXcd Qh = 0.5 * (Q + Q.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Qh);
    if (es.info() != Eigen::Success) throw std::runtime_error("extract_rank_one: eigendecomposition failed");
    const Eigen::VectorXd& evals = es.eigenvalues();
    const double lmax = evals(n - 1);
    if (evals(0) < -kNegativeEigTol * std::max(1.0, lmax))
        throw std::invalid_argument("extract_rank_one: matrix is not positive semidefinite");

    Eigen::VectorXd amplitude(m);
    for (Eigen::Index i = 0; i < m; ++i)
        amplitude(i) = beta_target.size() ? std::sqrt(std::clamp(beta_target(i), 0.0, 1.0)) : 1.0;

    // Keep the phases relative to the trailing entry, force the protocol amplitudes, pin q_{M+1} = 1.
    auto project = [&](const Eigen::VectorXcd& xi) {
        const Complex last = xi(m);
        const double ref = std::abs(last) > 0.0 ? std::arg(last) : 0.0;
        Eigen::VectorXcd q(n);
        for (Eigen::Index i = 0; i < m; ++i) {
            const double ph = std::abs(xi(i)) > 0.0 ? std::arg(xi(i)) - ref : 0.0;
            q(i) = std::polar(amplitude(i), ph);
        }
        q(m) = 1.0;
        return q;
    };
    const auto k = index(side);
    auto harvested = [&](const Eigen::VectorXcd& q) {
        return lifted.transmit_power * std::norm(lifted.G[k].dot(q));
    };

    ExtractionResult out;
    out.rank_one = n == 1 || lmax <= 0.0 || evals(n - 2) <= settings.rank_one_tol * lmax;

    const Eigen::VectorXcd principal = project(es.eigenvectors().col(n - 1) * std::sqrt(std::max(lmax, 0.0)));
    out.q = principal;
    out.surrogate = surrogate_ratio(lifted, side, principal, noise_power);
    out.feasible = harvested(principal) >= energy;
    if (out.rank_one && out.feasible) return out;

    // Gaussian randomization with covariance Q (negative eigenvalues clipped).
    const Eigen::MatrixXcd factor = es.eigenvectors() * evals.cwiseMax(0.0).cwiseSqrt().asDiagonal();
    bool found = out.feasible;
    Eigen::VectorXcd z(n);
    for (int s = 0; s < settings.randomization_samples; ++s) {
        for (Eigen::Index i = 0; i < n; ++i) z(i) = complex_normal(rng);
        const Eigen::VectorXcd q = project(factor * z);
        if (harvested(q) < energy) continue;
        const double value = surrogate_ratio(lifted, side, q, noise_power);
        if (!found || value > out.surrogate) {
            out.q = q;
            out.surrogate = value;
            found = true;
        }
    }
    out.feasible = found;
    if (!found) {
        out.q = principal;
        out.surrogate = surrogate_ratio(lifted, side, principal, noise_power);
    }
    return out;
}

}  // namespace starsec
