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
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace starsec::sdp {

using Complex = std::complex<double>;

/// Upper-triangle entry (row <= col) of a Hermitian coefficient; the lower mirror is implied.
struct HermitianEntry {
    int row = 0;
    int col = 0;
    Complex value;
};

/// Hermitian coefficient matrix attached to one matrix-variable block.
struct BlockTerm {
    int block = 0;
    std::vector<HermitianEntry> entries;

    /// Single diagonal entry value * e_i e_i^T.
    static BlockTerm diagonal(int block, int i, double value = 1.0);
    /// Takes the upper triangle of a dense matrix; throws if it is not Hermitian within 1e-12.
    static BlockTerm dense(int block, const Eigen::MatrixXcd& coeff);
};

struct ScalarTerm {
    int index = 0;
    double value = 0.0;
};

/// sum_b tr(A_b X_b) + c^T beta compared against rhs.
struct LinearConstraint {
    std::vector<BlockTerm> terms;
    std::vector<ScalarTerm> scalars;
    double rhs = 0.0;
};

/// Linear objective to maximize, plus a constant offset.
struct Objective {
    std::vector<BlockTerm> terms;
    std::vector<ScalarTerm> scalars;
    double constant = 0.0;
};

/// maximize  sum_b tr(C_b X_b) + c^T beta + constant
/// s.t.      equalities  sum_b tr(A_b X_b) + a^T beta  = rhs
///           inequalities sum_b tr(A_b X_b) + a^T beta >= rhs
///           X_b Hermitian PSD, lower <= beta <= upper.
struct HermitianSdp {
    std::vector<int> block_dims;
    std::vector<double> scalar_lower;
    std::vector<double> scalar_upper;
    Objective objective;
    std::vector<LinearConstraint> equalities;
    std::vector<LinearConstraint> inequalities;

    int num_scalars() const { return static_cast<int>(scalar_lower.size()); }
    int add_scalar(double lower, double upper);

    /// Throws std::invalid_argument on malformed data (indices, Hermitian diagonals, bounds, non-finite values).
    void validate() const;
};

// ---- real symmetric standard form -------------------------------------------------------------

/// Upper-triangle entry of a real symmetric coefficient; the lower mirror is implied.
struct SymEntry {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

struct RealBlockTerm {
    int block = 0;
    std::vector<SymEntry> entries;
};

struct RealConstraint {
    std::vector<RealBlockTerm> terms;
    std::vector<std::pair<int, double>> lp;  ///< (index into the nonnegative orthant, coefficient)
    double rhs = 0.0;
};

/// minimize sum_k <C_k, X_k> + c^T x + offset  s.t.  A(X, x) = b,  X_k PSD,  x >= 0.
struct RealSdp {
    std::vector<int> block_dims;
    int lp_dim = 0;
    std::vector<Eigen::MatrixXd> cost;
    Eigen::VectorXd lp_cost;
    double offset = 0.0;
    std::vector<RealConstraint> constraints;
};

/// Bookkeeping that maps a standard-form solution back onto the Hermitian problem.
struct EmbeddedSdp {
    RealSdp problem;
    std::vector<int> hermitian_dims;
    std::vector<int> scalar_slot;       ///< lp index holding beta_i - lower_i
    std::vector<double> scalar_lower;
    std::vector<int> inequality_slot;   ///< lp index of each inequality surplus
};

/// [[Re X, -Im X], [Im X, Re X]].
Eigen::MatrixXd embed_hermitian(const Eigen::MatrixXcd& X);

/// Inverse of embed_hermitian. Averages the two copies, so any real symmetric PSD matrix maps to a
/// Hermitian PSD matrix with the same inner products against embedded coefficients.
Eigen::MatrixXcd recover_hermitian(const Eigen::MatrixXd& Y);

/// Converts to real standard form. Trace convention: a Hermitian coefficient A becomes embed(A)/2,
/// so <embed(A)/2, embed(X)> = tr(A X) and every objective/constraint value is preserved exactly.
/// Scalars become beta = lower + s with s >= 0 and s + t = upper - lower; inequalities get a surplus
/// variable. The maximization objective is negated into a minimization.
/// Throws std::invalid_argument on non-Hermitian input.
EmbeddedSdp embed_complex(const HermitianSdp& problem);

// ---- solver ----------------------------------------------------------------------------------

enum class SolveStatus { Optimal, Infeasible, MaxIters, NumericalFailure };

std::string_view to_string(SolveStatus s);

struct SolverSettings {
    double gap_tol = 1e-7;   ///< relative duality gap
    double feas_tol = 1e-8;  ///< relative primal / dual infeasibility
    double eig_tol = 1e-8;
    int max_iters = 200;
    int stall_limit = 20;    ///< consecutive non-improving iterations before declaring infeasibility
};

struct RealSolution {
    std::vector<Eigen::MatrixXd> X;
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    std::vector<Eigen::MatrixXd> Z;
    Eigen::VectorXd z;
    double primal_objective = 0.0;  ///< includes offset
    double dual_objective = 0.0;    ///< includes offset
    double duality_gap = 0.0;
    double primal_infeasibility = 0.0;
    double dual_infeasibility = 0.0;
    SolveStatus status = SolveStatus::NumericalFailure;
    int iterations = 0;
};

/// Primal-dual path-following interior point (HKM direction, Mehrotra predictor-corrector,
/// infeasible start). Deterministic.
RealSolution solve_real(const RealSdp& problem, const SolverSettings& settings = {});

struct SdpSolution {
    std::vector<Eigen::MatrixXcd> block_values;
    Eigen::VectorXd scalar_values;
    double objective_value = 0.0;  ///< primal objective of the maximization, including constant
    double dual_objective = 0.0;
    double duality_gap = 0.0;      ///< max(|primal - dual|, <X, Z>) / (1 + |primal| + |dual|)
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    SolveStatus status = SolveStatus::NumericalFailure;
    int iterations = 0;
};

SdpSolution solve(const HermitianSdp& problem, const SolverSettings& settings = {});

/// Evaluates sum_b tr(A_b X_b) + a^T beta for an arbitrary term list.
double evaluate(const std::vector<BlockTerm>& terms, const std::vector<ScalarTerm>& scalars,
                const std::vector<Eigen::MatrixXcd>& blocks, const Eigen::VectorXd& beta);

/// Plain-text dump (block sizes, bounds, constraint triplets) for offline cross-checking.
void write_problem(std::ostream& os, const HermitianSdp& problem);

}  // namespace starsec::sdp
