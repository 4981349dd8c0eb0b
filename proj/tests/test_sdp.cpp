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
#include <random>
#include <sstream>

#include <doctest.h>

#include "planted.hpp"
#include "starsec/sdp.hpp"

using namespace starsec::sdp;
using starsec::testing::make_planted;
using starsec::testing::random_gaussian;
using starsec::testing::random_hermitian;
using doctest::Approx;

namespace {

HermitianSdp unit_diagonal_problem(const Eigen::MatrixXcd& C) {
    HermitianSdp p;
    const int n = static_cast<int>(C.rows());
    p.block_dims = {n};
    p.objective.terms = {BlockTerm::dense(0, C)};
    for (int i = 0; i < n; ++i) p.equalities.push_back({{BlockTerm::diagonal(0, i)}, {}, 1.0});
    return p;
}

double min_eig(const Eigen::MatrixXcd& X) {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(X, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

void check_optimal_invariants(const HermitianSdp& p, const SdpSolution& s, const SolverSettings& st = {}) {
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.duality_gap <= st.gap_tol);
    CHECK(s.primal_residual <= st.feas_tol);
    CHECK(s.dual_residual <= st.feas_tol);
    CHECK(s.objective_value <= s.dual_objective + st.gap_tol * (1.0 + std::abs(s.dual_objective)));
    for (const auto& X : s.block_values) {
        CHECK((X - X.adjoint()).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(min_eig(X) >= -st.eig_tol);
    }
    for (const auto& c : p.equalities) {
        const double v = evaluate(c.terms, c.scalars, s.block_values, s.scalar_values);
        CHECK(std::abs(v - c.rhs) <= 1e-7 * (1.0 + std::abs(c.rhs)));
    }
    for (const auto& c : p.inequalities) {
        const double v = evaluate(c.terms, c.scalars, s.block_values, s.scalar_values);
        CHECK(v >= c.rhs - 1e-7 * (1.0 + std::abs(c.rhs)));
    }
    for (int i = 0; i < p.num_scalars(); ++i) {
        CHECK(s.scalar_values(i) >= p.scalar_lower[i] - 1e-7);
        CHECK(s.scalar_values(i) <= p.scalar_upper[i] + 1e-7);
    }
}

}  // namespace

TEST_CASE("2x2 max-cut fixture") {
    Eigen::MatrixXcd C(2, 2);
    C << 0.0, 1.0, 1.0, 0.0;
    const HermitianSdp p = unit_diagonal_problem(C);
    const SdpSolution s = solve(p);
    check_optimal_invariants(p, s);
    CHECK(s.objective_value == Approx(2.0).epsilon(1e-6));
    CHECK((s.block_values[0] - Eigen::MatrixXcd::Ones(2, 2)).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("trace with unit diagonal equals the dimension") {
    for (int n : {1, 3, 7, 12}) {
        const HermitianSdp p = unit_diagonal_problem(Eigen::MatrixXcd::Identity(n, n));
        const SdpSolution s = solve(p);
        check_optimal_invariants(p, s);
        CHECK(s.objective_value == Approx(n).epsilon(1e-6));
    }
}

TEST_CASE("embedding") {
    Eigen::MatrixXcd one(1, 1);
    one(0, 0) = 2.5;
    const Eigen::MatrixXd e1 = embed_hermitian(one);
    CHECK((e1 - 2.5 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

    const Eigen::MatrixXd eI = embed_hermitian(Eigen::MatrixXcd::Identity(4, 4));
    CHECK((eI - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);
    // Trace convention: <embed(A)/2, embed(X)> = tr(A X).
    CHECK(0.5 * eI.trace() == Approx(4.0));

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::MatrixXcd G = random_gaussian(3, 3, rng);
        const Eigen::MatrixXcd X = G * G.adjoint();
        const Eigen::MatrixXd Y = embed_hermitian(X);
        CHECK((Y - Y.transpose()).cwiseAbs().maxCoeff() == 0.0);
        const Eigen::VectorXd ex = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(X).eigenvalues();
        const Eigen::VectorXd ey = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Y).eigenvalues();
        for (int i = 0; i < 3; ++i) {
            CHECK(ey(2 * i) == Approx(ex(i)).epsilon(1e-10));
            CHECK(ey(2 * i + 1) == Approx(ex(i)).epsilon(1e-10));
        }
        CHECK(ey(0) >= -1e-12);
        CHECK((recover_hermitian(Y) - X).cwiseAbs().maxCoeff() < 1e-14);

        const Eigen::MatrixXcd A = random_hermitian(3, rng);
        const double direct = (A * X).trace().real();
        const double embedded = 0.5 * (embed_hermitian(A).cwiseProduct(Y)).sum();
        CHECK(embedded == Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("embed_complex preserves values and rejects non-Hermitian data") {
    HermitianSdp p;
    p.block_dims = {2};
    p.objective.terms = {{0, {{0, 1, {0.0, 1.0}}}}};
    p.equalities.push_back({{BlockTerm::diagonal(0, 0), BlockTerm::diagonal(0, 1)}, {}, 1.0});
    const EmbeddedSdp e = embed_complex(p);
    CHECK(e.problem.block_dims == std::vector<int>{4});
    CHECK(e.hermitian_dims == std::vector<int>{2});

    HermitianSdp bad = p;
    bad.objective.terms = {{0, {{1, 1, {1.0, 0.5}}}}};
    CHECK_THROWS_AS(embed_complex(bad), std::invalid_argument);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    Eigen::MatrixXcd nh(2, 2);
    nh << 1.0, 2.0, 3.0, 1.0;
    CHECK_THROWS_AS(BlockTerm::dense(0, nh), std::invalid_argument);

    HermitianSdp bounds;
    bounds.block_dims = {1};
    bounds.add_scalar(1.0, 0.0);
    CHECK_THROWS_AS(bounds.validate(), std::invalid_argument);
}

TEST_CASE("planted KKT instances") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 11);
        const int m = 1 + static_cast<int>(rng() % (n + 2));
        const auto inst = make_planted(n, m, rng);
        const SdpSolution s = solve(inst.problem);
        CAPTURE(n);
        CAPTURE(m);
        check_optimal_invariants(inst.problem, s);
        CHECK(std::abs(s.objective_value - inst.optimum) <= 1e-6 * (1.0 + std::abs(inst.optimum)));
    }
}

TEST_CASE("scalars and inequalities") {
    // maximize beta - tr(X) s.t. X(0,0) >= 2, beta in [0, 0.7], X(0,0) + beta <= 3 as -X(0,0) - beta >= -3.
    HermitianSdp p;
    p.block_dims = {2};
    const int b = p.add_scalar(0.0, 0.7);
    p.objective.terms = {BlockTerm::diagonal(0, 0, -1.0), BlockTerm::diagonal(0, 1, -1.0)};
    p.objective.scalars = {{b, 1.0}};
    p.objective.constant = 0.25;
    p.inequalities.push_back({{BlockTerm::diagonal(0, 0)}, {}, 2.0});
    p.inequalities.push_back({{BlockTerm::diagonal(0, 0, -1.0)}, {{b, -1.0}}, -3.0});
    const SdpSolution s = solve(p);
    check_optimal_invariants(p, s);
    CHECK(s.objective_value == Approx(0.7 - 2.0 + 0.25).epsilon(1e-6));
    CHECK(s.scalar_values(b) == Approx(0.7).epsilon(1e-6));
}

TEST_CASE("infeasible problems are detected") {
    HermitianSdp p;
    p.block_dims = {1};
    p.objective.terms = {BlockTerm::diagonal(0, 0)};
    p.equalities.push_back({{BlockTerm::diagonal(0, 0)}, {}, -1.0});
    CHECK(solve(p).status == SolveStatus::Infeasible);

    HermitianSdp q;
    q.block_dims = {2};
    q.objective.terms = {BlockTerm::diagonal(0, 0)};
    q.equalities.push_back({{BlockTerm::diagonal(0, 0), BlockTerm::diagonal(0, 1)}, {}, 1.0});
    q.inequalities.push_back({{BlockTerm::diagonal(0, 1)}, {}, 5.0});
    CHECK(solve(q).status == SolveStatus::Infeasible);
}

TEST_CASE("solves are deterministic") {
    std::mt19937_64 rng(9);
    const auto inst = make_planted(8, 6, rng);
    const SdpSolution a = solve(inst.problem);
    const SdpSolution b = solve(inst.problem);
    CHECK(a.iterations == b.iterations);
    CHECK(a.objective_value == b.objective_value);
    CHECK((a.block_values[0] - b.block_values[0]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("write_problem dump") {
    HermitianSdp p;
    p.block_dims = {3, 2};
    p.add_scalar(0.0, 1.0);
    p.objective.terms = {BlockTerm::diagonal(1, 1, 2.0)};
    p.equalities.push_back({{BlockTerm::diagonal(0, 0)}, {{0, 1.0}}, 1.0});
    std::ostringstream os;
    write_problem(os, p);
    const std::string text = os.str();
    CHECK(text.rfind("blocks 2 3 2\n", 0) == 0);
    CHECK(text.find("bound 0 0 1") != std::string::npos);
    CHECK(text.find("eq 1") != std::string::npos);
    CHECK(text.find("  s 0 1") != std::string::npos);
    CHECK(text.substr(text.size() - 4) == "end\n");
}
