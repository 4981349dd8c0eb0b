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
#include <cmath>
#include <iomanip>
#include <limits>
#include <string>

#include "starsec/sdp.hpp"

namespace starsec::sdp {

namespace {

constexpr double kHermitianTol = 1e-12;

void fail(const std::string& what) { throw std::invalid_argument("HermitianSdp: " + what); }

void check_terms(const std::vector<BlockTerm>& terms, const std::vector<ScalarTerm>& scalars,
                 const HermitianSdp& p, const char* where) {
    for (const auto& t : terms) {
        if (t.block < 0 || t.block >= static_cast<int>(p.block_dims.size()))
            fail(std::string(where) + ": block index out of range");
        const int n = p.block_dims[t.block];
        for (const auto& e : t.entries) {
            if (e.row < 0 || e.col < 0 || e.row >= n || e.col >= n)
                fail(std::string(where) + ": entry outside block");
            if (e.row > e.col) fail(std::string(where) + ": entries must be upper-triangular (row <= col)");
            if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag()))
                fail(std::string(where) + ": non-finite coefficient");
            if (e.row == e.col && std::abs(e.value.imag()) > kHermitianTol)
                fail(std::string(where) + ": diagonal entry with imaginary part (not Hermitian)");
        }
    }
    for (const auto& s : scalars) {
        if (s.index < 0 || s.index >= p.num_scalars()) fail(std::string(where) + ": scalar index out of range");
        if (!std::isfinite(s.value)) fail(std::string(where) + ": non-finite scalar coefficient");
    }
}

// Appends embed(A)/2 restricted to the upper triangle.
void embed_entries(const BlockTerm& term, int n, std::vector<SymEntry>& out) {
    for (const auto& e : term.entries) {
        const double re = 0.5 * e.value.real();
        const double im = 0.5 * e.value.imag();
        const int p = e.row, q = e.col;
        if (re != 0.0) {
            out.push_back({p, q, re});
            out.push_back({n + p, n + q, re});
        }
        if (p != q && im != 0.0) {
            out.push_back({p, n + q, -im});
            out.push_back({q, n + p, im});
        }
    }
}

void add_to_dense(Eigen::MatrixXd& M, const std::vector<SymEntry>& entries, double scale) {
    for (const auto& e : entries) {
        M(e.row, e.col) += scale * e.value;
        if (e.row != e.col) M(e.col, e.row) += scale * e.value;
    }
}

}  // namespace

BlockTerm BlockTerm::diagonal(int block, int i, double value) { return {block, {{i, i, Complex(value, 0.0)}}}; }

BlockTerm BlockTerm::dense(int block, const Eigen::MatrixXcd& coeff) {
    if (coeff.rows() != coeff.cols()) throw std::invalid_argument("BlockTerm::dense: matrix must be square");
    if ((coeff - coeff.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * std::max(1.0, coeff.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("BlockTerm::dense: matrix is not Hermitian");
    BlockTerm t{block, {}};
    for (int c = 0; c < coeff.cols(); ++c)
        for (int r = 0; r <= c; ++r) {
            Complex v = coeff(r, c);
            if (r == c) v = Complex(v.real(), 0.0);
            if (v != Complex{}) t.entries.push_back({r, c, v});
        }
    return t;
}

int HermitianSdp::add_scalar(double lower, double upper) {
    scalar_lower.push_back(lower);
    scalar_upper.push_back(upper);
    return num_scalars() - 1;
}

void HermitianSdp::validate() const {
    for (int n : block_dims)
        if (n < 1) fail("block dimension must be positive");
    if (scalar_lower.size() != scalar_upper.size()) fail("scalar bound vectors differ in length");
    for (int i = 0; i < num_scalars(); ++i) {
        if (!std::isfinite(scalar_lower[i])) fail("scalar lower bounds must be finite");
        if (!(scalar_lower[i] <= scalar_upper[i])) fail("scalar lower bound exceeds upper bound");
    }
    check_terms(objective.terms, objective.scalars, *this, "objective");
    if (!std::isfinite(objective.constant)) fail("objective constant must be finite");
    for (const auto& c : equalities) {
        check_terms(c.terms, c.scalars, *this, "equality");
        if (!std::isfinite(c.rhs)) fail("equality rhs must be finite");
    }
    for (const auto& c : inequalities) {
        check_terms(c.terms, c.scalars, *this, "inequality");
        if (!std::isfinite(c.rhs)) fail("inequality rhs must be finite");
    }
}

Eigen::MatrixXd embed_hermitian(const Eigen::MatrixXcd& X) {
    const auto n = X.rows();
    Eigen::MatrixXd Y(2 * n, 2 * n);
    Y.topLeftCorner(n, n) = X.real();
    Y.bottomRightCorner(n, n) = X.real();
    Y.topRightCorner(n, n) = -X.imag();
    Y.bottomLeftCorner(n, n) = X.imag();
    return Y;
}

Eigen::MatrixXcd recover_hermitian(const Eigen::MatrixXd& Y) {
    const auto n = Y.rows() / 2;
    const Eigen::MatrixXd re = 0.5 * (Y.topLeftCorner(n, n) + Y.bottomRightCorner(n, n));
    const Eigen::MatrixXd im = 0.5 * (Y.bottomLeftCorner(n, n) - Y.topRightCorner(n, n));
    Eigen::MatrixXcd X(n, n);
    X.real() = 0.5 * (re + re.transpose());
    X.imag() = 0.5 * (im - im.transpose());
    return X;
}

EmbeddedSdp embed_complex(const HermitianSdp& hp) {
    hp.validate();
    EmbeddedSdp out;
    RealSdp& rp = out.problem;
    out.hermitian_dims = hp.block_dims;
    for (int n : hp.block_dims) {
        rp.block_dims.push_back(2 * n);
        rp.cost.push_back(Eigen::MatrixXd::Zero(2 * n, 2 * n));
    }

    // Nonnegative orthant: beta shifts, upper-bound complements, inequality surpluses.
    int lp = 0;
    std::vector<int> upper_slot(hp.num_scalars(), -1);
    for (int i = 0; i < hp.num_scalars(); ++i) {
        out.scalar_slot.push_back(lp++);
        if (std::isfinite(hp.scalar_upper[i])) upper_slot[i] = lp++;
    }
    out.scalar_lower = hp.scalar_lower;
    for (std::size_t i = 0; i < hp.inequalities.size(); ++i) out.inequality_slot.push_back(lp++);
    rp.lp_dim = lp;
    rp.lp_cost = Eigen::VectorXd::Zero(lp);

    // Objective (negated for minimization).
    rp.offset = -hp.objective.constant;
    for (const auto& t : hp.objective.terms) {
        std::vector<SymEntry> es;
        embed_entries(t, hp.block_dims[t.block], es);
        add_to_dense(rp.cost[t.block], es, -1.0);
    }
    for (const auto& s : hp.objective.scalars) {
        rp.lp_cost(out.scalar_slot[s.index]) -= s.value;
        rp.offset -= s.value * hp.scalar_lower[s.index];
    }

    auto convert = [&](const LinearConstraint& c) {
        RealConstraint rc;
        rc.rhs = c.rhs;
        for (const auto& t : c.terms) {
            RealBlockTerm rt{t.block, {}};
            embed_entries(t, hp.block_dims[t.block], rt.entries);
            if (!rt.entries.empty()) rc.terms.push_back(std::move(rt));
        }
        for (const auto& s : c.scalars) {
            rc.lp.emplace_back(out.scalar_slot[s.index], s.value);
            rc.rhs -= s.value * hp.scalar_lower[s.index];
        }
        return rc;
    };

    for (const auto& c : hp.equalities) rp.constraints.push_back(convert(c));
    for (std::size_t i = 0; i < hp.inequalities.size(); ++i) {
        RealConstraint rc = convert(hp.inequalities[i]);
        rc.lp.emplace_back(out.inequality_slot[i], -1.0);
        rp.constraints.push_back(std::move(rc));
    }
    for (int i = 0; i < hp.num_scalars(); ++i) {
        if (upper_slot[i] < 0) continue;
        RealConstraint rc;
        rc.lp = {{out.scalar_slot[i], 1.0}, {upper_slot[i], 1.0}};
        rc.rhs = hp.scalar_upper[i] - hp.scalar_lower[i];
        rp.constraints.push_back(std::move(rc));
    }
    return out;
}

double evaluate(const std::vector<BlockTerm>& terms, const std::vector<ScalarTerm>& scalars,
                const std::vector<Eigen::MatrixXcd>& blocks, const Eigen::VectorXd& beta) {
    double v = 0.0;
    for (const auto& t : terms) {
        const auto& X = blocks.at(t.block);
        for (const auto& e : t.entries) {
            // tr(A X) over the mirrored pair (p,q),(q,p) is 2 Re(a_pq X_qp).
            if (e.row == e.col)
                v += e.value.real() * X(e.row, e.row).real();
            else
                v += 2.0 * (e.value * X(e.col, e.row)).real();
        }
    }
    for (const auto& s : scalars) v += s.value * beta(s.index);
    return v;
}

SdpSolution solve(const HermitianSdp& problem, const SolverSettings& settings) {
    const EmbeddedSdp emb = embed_complex(problem);
    const RealSolution rs = solve_real(emb.problem, settings);

    SdpSolution out;
    out.status = rs.status;
    out.iterations = rs.iterations;
    for (const auto& X : rs.X) out.block_values.push_back(recover_hermitian(X));
    out.scalar_values = Eigen::VectorXd::Zero(problem.num_scalars());
    for (int i = 0; i < problem.num_scalars(); ++i)
        out.scalar_values(i) = emb.scalar_lower[i] + (rs.x.size() ? rs.x(emb.scalar_slot[i]) : 0.0);
    // Minimization values map back with a sign flip.
    out.objective_value = -rs.primal_objective;
    out.dual_objective = -rs.dual_objective;
    out.duality_gap = rs.duality_gap;
    out.primal_residual = rs.primal_infeasibility;
    out.dual_residual = rs.dual_infeasibility;
    return out;
}

void write_problem(std::ostream& os, const HermitianSdp& p) {
    const auto old_precision = os.precision();
    os << std::setprecision(17);
    os << "blocks " << p.block_dims.size();
    for (int n : p.block_dims) os << ' ' << n;
    os << "\nscalars " << p.num_scalars() << '\n';
    for (int i = 0; i < p.num_scalars(); ++i) os << "bound " << i << ' ' << p.scalar_lower[i] << ' ' << p.scalar_upper[i] << '\n';
    auto dump_terms = [&](const std::vector<BlockTerm>& terms, const std::vector<ScalarTerm>& scalars) {
        for (const auto& t : terms)
            for (const auto& e : t.entries)
                os << "  m " << t.block << ' ' << e.row << ' ' << e.col << ' ' << e.value.real() << ' '
                   << e.value.imag() << '\n';
        for (const auto& s : scalars) os << "  s " << s.index << ' ' << s.value << '\n';
    };
    os << "objective max " << p.objective.constant << '\n';
    dump_terms(p.objective.terms, p.objective.scalars);
    for (const auto& c : p.equalities) {
        os << "eq " << c.rhs << '\n';
        dump_terms(c.terms, c.scalars);
    }
    for (const auto& c : p.inequalities) {
        os << "ge " << c.rhs << '\n';
        dump_terms(c.terms, c.scalars);
    }
    os << "end\n";
    os.precision(old_precision);
}

std::string_view to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::Infeasible: return "Infeasible";
        case SolveStatus::MaxIters: return "MaxIters";
        case SolveStatus::NumericalFailure: return "NumericalFailure";
    }
    return "?";
}

}  // namespace starsec::sdp
