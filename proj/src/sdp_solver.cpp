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
#include <limits>

#include "starsec/sdp.hpp"

namespace starsec::sdp {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFarkasTol = 1e-8;
// Stagnating primal residuals below this level are slow convergence, not infeasibility.
constexpr double kStallFloor = 1e-4;

struct FullEntry {
    int r, c;
    double v;
};

// Coefficient of one constraint restricted to one block, in the layout the Schur complement wants.
struct Coef {
    int con = 0;
    bool dense = false;
    std::vector<FullEntry> entries;  // both triangles, used when !dense
    MatrixXd mat;                    // used when dense
};

double frob_inner(const MatrixXd& A, const MatrixXd& B) { return A.cwiseProduct(B).sum(); }

MatrixXd sym(const MatrixXd& A) { return 0.5 * (A + A.transpose()); }

// Largest alpha with X + alpha dX still positive definite, by Cholesky bisection.
double max_step_bisect(const MatrixXd& X, const MatrixXd& dX) {
    auto pd = [&](double a) { return Eigen::LLT<MatrixXd>(X + a * dX).info() == Eigen::Success; };
    double lo = 0.0, hi = 1.0;
    while (pd(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e8) return kInf;
    }
    for (int i = 0; i < 60 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (pd(mid) ? lo : hi) = mid;
    }
    return lo;
}

// Largest alpha with X + alpha dX still PSD (infinity when dX is PSD).
double max_step(const Eigen::LLT<MatrixXd>& llt, const MatrixXd& X, const MatrixXd& dX) {
    const auto L = llt.matrixL();
    MatrixXd T = L.solve(dX);
    T = L.solve(T.transpose().eval());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym(T), Eigen::EigenvaluesOnly);
    // The tridiagonal QR can stall on the doubled spectra of embedded Hermitian blocks.
    if (es.info() != Eigen::Success) return max_step_bisect(X, dX);
    const double lmin = es.eigenvalues()(0);
    return lmin >= 0.0 ? kInf : -1.0 / lmin;
}

double max_step_lp(const VectorXd& x, const VectorXd& dx) {
    double a = kInf;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (dx(i) < 0.0) a = std::min(a, -x(i) / dx(i));
    return a;
}

bool all_finite(const MatrixXd& M) { return M.allFinite(); }

class InteriorPoint {
public:
    InteriorPoint(const RealSdp& p, const SolverSettings& s) : p_(p), s_(s) {
        K_ = static_cast<int>(p.block_dims.size());
        m_ = static_cast<int>(p.constraints.size());
        lp_ = p.lp_dim;
        by_block_.resize(K_);
        lp_cols_.resize(lp_);
        b_ = VectorXd(m_);
        for (int i = 0; i < m_; ++i) {
            const auto& c = p.constraints[i];
            b_(i) = c.rhs;
            for (const auto& t : c.terms) {
                const int n = p.block_dims[t.block];
                Coef coef;
                coef.con = i;
                for (const auto& e : t.entries) {
                    coef.entries.push_back({e.row, e.col, e.value});
                    if (e.row != e.col) coef.entries.push_back({e.col, e.row, e.value});
                }
                if (static_cast<int>(coef.entries.size()) > 4 * n) {
                    coef.dense = true;
                    coef.mat = MatrixXd::Zero(n, n);
                    for (const auto& e : coef.entries) coef.mat(e.r, e.c) += e.v;
                    coef.entries.clear();
                }
                by_block_[t.block].push_back(std::move(coef));
            }
            for (const auto& [idx, v] : c.lp) lp_cols_[idx].emplace_back(i, v);
        }
        dims_total_ = lp_;
        for (int n : p.block_dims) dims_total_ += n;
    }

    RealSolution run();

private:
    VectorXd apply_A(const std::vector<MatrixXd>& Y, const VectorXd& y_lp) const {
        VectorXd out = VectorXd::Zero(m_);
        for (int k = 0; k < K_; ++k)
            for (const auto& c : by_block_[k]) {
                if (c.dense)
                    out(c.con) += frob_inner(c.mat, Y[k]);
                else
                    for (const auto& e : c.entries) out(c.con) += e.v * Y[k](e.r, e.c);
            }
        for (int l = 0; l < lp_; ++l)
            for (const auto& [i, v] : lp_cols_[l]) out(i) += v * y_lp(l);
        return out;
    }

    void apply_AT(const VectorXd& y, std::vector<MatrixXd>& out, VectorXd& out_lp) const {
        out.resize(K_);
        for (int k = 0; k < K_; ++k) {
            out[k] = MatrixXd::Zero(p_.block_dims[k], p_.block_dims[k]);
            for (const auto& c : by_block_[k]) {
                if (c.dense)
                    out[k] += y(c.con) * c.mat;
                else
                    for (const auto& e : c.entries) out[k](e.r, e.c) += y(c.con) * e.v;
            }
        }
        out_lp = VectorXd::Zero(lp_);
        for (int l = 0; l < lp_; ++l)
            for (const auto& [i, v] : lp_cols_[l]) out_lp(l) += v * y(i);
    }

    // M_ij = sum_k tr(A_i Z^-1 A_j X) + sum_l a_il a_jl x_l / z_l
    MatrixXd schur(const std::vector<MatrixXd>& X, const std::vector<MatrixXd>& Zi, const VectorXd& x,
                   const VectorXd& z) const {
        MatrixXd M = MatrixXd::Zero(m_, m_);
        for (int k = 0; k < K_; ++k) {
            const auto& coefs = by_block_[k];
            const MatrixXd& S = Zi[k];
            const MatrixXd& Xk = X[k];
            for (std::size_t a = 0; a < coefs.size(); ++a) {
                const Coef& ca = coefs[a];
                if (ca.dense) {
                    const MatrixXd Ka = Xk * ca.mat * S;  // tr(A_b Ka) = tr(A_a S A_b X)
                    for (std::size_t b = 0; b < coefs.size(); ++b) {
                        const Coef& cb = coefs[b];
                        double v = 0.0;
                        if (cb.dense) {
                            if (b < a) continue;
                            v = cb.mat.cwiseProduct(Ka.transpose()).sum();
                        } else {
                            for (const auto& e : cb.entries) v += e.v * Ka(e.c, e.r);
                        }
                        M(ca.con, cb.con) += v;
                        if (ca.con != cb.con || a != b) M(cb.con, ca.con) += v;
                    }
                } else {
                    for (std::size_t b = a; b < coefs.size(); ++b) {
                        const Coef& cb = coefs[b];
                        if (cb.dense) continue;
                        double v = 0.0;
                        for (const auto& ea : ca.entries)
                            for (const auto& eb : cb.entries) v += ea.v * eb.v * S(ea.c, eb.r) * Xk(eb.c, ea.r);
                        M(ca.con, cb.con) += v;
                        if (a != b) M(cb.con, ca.con) += v;
                    }
                }
            }
        }
        for (int l = 0; l < lp_; ++l) {
            const double w = x(l) / z(l);
            const auto& col = lp_cols_[l];
            for (const auto& [i, vi] : col)
                for (const auto& [j, vj] : col) M(i, j) += vi * vj * w;
        }
        return M;
    }

    const RealSdp& p_;
    const SolverSettings& s_;
    int K_ = 0, m_ = 0, lp_ = 0, dims_total_ = 0;
    std::vector<std::vector<Coef>> by_block_;
    std::vector<std::vector<std::pair<int, double>>> lp_cols_;
    VectorXd b_;
};

RealSolution InteriorPoint::run() {
    RealSolution sol;
    sol.status = SolveStatus::NumericalFailure;

    // Initial iterates: scaled identities sized from the data norms.
    double max_a = 0.0;
    double ratio_b = 0.0;
    for (int i = 0; i < m_; ++i) {
        double na2 = 0.0;
        const auto& c = p_.constraints[i];
        for (const auto& t : c.terms)
            for (const auto& e : t.entries) na2 += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
        for (const auto& [idx, v] : c.lp) na2 += v * v;
        const double na = std::sqrt(na2);
        max_a = std::max(max_a, na);
        ratio_b = std::max(ratio_b, (1.0 + std::abs(b_(i))) / (1.0 + na));
    }
    double norm_c = p_.lp_dim ? p_.lp_cost.norm() : 0.0;
    for (const auto& C : p_.cost) norm_c = std::hypot(norm_c, C.norm());
    int n_max = lp_ > 0 ? 1 : 0;
    for (int n : p_.block_dims) n_max = std::max(n_max, n);
    const double xi = std::max({10.0, std::sqrt(static_cast<double>(n_max)), n_max * ratio_b});
    const double eta = std::max({10.0, std::sqrt(static_cast<double>(n_max)), max_a, norm_c});

    std::vector<MatrixXd> X(K_), Z(K_);
    for (int k = 0; k < K_; ++k) {
        X[k] = xi * MatrixXd::Identity(p_.block_dims[k], p_.block_dims[k]);
        Z[k] = eta * MatrixXd::Identity(p_.block_dims[k], p_.block_dims[k]);
    }
    VectorXd x = VectorXd::Constant(lp_, xi);
    VectorXd z = VectorXd::Constant(lp_, eta);
    VectorXd y = VectorXd::Zero(m_);
    const VectorXd c_lp = lp_ ? p_.lp_cost : VectorXd::Zero(0);

    const double norm_b = b_.norm();
    double best_pinf = kInf;
    int stall = 0;

    auto finish = [&](SolveStatus st, int iter, double pobj, double dobj, double gap, double pinf, double dinf) {
        sol.X = X;
        sol.Z = Z;
        sol.x = x;
        sol.z = z;
        sol.y = y;
        sol.status = st;
        sol.iterations = iter;
        sol.primal_objective = pobj + p_.offset;
        sol.dual_objective = dobj + p_.offset;
        sol.duality_gap = gap;
        sol.primal_infeasibility = pinf;
        sol.dual_infeasibility = dinf;
        return sol;
    };

    std::vector<MatrixXd> ATy, Rd, Zi(K_), dX(K_), dZ(K_), dXa(K_), dZa(K_), G(K_);
    VectorXd ATy_lp, rd;
    double pobj = 0.0, dobj = 0.0, gap = kInf, pinf = kInf, dinf = kInf;

    for (int iter = 0;; ++iter) {
        // Residuals and convergence measures.
        const VectorXd AX = apply_A(X, x);
        const VectorXd Rp = b_ - AX;
        apply_AT(y, ATy, ATy_lp);
        Rd.resize(K_);
        double rd_norm2 = 0.0, xz = 0.0;
        pobj = lp_ ? c_lp.dot(x) : 0.0;
        for (int k = 0; k < K_; ++k) {
            Rd[k] = p_.cost[k] - ATy[k] - Z[k];
            rd_norm2 += Rd[k].squaredNorm();
            xz += frob_inner(X[k], Z[k]);
            pobj += frob_inner(p_.cost[k], X[k]);
        }
        rd = lp_ ? VectorXd(c_lp - ATy_lp - z) : VectorXd::Zero(0);
        rd_norm2 += rd.squaredNorm();
        xz += x.dot(z);
        dobj = b_.dot(y);
        const double mu = xz / dims_total_;
        const double scale = 1.0 + std::abs(pobj + p_.offset) + std::abs(dobj + p_.offset);
        gap = std::max(std::abs(pobj - dobj), std::abs(xz)) / scale;
        pinf = Rp.norm() / (1.0 + norm_b);
        dinf = std::sqrt(rd_norm2) / (1.0 + norm_c);

        if (!std::isfinite(pobj) || !std::isfinite(dobj) || !std::isfinite(gap))
            return finish(SolveStatus::NumericalFailure, iter, pobj, dobj, gap, pinf, dinf);
        if (gap <= s_.gap_tol && pinf <= s_.feas_tol && dinf <= s_.feas_tol)
            return finish(SolveStatus::Optimal, iter, pobj, dobj, gap, pinf, dinf);

        // Primal infeasibility: y approaches a Farkas ray with b^T y > 0 and A^T y <= 0.
        if (dobj > 0.0) {
            const double ray = (norm_c + std::sqrt(rd_norm2)) / dobj;
            if (ray < kFarkasTol && dinf < 1e3 * s_.feas_tol + ray)
                return finish(SolveStatus::Infeasible, iter, pobj, dobj, gap, pinf, dinf);
        }
        if (pinf < best_pinf * (1.0 - 1e-3)) {
            best_pinf = pinf;
            stall = 0;
        } else if (pinf > kStallFloor && ++stall >= s_.stall_limit) {
            return finish(SolveStatus::Infeasible, iter, pobj, dobj, gap, pinf, dinf);
        }
        if (iter >= s_.max_iters) return finish(SolveStatus::MaxIters, iter, pobj, dobj, gap, pinf, dinf);

        // Factorizations.
        std::vector<Eigen::LLT<MatrixXd>> llt_x(K_), llt_z(K_);
        for (int k = 0; k < K_; ++k) {
            llt_x[k].compute(X[k]);
            llt_z[k].compute(Z[k]);
            if (llt_x[k].info() != Eigen::Success || llt_z[k].info() != Eigen::Success)
                return finish(SolveStatus::NumericalFailure, iter, pobj, dobj, gap, pinf, dinf);
            Zi[k] = llt_z[k].solve(MatrixXd::Identity(p_.block_dims[k], p_.block_dims[k]));
            Zi[k] = sym(Zi[k]);
        }
        MatrixXd M = schur(X, Zi, x, z);
        Eigen::LLT<MatrixXd> llt_m(M);
        Eigen::LDLT<MatrixXd> ldlt_m;
        bool use_ldlt = false;
        if (llt_m.info() != Eigen::Success) {
            const double reg = 1e-14 * std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
            M.diagonal().array() += reg;
            ldlt_m.compute(M);
            use_ldlt = true;
            if (ldlt_m.info() != Eigen::Success)
                return finish(SolveStatus::NumericalFailure, iter, pobj, dobj, gap, pinf, dinf);
        }
        auto solve_m = [&](const VectorXd& r) -> VectorXd {
            if (use_ldlt) return ldlt_m.solve(r);
            return llt_m.solve(r);
        };

        // G = sym(Z^-1 Rd X) is shared by predictor and corrector.
        for (int k = 0; k < K_; ++k) G[k] = sym(Zi[k] * Rd[k] * X[k]);
        const VectorXd zinv = lp_ ? VectorXd(z.cwiseInverse()) : VectorXd::Zero(0);
        const VectorXd lp_g = lp_ ? VectorXd(x.cwiseProduct(rd).cwiseProduct(zinv)) : VectorXd::Zero(0);
        const VectorXd base_rhs = b_ + apply_A(G, lp_g);

        auto directions = [&](const VectorXd& dy, double sigma_mu, const std::vector<MatrixXd>* corr,
                              const VectorXd* corr_lp, std::vector<MatrixXd>& outX, std::vector<MatrixXd>& outZ,
                              VectorXd& outx, VectorXd& outz) {
            std::vector<MatrixXd> ATdy;
            VectorXd ATdy_lp;
            apply_AT(dy, ATdy, ATdy_lp);
            for (int k = 0; k < K_; ++k) {
                outZ[k] = Rd[k] - ATdy[k];
                MatrixXd d = -X[k] - Zi[k] * outZ[k] * X[k];
                if (sigma_mu != 0.0) d += sigma_mu * Zi[k];
                if (corr) d -= (*corr)[k];
                outX[k] = sym(d);
            }
            if (lp_) {
                outz = rd - ATdy_lp;
                outx = -x - x.cwiseProduct(outz).cwiseProduct(zinv);
                if (sigma_mu != 0.0) outx += sigma_mu * zinv;
                if (corr_lp) outx -= *corr_lp;
            } else {
                outz = outx = VectorXd::Zero(0);
            }
        };

        auto step_lengths = [&](const std::vector<MatrixXd>& dXv, const VectorXd& dxv, const std::vector<MatrixXd>& dZv,
                                const VectorXd& dzv, double& ap, double& ad) {
            ap = max_step_lp(x, dxv);
            ad = max_step_lp(z, dzv);
            for (int k = 0; k < K_; ++k) {
                ap = std::min(ap, max_step(llt_x[k], X[k], dXv[k]));
                ad = std::min(ad, max_step(llt_z[k], Z[k], dZv[k]));
            }
        };

        // Predictor.
        VectorXd dxa, dza;
        VectorXd dya = solve_m(base_rhs);
        directions(dya, 0.0, nullptr, nullptr, dXa, dZa, dxa, dza);
        double ap = 0.0, ad = 0.0;
        step_lengths(dXa, dxa, dZa, dza, ap, ad);
        ap = std::min(1.0, ap);
        ad = std::min(1.0, ad);
        double xz_aff = lp_ ? (x + ap * dxa).dot(z + ad * dza) : 0.0;
        for (int k = 0; k < K_; ++k) xz_aff += frob_inner(X[k] + ap * dXa[k], Z[k] + ad * dZa[k]);
        const double mu_aff = xz_aff / dims_total_;
        const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);
        const double step_frac = 0.9 + 0.09 * std::min(ap, ad);

        // Corrector: centering plus the second-order term Z^-1 dZa dXa.
        std::vector<MatrixXd> corr(K_);
        for (int k = 0; k < K_; ++k) corr[k] = Zi[k] * dZa[k] * dXa[k];
        const VectorXd corr_lp = lp_ ? VectorXd(dxa.cwiseProduct(dza).cwiseProduct(zinv)) : VectorXd::Zero(0);
        std::vector<MatrixXd> center(K_);
        for (int k = 0; k < K_; ++k) center[k] = sym(corr[k]) - sigma * mu * Zi[k];
        const VectorXd center_lp = lp_ ? VectorXd(corr_lp - sigma * mu * zinv) : VectorXd::Zero(0);
        const VectorXd rhs = base_rhs + apply_A(center, center_lp);
        const VectorXd dy = solve_m(rhs);
        VectorXd dx, dz;
        directions(dy, sigma * mu, &corr, &corr_lp, dX, dZ, dx, dz);
        step_lengths(dX, dx, dZ, dz, ap, ad);
        ap = std::min(1.0, step_frac * ap);
        ad = std::min(1.0, step_frac * ad);

        for (int k = 0; k < K_; ++k) {
            X[k] = sym(X[k] + ap * dX[k]);
            Z[k] = sym(Z[k] + ad * dZ[k]);
            if (!all_finite(X[k]) || !all_finite(Z[k]))
                return finish(SolveStatus::NumericalFailure, iter + 1, pobj, dobj, gap, pinf, dinf);
        }
        if (lp_) {
            x += ap * dx;
            z += ad * dz;
        }
        y += ad * dy;
    }
}

}  // namespace

RealSolution solve_real(const RealSdp& problem, const SolverSettings& settings) {
    return InteriorPoint(problem, settings).run();
}

}  // namespace starsec::sdp
