/*
 * Copyright 2026 The fgs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fgs/locc_sim.hpp"

#include <algorithm>
#include <cmath>

#include "fgs/glu_standard.hpp"

namespace fgs {

CMat LocalKraus::matrix() const {
    CMat m(2, 2);
    if (flip == 0) {
        m(0, 0) = d0;
        m(1, 1) = d1;
    } else {
        // X D: row swap of the diagonal.
        m(0, 1) = d1;
        m(1, 0) = d0;
    }
    return m;
}

void require_complete(const Instrument &ins, double tol) {
    if (ins.branches.empty())
        throw invalid_input("IncompleteInstrument: no branches");
    // K^+ K = D^+ D regardless of the flip bit.
    double s0 = 0, s1 = 0;
    for (const auto &k : ins.branches) {
        if (k.site != ins.site)
            throw invalid_input("IncompleteInstrument: branch on wrong site");
        s0 += std::norm(k.d0);
        s1 += std::norm(k.d1);
    }
    if (std::abs(s0 - 1.0) > tol || std::abs(s1 - 1.0) > tol)
        throw invalid_input("IncompleteInstrument: sum K^+K != 1");
}

std::vector<BranchOutcome> apply_instrument(const FockVector &psi,
                                            const Instrument &ins) {
    require_complete(ins);
    if (ins.site < 1 || ins.site > psi.modes())
        throw invalid_input("IndexOutOfRange: instrument site");
    std::vector<BranchOutcome> out;
    for (std::size_t b = 0; b < ins.branches.size(); ++b) {
        FockVector raw = apply_site_op(psi, ins.site, ins.branches[b].matrix());
        double p = frobenius_sq(raw.amps().data(), raw.dim());
        if (p < kBranchDropTol) continue;
        for (auto &a : raw.amps()) a /= std::sqrt(p);
        BranchOutcome o{p, std::move(raw), std::string(1, char('0' + b)), {}};
        out.push_back(std::move(o));
    }
    return out;
}

FockDensity apply_instrument_density(const FockDensity &rho,
                                     const std::vector<LocalKraus> &kraus) {
    std::size_t d = rho.dim();
    CMat acc(d, d);
    for (const auto &k : kraus) {
        FockDensity term = apply_site_ops_density(rho, {{k.site, k.matrix()}});
        acc += term.matrix();
    }
    return FockDensity(rho.modes(), std::move(acc), false);
}

std::vector<BranchOutcome> run_protocol(const FockVector &psi, const Protocol &p) {
    if (p.modes != psi.modes())
        throw invalid_input("DimensionMismatch: protocol mode count");
    std::vector<BranchOutcome> frontier;
    frontier.push_back(
        {1.0, psi, "", std::vector<CMat>(psi.modes(), CMat::identity(2))});
    for (const auto &round : p.rounds) {
        require_complete(round.instrument);
        std::vector<std::vector<BranchOutcome>> expanded(frontier.size());
#pragma omp parallel for schedule(dynamic) if (frontier.size() >= 4)
        for (long fi = 0; fi < (long)frontier.size(); ++fi) {
            const BranchOutcome &node = frontier[fi];
            auto branches = apply_instrument(node.state, round.instrument);
            for (auto &br : branches) {
                br.probability *= node.probability;
                br.transcript = node.transcript + br.transcript;
                br.site_ops = node.site_ops;
                std::size_t s = round.instrument.site - 1;
                br.site_ops[s] =
                    round.instrument.branches[br.transcript.back() - '0'].matrix() *
                    br.site_ops[s];
                auto it = round.corrections.find(br.transcript);
                if (it != round.corrections.end()) {
                    for (const auto &corr : it->second) {
                        br.state = apply_site_op(br.state, corr.site, corr.matrix(),
                                                 /*renormalize=*/true);
                        br.site_ops[corr.site - 1] =
                            corr.matrix() * br.site_ops[corr.site - 1];
                    }
                }
                expanded[fi].push_back(std::move(br));
            }
        }
        frontier.clear();
        for (auto &v : expanded)
            for (auto &b : v) frontier.push_back(std::move(b));
    }
    return frontier;
}

namespace {
/// {D, D X} rescaled so the pair is complete. In X^k D form the second
/// operator is D X = X (X D X), i.e. the flipped branch carries the
/// swapped diagonal, and D^+D + (XDX)^+(XDX) = tr(D^+D) 1.
Instrument flip_pair_instrument(std::size_t site, double e0, double e1) {
    if (std::abs(e0) < 1e-12 || std::abs(e1) < 1e-12)
        throw invalid_input("SingularDiagonal: diagonal must be invertible");
    double s = std::sqrt(e0 * e0 + e1 * e1);
    Instrument ins;
    ins.site = site;
    ins.branches.push_back({site, 0, e0 / s, e1 / s});
    ins.branches.push_back({site, 1, e1 / s, e0 / s});
    return ins;
}
}  // namespace

Protocol ghz3_protocol(double d1_0, double d1_1, double d2_0, double d2_1) {
    Protocol p;
    p.modes = 3;
    Round r1;
    r1.instrument = flip_pair_instrument(1, d1_0, d1_1);
    p.rounds.push_back(std::move(r1));
    Round r2;
    r2.instrument = flip_pair_instrument(2, d2_0, d2_1);
    // Party 3 corrects with X^{k1 + k2}.
    r2.corrections["01"] = {{3, 1, 1.0, 1.0}};
    r2.corrections["10"] = {{3, 1, 1.0, 1.0}};
    p.rounds.push_back(std::move(r2));
    return p;
}

Protocol seed4_protocol(double d1_0, double d1_1) {
    Protocol p;
    p.modes = 4;
    Round r;
    r.instrument = flip_pair_instrument(1, d1_0, d1_1);
    r.corrections["1"] = {{2, 1, 1.0, 1.0}, {3, 1, 1.0, 1.0}, {4, 1, 1.0, 1.0}};
    p.rounds.push_back(std::move(r));
    return p;
}

Protocol seed4_symmetric_protocol(double d2_0, double d2_1, double d3_0,
                                  double d3_1) {
    const cplx iu{0.0, 1.0};
    Protocol p;
    p.modes = 4;
    // X_2 |psi> = Z_1 Y_4 |psi>, so outcome 1 of party 2 is undone by
    // Z on site 1 and Y on site 4 (Y = X diag(i, -i)).
    Round r2;
    r2.instrument = flip_pair_instrument(2, d2_0, d2_1);
    r2.corrections["1"] = {{1, 0, 1.0, -1.0}, {4, 1, iu, -iu}};
    p.rounds.push_back(std::move(r2));
    // X_3 |psi> = Y_1 Z_4 |psi>.
    Round r3;
    r3.instrument = flip_pair_instrument(3, d3_0, d3_1);
    r3.corrections["01"] = {{1, 1, iu, -iu}, {4, 0, 1.0, -1.0}};
    r3.corrections["11"] = {{1, 1, iu, -iu}, {4, 0, 1.0, -1.0}};
    p.rounds.push_back(std::move(r3));
    return p;
}

bool verify_deterministic(const FockVector &psi_in, const FockVector &psi_target,
                          const Protocol &p, double tol, EqualityMode mode) {
    auto branches = run_protocol(psi_in, p);
    StandardFormResult target_form = [&] {
        if (mode == EqualityMode::Overlap)
            return StandardFormResult{CovarianceMatrix(1, RMat(2, 2)), {}, {}};
        return standard_form(cm_from_state(psi_target));
    }();
    for (const auto &br : branches) {
        if (mode != EqualityMode::StandardForm) {
            cplx ov = 0;
            for (std::size_t b = 0; b < br.state.dim(); ++b)
                ov += std::conj(br.state[b]) * psi_target[b];
            if (std::abs(ov) < 1.0 - tol) return false;
        }
        if (mode != EqualityMode::Overlap) {
            StandardFormResult sf = standard_form(cm_from_state(br.state));
            RMat diff = sf.s_gamma.gamma() - target_form.s_gamma.gamma();
            if (frobenius_norm(diff) > std::max(tol, 1e-9)) return false;
        }
    }
    return true;
}

double sep_ratio(const CMat &g, const CMat &h, const FockVector &seed) {
    auto expect = [&](const CMat &m) {
        cplx s = 0;
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                s += std::conj(seed[r]) * m(r, c) * seed[c];
        return std::real(s);
    };
    double denom = expect(g);
    if (std::abs(denom) < 1e-14)
        throw invalid_input("NotPositive: <seed|G|seed> vanishes");
    return expect(h) / denom;
}

SepFeasibility sep_feasibility(const CMat &g, const CMat &h,
                               const std::vector<CMat> &symmetries, double r,
                               double tol) {
    if (symmetries.empty())
        throw invalid_input("EmptySymmetryList: at least one symmetry required");
    auto check_pd = [](const CMat &m, const char *name) {
        auto ev = eigen_herm_values(m);
        if (ev.empty() || ev.front() < 1e-12)
            throw invalid_input(std::string("NotPositive: ") + name +
                                " must be positive definite");
    };
    check_pd(g, "G");
    check_pd(h, "H");

    std::size_t m = symmetries.size();
    std::vector<CMat> terms;
    terms.reserve(m);
    for (const auto &s : symmetries) terms.push_back(adjoint(s) * h * s);
    CMat target = g;
    target *= cplx(r, 0.0);

    // Quadratic program min p^T Q p - 2 c^T p (+ const) on the simplex;
    // the residual is recomputed directly at the end for accuracy.
    auto fdot = [](const CMat &a, const CMat &b) {
        cplx s = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += std::conj(a.data()[i]) * b.data()[i];
        return std::real(s);
    };
    RMat q(m, m);
    std::vector<double> c(m);
    for (std::size_t i = 0; i < m; ++i) {
        c[i] = fdot(terms[i], target);
        for (std::size_t j = 0; j < m; ++j) q(i, j) = fdot(terms[i], terms[j]);
    }

    std::vector<double> p(m, 1.0 / (double)m);
    std::vector<bool> active(m, true);

    // Minimize over the affine slice {sum p = 1 on the support}: write
    // p = uniform + V z with V spanning the zero-sum subspace and solve
    // the reduced normal equations by eigen pseudo-inverse, so repeated
    // or linearly dependent symmetries stay well posed.
    auto solve_support = [&](const std::vector<bool> &sup) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < m; ++i)
            if (sup[i]) idx.push_back(i);
        std::size_t k = idx.size();
        std::vector<double> full(m, 0.0);
        if (k == 1) {
            full[idx[0]] = 1.0;
            double nu = 2 * q(idx[0], idx[0]) - 2 * c[idx[0]];
            return std::make_pair(full, nu);
        }
        RMat qs(k, k);
        std::vector<double> cs_(k);
        for (std::size_t a = 0; a < k; ++a) {
            cs_[a] = c[idx[a]];
            for (std::size_t b = 0; b < k; ++b) qs(a, b) = q(idx[a], idx[b]);
        }
        // Columns of V: e_a - e_{k-1}, a < k-1.
        RMat vqv(k - 1, k - 1), rhs(k - 1, 1);
        auto qv = [&](std::size_t a, std::size_t col) {
            return qs(a, col) - qs(a, k - 1);
        };
        std::vector<double> u(k, 1.0 / (double)k);
        for (std::size_t a = 0; a + 1 < k; ++a) {
            double qu_a = 0, qu_last = 0;
            for (std::size_t b = 0; b < k; ++b) {
                qu_a += qs(a, b) * u[b];
                qu_last += qs(k - 1, b) * u[b];
            }
            rhs(a, 0) = (cs_[a] - qu_a) - (cs_[k - 1] - qu_last);
            for (std::size_t b = 0; b + 1 < k; ++b)
                vqv(a, b) = qv(a, b) - qv(k - 1, b);
        }
        SymEigen eig = jacobi_eigen_sym(vqv);
        double lmax = 0;
        for (double l : eig.values) lmax = std::max(lmax, std::abs(l));
        std::vector<double> z(k - 1, 0.0);
        for (std::size_t mkk = 0; mkk < k - 1; ++mkk) {
            if (std::abs(eig.values[mkk]) <= 1e-12 * (lmax + 1e-300)) continue;
            double proj = 0;
            for (std::size_t a = 0; a + 1 < k; ++a)
                proj += eig.vectors(a, mkk) * rhs(a, 0);
            proj /= eig.values[mkk];
            for (std::size_t a = 0; a + 1 < k; ++a)
                z[a] += proj * eig.vectors(a, mkk);
        }
        std::vector<double> ps(k, u[0]);
        double zsum = 0;
        for (std::size_t a = 0; a + 1 < k; ++a) {
            ps[a] += z[a];
            zsum += z[a];
        }
        ps[k - 1] -= zsum;
        for (std::size_t a = 0; a < k; ++a) full[idx[a]] = ps[a];
        // Equality multiplier from the stationarity condition.
        double nu = 0;
        for (std::size_t b = 0; b < k; ++b) nu += 2 * qs(0, b) * ps[b];
        nu -= 2 * cs_[0];
        return std::make_pair(full, nu);
    };

    double nu = 0;
    for (int iter = 0; iter < 200; ++iter) {
        auto [cand, mult] = solve_support(active);
        double alpha = 1.0;
        std::size_t blocker = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (!active[i]) continue;
            if (cand[i] < -1e-14) {
                double step = p[i] / (p[i] - cand[i]);
                if (step < alpha) {
                    alpha = step;
                    blocker = i;
                }
            }
        }
        if (blocker == m) {
            p = cand;
            nu = mult;
            // Check the inactive multipliers: g_i - nu >= 0.
            std::size_t worst = m;
            double worstval = -1e-10;
            for (std::size_t i = 0; i < m; ++i) {
                if (active[i]) continue;
                double grad = 0;
                for (std::size_t j = 0; j < m; ++j) grad += 2 * q(i, j) * p[j];
                grad -= 2 * c[i];
                if (grad - nu < worstval) {
                    worstval = grad - nu;
                    worst = i;
                }
            }
            if (worst == m) break;
            active[worst] = true;
        } else {
            for (std::size_t i = 0; i < m; ++i)
                if (active[i]) p[i] = p[i] + alpha * (cand[i] - p[i]);
            p[blocker] = 0.0;
            active[blocker] = false;
        }
    }

    // Clean and renormalize exactly onto the simplex.
    double sum = 0;
    for (auto &v : p) {
        if (v < 0) v = 0;
        sum += v;
    }
    if (sum <= 0) {
        p.assign(m, 0.0);
        p[0] = 1.0;
        sum = 1.0;
    }
    for (auto &v : p) v /= sum;

    CMat acc(target.rows(), target.cols());
    for (std::size_t i = 0; i < m; ++i) {
        if (p[i] == 0.0) continue;
        CMat t = terms[i];
        t *= cplx(p[i], 0.0);
        acc += t;
    }
    acc -= target;
    double residual = std::sqrt(frobenius_sq(acc.data(), acc.size()));

    SepFeasibility out;
    out.weights = std::move(p);
    out.residual = residual;
    out.feasible = residual < tol;
    return out;
}

}  // namespace fgs
