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

#include "fgs/channels.hpp"

#include <cmath>

namespace fgs {

void validate_channel(const GaussianChannel &ch, double tol) {
    std::size_t m2 = 2 * ch.out_modes, n2 = 2 * ch.in_modes;
    if (ch.a.rows() != m2 || ch.a.cols() != m2 || ch.d.rows() != n2 ||
        ch.d.cols() != n2 || ch.b.rows() != m2 || ch.b.cols() != n2)
        throw invalid_input("DimensionMismatch: channel blocks");
    CovarianceMatrix e = cj_cm(ch);
    if (!e.is_physical(tol))
        throw invalid_input("NotPhysical: CJ covariance matrix");
}

CovarianceMatrix cj_cm(const GaussianChannel &ch) {
    std::size_t m2 = 2 * ch.out_modes, n2 = 2 * ch.in_modes;
    if (ch.a.rows() != m2 || ch.a.cols() != m2 || ch.d.rows() != n2 ||
        ch.d.cols() != n2 || ch.b.rows() != m2 || ch.b.cols() != n2)
        throw invalid_input("DimensionMismatch: channel blocks");
    RMat e(m2 + n2, m2 + n2);
    e.set_block(0, 0, ch.a);
    e.set_block(0, m2, ch.b);
    RMat mbt = ch.b.transpose();
    mbt *= -1.0;
    e.set_block(m2, 0, mbt);
    e.set_block(m2, m2, ch.d);
    return CovarianceMatrix(ch.out_modes + ch.in_modes, std::move(e));
}

GaussianChannel channel_from_cj(const CovarianceMatrix &cm, std::size_t out_modes) {
    if (out_modes > cm.modes())
        throw invalid_input("DimensionMismatch: out modes exceed CJ modes");
    std::size_t m2 = 2 * out_modes;
    std::size_t n2 = 2 * (cm.modes() - out_modes);
    GaussianChannel ch;
    ch.out_modes = out_modes;
    ch.in_modes = cm.modes() - out_modes;
    ch.a = cm.gamma().block(0, 0, m2, m2);
    ch.b = cm.gamma().block(0, m2, m2, n2);
    ch.d = cm.gamma().block(m2, m2, n2, n2);
    return ch;
}

CovarianceMatrix apply_channel_cm(const GaussianChannel &ch,
                                  const CovarianceMatrix &gamma) {
    if (gamma.modes() != ch.in_modes)
        throw invalid_input("DimensionMismatch: channel expects a different mode count");
    std::size_t n2 = 2 * ch.in_modes;
    RMat m = ch.d * gamma.gamma();
    for (std::size_t i = 0; i < n2; ++i) m(i, i) += 1.0;
    // K = Gamma M^{-1} solved as M^T K^T = Gamma^T.
    RMat kt = lu_solve(m.transpose(), gamma.gamma().transpose());
    RMat out = ch.a + ch.b * kt.transpose() * ch.b.transpose();
    for (std::size_t i = 0; i < out.rows(); ++i) {
        out(i, i) = 0.0;
        for (std::size_t j = i + 1; j < out.cols(); ++j) {
            double v = 0.5 * (out(i, j) - out(j, i));
            out(i, j) = v;
            out(j, i) = -v;
        }
    }
    return CovarianceMatrix(ch.out_modes, std::move(out));
}

GaussianChannel glu_channel(const RMat &o) {
    if (!o.square() || o.rows() % 2 != 0)
        throw invalid_input("NotOrthogonal: even-dimensional matrix required");
    RMat ot = o.transpose() * o;
    ot -= RMat::identity(o.rows());
    if (frobenius_norm(ot) > 1e-9 * (1.0 + frobenius_norm(o)))
        throw invalid_input("NotOrthogonal: O O^T != 1");
    std::size_t n = o.rows() / 2;
    GaussianChannel ch;
    ch.in_modes = ch.out_modes = n;
    ch.a = RMat(2 * n, 2 * n);
    ch.d = RMat(2 * n, 2 * n);
    ch.b = o;
    return ch;
}

GaussianChannel compose(const GaussianChannel &second, const GaussianChannel &first) {
    if (second.in_modes != first.out_modes)
        throw invalid_input("DimensionMismatch: composition mode counts");
    std::size_t n = first.in_modes;
    // Extend the second channel to act on (out1 + in1) and push the CJ CM
    // of the first channel through it.
    GaussianChannel ext;
    ext.in_modes = second.in_modes + n;
    ext.out_modes = second.out_modes + n;
    ext.a = direct_sum({second.a, RMat(2 * n, 2 * n)});
    ext.d = direct_sum({second.d, RMat(2 * n, 2 * n)});
    ext.b = direct_sum({second.b, RMat::identity(2 * n)});
    CovarianceMatrix composed_cj = apply_channel_cm(ext, cj_cm(first));
    GaussianChannel out = channel_from_cj(composed_cj, second.out_modes);
    return out;
}

bool is_product_channel(const GaussianChannel &ch, const Bipartition &partition) {
    if (ch.in_modes != ch.out_modes)
        throw invalid_input("BadPartition: in/out pairing needs m = n");
    if (partition.modes() != ch.in_modes)
        throw invalid_input("BadPartition: mode count mismatch");
    // CJ modes: out 1..m then in 1..n; party of each = party of the index.
    std::vector<std::size_t> party;
    for (std::size_t i = 0; i < ch.out_modes; ++i) party.push_back(partition.party(i));
    for (std::size_t i = 0; i < ch.in_modes; ++i) party.push_back(partition.party(i));
    return is_s2pi_separable_cm(cj_cm(ch), Bipartition(party));
}

RMat random_special_orthogonal(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    RMat q(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
        std::vector<double> v(dim);
        for (auto &x : v) x = gauss(rng);
        for (int attempt = 0; attempt < 4; ++attempt) {
            for (std::size_t p = 0; p < c; ++p) {
                double dot = 0;
                for (std::size_t i = 0; i < dim; ++i) dot += q(i, p) * v[i];
                for (std::size_t i = 0; i < dim; ++i) v[i] -= dot * q(i, p);
            }
            double nrm = 0;
            for (double x : v) nrm += x * x;
            nrm = std::sqrt(nrm);
            if (nrm > 1e-6) {
                for (auto &x : v) x /= nrm;
                break;
            }
            for (auto &x : v) x = gauss(rng);
        }
        for (std::size_t i = 0; i < dim; ++i) q(i, c) = v[i];
    }
    if (determinant(q) < 0)
        for (std::size_t i = 0; i < dim; ++i) q(i, dim - 1) = -q(i, dim - 1);
    return q;
}

CovarianceMatrix random_cm(std::size_t modes, std::mt19937_64 &rng, bool pure) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> mus(modes, 1.0);
    if (!pure)
        for (auto &mu : mus) mu = uni(rng);
    RMat basis = random_special_orthogonal(2 * modes, rng);
    return cm_from_couplings(mus, basis);
}

bool is_fully_entangled_cm(const CovarianceMatrix &g, double tol) {
    std::size_t n = g.modes();
    if (n < 2) return true;
    for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << n); ++mask) {
        if (mask > ((std::size_t(1) << n) - 1 - mask)) continue;  // complements
        double cross = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                bool ia = (mask >> i) & 1u, ja = (mask >> j) & 1u;
                if (ia == ja) continue;
                RMat b = g.block(std::min(i, j), std::max(i, j));
                cross += frobenius_sq(b.data(), b.size());
            }
        if (std::sqrt(cross) < tol) return false;
    }
    return true;
}

GsepProbeReport gsep_triviality_probe(const GaussianChannel &ch,
                                      std::size_t samples, std::uint64_t seed) {
    std::size_t n = ch.in_modes;
    std::vector<std::size_t> each(n);
    for (std::size_t i = 0; i < n; ++i) each[i] = i;
    if (!is_product_channel(ch, Bipartition(each)))
        throw invalid_input("NotSeparableChannel: probe expects a GSEP channel");

    GsepProbeReport rep;
    rep.samples = samples;
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        CovarianceMatrix in = random_cm(n, rng, /*pure=*/true);
        if (!is_fully_entangled_cm(in)) {
            --s;  // resample degenerate draws
            continue;
        }
        CovarianceMatrix out = apply_channel_cm(ch, in);
        RMat g2 = out.gamma() * out.gamma();
        for (std::size_t i = 0; i < g2.rows(); ++i) g2(i, i) += 1.0;
        double purity_residual = frobenius_norm(g2);
        if (purity_residual > 1e-6) {
            rep.all_outputs_pure = false;
            continue;
        }
        if (is_fully_entangled_cm(out)) ++rep.pure_entangled_hits;
    }

    // Per-mode nearest-orthogonal fit of the local factors.
    for (std::size_t i = 0; i < n; ++i) {
        RMat bi = ch.b.block(2 * i, 2 * i, 2, 2);
        Svd2So s2 = svd2_so(bi);
        RMat signs = RMat::from_rows({{s2.d >= 0 ? 1.0 : -1.0, 0.0},
                                      {0.0, s2.dp >= 0 ? 1.0 : -1.0}});
        RMat q = s2.left.transpose() * signs * s2.right;
        RMat ai = ch.a.block(2 * i, 2 * i, 2, 2);
        RMat di = ch.d.block(2 * i, 2 * i, 2, 2);
        double res = frobenius_norm(bi - q) + frobenius_norm(ai) + frobenius_norm(di);
        rep.fitted_orthogonals.push_back(std::move(q));
        rep.fit_residuals.push_back(res);
    }
    return rep;
}

}  // namespace fgs
