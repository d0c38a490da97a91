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

#include "fgs/gfs_cm.hpp"

#include <algorithm>
#include <cmath>

namespace fgs {

CovarianceMatrix::CovarianceMatrix(std::size_t modes, RMat gamma)
    : modes_(modes), gamma_(std::move(gamma)) {
    if (gamma_.rows() != 2 * modes || gamma_.cols() != 2 * modes)
        throw invalid_input("DimensionMismatch: CM must be 2n x 2n");
    require_antisymmetric(gamma_);
}

double CovarianceMatrix::max_singular_value() const {
    auto sv = singular_values(gamma_);
    return sv.empty() ? 0.0 : sv.front();
}

bool CovarianceMatrix::is_physical(double tol) const {
    return max_singular_value() <= 1.0 + tol;
}

bool CovarianceMatrix::is_pure(double tol) const {
    RMat g2 = gamma_ * gamma_;
    for (std::size_t i = 0; i < g2.rows(); ++i) g2(i, i) += 1.0;
    return frobenius_norm(g2) < tol;
}

RMat LocalOrthogonal::matrix() const {
    RMat m = rot2(angle);
    if (flip) {
        // Z R(a): negate the second row.
        m(1, 0) = -m(1, 0);
        m(1, 1) = -m(1, 1);
    }
    return m;
}

LocalOrthogonal LocalOrthogonal::from_matrix(const RMat &m, double tol) {
    if (m.rows() != 2 || m.cols() != 2)
        throw invalid_input("DimensionMismatch: LocalOrthogonal is 2x2");
    RMat mtm = m.transpose() * m;
    mtm -= RMat::identity(2);
    if (frobenius_norm(mtm) > tol)
        throw invalid_input("NotOrthogonal: local operation must be orthogonal");
    double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    LocalOrthogonal o;
    if (det > 0) {
        o.flip = 0;
        o.angle = std::atan2(m(1, 0), m(0, 0));
    } else {
        o.flip = 1;
        // Z Zbar = R(a); read the angle off Z * m.
        o.angle = std::atan2(-m(1, 0), m(0, 0));
    }
    return o;
}

Bipartition::Bipartition(std::vector<std::size_t> party_of_mode)
    : party_of_mode_(std::move(party_of_mode)) {
    if (party_of_mode_.empty())
        throw invalid_input("BadPartition: no modes");
    parties_ = 1 + *std::max_element(party_of_mode_.begin(), party_of_mode_.end());
    std::vector<bool> seen(parties_, false);
    for (auto p : party_of_mode_) seen[p] = true;
    for (bool b : seen)
        if (!b) throw invalid_input("BadPartition: party labels not contiguous");
}

Bipartition Bipartition::ab(std::size_t modes, const std::vector<std::size_t> &a_modes) {
    std::vector<std::size_t> p(modes, 1);
    for (auto m : a_modes) {
        if (m >= modes) throw invalid_input("BadPartition: mode index out of range");
        p[m] = 0;
    }
    return Bipartition(p);
}

std::vector<std::size_t> Bipartition::modes_of(std::size_t party) const {
    std::vector<std::size_t> out;
    for (std::size_t m = 0; m < party_of_mode_.size(); ++m)
        if (party_of_mode_[m] == party) out.push_back(m);
    return out;
}

CmValidationReport validate_cm(const CovarianceMatrix &g) {
    CmValidationReport r;
    r.antisymmetric = is_antisymmetric(g.gamma());
    r.physical = g.is_physical();
    r.pure = g.is_pure();
    r.williamson_spectrum = antisymmetric_normal_form(g.gamma()).couplings;
    return r;
}

CovarianceMatrix cm_from_couplings(const std::vector<double> &mus, const RMat &basis) {
    std::size_t n = mus.size();
    if (basis.rows() != 2 * n || basis.cols() != 2 * n)
        throw invalid_input("DimensionMismatch: basis must be 2n x 2n");
    RMat btb = basis.transpose() * basis;
    btb -= RMat::identity(2 * n);
    if (frobenius_norm(btb) > 1e-10 * (1 + frobenius_norm(basis)))
        throw invalid_input("NotSpecialOrthogonal: basis O O^T != 1");
    if (determinant(basis) < 0)
        throw invalid_input("NotSpecialOrthogonal: det(basis) = -1");
    std::vector<RMat> blocks;
    blocks.reserve(n);
    for (double mu : mus) blocks.push_back((-mu) * j2());
    RMat core = direct_sum(blocks);
    RMat g = basis.transpose() * core * basis;
    for (std::size_t i = 0; i < 2 * n; ++i) {
        g(i, i) = 0.0;
        for (std::size_t j = i + 1; j < 2 * n; ++j) {
            double v = 0.5 * (g(i, j) - g(j, i));
            g(i, j) = v;
            g(j, i) = -v;
        }
    }
    return CovarianceMatrix(n, std::move(g));
}

CovarianceMatrix thermal_cm(const std::vector<double> &betas, const RMat &basis) {
    std::vector<double> mus(betas.size());
    for (std::size_t i = 0; i < betas.size(); ++i) mus[i] = std::tanh(betas[i] / 2);
    return cm_from_couplings(mus, basis);
}

double wick_moment(const CovarianceMatrix &g, const std::vector<std::size_t> &indices) {
    std::size_t dim = 2 * g.modes();
    if (indices.size() % 2 != 0)
        throw invalid_input("BadIndices: even count required");
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] < 1 || indices[k] > dim)
            throw invalid_input("BadIndices: index out of range");
        if (k > 0 && indices[k] <= indices[k - 1])
            throw invalid_input("BadIndices: strictly increasing required");
    }
    std::size_t p2 = indices.size();
    RMat sub(p2, p2);
    for (std::size_t i = 0; i < p2; ++i)
        for (std::size_t j = 0; j < p2; ++j)
            sub(i, j) = g.gamma()(indices[i] - 1, indices[j] - 1);
    return pfaffian(sub);
}

CovarianceMatrix apply_local_orthogonal(const CovarianceMatrix &g,
                                        const LocalOrthogonalSet &ops) {
    if (ops.size() != g.modes())
        throw invalid_input("SizeMismatch: one operation per mode required");
    std::vector<RMat> blocks;
    blocks.reserve(ops.size());
    for (const auto &o : ops) blocks.push_back(o.matrix());
    RMat big = direct_sum(blocks);
    return CovarianceMatrix(g.modes(), big * g.gamma() * big.transpose());
}

bool is_s2pi_separable_cm(const CovarianceMatrix &g, const Bipartition &partition) {
    if (partition.modes() != g.modes())
        throw invalid_input("BadPartition: mode count mismatch");
    double tol = kEpsDeg * (frobenius_norm(g.gamma()) + 1.0);
    for (std::size_t i = 0; i < g.modes(); ++i)
        for (std::size_t j = i + 1; j < g.modes(); ++j) {
            if (partition.party(i) == partition.party(j)) continue;
            if (max_abs(g.block(i, j)) > tol) return false;
        }
    return true;
}

namespace {
RMat cross_block(const CovarianceMatrix &g, const Bipartition &partition) {
    if (partition.parties() != 2)
        throw invalid_input("BadPartition: bipartition required");
    auto am = partition.modes_of(0);
    auto bm = partition.modes_of(1);
    RMat c(2 * am.size(), 2 * bm.size());
    for (std::size_t i = 0; i < am.size(); ++i)
        for (std::size_t j = 0; j < bm.size(); ++j)
            c.set_block(2 * i, 2 * j, g.block(am[i], bm[j]));
    return c;
}
}  // namespace

std::size_t correlation_rank(const CovarianceMatrix &g, const Bipartition &partition) {
    RMat c = cross_block(g, partition);
    double tol = kEpsDeg * (frobenius_norm(g.gamma()) + 1.0);
    std::size_t rank = 0;
    for (double s : singular_values(c))
        if (s > tol) ++rank;
    return rank;
}

std::pair<CovarianceMatrix, Bipartition> two_copies(const CovarianceMatrix &g,
                                                    const Bipartition &partition) {
    if (partition.modes() != g.modes())
        throw invalid_input("BadPartition: mode count mismatch");
    std::size_t n = g.modes();
    // Copy CMs are uncorrelated: cross moments involve odd operators on
    // each factor, so the doubled CM is gamma (+) gamma before regrouping.
    RMat doubled = direct_sum({g.gamma(), g.gamma()});

    // New mode order: for each party, its copy-1 modes then copy-2 modes.
    std::vector<std::size_t> order;
    std::vector<std::size_t> party_of_new;
    for (std::size_t p = 0; p < partition.parties(); ++p) {
        for (std::size_t copy = 0; copy < 2; ++copy)
            for (auto m : partition.modes_of(p)) {
                order.push_back(copy * n + m);
                party_of_new.push_back(p);
            }
    }
    RMat out(4 * n, 4 * n);
    for (std::size_t i = 0; i < 2 * n; ++i)
        for (std::size_t j = 0; j < 2 * n; ++j)
            for (std::size_t bi = 0; bi < 2; ++bi)
                for (std::size_t bj = 0; bj < 2; ++bj)
                    out(2 * i + bi, 2 * j + bj) =
                        doubled(2 * order[i] + bi, 2 * order[j] + bj);
    return {CovarianceMatrix(2 * n, out), Bipartition(party_of_new)};
}

CovarianceMatrix fixture_gamma_p(double p) {
    if (p < 0 || p > 0.5) throw invalid_input("OutOfRange: p must be in [0, 1/2]");
    RMat g(4, 4);
    g(0, 2) = 1 - 2 * p;
    g(2, 0) = -(1 - 2 * p);
    return CovarianceMatrix(2, g);
}

std::vector<double> williamson_abs(const CovarianceMatrix &g) {
    auto c = antisymmetric_normal_form(g.gamma()).couplings;
    for (auto &x : c) x = std::abs(x);
    std::sort(c.rbegin(), c.rend());
    return c;
}

}  // namespace fgs
