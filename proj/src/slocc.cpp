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

#include "fgs/slocc.hpp"

#include <cmath>

namespace fgs {

namespace {

/// Diagonal single-mode reduction (p0, p1) of a definite-parity state.
/// Off-diagonal entries vanish by parity superselection; the diagonal is
/// sign-free, so it can be read off the amplitude weights directly.
std::pair<double, double> mode_weights(const FockVector &psi, std::size_t mode) {
    double p0 = 0, p1 = 0;
    for (std::size_t b = 0; b < psi.dim(); ++b) {
        double w = std::norm(psi[b]);
        if (psi.bit(b, mode))
            p1 += w;
        else
            p0 += w;
    }
    return {p0, p1};
}

bool all_reductions_maximally_mixed(const FockVector &psi, double tol) {
    for (std::size_t m = 1; m <= psi.modes(); ++m) {
        auto [p0, p1] = mode_weights(psi, m);
        if (std::abs(p0 - 0.5) + std::abs(p1 - 0.5) > tol) return false;
    }
    return true;
}

}  // namespace

NormalFormTrace normal_form_iterate(const FockVector &psi, std::size_t max_iter,
                                    double tol) {
    if (!psi.is_fermionic())
        throw invalid_input("NotFermionic: state must have definite parity");
    std::size_t n = psi.modes();
    NormalFormTrace trace;
    trace.local_ops_product.assign(n, CMat::identity(2));

    FockVector cur = psi;
    double cum = 1.0;
    if (all_reductions_maximally_mixed(cur, tol)) {
        trace.verdict = NormalFormTrace::Verdict::CriticalReached;
        trace.final_state = cur;
        return trace;
    }

    for (std::size_t sweep = 1; sweep <= max_iter; ++sweep) {
        for (std::size_t site = 1; site <= n; ++site) {
            auto [p0, p1] = mode_weights(cur, site);
            if (std::min(p0, p1) < 1e-13) continue;  // factorized mode, skip
            double det4 = std::pow(p0 * p1, 0.25);
            CMat x(2, 2);
            x(0, 0) = det4 / std::sqrt(p0);
            x(1, 1) = det4 / std::sqrt(p1);
            FockVector next = apply_site_op(cur, site, x);
            double nn = frobenius_sq(next.amps().data(), next.dim());
            cum *= nn;
            for (auto &a : next.amps()) a /= std::sqrt(nn);
            cur = std::move(next);
            trace.local_ops_product[site - 1] = x * trace.local_ops_product[site - 1];
            trace.norm_history.push_back(cum);
        }
        trace.iterations = sweep;
        if (cum < kEpsNull) {
            trace.verdict = NormalFormTrace::Verdict::NullCone;
            trace.final_state.reset();
            return trace;
        }
        if (all_reductions_maximally_mixed(cur, tol)) {
            trace.verdict = NormalFormTrace::Verdict::CriticalReached;
            trace.final_state = cur;
            return trace;
        }
    }
    trace.verdict = NormalFormTrace::Verdict::MaxIterPlateau;
    trace.final_state = cur;
    return trace;
}

bool is_critical(const FockVector &psi, double tol) {
    if (!psi.is_fermionic())
        throw invalid_input("NotFermionic: state must have definite parity");
    for (std::size_t m = 1; m <= psi.modes(); ++m) {
        FockDensity red = reduced_density(psi, {m});
        double d = std::abs(std::real(red.matrix()(0, 0)) - 0.5) +
                   std::abs(std::real(red.matrix()(1, 1)) - 0.5) +
                   2 * std::abs(red.matrix()(0, 1));
        if (d > tol) return false;
    }
    return true;
}

std::string SloccLabel::name() const {
    switch (kind) {
        case Kind::Separable: return "Separable";
        case Kind::Biseparable: return "Biseparable(" + partition + ")";
        case Kind::GHZ3: return "GHZ3";
        case Kind::W3: return "W3";
        case Kind::Gabcd: return "G_abcd";
        case Kind::Labc2: return "L_abc2";
        case Kind::La2b2: return "L_a2b2";
        case Kind::NullCone4: return "NullCone4";
        case Kind::NonGaussian: return "NonGaussian";
        case Kind::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

SloccLabel classify_3mode(const FockVector &psi, double eps) {
    if (psi.modes() != 3)
        throw invalid_input("WrongModeCount: classify_3mode needs n = 3");
    int par = psi.parity();
    if (par == 0)
        throw invalid_input("NotFermionic: state must have definite parity");

    // Odd states are X^{(x)3} images of even ones: flip all bits.
    std::vector<cplx> a(8);
    for (std::size_t b = 0; b < 8; ++b)
        a[b] = (par == 1) ? psi[b] : psi[(~b) & 7u];

    // Even amplitudes over {|000>, |011>, |101>, |110>}.
    const std::size_t idx[4] = {0, 3, 5, 6};
    double amax = 0;
    for (auto i : idx) amax = std::max(amax, std::abs(a[i]));
    std::vector<int> zero(4, 0);
    int zeros = 0;
    for (int k = 0; k < 4; ++k) {
        zero[k] = std::abs(a[idx[k]]) < eps * (amax + 1e-300) ? 1 : 0;
        zeros += zero[k];
    }

    SloccLabel label;
    label.gaussian = true;  // every pure 3-mode fermionic state is Gaussian
    for (int k = 0; k < 4; ++k) label.params.push_back(a[idx[k]]);
    if (zeros == 0) {
        label.kind = SloccLabel::Kind::GHZ3;
    } else if (zeros == 1) {
        label.kind = SloccLabel::Kind::W3;
    } else if (zeros == 2) {
        label.kind = SloccLabel::Kind::Biseparable;
        // The surviving pair shares one mode in a fixed Fock state.
        int p = -1, q = -1;
        for (int k = 0; k < 4; ++k)
            if (!zero[k]) (p < 0 ? p : q) = k;
        // Pairs {000,011} and {101,110} factor mode 1, {000,101} and
        // {011,110} factor mode 2, {000,110} and {011,101} factor mode 3.
        std::size_t common = idx[p] ^ idx[q];
        if (common == 3)
            label.partition = "1|23";
        else if (common == 5)
            label.partition = "2|13";
        else
            label.partition = "3|12";
    } else {
        label.kind = SloccLabel::Kind::Separable;
    }
    return label;
}

namespace {
FockVector normalized_state(std::size_t n, std::vector<cplx> a) {
    double nrm = std::sqrt(frobenius_sq(a.data(), a.size()));
    if (nrm < 1e-300) throw invalid_input("AllZero: seed parameters all vanish");
    for (auto &v : a) v /= nrm;
    return FockVector(n, std::move(a));
}
}  // namespace

FockVector seed_4mode_gabcd(cplx a, cplx b, cplx c, cplx d) {
    std::vector<cplx> v(16, 0.0);
    v[0b0000] = v[0b1111] = (a + b) / 2.0;
    v[0b0011] = v[0b1100] = (a - b) / 2.0;
    v[0b0101] = v[0b1010] = (c + d) / 2.0;
    v[0b0110] = v[0b1001] = (c - d) / 2.0;
    return normalized_state(4, std::move(v));
}

FockVector seed_4mode_labc2(cplx a, cplx b, cplx c) {
    std::vector<cplx> v(16, 0.0);
    v[0b0000] = v[0b1111] = (a + b) / 2.0;
    v[0b0011] = v[0b1100] = (a - b) / 2.0;
    v[0b0101] = v[0b1010] = c;
    v[0b0110] += 1.0;
    return normalized_state(4, std::move(v));
}

FockVector seed_4mode_la2b2(cplx a, cplx b) {
    std::vector<cplx> v(16, 0.0);
    v[0b0000] = v[0b1111] = a;
    v[0b0101] = v[0b1010] = b;
    v[0b0110] += 1.0;
    v[0b0011] += 1.0;
    return normalized_state(4, std::move(v));
}

FockVector nullcone_4mode_state() {
    std::vector<cplx> v(16, 0.0);
    v[0b1100] = v[0b1111] = v[0b1010] = v[0b0110] = 0.5;
    return FockVector(4, std::move(v));
}

SloccLabel classify_4mode_seed(SeedFamily family, const std::vector<cplx> &params) {
    SloccLabel label;
    label.params = params;
    auto gaussian_if = [&](cplx condition, SloccLabel::Kind kind) {
        if (std::abs(condition) < 1e-9) {
            label.kind = kind;
            label.gaussian = true;
        } else {
            label.kind = SloccLabel::Kind::NonGaussian;
            label.gaussian = false;
        }
    };
    switch (family) {
        case SeedFamily::Gabcd: {
            if (params.size() != 4)
                throw invalid_input("UnknownFamily: G_abcd takes 4 parameters");
            gaussian_if(params[0] * params[1] + params[2] * params[3],
                        SloccLabel::Kind::Gabcd);
            break;
        }
        case SeedFamily::Labc2: {
            if (params.size() != 3)
                throw invalid_input("UnknownFamily: L_abc2 takes 3 parameters");
            gaussian_if(params[0] * params[1] + params[2] * params[2],
                        SloccLabel::Kind::Labc2);
            break;
        }
        case SeedFamily::La2b2: {
            if (params.size() != 2)
                throw invalid_input("UnknownFamily: L_a2b2 takes 2 parameters");
            gaussian_if(params[0] * params[0] + params[1] * params[1],
                        SloccLabel::Kind::La2b2);
            break;
        }
        case SeedFamily::NullCone4: {
            label.kind = SloccLabel::Kind::NullCone4;
            label.gaussian = true;
            break;
        }
        default:
            throw invalid_input("UnknownFamily: unrecognized seed family");
    }
    return label;
}

}  // namespace fgs
