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

#include "fgs/jw_fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>

namespace fgs {

namespace {

constexpr cplx kI{0.0, 1.0};

inline int popcount_sz(std::size_t x) { return std::popcount((unsigned long long)x); }

/// Phase and target index of c_i |b> for n modes. Mode j = ceil(i/2),
/// the Z string covers modes 1..j-1 (leading bits), X or Y acts on the
/// mode-j bit.
inline void majorana_action(std::size_t i, std::size_t n, std::size_t b,
                            std::size_t &target, cplx &phase) {
    std::size_t j = (i + 1) / 2;
    bool is_y = (i % 2 == 0);
    std::size_t bitpos = n - j;  // mode j sits at this bit (mode 1 = MSB)
    std::size_t prefix_mask = ((std::size_t(1) << (j - 1)) - 1) << (n - j + 1);
    int zs = popcount_sz(b & prefix_mask);
    int kj = (int)((b >> bitpos) & 1u);
    target = b ^ (std::size_t(1) << bitpos);
    double sign = (zs % 2 == 0) ? 1.0 : -1.0;
    if (is_y)
        phase = sign * kI * ((kj == 0) ? 1.0 : -1.0);
    else
        phase = sign;
}

void check_majorana_index(std::size_t i, std::size_t n) {
    if (n == 0 || i < 1 || i > 2 * n)
        throw invalid_input("IndexOutOfRange: Majorana index must be in 1..2n");
}

}  // namespace

FockVector::FockVector(std::size_t modes, std::vector<cplx> amplitudes, bool validate)
    : modes_(modes), amps_(std::move(amplitudes)) {
    if (modes_ == 0 || modes_ > 8)
        throw invalid_input("TooLarge: FockVector supports 1..8 modes");
    if (amps_.size() != (std::size_t(1) << modes_))
        throw invalid_input("DimensionMismatch: amplitude count must be 2^n");
    if (validate) {
        if (std::abs(norm() - 1.0) > 1e-10)
            throw invalid_input("NotNormalized: state norm must be 1");
        if (!is_fermionic())
            throw invalid_input("NotFermionic: state must have definite parity");
    }
}

FockVector FockVector::basis_state(std::size_t modes, std::size_t index) {
    std::vector<cplx> a(std::size_t(1) << modes, 0.0);
    a.at(index) = 1.0;
    return FockVector(modes, std::move(a));
}

double FockVector::norm() const {
    return std::sqrt(frobenius_sq(amps_.data(), amps_.size()));
}

int FockVector::parity(double tol) const {
    double even = 0, odd = 0;
    for (std::size_t b = 0; b < amps_.size(); ++b)
        ((popcount_sz(b) % 2 == 0) ? even : odd) += std::norm(amps_[b]);
    if (std::sqrt(even * odd) > tol) return 0;
    return even >= odd ? 1 : -1;
}

bool FockVector::is_fermionic(double tol) const { return parity(tol) != 0; }

FockDensity::FockDensity(std::size_t modes, CMat matrix, bool validate)
    : modes_(modes), rho_(std::move(matrix)) {
    std::size_t d = std::size_t(1) << modes_;
    if (rho_.rows() != d || rho_.cols() != d)
        throw invalid_input("DimensionMismatch: density must be 2^n x 2^n");
    if (validate) {
        double scale = std::sqrt(frobenius_sq(rho_.data(), rho_.size())) + 1e-300;
        double herm = 0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j)
                herm += std::norm(rho_(i, j) - std::conj(rho_(j, i)));
        if (std::sqrt(herm) > 1e-9 * scale)
            throw invalid_input("NotHermitian: density matrix");
        if (std::abs(trace(rho_) - cplx(1.0)) > 1e-8)
            throw invalid_input("NotNormalized: trace must be 1");
        auto ev = eigen_herm_values(rho_);
        if (!ev.empty() && ev.front() < -1e-10)
            throw invalid_input("NotPositive: density matrix has negative eigenvalue");
    }
}

FockDensity FockDensity::from_vector(const FockVector &psi) {
    std::size_t d = psi.dim();
    CMat rho(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            rho(i, j) = psi[i] * std::conj(psi[j]);
    return FockDensity(psi.modes(), std::move(rho), false);
}

bool FockDensity::is_fermionic(double tol) const {
    double off = 0;
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            if (popcount_sz(i) % 2 != popcount_sz(j) % 2) off += std::norm(rho_(i, j));
    return std::sqrt(off) < tol;
}

const CMat &majorana_matrix(std::size_t i, std::size_t n) {
    check_majorana_index(i, n);
    if (n > 8) throw invalid_input("TooLarge: majorana_matrix supports n <= 8");
    static std::map<std::pair<std::size_t, std::size_t>, CMat> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(i, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::size_t d = std::size_t(1) << n;
    CMat m(d, d);
    for (std::size_t b = 0; b < d; ++b) {
        std::size_t t;
        cplx ph;
        majorana_action(i, n, b, t, ph);
        m(t, b) = ph;
    }
    return cache.emplace(key, std::move(m)).first->second;
}

void apply_majorana(std::size_t i, std::size_t n, const cplx *in, cplx *out) {
    check_majorana_index(i, n);
    std::size_t d = std::size_t(1) << n;
    for (std::size_t b = 0; b < d; ++b) {
        std::size_t t;
        cplx ph;
        majorana_action(i, n, b, t, ph);
        out[t] = ph * in[b];
    }
}

CMat majorana_left(std::size_t i, std::size_t n, const CMat &m) {
    check_majorana_index(i, n);
    std::size_t d = m.rows();
    CMat out(d, m.cols());
    for (std::size_t b = 0; b < d; ++b) {
        std::size_t t;
        cplx ph;
        majorana_action(i, n, b, t, ph);
        for (std::size_t c = 0; c < m.cols(); ++c) out(t, c) = ph * m(b, c);
    }
    return out;
}

CMat majorana_right(const CMat &m, std::size_t i, std::size_t n) {
    check_majorana_index(i, n);
    std::size_t d = m.cols();
    CMat out(m.rows(), d);
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t t;
        cplx ph;
        majorana_action(i, n, c, t, ph);
        // c_i(t, c) = ph, so (M c_i)(:, c) = ph * M(:, t).
        for (std::size_t r = 0; r < m.rows(); ++r) out(r, c) = ph * m(r, t);
    }
    return out;
}

CMat lambda_operator(std::size_t n) {
    if (n < 1 || n > 6)
        throw invalid_input("TooLarge: lambda_operator supports n <= 6");
    std::size_t d = std::size_t(1) << n;
    CMat lambda(d * d, d * d);
    for (std::size_t i = 1; i <= 2 * n; ++i) {
        const CMat &c = majorana_matrix(i, n);
        kron_acc_cc(c.data(), d, d, c.data(), d, d, lambda.data());
    }
    return lambda;
}

bool is_fermionic(const FockVector &psi, double tol) { return psi.is_fermionic(tol); }
bool is_fermionic(const FockDensity &rho, double tol) { return rho.is_fermionic(tol); }

double gaussian_pure_residual(const FockVector &psi) {
    std::size_t n = psi.modes(), d = psi.dim();
    std::vector<cplx> ci(d);
    std::vector<cplx> acc(d * d, 0.0);
    for (std::size_t i = 1; i <= 2 * n; ++i) {
        apply_majorana(i, n, psi.amps().data(), ci.data());
        for (std::size_t r = 0; r < d; ++r) {
            if (ci[r] == cplx(0)) continue;
            cplx v = ci[r];
            for (std::size_t c = 0; c < d; ++c) acc[r * d + c] += v * ci[c];
        }
    }
    return std::sqrt(frobenius_sq(acc.data(), acc.size()));
}

bool is_gaussian_pure(const FockVector &psi, double tol) {
    if (!psi.is_fermionic())
        throw invalid_input("NotFermionic: state must have definite parity");
    return gaussian_pure_residual(psi) < tol;
}

bool is_gaussian_operator(const CMat &x, std::size_t n, double tol) {
    std::size_t d = std::size_t(1) << n;
    if (x.rows() != d || x.cols() != d)
        throw invalid_input("DimensionMismatch: operator must be 2^n x 2^n");
    if (n > 6) throw invalid_input("TooLarge: is_gaussian_operator supports n <= 6");
    double scale2 = frobenius_sq(x.data(), x.size());
    double off = 0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (popcount_sz(i) % 2 != popcount_sz(j) % 2) off += std::norm(x(i, j));
    if (std::sqrt(off) > 1e-10 * (std::sqrt(scale2) + 1e-300))
        throw invalid_input("NotEven: operator mixes parity sectors");

    std::vector<CMat> cx, xc;
    cx.reserve(2 * n);
    xc.reserve(2 * n);
    for (std::size_t i = 1; i <= 2 * n; ++i) {
        cx.push_back(majorana_left(i, n, x));
        xc.push_back(majorana_right(x, i, n));
    }
    std::vector<const cplx *> as, cs;
    for (std::size_t i = 0; i < 2 * n; ++i) {
        as.push_back(cx[i].data());
        cs.push_back(xc[i].data());
    }
    double nrm = std::sqrt(
        kron_diff_norm_sq(as.data(), as.data(), cs.data(), cs.data(), 2 * n, d));
    return nrm < tol * scale2;
}

bool is_gaussian_two_mode(const FockDensity &rho, double tol) {
    if (rho.modes() != 2)
        throw invalid_input("WrongModeCount: two-mode criterion needs n = 2");
    if (!rho.is_fermionic())
        throw invalid_input("NotFermionic: density must commute with parity");
    const CMat &r = rho.matrix();
    // Even block in {|00>, |11>} = indices {0, 3}; odd in {|01>, |10>}.
    cplx de = r(0, 0) * r(3, 3) - r(0, 3) * r(3, 0);
    cplx dodd = r(1, 1) * r(2, 2) - r(1, 2) * r(2, 1);
    return std::abs(de - dodd) < tol;
}

cplx xyxy_invariant(const FockVector &psi) {
    std::size_t d = psi.dim();
    cplx s = 0;
    for (std::size_t c = 0; c < d; ++c) {
        if (psi[c] == cplx(0)) continue;
        std::size_t comp = (~c) & (d - 1);
        int k2 = psi.bit(c, 2), k4 = psi.bit(c, 4);
        double sign = ((k2 + k4) % 2 == 0) ? -1.0 : 1.0;
        s += psi[comp] * sign * psi[c];
    }
    return s;
}

bool is_gaussian_four_mode_pure(const FockVector &psi, double tol) {
    if (psi.modes() != 4)
        throw invalid_input("WrongModeCount: four-mode criterion needs n = 4");
    if (!psi.is_fermionic())
        throw invalid_input("NotFermionic: state must have definite parity");
    return std::abs(xyxy_invariant(psi)) < tol;
}

CovarianceMatrix cm_from_state(const FockVector &psi) {
    if (!psi.is_fermionic())
        throw invalid_input("NotFermionic: state must have definite parity");
    std::size_t n = psi.modes(), d = psi.dim();
    std::vector<std::vector<cplx>> cpsi(2 * n, std::vector<cplx>(d));
    for (std::size_t i = 1; i <= 2 * n; ++i)
        apply_majorana(i, n, psi.amps().data(), cpsi[i - 1].data());
    RMat g(2 * n, 2 * n);
    for (std::size_t k = 0; k < 2 * n; ++k)
        for (std::size_t l = k + 1; l < 2 * n; ++l) {
            cplx inner = 0;
            for (std::size_t b = 0; b < d; ++b)
                inner += std::conj(cpsi[k][b]) * cpsi[l][b];
            double val = std::real(kI * inner);
            g(k, l) = val;
            g(l, k) = -val;
        }
    return CovarianceMatrix(n, std::move(g));
}

CovarianceMatrix cm_from_state(const FockDensity &rho) {
    if (!rho.is_fermionic())
        throw invalid_input("NotFermionic: density must commute with parity");
    std::size_t n = rho.modes();
    RMat g(2 * n, 2 * n);
    std::vector<CMat> rc;
    rc.reserve(2 * n);
    for (std::size_t l = 1; l <= 2 * n; ++l)
        rc.push_back(majorana_left(l, n, rho.matrix()));
    // gamma_{kl} = i tr(rho c_k c_l) = i tr(c_l rho c_k).
    for (std::size_t k = 1; k <= 2 * n; ++k)
        for (std::size_t l = k + 1; l <= 2 * n; ++l) {
            CMat m = majorana_right(rc[l - 1], k, n);
            double val = std::real(kI * trace(m));
            g(k - 1, l - 1) = val;
            g(l - 1, k - 1) = -val;
        }
    return CovarianceMatrix(n, std::move(g));
}

FockVector fermionic_swap(const FockVector &psi, std::size_t site) {
    std::size_t n = psi.modes();
    if (site < 1 || site >= n)
        throw invalid_input("IndexOutOfRange: swap site must be in 1..n-1");
    std::size_t hi = n - site, lo = n - site - 1;  // bit positions
    std::vector<cplx> out(psi.dim());
    for (std::size_t b = 0; b < psi.dim(); ++b) {
        std::size_t bi = (b >> hi) & 1u, bj = (b >> lo) & 1u;
        std::size_t t = b & ~((std::size_t(1) << hi) | (std::size_t(1) << lo));
        t |= (bj << hi) | (bi << lo);
        double sign = (bi & bj) ? -1.0 : 1.0;
        out[t] = sign * psi[b];
    }
    return FockVector(n, std::move(out), false);
}

FockDensity fermionic_swap(const FockDensity &rho, std::size_t site) {
    std::size_t n = rho.modes();
    if (site < 1 || site >= n)
        throw invalid_input("IndexOutOfRange: swap site must be in 1..n-1");
    std::size_t hi = n - site, lo = n - site - 1;
    std::size_t d = rho.dim();
    auto map_idx = [&](std::size_t b, double &sign) {
        std::size_t bi = (b >> hi) & 1u, bj = (b >> lo) & 1u;
        std::size_t t = b & ~((std::size_t(1) << hi) | (std::size_t(1) << lo));
        t |= (bj << hi) | (bi << lo);
        sign = (bi & bj) ? -1.0 : 1.0;
        return t;
    };
    CMat out(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        double sr;
        std::size_t tr_ = map_idx(r, sr);
        for (std::size_t c = 0; c < d; ++c) {
            double sc;
            std::size_t tc = map_idx(c, sc);
            out(tr_, tc) = sr * sc * rho.matrix()(r, c);
        }
    }
    return FockDensity(n, std::move(out), false);
}

FockDensity fermionic_partial_trace(const FockDensity &rho, std::size_t mode) {
    std::size_t n = rho.modes();
    if (mode < 1 || mode > n)
        throw invalid_input("IndexOutOfRange: trace mode must be in 1..n");
    if (n == 1) throw invalid_input("IndexOutOfRange: cannot trace the only mode");
    FockDensity cur = rho;
    for (std::size_t s = mode; s < n; ++s) cur = fermionic_swap(cur, s);
    std::size_t dr = cur.dim() / 2;
    CMat out(dr, dr);
    for (std::size_t r = 0; r < dr; ++r)
        for (std::size_t c = 0; c < dr; ++c)
            out(r, c) = cur.matrix()(2 * r, 2 * c) + cur.matrix()(2 * r + 1, 2 * c + 1);
    return FockDensity(n - 1, std::move(out), false);
}

FockDensity reduced_density(const FockDensity &rho, std::vector<std::size_t> keep) {
    std::sort(keep.begin(), keep.end());
    FockDensity cur = rho;
    for (std::size_t m = rho.modes(); m >= 1; --m) {
        if (std::find(keep.begin(), keep.end(), m) == keep.end())
            cur = fermionic_partial_trace(cur, m);
        if (m == 1) break;
    }
    return cur;
}

FockDensity reduced_density(const FockVector &psi, std::vector<std::size_t> keep) {
    return reduced_density(FockDensity::from_vector(psi), std::move(keep));
}

FockVector ghz_hadamard_state(std::size_t n) {
    if (n < 2) throw invalid_input("OutOfRange: ghz_hadamard_state needs n >= 2");
    std::size_t d = std::size_t(1) << n;
    std::vector<cplx> a(d, 0.0);
    double amp = 1.0 / std::sqrt((double)(d / 2));
    for (std::size_t b = 0; b < d; ++b)
        if (popcount_sz(b) % 2 == 0) a[b] = amp;
    return FockVector(n, std::move(a));
}

FockDensity werner_state(double f) {
    if (f < 0 || f > 1) throw invalid_input("OutOfRange: F must be in [0, 1]");
    CMat rho(4, 4);
    double w = (4 * f - 1) / 3.0, m = (1 - f) / 3.0;
    for (std::size_t i = 0; i < 4; ++i) rho(i, i) = m;
    // |psi^-> = (|01> - |10>)/sqrt(2): indices 1, 2.
    rho(1, 1) += w / 2;
    rho(2, 2) += w / 2;
    rho(1, 2) -= w / 2;
    rho(2, 1) -= w / 2;
    return FockDensity(2, std::move(rho));
}

FockDensity gaussian_density(const std::vector<double> &mus, const RMat &basis) {
    std::size_t n = mus.size();
    if (n < 1 || n > 8) throw invalid_input("TooLarge: gaussian_density supports n <= 8");
    if (basis.rows() != 2 * n || basis.cols() != 2 * n)
        throw invalid_input("DimensionMismatch: basis must be 2n x 2n");
    std::size_t d = std::size_t(1) << n;
    // Rotated Majoranas c'_j = sum_l basis_{jl} c_l.
    auto rotated = [&](std::size_t j) {
        CMat m(d, d);
        for (std::size_t l = 1; l <= 2 * n; ++l) {
            double w = basis(j - 1, l - 1);
            if (w == 0.0) continue;
            const CMat &c = majorana_matrix(l, n);
            for (std::size_t idx = 0; idx < m.size(); ++idx)
                m.data()[idx] += w * c.data()[idx];
        }
        return m;
    };
    CMat rho = CMat::identity(d);
    for (std::size_t k = 1; k <= n; ++k) {
        CMat c1 = rotated(2 * k - 1);
        CMat c2 = rotated(2 * k);
        CMat f = c1 * c2;
        for (std::size_t idx = 0; idx < f.size(); ++idx)
            f.data()[idx] = 0.5 * (-kI * mus[k - 1]) * f.data()[idx];
        for (std::size_t i = 0; i < d; ++i) f(i, i) += 0.5;
        rho = rho * f;
    }
    return FockDensity(n, std::move(rho), false);
}

FockVector gaussian_pure_vector(const RMat &basis) {
    std::size_t n = basis.rows() / 2;
    FockDensity rho = gaussian_density(std::vector<double>(n, 1.0), basis);
    std::size_t d = rho.dim();
    // Rank-1 projector: any nonzero column is the state up to phase.
    std::size_t best = 0;
    double bestn = -1;
    for (std::size_t c = 0; c < d; ++c) {
        double s = 0;
        for (std::size_t r = 0; r < d; ++r) s += std::norm(rho.matrix()(r, c));
        if (s > bestn) {
            bestn = s;
            best = c;
        }
    }
    std::vector<cplx> a(d);
    for (std::size_t r = 0; r < d; ++r) a[r] = rho.matrix()(r, best);
    double nrm = std::sqrt(frobenius_sq(a.data(), a.size()));
    if (nrm < 1e-12) throw numeric_error("gaussian_pure_vector: zero projector column");
    // Fix the global phase: first significant amplitude real positive.
    cplx ph = 1.0;
    for (std::size_t r = 0; r < d; ++r)
        if (std::abs(a[r]) > 1e-8 * nrm) {
            ph = std::abs(a[r]) / a[r];
            break;
        }
    for (auto &v : a) v = v * ph / nrm;
    return FockVector(n, std::move(a));
}

double jw_moment(const FockDensity &rho, const std::vector<std::size_t> &indices) {
    std::size_t n = rho.modes();
    if (indices.size() % 2 != 0) throw invalid_input("BadIndices: even count required");
    CMat m = rho.matrix();
    for (std::size_t idx : indices) m = majorana_right(m, idx, n);
    cplx ip = 1.0;
    for (std::size_t p = 0; p < indices.size() / 2; ++p) ip *= kI;
    return std::real(ip * trace(m));
}

double jw_moment(const FockVector &psi, const std::vector<std::size_t> &indices) {
    std::size_t n = psi.modes();
    if (indices.size() % 2 != 0) throw invalid_input("BadIndices: even count required");
    std::vector<cplx> cur = psi.amps(), next(psi.dim());
    for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
        apply_majorana(*it, n, cur.data(), next.data());
        std::swap(cur, next);
    }
    cplx inner = 0;
    for (std::size_t b = 0; b < psi.dim(); ++b)
        inner += std::conj(psi[b]) * cur[b];
    cplx ip = 1.0;
    for (std::size_t p = 0; p < indices.size() / 2; ++p) ip *= kI;
    return std::real(ip * inner);
}

FockVector apply_site_op(const FockVector &psi, std::size_t site, const CMat &op,
                         bool renormalize) {
    std::size_t n = psi.modes();
    if (site < 1 || site > n) throw invalid_input("IndexOutOfRange: site");
    if (op.rows() != 2 || op.cols() != 2)
        throw invalid_input("DimensionMismatch: site operator must be 2x2");
    std::size_t pos = n - site;
    std::vector<cplx> out(psi.dim(), 0.0);
    for (std::size_t b = 0; b < psi.dim(); ++b) {
        std::size_t kb = (b >> pos) & 1u;
        for (std::size_t r = 0; r < 2; ++r) {
            cplx v = op(r, kb);
            if (v == cplx(0)) continue;
            std::size_t t = (b & ~(std::size_t(1) << pos)) | (r << pos);
            out[t] += v * psi[b];
        }
    }
    if (renormalize) {
        double nrm = std::sqrt(frobenius_sq(out.data(), out.size()));
        if (nrm < 1e-300) throw numeric_error("apply_site_op: state annihilated");
        for (auto &v : out) v /= nrm;
    }
    return FockVector(n, std::move(out), false);
}

FockDensity apply_site_ops_density(
    const FockDensity &rho, const std::vector<std::pair<std::size_t, CMat>> &ops) {
    std::size_t n = rho.modes(), d = rho.dim();
    // Build the full operator as a sparse column map per site product.
    CMat big = CMat::identity(d);
    for (const auto &[site, op] : ops) {
        std::size_t pos = n - site;
        CMat next(d, d);
        for (std::size_t b = 0; b < d; ++b) {
            std::size_t kb = (b >> pos) & 1u;
            for (std::size_t r = 0; r < 2; ++r) {
                cplx v = op(r, kb);
                if (v == cplx(0)) continue;
                std::size_t t = (b & ~(std::size_t(1) << pos)) | (r << pos);
                for (std::size_t c = 0; c < d; ++c) next(t, c) += v * big(b, c);
            }
        }
        big = std::move(next);
    }
    CMat out = big * rho.matrix() * adjoint(big);
    return FockDensity(n, std::move(out), false);
}

}  // namespace fgs
