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

#include "fgs/matalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fgs {

bool is_antisymmetric(const RMat &a, double eps) {
    if (!a.square()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            if (std::abs(a(i, j) + a(j, i)) > eps) return false;
    return true;
}

void require_antisymmetric(const RMat &a, double eps) {
    if (!a.square() || a.rows() % 2 != 0)
        throw invalid_input("OddDimension: antisymmetric matrices have even size");
    if (!is_antisymmetric(a, eps))
        throw invalid_input("NotAntisymmetric: residual exceeds tolerance");
}

RMat rot2(double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return RMat::from_rows({{c, -s}, {s, c}});
}

RMat j2() { return RMat::from_rows({{0, 1}, {-1, 0}}); }

double pfaffian(RMat a) {
    require_antisymmetric(a);
    std::size_t n = a.rows();
    if (n == 0) return 1.0;
    if (n == 2) return a(0, 1);
    if (n == 4)
        return a(0, 1) * a(2, 3) - a(0, 2) * a(1, 3) + a(0, 3) * a(1, 2);

    // Parlett-Reid: zero column k below row k+1 with Gauss transforms,
    // picking the largest pivot in column k as row k+1 first.
    double result = 1.0;
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        std::size_t kp = k + 1;
        for (std::size_t i = k + 2; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(kp, k))) kp = i;
        if (kp != k + 1) {
            for (std::size_t i = 0; i < n; ++i) std::swap(a(k + 1, i), a(kp, i));
            for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k + 1), a(i, kp));
            result = -result;
        }
        double pivot = a(k, k + 1);
        if (pivot == 0.0) return 0.0;
        result *= pivot;
        for (std::size_t i = k + 2; i < n; ++i) {
            double tau = a(k, i) / pivot;
            if (tau == 0.0) continue;
            for (std::size_t j = k + 2; j < n; ++j) {
                a(i, j) += tau * a(j, k + 1);
                a(j, i) -= tau * a(j, k + 1);
            }
        }
    }
    return result;
}

SymEigen jacobi_eigen_sym(RMat a) {
    if (!a.square()) throw invalid_input("DimensionMismatch: jacobi_eigen_sym");
    std::size_t n = a.rows();
    RMat v = RMat::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-30 * (1.0 + frobenius_sq(a.data(), a.size()))) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double theta = (a(q, q) - a(p, p)) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }
    SymEigen e;
    e.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) e.values[i] = a(i, i);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return e.values[x] < e.values[y]; });
    SymEigen out;
    out.values.resize(n);
    out.vectors = RMat(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = e.values[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

std::vector<double> eigen_herm_values(CMat a) {
    if (!a.square()) throw invalid_input("DimensionMismatch: eigen_herm_values");
    std::size_t n = a.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += std::norm(a(i, j));
        if (off < 1e-30 * (1.0 + frobenius_sq(a.data(), a.size()))) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                cplx apq = a(p, q);
                double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                cplx phase = apq / mag;
                double theta = (std::real(a(q, q)) - std::real(a(p, p))) / (2 * mag);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                cplx sp = s * phase;
                for (std::size_t i = 0; i < n; ++i) {
                    cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - std::conj(sp) * aiq;
                    a(i, q) = sp * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    cplx api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - sp * aqi;
                    a(q, i) = std::conj(sp) * api + c * aqi;
                }
            }
        }
    }
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = std::real(a(i, i));
    std::sort(vals.begin(), vals.end());
    return vals;
}

BlockDiagonalForm antisymmetric_normal_form(const RMat &a) {
    require_antisymmetric(a);
    std::size_t dim = a.rows();
    std::size_t n = dim / 2;
    double scale = frobenius_norm(a);
    double eps_zero = kEpsDeg * (scale + 1.0);

    // -A^2 is symmetric PSD with eigenvalues beta_k^2, each twice.
    RMat s = a * a;
    s *= -1.0;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
            double m = 0.5 * (s(i, j) + s(j, i));
            s(i, j) = s(j, i) = m;
        }
    SymEigen es = jacobi_eigen_sym(s);

    std::vector<std::vector<double>> used;  // rows already placed in o
    auto project_out = [&](std::vector<double> &w) {
        for (const auto &u : used) {
            double dot = 0;
            for (std::size_t i = 0; i < dim; ++i) dot += u[i] * w[i];
            for (std::size_t i = 0; i < dim; ++i) w[i] -= dot * u[i];
        }
    };
    auto vec_norm = [&](const std::vector<double> &w) {
        return std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    };

    // Walk eigenvectors from largest eigenvalue. Each invariant plane is
    // spanned by a unit v and u = A v / |A v|; eigenvectors already
    // consumed by a previous pair project to ~0 and are skipped. Kernel
    // directions are collected and paired among themselves at the end.
    RMat o(dim, dim);
    std::vector<double> beta;
    std::vector<std::vector<double>> kernel;
    std::size_t block = 0;
    for (std::size_t c = dim; c-- > 0 && block < n;) {
        std::vector<double> v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = es.vectors(i, c);
        project_out(v);
        double nv = vec_norm(v);
        if (nv < 1e-3) continue;
        for (auto &x : v) x /= nv;

        std::vector<double> w(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) w[i] += a(i, j) * v[j];
        double b = vec_norm(w);
        if (b <= eps_zero) {
            kernel.push_back(v);
            used.push_back(v);
            continue;
        }
        for (auto &x : w) x /= b;
        project_out(w);
        double dotwv = 0;
        for (std::size_t i = 0; i < dim; ++i) dotwv += w[i] * v[i];
        for (std::size_t i = 0; i < dim; ++i) w[i] -= dotwv * v[i];
        double nw = vec_norm(w);
        if (nw < 1e-3) continue;
        for (auto &x : w) x /= nw;

        // Rows (u, v) give the block +b J_2: u^T A v = b.
        for (std::size_t i = 0; i < dim; ++i) {
            o(2 * block, i) = w[i];
            o(2 * block + 1, i) = v[i];
        }
        used.push_back(w);
        used.push_back(v);
        beta.push_back(b);
        ++block;
    }
    for (std::size_t k = 0; k + 1 < kernel.size() && block < n; k += 2) {
        for (std::size_t i = 0; i < dim; ++i) {
            o(2 * block, i) = kernel[k][i];
            o(2 * block + 1, i) = kernel[k + 1][i];
        }
        beta.push_back(0.0);
        ++block;
    }
    if (block != n) throw numeric_error("antisymmetric_normal_form: pairing failed");

    // Recompute couplings from the exact conjugation for accuracy.
    RMat t = o * a * o.transpose();
    for (std::size_t k = 0; k < n; ++k) beta[k] = t(2 * k, 2 * k + 1);

    // Sort blocks by decreasing |beta| (stable for determinism).
    std::vector<std::size_t> ord(n);
    std::iota(ord.begin(), ord.end(), 0);
    std::stable_sort(ord.begin(), ord.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(beta[x]) > std::abs(beta[y]);
    });
    RMat o2(dim, dim);
    std::vector<double> beta2(n);
    for (std::size_t k = 0; k < n; ++k) {
        beta2[k] = beta[ord[k]];
        for (std::size_t i = 0; i < dim; ++i) {
            o2(2 * k, i) = o(2 * ord[k], i);
            o2(2 * k + 1, i) = o(2 * ord[k] + 1, i);
        }
    }

    // Make every coupling non-negative (flipping one row of a block
    // negates its coupling and det(o)), then restore det = +1 by
    // flipping the last block: a zero block absorbs the sign for free,
    // otherwise the single unavoidable sign lands on the smallest |beta|.
    for (std::size_t k = 0; k < n; ++k) {
        if (beta2[k] < 0) {
            for (std::size_t i = 0; i < dim; ++i) o2(2 * k + 1, i) = -o2(2 * k + 1, i);
            beta2[k] = -beta2[k];
        }
    }
    if (determinant(o2) < 0) {
        std::size_t k = n - 1;
        for (std::size_t i = 0; i < dim; ++i) o2(2 * k + 1, i) = -o2(2 * k + 1, i);
        beta2[k] = -beta2[k];
    }

    BlockDiagonalForm f;
    f.rotation = std::move(o2);
    f.couplings = std::move(beta2);
    return f;
}

Svd2So svd2_so(const RMat &m) {
    if (m.rows() != 2 || m.cols() != 2)
        throw invalid_input("DimensionMismatch: svd2_so expects 2x2");

    double scale = max_abs(m);
    if (scale == 0.0) {
        return {RMat::identity(2), RMat::identity(2), 0.0, 0.0};
    }

    // Right rotation diagonalizes m^T m: R(phi) G R(phi)^T = D needs
    // phi = -theta with tan(2 theta) = 2 G01 / (G00 - G11).
    RMat g = m.transpose() * m;
    double phi = -0.5 * std::atan2(2 * g(0, 1), g(0, 0) - g(1, 1));
    RMat r = rot2(phi);
    RMat k = m * r.transpose();
    double n0 = std::hypot(k(0, 0), k(1, 0));
    double n1 = std::hypot(k(0, 1), k(1, 1));
    if (n0 < n1) {
        phi += M_PI / 2;
        r = rot2(phi);
        k = m * r.transpose();
        std::swap(n0, n1);
    }

    // Left factor from the dominant column; complement keeps det = +1.
    double u0, u1;
    if (n0 > 0) {
        u0 = k(0, 0) / n0;
        u1 = k(1, 0) / n0;
    } else {
        u0 = 1;
        u1 = 0;
    }
    RMat l = RMat::from_rows({{u0, u1}, {-u1, u0}});
    RMat d = l * k;

    Svd2So out;
    out.d = d(0, 0);
    out.dp = d(1, 1);
    out.left = l;
    out.right = r;

    // Canonical sign: left(0,0) > 0, ties broken on left(0,1). Negating
    // both factors leaves the diagonal unchanged.
    double l00 = out.left(0, 0), l01 = out.left(0, 1);
    bool flip = l00 < 0 || (std::abs(l00) < 1e-14 * scale && l01 < 0);
    if (std::abs(l00) < 1e-300 && std::abs(l01) < 1e-300) flip = false;
    if (flip) {
        out.left *= -1.0;
        out.right *= -1.0;
    }
    return out;
}

RMat direct_sum(const std::vector<RMat> &blocks) {
    std::size_t r = 0, c = 0;
    for (const auto &b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    RMat m(r, c);
    std::size_t i0 = 0, j0 = 0;
    for (const auto &b : blocks) {
        m.set_block(i0, j0, b);
        i0 += b.rows();
        j0 += b.cols();
    }
    return m;
}

std::vector<double> singular_values(const RMat &m) {
    // One-sided Jacobi on columns of a working copy.
    RMat a = m.rows() >= m.cols() ? m : m.transpose();
    std::size_t rows = a.rows(), cols = a.cols();
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                double app = 0, aqq = 0, apq = 0;
                for (std::size_t i = 0; i < rows; ++i) {
                    app += a(i, p) * a(i, p);
                    aqq += a(i, q) * a(i, q);
                    apq += a(i, p) * a(i, q);
                }
                off += apq * apq;
                if (std::abs(apq) < 1e-300) continue;
                double theta = (aqq - app) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (std::size_t i = 0; i < rows; ++i) {
                    double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
            }
        }
        if (off < 1e-32 * (1.0 + frobenius_sq(a.data(), a.size()))) break;
    }
    std::vector<double> sv(cols);
    for (std::size_t p = 0; p < cols; ++p) {
        double s = 0;
        for (std::size_t i = 0; i < rows; ++i) s += a(i, p) * a(i, p);
        sv[p] = std::sqrt(s);
    }
    std::sort(sv.rbegin(), sv.rend());
    return sv;
}

RMat lu_solve(RMat a, RMat b) {
    if (!a.square() || a.rows() != b.rows())
        throw invalid_input("DimensionMismatch: lu_solve");
    std::size_t n = a.rows(), m = b.cols();
    double scale = max_abs(a);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (std::abs(a(piv, k)) < 1e-13 * (scale + 1e-300))
            throw numeric_error("SingularPencil: matrix numerically singular");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            for (std::size_t j = 0; j < m; ++j) std::swap(b(k, j), b(piv, j));
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = 0; j < m; ++j) b(i, j) -= f * b(k, j);
        }
    }
    for (std::size_t kk = n; kk-- > 0;) {
        for (std::size_t j = 0; j < m; ++j) {
            double s = b(kk, j);
            for (std::size_t i = kk + 1; i < n; ++i) s -= a(kk, i) * b(i, j);
            b(kk, j) = s / a(kk, kk);
        }
    }
    return b;
}

double determinant(RMat a) {
    if (!a.square()) throw invalid_input("DimensionMismatch: determinant");
    std::size_t n = a.rows();
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (a(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

}  // namespace fgs
