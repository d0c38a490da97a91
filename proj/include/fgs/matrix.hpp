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

#ifndef FGS_MATRIX_HPP
#define FGS_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "fgs/errors.hpp"
#include "fgs/kernels.hpp"

namespace fgs {

/// Dense row-major matrix, value semantics. The problem sizes here are
/// desk-scale (2n x 2n covariance matrices, 2^n x 2^n Fock operators),
/// so everything is kept simple and contiguous.
template <typename T>
class Mat {
  public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Mat from_rows(std::initializer_list<std::initializer_list<T>> rows) {
        Mat m(rows.size(), rows.size() ? rows.begin()->size() : 0);
        std::size_t i = 0;
        for (const auto &r : rows) {
            std::size_t j = 0;
            for (const auto &v : r) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const {
        return a_[i * cols_ + j];
    }

    T *data() { return a_.data(); }
    const T *data() const { return a_.data(); }
    std::size_t size() const { return a_.size(); }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat block(std::size_t r0, std::size_t c0, std::size_t nr,
              std::size_t nc) const {
        Mat b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Mat &b) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Mat &operator+=(const Mat &o) {
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    Mat &operator-=(const Mat &o) {
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Mat &operator*=(T s) {
        for (auto &v : a_) v *= s;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat &b) { return a += b; }
    friend Mat operator-(Mat a, const Mat &b) { return a -= b; }
    friend Mat operator*(Mat a, T s) { return a *= s; }
    friend Mat operator*(T s, Mat a) { return a *= s; }

    bool operator==(const Mat &o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using RMat = Mat<double>;
using CMat = Mat<cplx>;

inline RMat operator*(const RMat &a, const RMat &b) {
    if (a.cols() != b.rows()) throw invalid_input("DimensionMismatch: matmul");
    RMat c(a.rows(), b.cols());
    matmul_rr(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
    return c;
}

inline CMat operator*(const CMat &a, const CMat &b) {
    if (a.cols() != b.rows()) throw invalid_input("DimensionMismatch: matmul");
    CMat c(a.rows(), b.cols());
    matmul_cc(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
    return c;
}

template <typename T>
double frobenius_norm(const Mat<T> &m) {
    return std::sqrt(frobenius_sq(m.data(), m.size()));
}

template <typename T>
double max_abs(const Mat<T> &m) {
    double r = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        r = std::max(r, std::abs(m.data()[i]));
    return r;
}

inline CMat adjoint(const CMat &m) {
    CMat t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = std::conj(m(i, j));
    return t;
}

inline CMat kron(const CMat &a, const CMat &b) {
    CMat c(a.rows() * b.rows(), a.cols() * b.cols());
    kron_acc_cc(a.data(), a.rows(), a.cols(), b.data(), b.rows(), b.cols(),
                c.data());
    return c;
}

inline cplx trace(const CMat &m) {
    cplx t = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

inline double trace(const RMat &m) {
    double t = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

inline CMat to_complex(const RMat &m) {
    CMat c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.size(); ++i) c.data()[i] = m.data()[i];
    return c;
}

}  // namespace fgs

#endif
