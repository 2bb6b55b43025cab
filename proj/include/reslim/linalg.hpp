/*
   Copyright 2026 The reslim Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef RESLIM_LINALG_HPP
#define RESLIM_LINALG_HPP

// Small dense complex solvers sized for interpolation systems of a few
// hundred unknowns. Row-major storage, partial pivoting, Householder QR.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "reslim/errors.hpp"

namespace reslim::detail {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

class CMatrix {
  public:
    CMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Complex& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Complex& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  private:
    size_t rows_, cols_;
    CVector data_;
};

inline CVector mat_vec(const CMatrix& a, const CVector& x) {
    CVector y(a.rows());
    for (size_t i = 0; i < a.rows(); ++i) {
        Complex acc(0.0, 0.0);
        for (size_t j = 0; j < a.cols(); ++j) acc += a.at(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

/// Solves A x = b by LU with partial pivoting plus one pass of iterative
/// refinement. Throws degenerate_support_error on a (near-)singular pivot.
inline CVector lu_solve(const CMatrix& a_in, const CVector& b_in) {
    const size_t n = a_in.rows();
    if (a_in.cols() != n || b_in.size() != n)
        throw std::invalid_argument("lu_solve: dimension mismatch");

    const auto factor_solve = [n](CMatrix a, CVector b) {
        double scale = 0.0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a.at(i, j)));
        if (scale == 0.0) throw degenerate_support_error("lu_solve: zero matrix");
        for (size_t k = 0; k < n; ++k) {
            size_t piv = k;
            double best = std::abs(a.at(k, k));
            for (size_t i = k + 1; i < n; ++i) {
                const double v = std::abs(a.at(i, k));
                if (v > best) {
                    best = v;
                    piv = i;
                }
            }
            if (best < 1e-14 * scale)
                throw degenerate_support_error("lu_solve: singular interpolation system");
            if (piv != k) {
                for (size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
                std::swap(b[k], b[piv]);
            }
            for (size_t i = k + 1; i < n; ++i) {
                const Complex f = a.at(i, k) / a.at(k, k);
                a.at(i, k) = f;
                for (size_t j = k + 1; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
                b[i] -= f * b[k];
            }
        }
        CVector x(n);
        for (size_t ii = n; ii-- > 0;) {
            Complex acc = b[ii];
            for (size_t j = ii + 1; j < n; ++j) acc -= a.at(ii, j) * x[j];
            x[ii] = acc / a.at(ii, ii);
        }
        return x;
    };

    CVector x = factor_solve(a_in, b_in);
    // One refinement pass tightens the interpolation residuals noticeably.
    CVector r(n);
    {
        CVector ax = mat_vec(a_in, x);
        for (size_t i = 0; i < n; ++i) r[i] = b_in[i] - ax[i];
    }
    CVector dx = factor_solve(a_in, r);
    for (size_t i = 0; i < n; ++i) x[i] += dx[i];
    return x;
}

/// Least-squares solution of A x ~= b (rows >= cols) via Householder QR.
inline CVector lsq_solve(CMatrix a, CVector b) {
    const size_t rows = a.rows(), cols = a.cols();
    if (b.size() != rows || rows < cols)
        throw std::invalid_argument("lsq_solve: need rows >= cols and matching rhs");

    for (size_t k = 0; k < cols; ++k) {
        double norm = 0.0;
        for (size_t i = k; i < rows; ++i) norm += std::norm(a.at(i, k));
        norm = std::sqrt(norm);
        if (norm == 0.0) throw factorization_error("lsq_solve: rank-deficient column");

        Complex alpha = a.at(k, k);
        const double aa = std::abs(alpha);
        const Complex phase = (aa == 0.0) ? Complex(1.0, 0.0) : alpha / aa;
        const Complex vk = alpha + phase * norm;

        CVector v(rows - k);
        v[0] = vk;
        for (size_t i = k + 1; i < rows; ++i) v[i - k] = a.at(i, k);
        double vnorm2 = 0.0;
        for (const Complex& c : v) vnorm2 += std::norm(c);
        if (vnorm2 == 0.0) continue;

        for (size_t j = k; j < cols; ++j) {
            Complex dot(0.0, 0.0);
            for (size_t i = k; i < rows; ++i) dot += std::conj(v[i - k]) * a.at(i, j);
            const Complex f = 2.0 * dot / vnorm2;
            for (size_t i = k; i < rows; ++i) a.at(i, j) -= f * v[i - k];
        }
        Complex dotb(0.0, 0.0);
        for (size_t i = k; i < rows; ++i) dotb += std::conj(v[i - k]) * b[i];
        const Complex fb = 2.0 * dotb / vnorm2;
        for (size_t i = k; i < rows; ++i) b[i] -= fb * v[i - k];
    }

    CVector x(cols);
    for (size_t ii = cols; ii-- > 0;) {
        Complex acc = b[ii];
        for (size_t j = ii + 1; j < cols; ++j) acc -= a.at(ii, j) * x[j];
        const Complex d = a.at(ii, ii);
        if (std::abs(d) == 0.0) throw factorization_error("lsq_solve: singular triangular factor");
        x[ii] = acc / d;
    }
    return x;
}

} // namespace reslim::detail

#endif // RESLIM_LINALG_HPP
