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

#ifndef RESLIM_TRIG_POLY_HPP
#define RESLIM_TRIG_POLY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "reslim/errors.hpp"

namespace reslim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

/// A coordinate on the unit torus [0, 1). Construction reduces modulo 1.
class TorusPoint {
  public:
    TorusPoint() : value_(0.0) {}

    explicit TorusPoint(double x) {
        if (!std::isfinite(x)) throw std::invalid_argument("TorusPoint: non-finite coordinate");
        value_ = x - std::floor(x);
        if (value_ >= 1.0) value_ = 0.0; // wrap of values a rounding step below an integer
    }

    double value() const { return value_; }

    friend bool operator==(TorusPoint a, TorusPoint b) { return a.value_ == b.value_; }
    friend bool operator<(TorusPoint a, TorusPoint b) { return a.value_ < b.value_; }

  private:
    double value_;
};

/// Wrap-around distance on the torus, in [0, 1/2].
inline double torus_distance(TorusPoint a, TorusPoint b) {
    const double d = std::abs(a.value() - b.value());
    return std::min(d, 1.0 - d);
}

/// A 1-periodic complex trigonometric polynomial of degree m, stored by its
/// 2m+1 coefficients q_{-m..m} in ascending index order; index k is the
/// coefficient of e^{i2*pi*k*w}. Immutable after construction.
class TrigPoly {
  public:
    using Complex = std::complex<double>;

    /// Zero polynomial of the given degree.
    explicit TrigPoly(int degree) : degree_(check_degree(degree)), coeffs_(2 * degree + 1) {}

    TrigPoly(int degree, std::vector<Complex> coeffs)
        : degree_(check_degree(degree)), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != static_cast<size_t>(2 * degree_ + 1))
            throw std::invalid_argument("TrigPoly: coefficient count must be 2*degree+1");
    }

    static TrigPoly constant(Complex value) { return TrigPoly(0, {value}); }

    int degree() const { return degree_; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    /// Coefficient of e^{i2*pi*k*w}; zero outside [-degree, degree].
    Complex coeff(int k) const {
        if (k < -degree_ || k > degree_) return {0.0, 0.0};
        return coeffs_[static_cast<size_t>(k + degree_)];
    }

    double coeff_abs_sum() const {
        double s = 0.0;
        for (const Complex& c : coeffs_) s += std::abs(c);
        return s;
    }

  private:
    static int check_degree(int degree) {
        if (degree < 0) throw std::invalid_argument("TrigPoly: negative degree");
        return degree;
    }

    int degree_;
    std::vector<Complex> coeffs_;
};

/// Q(w) = sum_k q_k e^{i2*pi*k*w}, evaluated by a Horner recursion in
/// z = e^{i2*pi*w} followed by the z^{-m} phase.
inline std::complex<double> eval(const TrigPoly& q, TorusPoint w) {
    const int m = q.degree();
    const double arg = kTwoPi * w.value();
    const std::complex<double> z(std::cos(arg), std::sin(arg));
    const auto& c = q.coeffs();
    std::complex<double> acc = c[static_cast<size_t>(2 * m)];
    for (int j = 2 * m - 1; j >= 0; --j) acc = acc * z + c[static_cast<size_t>(j)];
    const double back = -kTwoPi * static_cast<double>(m) * w.value();
    return acc * std::complex<double>(std::cos(back), std::sin(back));
}

/// Coefficient k of the derivative is i*2*pi*k*q_k; the degree is unchanged.
inline TrigPoly derivative(const TrigPoly& q) {
    const int m = q.degree();
    std::vector<std::complex<double>> out(static_cast<size_t>(2 * m + 1));
    for (int k = -m; k <= m; ++k)
        out[static_cast<size_t>(k + m)] =
            std::complex<double>(0.0, kTwoPi * static_cast<double>(k)) * q.coeff(k);
    return TrigPoly(m, std::move(out));
}

/// Coefficient convolution; the output degree is deg(a) + deg(b).
inline TrigPoly multiply(const TrigPoly& a, const TrigPoly& b) {
    const int ma = a.degree(), mb = b.degree();
    std::vector<std::complex<double>> out(static_cast<size_t>(2 * (ma + mb) + 1));
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    for (size_t i = 0; i < ca.size(); ++i) {
        if (ca[i] == std::complex<double>(0.0, 0.0)) continue;
        for (size_t j = 0; j < cb.size(); ++j) out[i + j] += ca[i] * cb[j];
    }
    return TrigPoly(ma + mb, std::move(out));
}

struct SupNormResult {
    double value = 0.0;
    TorusPoint argmax;
};

namespace detail {

struct ModSquareEval {
    const TrigPoly& q;
    TrigPoly dq;
    TrigPoly ddq;

    explicit ModSquareEval(const TrigPoly& poly) : q(poly), dq(derivative(poly)), ddq(derivative(dq)) {}

    double value(double w) const { return std::norm(eval(q, TorusPoint(w))); }

    // g = |Q|^2, g' = 2 Re(Q' conj Q), g'' = 2 Re(Q'' conj Q) + 2 |Q'|^2
    void derivatives(double w, double& g, double& g1, double& g2) const {
        const TorusPoint p(w);
        const auto v = eval(q, p);
        const auto d1 = eval(dq, p);
        const auto d2 = eval(ddq, p);
        g = std::norm(v);
        g1 = 2.0 * std::real(d1 * std::conj(v));
        g2 = 2.0 * std::real(d2 * std::conj(v)) + 2.0 * std::norm(d1);
    }
};

// Newton polish of a local maximum of |Q|^2 from a grid point, confined to
// one grid cell on either side. Returns the refined |Q| value at `w`.
inline double polish_modulus_max(const ModSquareEval& f, double& w, double cell) {
    const double lo = w - cell, hi = w + cell;
    double x = w;
    for (int it = 0; it < 50; ++it) {
        double g, g1, g2;
        f.derivatives(x, g, g1, g2);
        if (!(g2 < 0.0)) break; // not locally concave; keep the grid point
        double step = -g1 / g2;
        if (x + step < lo) step = lo - x;
        if (x + step > hi) step = hi - x;
        x += step;
        if (std::abs(step) < 1e-14) break;
    }
    const double refined = f.value(x);
    const double at_grid = f.value(w);
    if (refined >= at_grid) {
        w = x;
        return std::sqrt(refined);
    }
    return std::sqrt(at_grid);
}

} // namespace detail

/// Supremum of |Q| over the torus: a uniform scan of oversampling*(2m+1)
/// points, then Newton polish of the leading local maxima of |Q|^2. The
/// returned value is never below the grid maximum.
inline SupNormResult sup_norm(const TrigPoly& q, int oversampling) {
    if (oversampling < 4)
        throw std::invalid_argument("sup_norm: oversampling must be at least 4");
    const int m = q.degree();
    const int n = oversampling * (2 * m + 1);
    const detail::ModSquareEval f(q);

    std::vector<double> g(static_cast<size_t>(n));
    double gmax = 0.0;
    int imax = 0;
    for (int i = 0; i < n; ++i) {
        g[static_cast<size_t>(i)] = f.value(static_cast<double>(i) / n);
        if (g[static_cast<size_t>(i)] > gmax) {
            gmax = g[static_cast<size_t>(i)];
            imax = i;
        }
    }

    SupNormResult best;
    best.value = std::sqrt(gmax);
    best.argmax = TorusPoint(static_cast<double>(imax) / n);
    if (m == 0 || gmax == 0.0) return best;

    // Any lobe that could overtake the sampled maximum after polishing is
    // already within a few percent of it; 0.81 on the squared scale is a
    // conservative cut for oversampling >= 4.
    const double cutoff = 0.81 * gmax;
    const double cell = 1.0 / n;
    for (int i = 0; i < n; ++i) {
        const double gi = g[static_cast<size_t>(i)];
        if (gi < cutoff) continue;
        const double prev = g[static_cast<size_t>((i + n - 1) % n)];
        const double next = g[static_cast<size_t>((i + 1) % n)];
        if (gi < prev || gi < next) continue;
        double w = static_cast<double>(i) / n;
        const double refined = detail::polish_modulus_max(f, w, cell);
        if (refined > best.value) {
            best.value = refined;
            best.argmax = TorusPoint(w);
        }
    }
    return best;
}

/// Supremum of |Q| over the torus minus wrap-around balls of radius
/// `radius` around the given centers. Ball boundaries are included.
inline SupNormResult sup_norm_excluding(const TrigPoly& q, std::span<const TorusPoint> centers,
                                        double radius, int oversampling) {
    if (oversampling < 4)
        throw std::invalid_argument("sup_norm_excluding: oversampling must be at least 4");
    if (radius < 0.0 || radius >= 0.5)
        throw std::invalid_argument("sup_norm_excluding: radius must lie in [0, 1/2)");
    const int m = q.degree();
    const int n = oversampling * (2 * m + 1);
    const detail::ModSquareEval f(q);

    const auto excluded = [&](double w) {
        const TorusPoint p(w);
        for (const TorusPoint& c : centers)
            if (torus_distance(p, c) < radius) return true;
        return false;
    };

    std::vector<double> g(static_cast<size_t>(n), -1.0);
    double gmax = -1.0;
    int imax = -1;
    for (int i = 0; i < n; ++i) {
        const double w = static_cast<double>(i) / n;
        if (excluded(w)) continue;
        g[static_cast<size_t>(i)] = f.value(w);
        if (g[static_cast<size_t>(i)] > gmax) {
            gmax = g[static_cast<size_t>(i)];
            imax = i;
        }
    }

    SupNormResult best;
    // Ball boundaries: the restricted supremum often sits there.
    for (const TorusPoint& c : centers) {
        for (const double w : {c.value() + radius, c.value() - radius}) {
            const double v = std::abs(eval(q, TorusPoint(w)));
            if (v > best.value) {
                best.value = v;
                best.argmax = TorusPoint(w);
            }
        }
    }
    if (imax >= 0 && std::sqrt(gmax) > best.value) {
        best.value = std::sqrt(gmax);
        best.argmax = TorusPoint(static_cast<double>(imax) / n);
    }
    if (imax < 0 || gmax <= 0.0) return best;

    const double cutoff = 0.81 * gmax;
    const double cell = 1.0 / n;
    for (int i = 0; i < n; ++i) {
        const double gi = g[static_cast<size_t>(i)];
        if (gi < cutoff) continue;
        const double prev = g[static_cast<size_t>((i + n - 1) % n)];
        const double next = g[static_cast<size_t>((i + 1) % n)];
        if (gi < prev || gi < next) continue;
        double w = static_cast<double>(i) / n;
        const double refined = detail::polish_modulus_max(f, w, cell);
        if (!excluded(w) && refined > best.value) {
            best.value = refined;
            best.argmax = TorusPoint(w);
        }
    }
    return best;
}

/// One multiplicand of a product of sine ratios: contributes
/// log|sin(pi*numerator)| - log|sin(pi*denominator)|.
struct SineQuotient {
    double numerator = 0.0;
    double denominator = 0.0;
};

namespace detail {

inline double log_abs_sin_pi(double x) {
    const double r = x - std::round(x); // |sin(pi x)| = |sin(pi r)|, r in [-1/2, 1/2]
    if (r == 0.0) throw std::domain_error("log_eval_sine_product: sine factor vanishes");
    return std::log(std::abs(std::sin(kPi * r)));
}

} // namespace detail

/// Log-domain value of prod_j sin(pi*num_j)/sin(pi*den_j). The empty
/// product is 1, hence 0 is returned. Throws std::domain_error when any
/// factor sits exactly on a sine root.
inline double log_eval_sine_product(std::span<const SineQuotient> factors) {
    double acc = 0.0;
    for (const SineQuotient& f : factors)
        acc += detail::log_abs_sin_pi(f.numerator) - detail::log_abs_sin_pi(f.denominator);
    return acc;
}

} // namespace reslim

#endif // RESLIM_TRIG_POLY_HPP
