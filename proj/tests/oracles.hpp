#ifndef RESLIM_TESTS_ORACLES_HPP
#define RESLIM_TESTS_ORACLES_HPP

// Independent reference computations used to pin expected values in the
// tests. Everything here is deliberately brute force and kept free of the
// library's own evaluation paths wherever the oracle checks one.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "reslim/converse.hpp"
#include "reslim/random.hpp"
#include "reslim/support_set.hpp"
#include "reslim/trig_poly.hpp"
#include "reslim/tv_dual.hpp"

namespace oracles {

constexpr double kPi = 3.14159265358979323846;

/// Direct long-double summation of sum q_k e^{i2 pi k w}; no Horner, no
/// shared code with the library eval.
inline std::complex<double> eval_direct(const reslim::TrigPoly& q, double w) {
    const int m = q.degree();
    long double re = 0.0L, im = 0.0L;
    for (int k = -m; k <= m; ++k) {
        const long double phase = 2.0L * 3.141592653589793238462643L * k * (long double)w;
        const std::complex<double> c = q.coeff(k);
        re += (long double)c.real() * std::cos(phase) - (long double)c.imag() * std::sin(phase);
        im += (long double)c.real() * std::sin(phase) + (long double)c.imag() * std::cos(phase);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

/// Dense-grid maximum of |Q|; n defaults high enough to be an oracle.
inline double dense_sup(const reslim::TrigPoly& q, int n) {
    double best = 0.0;
    for (int i = 0; i < n; ++i)
        best = std::max(best, std::abs(eval_direct(q, static_cast<double>(i) / n)));
    return best;
}

/// Linear-domain product evaluation of the translated vanishing polynomial,
/// using only std::sin. Usable while the factors stay inside double range.
inline double z_tilde_direct(const reslim::converse::ConverseParams& p, double omega) {
    const int K = p.half_count();
    const double d = p.spacing();
    double prod = 1.0;
    for (int k = 1; k <= K; ++k) {
        const double root = p.beta + k * d;
        const double num1 = std::sin(kPi * (root - omega));
        const double num2 = std::sin(kPi * (root + omega));
        const double den = std::sin(kPi * k * d);
        prod *= (num1 * num1 / (den * den)) * (num2 * num2 / (den * den));
    }
    return prod;
}

/// Three-stage brute-force minimization over real gamma of the dense-grid
/// sup of |Z * R_gamma|. Grid values of Z and cos are precomputed once, so
/// each gamma costs one pass; the stages refine around the running argmin.
struct BruteLResult {
    double value = 0.0;
    double gamma = 0.0;
};

inline BruteLResult brute_force_L(const reslim::converse::ConverseParams& p, int omega_grid,
                                  int gamma_grid, double glo, double ghi, int stages = 3) {
    using namespace reslim;
    const SupportSet x = converse::build_support(p);
    const TrigPoly z = converse::vanishing_poly(x, converse::center_index(x));
    std::vector<double> zv(static_cast<size_t>(omega_grid)), cv(static_cast<size_t>(omega_grid));
    for (int i = 0; i < omega_grid; ++i) {
        const double w = static_cast<double>(i) / omega_grid;
        zv[static_cast<size_t>(i)] = std::abs(eval_direct(z, w));
        cv[static_cast<size_t>(i)] = std::cos(2.0 * kPi * w) - 1.0;
    }
    const auto sup_at = [&](double gamma) {
        double worst = 0.0;
        for (int i = 0; i < omega_grid; ++i)
            worst = std::max(worst,
                             zv[static_cast<size_t>(i)] * std::abs(1.0 + gamma * cv[static_cast<size_t>(i)]));
        return worst;
    };
    BruteLResult best{std::numeric_limits<double>::infinity(), 0.0};
    double lo = glo, hi = ghi;
    for (int stage = 0; stage < stages; ++stage) {
        int best_i = 0;
        for (int i = 0; i <= gamma_grid; ++i) {
            const double gamma = lo + (hi - lo) * i / gamma_grid;
            const double v = sup_at(gamma);
            if (v < best.value) {
                best = {v, gamma};
                best_i = i;
            }
        }
        const double step = (hi - lo) / gamma_grid;
        lo = best.gamma - 2.0 * step;
        hi = best.gamma + 2.0 * step;
        (void)best_i;
    }
    return best;
}

/// Two-stage brute force for the window problem: min over real gamma >= 0
/// of max over [-w, w] of |(1-gamma) - gamma cos(2 pi t)|.
inline double brute_force_kappa(double omega_max, int grid = 1000) {
    std::vector<double> c(static_cast<size_t>(grid + 1));
    for (int i = 0; i <= grid; ++i) {
        const double w = omega_max * i / grid; // symmetric, half window suffices
        c[static_cast<size_t>(i)] = std::cos(2.0 * kPi * (0.5 - w));
    }
    const auto sup_at = [&](double gamma) {
        double worst = 0.0;
        for (int i = 0; i <= grid; ++i)
            worst = std::max(worst, std::abs(1.0 - gamma + gamma * c[static_cast<size_t>(i)]));
        return worst;
    };
    double lo = 0.0, hi = 2.0, best = std::numeric_limits<double>::infinity(), barg = 0.0;
    for (int stage = 0; stage < 2; ++stage) {
        for (int i = 0; i <= grid; ++i) {
            const double gamma = lo + (hi - lo) * i / grid;
            const double v = sup_at(gamma);
            if (v < best) {
                best = v;
                barg = gamma;
            }
        }
        const double step = (hi - lo) / grid;
        lo = std::max(0.0, barg - 2.0 * step);
        hi = barg + 2.0 * step;
    }
    return best;
}

/// Quadrature oracle for the moment map: each spike is smeared into a
/// periodized Gaussian on a dense grid, the Riemann sums are taken, and the
/// known Gaussian decay factor is divided back out per frequency.
inline std::vector<std::complex<double>> quadrature_moments(const reslim::tvdual::SparseMeasure& mu,
                                                            int m, int grid = 100000,
                                                            double sigma = 2e-4) {
    std::vector<double> density_re(static_cast<size_t>(grid), 0.0);
    std::vector<double> density_im(static_cast<size_t>(grid), 0.0);
    const double h = 1.0 / grid;
    for (size_t j = 0; j < mu.support.size(); ++j) {
        const double xj = mu.support.point(j).value();
        const std::complex<double> cj = mu.amplitudes[j];
        const int halfwin = static_cast<int>(std::ceil(8.0 * sigma / h));
        const int center = static_cast<int>(std::round(xj / h));
        for (int o = -halfwin; o <= halfwin; ++o) {
            const int idx = ((center + o) % grid + grid) % grid;
            const double t = idx * h;
            double dt = t - xj;
            dt -= std::round(dt); // periodize
            const double g = std::exp(-0.5 * dt * dt / (sigma * sigma)) /
                             (sigma * std::sqrt(2.0 * kPi));
            density_re[static_cast<size_t>(idx)] += cj.real() * g;
            density_im[static_cast<size_t>(idx)] += cj.imag() * g;
        }
    }
    std::vector<std::complex<double>> y(static_cast<size_t>(2 * m + 1));
    for (int k = -m; k <= m; ++k) {
        long double re = 0.0L, im = 0.0L;
        for (int i = 0; i < grid; ++i) {
            const long double phase = -2.0L * 3.141592653589793238462643L * k * (i * (long double)h);
            const long double cr = density_re[static_cast<size_t>(i)];
            const long double ci = density_im[static_cast<size_t>(i)];
            const long double cp = std::cos((double)phase), sp = std::sin((double)phase);
            re += (cr * cp - ci * sp) * h;
            im += (cr * sp + ci * cp) * h;
        }
        const double decay = std::exp(-2.0 * kPi * kPi * k * k * sigma * sigma);
        y[static_cast<size_t>(k + m)] = std::complex<double>(static_cast<double>(re),
                                                             static_cast<double>(im)) /
                                        decay;
    }
    return y;
}

/// Exhaustive search over all <=2-sparse supports on the solver grid whose
/// least-squares amplitudes reproduce the moments; returns the smallest
/// total mass found. A desk-scale stand-in for the combinatorial program.
inline double exhaustive_two_sparse_objective(const reslim::tvdual::MomentVector& y, int grid_n,
                                              double residual_tol = 1e-8) {
    using namespace reslim;
    const int m = y.m;
    const size_t dim = static_cast<size_t>(2 * m + 1);
    std::vector<std::vector<std::complex<double>>> atoms(static_cast<size_t>(grid_n));
    for (int i = 0; i < grid_n; ++i) {
        atoms[static_cast<size_t>(i)].resize(dim);
        for (int k = -m; k <= m; ++k) {
            const double phase = -2.0 * kPi * k * (static_cast<double>(i) / grid_n);
            atoms[static_cast<size_t>(i)][static_cast<size_t>(k + m)] = {std::cos(phase),
                                                                         std::sin(phase)};
        }
    }
    const double ynorm = y.norm2();
    double best = std::numeric_limits<double>::infinity();
    // singletons
    for (int i = 0; i < grid_n; ++i) {
        std::complex<double> num(0.0, 0.0);
        for (size_t k = 0; k < dim; ++k) num += std::conj(atoms[static_cast<size_t>(i)][k]) * y.values[k];
        const std::complex<double> c = num / static_cast<double>(2 * m + 1);
        double r2 = 0.0;
        for (size_t k = 0; k < dim; ++k) r2 += std::norm(c * atoms[static_cast<size_t>(i)][k] - y.values[k]);
        if (std::sqrt(r2) / ynorm < residual_tol) best = std::min(best, std::abs(c));
    }
    // pairs
    for (int i = 0; i < grid_n; ++i) {
        for (int j = i + 1; j < grid_n; ++j) {
            // 2x2 normal equations
            std::complex<double> g01(0.0, 0.0), b0(0.0, 0.0), b1(0.0, 0.0);
            for (size_t k = 0; k < dim; ++k) {
                g01 += std::conj(atoms[static_cast<size_t>(i)][k]) * atoms[static_cast<size_t>(j)][k];
                b0 += std::conj(atoms[static_cast<size_t>(i)][k]) * y.values[k];
                b1 += std::conj(atoms[static_cast<size_t>(j)][k]) * y.values[k];
            }
            const double g00 = static_cast<double>(2 * m + 1);
            const std::complex<double> det = g00 * g00 - g01 * std::conj(g01);
            if (std::abs(det) < 1e-9) continue;
            const std::complex<double> c0 = (g00 * b0 - g01 * b1) / det;
            const std::complex<double> c1 = (g00 * b1 - std::conj(g01) * b0) / det;
            double r2 = 0.0;
            for (size_t k = 0; k < dim; ++k)
                r2 += std::norm(c0 * atoms[static_cast<size_t>(i)][k] +
                                c1 * atoms[static_cast<size_t>(j)][k] - y.values[k]);
            if (std::sqrt(r2) / ynorm < residual_tol) best = std::min(best, std::abs(c0) + std::abs(c1));
        }
    }
    return best;
}

/// Random trigonometric polynomial with coefficients in the unit disc.
inline reslim::TrigPoly random_poly(reslim::Rng& rng, int degree, bool hermitian = false) {
    std::vector<std::complex<double>> c(static_cast<size_t>(2 * degree + 1));
    for (int k = 0; k <= degree; ++k) {
        const std::complex<double> v = rng.uniform(-1.0, 1.0) * rng.unit_complex();
        c[static_cast<size_t>(k + degree)] = v;
        if (k > 0) c[static_cast<size_t>(degree - k)] = hermitian ? std::conj(v)
                                                                  : rng.uniform(-1.0, 1.0) * rng.unit_complex();
    }
    if (hermitian) c[static_cast<size_t>(degree)] = {c[static_cast<size_t>(degree)].real(), 0.0};
    return reslim::TrigPoly(degree, std::move(c));
}

} // namespace oracles

#endif // RESLIM_TESTS_ORACLES_HPP
