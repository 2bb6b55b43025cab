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

#ifndef RESLIM_CONVERSE_HPP
#define RESLIM_CONVERSE_HPP

// Worst-case equispaced supports with separation 1/m - delta/m^2, the
// squared-sine polynomial vanishing doubly on them, the degree-1 completion
// R_gamma, and the pinch objective L(m, delta) = inf_gamma ||Z * R_gamma||
// together with its closed-form lower bounds.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "reslim/errors.hpp"
#include "reslim/support_set.hpp"
#include "reslim/trig_poly.hpp"

namespace reslim::converse {

/// Parameters of the equispaced worst-case support: odd m = 2K+1 and a
/// second-order term delta > 1 with m > delta, so that the spacing
/// alpha/(m+1) = 1/m - delta/m^2 is positive. beta = (1-alpha)/2 is the
/// offset of the support's mirror image around 1/2.
struct ConverseParams {
    int m;
    double delta;
    double alpha;
    double beta;

    ConverseParams(int m_in, double delta_in) : m(m_in), delta(delta_in) {
        if (m < 3 || m % 2 == 0)
            throw std::invalid_argument("ConverseParams: m must be odd and at least 3");
        if (!(delta > 1.0))
            throw std::invalid_argument("ConverseParams: delta must exceed 1");
        if (!(static_cast<double>(m) > delta))
            throw std::invalid_argument("ConverseParams: m must exceed delta");
        const double md = static_cast<double>(m);
        alpha = (md + 1.0) * (md - delta) / (md * md);
        beta = 0.5 * (1.0 - alpha);
    }

    int half_count() const { return (m - 1) / 2; } // K

    /// Spacing of the support = its minimal separation = half-width of the
    /// window around 1/2 on which the vanishing polynomial is pinched.
    double spacing() const { return alpha / (m + 1.0); }
};

/// The m equispaced points k*alpha/(m+1), k = -K..K, wrapped onto [0, 1).
inline SupportSet build_support(const ConverseParams& p) {
    const int K = p.half_count();
    const double d = p.spacing();
    std::vector<TorusPoint> pts;
    pts.reserve(static_cast<size_t>(p.m));
    for (int k = -K; k <= K; ++k) pts.emplace_back(static_cast<double>(k) * d);
    return SupportSet::from_points(std::move(pts));
}

/// Index of the point 0 in build_support's (sorted) output.
inline size_t center_index(const SupportSet& x) { return x.index_nearest_origin(); }

inline double log_z(const SupportSet& x, size_t l, TorusPoint omega);

/// The minimal polynomial with double roots on X minus {x_l}, normalized to
/// 1 at x_l:  Z(w) = prod_{k != l} sin^2(pi(w - x_k)) / sin^2(pi(x_l - x_k)).
/// Degree s-1. Sequential coefficient convolution of the factors is
/// hopelessly ill-conditioned for clustered supports (partial products
/// overshoot the final scale by hundreds of orders of magnitude), so the
/// coefficients are recovered instead by exact DFT quadrature of log-domain
/// point evaluations, then Hermitian-symmetrized and renormalized at x_l.
inline TrigPoly vanishing_poly(const SupportSet& x, size_t l) {
    const size_t s = x.size();
    if (l >= s) throw std::out_of_range("vanishing_poly: node index out of range");
    if (s == 1) return TrigPoly::constant({1.0, 0.0});

    const int deg = static_cast<int>(s) - 1;
    const int n = 2 * deg + 1; // exact quadrature for degree-deg polynomials
    std::vector<double> values(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        try {
            values[static_cast<size_t>(i)] =
                std::exp(log_z(x, l, TorusPoint(static_cast<double>(i) / n)));
        } catch (const std::domain_error&) {
            values[static_cast<size_t>(i)] = 0.0; // grid point sits on a double root
        }
    }

    // Extended-precision accumulation: the quadrature terms span the full
    // value range of Z, and plain double sums would leave a noise floor
    // around 1e-6 of the leading coefficient.
    // Extended-precision accumulation with exactly reduced phases: the raw
    // arguments 2*pi*k*i/n reach thousands of radians and their rounding
    // correlates across coefficients; reducing k*i modulo n first keeps
    // every argument below 2*pi.
    std::vector<std::complex<double>> coeffs(static_cast<size_t>(2 * deg + 1));
    for (int k = 0; k <= deg; ++k) {
        long double re = 0.0L, im = 0.0L;
        for (int i = 0; i < n; ++i) {
            const long long r = static_cast<long long>(k) * i % n;
            const double phase = -kTwoPi * static_cast<double>(r) / n;
            re += static_cast<long double>(values[static_cast<size_t>(i)]) * std::cos(phase);
            im += static_cast<long double>(values[static_cast<size_t>(i)]) * std::sin(phase);
        }
        const std::complex<double> acc(static_cast<double>(re / n), static_cast<double>(im / n));
        coeffs[static_cast<size_t>(k + deg)] = acc;
        coeffs[static_cast<size_t>(deg - k)] = std::conj(acc); // Z is real-valued
    }
    TrigPoly z(deg, std::move(coeffs));

    // The node value is a heavily cancelling coefficient sum (it must come
    // out near 1 from terms as large as the peak coefficient); renormalize
    // with an extended-precision direct summation.
    long double node_re = 0.0L;
    {
        const long double pi_ld = 3.141592653589793238462643L;
        const long double xl_ld = static_cast<long double>(x.point(l).value());
        for (int k = -deg; k <= deg; ++k) {
            const long double ph = 2.0L * pi_ld * k * xl_ld;
            const std::complex<double> c = z.coeff(k);
            node_re += static_cast<long double>(c.real()) * cosl(ph) -
                       static_cast<long double>(c.imag()) * sinl(ph);
        }
    }
    const double at_node = static_cast<double>(node_re);
    if (!(at_node > 0.0))
        throw degenerate_support_error("vanishing_poly: normalization node evaluates to zero");
    std::vector<std::complex<double>> scaled = z.coeffs();
    for (auto& c : scaled) c /= at_node;
    return TrigPoly(deg, std::move(scaled));
}

/// Slope of the vanishing polynomial at its normalization node:
/// eta_l = Z'(x_l) = 2*pi * sum_{k != l} cot(pi(x_l - x_k)).
inline double eta(const SupportSet& x, size_t l) {
    const size_t s = x.size();
    if (l >= s) throw std::out_of_range("eta: node index out of range");
    const double xl = x.point(l).value();
    double acc = 0.0;
    for (size_t k = 0; k < s; ++k) {
        if (k == l) continue;
        acc += 1.0 / std::tan(kPi * (xl - x.point(k).value()));
    }
    return kTwoPi * acc;
}

/// R_gamma(w) = (1 - gamma) + gamma * cos(2*pi*w); the only degree-1 shape
/// with R(0) = 1 and R'(0) = 0.
inline TrigPoly r_gamma(std::complex<double> gamma) {
    return TrigPoly(1, {0.5 * gamma, 1.0 - gamma, 0.5 * gamma});
}

/// log Z_{X,l}(w); throws std::domain_error at the roots.
inline double log_z(const SupportSet& x, size_t l, TorusPoint w) {
    const size_t s = x.size();
    if (l >= s) throw std::out_of_range("log_z: node index out of range");
    std::vector<SineQuotient> factors;
    factors.reserve(2 * (s - 1));
    const double xl = x.point(l).value();
    for (size_t k = 0; k < s; ++k) {
        if (k == l) continue;
        const double xk = x.point(k).value();
        factors.push_back({w.value() - xk, xl - xk});
        factors.push_back({w.value() - xk, xl - xk});
    }
    return log_eval_sine_product(factors);
}

/// log of the translate Z~(w) = Z(1/2 - w) on the pinch window, written in
/// the mirrored-root form so every sine argument stays in (0, 1/2].
inline double log_z_tilde(const ConverseParams& p, double omega) {
    const int K = p.half_count();
    const double d = p.spacing();
    std::vector<SineQuotient> factors;
    factors.reserve(static_cast<size_t>(4 * K));
    for (int k = 1; k <= K; ++k) {
        const double root = p.beta + k * d;
        factors.push_back({root - omega, k * d});
        factors.push_back({root - omega, k * d});
        factors.push_back({root + omega, k * d});
        factors.push_back({root + omega, k * d});
    }
    return log_eval_sine_product(factors);
}

struct WindowInf {
    double log_value = 0.0;
    double omega = 0.0;
};

/// Infimum of Z~ over the window [-alpha/(m+1), alpha/(m+1)], located by a
/// grid scan plus golden-section refinement. Z~ is even, so only [0, edge]
/// is scanned.
inline WindowInf inf_z_tilde(const ConverseParams& p, int grid = 1024) {
    if (grid < 8) throw std::invalid_argument("inf_z_tilde: grid too coarse");
    const double edge = p.spacing();
    const auto f = [&](double w) { return log_z_tilde(p, w); };

    double best = f(0.0);
    int best_i = 0;
    for (int i = 1; i <= grid; ++i) {
        const double v = f(edge * i / grid);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    double lo = edge * std::max(0, best_i - 1) / grid;
    double hi = edge * std::min(grid, best_i + 1) / grid;
    const double invphi = 0.6180339887498949;
    double a = hi - invphi * (hi - lo), b = lo + invphi * (hi - lo);
    double fa = f(a), fb = f(b);
    while (hi - lo > 1e-14 * std::max(1.0, edge)) {
        if (fa <= fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - invphi * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + invphi * (hi - lo);
            fb = f(b);
        }
    }
    const double wmin = 0.5 * (lo + hi);
    const double fmin = f(wmin);
    if (fmin < best) return {fmin, wmin};
    return {best, edge * best_i / grid};
}

/// exp(-4 (1 + (delta-1)^2)); the constant in the closed-form floor of Z~.
inline double c_delta(double delta) {
    return std::exp(-4.0 * (1.0 + (delta - 1.0) * (delta - 1.0)));
}

/// log of the closed-form lower bound on L(m, delta), for real-valued m.
/// Stays in the log domain throughout so m far beyond double-square range
/// is fine.
inline double log_analytic_lower_bound(double m, double delta) {
    if (!(m > delta)) throw std::invalid_argument("log_analytic_lower_bound: requires m > delta");
    const double log_alpha = std::log(m + 1.0) + std::log(m - delta) - 2.0 * std::log(m);
    return -4.0 * (1.0 + (delta - 1.0) * (delta - 1.0)) + std::log(kPi * kPi / 2.0) +
           2.0 * log_alpha + 2.0 * (delta - 2.0) * std::log(m + 1.0);
}

/// C(delta) * pi^2 * alpha^2 / 2 * (m+1)^{2(delta-2)}, evaluated in the log
/// domain.
inline double analytic_lower_bound(const ConverseParams& p) {
    return std::exp(log_analytic_lower_bound(static_cast<double>(p.m), p.delta));
}

struct KappaResult {
    double numeric = 0.0;  // closed form (1-c)/(1+c), c = cos^2(pi*w_max)
    double analytic = 0.0; // pi^2 * w_max^2 / 2
};

/// Best achievable sup of |(1-gamma) - gamma*cos(2*pi*w)| on [-w_max, w_max]
/// over gamma, together with its small-window quadratic lower bound.
inline KappaResult kappa_for_window(double omega_max) {
    if (!(omega_max > 0.0) || !(omega_max <= 0.5))
        throw std::invalid_argument("kappa_for_window: omega_max must lie in (0, 1/2]");
    const double c = std::cos(kPi * omega_max) * std::cos(kPi * omega_max);
    return {(1.0 - c) / (1.0 + c), kPi * kPi * omega_max * omega_max / 2.0};
}

inline KappaResult kappa(const ConverseParams& p) { return kappa_for_window(p.spacing()); }

struct LSearchConfig {
    int oversampling = 8;
    double gamma_tol = 1e-10;
    int max_degree = 2001;
    double bracket_lo = -1.0;
    double bracket_hi = 2.0;
    double bracket_limit = 10.0;
    int max_widenings = 3;
};

struct LResult {
    double value = 0.0;
    double gamma_star = 0.0;
};

namespace detail {

inline double golden_min(const std::function<double(double)>& f, double lo, double hi, double tol,
                         double& xmin) {
    const double invphi = 0.6180339887498949;
    double a = hi - invphi * (hi - lo), b = lo + invphi * (hi - lo);
    double fa = f(a), fb = f(b);
    while (hi - lo > tol) {
        if (fa <= fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - invphi * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + invphi * (hi - lo);
            fb = f(b);
        }
    }
    xmin = 0.5 * (lo + hi);
    return f(xmin);
}

} // namespace detail

/// L(m, delta) = inf over gamma of sup |Z_{m,delta} * R_gamma|. Because Z is
/// nonnegative and cos(2*pi*w) real, |R|^2 splits as
/// ((1-Re g) + Re g * c)^2 + (Im g)^2 (1-c)^2, so the infimum over complex
/// gamma is attained at real gamma; the outer search is a golden section
/// over a sampled, unimodality-checked bracket.
inline LResult l_numeric(const ConverseParams& p, const LSearchConfig& cfg = {}) {
    if (p.m > cfg.max_degree)
        throw budget_error("l_numeric: degree exceeds the configured evaluation cap");

    const SupportSet x = build_support(p);
    const TrigPoly z = vanishing_poly(x, center_index(x));
    const auto objective = [&](double gamma) {
        return sup_norm(multiply(z, r_gamma({gamma, 0.0})), cfg.oversampling).value;
    };

    double lo = cfg.bracket_lo, hi = cfg.bracket_hi;
    const int samples = 9;
    for (int attempt = 0;; ++attempt) {
        std::vector<double> vals(samples);
        int imin = 0;
        for (int i = 0; i < samples; ++i) {
            vals[static_cast<size_t>(i)] = objective(lo + (hi - lo) * i / (samples - 1));
            if (vals[static_cast<size_t>(i)] < vals[static_cast<size_t>(imin)]) imin = i;
        }
        bool interior = imin != 0 && imin != samples - 1;
        if (interior) {
            // Unimodality probe: after the first rise past the minimum the
            // samples must never fall again (up to roundoff).
            const double slack = 1e-12 * vals[static_cast<size_t>(imin)];
            bool unimodal = true;
            for (int i = imin + 1; i + 1 < samples; ++i)
                if (vals[static_cast<size_t>(i + 1)] < vals[static_cast<size_t>(i)] - slack) unimodal = false;
            for (int i = imin - 1; i > 0; --i)
                if (vals[static_cast<size_t>(i - 1)] < vals[static_cast<size_t>(i)] - slack) unimodal = false;
            if (unimodal) break;
        }
        if (attempt >= cfg.max_widenings)
            throw bracket_error("l_numeric: no interior minimizer within the widened bracket");
        const double mid = 0.5 * (lo + hi), half = (hi - lo);
        lo = std::max(-cfg.bracket_limit, mid - half);
        hi = std::min(cfg.bracket_limit, mid + half);
    }

    LResult r;
    r.value = detail::golden_min(objective, lo, hi, cfg.gamma_tol, r.gamma_star);
    return r;
}

enum class ThresholdMode { analytic, numeric };

struct ThresholdConfig {
    long long numeric_cap = 2001;
    LSearchConfig l_search;
    int analytic_grid = 64; // samples for the inner minimization over the second-order term
};

namespace detail {

// Real-valued crossing point of the closed-form bound for a fixed delta:
// the m solving log_analytic_lower_bound(m, delta) = 0 (log-domain bisection).
// Closed-form log bound as a function of t = log m; beyond t = 40 the
// alpha correction is below machine precision and the expression is linear
// in t, which keeps crossings representable far past double range for m.
inline double log_bound_at_log_m(double t, double delta) {
    if (t < 40.0) return log_analytic_lower_bound(std::exp(t), delta);
    return -4.0 * (1.0 + (delta - 1.0) * (delta - 1.0)) + std::log(kPi * kPi / 2.0) +
           2.0 * (delta - 2.0) * t;
}

// log of the real-valued crossing point of the closed-form bound for a
// fixed delta: the t solving log_bound_at_log_m(t, delta) = 0.
inline double analytic_crossing_log(double delta) {
    double m_lo = delta + 0.25;
    const double t_hi_limit = 1e7;
    if (log_bound_at_log_m(t_hi_limit, delta) < 0.0)
        throw budget_error("m_delta_threshold: bound never crosses 1 in range");
    // The bound drops to -inf as m approaches delta, so a valid lower
    // bracket always exists on (delta, m_lo].
    for (int guard = 0; log_analytic_lower_bound(m_lo, delta) >= 0.0; ++guard) {
        m_lo = delta + (m_lo - delta) / 4.0;
        if (guard > 200) throw budget_error("m_delta_threshold: bisection bracket failure");
    }
    double t_lo = std::log(m_lo), t_hi = t_hi_limit;
    for (int it = 0; it < 200; ++it) {
        const double t = 0.5 * (t_lo + t_hi);
        if (log_bound_at_log_m(t, delta) >= 0.0)
            t_hi = t;
        else
            t_lo = t;
    }
    return t_hi;
}

} // namespace detail

/// Smallest odd m beyond which the construction certifiably defeats the
/// recovery program. Analytic mode (delta > 2 only): smallest odd m whose
/// closed-form bound exceeds 1 for SOME second-order term delta'' <= delta;
/// since a support separated by 1/m - delta''/m^2 is also separated by
/// 1/m - delta/m^2, this keeps the curve a monotone nonincreasing upper
/// bound. Numeric mode: smallest odd m <= cap with L_numeric > 1 (nullopt
/// when the cap is reached first).
inline std::optional<long long> m_delta_threshold(double delta, ThresholdMode mode,
                                                  const ThresholdConfig& cfg = {}) {
    if (mode == ThresholdMode::numeric) {
        if (!(delta > 1.0)) throw std::invalid_argument("m_delta_threshold: numeric mode needs delta > 1");
        long long m = static_cast<long long>(std::floor(delta)) + 1;
        if (m % 2 == 0) ++m;
        if (m < 3) m = 3;
        for (; m <= cfg.numeric_cap; m += 2) {
            if (!(static_cast<double>(m) > delta)) continue;
            if (l_numeric(ConverseParams(static_cast<int>(m), delta), cfg.l_search).value > 1.0) return m;
        }
        return std::nullopt;
    }

    if (!(delta > 2.0))
        throw std::invalid_argument("m_delta_threshold: analytic mode needs delta > 2");

    // Inner minimization of the crossing point over delta'' in (2, delta]:
    // coarse scan, then golden refinement around the best sample.
    const double d_lo = 2.0 + 1e-6;
    double best_dd = delta, best_cross_log = detail::analytic_crossing_log(delta);
    if (delta > d_lo) {
        const int n = cfg.analytic_grid;
        for (int i = 0; i <= n; ++i) {
            const double dd = d_lo + (delta - d_lo) * i / n;
            const double cross = detail::analytic_crossing_log(dd);
            if (cross < best_cross_log) {
                best_cross_log = cross;
                best_dd = dd;
            }
        }
        const double span = (delta - d_lo) / cfg.analytic_grid;
        double lo = std::max(d_lo, best_dd - span), hi = std::min(delta, best_dd + span);
        double arg = best_dd;
        const double refined = detail::golden_min(
            [](double dd) { return detail::analytic_crossing_log(dd); }, lo, hi, 1e-9, arg);
        if (refined < best_cross_log) {
            best_cross_log = refined;
            best_dd = arg;
        }
    }

    if (best_cross_log > std::log(8.8e15))
        throw budget_error("m_delta_threshold: crossing exceeds the exact integer range");
    const double best_cross = std::exp(best_cross_log);
    const auto hit = [&](long long mm) {
        const double md = static_cast<double>(mm);
        return (md > best_dd && log_analytic_lower_bound(md, best_dd) > 0.0) ||
               (md > delta && log_analytic_lower_bound(md, delta) > 0.0);
    };
    // The log bisection leaves a few hundred integers of slack at the top of
    // the range; walk up to the first hit, then back down to the smallest.
    long long m = static_cast<long long>(std::floor(best_cross)) - 3;
    if (m < 3) m = 3;
    if (m % 2 == 0) ++m;
    for (long steps = 0; !hit(m); ++steps) {
        m += 2;
        if (steps > 10'000'000)
            throw budget_error("m_delta_threshold: odd scan overran the crossing estimate");
    }
    while (m - 2 >= 3 && hit(m - 2)) m -= 2;
    return m;
}

struct FactsReport {
    double fact1_min_margin = 0.0; // min over the (t, h) grid of lhs - rhs
    double fact2_cot_margin = 0.0; // sum cot - claimed lower bound (signed)
    double fact2_cot_ratio = 0.0;  // sum cot / claimed lower bound
    double fact2_csc_margin = 0.0; // claimed upper bound - sum csc^2 (signed)
};

/// Numeric margins of the two auxiliary inequalities behind the closed-form
/// bound: (1) log-sine increments dominate their second-order expansion on
/// t + h <= pi/2, and (2) the cot / csc^2 Riemann-sum estimates at
/// arguments pi*k*alpha/(m+1). Margins are reported signed; the cot bound
/// is known to come out negative (see the ratio field and the tests).
inline FactsReport verify_facts(int m, double alpha, int grid = 64) {
    if (m < 3 || m % 2 == 0) throw std::invalid_argument("verify_facts: m must be odd and >= 3");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("verify_facts: alpha must lie in (0, 1)");

    FactsReport rep;
    rep.fact1_min_margin = std::numeric_limits<double>::infinity();
    const double half_pi = kPi / 2.0;
    for (int i = 1; i <= grid; ++i) {
        const double t = half_pi * i / (grid + 1);
        for (int j = 0; j <= grid; ++j) {
            const double h = (half_pi - t) * j / grid;
            const double s = std::sin(t);
            const double lhs = std::log(std::sin(t + h)) - std::log(s);
            const double rhs = h * std::cos(t) / s - 0.5 * h * h / (s * s);
            rep.fact1_min_margin = std::min(rep.fact1_min_margin, lhs - rhs);
        }
    }

    const int K = (m - 1) / 2;
    double sum_cot = 0.0, sum_csc2 = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double a = kPi * k * alpha / (m + 1.0);
        const double s = std::sin(a);
        sum_cot += std::cos(a) / s;
        sum_csc2 += 1.0 / (s * s);
    }
    const double cot_claim = (m + 1.0) / (kPi * alpha) * std::log(m + 1.0);
    const double csc_claim = 2.0 * (m + 1.0) * (m + 1.0) / (kPi * kPi * alpha * alpha);
    rep.fact2_cot_margin = sum_cot - cot_claim;
    rep.fact2_cot_ratio = sum_cot / cot_claim;
    rep.fact2_csc_margin = csc_claim - sum_csc2;
    return rep;
}

struct BoundReport {
    int m = 0;
    double delta = 0.0;
    std::optional<double> numeric_L;
    std::optional<double> gamma_star;
    double log_inf_z_tilde = 0.0;
    double inf_z_tilde_omega = 0.0;
    double kappa_numeric = 0.0;
    double kappa_analytic = 0.0;
    double c_delta = 0.0;
    double analytic_lower_bound = 0.0;
    bool chain_L_ge_product = false;      // L >= inf Z~ * kappa (when L present)
    bool chain_product_ge_analytic = false; // inf Z~ * kappa >= closed-form bound
};

/// Every quantity in the bound chain for one (m, delta) cell; the two chain
/// links are evaluated in the log domain with a 1e-9 relative slack.
inline BoundReport bound_report(const ConverseParams& p, bool with_numeric,
                                const LSearchConfig& cfg = {}) {
    BoundReport rep;
    rep.m = p.m;
    rep.delta = p.delta;
    const WindowInf wi = inf_z_tilde(p);
    rep.log_inf_z_tilde = wi.log_value;
    rep.inf_z_tilde_omega = wi.omega;
    const KappaResult k = kappa(p);
    rep.kappa_numeric = k.numeric;
    rep.kappa_analytic = k.analytic;
    rep.c_delta = c_delta(p.delta);
    rep.analytic_lower_bound = analytic_lower_bound(p);

    const double log_product = wi.log_value + std::log(k.numeric);
    const double log_analytic = log_analytic_lower_bound(static_cast<double>(p.m), p.delta);
    rep.chain_product_ge_analytic = log_product >= log_analytic - 1e-9;
    if (with_numeric) {
        const LResult l = l_numeric(p, cfg);
        rep.numeric_L = l.value;
        rep.gamma_star = l.gamma_star;
        rep.chain_L_ge_product = std::log(l.value) >= log_product - 1e-9;
    }
    return rep;
}

} // namespace reslim::converse

#endif // RESLIM_CONVERSE_HPP
