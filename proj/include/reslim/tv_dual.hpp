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

#ifndef RESLIM_TV_DUAL_HPP
#define RESLIM_TV_DUAL_HPP

// Forward trigonometric-moment model for atomic measures and a grid-based
// solver of the total-variation-minimal inverse problem: split-operator
// iterations on the grid restriction (the uniform grid makes the moment
// rows orthogonal, so the equality projection is exact), followed by an
// off-grid polish of the clustered support.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "reslim/errors.hpp"
#include "reslim/linalg.hpp"
#include "reslim/random.hpp"
#include "reslim/support_set.hpp"
#include "reslim/trig_poly.hpp"

namespace reslim::tvdual {

/// An atomic complex measure: support points paired with nonzero amplitudes.
struct SparseMeasure {
    SupportSet support;
    std::vector<std::complex<double>> amplitudes;

    SparseMeasure(std::vector<TorusPoint> points, std::vector<std::complex<double>> amps)
        : support(make_sorted(points, amps)), amplitudes(std::move(amps)) {
        for (const auto& c : amplitudes)
            if (std::abs(c) == 0.0) throw std::invalid_argument("SparseMeasure: zero amplitude");
    }

    double total_variation() const {
        double s = 0.0;
        for (const auto& c : amplitudes) s += std::abs(c);
        return s;
    }

  private:
    static SupportSet make_sorted(std::vector<TorusPoint>& points,
                                  std::vector<std::complex<double>>& amps) {
        if (points.size() != amps.size())
            throw std::invalid_argument("SparseMeasure: support/amplitude length mismatch");
        std::vector<size_t> order(points.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return points[a].value() < points[b].value(); });
        std::vector<TorusPoint> sp;
        std::vector<std::complex<double>> sa;
        sp.reserve(points.size());
        sa.reserve(points.size());
        for (const size_t i : order) {
            sp.push_back(points[i]);
            sa.push_back(amps[i]);
        }
        points = sp;
        amps = std::move(sa);
        return SupportSet::from_points(std::move(sp));
    }
};

/// The 2m+1 trigonometric moments y_{-m..m}, ascending index order.
struct MomentVector {
    int m;
    std::vector<std::complex<double>> values;

    MomentVector(int m_in, std::vector<std::complex<double>> v) : m(m_in), values(std::move(v)) {
        if (m < 0) throw std::invalid_argument("MomentVector: negative degree");
        if (values.size() != static_cast<size_t>(2 * m + 1))
            throw std::invalid_argument("MomentVector: need 2m+1 values");
    }

    std::complex<double> value(int k) const {
        if (k < -m || k > m) throw std::out_of_range("MomentVector: index out of range");
        return values[static_cast<size_t>(k + m)];
    }

    double norm2() const {
        double s = 0.0;
        for (const auto& v : values) s += std::norm(v);
        return std::sqrt(s);
    }
};

/// y_k = sum_j c_j e^{-i 2 pi k x_j}. The sign convention makes
/// <moments(mu), q> = integral of conj(Q) d mu under the standard inner
/// product that conjugates its second argument, and sends the Dirac mass at
/// 0 to the all-ones vector.
inline MomentVector moments(const SparseMeasure& mu, int m) {
    std::vector<std::complex<double>> y(static_cast<size_t>(2 * m + 1));
    for (int k = -m; k <= m; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (size_t j = 0; j < mu.support.size(); ++j) {
            const double phase = -kTwoPi * k * mu.support.point(j).value();
            acc += mu.amplitudes[j] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        y[static_cast<size_t>(k + m)] = acc;
    }
    return MomentVector(m, std::move(y));
}

enum class RecoveryStatus { success, failure, inconclusive };

struct SolveTvConfig {
    int max_iters = 100000;
    double eq_tol = 1e-8;          // relative moment residual to declare convergence
    double giveup_tol = 1e-6;      // above this at budget exhaustion -> inconclusive
    double shrink_scale = 0.01;    // soft threshold relative to the backprojection peak
    double relax = 1.8;            // consensus over-relaxation, in (0, 2)
    double support_tol_scale = 0.05; // success needs Hausdorff error <= scale/m
    double amplitude_tol = 1e-3;
    double prune_rel = 1e-3;       // active-cell cut relative to the largest amplitude
    int refine_max_iters = 60;
};

struct RecoveryResult {
    std::optional<SparseMeasure> estimated;
    std::optional<TrigPoly> dual_poly;
    double objective = 0.0;        // total variation of the returned estimate
    double moment_residual = 0.0;  // relative, of the returned estimate
    double dual_grid_max = 0.0;    // max |Q| over the solver grid
    double dual_sign_residual = 0.0; // max |Q(cell) - sign(c_cell)| over active cells
    std::optional<double> support_error;
    std::optional<double> amplitude_error;
    RecoveryStatus status = RecoveryStatus::inconclusive;
    long iterations = 0;
};

namespace detail {

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// Smallest power of two not below n.
inline int next_power_of_two(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place iterative radix-2 transform; no output scaling.
inline void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

class MomentOperator {
  public:
    MomentOperator(int m, int grid_n)
        : m_(m), n_(grid_n), dim_(static_cast<size_t>(2 * m + 1)), fft_(is_power_of_two(grid_n)) {
        if (fft_) return; // the transform pair needs no tables
        atoms_.resize(static_cast<size_t>(n_) * dim_);
        for (int i = 0; i < n_; ++i) {
            const double w = static_cast<double>(i) / n_;
            for (int k = -m_; k <= m_; ++k) {
                const double phase = -kTwoPi * k * w;
                atoms_[static_cast<size_t>(i) * dim_ + static_cast<size_t>(k + m_)] = {
                    std::cos(phase), std::sin(phase)};
            }
        }
    }

    // y = Phi c with y_k = sum_i c_i e^{-i 2 pi k i / n}, k in [-m, m]
    std::vector<std::complex<double>> forward(const std::vector<std::complex<double>>& c) const {
        if (fft_) {
            std::vector<std::complex<double>> spec = c;
            fft_pow2(spec, /*inverse=*/false);
            std::vector<std::complex<double>> y(dim_);
            for (int k = -m_; k <= m_; ++k)
                y[static_cast<size_t>(k + m_)] = spec[static_cast<size_t>((k % n_ + n_) % n_)];
            return y;
        }
        std::vector<std::complex<double>> y(dim_, {0.0, 0.0});
        for (int i = 0; i < n_; ++i) {
            const std::complex<double> ci = c[static_cast<size_t>(i)];
            if (ci == std::complex<double>(0.0, 0.0)) continue;
            const std::complex<double>* row = &atoms_[static_cast<size_t>(i) * dim_];
            for (size_t k = 0; k < dim_; ++k) y[k] += row[k] * ci;
        }
        return y;
    }

    // c = Phi^H v
    std::vector<std::complex<double>> adjoint(const std::vector<std::complex<double>>& v) const {
        if (fft_) {
            std::vector<std::complex<double>> spec(static_cast<size_t>(n_), {0.0, 0.0});
            for (int k = -m_; k <= m_; ++k)
                spec[static_cast<size_t>((k % n_ + n_) % n_)] = v[static_cast<size_t>(k + m_)];
            fft_pow2(spec, /*inverse=*/true);
            return spec;
        }
        std::vector<std::complex<double>> c(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            const std::complex<double>* row = &atoms_[static_cast<size_t>(i) * dim_];
            std::complex<double> acc(0.0, 0.0);
            for (size_t k = 0; k < dim_; ++k) acc += std::conj(row[k]) * v[k];
            c[static_cast<size_t>(i)] = acc;
        }
        return c;
    }

    int grid_n() const { return n_; }

  private:
    int m_;
    int n_;
    size_t dim_;
    bool fft_;
    std::vector<std::complex<double>> atoms_;
};

inline std::complex<double> soft_threshold(std::complex<double> v, double t) {
    const double a = std::abs(v);
    if (a <= t) return {0.0, 0.0};
    return v * ((a - t) / a);
}

struct RefineOutcome {
    std::vector<double> locations;
    std::vector<std::complex<double>> amplitudes;
    double residual_rel = 0.0;
};

// Nonlinear least squares on spike locations with amplitudes eliminated by
// a linear solve at every step (variable projection), real location steps.
inline RefineOutcome polish_spikes(const MomentVector& y, std::vector<double> locs, int max_iters) {
    const int m = y.m;
    const size_t dim = static_cast<size_t>(2 * m + 1);
    const double ynorm = std::max(y.norm2(), 1e-300);

    const auto solve_amps = [&](const std::vector<double>& xs, double& res_out) {
        const size_t s = xs.size();
        reslim::detail::CMatrix v(dim, s);
        reslim::detail::CVector rhs(dim);
        for (int k = -m; k <= m; ++k) {
            for (size_t j = 0; j < s; ++j) {
                const double phase = -kTwoPi * k * xs[j];
                v.at(static_cast<size_t>(k + m), j) = {std::cos(phase), std::sin(phase)};
            }
            rhs[static_cast<size_t>(k + m)] = y.value(k);
        }
        reslim::detail::CVector a = reslim::detail::lsq_solve(v, rhs);
        double r2 = 0.0;
        reslim::detail::CVector model = reslim::detail::mat_vec(v, a);
        for (size_t i = 0; i < dim; ++i) r2 += std::norm(model[i] - rhs[i]);
        res_out = std::sqrt(r2) / ynorm;
        return std::vector<std::complex<double>>(a.begin(), a.end());
    };

    RefineOutcome out;
    out.locations = std::move(locs);
    out.amplitudes = solve_amps(out.locations, out.residual_rel);

    for (int it = 0; it < max_iters; ++it) {
        const size_t s = out.locations.size();
        // Real Gauss-Newton step: stack real and imaginary rows.
        reslim::detail::CMatrix jac(2 * dim, s);
        reslim::detail::CVector neg_r(2 * dim);
        for (int k = -m; k <= m; ++k) {
            std::complex<double> model(0.0, 0.0);
            for (size_t j = 0; j < s; ++j) {
                const double phase = -kTwoPi * k * out.locations[j];
                const std::complex<double> atom(std::cos(phase), std::sin(phase));
                model += out.amplitudes[j] * atom;
                const std::complex<double> d =
                    out.amplitudes[j] * atom * std::complex<double>(0.0, -kTwoPi * k);
                jac.at(static_cast<size_t>(k + m), j) = {d.real(), 0.0};
                jac.at(dim + static_cast<size_t>(k + m), j) = {d.imag(), 0.0};
            }
            const std::complex<double> r = model - y.value(k);
            neg_r[static_cast<size_t>(k + m)] = {-r.real(), 0.0};
            neg_r[dim + static_cast<size_t>(k + m)] = {-r.imag(), 0.0};
        }
        reslim::detail::CVector step;
        try {
            step = reslim::detail::lsq_solve(jac, neg_r);
        } catch (const factorization_error&) {
            break; // flat Jacobian; keep the current iterate
        }
        double damp = 1.0;
        double best_res = out.residual_rel;
        std::vector<double> best_locs = out.locations;
        bool improved = false;
        for (int bt = 0; bt < 20; ++bt) {
            std::vector<double> trial = out.locations;
            for (size_t j = 0; j < s; ++j) trial[j] += damp * step[j].real();
            double res = 0.0;
            try {
                solve_amps(trial, res);
            } catch (const factorization_error&) {
                damp *= 0.5;
                continue;
            }
            if (res < best_res) {
                best_res = res;
                best_locs = trial;
                improved = true;
                break;
            }
            damp *= 0.5;
        }
        if (!improved) break;
        out.locations = best_locs;
        out.amplitudes = solve_amps(out.locations, out.residual_rel);
        double max_step = 0.0;
        for (size_t j = 0; j < s; ++j) max_step = std::max(max_step, std::abs(damp * step[j].real()));
        if (max_step < 1e-13) break;
    }
    return out;
}

} // namespace detail

/// Minimizes the total mass over grid measures matching the observed moments
/// (the grid restriction of the TV-minimal program), emitting the dual
/// polynomial carried by the multipliers. With `refine`, the active cells
/// are clustered and the cluster centers polished off-grid by nonlinear
/// least squares. When a ground truth is supplied the result is scored
/// against it with scale-aware tolerances.
inline RecoveryResult solve_tv(const MomentVector& y, int grid_n, bool refine,
                               const SolveTvConfig& cfg = {},
                               const SparseMeasure* truth = nullptr) {
    const int m = y.m;
    if (grid_n < 8 * (2 * m + 1))
        throw std::invalid_argument("solve_tv: grid_n must be at least 8*(2m+1)");

    const detail::MomentOperator phi(m, grid_n);
    const size_t n = static_cast<size_t>(grid_n);
    const size_t dim = static_cast<size_t>(2 * m + 1);
    const double ynorm = y.norm2();

    RecoveryResult out;
    if (ynorm == 0.0) {
        out.status = RecoveryStatus::failure;
        return out;
    }

    // Split iteration on min ||c||_1 subject to the moment equations; the
    // equality projection x - Phi^H(Phi x - y)/n is exact on the uniform grid.
    const auto project = [&](std::vector<std::complex<double>> x) {
        std::vector<std::complex<double>> r = phi.forward(x);
        for (size_t k = 0; k < dim; ++k) r[k] -= y.values[k];
        const std::vector<std::complex<double>> corr = phi.adjoint(r);
        for (size_t i = 0; i < n; ++i) x[i] -= corr[i] / static_cast<double>(grid_n);
        return x;
    };

    std::vector<std::complex<double>> z = phi.adjoint(y.values);
    double peak = 0.0;
    for (auto& zi : z) {
        zi /= static_cast<double>(grid_n);
        peak = std::max(peak, std::abs(zi));
    }
    double tau = cfg.shrink_scale * peak;
    std::vector<std::complex<double>> u(n, {0.0, 0.0});
    std::vector<std::complex<double>> c(n, {0.0, 0.0});
    std::vector<std::complex<double>> z_prev(n, {0.0, 0.0});
    std::vector<std::complex<double>> nu_last(dim, {0.0, 0.0});

    double c_res = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int it = 0; it < cfg.max_iters; ++it) {
        ++out.iterations;
        for (size_t i = 0; i < n; ++i) c[i] = detail::soft_threshold(z[i] - u[i], tau);
        std::vector<std::complex<double>> w(n);
        // Over-relaxation on the consensus point speeds the tail.
        for (size_t i = 0; i < n; ++i)
            w[i] = cfg.relax * c[i] + (1.0 - cfg.relax) * z[i] + u[i];
        std::vector<std::complex<double>> fw = phi.forward(w);
        for (size_t k = 0; k < dim; ++k)
            fw[k] = (fw[k] - y.values[k]) / static_cast<double>(grid_n);
        nu_last = fw; // the multiplier lives in range(Phi^H); this is its preimage
        const std::vector<std::complex<double>> corr = phi.adjoint(fw);
        z_prev.swap(z);
        for (size_t i = 0; i < n; ++i) {
            z[i] = w[i] - corr[i];
            u[i] = w[i] - z[i];
        }
        if ((it & 15) == 15 || it + 1 == cfg.max_iters) {
            std::vector<std::complex<double>> fc = phi.forward(c);
            double r2 = 0.0;
            for (size_t k = 0; k < dim; ++k) r2 += std::norm(fc[k] - y.values[k]);
            c_res = std::sqrt(r2) / ynorm;
            // The split residual gates the mass optimality, not just the
            // moment feasibility of the sparse iterate.
            double s2 = 0.0, z2 = 0.0;
            for (size_t i = 0; i < n; ++i) {
                s2 += std::norm(c[i] - z[i]);
                z2 += std::norm(z[i]);
            }
            const double split_res = std::sqrt(s2) / std::max(std::sqrt(z2), 1e-300);
            if (c_res <= cfg.eq_tol && split_res <= cfg.eq_tol) {
                // The multiplier must already certify optimality: below 1 in
                // modulus off the active set and equal to the signs on it.
                std::vector<std::complex<double>> nu(dim);
                for (size_t k = 0; k < dim; ++k) nu[k] = -nu_last[k] / tau;
                const std::vector<std::complex<double>> qgrid = phi.adjoint(nu);
                double cmax_now = 0.0;
                for (const auto& ci : c) cmax_now = std::max(cmax_now, std::abs(ci));
                double excess = 0.0, sign_res = 0.0;
                for (size_t i = 0; i < n; ++i) {
                    excess = std::max(excess, std::abs(qgrid[i]) - 1.0);
                    if (cmax_now > 0.0 && std::abs(c[i]) > cfg.prune_rel * cmax_now)
                        sign_res = std::max(sign_res,
                                            std::abs(qgrid[i] - c[i] / std::abs(c[i])));
                }
                if (excess <= 5e-7 && sign_res <= 5e-6) {
                    converged = true;
                    break;
                }
            }
        }
    }
    if (!converged && c_res > cfg.giveup_tol) {
        out.status = RecoveryStatus::inconclusive;
        out.moment_residual = c_res;
        return out;
    }

    // Dual polynomial from the scaled multipliers.
    std::vector<std::complex<double>> nu(dim);
    for (size_t k = 0; k < dim; ++k) nu[k] = -nu_last[k] / tau;
    out.dual_poly = TrigPoly(m, nu);
    {
        double worst = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double v = std::abs(eval(*out.dual_poly, TorusPoint(static_cast<double>(i) / grid_n)));
            worst = std::max(worst, v);
        }
        out.dual_grid_max = worst;
    }

    double cmax = 0.0;
    for (const auto& ci : c) cmax = std::max(cmax, std::abs(ci));
    if (cmax == 0.0) {
        out.status = RecoveryStatus::failure;
        out.moment_residual = c_res;
        return out;
    }
    {
        double worst = 0.0;
        for (size_t i = 0; i < n; ++i) {
            if (std::abs(c[i]) <= cfg.prune_rel * cmax) continue;
            const std::complex<double> sign = c[i] / std::abs(c[i]);
            const double v =
                std::abs(eval(*out.dual_poly, TorusPoint(static_cast<double>(i) / grid_n)) - sign);
            worst = std::max(worst, v);
        }
        out.dual_sign_residual = worst;
    }

    std::vector<TorusPoint> est_points;
    std::vector<std::complex<double>> est_amps;
    if (!refine) {
        for (size_t i = 0; i < n; ++i) {
            if (std::abs(c[i]) <= cfg.prune_rel * cmax) continue;
            est_points.emplace_back(static_cast<double>(i) / grid_n);
            est_amps.push_back(c[i]);
        }
        out.moment_residual = c_res;
    } else {
        // Cluster active cells within half a resolution width, then polish.
        std::vector<size_t> active;
        for (size_t i = 0; i < n; ++i)
            if (std::abs(c[i]) > cfg.prune_rel * cmax) active.push_back(i);
        const double merge_radius = 0.5 / std::max(1, m);
        std::vector<std::vector<size_t>> clusters;
        for (const size_t i : active) {
            if (!clusters.empty()) {
                const size_t last = clusters.back().back();
                if (static_cast<double>(i - last) / grid_n <= merge_radius) {
                    clusters.back().push_back(i);
                    continue;
                }
            }
            clusters.push_back({i});
        }
        // Wrap-around merge of the first and last clusters.
        if (clusters.size() > 1) {
            const double gap =
                (static_cast<double>(grid_n - clusters.back().back()) + clusters.front().front()) /
                grid_n;
            if (gap <= merge_radius) {
                for (const size_t i : clusters.front()) clusters.back().push_back(i);
                clusters.erase(clusters.begin());
            }
        }
        std::vector<double> centers;
        for (const auto& cl : clusters) {
            std::complex<double> mean(0.0, 0.0);
            for (const size_t i : cl) {
                const double w = static_cast<double>(i) / grid_n;
                mean += std::abs(c[i]) *
                        std::complex<double>(std::cos(kTwoPi * w), std::sin(kTwoPi * w));
            }
            double ang = std::atan2(mean.imag(), mean.real()) / kTwoPi;
            centers.push_back(ang - std::floor(ang));
        }
        detail::RefineOutcome ref = detail::polish_spikes(y, centers, cfg.refine_max_iters);
        // Oversplit clusters polish into near-duplicates that share one
        // spike's mass; merge them (and drop dust) before re-fitting.
        const double dup_radius = 0.5 * cfg.support_tol_scale / std::max(1, m);
        for (int pass = 0; pass < 3; ++pass) {
            double amax = 0.0;
            for (const auto& a : ref.amplitudes) amax = std::max(amax, std::abs(a));
            std::vector<double> kept;
            std::vector<double> weights;
            bool changed = false;
            for (size_t j = 0; j < ref.locations.size(); ++j) {
                if (std::abs(ref.amplitudes[j]) <= 1e-6 * amax) {
                    changed = true;
                    continue;
                }
                const TorusPoint pj(ref.locations[j]);
                bool merged = false;
                for (size_t i = 0; i < kept.size(); ++i) {
                    if (torus_distance(TorusPoint(kept[i]), pj) < dup_radius) {
                        const double wj = std::abs(ref.amplitudes[j]);
                        // mass-weighted circular merge of the two locations
                        const double wi = weights[i];
                        std::complex<double> mix =
                            wi * std::complex<double>(std::cos(kTwoPi * kept[i]),
                                                      std::sin(kTwoPi * kept[i])) +
                            wj * std::complex<double>(std::cos(kTwoPi * pj.value()),
                                                      std::sin(kTwoPi * pj.value()));
                        double ang = std::atan2(mix.imag(), mix.real()) / kTwoPi;
                        kept[i] = ang - std::floor(ang);
                        weights[i] = wi + wj;
                        merged = true;
                        changed = true;
                        break;
                    }
                }
                if (!merged) {
                    kept.push_back(pj.value());
                    weights.push_back(std::abs(ref.amplitudes[j]));
                }
            }
            if (!changed || kept.empty()) break;
            ref = detail::polish_spikes(y, kept, cfg.refine_max_iters);
        }
        for (size_t j = 0; j < ref.locations.size(); ++j) {
            est_points.emplace_back(ref.locations[j]);
            est_amps.push_back(ref.amplitudes[j]);
        }
        out.moment_residual = ref.residual_rel;
    }

    if (est_points.empty()) {
        out.status = RecoveryStatus::failure;
        return out;
    }
    // Guard against exact collisions produced by aggressive polishing.
    try {
        out.estimated = SparseMeasure(est_points, est_amps);
    } catch (const std::exception&) {
        out.status = RecoveryStatus::failure;
        return out;
    }
    out.objective = out.estimated->total_variation();

    if (truth != nullptr) {
        out.support_error = hausdorff_distance(out.estimated->support, truth->support);
        double amp_err = 0.0;
        for (size_t j = 0; j < truth->support.size(); ++j) {
            const TorusPoint xj = truth->support.point(j);
            size_t nearest = 0;
            double best = 1.0;
            for (size_t i = 0; i < out.estimated->support.size(); ++i) {
                const double d = torus_distance(out.estimated->support.point(i), xj);
                if (d < best) {
                    best = d;
                    nearest = i;
                }
            }
            amp_err = std::max(amp_err, std::abs(out.estimated->amplitudes[nearest] -
                                                 truth->amplitudes[j]) /
                                            std::abs(truth->amplitudes[j]));
        }
        out.amplitude_error = amp_err;
        const double support_tol = cfg.support_tol_scale / std::max(1, m);
        out.status = (*out.support_error <= support_tol && amp_err <= cfg.amplitude_tol)
                         ? RecoveryStatus::success
                         : RecoveryStatus::failure;
    } else {
        out.status = RecoveryStatus::success;
    }
    return out;
}

struct PhaseRow {
    int m = 0;
    double separation = 0.0;
    int trials = 0;
    int successes = 0;
    double success_rate = 0.0;
};

/// Success fraction of the solver over random measures with the prescribed
/// exact separation: `spikes` unit-modulus spikes in a chain of spacing
/// `separation`, phases drawn from a per-cell deterministic stream.
inline std::vector<PhaseRow> phase_transition_map(int m, std::span<const double> separations,
                                                  int trials, std::uint64_t seed,
                                                  const SolveTvConfig& cfg = {}, int spikes = 2,
                                                  int grid_n = 0) {
    if (trials < 1) throw std::invalid_argument("phase_transition_map: trials must be positive");
    if (spikes < 2) throw std::invalid_argument("phase_transition_map: need at least two spikes");
    for (const double sep : separations)
        if (!(sep > 0.0 && sep < 0.5))
            throw std::invalid_argument("phase_transition_map: separations must lie in (0, 1/2)");

    std::vector<PhaseRow> rows;
    if (grid_n <= 0) grid_n = detail::next_power_of_two(8 * (2 * m + 1));
    for (size_t si = 0; si < separations.size(); ++si) {
        const double sep = separations[si];
        PhaseRow row{m, sep, trials, 0, 0.0};
        if ((spikes - 1) * sep >= 0.5) // chain must stay separated across the wrap
            throw std::invalid_argument("phase_transition_map: spike chain wraps onto itself");
        for (int t = 0; t < trials; ++t) {
            Rng rng(derive_seed(derive_seed(seed, si), static_cast<std::uint64_t>(t)));
            const double base = rng.u01();
            std::vector<TorusPoint> pts;
            std::vector<std::complex<double>> amps;
            for (int j = 0; j < spikes; ++j) {
                pts.emplace_back(base + j * sep);
                amps.push_back(rng.unit_complex());
            }
            const SparseMeasure mu(pts, amps);
            const MomentVector y = moments(mu, m);
            const RecoveryResult res = solve_tv(y, grid_n, true, cfg, &mu);
            if (res.status == RecoveryStatus::success) ++row.successes;
        }
        row.success_rate = static_cast<double>(row.successes) / trials;
        rows.push_back(row);
    }
    return rows;
}

} // namespace reslim::tvdual

#endif // RESLIM_TV_DUAL_HPP
