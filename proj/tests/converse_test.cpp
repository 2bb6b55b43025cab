#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "oracles.hpp"
#include "reslim/converse.hpp"
#include "reslim/random.hpp"

using namespace reslim;
using namespace reslim::converse;
using Complex = std::complex<double>;

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ConverseParams(8, 2.5), std::invalid_argument);  // even m
    CHECK_THROWS_AS(ConverseParams(3, 3.5), std::invalid_argument);  // m <= delta
    CHECK_THROWS_AS(ConverseParams(9, 1.0), std::invalid_argument);  // delta <= 1
    const ConverseParams p(9, 2.5);
    CHECK(p.alpha > 0.0);
    CHECK(p.alpha < 1.0);
    CHECK(p.beta == doctest::Approx(0.5 * (1.0 - p.alpha)));
}

TEST_CASE("build_support: m=3, delta=2 by hand") {
    const ConverseParams p(3, 2.0);
    const SupportSet x = build_support(p);
    REQUIRE(x.size() == 3);
    CHECK(x.point(0).value() == doctest::Approx(0.0));
    CHECK(x.point(1).value() == doctest::Approx(1.0 / 9.0));
    CHECK(x.point(2).value() == doctest::Approx(8.0 / 9.0));
    CHECK(x.min_separation() == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("build_support: symmetry and exact rational separation") {
    // delta = p/q rational: the separation must be (m q - p) / (q m^2).
    struct Case {
        int m;
        long long num, den;
    };
    for (const Case c : {Case{9, 5, 2}, Case{21, 11, 4}, Case{101, 7, 3}, Case{3, 2, 1}}) {
        const double delta = static_cast<double>(c.num) / static_cast<double>(c.den);
        const ConverseParams p(c.m, delta);
        const SupportSet x = build_support(p);
        REQUIRE(static_cast<int>(x.size()) == c.m);
        // symmetry: 1 - x is also a support point for every x
        for (size_t i = 0; i < x.size(); ++i) {
            const TorusPoint mirror(-x.point(i).value());
            double nearest = 1.0;
            for (size_t j = 0; j < x.size(); ++j)
                nearest = std::min(nearest, torus_distance(mirror, x.point(j)));
            CHECK(nearest < 1e-12);
        }
        const long long m = c.m;
        const long double rational =
            static_cast<long double>(m * c.den - c.num) / (static_cast<long double>(c.den) * m * m);
        CHECK(std::abs(x.min_separation() - static_cast<double>(rational)) <=
              1e-12 * static_cast<double>(rational));
    }
    // the worked value 13/162 for (9, 5/2)
    const SupportSet x = build_support(ConverseParams(9, 2.5));
    CHECK(x.min_separation() == doctest::Approx(13.0 / 162.0).epsilon(1e-14));
}

TEST_CASE("vanishing_poly: normalization, double roots, nonnegativity") {
    const ConverseParams p(9, 2.5);
    const SupportSet x = build_support(p);
    const size_t l = center_index(x);
    const TrigPoly z = vanishing_poly(x, l);
    CHECK(z.degree() == 8);
    CHECK(std::abs(eval(z, x.point(l)) - Complex(1.0, 0.0)) < 1e-10);
    const TrigPoly dz = derivative(z);
    for (size_t k = 0; k < x.size(); ++k) {
        if (k == l) continue;
        CHECK(std::abs(eval(z, x.point(k))) < 1e-10);
        CHECK(std::abs(eval(dz, x.point(k))) < 1e-8);
    }
    // real, nonnegative on a dense grid; coefficients conjugate-symmetric
    for (int i = 0; i < 10000; ++i) {
        const Complex v = eval(z, TorusPoint(static_cast<double>(i) / 10000));
        CHECK(v.real() > -1e-10);
        CHECK(std::abs(v.imag()) < 1e-9);
    }
    for (int k = 0; k <= z.degree(); ++k)
        CHECK(std::abs(z.coeff(-k) - std::conj(z.coeff(k))) < 1e-12 * (1.0 + std::abs(z.coeff(k))));
    CHECK_THROWS_AS(vanishing_poly(x, x.size()), std::out_of_range);
}

TEST_CASE("vanishing_poly survives large supports via rescaling") {
    const ConverseParams p(401, 3.0);
    const SupportSet x = build_support(p);
    const TrigPoly z = vanishing_poly(x, center_index(x));
    CHECK(z.degree() == 400);
    CHECK(std::abs(eval(z, x.point(center_index(x))) - Complex(1.0, 0.0)) < 1e-8);
    for (const Complex& c : z.coeffs()) CHECK(std::isfinite(std::abs(c)));
    // the peak near 1/2 agrees with the log-domain product evaluation
    const double lg = log_z_tilde(p, 0.0);
    CHECK(std::log(std::abs(eval(z, TorusPoint(0.5)))) == doctest::Approx(lg).epsilon(1e-8));
}

TEST_CASE("eta: closed forms and finite differences") {
    // symmetric support: the slope at the center vanishes
    const SupportSet xs = build_support(ConverseParams(9, 2.5));
    CHECK(std::abs(eta(xs, center_index(xs))) < 1e-9);

    // two nodes: single cotangent
    const SupportSet x2 = SupportSet::from_points({TorusPoint(0.0), TorusPoint(0.25)});
    CHECK(eta(x2, 0) == doctest::Approx(-kTwoPi).epsilon(1e-13));

    // random 5-point support: matches the slope of Z at the node
    Rng rng(99);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<TorusPoint> pts;
        for (int j = 0; j < 5; ++j) pts.emplace_back(0.2 * j + 0.02 + 0.1 * rng.u01());
        const SupportSet x = SupportSet::from_points(pts);
        const size_t l = rng.next_u64() % 5;
        const double e = eta(x, l);
        const TrigPoly z = vanishing_poly(x, l);
        const double xl = x.point(l).value();
        const double h = 1e-7;
        const double fd =
            (eval(z, TorusPoint(xl + h)).real() - eval(z, TorusPoint(xl - h)).real()) / (2.0 * h);
        CHECK(std::abs(e - fd) <= 1e-5 * std::max(1.0, std::abs(e)));
        const double slope = eval(derivative(z), x.point(l)).real();
        CHECK(std::abs(e - slope) <= 1e-8 * std::max(1.0, std::abs(e)));
    }
}

TEST_CASE("r_gamma: structure and interpolation at the origin") {
    const TrigPoly r0 = r_gamma({0.0, 0.0});
    CHECK(r0.degree() == 1);
    CHECK(std::abs(r0.coeff(0) - Complex(1.0, 0.0)) == 0.0);
    CHECK(std::abs(r0.coeff(1)) == 0.0);

    const TrigPoly rh = r_gamma({0.5, 0.0}); // (1 + cos)/2 = cos^2(pi w)
    for (double w : {0.1, 0.37, 0.5}) {
        const double expect = std::cos(kPi * w) * std::cos(kPi * w);
        CHECK(eval(rh, TorusPoint(w)).real() == doctest::Approx(expect).epsilon(1e-13));
    }

    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const Complex g = {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        const TrigPoly r = r_gamma(g);
        CHECK(std::abs(eval(r, TorusPoint(0.0)) - Complex(1.0, 0.0)) < 1e-14);
        CHECK(std::abs(eval(derivative(r), TorusPoint(0.0))) < 1e-13);
    }
}

TEST_CASE("l_numeric matches the brute-force oracle at (3, 2)") {
    const ConverseParams p(3, 2.0);
    const LResult l = l_numeric(p);
    const oracles::BruteLResult brute = oracles::brute_force_L(p, 100000, 10000, -5.0, 5.0);
    CHECK(l.value == doctest::Approx(brute.value).epsilon(1e-6));
    CHECK(l.gamma_star == doctest::Approx(brute.gamma).epsilon(1e-3));
}

TEST_CASE("l_numeric: local minimality at gamma*") {
    const ConverseParams p(9, 2.5);
    const SupportSet x = build_support(p);
    const TrigPoly z = vanishing_poly(x, center_index(x));
    const LResult l = l_numeric(p);
    const auto f = [&](double g) { return sup_norm(multiply(z, r_gamma({g, 0.0})), 8).value; };
    CHECK(f(l.gamma_star + 1e-3) >= l.value * (1.0 - 1e-10));
    CHECK(f(l.gamma_star - 1e-3) >= l.value * (1.0 - 1e-10));
}

TEST_CASE("real-gamma reduction: no complex gamma does better") {
    const ConverseParams p(5, 2.5);
    const LResult l = l_numeric(p);
    const SupportSet x = build_support(p);
    const TrigPoly z = vanishing_poly(x, center_index(x));
    for (int a = 0; a <= 20; ++a) {
        for (int b = 0; b <= 16; ++b) {
            const Complex g = {l.gamma_star - 0.1 + 0.01 * a, -0.2 + 0.025 * b};
            const double v = sup_norm(multiply(z, r_gamma(g)), 4).value;
            CHECK(v >= l.value * (1.0 - 1e-9));
        }
    }
}

TEST_CASE("l_numeric guards its evaluation budget") {
    LSearchConfig cfg;
    cfg.max_degree = 101;
    CHECK_THROWS_AS(l_numeric(ConverseParams(201, 2.5), cfg), budget_error);
}

TEST_CASE("analytic lower bound: closed form and log-domain evaluation") {
    const ConverseParams p(9, 2.0);
    // exponent 2(delta-2) vanishes at delta=2
    const double expect = std::exp(-8.0) * kPi * kPi * p.alpha * p.alpha / 2.0;
    CHECK(analytic_lower_bound(p) == doctest::Approx(expect).epsilon(1e-12));

    // monotone increasing in m for fixed delta = 3
    double prev = 0.0;
    for (int m = 101; m <= 1001; m += 100) {
        const double v = analytic_lower_bound(ConverseParams(m + (m % 2 == 0 ? 1 : 0), 3.0));
        CHECK(v > prev);
        prev = v;
    }
    CHECK(c_delta(3.0) == doctest::Approx(std::exp(-20.0)).epsilon(1e-14));
}

TEST_CASE("kappa: closed form, bound, and brute force") {
    // w_max = 1/4: c = 1/2, closed form 1/3, quadratic bound pi^2/32
    const KappaResult k = kappa_for_window(0.25);
    CHECK(k.numeric == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(k.analytic == doctest::Approx(kPi * kPi / 32.0).epsilon(1e-14));
    CHECK(k.analytic <= k.numeric);

    Rng rng(1234);
    for (int rep = 0; rep < 12; ++rep) {
        const double w = rng.uniform(0.01, 0.49);
        const double closed = kappa_for_window(w).numeric;
        const double brute = oracles::brute_force_kappa(w);
        CHECK(std::abs(closed - brute) < 1e-4);
    }
    // on the construction's own windows the quadratic bound always holds
    for (int rep = 0; rep < 20; ++rep) {
        const int m = 5 + 2 * static_cast<int>(rng.next_u64() % 60);
        const double delta = rng.uniform(1.1, std::min(4.0, m - 1.0));
        const KappaResult kk = kappa(ConverseParams(m, delta));
        CHECK(kk.numeric >= kk.analytic);
    }
}

TEST_CASE("m_delta_threshold: frozen closed-form values") {
    CHECK(*m_delta_threshold(3.0, ThresholdMode::analytic) == 9917);
    CHECK(*m_delta_threshold(2.5, ThresholdMode::analytic) == 89655);
    CHECK(*m_delta_threshold(2.2, ThresholdMode::analytic) == 730484471);
    // beyond the interior minimum the envelope freezes the curve
    const long long at35 = *m_delta_threshold(3.5, ThresholdMode::analytic);
    const long long at40 = *m_delta_threshold(4.0, ThresholdMode::analytic);
    CHECK(at35 == 8615);
    CHECK(at40 == 8615);
    CHECK_THROWS_AS(m_delta_threshold(2.0, ThresholdMode::analytic), std::invalid_argument);
}

TEST_CASE("m_delta_threshold: numeric mode and ordering") {
    const auto n25 = m_delta_threshold(2.5, ThresholdMode::numeric);
    const auto n30 = m_delta_threshold(3.0, ThresholdMode::numeric);
    REQUIRE(n25.has_value());
    REQUIRE(n30.has_value());
    CHECK(*n25 == 3);
    CHECK(*n30 == 5);
    CHECK(*n25 <= *m_delta_threshold(2.5, ThresholdMode::analytic));
    CHECK(*n30 <= *m_delta_threshold(3.0, ThresholdMode::analytic));

    ThresholdConfig tight;
    tight.numeric_cap = 3;
    CHECK_FALSE(m_delta_threshold(3.0, ThresholdMode::numeric, tight).has_value());
}

TEST_CASE("analytic curve: monotone envelope and the near-2 asymptote band") {
    long long prev = 0;
    bool first = true;
    std::vector<double> band;
    for (double d = 2.1; d <= 4.001; d += 0.1) {
        const long long t = *m_delta_threshold(d, ThresholdMode::analytic);
        if (!first) CHECK(t <= prev);
        prev = t;
        first = false;
        if (d <= 2.4001) band.push_back((d - 2.0) * std::log(static_cast<double>(t)));
    }
    double bmin = band.front(), bmax = band.front();
    for (const double v : band) {
        bmin = std::min(bmin, v);
        bmax = std::max(bmax, v);
    }
    CHECK(bmax <= 3.0 * bmin);
}

TEST_CASE("verify_facts: margins as recorded") {
    // the log-sine increment bound holds with equality at h = 0
    for (int m : {9, 99}) {
        const FactsReport f = verify_facts(m, 0.5);
        CHECK(f.fact1_min_margin >= 0.0);
        CHECK(f.fact1_min_margin < 1e-12); // equality at h = 0 is on the grid
        CHECK(f.fact2_csc_margin > 0.0);
        // the claimed cot lower bound fails at every m; the deficit ratio
        // tends to 1 from below as m grows
        CHECK(f.fact2_cot_margin < 0.0);
        CHECK(f.fact2_cot_ratio > 0.65);
        CHECK(f.fact2_cot_ratio < 1.0);
    }
    const FactsReport f3 = verify_facts(3, 0.5);
    CHECK(f3.fact2_cot_margin == doctest::Approx(-1.115956).epsilon(1e-4));
    CHECK(f3.fact2_cot_ratio == doctest::Approx(0.683880).epsilon(1e-4));
    const double r9 = verify_facts(9, 0.5).fact2_cot_ratio;
    const double r999 = verify_facts(999, 0.5).fact2_cot_ratio;
    CHECK(r999 > r9);
    CHECK_THROWS_AS(verify_facts(8, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(verify_facts(9, 1.5), std::invalid_argument);
}

TEST_CASE("pinch-window infimum and the translated evaluation") {
    const ConverseParams p(51, 2.5);
    const SupportSet x = build_support(p);
    const size_t l = center_index(x);
    for (double w : {0.1 * p.spacing(), 0.7 * p.spacing()}) {
        const double a = log_z_tilde(p, w);
        const double b = log_z(x, l, TorusPoint(0.5 - w));
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }
    const WindowInf wi = inf_z_tilde(p);
    CHECK(wi.omega >= 0.0);
    CHECK(wi.omega <= p.spacing());
    for (int i = 0; i <= 200; ++i)
        CHECK(wi.log_value <= log_z_tilde(p, p.spacing() * i / 200) + 1e-9);
}

TEST_CASE("interpolation properties of the completed polynomial") {
    Rng rng(321);
    int cases = 0;
    for (int m : {5, 9, 15, 21}) {
        for (double delta : {2.2, 2.5, 3.0}) {
            const ConverseParams p(m, delta);
            const SupportSet x = build_support(p);
            const size_t l = center_index(x);
            const TrigPoly z = vanishing_poly(x, l);
            for (int rep = 0; rep < 10; ++rep) {
                const double g = rng.uniform(-2.0, 2.0);
                const TrigPoly poly = multiply(z, r_gamma({g, 0.0}));
                const TrigPoly dpoly = derivative(poly);
                CHECK(std::abs(eval(poly, x.point(l)) - Complex(1.0, 0.0)) < 1e-8);
                for (size_t k = 0; k < x.size(); ++k) {
                    if (k != l) CHECK(std::abs(eval(poly, x.point(k))) < 1e-8);
                    CHECK(std::abs(eval(dpoly, x.point(k))) < 1e-8);
                }
                ++cases;
            }
        }
    }
    CHECK(cases == 120);
}

TEST_CASE("bound chain report on a sample cell") {
    const BoundReport rep = bound_report(ConverseParams(21, 2.5), /*with_numeric=*/true);
    REQUIRE(rep.numeric_L.has_value());
    CHECK(rep.chain_L_ge_product);
    CHECK(rep.chain_product_ge_analytic);
    CHECK(*rep.numeric_L >= rep.analytic_lower_bound);
    CHECK(rep.kappa_numeric >= rep.kappa_analytic);
}
