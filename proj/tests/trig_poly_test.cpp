#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "oracles.hpp"
#include "reslim/certificates.hpp"
#include "reslim/converse.hpp"
#include "reslim/random.hpp"
#include "reslim/trig_poly.hpp"

using namespace reslim;
using Complex = std::complex<double>;

namespace {
TrigPoly unit_coeff(int degree, int k) {
    std::vector<Complex> c(static_cast<size_t>(2 * degree + 1));
    c[static_cast<size_t>(k + degree)] = {1.0, 0.0};
    return TrigPoly(degree, std::move(c));
}
} // namespace

TEST_CASE("torus point wraps onto [0,1)") {
    CHECK(TorusPoint(0.25).value() == doctest::Approx(0.25));
    CHECK(TorusPoint(1.25).value() == doctest::Approx(0.25));
    CHECK(TorusPoint(-0.25).value() == doctest::Approx(0.75));
    CHECK(TorusPoint(3.0).value() == 0.0);
    CHECK(TorusPoint(-1e-18).value() < 1.0);
    CHECK(TorusPoint(-1e-18).value() >= 0.0);
    CHECK(torus_distance(TorusPoint(0.1), TorusPoint(0.9)) == doctest::Approx(0.2));
    CHECK_THROWS_AS(TorusPoint(std::nan("")), std::invalid_argument);
}

TEST_CASE("eval: constant and single harmonics") {
    const TrigPoly one = TrigPoly::constant({1.0, 0.0});
    for (double w : {0.0, 0.3, 0.77, 0.999}) {
        const Complex v = eval(one, TorusPoint(w));
        CHECK(std::abs(v - Complex(1.0, 0.0)) < 1e-15);
    }
    // q_1 = 1 at w = 1/4 evaluates to e^{i pi / 2} = i
    const TrigPoly e1 = unit_coeff(1, 1);
    const Complex v = eval(e1, TorusPoint(0.25));
    CHECK(std::abs(v - Complex(0.0, 1.0)) < 1e-14);
}

TEST_CASE("eval: two-point vanishing polynomial closed form") {
    // Z for the support {0, 1/2}, normalized at 0, is cos^2(pi w).
    const SupportSet x = SupportSet::from_points({TorusPoint(0.0), TorusPoint(0.5)});
    const TrigPoly z = converse::vanishing_poly(x, 0);
    const Complex v = eval(z, TorusPoint(1.0 / 3.0));
    CHECK(std::abs(v - Complex(0.25, 0.0)) < 1e-13);
    // direct product evaluation agrees
    const double direct = std::pow(std::cos(kPi / 3.0), 2.0);
    CHECK(std::abs(v.real() - direct) < 1e-13);
}

TEST_CASE("eval is 1-periodic and near the long-double reference") {
    Rng rng(101);
    for (int rep = 0; rep < 50; ++rep) {
        const int deg = 1 + static_cast<int>(rng.next_u64() % 24);
        const TrigPoly q = oracles::random_poly(rng, deg);
        const double w = rng.u01();
        const Complex a = eval(q, TorusPoint(w));
        const Complex b = eval(q, TorusPoint(w + 1.0));
        // w+1 carries one fewer mantissa bit than w, so machine precision
        // rather than bitwise equality is the right expectation.
        CHECK(std::abs(a - b) <= 1e-12 * (1.0 + q.coeff_abs_sum()));
        const Complex ref = oracles::eval_direct(q, w);
        CHECK(std::abs(a - ref) <= 1e-13 * (1.0 + q.coeff_abs_sum()));
    }
}

TEST_CASE("conjugate-symmetric coefficients evaluate real") {
    Rng rng(202);
    for (int rep = 0; rep < 50; ++rep) {
        const int deg = 1 + static_cast<int>(rng.next_u64() % 32);
        const TrigPoly q = oracles::random_poly(rng, deg, /*hermitian=*/true);
        const double w = rng.u01();
        const Complex v = eval(q, TorusPoint(w));
        CHECK(std::abs(v.imag()) <= 1e-12 * (1.0 + q.coeff_abs_sum()));
    }
}

TEST_CASE("derivative: closed forms") {
    const TrigPoly one = TrigPoly::constant({3.0, -1.0});
    const TrigPoly done = derivative(one);
    CHECK(done.degree() == 0);
    CHECK(std::abs(done.coeff(0)) == 0.0);

    const TrigPoly e1 = unit_coeff(1, 1);
    const TrigPoly de1 = derivative(e1);
    CHECK(std::abs(de1.coeff(1) - Complex(0.0, kTwoPi)) < 1e-15);
    CHECK(std::abs(de1.coeff(0)) == 0.0);

    Rng rng(7);
    const TrigPoly q = oracles::random_poly(rng, 5);
    const TrigPoly q2 = derivative(derivative(q));
    for (int k = -5; k <= 5; ++k) {
        const Complex expected = -4.0 * kPi * kPi * k * k * q.coeff(k);
        CHECK(std::abs(q2.coeff(k) - expected) <= 1e-12 * (1.0 + std::abs(expected)));
    }
}

TEST_CASE("derivative matches central finite differences") {
    Rng rng(303);
    const double h = 1e-6;
    for (int rep = 0; rep < 40; ++rep) {
        const int deg = 1 + static_cast<int>(rng.next_u64() % 64);
        const TrigPoly q = oracles::random_poly(rng, deg);
        const TrigPoly dq = derivative(q);
        const double w = rng.u01();
        const Complex fd = (eval(q, TorusPoint(w + h)) - eval(q, TorusPoint(w - h))) / (2.0 * h);
        const Complex an = eval(dq, TorusPoint(w));
        const double scale = std::max(1.0, std::abs(an));
        CHECK(std::abs(fd - an) <= 1e-5 * scale);
    }
}

TEST_CASE("multiply: identities") {
    Rng rng(404);
    const TrigPoly q = oracles::random_poly(rng, 6);
    const TrigPoly prod = multiply(q, TrigPoly::constant({1.0, 0.0}));
    CHECK(prod.degree() == 6);
    for (int k = -6; k <= 6; ++k) CHECK(std::abs(prod.coeff(k) - q.coeff(k)) < 1e-15);

    const TrigPoly up = unit_coeff(1, 1), down = unit_coeff(1, -1);
    const TrigPoly unity = multiply(up, down);
    CHECK(unity.degree() == 2);
    CHECK(std::abs(unity.coeff(0) - Complex(1.0, 0.0)) < 1e-15);
    for (int k : {-2, -1, 1, 2}) CHECK(std::abs(unity.coeff(k)) < 1e-15);
}

TEST_CASE("multiplication-evaluation homomorphism") {
    Rng rng(505);
    for (int rep = 0; rep < 30; ++rep) {
        const int da = 1 + static_cast<int>(rng.next_u64() % 32);
        const int db = 1 + static_cast<int>(rng.next_u64() % 32);
        const TrigPoly a = oracles::random_poly(rng, da);
        const TrigPoly b = oracles::random_poly(rng, db);
        const TrigPoly ab = multiply(a, b);
        const double budget = 1e-10 * (1.0 + a.coeff_abs_sum() * b.coeff_abs_sum());
        for (int i = 0; i < 256; ++i) {
            const TorusPoint w(rng.u01());
            CHECK(std::abs(eval(ab, w) - eval(a, w) * eval(b, w)) <= budget);
        }
    }
}

TEST_CASE("multiply agrees pointwise on a 1024-point grid") {
    Rng rng(606);
    const TrigPoly a = oracles::random_poly(rng, 12);
    const TrigPoly b = oracles::random_poly(rng, 9);
    const TrigPoly ab = multiply(a, b);
    for (int i = 0; i < 1024; ++i) {
        const TorusPoint w(static_cast<double>(i) / 1024);
        const Complex lhs = eval(ab, w);
        const Complex rhs = eval(a, w) * eval(b, w);
        CHECK(std::abs(lhs - rhs) <= 1e-11 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("sup_norm: basic shapes") {
    const TrigPoly one = TrigPoly::constant({1.0, 0.0});
    CHECK(sup_norm(one, 4).value == doctest::Approx(1.0));

    const TrigPoly top = unit_coeff(5, 5); // unimodular everywhere
    const SupNormResult r = sup_norm(top, 8);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(sup_norm(one, 3), std::invalid_argument);
}

TEST_CASE("sup_norm: normalized Fejer-power kernel peaks at the origin") {
    const TrigPoly kernel = certificates::fejer_power_kernel(16, 2);
    const SupNormResult r = sup_norm(kernel, 8);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    const double d0 = torus_distance(r.argmax, TorusPoint(0.0));
    CHECK(d0 < 1e-6);
    // dense-grid confirmation
    CHECK(oracles::dense_sup(kernel, 1000000) <= r.value + 1e-9);
}

TEST_CASE("sup_norm dominates pointwise evaluations and is attained") {
    Rng rng(707);
    for (int rep = 0; rep < 10; ++rep) {
        const int deg = 2 + static_cast<int>(rng.next_u64() % 24);
        const TrigPoly q = oracles::random_poly(rng, deg);
        const SupNormResult r = sup_norm(q, 8);
        for (int i = 0; i < 1000; ++i)
            CHECK(r.value >= std::abs(eval(q, TorusPoint(rng.u01()))) - 1e-12);
        CHECK(std::abs(eval(q, r.argmax)) >= r.value - 1e-12);
    }
}

TEST_CASE("Parseval identity on the sampling grid") {
    Rng rng(808);
    for (int rep = 0; rep < 20; ++rep) {
        const int deg = 1 + static_cast<int>(rng.next_u64() % 48);
        const TrigPoly q = oracles::random_poly(rng, deg);
        const int n = 2 * (2 * deg + 1);
        double mean = 0.0;
        for (int i = 0; i < n; ++i) mean += std::norm(eval(q, TorusPoint(static_cast<double>(i) / n)));
        mean /= n;
        double sum = 0.0;
        for (const Complex& c : q.coeffs()) sum += std::norm(c);
        CHECK(std::abs(mean - sum) <= 1e-10 * (1.0 + sum));
    }
}

TEST_CASE("sup_norm_excluding honors the exclusion balls") {
    const TrigPoly kernel = certificates::fejer_power_kernel(16, 2);
    // Excluding a ball around the peak leaves the ball-boundary value.
    const std::vector<TorusPoint> centers = {TorusPoint(0.0)};
    const SupNormResult r = sup_norm_excluding(kernel, centers, 0.01, 8);
    CHECK(r.value < 1.0);
    const double boundary = std::abs(eval(kernel, TorusPoint(0.01)));
    CHECK(r.value >= boundary - 1e-12);
    CHECK_THROWS_AS(sup_norm_excluding(kernel, centers, 0.75, 8), std::invalid_argument);
}

TEST_CASE("log_eval_sine_product") {
    CHECK(log_eval_sine_product({}) == 0.0);

    const std::vector<SineQuotient> single = {{0.5, 1.0 / 6.0}};
    CHECK(log_eval_sine_product(single) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    // z~ for small parameters matches the direct linear-domain product
    const converse::ConverseParams p(9, 2.5);
    for (double w : {0.0, 0.3 * p.spacing(), 0.9 * p.spacing()}) {
        const double lg = converse::log_z_tilde(p, w);
        const double direct = oracles::z_tilde_direct(p, w);
        CHECK(std::exp(lg) == doctest::Approx(direct).epsilon(1e-10));
    }

    const std::vector<SineQuotient> at_root = {{1.0, 0.25}};
    CHECK_THROWS_AS(log_eval_sine_product(at_root), std::domain_error);
}
