#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "friction/errors.hpp"
#include "friction/kernels.hpp"
#include "friction/oscillatory.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace friction;

namespace {

constexpr double pi = std::numbers::pi;

ModelParams free_params() {
    ModelParams p;
    p.g = 0.0;
    return p;
}

std::vector<double> uniform(double dt, double t_max) {
    std::vector<double> t;
    const int n = static_cast<int>(std::llround(t_max / dt));
    for (int i = 0; i <= n; ++i) t.push_back(i * dt);
    return t;
}

}  // namespace

TEST_CASE("Filon moments and integrals against closed forms") {
    std::complex<double> mu[4];
    for (double w : {0.0, 0.3, 5.0, 100.0}) {
        filon_moments(0.7, w, mu);
        // mu_0 = (e^{i w h} - 1) / (i w), limit h at w = 0.
        const std::complex<double> ref = w == 0 ? 0.7 : (std::polar(1.0, 0.7 * w) - 1.0) / std::complex<double>(0, w);
        CHECK(std::abs(mu[0] - ref) < 1e-14);
    }
    // Cubic data are integrated exactly at any frequency.
    std::vector<double> x, y;
    for (int i = 0; i <= 30; ++i) {
        const double xi = std::pow(i / 30.0, 1.7) * 3.0;
        x.push_back(xi);
        y.push_back(1 - 2 * xi + 0.5 * xi * xi * xi);
    }
    const FilonTable t(x, y);
    CHECK(t.integrate() == doctest::Approx(3 - 9 + 0.125 * 81).epsilon(1e-13));
    // int_0^3 (1 - 2x + x^3/2) cos(40 x) dx by integration by parts.
    const double w = 40;
    auto P = [](double v) { return 1 - 2 * v + 0.5 * v * v * v; };
    auto P1 = [](double v) { return -2 + 1.5 * v * v; };
    auto P2 = [](double v) { return 3.0 * v; };
    const double P3 = 3.0;
    auto anti = [&](double v) {
        return P(v) * std::sin(w * v) / w + P1(v) * std::cos(w * v) / (w * w) - P2(v) * std::sin(w * v) / (w * w * w) -
               P3 * std::cos(w * v) / (w * w * w * w);
    };
    CHECK(t.integrate(w).real() == doctest::Approx(anti(3.0) - anti(0.0)).epsilon(1e-11));
}

TEST_CASE("G against the Dawson/erfc closed form (Gaussian sigma = 1)") {
    // Values from 30-digit quadrature, cross-checked with
    // J(s) = -sqrt(pi) s F(s) + (pi s / 2) e^{s^2} erfc(s), F Dawson's integral.
    const auto d = DensityModel::from_potential(make_default_potential(1.0));
    struct Ref { double k, re, im; };
    for (const Ref& r : {Ref{0.01, -0.3257133398822859, 0.25804683265888386},
                         Ref{1.0, -1.210274850551987, -0.59077520688888599},
                         Ref{4.0, -0.12051207345667618, -0.55684663833843455},
                         Ref{-2.25, -0.52012432530359094, 0.79767087136015425}}) {
        const cplx G = g_function_free(r.k, d);
        CHECK(G.real() == doctest::Approx(r.re).epsilon(1e-11));
        CHECK(G.imag() == doctest::Approx(r.im).epsilon(1e-11));
    }
    const auto d4 = DensityModel::from_potential(make_default_potential(2.0));
    const cplx G4 = g_function_free(0.5, d4);
    CHECK(G4.real() == doctest::Approx(-0.3148288543759947).epsilon(1e-11));
    CHECK(G4.imag() == doctest::Approx(-0.40578047893097073).epsilon(1e-11));
}

TEST_CASE("G small-k law from both sides and G(0) = 0") {
    const auto W = make_default_potential(1.0);
    const auto p = free_params();
    const double k = 1e-4;
    const cplx gp = g_function(k, p, W) / std::sqrt(k);
    const cplx gm = g_function(-k, p, W) / std::sqrt(k);
    const double mod = std::sqrt(2.0) * pi * pi / 3;
    CHECK(std::abs(std::abs(gp) / mod - 1) < 0.02);
    CHECK(std::abs(std::arg(gp) - 3 * pi / 4) < 0.02);
    CHECK(std::abs(std::abs(gm) / mod - 1) < 0.02);
    CHECK(std::abs(std::arg(gm) + 3 * pi / 4) < 0.02);
    CHECK(g_function(0.0, p, W) == cplx(0.0, 0.0));
    // Convergence of the ratio as k -> 0.
    const cplx g8 = g_function(1e-8, p, W) / 1e-4;
    CHECK(std::abs(g8 - g_small_k_constant(true)) < std::abs(gp - g_small_k_constant(true)));
    CHECK(std::abs(g8 - g_small_k_constant(true)) < 1e-3 * mod);
}

TEST_CASE("G symmetry and Plemelj identity: property over random k") {
    const auto d = DensityModel::from_potential(make_default_potential(1.0));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(-6.0, 1.5);
    for (int i = 0; i < 200; ++i) {
        const double k = std::copysign(std::pow(10.0, dist(rng)), i % 2 ? 1.0 : -1.0);
        const cplx G = g_function_free(k, d);
        const cplx Gm = g_function_free(-k, d);
        CHECK(std::abs(Gm - std::conj(G)) < 1e-14 * (1 + std::abs(G)));
        const double s = std::sqrt(std::abs(k));
        CHECK(G.real() == doctest::Approx(-pi * pi / 3 * s * std::exp(-s * s)).epsilon(1e-13));
        CHECK(G.real() <= 0.0);
    }
}

TEST_CASE("G range error beyond the density support") {
    const auto d = DensityModel::from_potential(make_default_potential(1.0));
    CHECK_THROWS_AS(g_function_free(1e4, d), RangeError);
}

TEST_CASE("r-space resolvent route reproduces the spectral G at g = 0") {
    const auto W = make_default_potential(1.0);
    const auto d = DensityModel::from_potential(W);
    for (double k : {1e-4, 0.2, 1.0, -3.0, 9.0}) {
        const cplx a = g_function_free(k, d);
        const cplx b = g_function_rspace(k, 0.0, W);
        CHECK(std::abs(a - b) < 1e-8 * std::abs(a));
    }
}

TEST_CASE("G at g > 0 deviates at first order and keeps the small-k law") {
    const auto W = make_default_potential(1.0);
    const auto d = DensityModel::from_potential(W);
    const double k = 0.5;
    const cplx G0 = g_function_free(k, d);
    const cplx G1 = g_function_rspace(k, 0.02, W);
    const cplx G2 = g_function_rspace(k, 0.04, W);
    const double d1 = std::abs(G1 - G0), d2 = std::abs(G2 - G0);
    CHECK(d1 > 1e-6);
    CHECK(d2 / d1 == doctest::Approx(2.0).epsilon(0.05));
    const cplx small = g_function_rspace(1e-4, 0.05, W) / 1e-2;
    CHECK(std::abs(small / g_small_k_constant(true) - 1.0) < 0.1);
    CHECK_THROWS_AS(g_function_rspace(0.5, 50.0, W), DivergenceError);
}

TEST_CASE("f against the closed Gaussian form") {
    for (double sigma : {1.0, 2.0}) {
        const auto W = make_default_potential(sigma);
        const auto p = free_params();
        const double a = sigma * sigma;
        for (double t : {0.0, 0.3, 1.0, 7.0, 50.0, 400.0}) {
            const double ref = std::pow(pi, 1.5) / 3 * std::pow(cplx(a, t), -1.5).real();
            CHECK(f_function(t, p, W).value == doctest::Approx(ref).epsilon(1e-12));
        }
    }
    const auto W = make_default_potential(1.0);
    CHECK(f_function(0.0, free_params(), W).value == doctest::Approx(std::pow(pi, 1.5) / 3).epsilon(1e-13));
    CHECK(f_function(0.0, free_params(), W).value > 0);
    CHECK_THROWS_AS(f_function(-1.0, free_params(), W), ParameterError);
    ModelParams pg;
    pg.g = 0.05;
    CHECK(f_function(1.0, pg, W).leading_order);
    CHECK_FALSE(f_function(1.0, free_params(), W).leading_order);
}

TEST_CASE("f for a tabulated density matches the analytic route") {
    const auto W = make_default_potential(1.0);
    const auto table = spectral_density(W.profile, SectorOptions{8.0, 60});
    const auto d = DensityModel::from_table(table);
    for (double t : {0.0, 1.0, 10.0, 100.0}) {
        const auto e = f_function_free(t, d);
        const double ref = std::pow(pi, 1.5) / 3 * std::pow(cplx(1.0, t), -1.5).real();
        CHECK(std::abs(e.value - ref) < 1e-6);
        CHECK(e.quad_error < 1e-5);
    }
}

TEST_CASE("f tail approaches the t^{-3/2} constant") {
    const auto W = make_default_potential(1.0);
    const double c = f_tail_constant();
    CHECK(c == doctest::Approx(-1.3124).epsilon(1e-4));
    // t^{3/2} f = c (1 - 3 sigma^2 / (2t) + O(t^-2)).
    for (double t : {1e3, 1e4}) {
        const double v = std::pow(t, 1.5) * f_function(t, free_params(), W).value;
        CHECK(std::abs(v / c - 1 + 1.5 / t) < 5.0 / (t * t));
    }
}

TEST_CASE("Fourier-route K: K(0), causality and t^{-1/2} tail") {
    const auto W = make_default_potential(1.0);
    const auto p = free_params();
    const auto table = make_resolvent_table(p, W);
    CHECK(table.c0 == doctest::Approx(3 / (2 * pi * pi * p.Z())).epsilon(1e-14));
    const auto K = k_kernel_fourier({-20.0, -5.0, -1.0, 0.0, 500.0, 1000.0, 2000.0}, table);
    K.validate();
    CHECK(std::abs(K.values[3].real() - 1.0) < 1e-3);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(K.values[i].real()) < 1e-2);
    const auto chk = check_asymptotic(K, -0.5, kernel_tail_constant() / p.Z(), 500, 2000);
    CHECK(chk.relative_error < 0.05);
    CHECK(kernel_tail_constant() == doctest::Approx(0.12127).epsilon(1e-4));
}

TEST_CASE("Volterra route: K(0) = 1, agreement with Fourier route, second order") {
    const auto W = make_default_potential(1.0);
    const auto p = free_params();
    const auto V = k_kernel_volterra(0.01, 50.0, p, W);
    CHECK(V.values.front().real() == 1.0);
    std::vector<double> t;
    for (std::size_t i = 0; i < V.abscissae.size(); i += 25) t.push_back(V.abscissae[i]);
    const auto F = k_kernel_fourier(t, p, W);
    double sup = 0;
    for (std::size_t i = 0; i < t.size(); ++i) sup = std::max(sup, std::abs(F.values[i].real() - V.values[25 * i].real()));
    CHECK(sup < 1e-3);
    const auto fs = f_samples(0.0025, 20.0, p, W);
    std::vector<double> f2, f1;
    for (std::size_t i = 0; i < fs.size(); i += 2) f2.push_back(fs[i]);
    for (std::size_t i = 0; i < fs.size(); i += 4) f1.push_back(fs[i]);
    const auto K1 = k_kernel_volterra(0.01, 20.0, p, f1);
    const auto K2 = k_kernel_volterra(0.005, 20.0, p, f2);
    const auto K4 = k_kernel_volterra(0.0025, 20.0, p, fs);
    double d1 = 0, d2 = 0;
    for (std::size_t i = 0; i < K1.values.size(); ++i) {
        d1 = std::max(d1, std::abs(K1.values[i].real() - K2.values[2 * i].real()));
        d2 = std::max(d2, std::abs(K2.values[2 * i].real() - K4.values[4 * i].real()));
    }
    CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("Volterra instability is reported") {
    ModelParams p = free_params();
    std::vector<double> f(2001, -50.0);
    CHECK_THROWS_AS(k_kernel_volterra(0.01, 20.0, p, f), StabilityError);
    CHECK_THROWS_AS(k_kernel_volterra(0.01, 30.0, p, f), ParameterError);
}

TEST_CASE("K' identity and t^{-3/2} envelope") {
    const auto W = make_default_potential(1.0);
    const auto p = free_params();
    const auto t = uniform(0.02, 50.0);
    const auto K = k_kernel_fourier(t, p, W);
    const auto f = f_samples(0.02, 50.0, p, W);
    const auto rep = kdot_and_identity(K, f, p.Z());
    CHECK(rep.max_residual < 5e-3);
    CHECK(rep.kdot_conv[0] == 0.0);
    const auto V = k_kernel_volterra(0.02, 500.0, p, f_samples(0.02, 500.0, p, W));
    const auto fit = kdot_exponent(V, 50.0, 500.0);
    CHECK(std::abs(fit.exponent + 1.5) < 0.1);
    KernelTable bad = K;
    bad.abscissae[3] += 1e-3;
    CHECK_THROWS_AS(kdot_and_identity(bad, f, p.Z()), ParameterError);
}

TEST_CASE("F identity: time transform of f equals -Z G") {
    const auto W = make_default_potential(1.0);
    const auto p = free_params();
    const auto rep = check_F_identity({0.01, 0.1, 1.0, 10.0}, p, W);
    CHECK(rep.max_relative_deviation < 1e-2);
    CHECK(std::abs(rep.small_k_ratio + 1.0) < 0.05);
    // Riemann-Lebesgue with rate: F(k) ~ i Z f(0) / k since f'(0) = 0.
    const double Zf0 = p.Z() * std::pow(pi, 1.5) / 3;
    CHECK(std::abs(200.0 * f_transform(200.0, p, W) - cplx(0, Zf0)) < 1e-2 * Zf0);
    CHECK(std::abs(f_transform(200.0, p, W)) < std::abs(f_transform(20.0, p, W)));
}

TEST_CASE("kernel table validation") {
    KernelTable t;
    t.abscissae = {0, 1, 1};
    t.values = {1, 1, 1};
    t.quad_error = {0, 0, 0};
    CHECK_THROWS_AS(t.validate(), DataError);
    t.abscissae = {0, 1, 2};
    t.quad_error = {0, -1, 0};
    CHECK_THROWS_AS(t.validate(), DataError);
    CHECK(to_string(Route::volterra) == "volterra");
}
