#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "friction/dispersive.hpp"
#include "friction/errors.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace friction;
using cplx = std::complex<double>;

namespace {

RadialProfile sample(const std::vector<double>& r, int ell, double (*f)(double)) {
    RadialProfile p;
    p.r = r;
    p.ell = ell;
    for (double x : r) p.values.push_back(f(x));
    return p;
}

double gauss(double r) { return std::exp(-0.5 * r * r); }
double lin_gauss(double r) { return -r * std::exp(-0.5 * r * r); }
double cubic_gauss(double r) { return r * r * r * std::exp(-0.5 * r * r); }

// Free evolution of e^{-r^2/2} (l = 0) and -r e^{-r^2/2} (l = 1) under e^{-i t rho^2}.
cplx gauss_t(double r, double t) {
    const cplx a(1.0, 2.0 * t);
    return std::pow(a, -1.5) * std::exp(-r * r / (2.0 * a));
}
cplx lin_gauss_t(double r, double t) {
    const cplx a(1.0, 2.0 * t);
    return -r * std::pow(a, -2.5) * std::exp(-r * r / (2.0 * a));
}

double sup_error(const ComplexProfile& u, cplx (*ref)(double, double), double t) {
    double e = 0;
    for (std::size_t i = 0; i < u.r.size(); ++i) e = std::max(e, std::abs(u.values[i] - ref(u.r[i], t)));
    return e;
}

DecayTrace synthetic(double (*f)(double), double t0, double t1, int n) {
    DecayTrace tr;
    for (int i = 0; i < n; ++i) {
        const double t = t0 * std::pow(t1 / t0, double(i) / (n - 1));
        tr.times.push_back(t);
        tr.weighted_norms.push_back(f(t));
    }
    return tr;
}

}  // namespace

TEST_CASE("Gaussian class on the rotated contour matches closed-form evolution") {
    const auto r = norm_grid();
    const GaussianSpectrum g0{0, 0, 0.5, 1.0};
    const GaussianSpectrum g1{1, 1, 0.5, -1.0};
    for (double t : {0.0, 0.3, 1.0, 31.6, 100.0, 1000.0}) {
        CHECK(sup_error(evolve_free_sector(g0, r, t), gauss_t, t) < 1e-11);
        CHECK(sup_error(evolve_free_sector(g1, r, t), lin_gauss_t, t) < 1e-11);
    }
}

TEST_CASE("direct quadrature route matches closed form and conserves L2") {
    const auto r = make_radial_grid(1.0);
    const auto f0 = sample(r, 0, gauss);
    const auto f1 = sample(r, 1, lin_gauss);
    for (double t : {0.25, 1.0}) {
        const auto u0 = evolve_free_sector(f0, 0, t);
        const auto u1 = evolve_free_sector(f1, 1, t);
        CHECK(sup_error(u0, gauss_t, t) < 1e-8);
        CHECK(sup_error(u1, lin_gauss_t, t) < 1e-8);
        CHECK(std::abs(weighted_norm(u0, 0) / weighted_norm(f0, 0) - 1.0) < 1e-6);
        CHECK(std::abs(weighted_norm(u1, 0) / weighted_norm(f1, 0) - 1.0) < 1e-6);
    }
}

TEST_CASE("t = 0 is the identity on every sector") {
    const auto r = make_radial_grid(1.0);
    for (auto [ell, f] : {std::pair{0, gauss}, std::pair{1, lin_gauss}, std::pair{3, cubic_gauss}}) {
        const auto p = sample(r, ell, f);
        const auto u = evolve_free_sector(p, ell, 0.0);
        double e = 0;
        for (std::size_t i = 0; i < r.size(); ++i) e = std::max(e, std::abs(u.values[i] - p.values[i]));
        CHECK(e < 1e-8);
    }
}

TEST_CASE("sector orthogonality") {
    const auto r = make_radial_grid(1.0);
    const auto u = evolve_free_sector(sample(r, 0, gauss), 1, 0.5);
    double e = 0;
    for (const auto& v : u.values) e = std::max(e, std::abs(v));
    CHECK(e < 1e-10);
    CHECK_THROWS_AS(evolve_free_sector(sample(r, 0, gauss), 2, 0.5), ParameterError);
    CHECK_THROWS_AS(evolve_free_sector(GaussianSpectrum{2, 0, 0.5, 1.0}, r, 1.0), ParameterError);
}

TEST_CASE("large t rho_max^2 is refused by the direct route") {
    const auto r = make_radial_grid(1.0, {256, 20.0, 3.0});
    CHECK_THROWS_AS(evolve_free_sector(sample(r, 0, gauss), 0, 1e3), AccuracyError);
}

TEST_CASE("weighted norm: zero, homogeneity, multiplicity") {
    const auto r = norm_grid();
    ComplexProfile z{r, std::vector<cplx>(r.size(), 0.0), 0};
    CHECK(weighted_norm(z, -3) == 0.0);
    const auto u = evolve_free_sector(GaussianSpectrum{1, 1, 0.5, 1.0}, r, 3.0);
    auto v = u;
    for (auto& x : v.values) x *= cplx(0.0, -2.5);
    CHECK(weighted_norm(v, -5) == doctest::Approx(2.5 * weighted_norm(u, -5)).epsilon(1e-14));
    // ||e^{-r^2/2}||^2 = pi^{3/2}; the l = 1 factor cos theta carries 4 pi / 3.
    // The 900-node grid integrates to about 1e-9.
    const auto g = profile_from_spectrum(GaussianSpectrum{0, 0, 0.5, 1.0}, r);
    CHECK(weighted_norm(g, 0) == doctest::Approx(std::pow(std::numbers::pi, 0.75)).epsilon(1e-8));
    const auto h = profile_from_spectrum(GaussianSpectrum{1, 1, 0.5, 1.0}, r);
    CHECK(weighted_norm(h, 0) * weighted_norm(h, 0) ==
          doctest::Approx(1.5 * std::pow(std::numbers::pi, 1.5) / 3.0).epsilon(1e-8));
}

TEST_CASE("weighted norm of a 1/r tail converges with the cutoff") {
    auto at = [](double R) {
        const auto r = norm_grid(R, 2000);
        ComplexProfile u{r, {}, 0};
        for (double x : r) u.values.emplace_back(x > 0 ? std::erf(x) / x : 2.0 / std::sqrt(std::numbers::pi), 0.0);
        return weighted_norm(u, -3);
    };
    const double a = at(25), b = at(50), c = at(100);
    CHECK(std::abs(c - b) < 0.2 * std::abs(b - a));
    CHECK(std::abs(c - b) < 1e-6);
}

TEST_CASE("decay exponent fit on synthetic traces") {
    auto exact = synthetic([](double t) { return 3.0 * std::pow(t, -1.5); }, 10, 1000, 40);
    CHECK(std::abs(decay_exponent_fit(exact).exponent + 1.5) < 1e-3);
    auto pert = synthetic([](double t) { return std::pow(t, -1.5) * (1 + 1 / t); }, 10, 1000, 40);
    CHECK(std::abs(decay_exponent_fit(pert, 100, 1000).exponent + 1.5) < 0.02);
    auto flat = synthetic([](double) { return 0.7; }, 10, 1000, 40);
    CHECK(std::abs(decay_exponent_fit(flat).exponent) < 1e-12);
    auto bad = exact;
    bad.weighted_norms[5] = 0.0;
    CHECK_THROWS_AS(decay_exponent_fit(bad), DataError);
    CHECK_THROWS_AS(decay_exponent_fit(synthetic([](double t) { return 1 / t; }, 100, 1000, 40)), DataError);
    CHECK_THROWS_AS(decay_exponent_fit(synthetic([](double t) { return 1 / t; }, 10, 1000, 8)), ParameterError);
}

TEST_CASE("h^{-1/2} W decays at the intermediate rate") {
    DecayTrace tr;
    const auto r = norm_grid();
    for (int i = 0; i <= 20; ++i) {
        const double t = 30.0 * std::pow(1000.0 / 30.0, i / 20.0);
        tr.times.push_back(t);
        tr.weighted_norms.push_back(weighted_norm(evolve_free_sector(GaussianSpectrum{0, -1, 0.5, 1.0}, r, t), -3));
    }
    CHECK(std::abs(decay_exponent_fit(tr, 100, 1000).exponent + 1.0) < 0.1);
}

TEST_CASE("propagator suite reproduces the decay table") {
    ModelParams p;
    p.g = 0.0;
    const auto rows = verify_propagator_suite(p, make_default_potential(1.0));
    REQUIRE(rows.size() == 5);
    const double expected[] = {-1.5, -0.5, -2.5, -1.5, -2.5};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].pass);
        CHECK(std::abs(rows[i].fit.exponent - expected[i]) < 0.1);
        CHECK(rows[i].fit.points >= 10);
    }
    // d W measured with <x>^{-5} against plain l = 0 data with <x>^{-3}.
    CHECK(std::abs(rows[0].fit.exponent - rows[2].fit.exponent - 1.0) < 0.15);
    p.g = 0.05;
    CHECK_THROWS_AS(verify_propagator_suite(p, make_default_potential(1.0)), ParameterError);
}
