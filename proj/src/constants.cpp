#include "friction/constants.hpp"

#include "friction/errors.hpp"
#include "friction/fit.hpp"
#include "friction/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

namespace friction::constants {

namespace {

constexpr double kPi = std::numbers::pi;

void check_delta(double delta) {
    if (!std::isfinite(delta)) throw ParameterError("delta must be finite");
    if (delta >= 1.0) throw ParameterError("delta must be < 1, got " + std::to_string(delta));
}

// (r^{-1/2} - r^{-delta}) / (1 - 2 delta), with the removable singularity at delta = 1/2.
double omega1_bracket(double r, double delta) {
    const double L = std::log(r);
    const double eps = 0.5 - delta;
    if (std::abs(delta - 0.5) < 1e-6) return -0.5 * L / std::sqrt(r);
    return -std::expm1(eps * L) / (2.0 * eps * std::sqrt(r));
}

double omega2_bracket(double r, double delta) { return std::pow(r, 0.5 - delta); }

// (2/pi) int_0^1 B(1 - v^2) / (1 + v) dv, split at v = 1/2; the upper half uses
// w = 1 - v so that r = w (2 - w) keeps full precision near r = 0.
template <class B>
double v_integral(B bracket, int nodes) {
    const auto rule = tanh_sinh_rule(0.5, nodes);
    double lower = 0, upper = 0;
    for (const auto& q : rule) {
        const double v = q.x;
        lower += q.w * bracket(1.0 - v * v) / (1.0 + v);
        const double w = q.x;
        upper += q.w * bracket(w * (2.0 - w)) / (2.0 - w);
    }
    return 2.0 / kPi * (lower + upper);
}

double omega_integrand(double r, double s, double delta) {
    // s = 1 - r supplied separately to keep precision at r -> 1.
    const double q = 1.0 / (1.0 + std::sqrt(s));
    return q / std::sqrt(s) * (omega1_bracket(r, delta) + omega2_bracket(r, delta));
}

double fresnel_tail_series(double X, bool real_part) {
    // int_X^inf e^{i x^2} dx ~ -e^{iX^2} sum_n (2n-1)!! / ((2i)^{n+1} X^{2n+1}).
    std::complex<double> sum = 0;
    std::complex<double> term = 1.0 / (std::complex<double>(0, 2) * X);
    for (int n = 0; n < 40; ++n) {
        sum += term;
        const std::complex<double> next = term * double(2 * n + 1) / (std::complex<double>(0, 2) * X * X);
        if (std::abs(next) > std::abs(term)) break;
        term = next;
        if (std::abs(term) < 1e-18) break;
    }
    const std::complex<double> tail = -std::exp(std::complex<double>(0, X * X)) * sum;
    return real_part ? tail.real() : tail.imag();
}

}  // namespace

double omega1(double delta, int nodes) {
    check_delta(delta);
    return v_integral([delta](double r) { return omega1_bracket(r, delta); }, nodes);
}

double omega2(double delta, int nodes) {
    check_delta(delta);
    return v_integral([delta](double r) { return omega2_bracket(r, delta); }, nodes);
}

double omega_direct(double delta, int nodes) {
    check_delta(delta);
    const auto rule = tanh_sinh_rule(0.5, nodes);
    double acc = 0;
    for (const auto& q : rule) {
        acc += q.w * omega_integrand(q.x, 1.0 - q.x, delta);  // r in (0, 1/2)
        acc += q.w * omega_integrand(1.0 - q.x, q.x, delta);  // s = 1 - r in (0, 1/2)
    }
    return acc / kPi;
}

double omega_closed_form(double d) {
    if (std::abs(d) < 1e-12 || std::abs(d - 0.5) < 1e-12) return std::numeric_limits<double>::quiet_NaN();
    const double head = 1.0 / (kPi * d * (2.0 * d - 1.0));
    const double g = 2.0 * std::tgamma(0.5 - d) / std::tgamma(1.0 - d) - std::tgamma(-d) / std::tgamma(1.5 - d);
    return head + g / (2.0 * std::sqrt(kPi));
}

OmegaEvaluation omega(double delta, int nodes) {
    check_delta(delta);
    OmegaEvaluation e;
    e.delta = delta;
    e.omega1 = omega1(delta, nodes);
    e.omega2 = omega2(delta, nodes);
    e.omega = e.omega1 + e.omega2;
    e.direct = omega_direct(delta, nodes);
    const int coarse = (nodes - 1) / 2 + 1;
    const double coarse_sum = omega1(delta, coarse) + omega2(delta, coarse);
    e.quad_error = std::max(std::abs(e.omega - coarse_sum), std::abs(e.omega - e.direct));
    e.closed_form = omega_closed_form(delta);
    e.deviation = e.closed_form - e.omega;
    return e;
}

double delta_star(double tol, int nodes) {
    double lo = 0.5, hi = 0.9;
    double flo = omega1(lo, nodes) + omega2(lo, nodes) - 1.0;
    double fhi = omega1(hi, nodes) + omega2(hi, nodes) - 1.0;
    if (!(flo < 0.0 && fhi > 0.0))
        throw ConsistencyError("delta_star: omega - 1 does not change sign on [0.5, 0.9]");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = omega1(mid, nodes) + omega2(mid, nodes) - 1.0;
        if (fm < 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

int n_zero(double delta) {
    if (!std::isfinite(delta) || delta <= 0.5)
        throw ParameterError("n_zero: delta must exceed 1/2, got " + std::to_string(delta));
    if (delta >= 1.0) throw ParameterError("n_zero: delta must be < 1, got " + std::to_string(delta));
    const double rhs = 1.5 + delta;
    // Decimal inputs such as 0.6 are not representable; a 1e-12 relative slack
    // lets exact boundary cases (0.1 * 21 = 2.1) satisfy the inequality.
    const double slack = 1e-12 * rhs;
    for (int n = 0;; ++n)
        if ((n + 1) * (delta - 0.5) >= rhs - slack) return n;
}

FresnelPair fresnel_head(double X) {
    // Panels of width ~ pi / (4 X) keep at most a quarter period per panel near x = X.
    const int panels = std::max(8, static_cast<int>(std::ceil(X * X / kPi * 2.0)));
    const auto rule = gauss_legendre_panels(0.0, X, panels);
    double c = 0, s = 0;
    for (const auto& q : rule) {
        c += q.w * std::cos(q.x * q.x);
        s += q.w * std::sin(q.x * q.x);
    }
    return {c, s};
}

FresnelPair fresnel_tail(double X) { return {fresnel_tail_series(X, true), fresnel_tail_series(X, false)}; }

FresnelResult fresnel_constant(double X) {
    const FresnelPair head = fresnel_head(X);
    const FresnelPair tail = fresnel_tail(X);
    FresnelResult r;
    r.cos_integral = head.c + tail.c;
    r.sin_integral = head.s + tail.s;
    r.reference = std::sqrt(kPi / 8.0);
    const FresnelPair head2 = fresnel_head(2.0 * X);
    const FresnelPair tail2 = fresnel_tail(2.0 * X);
    r.truncation = std::abs(r.cos_integral - (head2.c + tail2.c));
    return r;
}

double convolution_integral(double delta, double t, bool* nonnegative) {
    if (!(delta > 0.5 && delta < 1.0)) throw ParameterError("convolution bound: delta must lie in (1/2, 1)");
    if (t < 0) throw ParameterError("convolution bound: t must be >= 0");
    if (t == 0.0) return 0.0;
    const double a = 0.5 - delta;
    auto integrand = [&](double s) {
        // s^a - t^a = t^a expm1(a log(s/t)), accurate as s -> t.
        const double lr = s < 0.5 * t ? std::log(s / t) : std::log1p((s - t) / t);
        const double diff = std::pow(t, a) * std::expm1(a * lr);
        return std::pow(1.0 + t - s, -1.5) * diff / std::sqrt(1.0 + s);
    };
    bool ok = true;
    double acc = 0;
    const double head = std::min(1.0, 0.5 * t);
    for (const auto& q : tanh_sinh_rule(head, 201)) {
        const double v = integrand(q.x);
        ok = ok && v >= 0.0;
        acc += q.w * v;
    }
    if (t > head) {
        // Graded from both ends: the kernel (1+t-s)^{-3/2} concentrates near s = t.
        const double mid = head + 0.5 * (t - head);
        auto left = graded_breaks(head, mid, 0.25, 1.3, 50.0);
        auto right = graded_breaks(0.0, t - mid, 0.05, 1.3, 50.0);
        std::vector<double> breaks = left;
        for (auto it = right.rbegin() + 1; it != right.rend(); ++it) breaks.push_back(t - *it);
        for (const auto& q : gauss_legendre_breaks(breaks)) {
            const double v = integrand(q.x);
            ok = ok && v >= 0.0;
            acc += q.w * v;
        }
    }
    if (nonnegative) *nonnegative = ok;
    return acc;
}

ConvolutionBoundReport convolution_bound_check(double delta, double t_max, int points_per_decade) {
    if (!(delta > 0.5 && delta < 1.0)) throw ParameterError("convolution bound: delta must lie in (1/2, 1)");
    if (!(t_max > 1.0)) throw ParameterError("convolution bound: t_max must exceed 1");
    ConvolutionBoundReport rep;
    rep.delta = delta;
    rep.t.push_back(0.0);
    rep.integral.push_back(0.0);
    rep.scaled.push_back(0.0);
    const double lmin = -2.0;
    const double lmax = std::log10(t_max);
    const int n = static_cast<int>(std::ceil((lmax - lmin) * points_per_decade));
    for (int i = 0; i <= n; ++i) {
        const double t = std::pow(10.0, lmin + (lmax - lmin) * i / n);
        bool ok = true;
        const double I = convolution_integral(delta, t, &ok);
        rep.integrand_nonnegative = rep.integrand_nonnegative && ok;
        rep.t.push_back(t);
        rep.integral.push_back(I);
        rep.scaled.push_back(std::pow(1.0 + t, 0.5 + delta) * I);
    }
    rep.sup_scaled = *std::max_element(rep.scaled.begin(), rep.scaled.end());
    std::vector<double> tt(rep.t.begin() + 1, rep.t.end());
    std::vector<double> ss(rep.scaled.begin() + 1, rep.scaled.end());
    rep.last_decade_slope = fit_last_decade(tt, ss).exponent;
    return rep;
}

}  // namespace friction::constants
