#include "friction/kernels.hpp"

#include "friction/errors.hpp"
#include "friction/oscillatory.hpp"
#include "friction/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace friction {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

// Modified spherical Bessel functions of order 1 for complex argument:
// i1(z) = (z cosh z - sinh z) / z^2, k1(z) = e^{-z} (z + 1) / z^2,
// Wronskian i1 k1' - i1' k1 = -1 / z^2.
cplx mod_i1(cplx z) {
    if (std::abs(z) < 0.5) {
        const cplx z2 = z * z;
        return z * (1.0 / 3 + z2 * (1.0 / 30 + z2 * (1.0 / 840 + z2 * (1.0 / 45360 + z2 / 3991680.0))));
    }
    return (z * std::cosh(z) - std::sinh(z)) / (z * z);
}

cplx mod_k1(cplx z) { return std::exp(-z) * (z + 1.0) / (z * z); }

// Complex cumulative integrals with the piecewise cubic rule.
std::vector<cplx> cumulative(const std::vector<double>& r, const std::vector<cplx>& f) {
    std::vector<double> re(f.size()), im(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        re[i] = f[i].real();
        im[i] = f[i].imag();
    }
    const auto a = cumulative_integral(r, re);
    const auto b = cumulative_integral(r, im);
    std::vector<cplx> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = {a[i], b[i]};
    return out;
}

// Free l = 1 resolvent (-Delta + kappa^2)^{-1} on the radial part of an
// f(r) x_1/|x| field, Re kappa >= 0:
//   phi(r) = kappa [k1(kr) int_0^r i1(ks) f s^2 ds + i1(kr) int_r^inf k1(ks) f s^2 ds].
// Beyond the grid f = tail / s^2.
class FreeL1Resolvent {
public:
    FreeL1Resolvent(const std::vector<double>& r, cplx kappa) : r_(r), kappa_(kappa), rule_(interval_rule(r)) {
        const std::size_t n = r.size();
        i1_node_.resize(n);
        k1_node_.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (r[j] == 0.0) continue;
            i1_node_[j] = mod_i1(kappa * r[j]);
            k1_node_[j] = mod_k1(kappa * r[j]);
        }
        i1_q_.resize(rule_.x.size());
        k1_q_.resize(rule_.x.size());
        for (std::size_t q = 0; q < rule_.x.size(); ++q) {
            const double s = rule_.x[q];
            i1_q_[q] = mod_i1(kappa * s) * s * s * rule_.w[q];
            k1_q_[q] = mod_k1(kappa * s) * s * s * rule_.w[q];
        }
        const double R = r.back();
        tail_factor_ = std::exp(-kappa * R) / (kappa * kappa * R);
    }

    std::vector<cplx> apply(const std::vector<cplx>& f, double tail = 0.0) const {
        const std::size_t n = r_.size();
        // Cubic interpolation of f at the rule nodes (real and imaginary parts).
        RadialProfile pr, pi;
        pr.r = r_;
        pi.r = r_;
        pr.values.resize(n);
        pi.values.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            pr.values[j] = f[j].real();
            pi.values[j] = f[j].imag();
        }
        const auto fr = values_on_rule(pr, rule_);
        const auto fi = values_on_rule(pi, rule_);
        std::vector<cplx> inc(n - 1, 0.0), outc(n - 1, 0.0);
        for (std::size_t q = 0; q < rule_.x.size(); ++q) {
            const cplx fq(fr[q], fi[q]);
            inc[rule_.interval[q]] += i1_q_[q] * fq;
            outc[rule_.interval[q]] += k1_q_[q] * fq;
        }
        std::vector<cplx> A(n, 0.0), B(n, 0.0);
        for (std::size_t j = 1; j < n; ++j) A[j] = A[j - 1] + inc[j - 1];
        B[n - 1] = tail * tail_factor_;
        for (std::size_t j = n - 1; j-- > 0;) B[j] = B[j + 1] + outc[j];
        std::vector<cplx> phi(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (r_[j] == 0.0) continue;
            phi[j] = kappa_ * (k1_node_[j] * A[j] + i1_node_[j] * B[j]);
        }
        return phi;
    }

private:
    std::vector<double> r_;
    cplx kappa_;
    IntervalRule rule_;
    std::vector<cplx> i1_node_, k1_node_, i1_q_, k1_q_;
    cplx tail_factor_;
};

double gaussian_f(double t, double a) {
    // (1/3) Re int e^{-a rho^2} e^{-i t rho^2} dxi = (pi^{3/2} / 3) Re (a + i t)^{-3/2}.
    return std::pow(kPi, 1.5) / 3.0 * std::pow(cplx(a, t), -1.5).real();
}

std::vector<double> kernel_k_nodes(const KernelOptions& opt, double k_max) {
    std::vector<double> k;
    for (double x = opt.k_min; x < opt.grade_until; x *= opt.grade_ratio) k.push_back(x);
    const double start = opt.grade_until;
    const int n = static_cast<int>(std::ceil((k_max - start) / opt.dk));
    for (int i = 0; i <= n; ++i) k.push_back(start + (k_max - start) * i / std::max(n, 1));
    return k;
}

}  // namespace

// ---------------------------------------------------------------- density

DensityModel DensityModel::from_potential(const RadialPotential& W) {
    DensityModel d;
    const double a = W.sigma * W.sigma;
    const double amp = W.hat(0.0);
    d.gaussian_a = amp == 1.0 ? a : -1.0;
    d.density = [a, amp](double rho) { return amp * amp * std::exp(-a * rho * rho); };
    d.rho_max = std::sqrt(46.0 / a);
    return d;
}

DensityModel DensityModel::from_table(const SpectralTable& t) {
    if (t.rho.size() < 4) throw ParameterError("density table needs at least 4 samples");
    DensityModel d;
    auto rho = std::make_shared<std::vector<double>>(t.rho);
    auto val = std::make_shared<std::vector<double>>(t.values);
    d.density = [rho, val](double x) {
        if (x > rho->back()) return 0.0;
        if (x < rho->front()) return val->front();
        return std::max(0.0, interpolate(*rho, *val, x));
    };
    d.rho_max = t.rho.back();
    return d;
}

std::string to_string(Route r) {
    switch (r) {
        case Route::fourier: return "fourier";
        case Route::volterra: return "volterra";
        default: return "quadrature";
    }
}

void KernelTable::validate() const {
    if (abscissae.size() != values.size() || quad_error.size() != values.size())
        throw DataError("kernel table: column sizes differ");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0 && !(abscissae[i] > abscissae[i - 1])) throw DataError("kernel table: abscissae not increasing");
        if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
            throw DataError("kernel table: non-finite value");
        if (!(quad_error[i] >= 0)) throw DataError("kernel table: negative error estimate");
    }
}

std::vector<double> KernelTable::real() const {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real();
    return out;
}

AsymptoticCheck check_asymptotic(const KernelTable& table, double exponent, cplx coefficient, double t_min,
                                 double t_max) {
    AsymptoticCheck c;
    c.exponent = exponent;
    c.coefficient = coefficient;
    c.t_min = t_min;
    c.t_max = t_max;
    bool any = false;
    for (std::size_t i = 0; i < table.abscissae.size(); ++i) {
        const double t = table.abscissae[i];
        if (t < t_min || t > t_max) continue;
        any = true;
        const cplx scaled = table.values[i] * std::pow(t, -exponent) / coefficient;
        c.relative_error = std::max(c.relative_error, std::abs(scaled - 1.0));
    }
    if (!any) throw ParameterError("asymptotic check: no samples in the window");
    return c;
}

double kernel_tail_constant() { return 3.0 * std::pow(kPi, -2.5) / std::sqrt(2.0); }
double f_tail_constant() { return -std::pow(kPi, 1.5) / (3.0 * std::sqrt(2.0)); }
cplx g_small_k_constant(bool positive) { return (positive ? cplx(-1, 1) : cplx(-1, -1)) * kPi * kPi / 3.0; }

// ---------------------------------------------------------------- G

cplx g_function_free(double k, const DensityModel& d) {
    if (!std::isfinite(k)) throw ParameterError("k must be finite");
    if (k == 0.0) return 0.0;
    const double s = std::sqrt(std::abs(k));
    if (s > d.rho_max) throw RangeError("k beyond the spectral-density range (|k| > " +
                                        std::to_string(d.rho_max * d.rho_max) + ")");
    const auto& D = d.density;
    // J = PV int rho^2 D / (rho^2 - s^2) - int rho^2 D / (rho^2 + s^2) = PV int psi / (rho - s).
    auto psi = [&](double rho) { return 2 * s * s * rho * rho * D(rho) / ((rho + s) * (rho * rho + s * s)); };
    const double scale = d.rho_max / 28.0;  // about 0.25 / sqrt(a) for Gaussians
    const int half_panels = std::max(1, static_cast<int>(std::ceil(s / scale)));
    const double psi_s = psi(s);
    double J = 0;
    for (const auto& q : gauss_legendre_panels(0.0, 2 * s, 2 * half_panels))
        J += q.w * (psi(q.x) - psi_s) / (q.x - s);
    if (2 * s < d.rho_max) {
        const auto breaks = graded_breaks(2 * s, d.rho_max, s, 1.5, scale);
        for (const auto& q : gauss_legendre_breaks(breaks)) J += q.w * psi(q.x) / (q.x - s);
    }
    const double re = -kPi * kPi / 3.0 * s * D(s);
    const double im = (k > 0 ? 1.0 : -1.0) * 2.0 * kPi / 3.0 * J;
    return {re, im};
}

cplx g_function_rspace(double k, double g, const RadialPotential& W) {
    if (!std::isfinite(k) || !std::isfinite(g)) throw ParameterError("k and g must be finite");
    if (k == 0.0) return 0.0;
    RadialGridSpec spec;
    spec.nodes = 2048;
    RadialProfile Wp;
    Wp.r = make_radial_grid(W.sigma, spec);
    for (double x : Wp.r) Wp.values.push_back(W.value(x));
    const std::size_t n = Wp.size();
    const RadialProfile u = resolvent_apply(Wp, g);
    // v = d/dr h^{-1} W = -(1/r^2) int_0^r s^2 xi, xi = W - g W u.
    std::vector<double> s2xi(n);
    for (std::size_t i = 0; i < n; ++i) s2xi[i] = Wp.r[i] * Wp.r[i] * (Wp.values[i] - g * Wp.values[i] * u.values[i]);
    const auto inner = cumulative_integral(Wp.r, s2xi);
    std::vector<cplx> v(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        if (Wp.r[i] > 0) v[i] = -inner[i] / (Wp.r[i] * Wp.r[i]);
    const double tail = -inner.back();
    // Radial part of [1 - g h^{-1} W] d_1 W.
    std::vector<double> w1(n);
    for (std::size_t i = 0; i < n; ++i)
        w1[i] = (1.0 - g * u.values[i]) * (-Wp.r[i] / (W.sigma * W.sigma)) * Wp.values[i];

    auto solve = [&](cplx kappa) {
        const FreeL1Resolvent R0(Wp.r, kappa);
        const auto phi0 = R0.apply(v, tail);
        if (g == 0.0) return phi0;
        auto phi = phi0;
        double prev = INFINITY;
        int growth = 0;
        for (int it = 0; it < 200; ++it) {
            std::vector<cplx> src(n);
            for (std::size_t i = 0; i < n; ++i) src[i] = g * Wp.values[i] * phi[i];
            const auto corr = R0.apply(src);
            double upd = 0, nrm = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const cplx next = phi0[i] - corr[i];
                upd = std::max(upd, std::abs(next - phi[i]));
                nrm = std::max(nrm, std::abs(next));
                phi[i] = next;
            }
            if (!std::isfinite(upd) || nrm > 1e12) throw DivergenceError("G: Born series diverges");
            growth = upd > prev ? growth + 1 : 0;
            if (growth >= 5) throw DivergenceError("G: Born series is not contracting");
            prev = upd;
            if (upd <= 1e-14 * std::max(nrm, 1e-300)) return phi;
        }
        throw DivergenceError("G: Born series did not converge");
    };
    const double s = std::sqrt(std::abs(k));
    // (h + k + i0)^{-1}: kappa^2 = k + i0; (h - k - i0)^{-1}: kappa^2 = -k - i0.
    const cplx kappa_plus = k > 0 ? cplx(s, 0) : cplx(0, s);
    const cplx kappa_minus = k > 0 ? cplx(0, -s) : cplx(s, 0);
    const auto phi_p = solve(kappa_plus);
    const auto phi_m = solve(kappa_minus);
    std::vector<cplx> integrand(n);
    for (std::size_t i = 0; i < n; ++i) integrand[i] = w1[i] * (phi_m[i] - phi_p[i]) * Wp.r[i] * Wp.r[i];
    const cplx total = cumulative(Wp.r, integrand).back();
    return 0.5 * I * (4.0 * kPi / 3.0) * total;
}

cplx g_function(double k, const ModelParams& params, const RadialPotential& W) {
    params.validate();
    if (params.g == 0.0) return g_function_free(k, DensityModel::from_potential(W));
    return g_function_rspace(k, params.g, W);
}

// ---------------------------------------------------------------- f

FEvaluation f_function_free(double t, const DensityModel& d) {
    if (!std::isfinite(t) || t < 0) throw ParameterError("f: t must be >= 0");
    FEvaluation e;
    if (d.gaussian_a > 0) {
        // Rotate rho = e^{-i phi} s with 2 phi = arg(a + i t): the integrand
        // becomes s^2 e^{-|a + it| s^2}, free of oscillation.
        const cplx alpha(d.gaussian_a, t);
        const double m = std::abs(alpha);
        const double phi = 0.5 * std::arg(alpha);
        const double smax = std::sqrt(46.0 / m);
        double acc = 0;
        for (const auto& q : gauss_legendre_panels(0.0, smax, 4)) acc += q.w * q.x * q.x * std::exp(-m * q.x * q.x);
        e.value = 4.0 * kPi / 3.0 * (std::polar(1.0, -3.0 * phi) * acc).real();
        e.quad_error = std::abs(e.value - gaussian_f(t, d.gaussian_a));
        return e;
    }
    // u = rho^2: f = (2 pi / 3) Re int sqrt(u) D(sqrt u) e^{-i t u} du. The
    // cusp D(0) sqrt(u) e^{-u} is integrated exactly, Gamma(3/2) (1 + it)^{-3/2};
    // the u^{3/2} remainder goes to Filon on a grid graded at u = 0.
    const double umax = d.rho_max * d.rho_max;
    const double D0 = d.density(0.0);
    std::vector<double> u{0.0};
    for (double x = 1e-10; x < 0.05 * umax; x *= 1.08) u.push_back(x);
    const int nu = 800;
    for (int i = 0; i <= nu; ++i) u.push_back(0.05 * umax + 0.95 * umax * i / nu);
    std::vector<double> y(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double s = std::sqrt(u[i]);
        y[i] = s * (d.density(s) - D0 * std::exp(-u[i]));
    }
    const FilonTable fine(u, y);
    std::vector<double> uc, yc;
    for (std::size_t i = 0; i < u.size(); i += 2) {
        uc.push_back(u[i]);
        yc.push_back(y[i]);
    }
    const FilonTable coarse(uc, yc);
    const cplx cusp = D0 * std::sqrt(kPi) / 2 * std::pow(cplx(1.0, t), -1.5);
    // Beyond umax only the subtracted term survives: -D0 sqrt(u) e^{-u}, below 1e-19.
    e.value = 2.0 * kPi / 3.0 * (fine.integrate(-t) + cusp).real();
    e.quad_error = std::abs(e.value - 2.0 * kPi / 3.0 * (coarse.integrate(-t) + cusp).real());
    return e;
}

FEvaluation f_function(double t, const ModelParams& params, const RadialPotential& W) {
    params.validate();
    FEvaluation e = f_function_free(t, DensityModel::from_potential(W));
    e.leading_order = params.g != 0.0;
    if (e.quad_error > 1e-8 * std::max(1.0, std::abs(e.value)))
        throw AccuracyError("f: quadrature error above threshold", e.quad_error);
    return e;
}

std::vector<double> f_samples(double dt, double t_max, const ModelParams& params, const RadialPotential& W) {
    if (!(dt > 0) || !(t_max > 0)) throw ParameterError("f_samples: dt and t_max must be positive");
    const int n = static_cast<int>(std::llround(t_max / dt));
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) out[j] = f_function(j * dt, params, W).value;
    return out;
}

// ---------------------------------------------------------------- K, Fourier route

ResolventTable make_resolvent_table(const ModelParams& params, const DensityModel& d, const KernelOptions& opt) {
    params.validate();
    if (params.g != 0.0) throw ParameterError("density-only resolvent table requires g = 0");
    ResolventTable t;
    t.Z = params.Z();
    const double kmax = opt.k_max > 0 ? opt.k_max : 0.87 * d.rho_max * d.rho_max;
    t.k = kernel_k_nodes(opt, kmax);
    for (double k : t.k) {
        const cplx G = g_function_free(k, d);
        t.G.push_back(G);
        t.khat.push_back(-1.0 / (I * k + t.Z * G));
    }
    const cplx gamma = g_small_k_constant(true) * d.density(0.0);
    t.c0 = (-1.0 / (t.Z * gamma)).real();
    return t;
}

ResolventTable make_resolvent_table(const ModelParams& params, const RadialPotential& W, const KernelOptions& opt) {
    params.validate();
    const DensityModel d = DensityModel::from_potential(W);
    if (params.g == 0.0) return make_resolvent_table(params, d, opt);
    ResolventTable t;
    t.Z = params.Z();
    const double kmax = opt.k_max > 0 ? opt.k_max : 0.87 * d.rho_max * d.rho_max;
    t.k = kernel_k_nodes(opt, kmax);
    for (double k : t.k) {
        const cplx G = g_function_rspace(k, params.g, W);
        t.G.push_back(G);
        t.khat.push_back(-1.0 / (I * k + t.Z * G));
    }
    // Leading k^{-1/2} coefficient read off the smallest node with a reliable G.
    std::size_t ref = 0;
    while (ref + 1 < t.k.size() && t.k[ref] < 1e-6) ++ref;
    const cplx gamma = t.G[ref] / std::sqrt(t.k[ref]);
    t.c0 = (-1.0 / (t.Z * gamma)).real();
    return t;
}

KernelTable k_kernel_fourier(const std::vector<double>& t, const ResolventTable& table) {
    const std::size_t n = table.k.size();
    if (n < 4) throw ParameterError("resolvent table too small");
    // Subtract the singular c0 k^{-1/2} e^{-k} from both parts and the 1/k
    // decay of Im K^ via k / (1 + k^2); their transforms are known.
    std::vector<double> re(n), im(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = table.k[i];
        const double sing = table.c0 * std::exp(-k) / std::sqrt(k);
        re[i] = table.khat[i].real() - sing;
        im[i] = table.khat[i].imag() - sing - k / (1 + k * k);
    }
    const FilonTable fre(table.k, re), fim(table.k, im);
    const double sqpi = std::sqrt(kPi);
    KernelTable out;
    out.route = Route::fourier;
    for (double tt : t) {
        const cplx s = std::pow(cplx(1.0, -tt), -0.5) * sqpi * table.c0;
        const double C = fre.integrate(tt).real() + s.real();
        const double S = fim.integrate(tt).imag() + s.imag() + (tt == 0 ? 0.0 : (tt > 0 ? 1 : -1) * kPi / 2 * std::exp(-std::abs(tt)));
        const double full = (C + S) / kPi;
        const double cos_only = 2.0 * C / kPi;
        out.abscissae.push_back(tt);
        if (tt >= 0) {
            out.values.push_back(cos_only);
            out.quad_error.push_back(tt > 0 ? std::abs(cos_only - full) : 0.0);
        } else {
            out.values.push_back(full);
            out.quad_error.push_back(std::abs(full));
        }
        if (!std::isfinite(out.values.back().real()))
            throw AccuracyError("K: oscillatory quadrature produced a non-finite value", INFINITY);
    }
    return out;
}

KernelTable k_kernel_fourier(const std::vector<double>& t, const ModelParams& params, const RadialPotential& W) {
    return k_kernel_fourier(t, make_resolvent_table(params, W));
}

// ---------------------------------------------------------------- K, Volterra route

KernelTable k_kernel_volterra(double dt, double t_max, const ModelParams& params, const std::vector<double>& f) {
    params.validate();
    if (!(dt > 0) || !(t_max > 0)) throw ParameterError("volterra: dt and t_max must be positive");
    const std::size_t n = static_cast<std::size_t>(std::llround(t_max / dt)) + 1;
    if (f.size() < n) throw ParameterError("volterra: f samples do not cover [0, t_max]");
    const double Z = params.Z();
    std::vector<double> K(n), Kd(n);
    K[0] = 1.0;
    Kd[0] = 0.0;
    const double denom = 1.0 + 0.25 * dt * dt * Z * f[0];
    for (std::size_t m = 1; m < n; ++m) {
        // Trapezoid for int_0^{t_m} f(t_m - s) K(s) ds without the K_m term.
        double S = 0.5 * f[m] * K[0];
        for (std::size_t j = 1; j < m; ++j) S += f[m - j] * K[j];
        S *= dt;
        K[m] = (K[m - 1] + 0.5 * dt * (Kd[m - 1] - Z * S)) / denom;
        Kd[m] = -Z * (S + 0.5 * dt * f[0] * K[m]);
        if (!std::isfinite(K[m]) || std::abs(K[m]) > 10.0)
            throw StabilityError("volterra: iterates grow without bound; reduce dt");
    }
    KernelTable out;
    out.route = Route::volterra;
    for (std::size_t m = 0; m < n; ++m) {
        out.abscissae.push_back(m * dt);
        out.values.push_back(K[m]);
        out.quad_error.push_back(0.0);
    }
    return out;
}

KernelTable k_kernel_volterra(double dt, double t_max, const ModelParams& params, const RadialPotential& W) {
    const auto fine = k_kernel_volterra(dt, t_max, params, f_samples(dt, t_max, params, W));
    // Error estimate from the Richardson difference against a doubled step.
    const auto coarse = k_kernel_volterra(2 * dt, t_max, params, f_samples(2 * dt, t_max, params, W));
    KernelTable out = fine;
    for (std::size_t m = 0; m < out.values.size(); ++m) {
        if (m % 2 == 0 && m / 2 < coarse.values.size())
            out.quad_error[m] = std::abs(fine.values[m] - coarse.values[m / 2]) / 3.0;
        else if (m > 0)
            out.quad_error[m] = out.quad_error[m - 1];
    }
    return out;
}

// ---------------------------------------------------------------- identities

KdotReport kdot_and_identity(const KernelTable& K, const std::vector<double>& f, double Z, double window_min,
                             double window_max) {
    const std::size_t n = K.abscissae.size();
    if (n < 3) throw ParameterError("kdot: need at least 3 samples");
    if (K.abscissae.front() != 0.0) throw ParameterError("kdot: K must start at t = 0");
    const double dt = K.abscissae[1] - K.abscissae[0];
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(K.abscissae[i] - i * dt) > 1e-9 * (1 + i * dt)) throw ParameterError("kdot: K grid is not uniform");
    if (f.size() < n) throw ParameterError("kdot: f grid does not cover the K grid");
    const auto k = K.real();
    KdotReport rep;
    rep.window_min = window_min;
    rep.window_max = window_max;
    rep.t = K.abscissae;
    rep.kdot_fd.resize(n);
    rep.kdot_conv.resize(n);
    rep.kdot_fd[0] = (-3 * k[0] + 4 * k[1] - k[2]) / (2 * dt);
    rep.kdot_fd[n - 1] = (3 * k[n - 1] - 4 * k[n - 2] + k[n - 3]) / (2 * dt);
    for (std::size_t i = 1; i + 1 < n; ++i) rep.kdot_fd[i] = (k[i + 1] - k[i - 1]) / (2 * dt);
    for (std::size_t m = 0; m < n; ++m) {
        double S = 0;
        if (m > 0) {
            S = 0.5 * (k[m] * f[0] + k[0] * f[m]);
            for (std::size_t j = 1; j < m; ++j) S += k[m - j] * f[j];
            S *= dt;
        }
        rep.kdot_conv[m] = -Z * S;
        if (rep.t[m] >= window_min && rep.t[m] <= window_max)
            rep.max_residual = std::max(rep.max_residual, std::abs(rep.kdot_fd[m] - rep.kdot_conv[m]));
    }
    return rep;
}

FitResult kdot_exponent(const KernelTable& K, double t_min, double t_max) {
    const std::size_t n = K.abscissae.size();
    if (n < 3) throw ParameterError("kdot: need at least 3 samples");
    const auto k = K.real();
    std::vector<double> t, y;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double ti = K.abscissae[i];
        if (ti < t_min || ti > t_max) continue;
        t.push_back(ti);
        y.push_back(std::abs((k[i + 1] - k[i - 1]) / (K.abscissae[i + 1] - K.abscissae[i - 1])));
    }
    return fit_power_law(t, y, t_min, t_max);
}

cplx f_transform(double k, const ModelParams& params, const RadialPotential& W) {
    // Filon in t on a grid graded from 0; f varies on the scale 1 + t.
    const double T = std::max(4000.0, 400.0 / std::max(std::abs(k), 1e-6));
    std::vector<double> t{0.0};
    double h = 0.01;
    while (t.back() < T) {
        t.push_back(std::min(T, t.back() + h));
        h = std::min(0.02 * (1.0 + t.back()), 1e3);
    }
    std::vector<double> y(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) y[i] = f_function(t[i], params, W).value;
    const FilonTable table(t, y);
    cplx acc = table.integrate(k);
    // Tail beyond T with f ~ f(T) (T / t)^{3/2}: two integrations by parts, or 2 T f(T) at k = 0.
    const double fT = y.back();
    const double dfT = -1.5 * fT / T;
    if (k == 0.0) acc += 2.0 * T * fT;
    else {
        const cplx e = std::polar(1.0, k * T);
        acc += -e * fT / (I * k) + e * dfT / ((I * k) * (I * k));
    }
    return params.Z() * acc;
}

FIdentityReport check_F_identity(const std::vector<double>& k, const ModelParams& params, const RadialPotential& W,
                                 double small_k) {
    FIdentityReport rep;
    rep.k = k;
    rep.small_k = small_k;
    const double Z = params.Z();
    for (double kk : k) {
        const cplx F = f_transform(kk, params, W);
        const cplx mZG = -Z * g_function(kk, params, W);
        rep.F.push_back(F);
        rep.minus_ZG.push_back(mZG);
        if (std::abs(mZG) == 0.0) throw AccuracyError("F identity: G vanishes at k = " + std::to_string(kk), 0.0);
        rep.max_relative_deviation = std::max(rep.max_relative_deviation, std::abs(F - mZG) / std::abs(mZG));
    }
    const cplx Fs = f_transform(small_k, params, W);
    rep.small_k_ratio = Fs / (I * small_k + Z * g_function(small_k, params, W));
    return rep;
}

}  // namespace friction
