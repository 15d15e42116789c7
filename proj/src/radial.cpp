#include "friction/radial.hpp"

#include "friction/errors.hpp"
#include "friction/quadrature.hpp"
#include "friction/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace friction {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t stencil_start(std::size_t i, std::size_t n) {
    // Four-point stencil i-1..i+2 clamped into the grid.
    if (n < 4) throw ParameterError("radial grid needs at least 4 nodes");
    if (i == 0) return 0;
    return std::min(i - 1, n - 4);
}

double lagrange4(const double* x, const double* y, double at) {
    double acc = 0;
    for (int j = 0; j < 4; ++j) {
        double l = 1;
        for (int m = 0; m < 4; ++m)
            if (m != j) l *= (at - x[m]) / (x[j] - x[m]);
        acc += l * y[j];
    }
    return acc;
}

std::size_t locate(const std::vector<double>& x, double at) {
    auto it = std::upper_bound(x.begin(), x.end(), at);
    if (it == x.begin()) return 0;
    return std::min<std::size_t>(static_cast<std::size_t>(it - x.begin()) - 1, x.size() - 2);
}

// Fornberg's recursion for the weights of the m-th derivative at z on nodes x.
template <std::size_t N>
std::array<double, N> fd_weights(double z, const std::array<double, N>& x, int m) {
    std::array<std::array<double, 3>, N> c{};
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < N; ++i) {
        const int mn = std::min<int>(static_cast<int>(i), m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::array<double, N> w{};
    for (std::size_t i = 0; i < N; ++i) w[i] = c[i][m];
    return w;
}

RadialProfile like(const RadialProfile& f, std::vector<double> values, DecayTag tag) {
    RadialProfile out;
    out.r = f.r;
    out.values = std::move(values);
    out.decay = tag;
    out.ell = f.ell;
    return out;
}

}  // namespace

IntervalRule interval_rule(const std::vector<double>& r) {
    static const double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    static const double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    static const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
    static const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
    const std::array<double, 4> xs{-b, -a, a, b};
    const std::array<double, 4> ws{wb, wa, wa, wb};
    IntervalRule rule;
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
        const double mid = 0.5 * (r[k] + r[k + 1]);
        const double half = 0.5 * (r[k + 1] - r[k]);
        for (int q = 0; q < 4; ++q) {
            rule.x.push_back(mid + half * xs[q]);
            rule.w.push_back(half * ws[q]);
            rule.interval.push_back(k);
        }
    }
    return rule;
}

std::vector<double> values_on_rule(const RadialProfile& f, const IntervalRule& rule) {
    std::vector<double> out(rule.x.size());
    const std::size_t n = f.r.size();
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
        const std::size_t s = stencil_start(rule.interval[q], n);
        out[q] = lagrange4(&f.r[s], &f.values[s], rule.x[q]);
    }
    return out;
}

std::string to_string(DecayTag tag) {
    switch (tag) {
        case DecayTag::gaussian: return "gaussian";
        case DecayTag::inverse_r: return "inverse_r";
        default: return "compact";
    }
}

double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at) {
    const std::size_t i = locate(x, at);
    const std::size_t s = stencil_start(i, x.size());
    return lagrange4(&x[s], &y[s], at);
}

double RadialProfile::operator()(double x) const {
    if (x <= r.back()) return interpolate(r, values, std::max(x, r.front()));
    if (decay == DecayTag::inverse_r) return tail_constant() / x;
    return 0.0;
}

double RadialProfile::tail_constant() const {
    // Least squares for f = c / r over the last tenth of the nodes.
    double num = 0, den = 0;
    for (std::size_t i = r.size() - std::max<std::size_t>(r.size() / 10, 2); i < r.size(); ++i) {
        num += values[i] / r[i];
        den += 1.0 / (r[i] * r[i]);
    }
    return den > 0 ? num / den : 0.0;
}

void RadialProfile::validate() const {
    if (r.size() != values.size()) throw DataError("radial profile: grid and values differ in size");
    if (r.size() < 4) throw DataError("radial profile: need at least 4 nodes");
    if (r.front() < 0) throw DataError("radial profile: first node must be >= 0");
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i > 0 && !(r[i] > r[i - 1])) throw DataError("radial profile: grid not strictly increasing");
        if (!std::isfinite(values[i])) throw DataError("radial profile: non-finite value");
    }
}

std::vector<double> make_radial_grid(double sigma, const RadialGridSpec& spec) {
    if (!(sigma > 0)) throw ParameterError("radial grid: sigma must be positive");
    if (spec.nodes < 16) throw ParameterError("radial grid: need at least 16 nodes");
    const double R = spec.extent_sigmas * sigma;
    const double s = spec.stretch;
    std::vector<double> r(static_cast<std::size_t>(spec.nodes));
    const double denom = std::expm1(s);
    for (int i = 0; i < spec.nodes; ++i) r[i] = R * std::expm1(s * i / (spec.nodes - 1)) / denom;
    r.back() = R;
    return r;
}

std::vector<double> cumulative_integral(const std::vector<double>& r, const std::vector<double>& f) {
    // Two-point Gauss on each interval is exact for the local cubic interpolant.
    const std::size_t n = r.size();
    std::vector<double> out(n, 0.0);
    const double g = 1.0 / std::sqrt(3.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const std::size_t s = stencil_start(k, n);
        const double mid = 0.5 * (r[k] + r[k + 1]);
        const double half = 0.5 * (r[k + 1] - r[k]);
        const double v = lagrange4(&r[s], &f[s], mid - half * g) + lagrange4(&r[s], &f[s], mid + half * g);
        out[k + 1] = out[k] + half * v;
    }
    return out;
}

std::vector<double> radial_laplacian(const std::vector<double>& r, const std::vector<double>& u) {
    const std::size_t n = r.size();
    if (n < 5) throw ParameterError("radial_laplacian: need at least 5 nodes");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 && r[0] == 0.0) {
            // Even extension through the origin; -Delta u(0) = -3 u''(0).
            const std::array<double, 5> x{-r[2], -r[1], 0.0, r[1], r[2]};
            const auto w = fd_weights(0.0, x, 2);
            const double d2 = w[0] * u[2] + w[1] * u[1] + w[2] * u[0] + w[3] * u[1] + w[4] * u[2];
            out[i] = -3.0 * d2;
            continue;
        }
        std::size_t s;
        if (i < 2) s = 0;
        else if (i + 2 >= n) s = n - 5;
        else s = i - 2;
        std::array<double, 5> x{};
        for (int j = 0; j < 5; ++j) x[j] = r[s + j];
        const auto w2 = fd_weights(r[i], x, 2);
        const auto w1 = fd_weights(r[i], x, 1);
        double d1 = 0, d2 = 0;
        for (int j = 0; j < 5; ++j) {
            d1 += w1[j] * u[s + j];
            d2 += w2[j] * u[s + j];
        }
        out[i] = -(d2 + 2.0 * d1 / r[i]);
    }
    return out;
}

double weighted_l2(const RadialProfile& f, double s) {
    const auto rule = interval_rule(f.r);
    const auto v = values_on_rule(f, rule);
    double acc = 0;
    for (std::size_t q = 0; q < v.size(); ++q)
        acc += rule.w[q] * std::pow(1.0 + rule.x[q] * rule.x[q], s) * v[q] * v[q] * 4.0 * kPi * rule.x[q] * rule.x[q];
    if (f.decay == DecayTag::inverse_r && s < -0.5) {
        const double c = f.tail_constant();
        const double R = f.r.back();
        // int_R^inf r^{2s} c^2 / r^2 4 pi r^2 dr with (1 + r^2)^s ~ r^{2s}.
        acc += 4.0 * kPi * c * c * std::pow(R, 2.0 * s + 1.0) / (-2.0 * s - 1.0);
    }
    return std::sqrt(acc);
}

double interior_weighted_residual(const std::vector<double>& r, const std::vector<double>& res, double s,
                                  int skip) {
    double acc = 0;
    const std::size_t lo = static_cast<std::size_t>(skip);
    const std::size_t hi = r.size() - static_cast<std::size_t>(skip);
    for (std::size_t i = lo; i + 1 < hi; ++i) {
        const double h = r[i + 1] - r[i];
        auto term = [&](std::size_t k) {
            return std::pow(1.0 + r[k] * r[k], s) * res[k] * res[k] * 4.0 * kPi * r[k] * r[k];
        };
        acc += 0.5 * h * (term(i) + term(i + 1));
    }
    return std::sqrt(acc);
}

RadialProfile poisson_inverse(const RadialProfile& W) {
    W.validate();
    if (W.ell != 0) throw ParameterError("poisson_inverse: radial (ell = 0) data required");
    const std::size_t n = W.r.size();
    std::vector<double> s2w(n), sw(n);
    for (std::size_t i = 0; i < n; ++i) {
        s2w[i] = W.r[i] * W.r[i] * W.values[i];
        sw[i] = W.r[i] * W.values[i];
    }
    const auto inner = cumulative_integral(W.r, s2w);
    const auto outer_cum = cumulative_integral(W.r, sw);
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double outer = outer_cum.back() - outer_cum[i];
        u[i] = (W.r[i] > 0 ? inner[i] / W.r[i] : 0.0) + outer;
    }
    return like(W, std::move(u), DecayTag::inverse_r);
}

ResolventResult resolvent_solve(const RadialProfile& W, double g, const ResolventOptions& opt) {
    if (!(opt.tol > 0)) throw ParameterError("resolvent: tol must be positive");
    if (!std::isfinite(g)) throw ParameterError("resolvent: g must be finite");
    ResolventResult res;
    res.u = poisson_inverse(W);
    const std::size_t n = W.r.size();
    auto residual_of = [&](const RadialProfile& u) {
        const auto lap = radial_laplacian(u.r, u.values);
        std::vector<double> rr(n);
        for (std::size_t i = 0; i < n; ++i) rr[i] = lap[i] + g * W.values[i] * u.values[i] - W.values[i];
        return interior_weighted_residual(u.r, rr, 3.0);
    };
    if (g == 0.0) {
        res.residual = residual_of(res.u);
        return res;
    }
    double prev_update = INFINITY;
    int growth = 0;
    bool converged = false;
    for (int it = 1; it <= opt.max_iter && !converged; ++it) {
        RadialProfile rhs = W;
        for (std::size_t i = 0; i < n; ++i) rhs.values[i] = W.values[i] - g * W.values[i] * res.u.values[i];
        RadialProfile next = poisson_inverse(rhs);
        double upd = 0, norm = 0;
        for (std::size_t i = 0; i < n; ++i) {
            upd = std::max(upd, std::abs(next.values[i] - res.u.values[i]));
            norm = std::max(norm, std::abs(next.values[i]));
        }
        res.u = std::move(next);
        res.iterations = it;
        if (!std::isfinite(upd) || norm > 1e12)
            throw DivergenceError("resolvent: fixed-point iteration diverges for g = " + std::to_string(g));
        growth = upd > prev_update ? growth + 1 : 0;
        if (growth >= 5)
            throw DivergenceError("resolvent: fixed-point iteration is not contracting for g = " + std::to_string(g));
        prev_update = upd;
        converged = upd <= 1e-14 * std::max(norm, 1.0);
    }
    if (!converged)
        throw DivergenceError("resolvent: no fixed point after " + std::to_string(opt.max_iter) + " iterations");
    res.residual = residual_of(res.u);
    if (res.residual > opt.tol) throw AccuracyError("resolvent: grid too coarse for requested tolerance", res.residual);
    return res;
}

RadialProfile resolvent_apply(const RadialProfile& W, double g, double tol) {
    ResolventOptions opt;
    opt.tol = tol;
    return resolvent_solve(W, g, opt).u;
}

RadialProfile bar_beta(const RadialProfile& W, double g, double rho0, double tol) {
    if (!(rho0 > 0)) throw ParameterError("bar_beta: rho0 must be positive");
    RadialProfile u = resolvent_apply(W, g, tol);
    const double s = std::sqrt(rho0);
    for (auto& v : u.values) v *= -s;
    return u;
}

RadialProfile xi_profile(const RadialProfile& W, double g, double tol) {
    const RadialProfile u = resolvent_apply(W, g, tol);
    std::vector<double> v(W.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = W.values[i] - g * W.values[i] * u.values[i];
    return like(W, std::move(v), DecayTag::gaussian);
}

double ball_norm(const RadialProfile& f, double R) {
    const double Rg = f.r.back();
    std::vector<double> sq(f.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = 4.0 * kPi * f.r[i] * f.r[i] * f.values[i] * f.values[i];
    double acc;
    if (R <= Rg) {
        const auto rule = gauss_legendre_breaks([&] {
            std::vector<double> b;
            for (double x : f.r)
                if (x < R) b.push_back(x);
            b.push_back(R);
            return b;
        }());
        acc = 0;
        for (const auto& q : rule) {
            const double v = f(q.x);
            acc += q.w * 4.0 * kPi * q.x * q.x * v * v;
        }
    } else {
        acc = cumulative_integral(f.r, sq).back();
        if (f.decay == DecayTag::inverse_r) {
            const double c = f.tail_constant();
            acc += 4.0 * kPi * c * c * (R - Rg);
        }
    }
    return std::sqrt(acc);
}

SpectralTable sector_transform(const RadialProfile& f, int ell, const SectorOptions& opt) {
    if (ell != 0 && ell != 1 && ell != 3) throw ParameterError("sector_transform: ell must be 0, 1 or 3");
    f.validate();
    SpectralTable t;
    t.ell = ell;
    for (const auto& q : gauss_legendre_panels(0.0, opt.rho_max, opt.panels)) {
        t.rho.push_back(q.x);
        t.weights.push_back(q.w);
    }
    t.values.assign(t.rho.size(), 0.0);
    if (f.ell != ell) return t;
    const auto rule = interval_rule(f.r);
    const auto v = values_on_rule(f, rule);
    const double norm = std::sqrt(2.0 / kPi);
    const double R = f.r.back();
    const double c = f.decay == DecayTag::inverse_r ? f.tail_constant() : 0.0;
    for (std::size_t k = 0; k < t.rho.size(); ++k) {
        const double rho = t.rho[k];
        double acc = 0;
        for (std::size_t q = 0; q < v.size(); ++q) acc += rule.w[q] * v[q] * sph_j(ell, rho * rule.x[q]) * rule.x[q] * rule.x[q];
        // Abel-regularised tail of c/r beyond the grid (ell = 0 only).
        if (c != 0.0 && ell == 0) acc += c * std::cos(rho * R) / (rho * rho);
        t.values[k] = norm * acc;
    }
    return t;
}

RadialProfile inverse_sector_transform(const SpectralTable& t, const std::vector<double>& r) {
    RadialProfile out;
    out.r = r;
    out.ell = t.ell;
    out.values.assign(r.size(), 0.0);
    const double norm = std::sqrt(2.0 / kPi);
    for (std::size_t i = 0; i < r.size(); ++i) {
        double acc = 0;
        for (std::size_t k = 0; k < t.rho.size(); ++k)
            acc += t.weights[k] * t.values[k] * sph_j(t.ell, t.rho[k] * r[i]) * t.rho[k] * t.rho[k];
        out.values[i] = norm * acc;
    }
    return out;
}

SpectralTable spectral_density(const RadialProfile& W, const SectorOptions& opt) {
    SpectralTable t = sector_transform(W, 0, opt);
    for (auto& v : t.values) v = v * v;
    return t;
}

}  // namespace friction
