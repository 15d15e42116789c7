#include "friction/dispersive.hpp"

#include "friction/errors.hpp"
#include "friction/quadrature.hpp"
#include "friction/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace friction {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void check_ell(int ell) {
    if (ell != 0 && ell != 1 && ell != 3) throw ParameterError("sector: ell must be 0, 1 or 3");
}

double multiplicity(int ell) { return 4.0 * kPi / (2 * ell + 1); }

}  // namespace

double GaussianSpectrum::operator()(double rho) const { return coeff * std::pow(rho, power) * std::exp(-a * rho * rho); }

ComplexProfile evolve_free_sector(const RadialProfile& f, int ell, double t, const SectorOptions& opt) {
    check_ell(ell);
    if (!std::isfinite(t) || t < 0) throw ParameterError("evolve: t must be >= 0");
    // Phase t rho^2 changes by 2 t rho_max h across a panel of width h; keep it
    // below about 2 rad per panel (20 Gauss nodes resolve that comfortably).
    SectorOptions o = opt;
    const double need = std::ceil(t * o.rho_max * o.rho_max);
    o.panels = std::max(o.panels, static_cast<int>(need));
    if (o.panels > 40000)
        throw AccuracyError("evolve: t rho_max^2 too large for direct quadrature", t * o.rho_max * o.rho_max);
    SpectralTable tab = sector_transform(f, ell, o);
    std::vector<cplx> evolved(tab.rho.size());
    for (std::size_t k = 0; k < tab.rho.size(); ++k) evolved[k] = tab.values[k] * std::polar(1.0, -t * tab.rho[k] * tab.rho[k]);
    ComplexProfile out;
    out.r = f.r;
    out.ell = ell;
    out.values.assign(f.r.size(), 0.0);
    const double norm = std::sqrt(2.0 / kPi);
    for (std::size_t i = 0; i < f.r.size(); ++i) {
        cplx acc = 0;
        for (std::size_t k = 0; k < tab.rho.size(); ++k)
            acc += tab.weights[k] * evolved[k] * sph_j(ell, tab.rho[k] * f.r[i]) * tab.rho[k] * tab.rho[k];
        out.values[i] = norm * acc;
    }
    return out;
}

ComplexProfile evolve_free_sector(const GaussianSpectrum& spec, const std::vector<double>& r, double t) {
    check_ell(spec.ell);
    if (!(spec.a > 0)) throw ParameterError("spectrum: a must be positive");
    if (spec.power < -2 - spec.ell) throw ParameterError("spectrum: power too negative for the sector");
    if (!std::isfinite(t) || t < 0) throw ParameterError("evolve: t must be >= 0");
    const cplx alpha(spec.a, t);
    const double m = std::abs(alpha);
    const double phi = 0.5 * std::arg(alpha);
    const cplx ray = std::polar(1.0, -phi);
    ComplexProfile out;
    out.r = r;
    out.ell = spec.ell;
    out.values.assign(r.size(), 0.0);
    // rho^{power + 2} d rho along the ray contributes e^{-i phi (power + 3)}.
    const cplx pref = std::sqrt(2.0 / kPi) * spec.coeff * std::polar(1.0, -phi * (spec.power + 3));
    const double rho_max = std::sqrt(46.0 / spec.a);
    for (std::size_t i = 0; i < r.size(); ++i) {
        // On the ray the integrand peaks at e^{r^2 sin^2(phi) / (4 |alpha|)} above
        // the integral; past e^8 the rounding error is better avoided on the real axis.
        const double growth = r[i] * r[i] * std::sin(phi) * std::sin(phi) / (4.0 * m);
        if (growth > 8.0) {
            const int panels = std::max(8, static_cast<int>(std::ceil((t * rho_max + r[i]) * rho_max / 2.0)));
            cplx acc = 0;
            for (const auto& q : gauss_legendre_panels(0.0, rho_max, panels))
                acc += q.w * spec(q.x) * std::polar(1.0, -t * q.x * q.x) * sph_j(spec.ell, q.x * r[i]) * q.x * q.x;
            out.values[i] = std::sqrt(2.0 / kPi) * acc;
            continue;
        }
        // Cut where |alpha| s^2 - s r sin(phi) reaches 46; j_ell(rho r) oscillates
        // with frequency r cos(phi) in s.
        const double b = r[i] * std::sin(phi);
        const double smax = (b + std::sqrt(b * b + 4.0 * 46.0 * m)) / (2.0 * m);
        const int panels = std::max(4, static_cast<int>(std::ceil(smax * (r[i] + 1.0) / 2.0)));
        cplx acc = 0;
        for (const auto& q : gauss_legendre_panels(0.0, smax, panels)) {
            const double s = q.x;
            acc += q.w * std::pow(s, spec.power + 2) * std::exp(-m * s * s) * sph_j(spec.ell, ray * (s * r[i]));
        }
        out.values[i] = pref * acc;
    }
    return out;
}

RadialProfile profile_from_spectrum(const GaussianSpectrum& spec, const std::vector<double>& r) {
    const auto c = evolve_free_sector(spec, r, 0.0);
    RadialProfile p;
    p.r = r;
    p.ell = spec.ell;
    for (const auto& v : c.values) p.values.push_back(v.real());
    p.decay = spec.power + 2 + spec.ell <= 0 ? DecayTag::inverse_r : DecayTag::gaussian;
    return p;
}

double weighted_norm(const ComplexProfile& u, double s) {
    const std::size_t n = u.r.size();
    if (n < 4 || u.values.size() != n) throw DataError("weighted_norm: malformed profile");
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(u.values[i].real()) || !std::isfinite(u.values[i].imag()))
            throw DataError("weighted_norm: non-finite value");
        f[i] = std::pow(1 + u.r[i] * u.r[i], s) * std::norm(u.values[i]) * u.r[i] * u.r[i];
    }
    return std::sqrt(multiplicity(u.ell) * cumulative_integral(u.r, f).back());
}

double weighted_norm(const RadialProfile& u, double s) {
    ComplexProfile c;
    c.r = u.r;
    c.ell = u.ell;
    for (double v : u.values) c.values.emplace_back(v, 0.0);
    return weighted_norm(c, s);
}

std::vector<double> norm_grid(double R, int nodes) {
    RadialGridSpec spec;
    spec.nodes = nodes;
    spec.extent_sigmas = R;
    spec.stretch = 3.0;
    return make_radial_grid(1.0, spec);
}

void DecayTrace::validate() const {
    if (times.size() != weighted_norms.size()) throw DataError("decay trace: column sizes differ");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0) || (i > 0 && !(times[i] > times[i - 1])))
            throw DataError("decay trace: times must be positive and increasing");
        if (!(weighted_norms[i] > 0) || !std::isfinite(weighted_norms[i]))
            throw DataError("decay trace: norms must be positive and finite");
    }
    if (times.size() < 2 || times.back() < std::pow(10.0, 1.5) * times.front() * (1 - 1e-12))
        throw DataError("decay trace: times must span at least 1.5 decades");
}

FitResult decay_exponent_fit(const DecayTrace& trace, double t_min, double t_max) {
    trace.validate();
    if (trace.times.empty()) throw ParameterError("decay trace: empty");
    if (t_max <= 0) t_max = trace.times.back();
    if (t_min <= 0) t_min = t_max / 10.0;
    return fit_power_law(trace.times, trace.weighted_norms, t_min, t_max);
}

std::vector<PropagatorRow> verify_propagator_suite(const ModelParams& params, const RadialPotential& W,
                                                   const SuiteOptions& opt) {
    params.validate();
    if (params.g != 0.0) throw ParameterError("propagator suite: free flow only (g = 0)");
    const double a = 0.5 * W.sigma * W.sigma;  // W^ = e^{-sigma^2 rho^2 / 2}
    struct Class {
        std::string tag;
        std::vector<GaussianSpectrum> parts;
        int weight;
        double expected;
    };
    // Spectra of d_1^n (-Delta)^{-m} W in the sectors of cos^n theta:
    // cos theta = P_1, cos^3 theta = (3 P_1 + 2 P_3) / 5.
    const std::vector<Class> classes = {
        {"plain", {{0, 0, a, 1.0}}, -3, -1.5},
        {"h_inv", {{0, -2, a, 1.0}}, -3, -0.5},
        {"dW", {{1, 1, a, -1.0}}, -5, -2.5},
        {"d_h_inv_W", {{1, -1, a, -1.0}}, -5, -1.5},
        {"d3_h_inv_W", {{1, 1, a, -0.6}, {3, 1, a, -0.4}}, -5, -2.5},
    };
    const auto r = norm_grid();
    std::vector<double> times;
    for (int i = 0; i < opt.samples; ++i)
        times.push_back(opt.t_first * std::pow(opt.t_last / opt.t_first, double(i) / (opt.samples - 1)));
    std::vector<PropagatorRow> rows;
    for (const auto& c : classes) {
        PropagatorRow row;
        row.tag = c.tag;
        row.weight_power = c.weight;
        row.expected = c.expected;
        row.trace.tag = c.tag;
        row.trace.weight_power = c.weight;
        for (const auto& p : c.parts) row.trace.sectors.push_back(p.ell);
        for (double t : times) {
            double sq = 0;
            for (const auto& p : c.parts) {
                const double nrm = weighted_norm(evolve_free_sector(p, r, t), c.weight);
                sq += nrm * nrm;
            }
            row.trace.times.push_back(t);
            row.trace.weighted_norms.push_back(std::sqrt(sq));
        }
        row.fit = decay_exponent_fit(row.trace, opt.fit_min, opt.fit_max);
        row.pass = std::abs(row.fit.exponent - row.expected) <= opt.tolerance;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace friction
