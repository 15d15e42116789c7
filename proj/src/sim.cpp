#include "friction/sim.hpp"

#include "friction/errors.hpp"
#include "friction/version.hpp"

#include <fftw3.h>
#include <json.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

namespace friction {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

bool smooth_size(int n) {
    if (n < 8 || n % 2 != 0) return false;
    for (int p : {2, 3, 5})
        while (n % p == 0) n /= p;
    return n == 1;
}

// Odd series through x^7 is exact to rounding for |x| < 1e-2.
double small_sin(double x) {
    if (std::abs(x) >= 1e-2) return std::sin(x);
    constexpr double c3 = -1.0 / 6.0, c5 = 1.0 / 120.0, c7 = -1.0 / 5040.0;
    const double x2 = x * x;
    return x * (1.0 + x2 * (c3 + x2 * (c5 + x2 * c7)));
}

// x - X folded into [-L/2, L/2).
double wrap(double d, double L) { return d - L * std::floor(d / L + 0.5); }

}  // namespace

std::vector<double> BoxGrid::axis() const {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = -0.5 * L + i * spacing();
    return x;
}

void BoxGrid::validate(double sigma) const {
    if (!smooth_size(n)) throw GridError("grid: n must be an even 2^a 3^b 5^c >= 8, got " + std::to_string(n));
    if (!(L > 0) || !std::isfinite(L)) throw GridError("grid: L must be positive");
    if (sigma / spacing() < 1.0)
        throw GridError("grid: spacing " + std::to_string(spacing()) + " does not resolve sigma = " +
                        std::to_string(sigma));
    if (absorber_width < 0 || absorber_strength < 0) throw GridError("grid: absorber width/strength must be >= 0");
    if (absorber_width >= 0.2 * L) throw GridError("grid: absorber must stay below 20% of L per side");
    if (absorber_order < 1) throw GridError("grid: absorber order must be >= 1");
}

double EnergyParts::scale() const { return std::abs(particle) + std::abs(gradient) + std::abs(interaction); }

void TimeSeries::validate() const {
    const std::size_t m = t.size();
    if (P.size() != m || pabs.size() != m || X.size() != m || energy.size() != m || splash.size() != m ||
        splash_comoving.size() != m || mu.size() != m)
        throw DataError("time series: column sizes differ");
    for (std::size_t i = 0; i < m; ++i) {
        if (i > 0 && !(t[i] > t[i - 1])) throw DataError("time series: t must increase strictly");
        const double row[] = {t[i], P[i][0], P[i][1], P[i][2], pabs[i], X[i][0], X[i][1], X[i][2],
                              energy[i], splash[i], splash_comoving[i], mu[i]};
        for (double v : row)
            if (!std::isfinite(v)) throw DataError("time series: non-finite entry");
    }
}

std::vector<double> majorant_trace(const std::vector<double>& t, const std::vector<double>& pabs, double delta) {
    if (t.size() != pabs.size()) throw DataError("majorant: column sizes differ");
    std::vector<double> mu(t.size());
    double run = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        run = std::max(run, std::pow(1.0 + t[i], 0.5 + delta) * pabs[i]);
        mu[i] = run;
    }
    return mu;
}

double majorant_mu(const TimeSeries& series, double delta) {
    if (series.t.empty()) throw DataError("majorant: empty series");
    return majorant_trace(series.t, series.pabs, delta).back();
}

struct BoxSimulator::Impl {
    int n = 0;
    std::size_t N = 0;
    double h = 0;
    std::vector<double> x;
    std::vector<double> k2;     // |xi|^2 in FFT order
    std::vector<double> mask1;  // per-axis absorber exponent
    std::vector<double> mask;   // exp(-strength dt sum of axis profiles), rebuilt when dt changes
    double mask_dt = std::nan("");
    std::vector<cplx> kinetic;  // e^{-i |xi|^2 dt}
    double kinetic_dt = std::nan("");
    std::vector<cplx> work;
    std::vector<double> cm1, sn;  // per-step potential coefficients
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    // Uniform table of (h)^{-1} W for the splash.
    double u_step = 0.0;
    std::vector<double> u_table;
    double u_tail = 0.0;

    double u(double r) const {
        const double s = r / u_step;
        const std::size_t i = static_cast<std::size_t>(s);
        if (i + 3 >= u_table.size()) return u_tail / r;
        const std::size_t j = i == 0 ? 0 : i - 1;
        const double p = s - double(j);
        const double* y = &u_table[j];
        // Cubic Lagrange on nodes j..j+3 at offset p.
        return -y[0] * (p - 1) * (p - 2) * (p - 3) / 6 + y[1] * p * (p - 2) * (p - 3) / 2 -
               y[2] * p * (p - 1) * (p - 3) / 2 + y[3] * p * (p - 1) * (p - 2) / 6;
    }
};

BoxSimulator::BoxSimulator(const ModelParams& params, const RadialPotential& W, const BoxGrid& grid, SimOptions opt)
    : impl_(std::make_unique<Impl>()), params_(params), W_(W), grid_(grid), opt_(std::move(opt)) {
    params_.validate();
    grid_.validate(W_.sigma);
    if (!(opt_.dt > 0) || !(opt_.t_max > 0)) throw ParameterError("simulate: dt and t_max must be positive");
    if (opt_.sample_every < 1) throw ParameterError("simulate: sample_every must be >= 1");
    auto& m = *impl_;
    m.n = grid_.n;
    m.N = std::size_t(m.n) * m.n * m.n;
    m.h = grid_.spacing();
    m.x = grid_.axis();
    std::vector<double> xi(m.n);
    for (int i = 0; i < m.n; ++i) {
        const int f = i <= m.n / 2 ? i : i - m.n;
        xi[i] = 2.0 * kPi / grid_.L * f;
    }
    m.k2.resize(m.N);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            for (int k = 0; k < m.n; ++k)
                m.k2[(std::size_t(i) * m.n + j) * m.n + k] = xi[i] * xi[i] + xi[j] * xi[j] + xi[k] * xi[k];
    m.mask1.assign(m.n, 0.0);
    const double inner = 0.5 * grid_.L - grid_.absorber_width;
    if (grid_.absorber_width > 0)
        for (int i = 0; i < m.n; ++i) {
            const double d = std::abs(m.x[i]) - inner;
            if (d > 0) m.mask1[i] = std::pow(d / grid_.absorber_width, grid_.absorber_order);
        }
    m.work.resize(m.N);
    auto* buf = reinterpret_cast<fftw_complex*>(m.work.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    m.fwd = fftw_plan_dft_3d(m.n, m.n, m.n, buf, buf, FFTW_FORWARD, flags);
    m.bwd = fftw_plan_dft_3d(m.n, m.n, m.n, buf, buf, FFTW_BACKWARD, flags);
    // Splash profile on a uniform table covering the half diagonal of the box.
    const RadialProfile hw = resolvent_apply(W_.profile, params_.g);
    const double rmax = std::min(hw.r.back(), std::sqrt(3.0) * 0.5 * grid_.L + 4 * m.h);
    m.u_step = 0.01 * std::min(1.0, W_.sigma);
    const std::size_t nu = static_cast<std::size_t>(rmax / m.u_step) + 1;
    m.u_table.resize(nu);
    for (std::size_t i = 0; i < nu; ++i) m.u_table[i] = hw(i * m.u_step);
    m.u_tail = hw.tail_constant();
}

BoxSimulator::~BoxSimulator() {
    if (impl_) {
        if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
        if (impl_->bwd) fftw_destroy_plan(impl_->bwd);
    }
}

SimState BoxSimulator::init(const InitialData& data) const {
    validate_initial_data(data, 1e300);  // finiteness only; smallness is the caller's concern
    if (!valid_position(data.X0)) throw GridError("simulate: X0 too close to the absorber");
    const auto& m = *impl_;
    SimState s;
    s.X = data.X0;
    s.P = data.P0;
    s.beta.assign(m.N, 0.0);
    const auto& b = data.beta0;
    if (b.amplitude != 0.0) {
        for (int i = 0; i < m.n; ++i)
            for (int j = 0; j < m.n; ++j)
                for (int k = 0; k < m.n; ++k) {
                    const double c[3] = {m.x[i], m.x[j], m.x[k]};
                    double r2 = 0, ph = 0;
                    for (int a = 0; a < 3; ++a) {
                        const double d = wrap(c[a] - b.center[a], grid_.L);
                        r2 += d * d;
                        ph += b.carrier[a] * c[a];
                    }
                    s.beta[(std::size_t(i) * m.n + j) * m.n + k] =
                        b.amplitude * std::exp(-r2 / (2 * b.width * b.width)) * std::polar(1.0, ph);
                }
    }
    return s;
}

namespace {

// Separable pieces of W(x - X) = A g_x g_y g_z and of d_a W.
struct Separable {
    std::vector<double> g[3];
    std::vector<double> dg[3];  // -(x - X) / sigma^2 * g
};

Separable separable(const std::vector<double>& x, const Vec3& X, double sigma, double L) {
    Separable s;
    for (int a = 0; a < 3; ++a) {
        s.g[a].resize(x.size());
        s.dg[a].resize(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = wrap(x[i] - X[a], L);
            s.g[a][i] = std::exp(-d * d / (2 * sigma * sigma));
            s.dg[a][i] = -d / (sigma * sigma) * s.g[a][i];
        }
    }
    return s;
}

}  // namespace

void BoxSimulator::field_substep(SimState& s, double dt) {
    auto& m = *impl_;
    const int n = m.n;
    const double A = W_.amplitude;
    const double g = params_.g;
    const double sr = std::sqrt(params_.rho0);
    const auto sep = separable(m.x, s.X, W_.sigma, grid_.L);
    const bool tiny_g = g * std::abs(A) * std::abs(dt) < 1e-8;
    // One half step of i beta' = g W beta + sqrt(rho0) W with X frozen.
    // Coefficients of the exact local update, shared by both half steps:
    // beta <- e^{-i th} beta + (e^{-i th} - 1) sqrt(rho0) / g with th = g W dt / 2,
    // using e^{-i th} - 1 = -2 sin^2(th/2) - i sin(th) to avoid cancellation.
    const double tau = 0.5 * dt;
    m.cm1.resize(m.N);
    m.sn.resize(m.N);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double wij = A * sep.g[0][i] * sep.g[1][j];
            const std::size_t base = (std::size_t(i) * n + j) * n;
            for (int k = 0; k < n; ++k) {
                const double w = wij * sep.g[2][k];
                if (tiny_g) {
                    m.cm1[base + k] = 0.0;
                    m.sn[base + k] = tau * w;  // source increment -i tau sqrt(rho0) W
                    continue;
                }
                const double th = g * w * tau;
                const double hs = small_sin(0.5 * th);
                m.cm1[base + k] = -2.0 * hs * hs;
                m.sn[base + k] = small_sin(th);
            }
        }
    const double src = tiny_g ? sr : sr / g;
    auto half = [&](std::vector<cplx>& b) {
        for (std::size_t q = 0; q < m.N; ++q) {
            const double c = m.cm1[q], sn = m.sn[q];
            const double re = b[q].real(), im = b[q].imag();
            double nr = re, ni = im;
            if (!tiny_g) {
                nr += c * re + sn * im;
                ni += c * im - sn * re;
            }
            if (opt_.source) {
                nr += c * src;
                ni -= sn * src;
            }
            b[q] = cplx(nr, ni);
        }
    };
    half(s.beta);
    if (opt_.kinetic) {
        if (m.kinetic_dt != dt) {
            m.kinetic.resize(m.N);
            for (std::size_t q = 0; q < m.N; ++q) m.kinetic[q] = std::polar(1.0 / double(m.N), -m.k2[q] * dt);
            m.kinetic_dt = dt;
        }
        auto* p = reinterpret_cast<fftw_complex*>(s.beta.data());
        fftw_execute_dft(m.fwd, p, p);
        for (std::size_t q = 0; q < m.N; ++q) {
            const cplx a = s.beta[q], b = m.kinetic[q];
            s.beta[q] = cplx(a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real());
        }
        fftw_execute_dft(m.bwd, p, p);
    }
    half(s.beta);
    if (opt_.absorber && grid_.absorber_width > 0 && grid_.absorber_strength > 0) {
        if (m.mask_dt != dt) {
            m.mask.resize(m.N);
            const double c = grid_.absorber_strength * std::abs(dt);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        m.mask[(std::size_t(i) * n + j) * n + k] = std::exp(-c * (m.mask1[i] + m.mask1[j] + m.mask1[k]));
            m.mask_dt = dt;
        }
        for (std::size_t q = 0; q < m.N; ++q) s.beta[q] *= m.mask[q];
    }
    for (std::size_t q = 0; q < m.N; q += 97)
        if (!std::isfinite(s.beta[q].real()) || !std::isfinite(s.beta[q].imag()))
            throw InstabilityError("field: non-finite value at t = " + std::to_string(s.t) + " (node " +
                                   std::to_string(q) + ")");
}

Vec3 BoxSimulator::force(const SimState& s) const {
    const auto& m = *impl_;
    const int n = m.n;
    const auto sep = separable(m.x, s.X, W_.sigma, grid_.L);
    const double g = params_.g;
    const double sr2 = 2.0 * std::sqrt(params_.rho0);
    double f[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) {
        double fi[3] = {0, 0, 0};
        for (int j = 0; j < n; ++j) {
            const cplx* row = &s.beta[(std::size_t(i) * n + j) * n];
            double q0 = 0, q2 = 0;
            for (int k = 0; k < n; ++k) {
                const double q = g * std::norm(row[k]) + sr2 * row[k].real();
                q0 += sep.g[2][k] * q;
                q2 += sep.dg[2][k] * q;
            }
            fi[0] += sep.g[1][j] * q0;
            fi[1] += sep.dg[1][j] * q0;
            fi[2] += sep.g[1][j] * q2;
        }
        f[0] += sep.dg[0][i] * fi[0];
        f[1] += sep.g[0][i] * fi[1];
        f[2] += sep.g[0][i] * fi[2];
    }
    // dP/dt = -d/dX int W(x - X) q = +int (grad W)(x - X) q.
    const double c = W_.amplitude * m.h * m.h * m.h;
    return {c * f[0], c * f[1], c * f[2]};
}

void BoxSimulator::step(SimState& s, double dt) {
    const double M = params_.M;
    Vec3 F = force(s);
    for (int a = 0; a < 3; ++a) s.P[a] += 0.5 * dt * F[a];
    for (int a = 0; a < 3; ++a) s.X[a] += 0.5 * dt * s.P[a] / M;
    field_substep(s, dt);
    for (int a = 0; a < 3; ++a) s.X[a] += 0.5 * dt * s.P[a] / M;
    F = force(s);
    for (int a = 0; a < 3; ++a) s.P[a] += 0.5 * dt * F[a];
    s.t += dt;
}

EnergyParts BoxSimulator::energy_parts(const SimState& s) const {
    auto& m = *impl_;
    const int n = m.n;
    EnergyParts e;
    for (int a = 0; a < 3; ++a) e.particle += s.P[a] * s.P[a];
    e.particle /= 2.0 * params_.M;
    std::copy(s.beta.begin(), s.beta.end(), m.work.begin());
    auto* p = reinterpret_cast<fftw_complex*>(m.work.data());
    fftw_execute_dft(m.fwd, p, p);
    double grad = 0;
    for (std::size_t q = 0; q < m.N; ++q) grad += m.k2[q] * std::norm(m.work[q]);
    const double h3 = m.h * m.h * m.h;
    e.gradient = grad * h3 / double(m.N);
    const auto sep = separable(m.x, s.X, W_.sigma, grid_.L);
    const double g = params_.g;
    const double sr2 = 2.0 * std::sqrt(params_.rho0);
    double acc = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx* row = &s.beta[(std::size_t(i) * n + j) * n];
            const double wij = sep.g[0][i] * sep.g[1][j];
            double r = 0;
            for (int k = 0; k < n; ++k) r += sep.g[2][k] * (g * std::norm(row[k]) + sr2 * row[k].real());
            acc += wij * r;
        }
    e.interaction = W_.amplitude * h3 * acc;
    return e;
}

double BoxSimulator::splash_norm(const SimState& s, bool comoving) const {
    const auto& m = *impl_;
    const int n = m.n;
    const double sr = std::sqrt(params_.rho0);
    double acc = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double c[3] = {m.x[i], m.x[j], m.x[k]};
                double r2 = 0, lab2 = 0;
                for (int a = 0; a < 3; ++a) {
                    const double d = wrap(c[a] - s.X[a], grid_.L);
                    r2 += d * d;
                    lab2 += c[a] * c[a];
                }
                const double wgt = std::pow(1.0 + (comoving ? r2 : lab2), -3.0);
                const cplx v = s.beta[(std::size_t(i) * n + j) * n + k] + sr * m.u(std::sqrt(r2));
                acc += wgt * std::norm(v);
            }
    return std::sqrt(acc * m.h * m.h * m.h);
}

std::vector<cplx> BoxSimulator::dressing(const Vec3& X) const {
    const auto& m = *impl_;
    const int n = m.n;
    const double sr = std::sqrt(params_.rho0);
    std::vector<cplx> out(m.N);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double dx = wrap(m.x[i] - X[0], grid_.L), dy = wrap(m.x[j] - X[1], grid_.L),
                             dz = wrap(m.x[k] - X[2], grid_.L);
                out[(std::size_t(i) * n + j) * n + k] = -sr * m.u(std::sqrt(dx * dx + dy * dy + dz * dz));
            }
    return out;
}

bool BoxSimulator::valid_position(const Vec3& X) const {
    const double lim = 0.5 * grid_.L - 2.0 * grid_.absorber_width;
    for (double c : X)
        if (!(std::abs(c) <= lim)) return false;
    return true;
}

RunResult BoxSimulator::run(const InitialData& data) {
    const auto start = std::chrono::steady_clock::now();
    RunResult res;
    SimState s = init(data);
    auto& ts = res.series;
    auto record = [&]() {
        ts.t.push_back(s.t);
        ts.P.push_back(s.P);
        ts.pabs.push_back(norm(s.P));
        ts.X.push_back(s.X);
        ts.energy.push_back(energy(s));
        ts.splash.push_back(splash_norm(s, false));
        ts.splash_comoving.push_back(splash_norm(s, true));
        const double v = std::pow(1.0 + s.t, 0.5 + opt_.delta) * ts.pabs.back();
        ts.mu.push_back(ts.mu.empty() ? v : std::max(ts.mu.back(), v));
    };
    auto snapshot = [&](long k) {
        if (opt_.snapshot_every <= 0 || opt_.snapshot_dir.empty() || k % opt_.snapshot_every != 0) return;
        std::filesystem::create_directories(opt_.snapshot_dir);
        char name[64];
        std::snprintf(name, sizeof(name), "/beta_%08ld", k);
        write_snapshot(s, grid_, opt_.snapshot_dir + name);
    };
    record();
    snapshot(0);
    const long nsteps = std::lround(opt_.t_max / opt_.dt);
    try {
        for (long k = 1; k <= nsteps; ++k) {
            step(s, opt_.dt);
            s.t = k * opt_.dt;  // no accumulated rounding in t
            res.steps = k;
            if (!valid_position(s.X)) {
                res.status = "boundary";
                res.message = "X reached the absorber region at t = " + std::to_string(s.t);
                record();
                break;
            }
            if (k % opt_.sample_every == 0 || k == nsteps) record();
            snapshot(k);
        }
    } catch (const InstabilityError& e) {
        res.status = "instability";
        res.message = e.what();
    }
    const double tm = ts.t.back();
    if (res.status == "completed" && tm > 0) {
        try {
            res.momentum_fit = fit_power_law(ts.t, ts.pabs, tm / 10.0, tm);
            res.momentum_fit_ok = true;
        } catch (const std::exception& e) {
            res.message = std::string("momentum fit: ") + e.what();
        }
        std::size_t half = 0;
        while (half + 1 < ts.t.size() && ts.t[half] < 0.5 * tm) ++half;
        Vec3 d1, d2;
        for (int a = 0; a < 3; ++a) {
            d1[a] = ts.X.back()[a] - ts.X[half][a];
            d2[a] = ts.X[half][a] - ts.X.front()[a];
        }
        res.x_convergence = norm(d1);
        res.x_travel = norm(d2);
    }
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

SimState mirror(const SimState& s, int n) {
    SimState m = s;
    for (int a = 0; a < 3; ++a) {
        m.X[a] = -s.X[a];
        m.P[a] = -s.P[a];
    }
    auto flip = [n](int i) { return (n - i) % n; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                m.beta[(std::size_t(flip(i)) * n + flip(j)) * n + flip(k)] = s.beta[(std::size_t(i) * n + j) * n + k];
    return m;
}

void write_snapshot(const SimState& s, const BoxGrid& grid, const std::string& path_stem) {
    static_assert(std::endian::native == std::endian::little, "snapshots assume a little-endian host");
    const std::string bin = path_stem + ".bin";
    std::ofstream out(bin, std::ios::binary);
    if (!out) throw std::runtime_error("snapshot: cannot open " + bin);
    out.write(reinterpret_cast<const char*>(s.beta.data()), std::streamsize(s.beta.size() * sizeof(cplx)));
    if (!out) throw std::runtime_error("snapshot: write failed for " + bin);
    nlohmann::json meta = {{"shape", {grid.n, grid.n, grid.n}},
                           {"dtype", "complex128"},
                           {"byte_order", "little"},
                           {"layout", "row-major, last index fastest"},
                           {"box_length", grid.L},
                           {"t", s.t},
                           {"X", s.X},
                           {"P", s.P}};
    std::ofstream side(path_stem + ".json");
    if (!side) throw std::runtime_error("snapshot: cannot open " + path_stem + ".json");
    side << meta.dump(2) << "\n";
}

FrictionChecks check_friction_run(const RunResult& run, double delta) {
    FrictionChecks c;
    const auto& ts = run.series;
    if (run.status != "completed" || ts.size() < 8) return c;
    const double tm = ts.t.back();
    // Envelope: forward running maximum of |P| over a window of t_max / 20; it
    // must not increase anywhere after the transient and must end lower.
    const double win = tm / 20.0;
    std::vector<double> env;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts.t[i] < tm / 10.0) continue;
        double e = 0;
        for (std::size_t j = i; j < ts.size() && ts.t[j] <= ts.t[i] + win; ++j) e = std::max(e, ts.pabs[j]);
        env.push_back(e);
    }
    c.envelope_samples = static_cast<int>(env.size());
    c.envelope_decreasing = env.size() >= 2 && env.back() < env.front();
    for (std::size_t i = 1; i < env.size(); ++i)
        if (env[i] > env[i - 1]) c.envelope_decreasing = false;
    if (run.momentum_fit_ok) {
        c.decay_exponent = -run.momentum_fit.exponent;
        c.decay_ok = c.decay_exponent > 0.5;
    }
    const std::size_t q = ts.size() / 4;
    double a = 0, b = 0;
    for (std::size_t i = 0; i < q; ++i) {
        a += ts.splash[i];
        b += ts.splash[ts.size() - 1 - i];
    }
    c.splash_first_quarter = a / q;
    c.splash_last_quarter = b / q;
    c.splash_ok = c.splash_last_quarter < c.splash_first_quarter;
    c.stopping_ratio = run.x_travel > 0 ? run.x_convergence / run.x_travel : INFINITY;
    c.stopping_ok = c.stopping_ratio < 0.05;
    const auto mu = majorant_trace(ts.t, ts.pabs, delta);
    std::size_t half = 0;
    while (half + 1 < ts.size() && ts.t[half] < 0.5 * tm) ++half;
    c.mu_growth = mu.back() / mu[half] - 1.0;
    c.mu_ok = c.mu_growth < 0.10;
    return c;
}

}  // namespace friction
