#include "friction/model.hpp"

#include "friction/errors.hpp"
#include "friction/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace friction {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& name, const std::string& what) {
    if (!ok) throw ParameterError(name + ": " + what);
}

bool finite(const Vec3& v) { return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]); }

}  // namespace

double norm(const Vec3& v) { return std::hypot(v[0], v[1], v[2]); }

void ModelParams::validate() const {
    require(std::isfinite(M) && M > 0, "M", "tracer mass must be positive");
    require(std::isfinite(rho0) && rho0 > 0, "rho0", "density must be positive");
    require(std::isfinite(g_max) && g_max >= 0, "g_max", "must be non-negative");
    require(std::isfinite(g) && g >= 0 && g <= g_max,
            "g", "coupling must lie in [0, g_max = " + std::to_string(g_max) + "]");
}

double RadialPotential::value(double r) const { return amplitude * std::exp(-r * r / (2 * sigma * sigma)); }

double RadialPotential::hat(double rho) const {
    return amplitude * std::pow(sigma, 3) * std::exp(-sigma * sigma * rho * rho / 2);
}

double RadialPotential::integral() const {
    std::vector<double> f(profile.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = 4 * kPi * profile.r[i] * profile.r[i] * profile.values[i];
    return cumulative_integral(profile.r, f).back();
}

double RadialPotential::normalization_residual() const { return std::abs(integral() - std::pow(2 * kPi, 1.5)); }

RadialPotential make_default_potential(double sigma, const RadialGridSpec& grid) {
    if (!(std::isfinite(sigma) && sigma > 0)) throw ParameterError("sigma: must be positive");
    RadialPotential W;
    W.sigma = sigma;
    W.amplitude = std::pow(sigma, -3.0);
    W.profile.r = make_radial_grid(sigma, grid);
    W.profile.values.reserve(W.profile.r.size());
    for (double r : W.profile.r) W.profile.values.push_back(W.value(r));
    W.profile.decay = DecayTag::gaussian;
    return W;
}

InitialDataReport validate_initial_data(const InitialData& data, double eps0) {
    const auto& b = data.beta0;
    if (!finite(data.X0) || !finite(data.P0) || !finite(b.carrier) || !finite(b.center) ||
        !std::isfinite(b.amplitude) || !std::isfinite(b.width) || !std::isfinite(eps0))
        throw DataError("initial data: non-finite field");
    if (!(b.width > 0)) throw ParameterError("width: packet width must be positive");
    if (!(eps0 > 0)) throw ParameterError("eps0: must be positive");
    InitialDataReport rep;
    rep.eps0 = eps0;
    rep.momentum = norm(data.P0);
    if (b.amplitude != 0.0) {
        // |beta_0| is radial about c: integrate over y = x - c, averaging the
        // polynomial weight <c + y>^{2n} over cos(theta) with an exact rule.
        const double c = norm(b.center);
        const double k2 = b.carrier[0] * b.carrier[0] + b.carrier[1] * b.carrier[1] + b.carrier[2] * b.carrier[2];
        const double w = b.width;
        const auto radial = gauss_legendre_panels(0.0, 14.0 * w + 1.0, 40);
        const auto angular = gauss_legendre_panels(-1.0, 1.0, 1);
        double s5 = 0, s3 = 0;
        for (const auto& q : radial) {
            const double y = q.x;
            const double mod2 = b.amplitude * b.amplitude * std::exp(-y * y / (w * w));
            double a5 = 0, a3 = 0;
            for (const auto& m : angular) {
                const double x2 = c * c + y * y + 2 * c * y * m.x;
                a5 += 0.5 * m.w * std::pow(1 + x2, 5);
                a3 += 0.5 * m.w * std::pow(1 + x2, 3);
            }
            // |grad beta|^2 = (|y|^2 / w^4 + |k|^2) |beta|^2.
            s5 += q.w * 4 * kPi * y * y * a5 * mod2;
            s3 += q.w * 4 * kPi * y * y * a3 * (y * y / (w * w * w * w) + k2) * mod2;
        }
        rep.weighted5 = std::sqrt(s5);
        rep.weighted3_grad = std::sqrt(s3);
    }
    rep.pass = rep.weighted5 <= eps0 && rep.momentum <= eps0;
    return rep;
}

}  // namespace friction
