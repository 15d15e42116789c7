#ifndef FRICTION_RADIAL_HPP
#define FRICTION_RADIAL_HPP

#include <complex>
#include <string>
#include <vector>

namespace friction {

enum class DecayTag { gaussian, inverse_r, compact };

std::string to_string(DecayTag tag);

// A function f(r) Y_ell(angle) sampled on a radial grid. `ell` records the
// angular sector of the data; purely radial functions have ell = 0.
struct RadialProfile {
    std::vector<double> r;
    std::vector<double> values;
    DecayTag decay = DecayTag::gaussian;
    int ell = 0;

    std::size_t size() const { return r.size(); }
    // Cubic Lagrange interpolation inside the grid; c/r extrapolation past the
    // last node for inverse_r profiles, zero otherwise.
    double operator()(double x) const;
    // c in f ~ c / r, fitted over the last tenth of the nodes.
    double tail_constant() const;
    void validate() const;
};

struct RadialGridSpec {
    int nodes = 4096;
    double extent_sigmas = 40.0;
    double stretch = 4.0;  // ratio of outer to inner spacing is about e^stretch
};

// r_i = R (e^{s i/(n-1)} - 1) / (e^s - 1), i = 0..n-1, with R = extent_sigmas * sigma.
std::vector<double> make_radial_grid(double sigma, const RadialGridSpec& spec = {});

// Integral of f from r_0 to each node, piecewise cubic.
std::vector<double> cumulative_integral(const std::vector<double>& r, const std::vector<double>& f);

// -(u'' + 2u'/r) with fourth-order finite differences (one-sided near the ends).
std::vector<double> radial_laplacian(const std::vector<double>& r, const std::vector<double>& u);

// ||<x>^s f||_2 over R^3 for a radial profile (sector multiplicity 1).
double weighted_l2(const RadialProfile& f, double s);

// Japanese-bracket weighted L2 norm of a residual restricted to interior nodes.
double interior_weighted_residual(const std::vector<double>& r, const std::vector<double>& res, double s,
                                  int skip = 3);

// (-Delta)^{-1} W for radial W via u(r) = (1/r) int_0^r s^2 W + int_r^inf s W.
RadialProfile poisson_inverse(const RadialProfile& W);

struct ResolventOptions {
    double tol = 1e-6;
    int max_iter = 200;
};

// Fixed-point solution of (-Delta + gW) u = W.
struct ResolventResult {
    RadialProfile u;
    double residual = 0.0;  // ||<x>^3 (-Delta u + g W u - W)||_2
    int iterations = 0;
};

ResolventResult resolvent_solve(const RadialProfile& W, double g, const ResolventOptions& opt = {});
RadialProfile resolvent_apply(const RadialProfile& W, double g, double tol = 1e-6);

// -sqrt(rho0) (h)^{-1} W.
RadialProfile bar_beta(const RadialProfile& W, double g, double rho0, double tol = 1e-6);

// W - g W h^{-1} W, i.e. (-Delta) h^{-1} W.
RadialProfile xi_profile(const RadialProfile& W, double g, double tol = 1e-6);

// ||f||_{L^2(B_R)} over R^3.
double ball_norm(const RadialProfile& f, double R);

struct SpectralTable {
    std::vector<double> rho;
    std::vector<double> weights;  // quadrature weights in rho (for Parseval-type sums)
    std::vector<double> values;
    int ell = 0;
};

struct SectorOptions {
    double rho_max = 12.0;
    int panels = 60;
};

// f_ell(rho) = sqrt(2/pi) int_0^inf f(r) j_ell(rho r) r^2 dr; zero if f.ell != ell.
SpectralTable sector_transform(const RadialProfile& f, int ell, const SectorOptions& opt = {});

// Inverse of sector_transform evaluated on the nodes r.
RadialProfile inverse_sector_transform(const SpectralTable& t, const std::vector<double>& r);

// |W^(rho)|^2 from the ell = 0 transform.
SpectralTable spectral_density(const RadialProfile& W, const SectorOptions& opt = {});

// Four-point Gauss-Legendre nodes on every grid interval.
struct IntervalRule {
    std::vector<double> x;
    std::vector<double> w;
    std::vector<std::size_t> interval;
};

IntervalRule interval_rule(const std::vector<double>& r);
// Cubic interpolant of the profile evaluated at the rule nodes.
std::vector<double> values_on_rule(const RadialProfile& f, const IntervalRule& rule);

// Piecewise cubic Lagrange interpolation on a nonuniform grid.
double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at);

}  // namespace friction

#endif
