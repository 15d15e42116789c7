#ifndef FRICTION_CONSTANTS_HPP
#define FRICTION_CONSTANTS_HPP

#include <vector>

namespace friction::constants {

// Default node count of the double-exponential rule used for the Omega integrals.
inline constexpr int kDefaultOmegaNodes = 801;

struct OmegaEvaluation {
    double delta = 0.0;
    double omega1 = 0.0;
    double omega2 = 0.0;
    double omega = 0.0;        // omega1 + omega2
    double direct = 0.0;       // single integral in the original variable
    double quad_error = 0.0;   // estimated from a half-resolution rule
    double closed_form = 0.0;  // Gamma-function expression; NaN at its poles
    double deviation = 0.0;    // closed_form - omega; NaN where closed_form is NaN
};

double omega1(double delta, int nodes = kDefaultOmegaNodes);
double omega2(double delta, int nodes = kDefaultOmegaNodes);

// Same integrand as omega1 + omega2, integrated without the 1 - r = v^2 substitution.
double omega_direct(double delta, int nodes = kDefaultOmegaNodes);

// 1/(pi d (2d-1)) + (2 Gamma(1/2-d)/Gamma(1-d) - Gamma(-d)/Gamma(3/2-d)) / (2 sqrt(pi)).
double omega_closed_form(double delta);

OmegaEvaluation omega(double delta, int nodes = kDefaultOmegaNodes);

// Root of omega(delta) = 1 by bisection on [0.5, 0.9].
double delta_star(double tol = 1e-6, int nodes = kDefaultOmegaNodes);

// Smallest n with (n + 1)(delta - 1/2) >= 3/2 + delta.
int n_zero(double delta);

struct FresnelResult {
    double cos_integral = 0.0;
    double sin_integral = 0.0;
    double reference = 0.0;  // sqrt(pi/8)
    double truncation = 0.0;
};

// int_0^X e^{i x^2} dx by composite Gauss-Legendre, real part = cos, imaginary = sin.
struct FresnelPair {
    double c;
    double s;
};
FresnelPair fresnel_head(double X);
FresnelPair fresnel_tail(double X);

// Head on [0, X] plus asymptotic tail on [X, inf).
FresnelResult fresnel_constant(double X = 20.0);

struct ConvolutionBoundReport {
    double delta = 0.0;
    std::vector<double> t;
    std::vector<double> integral;
    std::vector<double> scaled;  // (1+t)^{1/2+delta} I(t)
    double sup_scaled = 0.0;
    double last_decade_slope = 0.0;
    bool integrand_nonnegative = true;
};

// I(t) = int_0^t (1+t-s)^{-3/2} (s^{1/2-d} - t^{1/2-d}) (1+s)^{-1/2} ds.
double convolution_integral(double delta, double t, bool* nonnegative = nullptr);

ConvolutionBoundReport convolution_bound_check(double delta, double t_max, int points_per_decade = 20);

}  // namespace friction::constants

#endif
