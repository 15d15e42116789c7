#ifndef FRICTION_KERNELS_HPP
#define FRICTION_KERNELS_HPP

#include "friction/fit.hpp"
#include "friction/model.hpp"
#include "friction/radial.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace friction {

using cplx = std::complex<double>;

// |W^(rho)|^2 as a function of the radial frequency, with its support bound.
struct DensityModel {
    std::function<double(double)> density;
    double rho_max = 0.0;      // density below 1e-20 beyond this point
    double gaussian_a = -1.0;  // > 0 when density = e^{-a rho^2} exactly

    static DensityModel from_potential(const RadialPotential& W);
    // Cubic interpolation of a tabulated |W^|^2 (e.g. from spectral_density).
    static DensityModel from_table(const SpectralTable& t);
};

enum class Route { fourier, volterra, quadrature };
std::string to_string(Route r);

struct KernelTable {
    std::vector<double> abscissae;
    std::vector<cplx> values;
    std::vector<double> quad_error;
    Route route = Route::quadrature;

    void validate() const;
    std::vector<double> real() const;
};

struct AsymptoticCheck {
    double exponent = 0.0;
    cplx coefficient = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    double relative_error = 0.0;  // max |value t^{-exponent} / coefficient - 1| over the window
};

AsymptoticCheck check_asymptotic(const KernelTable& table, double exponent, cplx coefficient, double t_min,
                                 double t_max);

// Boundary value G(k + i0). For g = 0:
//   G(k) = (i/6) int |W^|^2 [(|xi|^2 - k - i0)^{-1} - (|xi|^2 + k + i0)^{-1}] dxi,
// a principal value plus a Plemelj delta term. For g > 0 the l = 1 resolvents
// of h = -Delta + gW are solved in r-space by Born iteration.
cplx g_function(double k, const ModelParams& params, const RadialPotential& W);
cplx g_function_free(double k, const DensityModel& d);
// r-space route for any admissible g; at g = 0 it must agree with g_function_free.
cplx g_function_rspace(double k, double g, const RadialPotential& W);

struct FEvaluation {
    double value = 0.0;
    double quad_error = 0.0;
    bool leading_order = false;  // g > 0: only the g-independent term is returned
};

// f(t) = (1/3) Re int |W^|^2 e^{-i t |xi|^2} dxi, t >= 0.
FEvaluation f_function(double t, const ModelParams& params, const RadialPotential& W);
FEvaluation f_function_free(double t, const DensityModel& d);

struct KernelOptions {
    double k_min = 1e-12;
    double grade_until = 0.1;  // geometric k-nodes below this
    double grade_ratio = 1.04;
    double dk = 0.01;          // uniform spacing above
    double k_max = 0.0;        // 0: chosen from the density support
};

// Tabulated K^(k) = -1 / (ik + Z G(k + i0)) for k > 0 on a graded grid, the
// input of k_kernel_fourier. G is evaluated once per node.
struct ResolventTable {
    std::vector<double> k;
    std::vector<cplx> G;
    std::vector<cplx> khat;
    double Z = 0.0;
    double c0 = 0.0;  // K^ ~ c0 (1 + i) k^{-1/2} as k -> 0+
};

ResolventTable make_resolvent_table(const ModelParams& params, const RadialPotential& W,
                                    const KernelOptions& opt = {});
ResolventTable make_resolvent_table(const ModelParams& params, const DensityModel& d,
                                    const KernelOptions& opt = {});

// K(t) by Fourier inversion of K^. For t > 0 the cosine part is doubled; for
// t <= 0 the full inversion is used and should vanish. quad_error is the
// mismatch between the cosine-only and full inversions.
KernelTable k_kernel_fourier(const std::vector<double>& t, const ResolventTable& table);
KernelTable k_kernel_fourier(const std::vector<double>& t, const ModelParams& params, const RadialPotential& W);

// K' = -Z (f * K), K(0) = 1 on t_j = j dt, by trapezoidal product integration.
KernelTable k_kernel_volterra(double dt, double t_max, const ModelParams& params,
                              const std::vector<double>& f_samples);
KernelTable k_kernel_volterra(double dt, double t_max, const ModelParams& params, const RadialPotential& W);
std::vector<double> f_samples(double dt, double t_max, const ModelParams& params, const RadialPotential& W);

struct KdotReport {
    std::vector<double> t;
    std::vector<double> kdot_fd;    // central differences of K
    std::vector<double> kdot_conv;  // -Z int_0^t K(t - s) f(s) ds
    double max_residual = 0.0;      // over [window_min, window_max]
    double window_min = 1.0;
    double window_max = 50.0;
};

// K and f on the same uniform grid.
KdotReport kdot_and_identity(const KernelTable& K, const std::vector<double>& f, double Z,
                             double window_min = 1.0, double window_max = 50.0);

// |K'| envelope fit from a uniform K table.
FitResult kdot_exponent(const KernelTable& K, double t_min, double t_max);

struct FIdentityReport {
    std::vector<double> k;
    std::vector<cplx> F;       // Z int_0^inf e^{ikt} f(t) dt by time quadrature
    std::vector<cplx> minus_ZG;
    double max_relative_deviation = 0.0;
    cplx small_k_ratio = 0.0;  // F / (ik + ZG) at small_k
    double small_k = 1e-3;
};

cplx f_transform(double k, const ModelParams& params, const RadialPotential& W);
FIdentityReport check_F_identity(const std::vector<double>& k, const ModelParams& params, const RadialPotential& W,
                                 double small_k = 1e-3);

// Closed constants of the g = 0 asymptotics.
double kernel_tail_constant();  // sqrt(t) Z K(t) -> 3 pi^{-5/2} / sqrt 2
double f_tail_constant();       // t^{3/2} f(t) -> -pi^{3/2} / (3 sqrt 2)
cplx g_small_k_constant(bool positive);  // G / sqrt|k| -> (+-i - 1) pi^2 / 3

}  // namespace friction

#endif
