#ifndef FRICTION_DISPERSIVE_HPP
#define FRICTION_DISPERSIVE_HPP

#include "friction/fit.hpp"
#include "friction/model.hpp"
#include "friction/radial.hpp"

#include <complex>
#include <string>
#include <vector>

namespace friction {

// f(r) P_ell(cos theta) with complex f.
struct ComplexProfile {
    std::vector<double> r;
    std::vector<std::complex<double>> values;
    int ell = 0;
};

// Sector spectrum c rho^power e^{-a rho^2} (Gaussian class).
struct GaussianSpectrum {
    int ell = 0;
    int power = 0;  // >= -2 - ell keeps the sector integral convergent at rho = 0
    double a = 0.5;
    double coeff = 1.0;

    double operator()(double rho) const;
};

// e^{-i t |xi|^2} within the ell-sector: j_ell transform, multiplier, inverse.
// The rho grid is refined with t; AccuracyError when t rho_max^2 is too large
// for the panel budget.
ComplexProfile evolve_free_sector(const RadialProfile& f, int ell, double t, const SectorOptions& opt = {});

// Same flow for Gaussian-class spectra, evaluated on the ray rho = e^{-i phi} s
// with 2 phi = arg(a + i t), where the oscillation is traded for Gaussian decay.
ComplexProfile evolve_free_sector(const GaussianSpectrum& spec, const std::vector<double>& r, double t);

// Profile of a spectrum, i.e. evolve_free_sector at t = 0.
RadialProfile profile_from_spectrum(const GaussianSpectrum& spec, const std::vector<double>& r);

// ||<x>^s u||_2 with the sector multiplicity 4 pi / (2 ell + 1).
double weighted_norm(const ComplexProfile& u, double s);
double weighted_norm(const RadialProfile& u, double s);

// Radial grid for weighted norms of evolved data.
std::vector<double> norm_grid(double R = 60.0, int nodes = 900);

struct DecayTrace {
    std::vector<double> times;
    std::vector<double> weighted_norms;
    int weight_power = -3;
    std::vector<int> sectors;
    std::string tag;

    void validate() const;
};

// Fit over [t_min, t_max]; defaults to the last decade of the trace.
FitResult decay_exponent_fit(const DecayTrace& trace, double t_min = 0.0, double t_max = 0.0);

struct PropagatorRow {
    std::string tag;
    int weight_power = 0;
    double expected = 0.0;
    FitResult fit;
    DecayTrace trace;
    bool pass = false;
};

struct SuiteOptions {
    double t_first = 31.6227766016838;  // 10^{1.5}
    double t_last = 1000.0;
    int samples = 31;
    double fit_min = 100.0;
    double fit_max = 1000.0;
    double tolerance = 0.1;
};

// Five prepared classes built from W: plain W (weight -3), h^{-1}W (-3),
// d_1 W (l = 1, -5), d_1 h^{-1} W (l = 1, -5), d_1^3 h^{-1} W (l = 1 and 3, -5).
std::vector<PropagatorRow> verify_propagator_suite(const ModelParams& params, const RadialPotential& W,
                                                   const SuiteOptions& opt = {});

}  // namespace friction

#endif
