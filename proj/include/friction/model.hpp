#ifndef FRICTION_MODEL_HPP
#define FRICTION_MODEL_HPP

#include "friction/radial.hpp"

#include <array>

namespace friction {

using Vec3 = std::array<double, 3>;

double norm(const Vec3& v);

// Rescaled units: 2m = 1 for the field bosons, W^(0) = 1.
struct ModelParams {
    double M = 10.0;     // tracer mass
    double g = 0.05;     // self-coupling of the field through W
    double rho0 = 1.0;   // condensate density
    double g_max = 0.1;  // admissible coupling range [0, g_max]

    double Z() const { return 2.0 * rho0 / M; }
    // Throws ParameterError naming the offending field.
    void validate() const;
};

// W(r) = A exp(-r^2 / (2 sigma^2)) with A = sigma^-3, so that W^(0) = 1.
struct RadialPotential {
    RadialProfile profile;
    double sigma = 1.0;
    double amplitude = 1.0;

    double value(double r) const;
    // W^(rho) = (2 pi)^{-3/2} int W e^{-i xi x} dx at |xi| = rho.
    double hat(double rho) const;
    // int 4 pi r^2 W dr by quadrature on the profile grid.
    double integral() const;
    // |integral - (2 pi)^{3/2}|.
    double normalization_residual() const;
};

RadialPotential make_default_potential(double sigma, const RadialGridSpec& grid = {});

// beta_0(x) = a exp(-|x - c|^2 / (2 w^2)) e^{i k.x}.
struct GaussianPacket {
    double amplitude = 0.0;
    double width = 1.0;
    Vec3 carrier{0, 0, 0};
    Vec3 center{0, 0, 0};
};

struct InitialData {
    Vec3 X0{0, 0, 0};
    Vec3 P0{0, 0, 0};
    GaussianPacket beta0;
};

struct InitialDataReport {
    double weighted5 = 0.0;       // ||<x>^5 beta_0||_2
    double weighted3_grad = 0.0;  // ||<x>^3 grad beta_0||_2
    double momentum = 0.0;        // |P_0|
    double eps0 = 0.0;
    bool pass = false;
};

InitialDataReport validate_initial_data(const InitialData& data, double eps0 = 1e-2);

}  // namespace friction

#endif
