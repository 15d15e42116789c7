#ifndef FRICTION_OSCILLATORY_HPP
#define FRICTION_OSCILLATORY_HPP

#include <complex>
#include <vector>

namespace friction {

// Filon-type quadrature of p(x) e^{i w x} where p is the piecewise cubic
// Lagrange interpolant of samples on a nonuniform grid. The moments of each
// cubic against e^{i w x} are computed exactly, so panels need not resolve the
// oscillation, only the variation of p.
class FilonTable {
public:
    FilonTable(std::vector<double> x, const std::vector<double>& y);

    // int_{x_0}^{x_N} p(x) e^{i w x} dx.
    std::complex<double> integrate(double w) const;
    // Plain integral of the interpolant.
    double integrate() const;

    const std::vector<double>& nodes() const { return x_; }

private:
    std::vector<double> x_;
    std::vector<double> h_;
    // Monomial coefficients of the local cubic in (x - x_j), four per interval.
    std::vector<double> c_;
};

// mu_m = int_0^h s^m e^{i w s} ds for m = 0..3.
void filon_moments(double h, double w, std::complex<double> mu[4]);

}  // namespace friction

#endif
