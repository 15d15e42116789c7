#ifndef FRICTION_SPECIAL_HPP
#define FRICTION_SPECIAL_HPP

#include <complex>

namespace friction {

// Spherical Bessel j_l for l in 0..3: power series for |z| < 2, closed forms otherwise.
double sph_j(int l, double x);
std::complex<double> sph_j(int l, std::complex<double> z);

}  // namespace friction

#endif
