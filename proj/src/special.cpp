#include "friction/special.hpp"

#include "friction/errors.hpp"

#include <cmath>

namespace friction {

namespace {

template <class T>
T series(int l, T z) {
    // j_l(z) = z^l / (2l+1)!! * sum_k (-z^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
    double dfact = 1.0;
    for (int k = 1; k <= 2 * l + 1; k += 2) dfact *= k;
    T zl = 1.0;
    for (int k = 0; k < l; ++k) zl *= z;
    const T q = -z * z / 2.0;
    T term = 1.0;
    T sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        term *= q / (double(k) * double(2 * l + 2 * k + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return zl / dfact * sum;
}

template <class T>
T closed(int l, T z) {
    const T s = std::sin(z);
    const T c = std::cos(z);
    const T iz = T(1.0) / z;
    switch (l) {
        case 0: return s * iz;
        case 1: return (s * iz - c) * iz;
        case 2: return ((3.0 * iz * iz - 1.0) * s - 3.0 * c * iz) * iz;
        default: return ((15.0 * iz * iz * iz - 6.0 * iz) * s - (15.0 * iz * iz - 1.0) * c) * iz;
    }
}

template <class T>
T eval(int l, T z) {
    if (l < 0 || l > 3) throw ParameterError("sph_j: only l = 0..3 supported");
    if (std::abs(z) < 2.0) return series(l, z);
    return closed(l, z);
}

}  // namespace

double sph_j(int l, double x) { return eval(l, x); }
std::complex<double> sph_j(int l, std::complex<double> z) { return eval(l, z); }

}  // namespace friction
