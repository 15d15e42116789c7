#include "friction/oscillatory.hpp"

#include "friction/errors.hpp"

#include <algorithm>
#include <cmath>

namespace friction {

void filon_moments(double h, double w, std::complex<double> mu[4]) {
    const double theta = w * h;
    if (std::abs(theta) < 4.0) {
        // h^{m+1} sum_n (i theta)^n / (n! (m + n + 1)).
        std::complex<double> s[4] = {0, 0, 0, 0};
        std::complex<double> term = 1.0;
        const std::complex<double> it(0.0, theta);
        for (int n = 0; n < 60; ++n) {
            for (int m = 0; m < 4; ++m) s[m] += term / double(m + n + 1);
            term *= it / double(n + 1);
            if (std::abs(term) < 1e-18) break;
        }
        double hp = h;
        for (int m = 0; m < 4; ++m) {
            mu[m] = hp * s[m];
            hp *= h;
        }
        return;
    }
    const std::complex<double> e = std::polar(1.0, theta);
    const std::complex<double> iw(0.0, w);
    mu[0] = (e - 1.0) / iw;
    double hp = h;
    for (int m = 1; m < 4; ++m) {
        mu[m] = (hp * e - double(m) * mu[m - 1]) / iw;
        hp *= h;
    }
}

FilonTable::FilonTable(std::vector<double> x, const std::vector<double>& y) : x_(std::move(x)) {
    const std::size_t n = x_.size();
    if (n < 4 || y.size() != n) throw ParameterError("Filon table needs at least 4 matching samples");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1])) throw ParameterError("Filon table: abscissae must increase strictly");
    h_.resize(n - 1);
    c_.resize(4 * (n - 1));
    for (std::size_t j = 0; j + 1 < n; ++j) {
        h_[j] = x_[j + 1] - x_[j];
        const std::size_t s = j == 0 ? 0 : std::min(j - 1, n - 4);
        // Newton divided differences on the stencil, then expand about x_j.
        double xs[4], d[4];
        for (int q = 0; q < 4; ++q) {
            xs[q] = x_[s + q] - x_[j];
            d[q] = y[s + q];
        }
        for (int lvl = 1; lvl < 4; ++lvl)
            for (int q = 3; q >= lvl; --q) d[q] = (d[q] - d[q - 1]) / (xs[q] - xs[q - lvl]);
        // p(u) = d0 + d1 (u - x0) + d2 (u - x0)(u - x1) + d3 (u - x0)(u - x1)(u - x2).
        double poly[4] = {d[3], 0, 0, 0};
        int deg = 0;
        for (int q = 2; q >= 0; --q) {
            // poly <- poly * (u - xs[q]) + d[q]
            double next[4] = {0, 0, 0, 0};
            for (int m = 0; m <= deg; ++m) {
                next[m + 1] += poly[m];
                next[m] -= xs[q] * poly[m];
            }
            ++deg;
            next[0] += d[q];
            std::copy(next, next + 4, poly);
        }
        std::copy(poly, poly + 4, c_.begin() + 4 * j);
    }
}

std::complex<double> FilonTable::integrate(double w) const {
    std::complex<double> acc = 0;
    std::complex<double> mu[4];
    for (std::size_t j = 0; j < h_.size(); ++j) {
        filon_moments(h_[j], w, mu);
        const double* c = &c_[4 * j];
        const std::complex<double> local = c[0] * mu[0] + c[1] * mu[1] + c[2] * mu[2] + c[3] * mu[3];
        acc += std::polar(1.0, w * x_[j]) * local;
    }
    return acc;
}

double FilonTable::integrate() const {
    double acc = 0;
    for (std::size_t j = 0; j < h_.size(); ++j) {
        const double h = h_[j];
        const double* c = &c_[4 * j];
        acc += h * (c[0] + h * (c[1] / 2 + h * (c[2] / 3 + h * c[3] / 4)));
    }
    return acc;
}

}  // namespace friction
