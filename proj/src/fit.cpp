#include "friction/fit.hpp"

#include "friction/errors.hpp"

#include <cmath>
#include <string>

namespace friction {

FitResult fit_power_law(const std::vector<double>& t, const std::vector<double>& y, double t_min,
                        double t_max, int min_points) {
    if (t.size() != y.size()) throw ParameterError("fit: t and y sizes differ");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_min || t[i] > t_max) continue;
        if (!(y[i] > 0.0) || !std::isfinite(y[i]) || !(t[i] > 0.0))
            throw DataError("fit: non-positive sample at t=" + std::to_string(t[i]));
        const double lx = std::log(t[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < min_points)
        throw ParameterError("fit: " + std::to_string(n) + " points in window, need " + std::to_string(min_points));
    const double mx = sx / n;
    const double my = sy / n;
    const double vxx = sxx / n - mx * mx;
    FitResult r;
    r.exponent = vxx > 0 ? (sxy / n - mx * my) / vxx : 0.0;
    const double intercept = my - r.exponent * mx;
    r.amplitude = std::exp(intercept);
    double ss = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_min || t[i] > t_max) continue;
        const double e = std::log(y[i]) - intercept - r.exponent * std::log(t[i]);
        ss += e * e;
    }
    r.residual_rms = std::sqrt(ss / n);
    r.t_min = t_min;
    r.t_max = t_max;
    r.points = n;
    return r;
}

FitResult fit_last_decade(const std::vector<double>& t, const std::vector<double>& y, int min_points) {
    if (t.empty()) throw ParameterError("fit: empty trace");
    const double last = t.back();
    return fit_power_law(t, y, last / 10.0 * (1.0 - 1e-12), last, min_points);
}

}  // namespace friction
