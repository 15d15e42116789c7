#ifndef FRICTION_FIT_HPP
#define FRICTION_FIT_HPP

#include <vector>

namespace friction {

struct FitResult {
    double exponent = 0.0;   // slope of log y against log t
    double amplitude = 0.0;  // y ~ amplitude * t^exponent
    double residual_rms = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    int points = 0;
};

// Least-squares line through (log t, log |y|) restricted to t in [t_min, t_max].
// Throws DataError on non-positive samples and ParameterError with fewer than
// `min_points` samples in the window.
FitResult fit_power_law(const std::vector<double>& t, const std::vector<double>& y, double t_min,
                        double t_max, int min_points = 10);

// Window [t_last / 10, t_last].
FitResult fit_last_decade(const std::vector<double>& t, const std::vector<double>& y, int min_points = 10);

}  // namespace friction

#endif
