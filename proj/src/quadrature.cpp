#include "friction/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace friction {

namespace {

using Rule = boost::math::quadrature::gauss<double, 20>;

void append_panel(std::vector<QuadNode>& out, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const auto& xs = Rule::abscissa();
    const auto& ws = Rule::weights();
    // Boost stores the non-negative half of the abscissae in increasing order.
    for (std::size_t i = xs.size(); i-- > 0;) out.push_back({mid - half * xs[i], half * ws[i]});
    for (std::size_t i = 0; i < xs.size(); ++i) out.push_back({mid + half * xs[i], half * ws[i]});
}

}  // namespace

std::vector<QuadNode> gauss_legendre_panels(double a, double b, int panels) {
    std::vector<QuadNode> out;
    out.reserve(static_cast<std::size_t>(panels) * 20);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) append_panel(out, a + p * h, a + (p + 1) * h);
    return out;
}

std::vector<QuadNode> gauss_legendre_breaks(const std::vector<double>& breaks) {
    std::vector<QuadNode> out;
    if (breaks.size() < 2) return out;
    out.reserve((breaks.size() - 1) * 20);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) append_panel(out, breaks[i], breaks[i + 1]);
    return out;
}

std::vector<QuadNode> tanh_sinh_rule(double c, int n) {
    // t in [-T, T]; T = 6 keeps pi*sinh(T) below the exp overflow threshold.
    constexpr double T = 6.0;
    constexpr double pi = 3.14159265358979323846;
    std::vector<QuadNode> out;
    out.reserve(static_cast<std::size_t>(n));
    const double h = 2.0 * T / (n - 1);
    for (int k = 0; k < n; ++k) {
        const double t = -T + k * h;
        const double z = pi * std::sinh(t);
        const double sp = 1.0 / (1.0 + std::exp(-z));  // logistic(z)
        const double sm = 1.0 / (1.0 + std::exp(z));   // 1 - logistic(z)
        const double x = c * sp;
        const double w = c * h * pi * std::cosh(t) * sp * sm;
        if (x > 0.0 && x < c && w > 0.0) out.push_back({x, w});
    }
    return out;
}

std::vector<double> graded_breaks(double a, double b, double first, double ratio, double max_width) {
    std::vector<double> out{a};
    double w = first;
    while (out.back() < b) {
        out.push_back(std::min(b, out.back() + w));
        w = std::min(w * ratio, max_width);
    }
    return out;
}

}  // namespace friction
