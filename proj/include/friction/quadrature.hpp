#ifndef FRICTION_QUADRATURE_HPP
#define FRICTION_QUADRATURE_HPP

#include <vector>

namespace friction {

struct QuadNode {
    double x;
    double w;
};

// Composite 20-point Gauss-Legendre rule on `panels` equal panels of [a, b].
std::vector<QuadNode> gauss_legendre_panels(double a, double b, int panels);

// Composite rule on the panels delimited by the given breakpoints.
std::vector<QuadNode> gauss_legendre_breaks(const std::vector<double>& breaks);

template <class F>
auto integrate(const std::vector<QuadNode>& rule, F&& f) -> decltype(f(0.0)) {
    decltype(f(0.0)) acc{};
    for (const auto& q : rule) acc += q.w * f(q.x);
    return acc;
}

// Fixed-step double-exponential (tanh-sinh) rule on (0, c) with n nodes; nodes
// cluster at both ends so algebraic endpoint singularities integrate to full
// precision. Node abscissae near 0 are computed without cancellation.
std::vector<QuadNode> tanh_sinh_rule(double c, int n);

// Geometric breakpoints a, a+h, a+h*q, ... clustered at a, covering [a, b].
std::vector<double> graded_breaks(double a, double b, double first, double ratio, double max_width);

}  // namespace friction

#endif
