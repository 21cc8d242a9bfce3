#pragma once

#include <functional>
#include <span>
#include <vector>

namespace cellout::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Laguerre rule for the weight e^-x on [0, inf).
/// Computed once per n (Newton iteration in long double) and cached.
const Rule& gauss_laguerre(int n);

/// n-point Gauss-Legendre rule on [-1, 1], cached.
const Rule& gauss_legendre(int n);

struct AdaptiveResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
    bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over
/// [breakpoints.front(), breakpoints.back()], starting from the panels given
/// by the sorted breakpoints. Stops once the summed error estimate is at
/// most abs_tol or max_intervals panels are in use.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f,
                                  std::span<const double> breakpoints, double abs_tol,
                                  int max_intervals = 20000);

}  // namespace cellout::quad
