#pragma once

#include <functional>

namespace taucover {

/// Adaptive Simpson integration of f over [a,b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12, int max_depth = 40);

} // namespace taucover
