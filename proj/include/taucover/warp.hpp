#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace taucover {

/// Positive continuous warp f on an open interval I. Forms: constant,
/// affine a+b*u, exp(u), or tabulated samples with linear interpolation.
class WarpFunction {
public:
    static WarpFunction constant(double c);
    static WarpFunction affine(double a, double b); // u -> a + b*u
    static WarpFunction exponential();              // u -> e^u
    static WarpFunction tabulated(std::vector<double> u, std::vector<double> f);

    double operator()(double u) const { return eval_(u); }
    const std::string& form() const { return form_; }

    /// min/max of f over [s,t]; exact for constant/monotone forms, grid
    /// extrema (1024 cells + endpoints) for tabulated ones.
    double min_on(double s, double t) const;
    double max_on(double s, double t) const;

private:
    WarpFunction(std::string form, std::function<double(double)> eval, bool monotone_exact);
    std::string form_;
    std::function<double(double)> eval_;
    bool monotone_exact_;
};

} // namespace taucover
