#include "taucover/warp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace taucover {

WarpFunction::WarpFunction(std::string form, std::function<double(double)> eval,
                           bool monotone_exact)
    : form_(std::move(form)), eval_(std::move(eval)), monotone_exact_(monotone_exact) {}

WarpFunction WarpFunction::constant(double c) {
    if (c <= 0.0) throw std::invalid_argument("warp: constant must be positive");
    return WarpFunction("constant", [c](double) { return c; }, true);
}

WarpFunction WarpFunction::affine(double a, double b) {
    return WarpFunction("affine", [a, b](double u) { return a + b * u; }, true);
}

WarpFunction WarpFunction::exponential() {
    return WarpFunction("exp", [](double u) { return std::exp(u); }, true);
}

WarpFunction WarpFunction::tabulated(std::vector<double> u, std::vector<double> f) {
    if (u.size() != f.size() || u.size() < 2)
        throw std::invalid_argument("warp: tabulated form needs >= 2 aligned samples");
    for (std::size_t i = 0; i + 1 < u.size(); ++i)
        if (u[i + 1] <= u[i]) throw std::invalid_argument("warp: abscissae must increase");
    for (double v : f)
        if (v <= 0.0) throw std::invalid_argument("warp: values must be positive");
    auto eval = [u = std::move(u), f = std::move(f)](double x) {
        if (x <= u.front()) return f.front();
        if (x >= u.back()) return f.back();
        const auto it = std::upper_bound(u.begin(), u.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - u.begin()) - 1;
        const double w = (x - u[i]) / (u[i + 1] - u[i]);
        return f[i] + w * (f[i + 1] - f[i]);
    };
    return WarpFunction("tabulated", std::move(eval), false);
}

double WarpFunction::min_on(double s, double t) const {
    if (t < s) std::swap(s, t);
    if (monotone_exact_) return std::min(eval_(s), eval_(t));
    double m = std::min(eval_(s), eval_(t));
    constexpr int kCells = 1024;
    for (int i = 1; i < kCells; ++i)
        m = std::min(m, eval_(s + (t - s) * i / kCells));
    return m;
}

double WarpFunction::max_on(double s, double t) const {
    if (t < s) std::swap(s, t);
    if (monotone_exact_) return std::max(eval_(s), eval_(t));
    double m = std::max(eval_(s), eval_(t));
    constexpr int kCells = 1024;
    for (int i = 1; i < kCells; ++i)
        m = std::max(m, eval_(s + (t - s) * i / kCells));
    return m;
}

} // namespace taucover
