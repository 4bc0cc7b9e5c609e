#include "taucover/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace taucover {

namespace {
constexpr std::uint32_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
}

Halton::Halton(std::size_t dim, std::uint64_t seed) {
    if (dim == 0 || dim > std::size(kPrimes))
        throw std::invalid_argument("Halton: unsupported dimension");
    base_.assign(kPrimes, kPrimes + dim);
    Rng rng(seed);
    shift_.resize(dim);
    for (auto& s : shift_) s = rng.uniform();
}

std::vector<double> Halton::operator()(std::size_t i) const {
    std::vector<double> out(base_.size());
    for (std::size_t d = 0; d < base_.size(); ++d) {
        const std::uint64_t p = base_[d];
        double f = 1.0, r = 0.0;
        for (std::uint64_t n = i + 1; n > 0; n /= p) {
            f /= static_cast<double>(p);
            r += f * static_cast<double>(n % p);
        }
        r += shift_[d];
        out[d] = r - std::floor(r);
    }
    return out;
}

} // namespace taucover
