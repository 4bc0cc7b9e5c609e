#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace taucover {

/// Seeded generator used everywhere randomness is needed. The engine is
/// std::mt19937_64 and uniforms are produced from the top 53 bits, so runs
/// are reproducible across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { // in [0,1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t bits() { return engine_(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

    /// Derive an independent stream (for per-task sub-seeding).
    Rng fork(std::uint64_t salt) { return Rng(engine_() ^ (0x9e3779b97f4a7c15ULL * (salt + 1))); }

private:
    std::mt19937_64 engine_;
};

/// Halton low-discrepancy sequence with a seeded Cranley-Patterson rotation;
/// the default ground-set sampler for box regions.
class Halton {
public:
    Halton(std::size_t dim, std::uint64_t seed);

    /// i-th point (0-based) of the rotated sequence, each coordinate in [0,1).
    std::vector<double> operator()(std::size_t i) const;

    std::size_t dim() const { return shift_.size(); }

private:
    std::vector<std::uint32_t> base_;
    std::vector<double> shift_;
};

} // namespace taucover
