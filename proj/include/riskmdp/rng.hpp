#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace riskmdp {

/// Seeded random source with platform-independent draws.
///
/// std::mt19937_64 has a pinned bit stream, but the std distributions do not,
/// so uniforms are derived from raw 53-bit mantissas. Reports generated with
/// the same seed are byte-identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform draw in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    /// Random probability vector with all entries >= floor/n (no zero atoms).
    std::vector<double> simplex(std::size_t n, double floor = 0.05) {
        std::vector<double> p(n);
        double total = 0.0;
        for (auto& x : p) {
            x = floor + uniform01();
            total += x;
        }
        for (auto& x : p) x /= total;
        return p;
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace riskmdp
