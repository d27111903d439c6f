#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

namespace selrelax {

// Neumaier-compensated accumulator. The double-well splittings sit at the
// edge of double precision (T ~ 1e-10 on energies ~ 50), so plain left-to-right
// summation noise in norms and Rayleigh quotients would be visible in the
// reported digits.
class KahanSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_dot(std::span<const double> a, std::span<const double> b) {
  KahanSum s;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) s.add(a[i] * b[i]);
  return s.value();
}

// Deterministic uniform in [-1, 1): do not rely on std::uniform_real_distribution,
// whose output is implementation-defined.
class DeterministicUniform {
public:
  explicit DeterministicUniform(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  double next() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z = z ^ (z >> 31);
    return 2.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 1.0;
  }

private:
  std::uint64_t state_;
};

}  // namespace selrelax
