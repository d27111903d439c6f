#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "selrelax/stencil.hpp"

namespace selrelax {

/// Banded LU factorization of a PentaSystem with partial pivoting.
/// Row swaps stay inside the band; the upper bandwidth grows from 2 to at
/// most 4, so storage is 7 diagonals. Factor once, solve many times.
class PentaFactors {
public:
  static constexpr std::size_t kl = 2;  // subdiagonals
  static constexpr std::size_t ku = 2;  // superdiagonals before fill

  std::size_t size() const { return n_; }

  friend PentaFactors factor(const PentaSystem& sys);
  friend void solve_in_place(const PentaFactors& f, std::span<double> x);

private:
  // column-major band storage, width 2*kl + ku + 1 = 7; A(i,j) at
  // ab_[j*7 + 4 + i - j]
  std::vector<double> ab_;
  std::vector<std::size_t> piv_;
  std::size_t n_ = 0;
};

/// Banded LU with partial pivoting, O(J) work. Throws on a pivot smaller
/// than 1e-300 in magnitude (singular system).
PentaFactors factor(const PentaSystem& sys);

void solve_in_place(const PentaFactors& f, std::span<double> x);

/// Solve R x = rhs using the factorization.
std::vector<double> solve(const PentaFactors& f, std::span<const double> rhs);

}  // namespace selrelax
