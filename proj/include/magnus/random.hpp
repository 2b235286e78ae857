#pragma once

// Reproducible sampling. The generator is std::mt19937_64; integers are
// mapped to ranges by plain modulo so results never depend on a standard
// library's distribution implementation.

#include "magnus/free_algebra.hpp"
#include "magnus/matrix.hpp"

#include <cstdint>
#include <random>

namespace magnus {

/// SplitMix64 finalizer; derives independent per-case seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  /// Uniform-ish integer in [lo, hi].
  long integer(long lo, long hi);
  /// p/q with |p| <= num_bound and 1 <= q <= den_bound.
  Rational rational(long num_bound, long den_bound);
  QMatrix int_matrix(std::size_t rows, std::size_t cols, long bound);
  QMatrix rational_matrix(std::size_t rows, std::size_t cols, long num_bound,
                          long den_bound);
  /// Random integer matrix with nonzero determinant.
  QMatrix invertible_matrix(std::size_t n, long bound);
  /// Sum of a few random words over letters name_1..name_sites.
  FreeElement free_element(const std::string &name, int sites, int terms,
                           int max_len, long coeff_bound);

private:
  std::mt19937_64 eng_;
};

} // namespace magnus
