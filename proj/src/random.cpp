#include "magnus/random.hpp"

namespace magnus {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long Rng::integer(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(next() % span);
}

Rational Rng::rational(long num_bound, long den_bound) {
  return Rational(integer(-num_bound, num_bound), integer(1, den_bound));
}

QMatrix Rng::int_matrix(std::size_t rows, std::size_t cols, long bound) {
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = integer(-bound, bound);
  return m;
}

QMatrix Rng::rational_matrix(std::size_t rows, std::size_t cols,
                             long num_bound, long den_bound) {
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = rational(num_bound, den_bound);
  return m;
}

QMatrix Rng::invertible_matrix(std::size_t n, long bound) {
  for (;;) {
    QMatrix m = int_matrix(n, n, bound);
    if (!m.determinant().is_zero())
      return m;
  }
}

FreeElement Rng::free_element(const std::string &name, int sites, int terms,
                              int max_len, long coeff_bound) {
  FreeElement e;
  for (int t = 0; t < terms; ++t) {
    Word w;
    const int len = static_cast<int>(integer(1, max_len));
    for (int i = 0; i < len; ++i)
      w.push_back(Letter{name, static_cast<int>(integer(1, sites)), 1});
    long c = 0;
    while (c == 0)
      c = integer(-coeff_bound, coeff_bound);
    e += FreeElement::word(w, c);
  }
  return e;
}

} // namespace magnus
