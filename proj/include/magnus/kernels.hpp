#pragma once

// Dense kernels with a serial reference and an OpenMP version. The parallel
// path only engages above a work threshold so small exact products stay on
// one thread; both paths must produce identical results (tests compare them
// entry by entry).

#include <cstddef>
#include <vector>

namespace magnus::kernels {

inline constexpr std::size_t kParallelThreshold = 4096;

template <class S> bool is_zero_entry(const S &v) {
  if constexpr (requires { v.is_zero(); })
    return v.is_zero();
  else
    return v == S(0);
}

/// c = a (n x k) * b (k x m), row-major.
template <class S>
void matmul_serial(const std::vector<S> &a, const std::vector<S> &b,
                   std::vector<S> &c, std::size_t n, std::size_t k,
                   std::size_t m) {
  c.assign(n * m, S(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < k; ++p) {
      const S &aip = a[i * k + p];
      if (is_zero_entry(aip))
        continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!is_zero_entry(b[p * m + j]))
          c[i * m + j] += aip * b[p * m + j];
    }
}

template <class S>
void matmul_parallel(const std::vector<S> &a, const std::vector<S> &b,
                     std::vector<S> &c, std::size_t n, std::size_t k,
                     std::size_t m) {
  c.assign(n * m, S(0));
  const long rows = static_cast<long>(n);
#pragma omp parallel for schedule(static) if (n * k * m >= kParallelThreshold)
  for (long i = 0; i < rows; ++i)
    for (std::size_t p = 0; p < k; ++p) {
      const S &aip = a[i * k + p];
      if (is_zero_entry(aip))
        continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!is_zero_entry(b[p * m + j]))
          c[i * m + j] += aip * b[p * m + j];
    }
}

/// Scatter a local operator acting on a subset of tensor slots into the full
/// space. `strides[s]` is the global stride of local slot s, `rest` lists the
/// global offsets of all basis states of the untouched slots.
template <class S>
void embed_serial(const std::vector<S> &local, std::size_t local_dim,
                  const std::vector<std::size_t> &local_offset,
                  const std::vector<std::size_t> &rest, std::vector<S> &out,
                  std::size_t total_dim) {
  out.assign(total_dim * total_dim, S(0));
  for (std::size_t r : rest)
    for (std::size_t i = 0; i < local_dim; ++i)
      for (std::size_t j = 0; j < local_dim; ++j) {
        const S &v = local[i * local_dim + j];
        if (!is_zero_entry(v))
          out[(r + local_offset[i]) * total_dim + r + local_offset[j]] = v;
      }
}

template <class S>
void embed_parallel(const std::vector<S> &local, std::size_t local_dim,
                    const std::vector<std::size_t> &local_offset,
                    const std::vector<std::size_t> &rest, std::vector<S> &out,
                    std::size_t total_dim) {
  out.assign(total_dim * total_dim, S(0));
  const long nrest = static_cast<long>(rest.size());
  // Distinct rest offsets touch disjoint rows, so the writes never collide.
#pragma omp parallel for schedule(static) if (total_dim * total_dim >= kParallelThreshold)
  for (long q = 0; q < nrest; ++q) {
    const std::size_t r = rest[q];
    for (std::size_t i = 0; i < local_dim; ++i)
      for (std::size_t j = 0; j < local_dim; ++j) {
        const S &v = local[i * local_dim + j];
        if (!is_zero_entry(v))
          out[(r + local_offset[i]) * total_dim + r + local_offset[j]] = v;
      }
  }
}

} // namespace magnus::kernels
