#pragma once

// Tensor products of C^dim with lexicographic basis order: slot 0 is the
// slowest-varying index. Slot 0 plays the auxiliary space; slots 1..N are the
// quantum sites.

#include "magnus/matrix.hpp"

#include <vector>

namespace magnus {

/// dim^n with overflow guard.
std::size_t tensor_dim(std::size_t dim, std::size_t slots);

/// Kronecker product a (x) b.
template <class S> Matrix<S> kron(const Matrix<S> &a, const Matrix<S> &b) {
  Matrix<S> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (kernels::is_zero_entry(a(i, j)))
        continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return r;
}

struct EmbedPlan {
  std::size_t local_dim = 0, total_dim = 0;
  std::vector<std::size_t> local_offset, rest;
};

/// Index bookkeeping for placing an operator on `slots` (0-based, in the
/// operator's own factor order) of `total` factors of dimension `dim`.
EmbedPlan make_embed_plan(const std::vector<int> &slots, int total,
                          std::size_t dim);

template <class S>
Matrix<S> embed(const Matrix<S> &op, const std::vector<int> &slots, int total,
                std::size_t dim) {
  const EmbedPlan p = make_embed_plan(slots, total, dim);
  if (op.rows() != p.local_dim || op.cols() != p.local_dim)
    throw DimensionMismatch("operator " + op.shape() + " does not act on " +
                            std::to_string(slots.size()) + " factors of dim " +
                            std::to_string(dim));
  Matrix<S> out(p.total_dim, p.total_dim);
  kernels::embed_parallel(op.data(), p.local_dim, p.local_offset, p.rest,
                          out.data(), p.total_dim);
  return out;
}

template <class S>
Matrix<S> embed_serial(const Matrix<S> &op, const std::vector<int> &slots,
                       int total, std::size_t dim) {
  const EmbedPlan p = make_embed_plan(slots, total, dim);
  if (op.rows() != p.local_dim || op.cols() != p.local_dim)
    throw DimensionMismatch("operator shape does not match slot count");
  Matrix<S> out(p.total_dim, p.total_dim);
  kernels::embed_serial(op.data(), p.local_dim, p.local_offset, p.rest,
                        out.data(), p.total_dim);
  return out;
}

/// Same as embed with 1-based slot numbers.
template <class S>
Matrix<S> kron_embed(const Matrix<S> &op, const std::vector<int> &slots,
                     int total, std::size_t dim) {
  std::vector<int> zero_based;
  for (int s : slots)
    zero_based.push_back(s - 1);
  return embed(op, zero_based, total, dim);
}

/// Swap operator on C^dim (x) C^dim.
QMatrix permutation_op(std::size_t dim);

/// Trace over slot 0 of an operator on dim^(rest+1).
template <class S>
Matrix<S> partial_trace_slot0(const Matrix<S> &m, std::size_t dim) {
  if (!m.square() || m.rows() % dim)
    throw DimensionMismatch("partial trace needs a square multiple of dim");
  const std::size_t q = m.rows() / dim;
  Matrix<S> r(q, q);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j)
        r(i, j) += m(a * q + i, a * q + j);
  return r;
}

/// Entry (a,b) of slot 0: the operator O_ab with O = sum e_ab (x) O_ab.
template <class S>
Matrix<S> slot0_block(const Matrix<S> &m, std::size_t dim, std::size_t a,
                      std::size_t b) {
  const std::size_t q = m.rows() / dim;
  Matrix<S> r(q, q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      r(i, j) = m(a * q + i, b * q + j);
  return r;
}

/// Inverse of slot0_block: sum_ab e_ab (x) blocks[a][b].
template <class S>
Matrix<S> from_slot0_blocks(const std::vector<std::vector<Matrix<S>>> &blocks) {
  const std::size_t dim = blocks.size();
  const std::size_t q = blocks[0][0].rows();
  Matrix<S> r(dim * q, dim * q);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j)
          r(a * q + i, b * q + j) = blocks[a][b](i, j);
  return r;
}

} // namespace magnus
