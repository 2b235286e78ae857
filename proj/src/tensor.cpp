#include "magnus/tensor.hpp"

#include <algorithm>
#include <limits>

namespace magnus {

std::size_t tensor_dim(std::size_t dim, std::size_t slots) {
  std::size_t d = 1;
  for (std::size_t i = 0; i < slots; ++i) {
    if (d > std::numeric_limits<std::size_t>::max() / dim)
      throw DimensionBudgetExceeded("tensor dimension overflows");
    d *= dim;
  }
  return d;
}

EmbedPlan make_embed_plan(const std::vector<int> &slots, int total,
                          std::size_t dim) {
  if (total < 1 || dim < 1)
    throw InvalidSlots("need at least one factor of positive dimension");
  std::vector<int> sorted = slots;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidSlots("slot collision");
  for (int s : slots)
    if (s < 0 || s >= total)
      throw InvalidSlots("slot " + std::to_string(s) + " outside 0.." +
                         std::to_string(total - 1));

  EmbedPlan p;
  p.total_dim = tensor_dim(dim, total);
  p.local_dim = tensor_dim(dim, slots.size());
  std::vector<std::size_t> stride(total);
  std::size_t acc = 1;
  for (int s = total - 1; s >= 0; --s) {
    stride[s] = acc;
    acc *= dim;
  }

  // Local basis index -> global offset; the operator's first slot is slowest.
  p.local_offset.assign(p.local_dim, 0);
  for (std::size_t li = 0; li < p.local_dim; ++li) {
    std::size_t rem = li, off = 0;
    for (int k = static_cast<int>(slots.size()) - 1; k >= 0; --k) {
      off += (rem % dim) * stride[slots[k]];
      rem /= dim;
    }
    p.local_offset[li] = off;
  }

  std::vector<int> others;
  for (int s = 0; s < total; ++s)
    if (std::find(slots.begin(), slots.end(), s) == slots.end())
      others.push_back(s);
  const std::size_t nrest = tensor_dim(dim, others.size());
  p.rest.assign(nrest, 0);
  for (std::size_t ri = 0; ri < nrest; ++ri) {
    std::size_t rem = ri, off = 0;
    for (int k = static_cast<int>(others.size()) - 1; k >= 0; --k) {
      off += (rem % dim) * stride[others[k]];
      rem /= dim;
    }
    p.rest[ri] = off;
  }
  return p;
}

QMatrix permutation_op(std::size_t dim) {
  QMatrix p(dim * dim, dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      p(i * dim + j, j * dim + i) = 1;
  return p;
}

} // namespace magnus
