#include "magnus/expansion.hpp"

namespace magnus::detail {

std::vector<std::vector<int>> compositions(int m) {
  std::vector<std::vector<int>> out;
  if (m <= 0)
    return out;
  // Bit i of mask set means a cut after position i+1.
  const unsigned cuts = static_cast<unsigned>(m - 1);
  for (unsigned mask = 0; mask < (1u << cuts); ++mask) {
    std::vector<int> parts;
    int run = 1;
    for (unsigned i = 0; i < cuts; ++i) {
      if (mask & (1u << i)) {
        parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    parts.push_back(run);
    out.push_back(std::move(parts));
  }
  return out;
}

} // namespace magnus::detail
