#pragma once

// Seeded verification suites, one per module. Each suite expands into
// independent cases which run in parallel; the report lists them in a fixed
// order so equal seeds and options give byte-identical output.

#include "magnus/expansion.hpp"
#include "magnus/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace magnus {

class UsageError : public Error {
public:
  using Error::Error;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  Backend backend = Backend::Exact;
  double tolerance = 1e-10;
  /// Each suite has its own default when these are unset.
  std::optional<int> order;
  std::optional<int> sites;
  std::optional<std::size_t> dim;
  std::optional<Direction> direction;
  /// Number of sampled cases (triples, families, pairs).
  std::optional<int> samples;
};

const std::vector<std::string> &suite_names();

/// Throws UsageError for an unknown suite or an unsupported backend.
VerificationReport run_suite(std::string_view name, const SuiteOptions &opts);

} // namespace magnus
