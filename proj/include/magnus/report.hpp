#pragma once

// Verification records and their two renderings: an INI-style key/value
// document for people and CI logs, and JSON for tools.

#include "magnus/alpha_series.hpp"
#include "magnus/poly_field.hpp"
#include "magnus/rota_baxter.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace magnus {

enum class Backend { Exact, Float };
const char *backend_name(Backend b);

/// Size of a defect: exact rational for exact backends, a double otherwise.
/// Combining keeps the worst.
class Defect {
public:
  static Defect exact(const Rational &size = 0) { return Defect(true, size, 0); }
  static Defect approx(double norm) { return Defect(false, 0, norm); }

  bool is_exact() const { return exact_; }
  const Rational &exact_size() const { return size_; }
  double norm() const { return exact_ ? size_.to_double() : norm_; }

  void absorb(const Defect &o);
  /// Exact defects pass only at zero; approximate ones against `tolerance`.
  bool passes(double tolerance) const;
  /// "exact-zero", the largest offending coefficient, or %.3e.
  std::string str() const;

private:
  Defect(bool e, Rational s, double n) : exact_(e), size_(std::move(s)), norm_(n) {}
  bool exact_;
  Rational size_;
  double norm_;
};

Defect measure(const Rational &d);
Defect measure(const QMatrix &d);
Defect measure(const DMatrix &d);
Defect measure(const FreeElement &d);
Defect measure(const PolyField &d);

template <class T> Defect measure(const std::vector<T> &v);
template <OperatorAlgebra Op> Defect measure(const AlphaSeries<Op> &s) {
  return measure(s.coeffs());
}
template <OperatorAlgebra Op> Defect measure(const SiteSequence<Op> &s) {
  Defect d = measure(s.prototype());
  for (int n = 1; n <= s.size(); ++n)
    d.absorb(measure(s[n]));
  return d;
}
template <class T> Defect measure(const std::vector<T> &v) {
  if (v.empty())
    return Defect::exact();
  Defect d = measure(v.front());
  for (std::size_t i = 1; i < v.size(); ++i)
    d.absorb(measure(v[i]));
  return d;
}

struct CaseRecord {
  std::string id;
  std::string check;  ///< what is being verified
  std::string backend;
  std::string params;
  Defect defect = Defect::exact();
  /// Reported for information only; never fails the suite.
  bool informational = false;
  /// Overrides the defect test, for checks that are not a defect size.
  std::optional<bool> verdict;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  Backend backend = Backend::Exact;
  double tolerance = 1e-10;
  std::vector<CaseRecord> cases;
  std::optional<double> wall_seconds;

  bool passed(const CaseRecord &c) const;
  int count_passed() const;
  int count_failed() const;
  int count_informational() const;
  bool ok() const { return count_failed() == 0; }

  std::string text() const;
  std::string json() const;
};

} // namespace magnus
