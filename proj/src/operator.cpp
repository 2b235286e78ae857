#include "magnus/operator.hpp"

#include <fmt/format.h>

namespace magnus {

namespace detail {
std::string format_scalar(const Rational &v) { return v.str(); }
std::string format_scalar(double v) { return fmt::format("{}", v); }
} // namespace detail

DMatrix to_double(const QMatrix &m) {
  DMatrix d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      d(i, j) = m(i, j).to_double();
  return d;
}

std::string defect_string(const QMatrix &d) {
  return d.is_zero() ? "exact-zero" : d.max_abs_exact().str();
}

std::string defect_string(const DMatrix &d) {
  return fmt::format("{:.3e}", d.max_abs());
}

std::string defect_string(const FreeElement &d) {
  if (d.is_zero())
    return "exact-zero";
  Rational m = 0;
  for (const auto &[w, c] : d.terms())
    if (abs(c) > m)
      m = abs(c);
  return m.str();
}

double defect_norm(const QMatrix &d) { return d.max_abs(); }
double defect_norm(const DMatrix &d) { return d.max_abs(); }
double defect_norm(const FreeElement &d) {
  double m = 0;
  for (const auto &[w, c] : d.terms())
    m = std::max(m, abs(c).to_double());
  return m;
}

} // namespace magnus
