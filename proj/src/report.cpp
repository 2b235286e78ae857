#include "magnus/report.hpp"

#include <fmt/format.h>
#include <json.hpp>

namespace magnus {

const char *backend_name(Backend b) {
  return b == Backend::Exact ? "exact" : "float";
}

void Defect::absorb(const Defect &o) {
  if (exact_ && o.exact_) {
    if (o.size_ > size_)
      size_ = o.size_;
    return;
  }
  const double worst = std::max(norm(), o.norm());
  exact_ = false;
  size_ = 0;
  norm_ = worst;
}

bool Defect::passes(double tolerance) const {
  return exact_ ? size_.is_zero() : norm_ <= tolerance;
}

std::string Defect::str() const {
  if (exact_)
    return size_.is_zero() ? "exact-zero" : size_.str();
  return fmt::format("{:.3e}", norm_);
}

Defect measure(const Rational &d) { return Defect::exact(abs(d)); }
Defect measure(const QMatrix &d) { return Defect::exact(d.max_abs_exact()); }
Defect measure(const DMatrix &d) { return Defect::approx(d.max_abs()); }

Defect measure(const FreeElement &d) {
  Rational m = 0;
  for (const auto &[w, c] : d.terms())
    if (abs(c) > m)
      m = abs(c);
  return Defect::exact(m);
}

Defect measure(const PolyField &d) {
  Defect r = Defect::exact();
  for (const auto &[power, c] : d.terms())
    r.absorb(measure(c));
  return r;
}

bool VerificationReport::passed(const CaseRecord &c) const {
  if (c.informational)
    return true;
  if (c.verdict)
    return *c.verdict;
  return c.defect.passes(tolerance);
}

int VerificationReport::count_passed() const {
  int n = 0;
  for (const auto &c : cases)
    n += !c.informational && passed(c);
  return n;
}

int VerificationReport::count_failed() const {
  int n = 0;
  for (const auto &c : cases)
    n += !passed(c);
  return n;
}

int VerificationReport::count_informational() const {
  int n = 0;
  for (const auto &c : cases)
    n += c.informational;
  return n;
}

namespace {
const char *status(const VerificationReport &r, const CaseRecord &c) {
  if (c.informational)
    return "reported";
  return r.passed(c) ? "pass" : "FAIL";
}
} // namespace

std::string VerificationReport::text() const {
  std::string out = fmt::format("suite = {}\nseed = {}\nbackend = {}\n", suite,
                                seed, backend_name(backend));
  if (backend == Backend::Float)
    out += fmt::format("tolerance = {:g}\n", tolerance);
  for (const auto &c : cases) {
    out += fmt::format("\n[case {}]\ncheck = {}\nbackend = {}\n", c.id, c.check,
                       c.backend);
    if (!c.params.empty())
      out += fmt::format("params = {}\n", c.params);
    out += fmt::format("defect = {}\nstatus = {}\n", c.defect.str(),
                       status(*this, c));
  }
  out += fmt::format("\n[summary]\ncases = {}\npassed = {}\nfailed = {}\n"
                     "reported = {}\n",
                     cases.size(), count_passed(), count_failed(),
                     count_informational());
  if (wall_seconds)
    out += fmt::format("wall_seconds = {:.3f}\n", *wall_seconds);
  out += fmt::format("result = {}\n", ok() ? "PASS" : "FAIL");
  return out;
}

std::string VerificationReport::json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["backend"] = backend_name(backend);
  if (backend == Backend::Float)
    j["tolerance"] = tolerance;
  j["cases"] = nlohmann::ordered_json::array();
  for (const auto &c : cases) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["check"] = c.check;
    e["backend"] = c.backend;
    e["params"] = c.params;
    e["defect"] = c.defect.str();
    e["status"] = status(*this, c);
    e["pass"] = passed(c);
    j["cases"].push_back(std::move(e));
  }
  j["summary"] = {{"cases", cases.size()},
                  {"passed", count_passed()},
                  {"failed", count_failed()},
                  {"reported", count_informational()}};
  if (wall_seconds)
    j["wall_seconds"] = *wall_seconds;
  j["result"] = ok() ? "PASS" : "FAIL";
  return j.dump(2) + "\n";
}

} // namespace magnus
