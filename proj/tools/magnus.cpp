// Command-line front end: verify suites, print expansions, tabulate the
// continuum limit. Exit status 0 on success, 1 when a check fails, 2 on
// usage errors.

#include "magnus/continuum.hpp"
#include "magnus/spec_parse.hpp"
#include "magnus/suites.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <iostream>
#include <sstream>

using namespace magnus;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::uint64_t seed = 0;
  std::string backend = "exact";
  double tolerance = 1e-10;
  std::optional<int> order;
  bool json = false;
  bool timing = false;
};

Backend parse_backend(const std::string &s) {
  if (s == "exact")
    return Backend::Exact;
  if (s == "float")
    return Backend::Float;
  throw UsageError("backend must be exact or float");
}

std::string show(const QMatrix &m) {
  return m.rows() == 1 && m.cols() == 1 ? m(0, 0).str() : m.to_string();
}
std::string show(const DMatrix &m) {
  return m.rows() == 1 && m.cols() == 1 ? fmt::format("{:.17g}", m(0, 0))
                                        : m.to_string();
}
std::string show(const FreeElement &e) { return e.str(); }

template <OperatorAlgebra Op>
std::vector<std::pair<std::string, Op>>
expansion_terms(const SiteOperatorFamily<Op> &fam, const std::string &form,
                int order) {
  std::vector<std::pair<std::string, Op>> out;
  if (form == "dyson" || order == 0)
    out.emplace_back("T0", fam.prototype().identity_like());
  if (order == 0)
    return out;
  std::vector<Op> terms;
  if (form == "dyson")
    terms = dyson_terms(fam, order, DysonMethod::DirectSum);
  else if (form == "magnus-oracle")
    terms = expand_oracle(fam, order).q;
  else if (form == "magnus-explicit")
    terms = magnus_closed_form(fam, ClosedStyle::Explicit, order);
  else
    terms = magnus_closed_form(fam, ClosedStyle::PreLie, order);
  const char *prefix = form == "dyson" ? "T" : "Q";
  for (int m = 1; m <= order; ++m)
    out.emplace_back(fmt::format("{}{}", prefix, m), terms[m - 1]);
  return out;
}

template <OperatorAlgebra Op>
int print_expansion(const SiteOperatorFamily<Op> &fam, const std::string &spec,
                    const std::string &form, int order, bool json) {
  const auto terms = expansion_terms(fam, form, order);
  if (json) {
    nlohmann::ordered_json j;
    j["family"] = spec;
    j["form"] = form;
    j["direction"] = direction_name(fam.direction());
    j["order"] = order;
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto &[label, v] : terms)
      j["terms"].push_back(
          {{"label", label}, {"value", label == "T0" ? "identity" : show(v)}});
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << fmt::format("family = {}\nform = {}\ndirection = {}\norder = {}\n",
                           spec, form, direction_name(fam.direction()), order);
  for (const auto &[label, v] : terms)
    std::cout << label << " = " << (label == "T0" ? "identity" : show(v))
              << "\n";
  return 0;
}

std::vector<double> parse_deltas(const std::string &text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      const double d = std::stod(item, &used);
      if (used != item.size())
        throw std::invalid_argument(item);
      out.push_back(d);
    } catch (const std::exception &) {
      throw UsageError(fmt::format("bad step size '{}'", item));
    }
  }
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Discrete and continuous Magnus expansions, checked exactly"};
  app.require_subcommand(1);
  // Subcommands inherit this, so global flags may follow them.
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "64-bit seed for sampled cases");
  app.add_option("--backend", g.backend, "exact or float")
      ->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tolerance", g.tolerance,
                 "pass threshold for the float backend");
  app.add_option("--order", g.order, "truncation order (default 3)");
  app.add_flag("--json", g.json, "JSON instead of the key/value document");
  app.add_flag("--timing", g.timing, "include wall time in the report");

  auto *verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  std::optional<int> sites, samples;
  std::optional<std::size_t> dim;
  std::string direction;
  verify->add_option("suite", suite, "suite name")->required();
  verify->add_option("--sites,--N", sites, "number of sites");
  verify->add_option("--dim", dim, "matrix size (auxiliary space for yangian)");
  verify->add_option("--samples", samples, "number of sampled cases");
  verify->add_option("--direction", direction, "forward or backward");

  auto *expand = app.add_subcommand("expand", "print an expansion");
  std::string family, form = "magnus-oracle", expand_dir;
  expand->add_option("family", family, "family spec, e.g. scalar:p=1;N=2")
      ->required();
  expand->add_option("--form", form, "dyson, magnus-oracle, magnus-explicit "
                                     "or magnus-prelie")
      ->check(CLI::IsMember(
          {"dyson", "magnus-oracle", "magnus-explicit", "magnus-prelie"}));
  expand->add_option("--direction", expand_dir, "forward or backward");

  auto *limit = app.add_subcommand("limit", "continuum-limit convergence table");
  std::string field, deltas;
  double x0 = 0, x = 1, start = 0.125;
  int halvings = 4;
  limit->add_option("field", field, "field spec, e.g. field:poly(X+x*Y;dim=2)")
      ->required();
  limit->add_option("--deltas", deltas, "comma-separated decreasing steps");
  limit->add_option("--start", start, "first step when --deltas is absent");
  limit->add_option("--halvings", halvings, "halvings after the first step");
  limit->add_option("--x0", x0, "left end of the interval");
  limit->add_option("--x", x, "evaluation point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const Backend backend = parse_backend(g.backend);
    if (*verify) {
      SuiteOptions opts;
      opts.seed = g.seed;
      opts.backend = backend;
      opts.tolerance = g.tolerance;
      opts.order = g.order;
      opts.sites = sites;
      opts.dim = dim;
      opts.samples = samples;
      if (!direction.empty())
        opts.direction = parse_direction(direction);
      auto report = run_suite(suite, opts);
      if (!g.timing)
        report.wall_seconds.reset();
      std::cout << (g.json ? report.json() : report.text());
      return report.ok() ? 0 : kExitFail;
    }
    if (*expand) {
      const int order = g.order.value_or(3);
      if (order < 0)
        throw UsageError("order must be non-negative");
      const FamilySpec spec = parse_family_spec(family);
      auto set_dir = [&](auto fam) {
        if (!expand_dir.empty())
          fam.set_direction(parse_direction(expand_dir));
        return fam;
      };
      if ((form == "magnus-explicit" || form == "magnus-prelie") && order > 3)
        throw UsageError("closed forms are available through order 3");
      if (spec.kind == FamilyKind::Free)
        return print_expansion(set_dir(build_free_family(spec)), family, form,
                               order, g.json);
      const auto fam = set_dir(build_matrix_family(spec));
      if (backend == Backend::Float)
        return print_expansion(
            fam.map([](const QMatrix &m) { return to_double(m); }), family,
            form, order, g.json);
      return print_expansion(fam, family, form, order, g.json);
    }
    const PolyField a = parse_field_spec(field);
    const auto steps =
        deltas.empty() ? halving_deltas(start, halvings) : parse_deltas(deltas);
    const auto table = convergence_study(a, steps, g.order.value_or(3), x0, x);
    std::cout << table.csv();
    return 0;
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Unsupported &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
