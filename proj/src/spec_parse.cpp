#include "magnus/spec_parse.hpp"

#include "magnus/random.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fmt/format.h>

namespace magnus {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t depth = 0, start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(')
      ++depth;
    else if (s[i] == ')' && depth > 0)
      --depth;
    else if (s[i] == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

template <class T> T number(std::string_view s, std::string_view what) {
  s = trim(s);
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(fmt::format("bad {} '{}'", what, s));
  return v;
}

// "≤" arrives as UTF-8; accept it beside "<=".
std::string normalise(std::string_view s) {
  std::string out(s);
  const std::string le = "\xE2\x89\xA4";
  for (std::size_t p; (p = out.find(le)) != std::string::npos;)
    out.replace(p, le.size(), "<=");
  return out;
}

void parse_matrix_shape(std::string_view body, FamilySpec &spec) {
  // rand(2x2,int<=3)
  if (body.substr(0, 5) != "rand(" || body.back() != ')')
    throw ParseError(fmt::format("expected rand(NxN,int<=B), got '{}'", body));
  const auto args = split(body.substr(5, body.size() - 6), ',');
  if (args.size() != 2)
    throw ParseError("rand(...) takes a shape and an entry bound");
  const auto x = args[0].find('x');
  if (x == std::string_view::npos)
    throw ParseError(fmt::format("bad shape '{}'", args[0]));
  const auto rows = number<std::size_t>(args[0].substr(0, x), "dimension");
  const auto cols = number<std::size_t>(args[0].substr(x + 1), "dimension");
  if (rows != cols || rows == 0)
    throw ParseError("site operators must be square and non-empty");
  spec.dim = rows;
  if (args[1].substr(0, 5) != "int<=")
    throw ParseError(fmt::format("bad entry bound '{}'", args[1]));
  spec.bound = number<long>(args[1].substr(5), "entry bound");
  if (spec.bound < 0)
    throw ParseError("entry bound must be non-negative");
}

} // namespace

Direction parse_direction(std::string_view text) {
  text = trim(text);
  if (text == "forward")
    return Direction::Forward;
  if (text == "backward")
    return Direction::Backward;
  throw ParseError(fmt::format("direction must be forward or backward, got '{}'",
                               text));
}

FamilySpec parse_family_spec(std::string_view raw) {
  const std::string text = normalise(trim(raw));
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError(fmt::format("family spec '{}' has no kind prefix", text));
  const std::string_view kind = std::string_view(text).substr(0, colon);
  FamilySpec spec;
  if (kind == "scalar")
    spec.kind = FamilyKind::Scalar;
  else if (kind == "matrix")
    spec.kind = FamilyKind::Matrix;
  else if (kind == "free")
    spec.kind = FamilyKind::Free;
  else
    throw ParseError(fmt::format("unknown family kind '{}'", kind));

  bool have_sites = false, have_shape = false;
  for (auto item : split(std::string_view(text).substr(colon + 1), ';')) {
    if (item.empty())
      continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || item.substr(0, 5) == "rand(") {
      if (spec.kind != FamilyKind::Matrix)
        throw ParseError(fmt::format("unexpected '{}'", item));
      parse_matrix_shape(item, spec);
      have_shape = true;
      continue;
    }
    const auto key = trim(item.substr(0, eq));
    const auto value = trim(item.substr(eq + 1));
    if (key == "N") {
      spec.sites = number<int>(value, "site count");
      if (spec.sites < 0)
        throw ParseError("site count must be non-negative");
      have_sites = true;
    } else if (key == "p" && spec.kind == FamilyKind::Scalar) {
      spec.p = Rational::parse(value);
    } else if (key == "seed" && spec.kind == FamilyKind::Matrix) {
      spec.seed = number<std::uint64_t>(value, "seed");
    } else if (key == "degrees" && spec.kind != FamilyKind::Scalar) {
      spec.degrees.clear();
      for (auto d : split(value, ','))
        spec.degrees.push_back(number<int>(d, "degree"));
      if (spec.degrees.empty() ||
          *std::min_element(spec.degrees.begin(), spec.degrees.end()) < 1)
        throw ParseError("degrees must be positive");
      std::sort(spec.degrees.begin(), spec.degrees.end());
      spec.degrees.erase(std::unique(spec.degrees.begin(), spec.degrees.end()),
                         spec.degrees.end());
    } else if (key == "dir") {
      spec.dir = parse_direction(value);
    } else {
      throw ParseError(fmt::format("unknown key '{}' for this family", key));
    }
  }
  if (!have_sites)
    throw ParseError("family spec needs N=<sites>");
  if (spec.kind == FamilyKind::Matrix && !have_shape)
    throw ParseError("matrix family needs rand(NxN,int<=B)");
  return spec;
}

SiteOperatorFamily<QMatrix> build_matrix_family(const FamilySpec &spec) {
  const Direction dir = spec.dir.value_or(Direction::Forward);
  if (spec.kind == FamilyKind::Scalar) {
    SiteOperatorFamily<QMatrix> f(spec.sites, QMatrix(1, 1), dir);
    for (int n = 1; n <= spec.sites; ++n)
      f.set(n, 1, QMatrix::from_rows({{spec.p}}));
    return f;
  }
  if (spec.kind != FamilyKind::Matrix)
    throw KindMismatch("a free family has no matrix values");
  Rng rng(spec.seed);
  SiteOperatorFamily<QMatrix> f(spec.sites, QMatrix(spec.dim, spec.dim), dir);
  for (int n = 1; n <= spec.sites; ++n)
    for (int d : spec.degrees)
      f.set(n, d, rng.int_matrix(spec.dim, spec.dim, spec.bound));
  return f;
}

SiteOperatorFamily<FreeElement> build_free_family(const FamilySpec &spec) {
  if (spec.kind != FamilyKind::Free)
    throw KindMismatch("only free families have symbolic letters");
  const bool linear = spec.degrees == std::vector<int>{1};
  SiteOperatorFamily<FreeElement> f(spec.sites, FreeElement(),
                                    spec.dir.value_or(Direction::Forward));
  for (int n = 1; n <= spec.sites; ++n)
    for (int d : spec.degrees)
      f.set(n, d, FreeElement::letter(linear ? "P" : "L", n, d));
  return f;
}

QMatrix named_matrix(std::string_view name, std::size_t dim) {
  if (dim < 2 && name != "I")
    throw ParseError("named matrices other than I need dim >= 2");
  if (name == "I")
    return QMatrix::identity(dim);
  if (name == "X")
    return QMatrix::unit(dim, 0, 1);
  if (name == "Y")
    return QMatrix::unit(dim, 1, 0);
  if (name == "H")
    return QMatrix::unit(dim, 0, 0) - QMatrix::unit(dim, 1, 1);
  if (name == "S")
    return QMatrix::unit(dim, 0, 1) + QMatrix::unit(dim, 1, 0);
  if (name.size() == 3 && name[0] == 'E' && std::isdigit(name[1]) &&
      std::isdigit(name[2])) {
    const std::size_t i = name[1] - '1', j = name[2] - '1';
    if (i < dim && j < dim)
      return QMatrix::unit(dim, i, j);
  }
  throw ParseError(fmt::format("unknown matrix '{}'", name));
}

PolyField parse_field_spec(std::string_view raw) {
  std::string_view text = trim(raw);
  if (text.substr(0, 6) == "field:")
    text = trim(text.substr(6));
  if (text.substr(0, 5) == "poly(") {
    if (text.back() != ')')
      throw ParseError("unterminated poly(...)");
    text = text.substr(5, text.size() - 6);
  }
  const auto parts = split(text, ';');
  std::size_t dim = 2;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].substr(0, 4) != "dim=")
      throw ParseError(fmt::format("unknown field option '{}'", parts[i]));
    dim = number<std::size_t>(parts[i].substr(4), "dimension");
    if (dim == 0)
      throw ParseError("dimension must be positive");
  }

  // Split the expression into signed terms at top-level + and -.
  const std::string_view expr = parts[0];
  if (expr.empty())
    throw ParseError("empty field expression");
  std::vector<std::pair<int, std::string_view>> terms;
  int sign = 1;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= expr.size(); ++i) {
    if (i == expr.size() || expr[i] == '+' || expr[i] == '-') {
      const auto t = trim(expr.substr(start, i - start));
      if (!t.empty())
        terms.emplace_back(sign, t);
      else if (i != 0)
        throw ParseError(fmt::format("dangling operator in '{}'", expr));
      if (i < expr.size())
        sign = expr[i] == '-' ? -1 : 1;
      start = i + 1;
    }
  }
  if (terms.empty())
    throw ParseError(fmt::format("no terms in '{}'", expr));

  PolyField field(dim);
  for (const auto &[s, term] : terms) {
    Rational coef = s;
    int power = 0;
    std::optional<QMatrix> mat;
    for (auto factor : split(term, '*')) {
      if (factor.empty())
        throw ParseError(fmt::format("empty factor in '{}'", term));
      if (factor == "x") {
        power += 1;
      } else if (factor.substr(0, 2) == "x^") {
        power += number<int>(factor.substr(2), "power");
      } else if (std::isdigit(static_cast<unsigned char>(factor.front()))) {
        coef = coef * Rational::parse(factor);
      } else {
        if (mat)
          throw ParseError(fmt::format("two matrices in term '{}'", term));
        mat = named_matrix(factor, dim);
      }
    }
    if (!mat)
      throw ParseError(fmt::format("term '{}' names no matrix", term));
    if (power < 0)
      throw ParseError("negative powers are not polynomial");
    field += PolyField::monomial(coef * *mat, power);
  }
  return field;
}

} // namespace magnus
