#include "magnus/free_algebra.hpp"

namespace magnus {

std::string Letter::str() const {
  if (degree > 1)
    return name + "^(" + std::to_string(degree) + ")_" + std::to_string(site);
  return name + "_" + std::to_string(site);
}

int word_degree(const Word &w) {
  int d = 0;
  for (const auto &l : w)
    d += l.degree;
  return d;
}

std::string word_str(const Word &w) {
  std::string s;
  for (const auto &l : w) {
    if (!s.empty())
      s += ' ';
    s += l.str();
  }
  return s;
}

FreeElement FreeElement::scalar(const Rational &c) {
  FreeElement e;
  e.add_term({}, c);
  return e;
}

FreeElement FreeElement::letter(const std::string &name, int site,
                                int degree) {
  if (site < 1 || degree < 1)
    throw InvalidSlots("letter needs site >= 1 and degree >= 1");
  return word({Letter{name, site, degree}});
}

FreeElement FreeElement::word(const Word &w, const Rational &c) {
  FreeElement e;
  e.add_term(w, c);
  return e;
}

Rational FreeElement::coefficient(const Word &w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

FreeElement FreeElement::homogeneous(int degree) const {
  FreeElement e;
  for (const auto &[w, c] : terms_)
    if (word_degree(w) == degree)
      e.terms_.emplace(w, c);
  return e;
}

void FreeElement::add_term(const Word &w, const Rational &c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

FreeElement &FreeElement::operator+=(const FreeElement &o) {
  for (const auto &[w, c] : o.terms_)
    add_term(w, c);
  return *this;
}

FreeElement &FreeElement::operator-=(const FreeElement &o) {
  for (const auto &[w, c] : o.terms_)
    add_term(w, -c);
  return *this;
}

FreeElement &FreeElement::operator*=(const Rational &q) {
  if (q.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto &[w, c] : terms_)
    c *= q;
  return *this;
}

FreeElement FreeElement::operator-() const {
  FreeElement r = *this;
  for (auto &[w, c] : r.terms_)
    c = -c;
  return r;
}

FreeElement operator*(const FreeElement &a, const FreeElement &b) {
  FreeElement r;
  for (const auto &[wa, ca] : a.terms_)
    for (const auto &[wb, cb] : b.terms_) {
      Word w;
      w.reserve(wa.size() + wb.size());
      w.insert(w.end(), wa.begin(), wa.end());
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_term(w, ca * cb);
    }
  return r;
}

FreeElement FreeElement::inverse() const {
  if (terms_.size() == 1 && terms_.begin()->first.empty())
    return scalar(Rational(1) / terms_.begin()->second);
  throw SingularError("only nonzero scalars are invertible in the free algebra");
}

std::string FreeElement::str() const {
  if (terms_.empty())
    return "0";
  std::string s;
  bool first = true;
  for (const auto &[w, c] : terms_) {
    Rational mag = abs(c);
    if (first)
      s += c.sign() < 0 ? "-" : "";
    else
      s += c.sign() < 0 ? " - " : " + ";
    first = false;
    if (w.empty()) {
      s += mag.str();
      continue;
    }
    if (mag != Rational(1))
      s += mag.str() + " ";
    s += word_str(w);
  }
  return s;
}

} // namespace magnus
