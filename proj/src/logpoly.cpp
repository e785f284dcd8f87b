#include "gkz/logpoly.hpp"

#include <numeric>

namespace gkz {

LogPoly LogPoly::constant(const Rat& c, std::size_t nvars) {
  LogPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

LogPoly LogPoly::linear(const RatVec& coeffs) {
  LogPoly p(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Exponent e(coeffs.size(), 0);
    e[i] = 1;
    p.add_term(e, coeffs[i]);
  }
  return p;
}

int LogPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

Rat LogPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

Rat LogPoly::constant_term() const { return coefficient(Exponent(nvars_, 0)); }

LogPoly LogPoly::part_of_degree(int d) const {
  LogPoly p(nvars_);
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) == d) p.terms_.emplace(e, c);
  return p;
}

void LogPoly::add_term(const Exponent& e, const Rat& c) {
  if (c == 0) return;
  if (nvars_ == 0) nvars_ = e.size();
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LogPoly& LogPoly::operator+=(const LogPoly& other) {
  if (nvars_ == 0) nvars_ = other.nvars_;
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LogPoly& LogPoly::operator-=(const LogPoly& other) {
  if (nvars_ == 0) nvars_ = other.nvars_;
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LogPoly& LogPoly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

LogPoly LogPoly::operator*(const LogPoly& other) const {
  LogPoly out(nvars_ ? nvars_ : other.nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : other.terms_) {
      Exponent e(e1.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, c1 * c2);
    }
  return out;
}

LogPoly LogPoly::operator+(const LogPoly& other) const {
  LogPoly out = *this;
  out += other;
  return out;
}

LogPoly LogPoly::operator-(const LogPoly& other) const {
  LogPoly out = *this;
  out -= other;
  return out;
}

LogPoly LogPoly::operator*(const Rat& c) const {
  LogPoly out = *this;
  out *= c;
  return out;
}

LogPoly LogPoly::derivative(std::size_t i) const {
  LogPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent f = e;
    --f[i];
    out.add_term(f, c * e[i]);
  }
  return out;
}

}  // namespace gkz
