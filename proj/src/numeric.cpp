#include "gkz/numeric.hpp"

#include <cctype>
#include <sstream>

namespace gkz {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Int parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw ParseError("malformed rational '" + std::string(whole) + "'");
  std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
  if (start == s.size()) throw ParseError("malformed rational '" + std::string(whole) + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw ParseError("malformed rational '" + std::string(whole) + "'");
  }
  std::string digits(s.front() == '+' ? s.substr(1) : s);
  return Int(digits);
}

}  // namespace

Rat parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rat(parse_integer(s, text));
  Int num = parse_integer(trim(s.substr(0, slash)), text);
  Int den = parse_integer(trim(s.substr(slash + 1)), text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rat(num, den);
}

std::string to_string(const Rat& q) {
  if (is_integral(q)) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string to_string(const Int& z) { return z.str(); }

RatVec to_rat(const IntVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

bool all_integral(const RatVec& v) {
  for (const auto& x : v)
    if (!is_integral(x)) return false;
  return true;
}

IntVec to_int(const RatVec& v) {
  IntVec out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!is_integral(x)) throw InternalError("to_int: non-integral entry " + to_string(x));
    out.push_back(numerator(x));
  }
  return out;
}

Int gcd_of(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, abs(x));
  return g;
}

IntVec primitive(const IntVec& v) {
  Int g = gcd_of(v);
  if (g == 0 || g == 1) return v;
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

IntVec primitive(const RatVec& v) {
  Int den = 1;
  for (const auto& x : v) den = lcm(den, Int(denominator(x)));
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = numerator(v[i]) * (den / denominator(v[i]));
  return primitive(out);
}

Rat dot(const IntVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVec add(const IntVec& a, const IntVec& b) {
  IntVec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

IntVec sub(const IntVec& a, const IntVec& b) {
  IntVec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

RatVec add(const RatVec& a, const RatVec& b) {
  RatVec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  RatVec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

RatVec scale(const RatVec& a, const Rat& s) {
  RatVec out(a);
  for (auto& x : out) x *= s;
  return out;
}

IntVec scale(const IntVec& a, const Int& s) {
  IntVec out(a);
  for (auto& x : out) x *= s;
  return out;
}

bool is_zero(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

bool is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Int positive_degree(const IntVec& v) {
  Int d = 0;
  for (const auto& x : v)
    if (x > 0) d += x;
  return d;
}

IntVec unit_vector(std::size_t n, std::size_t i) {
  IntVec e(n, Int(0));
  e[i] = 1;
  return e;
}

std::string format_vector(const IntVec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::string format_vector(const RatVec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v[i]);
  os << ')';
  return os.str();
}

std::string format_indices(const IndexSet& s, int base) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i] + base;
  os << '}';
  return os.str();
}

}  // namespace gkz
