#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "gkz/numeric.hpp"

namespace gkz {

/// Polynomial in the formal symbols log v_1 .. log v_n with rational
/// coefficients.
class LogPoly {
 public:
  using Exponent = std::vector<int>;

  LogPoly() = default;
  explicit LogPoly(std::size_t nvars) : nvars_(nvars) {}

  static LogPoly constant(const Rat& c, std::size_t nvars);
  /// sum_i coeffs_i log v_i
  static LogPoly linear(const RatVec& coeffs);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, Rat>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  Rat coefficient(const Exponent& e) const;
  Rat constant_term() const;
  /// Homogeneous part of the given total degree.
  LogPoly part_of_degree(int d) const;

  void add_term(const Exponent& e, const Rat& c);
  LogPoly& operator+=(const LogPoly& other);
  LogPoly& operator-=(const LogPoly& other);
  LogPoly& operator*=(const Rat& c);
  LogPoly operator*(const LogPoly& other) const;
  LogPoly operator+(const LogPoly& other) const;
  LogPoly operator-(const LogPoly& other) const;
  LogPoly operator*(const Rat& c) const;

  /// Derivative with respect to the symbol log v_i.
  LogPoly derivative(std::size_t i) const;

  bool operator==(const LogPoly& other) const { return terms_ == other.terms_; }

 private:
  std::size_t nvars_ = 0;
  std::map<Exponent, Rat> terms_;
};

}  // namespace gkz
