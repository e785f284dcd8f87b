#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace gkz {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;
using IndexSet = std::vector<int>;

// Error hierarchy. The CLI maps these onto exit codes (user errors 1,
// parse errors 2, internal consistency failures 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point configuration violates one of the defining conditions.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Heights or a direction vector do not induce a triangulation.
class GenericityError : public Error {
 public:
  using Error::Error;
};

/// A bounded search gave up without a decision.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A result failed its own certificate. Indicates a bug or a violated
/// mathematical assumption, never bad user input.
class InternalError : public Error {
 public:
  using Error::Error;
};

inline bool is_integral(const Rat& q) { return denominator(q) == 1; }

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int floor(const Rat& q) { return floor_div(numerator(q), denominator(q)); }
inline Int ceil(const Rat& q) { return -floor(Rat(-q)); }

inline bool is_negative_integer(const Rat& q) { return is_integral(q) && q < 0; }

/// Parses "p", "p/q" or "-p/q" (surrounding blanks allowed).
Rat parse_rational(std::string_view text);
std::string to_string(const Rat& q);
std::string to_string(const Int& z);

RatVec to_rat(const IntVec& v);
bool all_integral(const RatVec& v);
IntVec to_int(const RatVec& v);  // requires all_integral

Int gcd_of(const IntVec& v);
/// Divides by the gcd of the entries; the zero vector is returned as is.
IntVec primitive(const IntVec& v);
/// Clears denominators and divides out the content.
IntVec primitive(const RatVec& v);

Rat dot(const IntVec& a, const RatVec& b);
Rat dot(const RatVec& a, const RatVec& b);
Int dot(const IntVec& a, const IntVec& b);

IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const RatVec& a, const Rat& s);
IntVec scale(const IntVec& a, const Int& s);
bool is_zero(const IntVec& v);
bool is_zero(const RatVec& v);

/// Sum of the positive entries; for a lattice relation this is the h-degree
/// of its positive part.
Int positive_degree(const IntVec& v);

IntVec unit_vector(std::size_t n, std::size_t i);

std::string format_vector(const IntVec& v);
std::string format_vector(const RatVec& v);
std::string format_indices(const IndexSet& s, int base = 1);

}  // namespace gkz
