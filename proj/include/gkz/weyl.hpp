#pragma once

// Differential operators with Laurent-monomial coefficients, their action on
// series, facet valuations and the contiguity inverse of d_i.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gkz/series.hpp"

namespace gkz {

/// sum kappa v^c d^u, stored in normal order (v to the left of d).
class DiffOperator {
 public:
  using Key = std::pair<IntVec, IntVec>;  // (c, u)

  DiffOperator() = default;
  explicit DiffOperator(std::size_t nvars) : nvars_(nvars) {}

  static DiffOperator identity(std::size_t nvars);
  static DiffOperator monomial(const IntVec& c, const IntVec& u, const Rat& coeff = 1);
  /// d^u
  static DiffOperator derivative(const IntVec& u);
  /// Z_i - alpha_i
  static DiffOperator from_euler(const EulerOperator& op);
  static DiffOperator from_box(const BoxOperator& op);

  std::size_t nvars() const { return nvars_; }
  const std::map<Key, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest |u| over the terms.
  int order() const;

  void add_term(const IntVec& c, const IntVec& u, const Rat& coeff);
  DiffOperator operator+(const DiffOperator& other) const;
  DiffOperator operator-(const DiffOperator& other) const;
  DiffOperator operator*(const Rat& s) const;
  bool operator==(const DiffOperator& other) const { return terms_ == other.terms_; }

  std::string to_string() const;

 private:
  std::size_t nvars_ = 0;
  std::map<Key, Rat> terms_;
};

/// P o Q, normal-ordered with the Leibniz rule.
DiffOperator compose(const DiffOperator& P, const DiffOperator& Q);

/// Termwise action. The result keeps only offsets whose every source term
/// is known in the input's domain.
LogSeries apply(const DiffOperator& op, const LogSeries& s);
LogSeries apply(const DiffOperator& op, const GammaSeries& s);

/// min over terms of l(A u). Throws PreconditionError on the zero operator.
Int valuation(const GkzSystem& sys, const DiffOperator& op, const FacetForm& l);

/// (1 / l(alpha - A u)) sum_j l(a_j) v_j d_j d^u. Throws PreconditionError
/// when l(alpha - A u) = 0.
DiffOperator raise_valuation(const IntVec& u, const FacetForm& l, const GkzSystem& sys);

struct BoxRewrite {
  IntVec w_prime;
  IntVec relation;  // w - u - w', a relation of A
};

/// w' >= 0 with A w' = A (w - u). Throws InconclusiveError when the
/// enumeration exceeds `limit` candidates.
std::optional<BoxRewrite> box_rewrite(const GkzSystem& sys, const IntVec& w, const IntVec& u,
                                      std::size_t limit = 2000000);

struct ContiguityResult {
  DiffOperator inverse;  // P' with P' d_i = 1 modulo the system
  int passes = 0;
  std::vector<std::string> trace;
  std::size_t basis_size = 0;
  std::size_t certified_terms = 0;  // nonzero reference terms compared
};

/// Effort bound from GKZ_EFFORT, default 64 passes.
int default_effort();

/// Builds P' by valuation raising and box rewriting, then certifies
/// apply(P' o d_i, s) = s on a solution basis at the given truncation.
/// Throws PreconditionError when alpha is resonant, InconclusiveError when
/// the effort bound is exhausted, InternalError when the certificate fails.
ContiguityResult contiguity_inverse(const GkzSystem& sys, int i, int effort, int truncation = 8);

/// Residual of op on s restricted to known offsets; empty when op s = 0
/// there.
LogSeries residual(const DiffOperator& op, const LogSeries& s);

/// Euler and lattice-basis box operators of the system.
std::vector<std::pair<std::string, DiffOperator>> system_operators(const GkzSystem& sys);

}  // namespace gkz
