#pragma once

// Truncated Gamma-series solutions Phi_{L,gamma} and the general series
// container used for logarithmic solutions and operator application.

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "gkz/logpoly.hpp"
#include "gkz/system.hpp"

namespace gkz {

/// Exponent offset gamma with sum gamma_i a_i = alpha, integral on the
/// summation sector I (|I| = N - r).
struct GammaVector {
  RatVec gamma;
  IndexSet sector;
};

/// Which offsets k of a series v^{gamma + k} have a known coefficient.
///
/// Outside the stored terms a coefficient is either provably zero (known) or
/// lies beyond the truncation (unknown). Operator residuals are only
/// trusted on offsets whose every source offset is known.
class SeriesDomain {
 public:
  virtual ~SeriesDomain() = default;
  virtual bool known(const IntVec& k) const = 0;
};

/// Terms indexed by a lattice, supported on a union of summation sectors
/// {k : k_i + gamma_i >= 0 for i in I} and truncated at positive degree D.
class LatticeDomain : public SeriesDomain {
 public:
  LatticeDomain(LatticeBasis lattice, std::vector<IndexSet> sectors, RatVec gamma, Int truncation);

  bool in_lattice(const IntVec& k) const;
  bool in_some_sector(const IntVec& k) const;
  bool known(const IntVec& k) const override;

  const LatticeBasis& lattice() const { return lattice_; }
  const std::vector<IndexSet>& sectors() const { return sectors_; }
  const Int& truncation() const { return truncation_; }

 private:
  LatticeBasis lattice_;
  std::vector<IndexSet> sectors_;
  RatVec gamma_;
  Int truncation_;
  IndexSet pivot_rows_;
  RatMatrix pivot_inverse_;
};

/// Domain of the result of applying an operator: an offset m is known when
/// m + shift is known in the parent for every operator term.
class ShiftedDomain : public SeriesDomain {
 public:
  ShiftedDomain(std::shared_ptr<const SeriesDomain> parent, std::vector<IntVec> shifts);
  bool known(const IntVec& k) const override;

 private:
  std::shared_ptr<const SeriesDomain> parent_;
  std::vector<IntVec> shifts_;
};

/// Truncated Phi_{L,gamma}. Coefficients are relative to the reference term
/// (l = 0 whenever that term is nonzero); the absolute series is
/// sum_l c_l v^{gamma+l} / Gamma(gamma + reference + 1).
struct GammaSeries {
  GammaVector gamma;
  int truncation = 0;
  IntVec reference;
  std::map<IntVec, Rat> terms;
  std::shared_ptr<const LatticeDomain> domain;

  Rat coefficient(const IntVec& l) const;
};

/// sum_k v^{gamma+k} P_k(log v) with rational polynomials P_k.
struct LogSeries {
  RatVec gamma;
  std::map<IntVec, LogPoly> terms;
  int weight = 0;
  int truncation = 0;
  std::shared_ptr<const SeriesDomain> domain;

  int log_degree() const;
  /// Drops zero terms.
  void prune();
};

LogSeries to_log_series(const GammaSeries& s);

/// Gamma(x + 1) / Gamma(x + k + 1) as a product of linear factors; x must
/// not be a negative integer.
Rat gamma_ratio(const Rat& x, long k);

/// Delta_I gamma vectors for the sector J^c, pairwise distinct modulo L.
std::vector<GammaVector> gamma_choices(const GkzSystem& sys, const Simplex& J);

/// Throws PreconditionError when gamma does not match the system or when
/// every stored term vanishes.
GammaSeries gamma_series(const GkzSystem& sys, const GammaVector& gamma, int truncation);

struct SupportCertificate {
  IndexSet nonintegral;     // R = {i : gamma_i not integral}
  bool full_space = false;  // |R| = r
  std::vector<IntVec> rays;       // extreme rays of {l : l_i >= 0, i not in R}
  std::vector<IntVec> lineality;  // lineality space generators
  IntVec interior_point;          // l with l_i > 0 for every i not in R
};

/// Open cone of nonzero terms. Throws PreconditionError on a resonant system;
/// an empty cone under nonresonance raises InternalError with the witness.
SupportCertificate full_support_cone(const GkzSystem& sys, const GammaVector& gamma);

/// Number of stored terms in the certified region {l : l_i + gamma_i >= 0,
/// i not in R}, and whether all of them are nonzero.
struct SupportCheck {
  std::size_t checked = 0;
  bool all_nonzero = true;
};
SupportCheck check_support(const SupportCertificate& cert, const GammaSeries& s);

/// d_i Phi_{L,gamma} = Phi_{L,gamma - e_i}, computed termwise.
GammaSeries differentiate(const GammaSeries& s, int i);

struct EvalResult {
  std::complex<double> value;
  double last_shell = 0.0;  // magnitude of the highest-degree shell
  bool convergence_warning = false;
};

/// Partial sum with principal-branch powers and logarithms. When `rho` is
/// given, the sector is checked to be a convergence direction.
EvalResult evaluate(const LogSeries& s, const std::vector<std::complex<double>>& point);
EvalResult evaluate(const GkzSystem& sys, const GammaSeries& s, const std::vector<std::complex<double>>& point,
                    const std::optional<RatVec>& rho = std::nullopt);

/// Throws PreconditionError when alpha is T-resonant.
std::vector<GammaSeries> basis_for_triangulation(const GkzSystem& sys, const Triangulation& T, int truncation);

/// gamma - gamma' in L.
bool congruent_mod_lattice(const GkzSystem& sys, const RatVec& a, const RatVec& b);

/// Gamma-series solutions of a face restriction, rewritten in the original
/// variables (constant in the variables off the face).
std::vector<LogSeries> lifted_restricted_solutions(const GkzSystem& sys, const FaceRestriction& fr, int truncation);

}  // namespace gkz
