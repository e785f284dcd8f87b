#pragma once

// Logarithmic solutions for nonresonant, T-resonant parameters via the
// epsilon-perturbation of gamma along a generic direction.

#include <map>
#include <optional>
#include <vector>

#include "gkz/series.hpp"

namespace gkz {

/// Simplices J of T with gamma0_i integral for every i outside J.
std::vector<Simplex> resonating_simplices(const GkzSystem& sys, const Triangulation& T, const RatVec& gamma0);

/// First alpha' in a fixed candidate list (unit vectors, then moment vectors
/// (1, p, p^2, ...)) on which no simplex-facet form of T vanishes.
RatVec choose_generic_direction(const GkzSystem& sys, const Triangulation& T);

/// Psi_i(eps, v): the series of gamma0 + eps gamma^(i) over the sector of
/// J_i, multiplied by Gamma(gamma0 + eps gamma^(i) + 1). Coefficients are
/// eps-jets of length eps_order + 1; the factor v^{eps gamma^(i)} is kept
/// symbolically through `direction`.
struct EpsSeries {
  Simplex simplex;
  IndexSet sector;
  RatVec gamma0;
  RatVec direction;  // gamma^(i): A_J^{-1} alpha' on J, 0 elsewhere
  int eps_order = 0;
  int truncation = 0;
  std::map<IntVec, std::vector<Rat>> terms;
  std::shared_ptr<const LatticeDomain> domain;
};

/// Throws PreconditionError when fewer than two simplices resonate or when
/// eps_order < b - 1; InternalError if a pole in eps appears.
std::vector<EpsSeries> perturbed_solutions(const GkzSystem& sys, const Triangulation& T, const RatVec& gamma0,
                                           const RatVec& alpha_prime, int eps_order, int truncation);

/// Limits of eps^{-m} (sum_i c_i Psi_i) along the eps-filtration. Returns b
/// series whose weights are the filtration depths. Throws InternalError
/// when the elimination cannot separate the psis within eps_order.
std::vector<LogSeries> extract_log_basis(const std::vector<EpsSeries>& psis, int truncation);

/// Solutions attached to one residue class of gamma vectors modulo L.
struct BasisBlock {
  std::vector<Simplex> simplices;
  RatVec gamma;  // common representative (shifted for the log construction)
  bool logarithmic = false;
  std::vector<LogSeries> solutions;
};

struct LogBasis {
  RatVec alpha_prime;  // empty when no block needed the perturbation
  std::vector<BasisBlock> blocks;

  std::vector<LogSeries> solutions() const;
  std::size_t size() const;
};

/// Vol(Q(A)) solutions for a nonresonant system. `eps_order` defaults to
/// the block size.
LogBasis full_basis(const GkzSystem& sys, const Triangulation& T, int truncation,
                    std::optional<int> eps_order = std::nullopt);

}  // namespace gkz
