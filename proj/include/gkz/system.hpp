#pragma once

// The A-hypergeometric system H_A(alpha): Euler and box operators, resonance
// diagnostics, holonomic rank and face restriction.

#include <optional>
#include <string>
#include <vector>

#include "gkz/geom.hpp"
#include "gkz/intlin.hpp"

namespace gkz {

struct GkzSystem {
  PointConfig cfg;
  RatVec alpha;
  LatticeBasis lattice;
  std::vector<FacetForm> facets;

  int r() const { return cfg.r(); }
  int N() const { return cfg.N(); }
};

/// Z_i - alpha_i with Z_i = sum_j a_ij v_j d_j.
struct EulerOperator {
  int row = 0;
  IntVec coefficients;
  Rat alpha;
};

/// d^{l+} - d^{l-} for a relation l.
struct BoxOperator {
  IntVec l;

  IntVec positive_part() const;
  IntVec negative_part() const;
  bool is_zero() const { return gkz::is_zero(l); }
  std::string to_string() const;
};

struct FacetValue {
  FacetForm form;
  Rat value;
  bool integral = false;
};

struct SimplexResonance {
  Simplex simplex;
  std::vector<FacetValue> values;  // one per facet of the simplicial cone
  bool resonant = false;
};

struct ResonanceReport {
  std::vector<FacetValue> facets;
  bool nonresonant = true;
  std::vector<SimplexResonance> simplices;  // filled by is_T_nonresonant
  bool t_nonresonant = true;
};

struct RankResult {
  Int value;
  std::vector<std::string> warnings;
};

/// Throws ConfigError naming the violated condition.
GkzSystem build_system(const IntMatrix& A, const RatVec& alpha);
/// System over an already checked configuration (used for restrictions).
GkzSystem make_system(PointConfig cfg, const RatVec& alpha);

std::vector<EulerOperator> euler_operators(const GkzSystem& sys);
/// Throws PreconditionError if l is not a relation of the configuration.
BoxOperator box_operator(const GkzSystem& sys, const IntVec& l);
std::vector<BoxOperator> basis_box_operators(const GkzSystem& sys);

ResonanceReport is_nonresonant(const GkzSystem& sys);
ResonanceReport is_T_nonresonant(const GkzSystem& sys, const Triangulation& T);

/// Primitive inward facet forms of the simplicial cone over the columns J.
std::vector<FacetForm> simplex_facet_forms(const PointConfig& cfg, const Simplex& J);

RankResult rank(const GkzSystem& sys);

/// H_A(beta) restricted to the face cut out by a set of facets, written in
/// coordinates where the face spans the first s coordinates.
struct FaceRestriction {
  IndexSet facet_indices;  // into sys.facets
  IndexSet face_columns;   // indices i with a_i on the face
  IntMatrix transform;     // unimodular, maps the face into x_{s+1} = ... = x_r = 0
  int s = 0;
  RatVec beta;
  RatVec beta_tilde;
  GkzSystem restricted;
};

/// Throws PreconditionError if beta - alpha is not integral or beta is not
/// on the chosen face of C(A).
FaceRestriction face_restrict(const GkzSystem& sys, const IndexSet& facet_indices, const RatVec& beta);

struct ReducibilityWitness {
  int facet = 0;  // index into sys.facets
  RatVec beta;
  IntVec shift;  // beta - alpha
  FaceRestriction restriction;
};

/// Searches for beta = alpha + m on a facet of C(A). Assumes (without
/// checking) that the toric ideal is Cohen-Macaulay.
std::optional<ReducibilityWitness> reducibility_witness(const GkzSystem& sys);

}  // namespace gkz
