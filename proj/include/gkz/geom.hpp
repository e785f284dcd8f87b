#pragma once

// Polyhedral geometry of a point configuration: the cone C(A), its facets,
// normalized volumes, regular triangulations and summation sectors.

#include <optional>
#include <string>
#include <vector>

#include "gkz/intlin.hpp"
#include "gkz/numeric.hpp"

namespace gkz {

/// Integer point configuration {a_1..a_N} in Z^r lying on a hyperplane h = 1.
///
/// `validated` configurations satisfy N > r, span Z^r over the integers, and
/// admit the homogeneity form. Configurations produced by face restriction
/// are only required to have full rank and a homogeneity form.
class PointConfig {
 public:
  /// Checks every defining condition and throws ConfigError naming the
  /// first one that fails.
  static PointConfig validated(IntMatrix A);
  /// Full rank and homogeneity only; used for restricted configurations.
  static PointConfig relaxed(IntMatrix A);

  int r() const { return static_cast<int>(A_.rows()); }
  int N() const { return static_cast<int>(A_.cols()); }
  const IntMatrix& matrix() const { return A_; }
  IntVec column(int i) const { return A_.column(static_cast<std::size_t>(i)); }
  const IntVec& homogeneity() const { return h_; }
  /// True when the columns generate Z^r.
  bool spans_lattice() const { return spans_lattice_; }

 private:
  PointConfig(IntMatrix A, IntVec h, bool spans) : A_(std::move(A)), h_(std::move(h)), spans_lattice_(spans) {}

  IntMatrix A_;
  IntVec h_;
  bool spans_lattice_ = true;
};

/// Primitive integral linear form l with l(a_i) >= 0 for all i, vanishing on
/// a facet of C(A).
struct FacetForm {
  IntVec coeffs;

  Int operator()(const IntVec& x) const { return dot(coeffs, x); }
  Rat operator()(const RatVec& x) const { return dot(coeffs, x); }
  bool operator==(const FacetForm&) const = default;
};

/// Sorted r-subset of column indices with linearly independent columns.
using Simplex = IndexSet;

struct Triangulation {
  std::vector<Simplex> simplices;  // lexicographically sorted
  std::optional<RatVec> heights;

  bool contains(const Simplex& s) const;
};

struct SaturationPoint {
  IntVec p;
  Int delta;
};

std::vector<FacetForm> facet_forms(const PointConfig& cfg);

/// Inward primitive normals of the facets of the cone generated by `gens`,
/// assumed to span Q^dim. Returns nothing when the cone is the whole space.
std::vector<IntVec> cone_facets(const std::vector<RatVec>& gens, std::size_t dim);

/// Normalized volume of conv{a_i : i in pts} (0 if lower-dimensional).
Int normalized_volume(const PointConfig& cfg, const IndexSet& pts);
Int normalized_volume(const PointConfig& cfg);

/// |det| of the simplex columns; 0 when dependent.
Int simplex_volume(const PointConfig& cfg, const Simplex& J);

/// A pulling triangulation of the given points; always a triangulation.
std::vector<Simplex> pulling_triangulation(const PointConfig& cfg, const IndexSet& pts);

/// Index i such that l_i = 0 for every relation, if any.
std::optional<int> is_pyramid(const PointConfig& cfg, const LatticeBasis& lattice);

/// Regular triangulation induced by lifting a_i to height heights_i. Throws
/// GenericityError if some lower cell is not a simplex.
Triangulation regular_triangulation(const PointConfig& cfg, const RatVec& heights);

/// Extreme rays of the sector cone {l in L (x) Q : l_i >= 0, i in I}; the
/// k-th ray has l_{I_k} = 1 and l_{I_j} = 0 otherwise. Throws
/// PreconditionError when I is not the complement of independent columns.
std::vector<RatVec> sector_rays(const PointConfig& cfg, const LatticeBasis& lattice, const IndexSet& I);

bool is_convergence_direction(const PointConfig& cfg, const LatticeBasis& lattice, const RatVec& rho,
                              const IndexSet& I);

/// Regular triangulation for heights rho, checked against the sector
/// criterion for every independent r-subset.
Triangulation triangulation_from_direction(const PointConfig& cfg, const LatticeBasis& lattice, const RatVec& rho);

SaturationPoint saturation_point(const PointConfig& cfg, const LatticeBasis& lattice);

/// Membership of l in the convex closure of the union of the summation
/// sectors J^c, J in T.
bool supp_membership(const PointConfig& cfg, const LatticeBasis& lattice, const Triangulation& T, const IntVec& l);

/// Deterministic generic heights: tries a fixed list of height vectors and
/// returns the first regular triangulation that exists.
Triangulation default_triangulation(const PointConfig& cfg);

}  // namespace gkz
