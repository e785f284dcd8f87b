#include "gkz/geom.hpp"

#include <algorithm>
#include <tuple>
#include <set>

namespace gkz {

bool Triangulation::contains(const Simplex& s) const {
  return std::find(simplices.begin(), simplices.end(), s) != simplices.end();
}

namespace {

std::optional<IntVec> find_homogeneity(const IntMatrix& A) {
  RatVec ones(A.cols(), Rat(1));
  auto h = solve_rational(A.transpose(), ones);
  if (!h) return std::nullopt;
  if (!all_integral(*h)) return std::nullopt;
  return to_int(*h);
}

std::vector<RatVec> columns_as_rat(const PointConfig& cfg, const IndexSet& pts) {
  std::vector<RatVec> out;
  for (int i : pts) out.push_back(to_rat(cfg.column(i)));
  return out;
}

}  // namespace

PointConfig PointConfig::validated(IntMatrix A) {
  if (A.rows() == 0 || A.cols() == 0) throw ConfigError("configuration-invalid: empty matrix");
  auto h = find_homogeneity(A);
  if (!h)
    throw ConfigError("configuration-invalid: condition 2 violated (no integral linear form h with h(a_i) = 1 for all i)");
  SmithForm sf = smith_normal_form(A);
  bool unit = sf.divisors.size() == A.rows();
  for (const auto& d : sf.divisors) unit = unit && d == 1;
  if (!unit) {
    std::string ds;
    for (const auto& d : sf.divisors) ds += (ds.empty() ? "" : ",") + d.str();
    throw ConfigError("configuration-invalid: condition 1 violated (Z-span of A is not Z^r; Smith divisors " + ds + ")");
  }
  if (A.cols() <= A.rows())
    throw ConfigError("configuration-invalid: need N > r (N = " + std::to_string(A.cols()) +
                      ", r = " + std::to_string(A.rows()) + ")");
  return PointConfig(std::move(A), std::move(*h), true);
}

PointConfig PointConfig::relaxed(IntMatrix A) {
  if (A.rows() == 0 || A.cols() == 0) throw ConfigError("configuration-invalid: empty matrix");
  if (rank(A) != A.rows()) throw ConfigError("configuration-invalid: matrix is rank-deficient");
  auto h = find_homogeneity(A);
  if (!h) throw ConfigError("configuration-invalid: condition 2 violated (no homogeneity form)");
  SmithForm sf = smith_normal_form(A);
  bool unit = true;
  for (const auto& d : sf.divisors) unit = unit && d == 1;
  return PointConfig(std::move(A), std::move(*h), unit);
}

std::vector<IntVec> cone_facets(const std::vector<RatVec>& gens_in, std::size_t dim) {
  if (dim == 0) return {};
  // Deduplicate by primitive direction.
  std::vector<RatVec> gens;
  std::set<IntVec> seen;
  for (const auto& g : gens_in) {
    if (is_zero(g)) continue;
    IntVec p = primitive(g);
    if (seen.insert(p).second) gens.push_back(to_rat(p));
  }
  std::vector<IntVec> normals;
  std::set<IntVec> found;
  for_each_subset(static_cast<int>(gens.size()), static_cast<int>(dim) - 1, [&](const IndexSet& sub) {
    RatMatrix M;
    for (int i : sub) M.push_back(gens[static_cast<std::size_t>(i)]);
    auto ker = rational_kernel(M, dim);
    if (ker.size() != 1) return;
    IntVec n = primitive(ker.front());
    bool pos = false, neg = false;
    for (const auto& g : gens) {
      Rat v = dot(n, g);
      if (v > 0) pos = true;
      if (v < 0) neg = true;
    }
    if (pos && neg) return;
    if (neg) n = scale(n, Int(-1));
    if (found.insert(n).second) normals.push_back(n);
  });
  // Sparse forms first, then by descending absolute pattern: E1 lists
  // x2, x3, x1 - x2, x1 - x3.
  auto key = [](const IntVec& v) {
    std::size_t support = 0;
    IntVec mag;
    for (const auto& x : v) {
      support += x != 0;
      mag.push_back(abs(x));
    }
    return std::make_tuple(support, mag, v);
  };
  std::sort(normals.begin(), normals.end(), [&](const IntVec& a, const IntVec& b) {
    auto ka = key(a), kb = key(b);
    if (std::get<0>(ka) != std::get<0>(kb)) return std::get<0>(ka) < std::get<0>(kb);
    if (std::get<1>(ka) != std::get<1>(kb)) return std::get<1>(ka) > std::get<1>(kb);
    return std::get<2>(ka) > std::get<2>(kb);
  });
  return normals;
}

std::vector<FacetForm> facet_forms(const PointConfig& cfg) {
  IndexSet all;
  for (int i = 0; i < cfg.N(); ++i) all.push_back(i);
  std::vector<FacetForm> out;
  for (auto& n : cone_facets(columns_as_rat(cfg, all), static_cast<std::size_t>(cfg.r()))) out.push_back({std::move(n)});
  return out;
}

Int simplex_volume(const PointConfig& cfg, const Simplex& J) {
  if (static_cast<int>(J.size()) != cfg.r()) return 0;
  return abs(determinant(cfg.matrix().select_columns(J)));
}

namespace {

// Pulling triangulation of the cone over `coords` (spanning Q^dim); ids name
// the points in the caller's numbering.
std::vector<IndexSet> pull(const std::vector<RatVec>& coords, const IndexSet& ids, std::size_t dim) {
  if (ids.size() == dim) return {ids};
  std::vector<IndexSet> out;
  const RatVec& apex = coords.front();
  for (const auto& n : cone_facets(coords, dim)) {
    if (dot(n, apex) == 0) continue;
    std::vector<RatVec> face_pts;
    IndexSet face_ids;
    for (std::size_t k = 0; k < coords.size(); ++k)
      if (dot(n, coords[k]) == 0) {
        face_pts.push_back(coords[k]);
        face_ids.push_back(ids[k]);
      }
    // Coordinates inside the facet hyperplane relative to a basis of its points.
    std::vector<RatVec> basis;
    for (const auto& p : face_pts) {
      std::vector<RatVec> trial = basis;
      trial.push_back(p);
      if (rank(RatMatrix(trial.begin(), trial.end()), dim) == trial.size()) basis = std::move(trial);
      if (basis.size() + 1 == dim) break;
    }
    RatMatrix B(dim, RatVec(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t i = 0; i < dim; ++i) B[i][j] = basis[j][i];
    std::vector<RatVec> sub;
    for (const auto& p : face_pts) {
      auto t = solve_rational(B, basis.size(), p);
      if (!t) throw InternalError("pulling triangulation: facet point outside its hyperplane");
      sub.push_back(std::move(*t));
    }
    for (auto s : pull(sub, face_ids, dim - 1)) {
      s.push_back(ids.front());
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

std::vector<Simplex> pulling_triangulation(const PointConfig& cfg, const IndexSet& pts) {
  auto coords = columns_as_rat(cfg, pts);
  if (rank(RatMatrix(coords.begin(), coords.end()), static_cast<std::size_t>(cfg.r())) !=
      static_cast<std::size_t>(cfg.r()))
    return {};
  auto simplices = pull(coords, pts, static_cast<std::size_t>(cfg.r()));
  std::sort(simplices.begin(), simplices.end());
  return simplices;
}

Int normalized_volume(const PointConfig& cfg, const IndexSet& pts) {
  Int vol = 0;
  for (const auto& s : pulling_triangulation(cfg, pts)) vol += simplex_volume(cfg, s);
  return vol;
}

Int normalized_volume(const PointConfig& cfg) {
  IndexSet all;
  for (int i = 0; i < cfg.N(); ++i) all.push_back(i);
  return normalized_volume(cfg, all);
}

std::optional<int> is_pyramid(const PointConfig& cfg, const LatticeBasis& lattice) {
  for (int i = 0; i < cfg.N(); ++i) {
    bool vanishes = true;
    for (const auto& b : lattice.vectors) vanishes = vanishes && b[static_cast<std::size_t>(i)] == 0;
    if (vanishes) return i;
  }
  return std::nullopt;
}

Triangulation regular_triangulation(const PointConfig& cfg, const RatVec& heights) {
  if (static_cast<int>(heights.size()) != cfg.N())
    throw PreconditionError("regular_triangulation: need one height per point");
  const IntMatrix& A = cfg.matrix();
  Triangulation T;
  T.heights = heights;
  for_each_subset(cfg.N(), cfg.r(), [&](const IndexSet& J) {
    IntMatrix AJt = A.select_columns(J).transpose();
    if (determinant(AJt) == 0) return;
    RatVec hJ;
    for (int j : J) hJ.push_back(heights[static_cast<std::size_t>(j)]);
    auto phi = solve_rational(AJt, hJ);
    IndexSet ties;
    for (int i = 0; i < cfg.N(); ++i) {
      if (std::find(J.begin(), J.end(), i) != J.end()) continue;
      Rat v = dot(cfg.column(i), *phi);
      if (v > heights[static_cast<std::size_t>(i)]) return;
      if (v == heights[static_cast<std::size_t>(i)]) ties.push_back(i);
    }
    if (!ties.empty()) {
      IndexSet cell = J;
      cell.insert(cell.end(), ties.begin(), ties.end());
      std::sort(cell.begin(), cell.end());
      throw GenericityError("non-generic heights: lower cell " + format_indices(cell) + " is not a simplex");
    }
    T.simplices.push_back(J);
  });
  Int total = 0;
  for (const auto& J : T.simplices) total += simplex_volume(cfg, J);
  if (total != normalized_volume(cfg))
    throw InternalError("regular_triangulation: simplex volumes do not add up to the volume of Q(A)");
  return T;
}

std::vector<RatVec> sector_rays(const PointConfig& cfg, const LatticeBasis& lattice, const IndexSet& I) {
  const std::size_t k = lattice.rank();
  if (I.size() != k || static_cast<int>(k) != cfg.N() - cfg.r())
    throw PreconditionError("degenerate sector " + format_indices(I) + ": need |I| = N - r");
  IndexSet J = complement(I, cfg.N());
  if (determinant(cfg.matrix().select_columns(J)) == 0)
    throw PreconditionError("degenerate sector " + format_indices(I) + ": complementary columns are dependent");
  if (k == 0) return {};
  IntMatrix B = lattice.as_columns();
  auto Pinv = inverse(B.select_rows(I));
  if (!Pinv) throw InternalError("sector_rays: projection onto the sector coordinates is not injective");
  std::vector<RatVec> rays;
  for (std::size_t m = 0; m < k; ++m) {
    RatVec t(k);
    for (std::size_t i = 0; i < k; ++i) t[i] = (*Pinv)[i][m];
    rays.push_back(B * t);
  }
  return rays;
}

bool is_convergence_direction(const PointConfig& cfg, const LatticeBasis& lattice, const RatVec& rho,
                              const IndexSet& I) {
  for (const auto& ray : sector_rays(cfg, lattice, I))
    if (dot(rho, ray) <= 0) return false;
  return true;
}

Triangulation triangulation_from_direction(const PointConfig& cfg, const LatticeBasis& lattice, const RatVec& rho) {
  Triangulation T = regular_triangulation(cfg, rho);
  for_each_subset(cfg.N(), cfg.r(), [&](const IndexSet& J) {
    if (simplex_volume(cfg, J) == 0) return;
    bool conv = is_convergence_direction(cfg, lattice, rho, complement(J, cfg.N()));
    if (conv != T.contains(J))
      throw InternalError("triangulation_from_direction: sector " + format_indices(complement(J, cfg.N())) +
                          " disagrees with the lower hull");
  });
  return T;
}

SaturationPoint saturation_point(const PointConfig& cfg, const LatticeBasis& lattice) {
  Int delta = 1;
  for (int i = 0; i < cfg.N(); ++i) {
    Int s = 0;
    for (const auto& b : lattice.vectors) s += abs(b[static_cast<std::size_t>(i)]);
    Int d = ceil(Rat(s, 2));
    if (d > delta) delta = d;
  }
  IntVec p(static_cast<std::size_t>(cfg.r()), Int(0));
  for (int i = 0; i < cfg.N(); ++i) p = add(p, cfg.column(i));
  return {scale(p, delta), delta};
}

bool supp_membership(const PointConfig& cfg, const LatticeBasis& lattice, const Triangulation& T, const IntVec& l) {
  const std::size_t k = lattice.rank();
  if (k == 0) return is_zero(l);
  auto t = solve_rational(lattice.as_columns(), to_rat(l));
  if (!t) return false;
  IntMatrix B = lattice.as_columns();
  std::vector<RatVec> gens;
  for (const auto& J : T.simplices) {
    IndexSet I = complement(J, cfg.N());
    auto Pinv = inverse(B.select_rows(I));
    if (!Pinv) throw PreconditionError("supp_membership: triangulation contains a degenerate simplex");
    for (std::size_t m = 0; m < k; ++m) {
      RatVec g(k);
      for (std::size_t i = 0; i < k; ++i) g[i] = (*Pinv)[i][m];
      gens.push_back(std::move(g));
    }
  }
  for (const auto& n : cone_facets(gens, k))
    if (dot(n, *t) < 0) return false;
  return true;
}

Triangulation default_triangulation(const PointConfig& cfg) {
  const int N = cfg.N();
  std::vector<RatVec> candidates;
  auto push = [&](auto&& f) {
    RatVec h;
    for (int i = 0; i < N; ++i) h.push_back(f(i));
    candidates.push_back(std::move(h));
  };
  push([](int i) { return Rat((i + 1) * (i + 1)); });
  for (int base : {2, 3, 5, 7, 11, 13}) {
    push([base](int i) {
      Int p = 1;
      for (int k = 0; k < i; ++k) p *= base;
      return Rat(p);
    });
  }
  push([](int i) { return Rat((i + 1) * (i + 1) * (i + 1) + 7 * i); });
  for (const auto& h : candidates) {
    try {
      return regular_triangulation(cfg, h);
    } catch (const GenericityError&) {
    }
  }
  throw GenericityError("default_triangulation: no generic height vector in the candidate list");
}

}  // namespace gkz
