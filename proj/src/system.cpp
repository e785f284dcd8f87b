#include "gkz/system.hpp"

#include <algorithm>
#include <sstream>

namespace gkz {

IntVec BoxOperator::positive_part() const {
  IntVec p(l.size(), Int(0));
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i] > 0) p[i] = l[i];
  return p;
}

IntVec BoxOperator::negative_part() const {
  IntVec p(l.size(), Int(0));
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i] < 0) p[i] = -l[i];
  return p;
}

namespace {

std::string monomial(const IntVec& u) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    os << "d" << i + 1;
    if (u[i] > 1) os << "^" << u[i];
    any = true;
  }
  return any ? os.str() : "1";
}

// Unimodular U, det 1, whose last r - s rows annihilate the span of the
// face columns. The first rows are unit vectors whenever possible so that
// coordinate faces restrict by dropping coordinates.
IntMatrix face_transform(const IntMatrix& AF) {
  const std::size_t r = AF.rows();
  LatticeBasis normal = kernel_lattice(AF.transpose());
  const std::size_t s = r - normal.rank();
  IntMatrix U(r, r);
  bool found = false;
  for_each_subset(static_cast<int>(r), static_cast<int>(s), [&](const IndexSet& units) {
    if (found) return;
    IntMatrix trial(r, r);
    for (std::size_t i = 0; i < s; ++i) trial(i, static_cast<std::size_t>(units[i])) = 1;
    for (std::size_t i = 0; i < normal.rank(); ++i)
      for (std::size_t j = 0; j < r; ++j) trial(s + i, j) = normal.vectors[i][j];
    if (abs(determinant(trial)) == 1) {
      U = trial;
      found = true;
    }
  });
  if (!found) {
    HermiteForm hf = hermite_normal_form(AF);
    U = hf.U;
  }
  if (determinant(U) < 0)
    for (std::size_t j = 0; j < r; ++j) U(r - 1, j) = -U(r - 1, j);
  return U;
}

}  // namespace

std::string BoxOperator::to_string() const {
  if (is_zero()) return "0";
  return monomial(positive_part()) + " - " + monomial(negative_part());
}

GkzSystem make_system(PointConfig cfg, const RatVec& alpha) {
  if (static_cast<int>(alpha.size()) != cfg.r())
    throw PreconditionError("parameter vector has length " + std::to_string(alpha.size()) + ", expected " +
                            std::to_string(cfg.r()));
  LatticeBasis lattice = integer_kernel(cfg.matrix());
  auto facets = facet_forms(cfg);
  return GkzSystem{std::move(cfg), alpha, std::move(lattice), std::move(facets)};
}

GkzSystem build_system(const IntMatrix& A, const RatVec& alpha) { return make_system(PointConfig::validated(A), alpha); }

std::vector<EulerOperator> euler_operators(const GkzSystem& sys) {
  std::vector<EulerOperator> ops;
  for (int i = 0; i < sys.r(); ++i)
    ops.push_back({i, sys.cfg.matrix().row(static_cast<std::size_t>(i)), sys.alpha[static_cast<std::size_t>(i)]});
  return ops;
}

BoxOperator box_operator(const GkzSystem& sys, const IntVec& l) {
  if (static_cast<int>(l.size()) != sys.N() || !is_zero(sys.cfg.matrix() * l))
    throw PreconditionError("box_operator: " + format_vector(l) + " is not a relation of A");
  return BoxOperator{l};
}

std::vector<BoxOperator> basis_box_operators(const GkzSystem& sys) {
  std::vector<BoxOperator> out;
  for (const auto& b : sys.lattice.vectors) out.push_back(BoxOperator{b});
  return out;
}

ResonanceReport is_nonresonant(const GkzSystem& sys) {
  ResonanceReport rep;
  for (const auto& f : sys.facets) {
    Rat v = f(sys.alpha);
    bool integral = is_integral(v);
    rep.facets.push_back({f, v, integral});
    if (integral) rep.nonresonant = false;
  }
  rep.t_nonresonant = rep.nonresonant;
  return rep;
}

std::vector<FacetForm> simplex_facet_forms(const PointConfig& cfg, const Simplex& J) {
  auto inv = inverse(cfg.matrix().select_columns(J));
  if (!inv) throw PreconditionError("simplex " + format_indices(J) + " has dependent columns");
  std::vector<FacetForm> out;
  for (const auto& row : *inv) out.push_back({primitive(row)});
  return out;
}

ResonanceReport is_T_nonresonant(const GkzSystem& sys, const Triangulation& T) {
  ResonanceReport rep = is_nonresonant(sys);
  rep.t_nonresonant = true;
  for (const auto& J : T.simplices) {
    SimplexResonance sr{J, {}, false};
    for (auto& f : simplex_facet_forms(sys.cfg, J)) {
      Rat v = f(sys.alpha);
      bool integral = is_integral(v);
      sr.values.push_back({std::move(f), v, integral});
      sr.resonant = sr.resonant || integral;
    }
    rep.t_nonresonant = rep.t_nonresonant && !sr.resonant;
    rep.simplices.push_back(std::move(sr));
  }
  return rep;
}

RankResult rank(const GkzSystem& sys) {
  RankResult res{normalized_volume(sys.cfg), {}};
  if (!is_nonresonant(sys).nonresonant)
    res.warnings.push_back("rank not guaranteed: the system is resonant and the Cohen-Macaulay property of I_A is not checked");
  if (auto apex = is_pyramid(sys.cfg, sys.lattice))
    res.warnings.push_back("Q(A) is a pyramid with apex a_" + std::to_string(*apex + 1));
  return res;
}

FaceRestriction face_restrict(const GkzSystem& sys, const IndexSet& facet_indices, const RatVec& beta) {
  if (static_cast<int>(beta.size()) != sys.r()) throw PreconditionError("face_restrict: beta has the wrong length");
  if (!all_integral(sub(beta, sys.alpha)))
    throw PreconditionError("face_restrict: beta - alpha " + format_vector(sub(beta, sys.alpha)) + " is not integral");
  for (int f : facet_indices)
    if (f < 0 || f >= static_cast<int>(sys.facets.size()))
      throw PreconditionError("face_restrict: facet index " + std::to_string(f) + " out of range");
  for (std::size_t f = 0; f < sys.facets.size(); ++f) {
    Rat v = sys.facets[f](beta);
    bool chosen = std::find(facet_indices.begin(), facet_indices.end(), static_cast<int>(f)) != facet_indices.end();
    if (v < 0 || (chosen && v != 0))
      throw PreconditionError("face_restrict: beta " + format_vector(beta) + " is not on the chosen face of C(A)");
  }

  FaceRestriction out{facet_indices, {}, IntMatrix::identity(static_cast<std::size_t>(sys.r())), sys.r(), beta, beta,
                      sys};
  for (int i = 0; i < sys.N(); ++i) {
    bool on_face = true;
    for (int f : facet_indices) on_face = on_face && sys.facets[static_cast<std::size_t>(f)](sys.cfg.column(i)) == 0;
    if (on_face) out.face_columns.push_back(i);
  }
  if (facet_indices.empty()) {
    out.restricted = make_system(sys.cfg, beta);
    return out;
  }

  IntMatrix U = face_transform(sys.cfg.matrix().select_columns(out.face_columns));
  const std::size_t s = rank(sys.cfg.matrix().select_columns(out.face_columns));
  out.transform = U;
  out.s = static_cast<int>(s);
  RatVec ub = U * beta;
  for (std::size_t i = s; i < ub.size(); ++i)
    if (ub[i] != 0) throw InternalError("face_restrict: transformed beta leaves the face span");
  out.beta_tilde.assign(ub.begin(), ub.begin() + static_cast<std::ptrdiff_t>(s));
  IntMatrix AF = U * sys.cfg.matrix().select_columns(out.face_columns);
  IntMatrix At(s, out.face_columns.size());
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < out.face_columns.size(); ++j) At(i, j) = AF(i, j);
  out.restricted = make_system(PointConfig::relaxed(std::move(At)), out.beta_tilde);
  return out;
}

std::optional<ReducibilityWitness> reducibility_witness(const GkzSystem& sys) {
  Int max_entry = 1;
  for (std::size_t i = 0; i < sys.cfg.matrix().rows(); ++i)
    for (std::size_t j = 0; j < sys.cfg.matrix().cols(); ++j) max_entry = std::max(max_entry, Int(abs(sys.cfg.matrix()(i, j))));
  const Int bound = 10 * max_entry * sys.r();

  for (std::size_t f = 0; f < sys.facets.size(); ++f) {
    const FacetForm& form = sys.facets[f];
    Rat v = form(sys.alpha);
    if (!is_integral(v)) continue;
    // x with form(x) = 1 exists because the form is primitive.
    IntMatrix col = IntMatrix::from_columns({form.coeffs});
    HermiteForm hf = hermite_normal_form(col);
    IntVec x = hf.U.row(0);
    if (dot(form.coeffs, x) != 1) throw InternalError("reducibility_witness: facet form is not primitive");
    IntVec m0 = scale(x, -numerator(v));
    // Deep vector in the relative interior of the facet.
    IntVec deep(static_cast<std::size_t>(sys.r()), Int(0));
    for (int i = 0; i < sys.N(); ++i)
      if (form(sys.cfg.column(i)) == 0) deep = add(deep, sys.cfg.column(i));
    for (Int k = 0; k <= bound; ++k) {
      IntVec m = add(m0, scale(deep, k));
      RatVec beta = add(sys.alpha, to_rat(m));
      bool inside = true;
      for (const auto& g : sys.facets) inside = inside && g(beta) >= 0;
      if (!inside) continue;
      return ReducibilityWitness{static_cast<int>(f), beta, m, face_restrict(sys, {static_cast<int>(f)}, beta)};
    }
  }
  return std::nullopt;
}

}  // namespace gkz
