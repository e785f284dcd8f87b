#include "gkz/series.hpp"

#include <algorithm>
#include <cmath>

namespace gkz {

LatticeDomain::LatticeDomain(LatticeBasis lattice, std::vector<IndexSet> sectors, RatVec gamma, Int truncation)
    : lattice_(std::move(lattice)), sectors_(std::move(sectors)), gamma_(std::move(gamma)), truncation_(std::move(truncation)) {
  const std::size_t k = lattice_.rank();
  if (k == 0) return;
  IntMatrix B = lattice_.as_columns();
  RatMatrix rows;
  for (std::size_t i = 0; i < B.rows() && pivot_rows_.size() < k; ++i) {
    RatMatrix trial = rows;
    trial.push_back(to_rat(B.row(i)));
    if (rank(trial, k) == trial.size()) {
      rows = std::move(trial);
      pivot_rows_.push_back(static_cast<int>(i));
    }
  }
  auto inv = inverse(rows);
  if (!inv) throw InternalError("LatticeDomain: lattice basis is not independent");
  pivot_inverse_ = std::move(*inv);
}

bool LatticeDomain::in_lattice(const IntVec& k) const {
  if (lattice_.rank() == 0) return is_zero(k);
  RatVec sel;
  for (int i : pivot_rows_) sel.push_back(Rat(k[static_cast<std::size_t>(i)]));
  RatVec t = multiply(pivot_inverse_, sel);
  if (!all_integral(t)) return false;
  return lattice_.as_columns() * to_int(t) == k;
}

bool LatticeDomain::in_some_sector(const IntVec& k) const {
  if (sectors_.empty()) return true;
  for (const auto& I : sectors_) {
    bool inside = true;
    for (int i : I) inside = inside && Rat(k[static_cast<std::size_t>(i)]) + gamma_[static_cast<std::size_t>(i)] >= 0;
    if (inside) return true;
  }
  return false;
}

bool LatticeDomain::known(const IntVec& k) const {
  return !in_lattice(k) || !in_some_sector(k) || positive_degree(k) <= truncation_;
}

ShiftedDomain::ShiftedDomain(std::shared_ptr<const SeriesDomain> parent, std::vector<IntVec> shifts)
    : parent_(std::move(parent)), shifts_(std::move(shifts)) {}

bool ShiftedDomain::known(const IntVec& k) const {
  for (const auto& u : shifts_)
    if (!parent_->known(add(k, u))) return false;
  return true;
}

Rat GammaSeries::coefficient(const IntVec& l) const {
  auto it = terms.find(l);
  return it == terms.end() ? Rat(0) : it->second;
}

int LogSeries::log_degree() const {
  int d = -1;
  for (const auto& [k, p] : terms) d = std::max(d, p.degree());
  return d;
}

void LogSeries::prune() {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second.is_zero())
      it = terms.erase(it);
    else
      ++it;
  }
}

LogSeries to_log_series(const GammaSeries& s) {
  LogSeries out;
  out.gamma = s.gamma.gamma;
  out.truncation = s.truncation;
  out.domain = s.domain;
  for (const auto& [l, c] : s.terms)
    if (c != 0) out.terms.emplace(l, LogPoly::constant(c, s.gamma.gamma.size()));
  return out;
}

Rat gamma_ratio(const Rat& x, long k) {
  if (is_negative_integer(x)) throw PreconditionError("gamma_ratio: " + to_string(x) + " is a negative integer");
  Rat out = 1;
  if (k >= 0) {
    for (long j = 1; j <= k; ++j) out /= (x + j);
  } else {
    for (long j = 0; j < -k; ++j) out *= (x - j);
  }
  return out;
}

namespace {

void check_sector(const GkzSystem& sys, const IndexSet& I) {
  if (static_cast<int>(I.size()) != sys.N() - sys.r())
    throw PreconditionError("degenerate sector " + format_indices(I) + ": need |I| = N - r");
  for (int i : I)
    if (i < 0 || i >= sys.N()) throw PreconditionError("sector index out of range");
  if (determinant(sys.cfg.matrix().select_columns(complement(I, sys.N()))) == 0)
    throw PreconditionError("degenerate sector " + format_indices(I) + ": complementary columns are dependent");
}

bool has_negative_integer(const RatVec& gamma, const IntVec& l) {
  for (std::size_t i = 0; i < gamma.size(); ++i)
    if (is_negative_integer(gamma[i] + Rat(l[i]))) return true;
  return false;
}

// l = 0 unless that term vanishes identically; then the first stored term
// that does not.
template <typename Map>
IntVec choose_reference(const RatVec& gamma, const Map& terms) {
  IntVec zero(gamma.size(), Int(0));
  if (!has_negative_integer(gamma, zero)) return zero;
  for (const auto& entry : terms)
    if (!has_negative_integer(gamma, entry.first)) return entry.first;
  throw PreconditionError("degenerate gamma " + format_vector(gamma) +
                          ": every stored term of the series vanishes at this truncation");
}

Rat relative_coefficient(const RatVec& gamma, const IntVec& ref, const IntVec& l) {
  Rat c = 1;
  for (std::size_t i = 0; i < gamma.size(); ++i)
    c *= gamma_ratio(gamma[i] + Rat(ref[i]), static_cast<long>(l[i] - ref[i]));
  return c;
}

// Lattice vectors of the sector, in lexicographic order, with |l+| <= D.
std::vector<IntVec> sector_terms(const GkzSystem& sys, const GammaVector& g, int D) {
  const std::size_t k = sys.lattice.rank();
  const std::size_t N = static_cast<std::size_t>(sys.N());
  if (k == 0) return {IntVec(N, Int(0))};
  IntMatrix B = sys.lattice.as_columns();
  auto Pinv = inverse(B.select_rows(g.sector));
  if (!Pinv) throw InternalError("gamma_series: sector projection is not injective");
  std::vector<Int> lo(k), hi(k, Int(D));
  for (std::size_t j = 0; j < k; ++j) {
    Int low = -numerator(g.gamma[static_cast<std::size_t>(g.sector[j])]);
    lo[j] = std::max(low, Int(-D));
  }
  std::vector<IntVec> out;
  for (std::size_t j = 0; j < k; ++j)
    if (lo[j] > hi[j]) return out;
  IntVec kappa = lo;
  while (true) {
    RatVec t = multiply(*Pinv, to_rat(kappa));
    RatVec l = B * t;
    if (all_integral(l)) {
      IntVec li = to_int(l);
      if (positive_degree(li) <= D) out.push_back(std::move(li));
    }
    std::size_t j = 0;
    while (j < k && kappa[j] == hi[j]) {
      kappa[j] = lo[j];
      ++j;
    }
    if (j == k) break;
    ++kappa[j];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<GammaVector> gamma_choices(const GkzSystem& sys, const Simplex& J) {
  if (static_cast<int>(J.size()) != sys.r()) throw PreconditionError("gamma_choices: simplex must have r columns");
  IntMatrix AJ = sys.cfg.matrix().select_columns(J);
  Int delta = abs(determinant(AJ));
  if (delta == 0) throw PreconditionError("gamma_choices: simplex " + format_indices(J) + " has dependent columns");
  auto AJinv = inverse(AJ);
  IndexSet I = complement(J, sys.N());

  LatticeBasis projected{I.size(), {}};
  for (const auto& b : sys.lattice.vectors) {
    IntVec p;
    for (int i : I) p.push_back(b[static_cast<std::size_t>(i)]);
    projected.vectors.push_back(std::move(p));
  }
  CosetReps cr = coset_representatives(projected);

  std::vector<GammaVector> out;
  for (auto c : cr.reps) {
    // Reduce modulo delta * Z^I, which lies in the projected lattice.
    for (auto& x : c) x = floor_div(x, delta) * -delta + x;
    RatVec rhs = sys.alpha;
    for (std::size_t m = 0; m < I.size(); ++m) rhs = sub(rhs, scale(to_rat(sys.cfg.column(I[m])), Rat(c[m])));
    RatVec gJ = multiply(*AJinv, rhs);
    RatVec gamma(static_cast<std::size_t>(sys.N()));
    for (std::size_t m = 0; m < I.size(); ++m) gamma[static_cast<std::size_t>(I[m])] = Rat(c[m]);
    for (std::size_t m = 0; m < J.size(); ++m) gamma[static_cast<std::size_t>(J[m])] = gJ[m];
    out.push_back({std::move(gamma), I});
  }
  std::sort(out.begin(), out.end(), [](const GammaVector& a, const GammaVector& b) { return a.gamma < b.gamma; });
  return out;
}

GammaSeries gamma_series(const GkzSystem& sys, const GammaVector& g, int truncation) {
  if (truncation < 0) throw PreconditionError("truncation must be nonnegative");
  if (static_cast<int>(g.gamma.size()) != sys.N()) throw PreconditionError("gamma has the wrong length");
  check_sector(sys, g.sector);
  for (int i : g.sector)
    if (!is_integral(g.gamma[static_cast<std::size_t>(i)]))
      throw PreconditionError("gamma " + format_vector(g.gamma) + " is not integral on the sector " +
                              format_indices(g.sector));
  if (sys.cfg.matrix() * g.gamma != sys.alpha)
    throw PreconditionError("gamma " + format_vector(g.gamma) + " does not satisfy A gamma = alpha");

  GammaSeries s;
  s.gamma = g;
  s.truncation = truncation;
  std::vector<IntVec> support = sector_terms(sys, g, truncation);
  std::map<IntVec, Rat> keys;
  for (const auto& l : support) keys.emplace(l, Rat(0));
  s.reference = choose_reference(g.gamma, keys);
  for (const auto& l : support) s.terms.emplace(l, relative_coefficient(g.gamma, s.reference, l));
  s.domain = std::make_shared<LatticeDomain>(sys.lattice, std::vector<IndexSet>{g.sector}, g.gamma, Int(truncation));
  return s;
}

namespace {

// Is 0 in the convex hull of the given vectors? Exact Caratheodory search.
std::optional<std::pair<IndexSet, RatVec>> zero_in_hull(const std::vector<RatVec>& pts, std::size_t dim) {
  const int n = static_cast<int>(pts.size());
  for (int size = 1; size <= std::min<int>(n, static_cast<int>(dim) + 1); ++size) {
    std::optional<std::pair<IndexSet, RatVec>> found;
    for_each_subset(n, size, [&](const IndexSet& S) {
      if (found) return;
      RatMatrix M(dim + 1, RatVec(static_cast<std::size_t>(size)));
      for (int j = 0; j < size; ++j) {
        for (std::size_t i = 0; i < dim; ++i) M[i][static_cast<std::size_t>(j)] = pts[static_cast<std::size_t>(S[j])][i];
        M[dim][static_cast<std::size_t>(j)] = 1;
      }
      if (rank(M, static_cast<std::size_t>(size)) != static_cast<std::size_t>(size)) return;
      RatVec rhs(dim + 1, Rat(0));
      rhs[dim] = 1;
      auto lambda = solve_rational(M, static_cast<std::size_t>(size), rhs);
      if (!lambda) return;
      for (const auto& x : *lambda)
        if (x < 0) return;
      found = std::make_pair(S, *lambda);
    });
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace

SupportCertificate full_support_cone(const GkzSystem& sys, const GammaVector& g) {
  if (!is_nonresonant(sys).nonresonant)
    throw PreconditionError("full_support_cone: alpha is resonant; the support certificate needs nonresonance");
  SupportCertificate cert;
  const std::size_t N = static_cast<std::size_t>(sys.N());
  const std::size_t k = sys.lattice.rank();
  for (std::size_t i = 0; i < N; ++i)
    if (!is_integral(g.gamma[i])) cert.nonintegral.push_back(static_cast<int>(i));
  cert.interior_point = IntVec(N, Int(0));
  cert.full_space = static_cast<int>(cert.nonintegral.size()) >= sys.r() || k == 0;
  IndexSet rest = complement(cert.nonintegral, sys.N());
  if (k == 0 || rest.empty()) {
    for (const auto& b : sys.lattice.vectors) cert.lineality.push_back(b);
    return cert;
  }

  IntMatrix B = sys.lattice.as_columns();
  std::vector<RatVec> forms;
  for (int i : rest) forms.push_back(to_rat(B.row(static_cast<std::size_t>(i))));
  if (auto witness = zero_in_hull(forms, k)) {
    // Every term is nonzero in the full-space case; there is no open cone to report.
    if (cert.full_space) return cert;
    IndexSet idx;
    for (int j : witness->first) idx.push_back(rest[static_cast<std::size_t>(j)]);
    throw InternalError("full_support_cone: the cone {l_i > 0, i in " + format_indices(rest) +
                        "} is empty although alpha is nonresonant; 0 is a convex combination " +
                        format_vector(witness->second) + " of the coordinate forms " + format_indices(idx));
  }

  RatMatrix S(forms.begin(), forms.end());
  std::vector<RatVec> lin = rational_kernel(S, k);
  for (const auto& t : lin) cert.lineality.push_back(primitive(B * t));

  // Extreme rays of the pointed part {S t >= 0, t orthogonal to lin}.
  const std::size_t w = lin.size();
  if (k > w) {
    const int need = static_cast<int>(k - 1 - w);
    std::vector<IntVec> rays;
    for_each_subset(static_cast<int>(forms.size()), need, [&](const IndexSet& tight) {
      RatMatrix M;
      for (int j : tight) M.push_back(forms[static_cast<std::size_t>(j)]);
      for (const auto& t : lin) M.push_back(t);
      auto ker = rational_kernel(M, k);
      if (ker.size() != 1) return;
      RatVec t = ker[0];
      bool pos = true, neg = true;
      for (const auto& f : forms) {
        Rat v = dot(f, t);
        pos = pos && v >= 0;
        neg = neg && v <= 0;
      }
      if (!pos && !neg) return;
      if (!pos) t = scale(t, Rat(-1));
      IntVec ray = primitive(B * t);
      if (std::find(rays.begin(), rays.end(), ray) == rays.end()) rays.push_back(ray);
    });
    std::sort(rays.begin(), rays.end());
    cert.rays = std::move(rays);
  }
  for (const auto& ray : cert.rays) cert.interior_point = add(cert.interior_point, ray);
  for (int i : rest)
    if (cert.interior_point[static_cast<std::size_t>(i)] <= 0)
      throw InternalError("full_support_cone: interior point " + format_vector(cert.interior_point) +
                          " is not in the open cone");
  return cert;
}

SupportCheck check_support(const SupportCertificate& cert, const GammaSeries& s) {
  SupportCheck out;
  const std::size_t N = s.gamma.gamma.size();
  for (const auto& [l, c] : s.terms) {
    bool inside = true;
    for (std::size_t i = 0; i < N && inside; ++i) {
      if (std::binary_search(cert.nonintegral.begin(), cert.nonintegral.end(), static_cast<int>(i))) continue;
      inside = Rat(l[i]) + s.gamma.gamma[i] >= 0;
    }
    if (!inside) continue;
    ++out.checked;
    if (c == 0) out.all_nonzero = false;
  }
  return out;
}

GammaSeries differentiate(const GammaSeries& s, int i) {
  const std::size_t N = s.gamma.gamma.size();
  if (i < 0 || static_cast<std::size_t>(i) >= N) throw PreconditionError("differentiate: index out of range");
  GammaSeries out;
  out.gamma = s.gamma;
  out.gamma.gamma[static_cast<std::size_t>(i)] -= 1;
  out.truncation = s.truncation;
  std::map<IntVec, Rat> raw;
  for (const auto& [l, c] : s.terms) {
    bool inside = true;
    for (int j : out.gamma.sector)
      inside = inside && Rat(l[static_cast<std::size_t>(j)]) + out.gamma.gamma[static_cast<std::size_t>(j)] >= 0;
    if (!inside) continue;
    raw.emplace(l, c * (s.gamma.gamma[static_cast<std::size_t>(i)] + Rat(l[static_cast<std::size_t>(i)])));
  }
  out.reference = choose_reference(out.gamma.gamma, raw);
  auto it = raw.find(out.reference);
  if (it == raw.end() || it->second == 0)
    throw InternalError("differentiate: reference term " + format_vector(out.reference) + " vanishes");
  Rat norm = it->second;
  for (const auto& [l, c] : raw) out.terms.emplace(l, c / norm);
  out.domain = std::make_shared<LatticeDomain>(s.domain->lattice(), s.domain->sectors(), out.gamma.gamma,
                                               s.domain->truncation());
  return out;
}

namespace {

std::complex<double> to_double(const Rat& q) { return {q.convert_to<double>(), 0.0}; }

std::complex<double> monomial_value(const RatVec& gamma, const IntVec& k,
                                    const std::vector<std::complex<double>>& point,
                                    const std::vector<std::complex<double>>& logs) {
  std::complex<double> out = 1.0;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    Rat e = gamma[i] + Rat(k[i]);
    if (e == 0) continue;
    if (point[i] == 0.0) {
      if (e > 0) return 0.0;
      throw PreconditionError("evaluate: negative power of a zero coordinate");
    }
    out *= std::exp(to_double(e) * logs[i]);
  }
  return out;
}

}  // namespace

EvalResult evaluate(const LogSeries& s, const std::vector<std::complex<double>>& point) {
  if (point.size() != s.gamma.size()) throw PreconditionError("evaluate: point has the wrong length");
  std::vector<std::complex<double>> logs(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) logs[i] = point[i] == 0.0 ? 0.0 : std::log(point[i]);
  EvalResult res{0.0, 0.0, false};
  Int top = 0;
  for (const auto& [k, p] : s.terms) top = std::max(top, positive_degree(k));
  for (const auto& [k, p] : s.terms) {
    std::complex<double> poly = 0.0;
    for (const auto& [e, c] : p.terms()) {
      std::complex<double> m = c.convert_to<double>();
      for (std::size_t i = 0; i < e.size(); ++i)
        for (int t = 0; t < e[i]; ++t) {
          if (point[i] == 0.0) throw PreconditionError("evaluate: logarithm of a zero coordinate");
          m *= logs[i];
        }
      poly += m;
    }
    std::complex<double> term = poly * monomial_value(s.gamma, k, point, logs);
    res.value += term;
    if (positive_degree(k) == top) res.last_shell += std::abs(term);
  }
  return res;
}

EvalResult evaluate(const GkzSystem& sys, const GammaSeries& s, const std::vector<std::complex<double>>& point,
                    const std::optional<RatVec>& rho) {
  EvalResult res = evaluate(to_log_series(s), point);
  if (rho) res.convergence_warning = !is_convergence_direction(sys.cfg, sys.lattice, *rho, s.gamma.sector);
  return res;
}

bool congruent_mod_lattice(const GkzSystem& sys, const RatVec& a, const RatVec& b) {
  RatVec d = sub(a, b);
  if (!all_integral(d)) return false;
  return in_lattice(sys.lattice, to_int(d));
}

std::vector<GammaSeries> basis_for_triangulation(const GkzSystem& sys, const Triangulation& T, int truncation) {
  ResonanceReport rep = is_T_nonresonant(sys, T);
  if (!rep.t_nonresonant)
    throw PreconditionError("alpha is T-resonant for this triangulation; use the logarithmic basis instead");
  std::vector<GammaSeries> out;
  for (const auto& J : T.simplices)
    for (const auto& g : gamma_choices(sys, J)) out.push_back(gamma_series(sys, g, truncation));
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b)
      if (congruent_mod_lattice(sys, out[a].gamma.gamma, out[b].gamma.gamma))
        throw InternalError("basis_for_triangulation: gamma vectors " + format_vector(out[a].gamma.gamma) + " and " +
                            format_vector(out[b].gamma.gamma) + " are congruent modulo L");
  return out;
}

std::vector<LogSeries> lifted_restricted_solutions(const GkzSystem& sys, const FaceRestriction& fr, int truncation) {
  const GkzSystem& rs = fr.restricted;
  const std::size_t N = static_cast<std::size_t>(sys.N());
  auto lift_index = [&](int j) { return fr.face_columns[static_cast<std::size_t>(j)]; };

  LatticeBasis lifted{N, {}};
  for (const auto& b : rs.lattice.vectors) {
    IntVec v(N, Int(0));
    for (std::size_t j = 0; j < b.size(); ++j) v[static_cast<std::size_t>(lift_index(static_cast<int>(j)))] = b[j];
    lifted.vectors.push_back(std::move(v));
  }

  Triangulation T = default_triangulation(rs.cfg);
  std::vector<LogSeries> out;
  for (const auto& J : T.simplices)
    for (const auto& g : gamma_choices(rs, J)) {
      GammaSeries s;
      try {
        s = gamma_series(rs, g, truncation);
      } catch (const PreconditionError&) {
        continue;
      }
      RatVec gamma(N, Rat(0));
      for (std::size_t j = 0; j < g.gamma.size(); ++j) gamma[static_cast<std::size_t>(lift_index(static_cast<int>(j)))] = g.gamma[j];
      IndexSet sector;
      for (int j : g.sector) sector.push_back(lift_index(j));
      LogSeries ls;
      ls.gamma = gamma;
      ls.truncation = truncation;
      for (const auto& [l, c] : s.terms) {
        if (c == 0) continue;
        IntVec k(N, Int(0));
        for (std::size_t j = 0; j < l.size(); ++j) k[static_cast<std::size_t>(lift_index(static_cast<int>(j)))] = l[j];
        ls.terms.emplace(std::move(k), LogPoly::constant(c, N));
      }
      ls.domain = std::make_shared<LatticeDomain>(lifted, std::vector<IndexSet>{sector}, gamma, Int(truncation));
      out.push_back(std::move(ls));
    }
  return out;
}

}  // namespace gkz
