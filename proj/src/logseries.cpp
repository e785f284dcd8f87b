#include "gkz/logseries.hpp"

#include <algorithm>

namespace gkz {

namespace {

using Jet = std::vector<Rat>;

Jet jet_constant(const Rat& c, int order) {
  Jet j(static_cast<std::size_t>(order) + 1, Rat(0));
  j[0] = c;
  return j;
}

// c0 + c1 eps
Jet jet_linear(const Rat& c0, const Rat& c1, int order) {
  Jet j = jet_constant(c0, order);
  if (order >= 1) j[1] = c1;
  return j;
}

Jet jet_mul(const Jet& a, const Jet& b) {
  Jet out(a.size(), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t k = 0; i + k < out.size(); ++k) out[i + k] += a[i] * b[k];
  }
  return out;
}

Jet jet_div(const Jet& a, const Jet& b) {
  if (b[0] == 0) throw InternalError("perturbed_solutions: pole in eps at a Gamma factor");
  Jet q(a.size(), Rat(0));
  for (std::size_t n = 0; n < a.size(); ++n) {
    Rat s = a[n];
    for (std::size_t k = 1; k <= n; ++k) s -= b[k] * q[n - k];
    q[n] = s / b[0];
  }
  return q;
}

// Gamma(x + 1) / Gamma(x + k + 1) for x = x0 + eps g as a jet.
Jet gamma_ratio_jet(const Rat& x0, const Rat& g, long k, int order) {
  Jet out = jet_constant(Rat(1), order);
  if (k >= 0) {
    for (long m = 1; m <= k; ++m) out = jet_div(out, jet_linear(x0 + m, g, order));
  } else {
    for (long m = 0; m < -k; ++m) out = jet_mul(out, jet_linear(x0 - m, g, order));
  }
  return out;
}

std::vector<IntVec> sector_lattice_terms(const GkzSystem& sys, const RatVec& gamma, const IndexSet& sector, int D) {
  // Reuse the Gamma-series enumeration; its coefficients are discarded.
  GammaSeries s = gamma_series(sys, GammaVector{gamma, sector}, D);
  std::vector<IntVec> out;
  for (const auto& [l, c] : s.terms) out.push_back(l);
  return out;
}

std::vector<RatVec> basis_of_span(const std::vector<RatVec>& vs, std::size_t dim) {
  std::vector<RatVec> out;
  for (const auto& v : vs) {
    std::vector<RatVec> trial = out;
    trial.push_back(v);
    if (rank(RatMatrix(trial.begin(), trial.end()), dim) == trial.size()) out = std::move(trial);
  }
  return out;
}

}  // namespace

std::vector<Simplex> resonating_simplices(const GkzSystem& sys, const Triangulation& T, const RatVec& gamma0) {
  std::vector<Simplex> out;
  for (const auto& J : T.simplices) {
    bool integral = true;
    for (int i : complement(J, sys.N())) integral = integral && is_integral(gamma0[static_cast<std::size_t>(i)]);
    if (integral) out.push_back(J);
  }
  return out;
}

RatVec choose_generic_direction(const GkzSystem& sys, const Triangulation& T) {
  if (!is_nonresonant(sys).nonresonant) throw PreconditionError("choose_generic_direction: alpha is resonant");
  const std::size_t r = static_cast<std::size_t>(sys.r());
  std::vector<std::vector<FacetForm>> forms;
  for (const auto& J : T.simplices) forms.push_back(simplex_facet_forms(sys.cfg, J));
  auto generic = [&](const RatVec& a) {
    for (const auto& fs : forms)
      for (const auto& f : fs)
        if (f(a) == 0) return false;
    return true;
  };
  for (std::size_t i = 0; i < r; ++i) {
    RatVec e(r, Rat(0));
    e[i] = 1;
    if (generic(e)) return e;
  }
  for (long p = 2; p <= 200; ++p) {
    RatVec m(r);
    Rat x = 1;
    for (std::size_t i = 0; i < r; ++i, x *= p) m[i] = x;
    if (generic(m)) return m;
  }
  throw InternalError("choose_generic_direction: candidate list exhausted");
}

std::vector<EpsSeries> perturbed_solutions(const GkzSystem& sys, const Triangulation& T, const RatVec& gamma0,
                                           const RatVec& alpha_prime, int eps_order, int truncation) {
  if (sys.cfg.matrix() * gamma0 != sys.alpha)
    throw PreconditionError("perturbed_solutions: gamma0 " + format_vector(gamma0) + " does not satisfy A gamma = alpha");
  std::vector<Simplex> B = resonating_simplices(sys, T, gamma0);
  const int b = static_cast<int>(B.size());
  if (b < 2)
    throw PreconditionError("perturbed_solutions: " + std::to_string(b) +
                            " resonating simplices; the construction needs at least 2");
  if (eps_order < b - 1)
    throw PreconditionError("insufficient eps order " + std::to_string(eps_order) + " for " + std::to_string(b) +
                            " resonating simplices (need at least " + std::to_string(b - 1) + ")");

  std::vector<EpsSeries> out;
  for (const auto& J : B) {
    EpsSeries psi;
    psi.simplex = J;
    psi.sector = complement(J, sys.N());
    psi.gamma0 = gamma0;
    psi.eps_order = eps_order;
    psi.truncation = truncation;
    auto inv = inverse(sys.cfg.matrix().select_columns(J));
    RatVec gJ = multiply(*inv, alpha_prime);
    psi.direction.assign(static_cast<std::size_t>(sys.N()), Rat(0));
    for (std::size_t m = 0; m < J.size(); ++m) psi.direction[static_cast<std::size_t>(J[m])] = gJ[m];

    for (const auto& l : sector_lattice_terms(sys, gamma0, psi.sector, truncation)) {
      Jet c = jet_constant(Rat(1), eps_order);
      for (std::size_t i = 0; i < l.size(); ++i)
        c = jet_mul(c, gamma_ratio_jet(gamma0[i], psi.direction[i], static_cast<long>(l[i]), eps_order));
      psi.terms.emplace(l, std::move(c));
    }
    psi.domain = std::make_shared<LatticeDomain>(sys.lattice, std::vector<IndexSet>{psi.sector}, gamma0, Int(truncation));
    out.push_back(std::move(psi));
  }
  return out;
}

std::vector<LogSeries> extract_log_basis(const std::vector<EpsSeries>& psis, int truncation) {
  const std::size_t b = psis.size();
  if (b == 0) return {};
  const std::size_t N = psis[0].gamma0.size();
  const int order = psis[0].eps_order;

  // Psi_i^{(n)} = sum_l v^{gamma0 + l} sum_a jet_l[a] G_i^{n-a} / (n-a)!
  std::vector<std::vector<LogPoly>> carrier_powers(b);
  for (std::size_t i = 0; i < b; ++i) {
    LogPoly G = LogPoly::linear(psis[i].direction);
    LogPoly p = LogPoly::constant(Rat(1), N);
    Rat fact = 1;
    for (int n = 0; n <= order; ++n) {
      if (n > 0) {
        p = p * G;
        fact *= n;
      }
      carrier_powers[i].push_back(p * Rat(1 / fact));
    }
  }
  auto component = [&](std::size_t i, int n) {
    std::map<IntVec, LogPoly> out;
    for (const auto& [l, jet] : psis[i].terms) {
      LogPoly acc(N);
      for (int a = 0; a <= n; ++a)
        if (jet[static_cast<std::size_t>(a)] != 0) acc += carrier_powers[i][static_cast<std::size_t>(n - a)] * jet[static_cast<std::size_t>(a)];
      if (!acc.is_zero()) out.emplace(l, std::move(acc));
    }
    return out;
  };
  auto known_everywhere = [&](const IntVec& l) {
    for (const auto& p : psis)
      if (!p.domain->known(l)) return false;
    return true;
  };

  std::vector<IndexSet> sectors;
  for (const auto& p : psis) sectors.push_back(p.sector);
  auto union_domain = std::make_shared<LatticeDomain>(psis[0].domain->lattice(), sectors, psis[0].gamma0, Int(truncation));

  // W_0 = Q^b; W_{m+1} = W_m intersected with ker(c -> sum c_i Psi_i^{(m)}).
  std::vector<RatVec> W;
  for (std::size_t i = 0; i < b; ++i) {
    RatVec e(b, Rat(0));
    e[i] = 1;
    W.push_back(e);
  }
  std::vector<std::pair<RatVec, int>> chosen;
  std::vector<std::vector<std::map<IntVec, LogPoly>>> comps(b);
  for (int m = 0; !W.empty(); ++m) {
    if (m > order)
      throw InternalError("extract_log_basis: elimination collapse; " + std::to_string(W.size()) +
                          " combinations still vanish to eps order " + std::to_string(order));
    for (std::size_t i = 0; i < b; ++i) comps[i].push_back(component(i, m));
    // Rows indexed by (term, log monomial) on commonly known terms.
    std::map<std::pair<IntVec, LogPoly::Exponent>, RatVec> rows;
    for (std::size_t i = 0; i < b; ++i)
      for (const auto& [l, poly] : comps[i][static_cast<std::size_t>(m)]) {
        if (!known_everywhere(l)) continue;
        for (const auto& [e, c] : poly.terms()) {
          auto& row = rows[{l, e}];
          if (row.empty()) row.assign(b, Rat(0));
          row[i] += c;
        }
      }
    RatMatrix M;
    for (const auto& [key, row] : rows) {
      RatVec r(W.size(), Rat(0));
      for (std::size_t w = 0; w < W.size(); ++w) r[w] = dot(row, W[w]);
      M.push_back(std::move(r));
    }
    std::vector<RatVec> ker = M.empty() ? std::vector<RatVec>{} : rational_kernel(M, W.size());
    if (M.empty())
      for (std::size_t w = 0; w < W.size(); ++w) {
        RatVec e(W.size(), Rat(0));
        e[w] = 1;
        ker.push_back(e);
      }
    std::vector<RatVec> next;
    for (const auto& k : ker) {
      RatVec v(b, Rat(0));
      for (std::size_t w = 0; w < W.size(); ++w) v = add(v, scale(W[w], k[w]));
      next.push_back(std::move(v));
    }
    // Extend a basis of W_{m+1} to W_m; the new vectors have weight m.
    std::vector<RatVec> span = basis_of_span(next, b);
    for (const auto& w : W) {
      std::vector<RatVec> trial = span;
      trial.push_back(w);
      if (rank(RatMatrix(trial.begin(), trial.end()), b) == trial.size()) {
        span = std::move(trial);
        chosen.emplace_back(w, m);
      }
    }
    W = std::move(next);
  }
  if (chosen.size() != b)
    throw InternalError("extract_log_basis: produced " + std::to_string(chosen.size()) + " solutions, expected " +
                        std::to_string(b));

  std::vector<LogSeries> out;
  for (const auto& [c, m] : chosen) {
    LogSeries g;
    g.gamma = psis[0].gamma0;
    g.weight = m;
    g.truncation = truncation;
    g.domain = union_domain;
    for (std::size_t i = 0; i < b; ++i) {
      if (c[i] == 0) continue;
      for (const auto& [l, poly] : comps[i][static_cast<std::size_t>(m)]) {
        auto it = g.terms.try_emplace(l, LogPoly(N)).first;
        it->second += poly * c[i];
      }
    }
    g.prune();
    // Normalize the first stored term's leading coefficient to 1.
    if (!g.terms.empty()) {
      const LogPoly& first = g.terms.begin()->second;
      Rat lead = first.terms().rbegin()->second;
      for (auto& [l, p] : g.terms) p *= Rat(1 / lead);
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<LogSeries> LogBasis::solutions() const {
  std::vector<LogSeries> out;
  for (const auto& blk : blocks)
    for (const auto& s : blk.solutions) out.push_back(s);
  return out;
}

std::size_t LogBasis::size() const {
  std::size_t n = 0;
  for (const auto& blk : blocks) n += blk.solutions.size();
  return n;
}

LogBasis full_basis(const GkzSystem& sys, const Triangulation& T, int truncation, std::optional<int> eps_order) {
  if (!is_nonresonant(sys).nonresonant)
    throw PreconditionError("full_basis: alpha is resonant; the logarithmic construction assumes nonresonance");

  struct Entry {
    Simplex J;
    GammaVector g;
  };
  std::vector<std::vector<Entry>> classes;
  for (const auto& J : T.simplices)
    for (const auto& g : gamma_choices(sys, J)) {
      bool placed = false;
      for (auto& cls : classes)
        if (congruent_mod_lattice(sys, cls.front().g.gamma, g.gamma)) {
          cls.push_back({J, g});
          placed = true;
          break;
        }
      if (!placed) classes.push_back({{J, g}});
    }

  LogBasis out;
  for (const auto& cls : classes) {
    BasisBlock blk;
    for (const auto& e : cls) blk.simplices.push_back(e.J);
    if (cls.size() == 1) {
      blk.gamma = cls.front().g.gamma;
      blk.solutions.push_back(to_log_series(gamma_series(sys, cls.front().g, truncation)));
      out.blocks.push_back(std::move(blk));
      continue;
    }
    if (out.alpha_prime.empty()) out.alpha_prime = choose_generic_direction(sys, T);
    // Shift the representative along L so that its integral coordinates are
    // nonnegative; Gamma(gamma0 + eps gamma^(i) + 1) then has no pole.
    RatVec gamma0 = cls.front().g.gamma;
    SupportCertificate cert = full_support_cone(sys, GammaVector{gamma0, cls.front().g.sector});
    for (int guard = 0;; ++guard) {
      bool ok = true;
      for (std::size_t i = 0; i < gamma0.size(); ++i)
        if (is_integral(gamma0[i]) && gamma0[i] < 0) ok = false;
      if (ok) break;
      if (guard > 10000 || is_zero(cert.interior_point))
        throw InternalError("full_basis: cannot shift " + format_vector(gamma0) + " to nonnegative integral entries");
      gamma0 = add(gamma0, to_rat(cert.interior_point));
    }
    Triangulation sub;
    for (const auto& J : T.simplices)
      if (std::find(blk.simplices.begin(), blk.simplices.end(), J) != blk.simplices.end()) sub.simplices.push_back(J);
    if (resonating_simplices(sys, sub, gamma0).size() != cls.size())
      throw InternalError("full_basis: residue class " + format_vector(gamma0) + " does not resonate on all its simplices");
    const int b = static_cast<int>(cls.size());
    auto psis = perturbed_solutions(sys, sub, gamma0, out.alpha_prime, eps_order.value_or(b), truncation);
    blk.gamma = gamma0;
    blk.logarithmic = true;
    blk.solutions = extract_log_basis(psis, truncation);
    out.blocks.push_back(std::move(blk));
  }
  std::size_t expected = static_cast<std::size_t>(normalized_volume(sys.cfg));
  if (out.size() != expected)
    throw InternalError("full_basis: produced " + std::to_string(out.size()) + " solutions, volume is " +
                        std::to_string(expected));
  return out;
}

}  // namespace gkz
