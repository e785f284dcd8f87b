#include "gkz/weyl.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "gkz/logseries.hpp"

namespace gkz {

DiffOperator DiffOperator::identity(std::size_t nvars) {
  return monomial(IntVec(nvars, Int(0)), IntVec(nvars, Int(0)));
}

DiffOperator DiffOperator::monomial(const IntVec& c, const IntVec& u, const Rat& coeff) {
  DiffOperator op(c.size());
  op.add_term(c, u, coeff);
  return op;
}

DiffOperator DiffOperator::derivative(const IntVec& u) { return monomial(IntVec(u.size(), Int(0)), u); }

DiffOperator DiffOperator::from_euler(const EulerOperator& e) {
  const std::size_t N = e.coefficients.size();
  DiffOperator op(N);
  for (std::size_t j = 0; j < N; ++j) op.add_term(unit_vector(N, j), unit_vector(N, j), Rat(e.coefficients[j]));
  op.add_term(IntVec(N, Int(0)), IntVec(N, Int(0)), -e.alpha);
  return op;
}

DiffOperator DiffOperator::from_box(const BoxOperator& b) {
  const std::size_t N = b.l.size();
  DiffOperator op(N);
  op.add_term(IntVec(N, Int(0)), b.positive_part(), Rat(1));
  op.add_term(IntVec(N, Int(0)), b.negative_part(), Rat(-1));
  return op;
}

int DiffOperator::order() const {
  Int d = 0;
  for (const auto& [key, c] : terms_) {
    Int s = 0;
    for (const auto& x : key.second) s += x;
    d = std::max(d, s);
  }
  return d.convert_to<int>();
}

void DiffOperator::add_term(const IntVec& c, const IntVec& u, const Rat& coeff) {
  if (coeff == 0) return;
  for (const auto& x : u)
    if (x < 0) throw PreconditionError("DiffOperator: negative derivative exponent " + format_vector(u));
  if (nvars_ == 0) nvars_ = c.size();
  auto [it, inserted] = terms_.emplace(Key{c, u}, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

DiffOperator DiffOperator::operator+(const DiffOperator& other) const {
  DiffOperator out = *this;
  for (const auto& [k, c] : other.terms_) out.add_term(k.first, k.second, c);
  return out;
}

DiffOperator DiffOperator::operator-(const DiffOperator& other) const { return *this + other * Rat(-1); }

DiffOperator DiffOperator::operator*(const Rat& s) const {
  DiffOperator out(nvars_);
  for (const auto& [k, c] : terms_) out.add_term(k.first, k.second, c * s);
  return out;
}

std::string DiffOperator::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  // Highest derivative order first, then descending exponents; constants last.
  std::vector<std::pair<Key, Rat>> sorted(terms_.begin(), terms_.end());
  auto degree = [](const IntVec& u) {
    Int d = 0;
    for (const auto& x : u) d += x;
    return d;
  };
  std::stable_sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
    Int da = degree(a.first.second), db = degree(b.first.second);
    if (da != db) return da > db;
    if (a.first.second != b.first.second) return a.first.second > b.first.second;
    return a.first.first > b.first.first;
  });
  bool first = true;
  for (const auto& [k, coeff] : sorted) {
    Rat c = coeff;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    } else if (c < 0) {
      os << "-";
      c = -c;
    }
    first = false;
    std::ostringstream mono;
    for (std::size_t i = 0; i < k.first.size(); ++i) {
      if (k.first[i] == 0) continue;
      mono << "v" << i + 1;
      if (k.first[i] != 1) mono << "^" << k.first[i];
    }
    for (std::size_t i = 0; i < k.second.size(); ++i) {
      if (k.second[i] == 0) continue;
      mono << "d" << i + 1;
      if (k.second[i] != 1) mono << "^" << k.second[i];
    }
    std::string m = mono.str();
    if (m.empty())
      os << gkz::to_string(c);
    else if (c == 1)
      os << m;
    else
      os << gkz::to_string(c) << "*" << m;
  }
  return os.str();
}

namespace {

Rat binomial(long n, long k) {
  Rat out = 1;
  for (long j = 0; j < k; ++j) out = out * (n - j) / (j + 1);
  return out;
}

// c (c - 1) ... (c - w + 1)
Rat falling(const Int& c, long w) {
  Rat out = 1;
  for (long j = 0; j < w; ++j) out *= Rat(c - j);
  return out;
}

}  // namespace

DiffOperator compose(const DiffOperator& P, const DiffOperator& Q) {
  const std::size_t N = std::max(P.nvars(), Q.nvars());
  DiffOperator out(N);
  for (const auto& [kp, cp] : P.terms())
    for (const auto& [kq, cq] : Q.terms()) {
      // v^a d^u v^b d^w = sum_s prod_i C(u_i, s_i) [b_i]_{s_i} v^{a + b - s} d^{u - s + w}
      const IntVec& a = kp.first;
      const IntVec& u = kp.second;
      const IntVec& b = kq.first;
      const IntVec& w = kq.second;
      IntVec s(N, Int(0));
      while (true) {
        Rat coeff = cp * cq;
        for (std::size_t i = 0; i < N && coeff != 0; ++i) {
          long ui = u[i].convert_to<long>(), si = s[i].convert_to<long>();
          coeff *= binomial(ui, si) * falling(b[i], si);
        }
        if (coeff != 0) out.add_term(sub(add(a, b), s), add(sub(u, s), w), coeff);
        std::size_t i = 0;
        while (i < N && s[i] == u[i]) {
          s[i] = 0;
          ++i;
        }
        if (i == N) break;
        ++s[i];
      }
    }
  return out;
}

LogSeries apply(const DiffOperator& op, const LogSeries& s) {
  const std::size_t N = s.gamma.size();
  LogSeries out;
  out.gamma = s.gamma;
  out.weight = s.weight;
  out.truncation = s.truncation;
  std::vector<IntVec> shifts;
  for (const auto& [key, c] : op.terms()) {
    IntVec shift = sub(key.second, key.first);
    if (std::find(shifts.begin(), shifts.end(), shift) == shifts.end()) shifts.push_back(shift);
  }
  out.domain = std::make_shared<ShiftedDomain>(s.domain, shifts);

  for (const auto& [k, poly] : s.terms) {
    for (const auto& [key, coeff] : op.terms()) {
      const IntVec& c = key.first;
      const IntVec& u = key.second;
      // d_i (v^e P) = v^{e - e_i} (e_i P + dP / dlog v_i)
      RatVec e(N);
      for (std::size_t i = 0; i < N; ++i) e[i] = s.gamma[i] + Rat(k[i]);
      LogPoly p = poly;
      for (std::size_t i = 0; i < N && !p.is_zero(); ++i)
        for (Int t = 0; t < u[i]; ++t) {
          p = p * e[i] + p.derivative(i);
          e[i] -= 1;
        }
      if (p.is_zero()) continue;
      IntVec m = sub(add(k, c), u);
      auto it = out.terms.try_emplace(m, LogPoly(N)).first;
      it->second += p * coeff;
    }
  }
  for (auto it = out.terms.begin(); it != out.terms.end();) {
    if (it->second.is_zero() || !out.domain->known(it->first))
      it = out.terms.erase(it);
    else
      ++it;
  }
  out.weight = std::max(0, out.log_degree());
  return out;
}

LogSeries apply(const DiffOperator& op, const GammaSeries& s) { return apply(op, to_log_series(s)); }

LogSeries residual(const DiffOperator& op, const LogSeries& s) { return apply(op, s); }

namespace {

Int term_valuation(const GkzSystem& sys, const IntVec& u, const FacetForm& l) {
  Int v = 0;
  for (int j = 0; j < sys.N(); ++j) v += u[static_cast<std::size_t>(j)] * l(sys.cfg.column(j));
  return v;
}

}  // namespace

Int valuation(const GkzSystem& sys, const DiffOperator& op, const FacetForm& l) {
  if (op.is_zero()) throw PreconditionError("valuation of the zero operator is undefined");
  std::optional<Int> best;
  for (const auto& [key, c] : op.terms()) {
    Int v = term_valuation(sys, key.second, l);
    if (!best || v < *best) best = v;
  }
  return *best;
}

DiffOperator raise_valuation(const IntVec& u, const FacetForm& l, const GkzSystem& sys) {
  const std::size_t N = static_cast<std::size_t>(sys.N());
  RatVec target = sys.alpha;
  for (std::size_t j = 0; j < N; ++j) target = sub(target, scale(to_rat(sys.cfg.column(static_cast<int>(j))), Rat(u[j])));
  Rat denom = l(target);
  if (denom == 0)
    throw PreconditionError("resonance obstruction: l(alpha - A u) = 0 for l = " + format_vector(l.coeffs) +
                            ", u = " + format_vector(u));
  DiffOperator P(N);
  for (std::size_t j = 0; j < N; ++j) {
    Int w = l(sys.cfg.column(static_cast<int>(j)));
    if (w == 0) continue;
    P.add_term(unit_vector(N, j), add(u, unit_vector(N, j)), Rat(w) / denom);
  }
  return P;
}

std::optional<BoxRewrite> box_rewrite(const GkzSystem& sys, const IntVec& w, const IntVec& u, std::size_t limit) {
  const std::size_t N = static_cast<std::size_t>(sys.N());
  IntVec diff = sub(w, u);
  IntVec target = sys.cfg.matrix() * diff;
  Int deg = 0;
  for (const auto& x : diff) deg += x;
  if (deg < 0) return std::nullopt;
  const long d = deg.convert_to<long>();
  // Number of compositions of d into N parts.
  Rat count = binomial(d + static_cast<long>(N) - 1, static_cast<long>(N) - 1);
  if (count > Rat(static_cast<long>(limit)))
    throw InconclusiveError("box_rewrite: " + to_string(count) + " candidates exceed the search limit");

  IntVec cur(N, Int(0));
  std::optional<BoxRewrite> found;
  // Depth-first over compositions in lexicographically decreasing order.
  std::function<void(std::size_t, long)> rec = [&](std::size_t pos, long left) {
    if (found) return;
    if (pos + 1 == N) {
      cur[pos] = left;
      if (sys.cfg.matrix() * cur == target) found = BoxRewrite{cur, sub(diff, cur)};
      return;
    }
    for (long x = left; x >= 0 && !found; --x) {
      cur[pos] = x;
      rec(pos + 1, left - x);
    }
    cur[pos] = 0;
  };
  if (N == 0) return std::nullopt;
  rec(0, d);
  return found;
}

int default_effort() {
  if (const char* env = std::getenv("GKZ_EFFORT")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
    throw ParseError(std::string("GKZ_EFFORT must be a positive integer, got '") + env + "'");
  }
  return 64;
}

ContiguityResult contiguity_inverse(const GkzSystem& sys, int i, int effort, int truncation) {
  const std::size_t N = static_cast<std::size_t>(sys.N());
  if (i < 0 || i >= sys.N()) throw PreconditionError("contiguity_inverse: index out of range");
  if (!is_nonresonant(sys).nonresonant)
    throw PreconditionError("contiguity_inverse: alpha is resonant; d_" + std::to_string(i + 1) +
                            " need not be invertible");
  ContiguityResult res;
  SaturationPoint sat = saturation_point(sys.cfg, sys.lattice);
  IntVec ei = unit_vector(N, static_cast<std::size_t>(i));
  std::vector<Int> target;
  for (const auto& f : sys.facets) target.push_back(term_valuation(sys, ei, f) + f(sat.p));
  {
    std::ostringstream os;
    os << "saturation point " << format_vector(sat.p) << " (delta " << sat.delta << ")";
    res.trace.push_back(os.str());
  }

  DiffOperator P = DiffOperator::identity(N);
  bool done = false;
  for (int pass = 0; pass < effort; ++pass) {
    done = true;
    for (std::size_t f = 0; f < sys.facets.size(); ++f) {
      DiffOperator next(N);
      std::size_t raised = 0;
      for (const auto& [key, c] : P.terms()) {
        if (term_valuation(sys, key.second, sys.facets[f]) >= target[f]) {
          next.add_term(key.first, key.second, c);
          continue;
        }
        ++raised;
        DiffOperator R = raise_valuation(key.second, sys.facets[f], sys);
        for (const auto& [rk, rc] : R.terms()) next.add_term(add(key.first, rk.first), rk.second, c * rc);
      }
      if (raised > 0) done = false;
      P = std::move(next);
    }
    res.passes = pass + 1;
    std::ostringstream os;
    os << "pass " << pass + 1 << ": " << P.terms().size() << " terms";
    res.trace.push_back(os.str());
    if (done) break;
  }
  if (!done) {
    std::ostringstream os;
    os << "contiguity_inverse: effort bound of " << effort << " passes exhausted with " << P.terms().size()
       << " terms; trace:";
    for (const auto& t : res.trace) os << "\n  " << t;
    throw InconclusiveError(os.str());
  }

  DiffOperator inv(N);
  for (const auto& [key, c] : P.terms()) {
    auto rw = box_rewrite(sys, key.second, ei);
    if (!rw)
      throw InconclusiveError("contiguity_inverse: d^" + format_vector(key.second) + " does not factor through d_" +
                              std::to_string(i + 1));
    inv.add_term(key.first, rw->w_prime, c);
  }
  res.inverse = inv;

  // Certificate on a solution basis.
  DiffOperator check = compose(inv, DiffOperator::derivative(ei));
  LogBasis basis = full_basis(sys, default_triangulation(sys.cfg), truncation);
  for (const auto& s : basis.solutions()) {
    ++res.basis_size;
    LogSeries image = apply(check, s);
    std::vector<IntVec> offsets;
    for (const auto& [k, p] : image.terms) offsets.push_back(k);
    for (const auto& [k, p] : s.terms) offsets.push_back(k);
    for (const auto& k : offsets) {
      if (!image.domain->known(k)) continue;
      auto a = image.terms.find(k);
      auto b = s.terms.find(k);
      LogPoly lhs = a == image.terms.end() ? LogPoly(N) : a->second;
      LogPoly rhs = b == s.terms.end() ? LogPoly(N) : b->second;
      if (!(lhs == rhs))
        throw InternalError("contiguity_inverse: certificate fails at offset " + format_vector(k));
      if (b != s.terms.end()) ++res.certified_terms;
    }
  }
  if (res.certified_terms == 0) {
    Int reach = 0;
    for (const auto& [key, c] : check.terms()) reach = std::max(reach, positive_degree(sub(key.second, key.first)));
    throw InconclusiveError("contiguity_inverse: certificate is vacuous at truncation " + std::to_string(truncation) +
                            "; P' o d_" + std::to_string(i + 1) + " shifts offsets by degree up to " + to_string(reach) +
                            ", retry with a truncation above that");
  }
  return res;
}

std::vector<std::pair<std::string, DiffOperator>> system_operators(const GkzSystem& sys) {
  std::vector<std::pair<std::string, DiffOperator>> out;
  for (const auto& e : euler_operators(sys)) out.emplace_back("Z" + std::to_string(e.row + 1) + " - alpha" + std::to_string(e.row + 1), DiffOperator::from_euler(e));
  for (const auto& b : basis_box_operators(sys)) out.emplace_back(b.to_string(), DiffOperator::from_box(b));
  return out;
}

}  // namespace gkz
