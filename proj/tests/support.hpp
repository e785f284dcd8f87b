#pragma once

#include <map>
#include <random>

#include "gkz/io.hpp"
#include "oracles.hpp"

namespace support {

using namespace gkz;

inline IntMatrix e1_matrix() { return IntMatrix{{1, 1, 1, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}}; }
inline IntMatrix e2_matrix() { return IntMatrix{{1, 1, 1, 1}, {0, 1, 2, 3}}; }
inline IntMatrix e3_matrix() { return IntMatrix{{1, 1, 1, 1}, {0, 1, 2, 0}, {0, 0, 0, 1}}; }

inline RatVec rats(std::initializer_list<const char*> xs) {
  RatVec out;
  for (const char* x : xs) out.push_back(parse_rational(x));
  return out;
}

inline IntVec ints(std::initializer_list<long> xs) {
  IntVec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline GkzSystem e1(std::initializer_list<const char*> a = {"1/5", "1/3", "1/7"}) { return build_system(e1_matrix(), rats(a)); }
inline GkzSystem e2(std::initializer_list<const char*> a = {"1/2", "1/3"}) { return build_system(e2_matrix(), rats(a)); }

inline oracle::Cols columns(const IntMatrix& A) {
  oracle::Cols out;
  for (std::size_t j = 0; j < A.cols(); ++j) out.push_back(A.column(j));
  return out;
}

inline Triangulation heights_T(const GkzSystem& sys, std::initializer_list<long> h) {
  RatVec hv;
  for (long x : h) hv.emplace_back(x);
  return regular_triangulation(sys.cfg, hv);
}

/// Random valid configuration with a nonresonant random alpha.
inline GkzSystem random_system(std::mt19937_64& rng, int max_n = 6) {
  while (true) {
    auto rc = oracle::random_config(rng, max_n);
    std::vector<IntVec> rows;
    for (const auto& row : rc.rows) {
      IntVec v;
      for (long x : row) v.emplace_back(x);
      rows.push_back(v);
    }
    IntMatrix A = IntMatrix::from_rows(rows, rows.front().size());
    RatVec alpha;
    for (std::size_t i = 0; i < A.rows(); ++i) alpha.push_back(oracle::random_rational(rng));
    try {
      GkzSystem sys = build_system(A, alpha);
      if (is_nonresonant(sys).nonresonant) return sys;
    } catch (const ConfigError&) {
    }
  }
}

/// Random heights that the oracle accepts as generic.
inline RatVec random_generic_heights(std::mt19937_64& rng, const GkzSystem& sys) {
  std::uniform_int_distribution<long> d(0, 40);
  while (true) {
    RatVec h;
    for (int i = 0; i < sys.N(); ++i) h.emplace_back(d(rng));
    if (oracle::lower_hull_simplices(columns(sys.cfg.matrix()), h)) return h;
  }
}

struct Annihilation {
  bool zero = true;
  std::size_t checked = 0;  // smallest number of known offsets over the operators
};

/// Residuals of every system operator on s. Since op s = 0 on known
/// offsets, (op + 1) s reproduces s there, which counts the offsets that
/// were actually compared.
inline Annihilation annihilation(const GkzSystem& sys, const LogSeries& s) {
  Annihilation out;
  out.checked = static_cast<std::size_t>(-1);
  const auto one = DiffOperator::identity(static_cast<std::size_t>(sys.N()));
  for (const auto& [name, op] : system_operators(sys)) {
    if (!apply(op, s).terms.empty()) out.zero = false;
    out.checked = std::min(out.checked, apply(op + one, s).terms.size());
  }
  return out;
}

// Rank over Q by plain Gaussian elimination.
inline std::size_t rational_rank(std::vector<RatVec> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      Rat f = rows[i][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Coefficient matrix over all (exponent, log monomial) pairs.
inline std::size_t basis_rank(const std::vector<LogSeries>& sols) {
  std::map<std::pair<RatVec, LogPoly::Exponent>, std::size_t> index;
  for (const auto& s : sols)
    for (const auto& [l, p] : s.terms)
      for (const auto& [e, c] : p.terms()) index.emplace(std::make_pair(add(s.gamma, to_rat(l)), e), 0);
  std::size_t k = 0;
  for (auto& [key, pos] : index) pos = k++;
  std::vector<RatVec> rows;
  for (const auto& s : sols) {
    RatVec row(index.size());
    for (const auto& [l, p] : s.terms)
      for (const auto& [e, c] : p.terms()) row[index.at({add(s.gamma, to_rat(l)), e})] = c;
    rows.push_back(row);
  }
  return rational_rank(rows);
}

}  // namespace support
