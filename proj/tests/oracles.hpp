#pragma once

// Brute-force reference computations for the tests. Nothing here calls into
// the library beyond its value types, so agreement is a real cross-check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "gkz/numeric.hpp"

namespace oracle {

using gkz::Int;
using gkz::IntVec;
using gkz::Rat;
using gkz::RatVec;

using Cols = std::vector<IntVec>;  // point configuration as a list of columns

std::uint64_t test_seed();  // defined in test_main.cpp / acceptance.cpp

// Laplace expansion; fine for the r <= 4 matrices used here.
inline Rat det(const std::vector<RatVec>& M) {
  const std::size_t n = M.size();
  if (n == 0) return 1;
  if (n == 1) return M[0][0];
  Rat out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (M[0][j] == 0) continue;
    std::vector<RatVec> minor;
    for (std::size_t i = 1; i < n; ++i) {
      RatVec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(M[i][k]);
      minor.push_back(row);
    }
    Rat term = M[0][j] * det(minor);
    out += (j % 2 == 0) ? term : Rat(-term);
  }
  return out;
}

// Matrix whose columns are the given vectors.
inline std::vector<RatVec> from_columns(const Cols& cols) {
  const std::size_t r = cols.front().size();
  std::vector<RatVec> M(r, RatVec(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < r; ++i) M[i][j] = Rat(cols[j][i]);
  return M;
}

// Cramer's rule for a square nonsingular system.
inline RatVec cramer(const std::vector<RatVec>& M, const RatVec& b) {
  const Rat d = det(M);
  RatVec x(M.size());
  for (std::size_t j = 0; j < M.size(); ++j) {
    auto Mj = M;
    for (std::size_t i = 0; i < M.size(); ++i) Mj[i][j] = b[i];
    x[j] = det(Mj) / d;
  }
  return x;
}

inline Int abs_det_of(const Cols& cols) {
  Rat d = det(from_columns(cols));
  return numerator(d < 0 ? Rat(-d) : d);
}

inline void for_each_box_point(std::size_t n, long bound, const std::function<void(const IntVec&)>& f) {
  IntVec x(n, Int(-bound));
  while (true) {
    f(x);
    std::size_t i = 0;
    while (i < n && x[i] == bound) x[i++] = -bound;
    if (i == n) return;
    ++x[i];
  }
}

inline bool in_kernel(const Cols& A, const IntVec& l) {
  for (std::size_t row = 0; row < A.front().size(); ++row) {
    Int s = 0;
    for (std::size_t j = 0; j < A.size(); ++j) s += A[j][row] * l[j];
    if (s != 0) return false;
  }
  return true;
}

// All nonzero relations with entries in [-bound, bound].
inline std::vector<IntVec> small_relations(const Cols& A, long bound) {
  std::vector<IntVec> out;
  for_each_box_point(A.size(), bound, [&](const IntVec& l) {
    if (!gkz::is_zero(l) && in_kernel(A, l)) out.push_back(l);
  });
  return out;
}

// Normals of hyperplanes through r-1 columns that keep every column on the
// nonnegative side; primitive and deduplicated.
inline std::set<IntVec> facets_by_subsets(const Cols& A) {
  const std::size_t r = A.front().size(), N = A.size();
  std::set<IntVec> out;
  std::vector<int> pick(r - 1);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == r - 1) {
      // Generalized cross product: n_k = (-1)^k det(rows != k).
      IntVec n(r);
      for (std::size_t k = 0; k < r; ++k) {
        std::vector<RatVec> M;
        for (std::size_t i = 0; i < r; ++i) {
          if (i == k) continue;
          RatVec row;
          for (int j : pick) row.push_back(Rat(A[static_cast<std::size_t>(j)][i]));
          M.push_back(row);
        }
        Rat d = det(M);
        n[k] = numerator(k % 2 == 0 ? d : Rat(-d));
      }
      if (gkz::is_zero(n)) return;
      n = gkz::primitive(n);
      bool pos = false, neg = false;
      for (const auto& a : A) {
        Int v = gkz::dot(n, a);
        pos = pos || v > 0;
        neg = neg || v < 0;
      }
      if (pos && neg) return;
      if (neg) n = gkz::scale(n, Int(-1));
      out.insert(n);
      return;
    }
    for (std::size_t j = start; j < N; ++j) {
      pick[depth] = static_cast<int>(j);
      rec(depth + 1, j + 1);
    }
  };
  rec(0, 0);
  return out;
}

// Lower-hull cells of the lift (a_i, h_i): r-subsets J whose affine
// interpolant lies strictly below every other lifted point. Correct for
// generic heights; returns nullopt if some other point is on the interpolant.
inline std::optional<std::vector<std::vector<int>>> lower_hull_simplices(const Cols& A, const RatVec& h) {
  const std::size_t r = A.front().size(), N = A.size();
  std::vector<std::vector<int>> out;
  bool generic = true;
  std::vector<int> J(r);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == r) {
      Cols cols;
      for (int j : J) cols.push_back(A[static_cast<std::size_t>(j)]);
      auto M = from_columns(cols);
      if (det(M) == 0) return;
      // phi with phi(a_j) = h_j: solve M^T phi = h_J.
      std::vector<RatVec> Mt(r, RatVec(r));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) Mt[i][k] = M[k][i];
      RatVec hJ;
      for (int j : J) hJ.push_back(h[static_cast<std::size_t>(j)]);
      RatVec phi = cramer(Mt, hJ);
      bool lower = true, touching = false;
      for (std::size_t i = 0; i < N; ++i) {
        if (std::find(J.begin(), J.end(), static_cast<int>(i)) != J.end()) continue;
        Rat v = h[i] - gkz::dot(A[i], phi);
        if (v < 0) lower = false;
        if (v == 0) touching = true;
      }
      if (lower && touching) generic = false;
      if (lower && !touching) out.push_back(J);
      return;
    }
    for (std::size_t j = start; j < N; ++j) {
      J[depth] = static_cast<int>(j);
      rec(depth + 1, j + 1);
    }
  };
  rec(0, 0);
  if (!generic) return std::nullopt;
  return out;
}

// |Z^r / (columns of B) Z^r| by counting lattice points in the half-open
// fundamental parallelepiped.
inline std::size_t parallelepiped_points(const Cols& B) {
  const std::size_t r = B.size();
  auto M = from_columns(B);
  IntVec lo(r, Int(0)), hi(r, Int(0));
  for (const auto& b : B)
    for (std::size_t i = 0; i < r; ++i) {
      if (b[i] < 0) lo[i] += b[i];
      if (b[i] > 0) hi[i] += b[i];
    }
  std::size_t count = 0;
  IntVec x = lo;
  while (true) {
    RatVec xr = gkz::to_rat(x);
    RatVec t = cramer(M, xr);
    bool inside = std::all_of(t.begin(), t.end(), [](const Rat& q) { return q >= 0 && q < 1; });
    if (inside) ++count;
    std::size_t i = 0;
    while (i < r && x[i] == hi[i]) x[i] = lo[i], ++i;
    if (i == r) return count;
    ++x[i];
  }
}

inline Rat pochhammer(const Rat& a, int k) {
  Rat out = 1;
  for (int j = 0; j < k; ++j) out *= a + j;
  return out;
}

// sum_{k <= n} (a)_k (b)_k / ((c)_k k!) z^k in double precision.
inline double hyp2f1_partial(double a, double b, double c, double z, int n) {
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < n; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
  }
  return sum;
}

struct RandomConfig {
  std::vector<std::vector<long>> rows;  // row-major, first row all ones
};

// Random point configuration with r <= 3 and N <= max_n on the hyperplane
// x_1 = 1, distinct columns, entries in a small box. Validity (spanning Z^r,
// full rank) is left to the caller.
inline RandomConfig random_config(std::mt19937_64& rng, int max_n) {
  std::uniform_int_distribution<int> rdist(2, 3);
  const int r = rdist(rng);
  std::uniform_int_distribution<int> ndist(r + 1, max_n);
  const int N = ndist(rng);
  std::uniform_int_distribution<long> edist(0, r == 2 ? 6 : 2);  // room for 7 distinct columns
  std::set<std::vector<long>> cols;
  while (static_cast<int>(cols.size()) < N) {
    std::vector<long> c{1};
    for (int i = 1; i < r; ++i) c.push_back(edist(rng));
    cols.insert(c);
  }
  RandomConfig out;
  out.rows.assign(static_cast<std::size_t>(r), {});
  std::vector<std::vector<long>> shuffled(cols.begin(), cols.end());
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  for (const auto& c : shuffled)
    for (int i = 0; i < r; ++i) out.rows[static_cast<std::size_t>(i)].push_back(c[static_cast<std::size_t>(i)]);
  return out;
}

inline Rat random_rational(std::mt19937_64& rng) {
  static const long dens[] = {7, 11, 13, 17, 19, 23};
  std::uniform_int_distribution<int> di(0, 5);
  std::uniform_int_distribution<long> ni(-30, 30);
  return Rat(ni(rng), dens[di(rng)]);
}

}  // namespace oracle
