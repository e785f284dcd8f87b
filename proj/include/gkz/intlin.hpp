#pragma once

// Exact integer and rational linear algebra: normal forms, saturated kernels,
// coset enumeration and rational solving.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "gkz/numeric.hpp"

namespace gkz {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols = 0);
  static IntMatrix from_columns(const std::vector<IntVec>& cols, std::size_t rows = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVec row(std::size_t i) const;
  IntVec column(std::size_t j) const;
  IntMatrix transpose() const;
  IntMatrix select_columns(const IndexSet& cols) const;
  IntMatrix select_rows(const IndexSet& rows) const;

  IntVec operator*(const IntVec& v) const;
  RatVec operator*(const RatVec& v) const;
  IntMatrix operator*(const IntMatrix& other) const;

  bool operator==(const IntMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Basis of a sublattice of Z^ambient_dim; vectors are linearly independent.
struct LatticeBasis {
  std::size_t ambient_dim = 0;
  std::vector<IntVec> vectors;

  std::size_t rank() const { return vectors.size(); }
  /// Basis vectors as the columns of an ambient_dim x rank matrix.
  IntMatrix as_columns() const;
};

/// Representatives of Z^m modulo a full-rank sublattice.
struct CosetReps {
  std::size_t ambient_dim = 0;
  std::vector<IntVec> sublattice_basis;
  std::vector<IntVec> reps;
};

struct HermiteForm {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
};

struct SmithForm {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
  std::vector<Int> divisors;  // nonzero diagonal entries, d_1 | d_2 | ...
};

/// Row-style Hermite normal form: U * M = H with U unimodular, H in row
/// echelon form, positive pivots, and entries above each pivot reduced into
/// [0, pivot).
HermiteForm hermite_normal_form(const IntMatrix& M);

/// U * M * V = S with U, V unimodular and S diagonal with d_1 | d_2 | ...
SmithForm smith_normal_form(const IntMatrix& M);

/// Saturated integer kernel {l in Z^N : A l = 0}. Throws ConfigError when A
/// has rank below its row count.
LatticeBasis integer_kernel(const IntMatrix& A);

/// Same as integer_kernel without the full-row-rank requirement.
LatticeBasis kernel_lattice(const IntMatrix& A);

/// Enumerates Z^m / sub. Throws PreconditionError if sub is not of full rank m.
CosetReps coset_representatives(const LatticeBasis& sub);

/// Some exact solution of M x = b, or nullopt if the system is inconsistent.
/// Free variables are set to zero.
std::optional<RatVec> solve_rational(const IntMatrix& M, const RatVec& b);

// Rational helpers shared by the geometric modules.
using RatMatrix = std::vector<RatVec>;  // row-major

RatMatrix to_rat(const IntMatrix& M);
std::size_t rank(const IntMatrix& M);
std::size_t rank(const RatMatrix& M, std::size_t cols);
Int determinant(const IntMatrix& M);
/// Inverse of a square nonsingular matrix; nullopt when singular.
std::optional<RatMatrix> inverse(const IntMatrix& M);
std::optional<RatMatrix> inverse(const RatMatrix& M);
/// Basis of the rational null space of a (rows x cols) matrix.
std::vector<RatVec> rational_kernel(const RatMatrix& M, std::size_t cols);
std::optional<RatVec> solve_rational(const RatMatrix& M, std::size_t cols, const RatVec& b);
RatVec multiply(const RatMatrix& M, const RatVec& v);

/// Integer coordinates of v in the basis, or nullopt if v is not in the
/// lattice spanned by it.
std::optional<IntVec> lattice_coordinates(const LatticeBasis& basis, const IntVec& v);
bool in_lattice(const LatticeBasis& basis, const IntVec& v);

/// Calls f(subset) for every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  IndexSet idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    f(static_cast<const IndexSet&>(idx));
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

IndexSet complement(const IndexSet& s, int n);

}  // namespace gkz
