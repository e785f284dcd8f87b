#include "gkz/intlin.hpp"

#include <algorithm>
#include <utility>

namespace gkz {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ParseError("IntMatrix: ragged initializer");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
  std::size_t c = rows.empty() ? cols : rows.front().size();
  IntMatrix M(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw ParseError("IntMatrix: ragged rows");
    for (std::size_t j = 0; j < c; ++j) M(i, j) = rows[i][j];
  }
  return M;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVec>& cols, std::size_t rows) {
  std::size_t r = cols.empty() ? rows : cols.front().size();
  IntMatrix M(r, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != r) throw ParseError("IntMatrix: ragged columns");
    for (std::size_t i = 0; i < r; ++i) M(i, j) = cols[j][i];
  }
  return M;
}

IntVec IntMatrix::row(std::size_t i) const {
  return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVec IntMatrix::column(std::size_t j) const {
  IntVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix T(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
  return T;
}

IntMatrix IntMatrix::select_columns(const IndexSet& cols) const {
  IntMatrix M(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) M(i, j) = (*this)(i, static_cast<std::size_t>(cols[j]));
  return M;
}

IntMatrix IntMatrix::select_rows(const IndexSet& rows) const {
  IntMatrix M(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) M(i, j) = (*this)(static_cast<std::size_t>(rows[i]), j);
  return M;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
  IntVec out(rows_, Int(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

RatVec IntMatrix::operator*(const RatVec& v) const {
  RatVec out(rows_, Rat(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += Rat((*this)(i, j)) * v[j];
  return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  IntMatrix P(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) P(i, j) += a * other(k, j);
    }
  return P;
}

IntMatrix LatticeBasis::as_columns() const { return IntMatrix::from_columns(vectors, ambient_dim); }

IndexSet complement(const IndexSet& s, int n) {
  IndexSet out;
  for (int i = 0; i < n; ++i)
    if (std::find(s.begin(), s.end(), i) == s.end()) out.push_back(i);
  return out;
}

namespace {

// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
struct Bezout {
  Int g, x, y;
};

Bezout extended_gcd(const Int& a, const Int& b) {
  // Prefer the trivial combination so elimination steps do not swap rows.
  if (a != 0 && b % a == 0) return {abs(a), Int(a > 0 ? 1 : -1), Int(0)};
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

void swap_rows(IntMatrix& M, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M(a, j), M(b, j));
}

void swap_cols(IntMatrix& M, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < M.rows(); ++i) std::swap(M(i, a), M(i, b));
}

// row_a <- x row_a + y row_b ; row_b <- u row_a + v row_b (simultaneously)
void combine_rows(IntMatrix& M, std::size_t a, std::size_t b, const Int& x, const Int& y, const Int& u,
                  const Int& v) {
  for (std::size_t j = 0; j < M.cols(); ++j) {
    Int ra = M(a, j), rb = M(b, j);
    M(a, j) = x * ra + y * rb;
    M(b, j) = u * ra + v * rb;
  }
}

void combine_cols(IntMatrix& M, std::size_t a, std::size_t b, const Int& x, const Int& y, const Int& u,
                  const Int& v) {
  for (std::size_t i = 0; i < M.rows(); ++i) {
    Int ca = M(i, a), cb = M(i, b);
    M(i, a) = x * ca + y * cb;
    M(i, b) = u * ca + v * cb;
  }
}

void add_row_multiple(IntMatrix& M, std::size_t target, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < M.cols(); ++j) M(target, j) += k * M(src, j);
}

void negate_row(IntMatrix& M, std::size_t i) {
  for (std::size_t j = 0; j < M.cols(); ++j) M(i, j) = -M(i, j);
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& M) {
  IntMatrix H = M;
  IntMatrix U = IntMatrix::identity(M.rows());
  std::size_t pivot_row = 0;
  for (std::size_t j = 0; j < H.cols() && pivot_row < H.rows(); ++j) {
    for (std::size_t k = pivot_row + 1; k < H.rows(); ++k) {
      if (H(k, j) == 0) continue;
      Int a = H(pivot_row, j), b = H(k, j);
      Bezout e = extended_gcd(a, b);
      Int u = -b / e.g, v = a / e.g;
      combine_rows(H, pivot_row, k, e.x, e.y, u, v);
      combine_rows(U, pivot_row, k, e.x, e.y, u, v);
    }
    if (H(pivot_row, j) == 0) continue;
    if (H(pivot_row, j) < 0) {
      negate_row(H, pivot_row);
      negate_row(U, pivot_row);
    }
    const Int p = H(pivot_row, j);
    for (std::size_t i = 0; i < pivot_row; ++i) {
      Int q = floor_div(H(i, j), p);
      add_row_multiple(H, i, pivot_row, -q);
      add_row_multiple(U, i, pivot_row, -q);
    }
    ++pivot_row;
  }
  return {std::move(H), std::move(U), pivot_row};
}

SmithForm smith_normal_form(const IntMatrix& M) {
  IntMatrix S = M;
  IntMatrix U = IntMatrix::identity(M.rows());
  IntMatrix V = IntMatrix::identity(M.cols());
  const std::size_t m = S.rows(), n = S.cols();
  std::size_t t = 0;
  while (t < m && t < n) {
    // Pivot: nonzero entry of least magnitude in the trailing block.
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (S(i, j) != 0 && (!found || abs(S(i, j)) < abs(S(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    swap_rows(S, t, pi);
    swap_rows(U, t, pi);
    swap_cols(S, t, pj);
    swap_cols(V, t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        Int a = S(t, t), b = S(i, t);
        Bezout e = extended_gcd(a, b);
        combine_rows(S, t, i, e.x, e.y, -b / e.g, a / e.g);
        combine_rows(U, t, i, e.x, e.y, -b / e.g, a / e.g);
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        Int a = S(t, t), b = S(t, j);
        Bezout e = extended_gcd(a, b);
        combine_cols(S, t, j, e.x, e.y, -b / e.g, a / e.g);
        combine_cols(V, t, j, e.x, e.y, -b / e.g, a / e.g);
        clean = false;  // column ops may refill the pivot column
      }
      if (!clean) continue;
      // Divisibility: the pivot must divide every remaining entry.
      for (std::size_t i = t + 1; i < m && clean; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            add_row_multiple(S, t, i, Int(1));
            add_row_multiple(U, t, i, Int(1));
            clean = false;
            break;
          }
    }
    if (S(t, t) < 0) {
      negate_row(S, t);
      negate_row(U, t);
    }
    ++t;
  }
  std::vector<Int> d;
  for (std::size_t i = 0; i < std::min(m, n); ++i)
    if (S(i, i) != 0) d.push_back(S(i, i));
  return {std::move(S), std::move(U), std::move(V), std::move(d)};
}

LatticeBasis kernel_lattice(const IntMatrix& A) {
  // U * A^T = H; rows of U beyond rank(H) span the saturated kernel of A.
  HermiteForm hf = hermite_normal_form(A.transpose());
  std::vector<IntVec> raw;
  for (std::size_t i = hf.rank; i < hf.U.rows(); ++i) raw.push_back(hf.U.row(i));
  LatticeBasis basis{A.cols(), {}};
  if (raw.empty()) return basis;
  // Canonical echelon basis of the same lattice.
  HermiteForm reduced = hermite_normal_form(IntMatrix::from_rows(raw));
  for (std::size_t i = 0; i < reduced.rank; ++i) basis.vectors.push_back(reduced.H.row(i));
  return basis;
}

LatticeBasis integer_kernel(const IntMatrix& A) {
  if (rank(A) < A.rows())
    throw ConfigError("configuration-invalid: matrix is rank-deficient (rank " + std::to_string(rank(A)) +
                      " < " + std::to_string(A.rows()) + " rows)");
  return kernel_lattice(A);
}

CosetReps coset_representatives(const LatticeBasis& sub) {
  const std::size_t m = sub.ambient_dim;
  CosetReps out{m, sub.vectors, {}};
  if (sub.vectors.size() != m)
    throw PreconditionError("coset_representatives: sublattice has rank " + std::to_string(sub.vectors.size()) +
                            " < " + std::to_string(m) + " (infinite index)");
  if (m == 0) {
    out.reps.push_back({});
    return out;
  }
  IntMatrix B = sub.as_columns();
  SmithForm sf = smith_normal_form(B);
  if (sf.divisors.size() != m) throw PreconditionError("coset_representatives: sublattice is degenerate (infinite index)");
  // B Z^m = U^{-1} S Z^m; representatives are U^{-1} x with 0 <= x_i < d_i.
  auto Uinv = inverse(sf.U);
  if (!Uinv) throw InternalError("coset_representatives: singular unimodular factor");
  IntVec x(m, Int(0));
  while (true) {
    out.reps.push_back(to_int(multiply(*Uinv, to_rat(x))));
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (++x[i] < sf.divisors[i]) break;
      x[i] = 0;
      if (i == 0) return out;
    }
  }
}

RatMatrix to_rat(const IntMatrix& M) {
  RatMatrix R(M.rows(), RatVec(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) R[i][j] = M(i, j);
  return R;
}

RatVec multiply(const RatMatrix& M, const RatVec& v) {
  RatVec out(M.size(), Rat(0));
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += M[i][j] * v[j];
  return out;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& M, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < M.size(); ++c) {
    std::size_t p = r;
    while (p < M.size() && M[p][c] == 0) ++p;
    if (p == M.size()) continue;
    std::swap(M[r], M[p]);
    Rat inv = 1 / M[r][c];
    for (auto& x : M[r]) x *= inv;
    for (std::size_t i = 0; i < M.size(); ++i) {
      if (i == r || M[i][c] == 0) continue;
      Rat f = M[i][c];
      for (std::size_t j = 0; j < M[i].size(); ++j) M[i][j] -= f * M[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RatMatrix& M, std::size_t cols) {
  RatMatrix W = M;
  return rref(W, cols).size();
}

std::size_t rank(const IntMatrix& M) { return rank(to_rat(M), M.cols()); }

Int determinant(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw PreconditionError("determinant: matrix is not square");
  RatMatrix W = to_rat(M);
  const std::size_t n = W.size();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && W[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(W[p], W[c]);
      det = -det;
    }
    det *= W[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (W[i][c] == 0) continue;
      Rat f = W[i][c] / W[c][c];
      for (std::size_t j = c; j < n; ++j) W[i][j] -= f * W[c][j];
    }
  }
  return numerator(det);
}

std::optional<RatMatrix> inverse(const RatMatrix& M) {
  const std::size_t n = M.size();
  RatMatrix W(n, RatVec(2 * n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) W[i][j] = M[i][j];
    W[i][n + i] = 1;
  }
  auto piv = rref(W, n);
  if (piv.size() != n) return std::nullopt;
  RatMatrix inv(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = W[i][n + j];
  return inv;
}

std::optional<RatMatrix> inverse(const IntMatrix& M) {
  if (M.rows() != M.cols()) return std::nullopt;
  return inverse(to_rat(M));
}

std::vector<RatVec> rational_kernel(const RatMatrix& M, std::size_t cols) {
  RatMatrix W = M;
  auto piv = rref(W, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(cols, Rat(0));
    v[f] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -W[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> solve_rational(const RatMatrix& M, std::size_t cols, const RatVec& b) {
  RatMatrix W = M;
  for (std::size_t i = 0; i < W.size(); ++i) {
    W[i].resize(cols);
    W[i].push_back(b[i]);
  }
  auto piv = rref(W, cols);
  for (std::size_t i = piv.size(); i < W.size(); ++i)
    if (W[i][cols] != 0) return std::nullopt;
  RatVec x(cols, Rat(0));
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = W[k][cols];
  return x;
}

std::optional<RatVec> solve_rational(const IntMatrix& M, const RatVec& b) {
  if (b.size() != M.rows()) throw PreconditionError("solve_rational: dimension mismatch");
  return solve_rational(to_rat(M), M.cols(), b);
}

std::optional<IntVec> lattice_coordinates(const LatticeBasis& basis, const IntVec& v) {
  if (basis.vectors.empty()) {
    if (is_zero(v)) return IntVec{};
    return std::nullopt;
  }
  auto t = solve_rational(basis.as_columns(), to_rat(v));
  if (!t || !all_integral(*t)) return std::nullopt;
  return to_int(*t);
}

bool in_lattice(const LatticeBasis& basis, const IntVec& v) { return lattice_coordinates(basis, v).has_value(); }

}  // namespace gkz
