#include "doctest.h"

#include "support.hpp"

using namespace support;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix M(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) M(i, j) = d(rng);
  return M;
}

bool unimodular(const IntMatrix& U) { return abs(determinant(U)) == 1; }

// Mutual membership of two bases.
bool same_lattice(const LatticeBasis& a, const LatticeBasis& b) {
  if (a.rank() != b.rank()) return false;
  for (const auto& v : a.vectors)
    if (!in_lattice(b, v)) return false;
  for (const auto& v : b.vectors)
    if (!in_lattice(a, v)) return false;
  return true;
}

}  // namespace

TEST_CASE("hermite form of a small matrix") {
  auto hf = hermite_normal_form(IntMatrix{{2, 4}, {1, 3}});
  CHECK(hf.H(0, 0) == 1);
  CHECK(hf.H(1, 1) == 2);
  CHECK(hf.H(1, 0) == 0);
  CHECK(abs(determinant(hf.H)) == 2);
  CHECK(hf.U * IntMatrix{{2, 4}, {1, 3}} == hf.H);

  auto id = hermite_normal_form(IntMatrix::identity(3));
  CHECK(id.H == IntMatrix::identity(3));
  CHECK(id.U == IntMatrix::identity(3));
}

TEST_CASE("hermite and smith factors recompose") {
  std::mt19937_64 rng(oracle::test_seed());
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix M = random_matrix(rng, 4, 6, 9);
    auto hf = hermite_normal_form(M);
    CHECK(unimodular(hf.U));
    CHECK(hf.U * M == hf.H);
    // U^{-1} H = M over the rationals.
    auto Uinv = inverse(hf.U);
    REQUIRE(Uinv);
    for (std::size_t j = 0; j < M.cols(); ++j) {
      RatVec col = multiply(*Uinv, to_rat(hf.H.column(j)));
      CHECK(col == to_rat(M.column(j)));
    }
    auto sf = smith_normal_form(M);
    CHECK(unimodular(sf.U));
    CHECK(unimodular(sf.V));
    CHECK(sf.U * M * sf.V == sf.S);
    for (std::size_t k = 1; k < sf.divisors.size(); ++k) CHECK(sf.divisors[k] % sf.divisors[k - 1] == 0);
  }
}

TEST_CASE("smith divisors") {
  CHECK(smith_normal_form(IntMatrix::identity(3)).divisors == ints({1, 1, 1}));
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 4}}).divisors == ints({2, 4}));
  CHECK(smith_normal_form(e1_matrix()).divisors == ints({1, 1, 1}));
}

TEST_CASE("integer kernels against brute-force relations") {
  auto k1 = integer_kernel(e1_matrix());
  REQUIRE(k1.rank() == 1);
  CHECK((k1.vectors[0] == ints({1, -1, -1, 1}) || k1.vectors[0] == ints({-1, 1, 1, -1})));
  for (const auto& l : oracle::small_relations(columns(e1_matrix()), 3)) CHECK(in_lattice(k1, l));

  auto k2 = integer_kernel(e2_matrix());
  LatticeBasis ref{4, {ints({1, -2, 1, 0}), ints({0, 1, -2, 1})}};
  CHECK(same_lattice(k2, ref));
  for (const auto& l : oracle::small_relations(columns(e2_matrix()), 3)) CHECK(in_lattice(k2, l));

  CHECK(integer_kernel(IntMatrix{{1, 2}, {3, 5}}).rank() == 0);
}

TEST_CASE("integer kernels are saturated on random matrices") {
  std::mt19937_64 rng(oracle::test_seed() + 1);
  for (int trial = 0; trial < 12; ++trial) {
    IntMatrix A = random_matrix(rng, 2, 4, 3);
    if (rank(A) < 2) continue;
    auto K = integer_kernel(A);
    CHECK(K.rank() == 2);
    for (const auto& v : K.vectors) CHECK(is_zero(A * v));
    // Entries up to 10 are affordable for N = 4.
    for (const auto& l : oracle::small_relations(columns(A), 10)) CHECK(in_lattice(K, l));
  }
}

TEST_CASE("coset representatives") {
  CHECK(coset_representatives(LatticeBasis{2, {ints({2, 0}), ints({0, 2})}}).reps.size() == 4);
  CHECK(coset_representatives(LatticeBasis{2, {ints({-2, 1}), ints({1, -2})}}).reps.size() == 3);
  auto one = coset_representatives(LatticeBasis{2, {ints({1, 1}), ints({0, 1})}});
  REQUIRE(one.reps.size() == 1);
  CHECK(is_zero(one.reps[0]));
  CHECK_THROWS_AS(coset_representatives(LatticeBasis{2, {ints({1, 1})}}), PreconditionError);

  std::mt19937_64 rng(oracle::test_seed() + 2);
  int done = 0;
  while (done < 50) {
    const std::size_t m = done % 2 == 0 ? 2 : 3;
    IntMatrix B = random_matrix(rng, m, m, 3);
    if (determinant(B) == 0) continue;
    ++done;
    LatticeBasis lat{m, {}};
    oracle::Cols cols;
    for (std::size_t j = 0; j < m; ++j) {
      lat.vectors.push_back(B.column(j));
      cols.push_back(B.column(j));
    }
    auto reps = coset_representatives(lat);
    CHECK(Int(reps.reps.size()) == abs(determinant(B)));
    CHECK(reps.reps.size() == oracle::parallelepiped_points(cols));
    // Representatives are pairwise distinct modulo the sublattice.
    for (std::size_t a = 0; a < reps.reps.size(); ++a)
      for (std::size_t b = a + 1; b < reps.reps.size(); ++b) CHECK_FALSE(in_lattice(lat, gkz::sub(reps.reps[a], reps.reps[b])));
  }
}

TEST_CASE("rational solving") {
  auto x = solve_rational(IntMatrix::identity(3), rats({"1/2", "-3", "7/5"}));
  REQUIRE(x);
  CHECK(*x == rats({"1/2", "-3", "7/5"}));
  CHECK_FALSE(solve_rational(IntMatrix{{1, 1}, {1, 1}}, rats({"1", "2"})));

  // E1 with gamma_3 = 0: drop the third column and solve the square system.
  IntMatrix A = e1_matrix().select_columns({0, 1, 3});
  auto g = solve_rational(A, rats({"1/5", "1/3", "1/7"}));
  REQUIRE(g);
  CHECK(*g == rats({"-2/15", "4/21", "1/7"}));
}
