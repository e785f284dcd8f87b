#include "doctest.h"

#include "support.hpp"

using namespace support;

namespace {

void check_basis(const GkzSystem& sys, const LogBasis& basis) {
  CHECK(Int(basis.size()) == normalized_volume(sys.cfg));
  auto sols = basis.solutions();
  for (const auto& s : sols) {
    auto a = annihilation(sys, s);
    CHECK(a.zero);
    CHECK(a.checked > 0);
    CHECK(s.log_degree() <= s.weight);
  }
  CHECK(basis_rank(sols) == sols.size());
}

std::optional<Rat> gamma_quotient(const RatVec& g, const IntVec& l) {
  // prod Gamma(g_i + 1) / Gamma(g_i + l_i + 1)
  Rat out = 1;
  for (std::size_t i = 0; i < g.size(); ++i) {
    long k = l[i].convert_to<long>();
    if (k >= 0) {
      Rat p = oracle::pochhammer(g[i] + 1, static_cast<int>(k));
      if (p == 0) return std::nullopt;
      out /= p;
    } else {
      out *= oracle::pochhammer(g[i] + k + 1, static_cast<int>(-k));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("resonating simplices") {
  auto half = e1({"1", "1/2", "1/2"});
  Triangulation T = heights_T(half, {0, 1, 1, 0});
  CHECK(resonating_simplices(half, T, rats({"1/2", "0", "0", "1/2"})).size() == 2);
  CHECK(resonating_simplices(e1(), T, rats({"-2/15", "4/21", "0", "1/7"})).size() == 1);
  CHECK(resonating_simplices(e1(), T, rats({"1/2", "1/3", "1/5", "1/7"})).empty());
}

TEST_CASE("generic direction avoids every simplex facet") {
  for (const auto& sys : {e1(), e2()}) {
    Triangulation T = default_triangulation(sys.cfg);
    RatVec ap = choose_generic_direction(sys, T);
    for (const auto& J : T.simplices) {
      oracle::Cols cols;
      for (int j : J) cols.push_back(sys.cfg.column(j));
      for (const auto& n : oracle::facets_by_subsets(cols)) CHECK(dot(n, ap) != 0);
    }
  }
  // The unit vectors all lie on a simplex facet of the square.
  auto sys = e1();
  RatVec ap = choose_generic_direction(sys, default_triangulation(sys.cfg));
  CHECK(ap == rats({"1", "2", "4"}));
}

TEST_CASE("perturbed solutions") {
  auto half = e1({"1", "1/2", "1/2"});
  Triangulation T = heights_T(half, {0, 1, 1, 0});
  RatVec g0 = rats({"1/2", "0", "0", "1/2"});
  RatVec ap = choose_generic_direction(half, T);
  auto psis = perturbed_solutions(half, T, g0, ap, 1, 4);
  REQUIRE(psis.size() == 2);
  std::size_t shared = 0;
  for (const auto& [l, jet] : psis[0].terms) {
    auto it = psis[1].terms.find(l);
    if (it == psis[1].terms.end()) continue;
    CHECK(jet[0] == it->second[0]);
    ++shared;
  }
  CHECK(shared > 0);
  CHECK_THROWS_AS(perturbed_solutions(half, T, g0, ap, 0, 4), PreconditionError);
  CHECK_THROWS_AS(perturbed_solutions(e1(), T, rats({"-2/15", "4/21", "0", "1/7"}), ap, 1, 4), PreconditionError);
}

TEST_CASE("logarithmic basis of the square") {
  auto half = e1({"1", "1/2", "1/2"});
  auto basis = full_basis(half, heights_T(half, {0, 1, 1, 0}), 6);
  check_basis(half, basis);
  auto sols = basis.solutions();
  REQUIRE(sols.size() == 2);
  const LogSeries* plain = nullptr;
  const LogSeries* logs = nullptr;
  for (const auto& s : sols) (s.weight == 0 ? plain : logs) = &s;
  REQUIRE(plain);
  REQUIRE(logs);
  CHECK(plain->log_degree() == 0);
  CHECK(logs->weight == 1);
  CHECK(logs->log_degree() == 1);

  // The weight-0 member is the Gamma-series of its gamma.
  auto ref = plain->terms.find(IntVec(4, Int(0)));
  REQUIRE(ref != plain->terms.end());
  for (const auto& [l, p] : plain->terms) {
    auto q = gamma_quotient(plain->gamma, l);
    REQUIRE(q);
    CHECK(p.constant_term() == *q * ref->second.constant_term());
  }

  // Log part at the leading term is proportional to the relation.
  auto rel = oracle::small_relations(columns(e1_matrix()), 1);
  REQUIRE(rel.size() == 2);
  auto lead = logs->terms.find(IntVec(4, Int(0)));
  REQUIRE(lead != logs->terms.end());
  LogPoly lin = lead->second.part_of_degree(1);
  RatVec coeffs;
  for (std::size_t i = 0; i < 4; ++i) {
    LogPoly::Exponent e(4, 0);
    e[i] = 1;
    coeffs.push_back(lin.coefficient(e));
  }
  REQUIRE(coeffs[0] != 0);
  CHECK(scale(to_rat(rel[0]), coeffs[0] / Rat(rel[0][0])) == coeffs);
}

TEST_CASE("bases of nonresonant examples") {
  check_basis(e1(), full_basis(e1(), default_triangulation(e1().cfg), 8));
  auto s2 = e2();
  auto b2 = full_basis(s2, heights_T(s2, {0, 1, 4, 9}), 8);
  check_basis(s2, b2);
  CHECK(b2.alpha_prime.empty());
  // 2 x1 - x2 = 1 on an interior wall: nonresonant but T-resonant.
  auto wall = e2({"3/4", "1/2"});
  CHECK(is_nonresonant(wall).nonresonant);
  Triangulation T = heights_T(wall, {0, 1, 4, 9});
  CHECK_FALSE(is_T_nonresonant(wall, T).t_nonresonant);
  auto bw = full_basis(wall, T, 8);
  check_basis(wall, bw);
  bool any_log = false;
  for (const auto& s : bw.solutions()) any_log = any_log || s.log_degree() > 0;
  CHECK(any_log);
}

TEST_CASE("random bases have the expected size and are annihilated") {
  std::mt19937_64 rng(oracle::test_seed() + 40);
  for (int c = 0; c < 10; ++c) {
    GkzSystem sys = random_system(rng, 6);
    check_basis(sys, full_basis(sys, regular_triangulation(sys.cfg, random_generic_heights(rng, sys)), 6));
  }
}
