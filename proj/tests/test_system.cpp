#include "doctest.h"

#include "support.hpp"

using namespace support;

namespace {

std::vector<Rat> facet_values(const GkzSystem& sys) {
  std::vector<Rat> out;
  for (const auto& f : is_nonresonant(sys).facets) out.push_back(f.value);
  return out;
}

// d^u v^g = prod_i g_i (g_i - 1) ... (g_i - u_i + 1) v^{g - u}
Rat falling(const RatVec& g, const IntVec& u) {
  Rat out = 1;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (long k = 0; k < u[i].convert_to<long>(); ++k) out *= g[i] - k;
  return out;
}

// Direct check that the monomial v^g solves H_A(beta).
bool monomial_solves(const GkzSystem& sys, const RatVec& g, const RatVec& beta) {
  if (sys.cfg.matrix() * g != beta) return false;
  for (const auto& l : sys.lattice.vectors) {
    BoxOperator box{l};
    if (falling(g, box.positive_part()) != 0 || falling(g, box.negative_part()) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("configuration validation") {
  CHECK_NOTHROW(e1());
  CHECK(e1().facets.size() == 4);
  CHECK_THROWS_AS(build_system(IntMatrix{{1, 2, 3}, {0, 0, 1}}, rats({"0", "0"})), ConfigError);
  CHECK_THROWS_AS(build_system(IntMatrix{{1, 1, 1}, {0, 2, 4}}, rats({"0", "0"})), ConfigError);
  CHECK_THROWS_AS(build_system(IntMatrix{{1, 1}, {0, 1}}, rats({"0", "0"})), ConfigError);
  CHECK_THROWS_AS(build_system(e1_matrix(), rats({"0", "0"})), PreconditionError);
}

TEST_CASE("box operators") {
  auto s1 = e1();
  auto b = box_operator(s1, ints({1, -1, -1, 1}));
  CHECK(b.positive_part() == ints({1, 0, 0, 1}));
  CHECK(b.negative_part() == ints({0, 1, 1, 0}));
  CHECK(DiffOperator::from_box(b).to_string() == "d1d4 - d2d3");
  auto b2 = box_operator(e2(), ints({1, -2, 1, 0}));
  CHECK(b2.positive_part() == ints({1, 0, 1, 0}));
  CHECK(b2.negative_part() == ints({0, 2, 0, 0}));
  CHECK(box_operator(s1, ints({0, 0, 0, 0})).is_zero());
  CHECK_THROWS_AS(box_operator(s1, ints({1, 0, 0, 0})), PreconditionError);
}

TEST_CASE("euler operators") {
  auto ops = euler_operators(e1());
  REQUIRE(ops.size() == 3);
  CHECK(ops[1].coefficients == ints({0, 1, 0, 1}));
  CHECK(ops[1].alpha == Rat(1, 3));
}

TEST_CASE("resonance") {
  CHECK(is_nonresonant(e2({"1/2", "1/3"})).nonresonant);
  auto v = facet_values(e2({"1/2", "1/3"}));
  CHECK(std::set<Rat>(v.begin(), v.end()) == std::set<Rat>{Rat(1, 3), Rat(7, 6)});

  auto res = is_nonresonant(e2({"1/2", "1"}));
  CHECK_FALSE(res.nonresonant);
  bool flagged_x2 = false;
  for (const auto& f : res.facets) flagged_x2 = flagged_x2 || (f.integral && f.form.coeffs == ints({0, 1}));
  CHECK(flagged_x2);

  auto half = e1({"1", "1/2", "1/2"});
  CHECK(is_nonresonant(half).nonresonant);
  for (const auto& x : facet_values(half)) CHECK(x == Rat(1, 2));

  Triangulation T = heights_T(e1(), {0, 1, 1, 0});
  CHECK(is_T_nonresonant(e1(), T).t_nonresonant);
  auto tr = is_T_nonresonant(half, T);
  CHECK(tr.nonresonant);
  CHECK_FALSE(tr.t_nonresonant);
  for (const auto& s : tr.simplices) CHECK(s.resonant);
  auto bad = is_T_nonresonant(e1({"1/2", "0", "1/2"}), T);
  CHECK_FALSE(bad.nonresonant);
  CHECK_FALSE(bad.t_nonresonant);
}

TEST_CASE("T-nonresonance implies nonresonance") {
  std::mt19937_64 rng(oracle::test_seed() + 20);
  std::uniform_int_distribution<long> num(-4, 4), den(1, 2);
  int done = 0;
  while (done < 100) {
    auto rc = oracle::random_config(rng, 6);
    std::vector<IntVec> rows;
    for (const auto& row : rc.rows) {
      IntVec v;
      for (long x : row) v.emplace_back(x);
      rows.push_back(v);
    }
    RatVec alpha;
    for (std::size_t i = 0; i < rows.size(); ++i) alpha.emplace_back(num(rng), den(rng));
    std::optional<GkzSystem> built;
    try {
      built = build_system(IntMatrix::from_rows(rows, rows.front().size()), alpha);
    } catch (const ConfigError&) {
      continue;
    }
    const GkzSystem& sys = *built;
    ++done;
    auto rep = is_T_nonresonant(sys, regular_triangulation(sys.cfg, random_generic_heights(rng, sys)));
    if (rep.t_nonresonant) CHECK(is_nonresonant(sys).nonresonant);
    CHECK(rep.nonresonant == is_nonresonant(sys).nonresonant);
  }
}

TEST_CASE("holonomic rank") {
  CHECK(rank(e1()).value == 2);
  CHECK(rank(e1()).warnings.empty());
  CHECK(rank(e2()).value == 3);
  auto e3 = build_system(e3_matrix(), rats({"1/2", "1/3", "1/5"}));
  auto r3 = rank(e3);
  CHECK(r3.value == normalized_volume(e3.cfg));
  bool pyramid_warning = false;
  for (const auto& w : r3.warnings) pyramid_warning = pyramid_warning || w.find("pyramid") != std::string::npos;
  CHECK(pyramid_warning);
}

TEST_CASE("face restriction of the resonant square") {
  auto sys = e1({"1/2", "0", "1/2"});
  auto fr = face_restrict(sys, {0}, sys.alpha);
  CHECK(fr.face_columns == IndexSet{0, 2});
  CHECK(fr.s == 2);
  CHECK(abs(determinant(fr.transform)) == 1);
  const IntMatrix& At = fr.restricted.cfg.matrix();
  std::set<IntVec> cols{At.column(0), At.column(1)};
  CHECK(cols == std::set<IntVec>{ints({1, 0}), ints({1, 1})});
  CHECK(fr.beta_tilde == rats({"1/2", "1/2"}));

  auto lifted = lifted_restricted_solutions(sys, fr, 6);
  REQUIRE(lifted.size() == 1);
  CHECK(lifted[0].gamma == rats({"0", "0", "1/2", "0"}));
  CHECK(lifted[0].terms.size() == 1);
  CHECK(monomial_solves(sys, lifted[0].gamma, sys.alpha));

  CHECK_THROWS_AS(face_restrict(sys, {0}, rats({"1/2", "1", "1/2"})), PreconditionError);
  CHECK_THROWS_AS(face_restrict(sys, {0}, rats({"1/3", "0", "1/2"})), PreconditionError);

  // With no facet the face is C(A) itself; beta is moved into it.
  auto whole = face_restrict(e1(), {}, rats({"6/5", "1/3", "1/7"}));
  CHECK(whole.s == 3);
  CHECK(whole.restricted.cfg.matrix() == e1_matrix());
}

TEST_CASE("reducibility witnesses") {
  auto sys = e1({"1/2", "0", "1/2"});
  auto w = reducibility_witness(sys);
  REQUIRE(w);
  CHECK(sys.facets[static_cast<std::size_t>(w->facet)].coeffs == ints({0, 1, 0}));
  CHECK(w->beta == sys.alpha);
  CHECK(is_zero(w->shift));
  CHECK_FALSE(reducibility_witness(e1()));

  auto s2 = e2({"1/2", "1"});
  auto w2 = reducibility_witness(s2);
  REQUIRE(w2);
  const auto& F = s2.facets[static_cast<std::size_t>(w2->facet)];
  CHECK(F.coeffs == ints({0, 1}));
  CHECK(F(w2->beta) == 0);
  CHECK(sub(w2->beta, s2.alpha) == to_rat(w2->shift));
  for (const auto& s : lifted_restricted_solutions(s2, w2->restriction, 8)) {
    GkzSystem shifted = make_system(s2.cfg, w2->beta);
    auto a = annihilation(shifted, s);
    CHECK(a.zero);
    CHECK(a.checked > 0);
  }
}
