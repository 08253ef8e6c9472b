#include "toric/ratfun.hpp"
#include "toric/xfunction.hpp"

#include <doctest.h>

#include <random>

using namespace toric;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

ConeData orthant(std::size_t n) {
  std::vector<IntVec> gens;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, Int(0));
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return ConeData::make(n, std::move(gens));
}

// exact pole order of s -> X(ell + s a) at s = 0, read off from the
// summed univariate rational function; independent of the face search
long pole_order_by_expansion(const ConeData& c, const RatVec& ell,
                             const RatVec& a) {
  RationalConeFunction xf = make_x_function(c);
  RatFun total;
  for (const auto& term : xf.terms) {
    RatFun piece{Poly::constant(Rat(term.lattice_index)),
                 Poly::constant(1)};
    for (const IntVec& w : term.linear_forms) {
      Poly lin;
      lin.c = {dot(w, ell), dot(w, a)};  // <ell, w> + s <a, w>
      piece = piece * RatFun{Poly::constant(1), lin};
    }
    total = total + piece;
  }
  return total.pole_order_at_zero();
}

}  // namespace

TEST_SUITE("xfunction") {

TEST_CASE("orthant values from the direct integral") {
  // int_0^inf int_0^inf e^{-s1 y1 - s2 y2} dy = 1/(s1 s2), done by hand
  ConeData c = orthant(2);
  CHECK(cone_x_function(c, {Rat(1), Rat(1)}) == Rat(1));
  CHECK(cone_x_function(c, {Rat(2), Rat(3)}) == Rat(1, 6));
}

TEST_CASE("poles carry the vanishing form") {
  ConeData c = orthant(2);
  try {
    cone_x_function(c, {Rat(0), Rat(1)});
    FAIL("expected a pole");
  } catch (const pole_error& e) {
    CHECK(e.vanishing_form == iv({1, 0}));
  }
}

TEST_CASE("torsion normalization divides the value") {
  ConeData c = orthant(2);
  CHECK(cone_x_function(c, {Rat(1), Rat(1)}, Int(2)) == Rat(1, 2));
}

TEST_CASE("pole orders") {
  ConeData c = orthant(2);
  SUBCASE("ell = 0 has full order") {
    CHECK(x_pole_order(c, {Rat(0), Rat(0)}, {Rat(1), Rat(1)}) == 2);
  }
  SUBCASE("a ray point has order 1") {
    CHECK(x_pole_order(c, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}) == 1);
  }
  SUBCASE("an interior point has order 0") {
    CHECK(x_pole_order(c, {Rat(1), Rat(2)}, {Rat(1), Rat(1)}) == 0);
  }
  SUBCASE("outside points are rejected") {
    CHECK_THROWS_AS(x_pole_order(c, {Rat(-1), Rat(0)}, {Rat(1), Rat(1)}),
                    membership_error);
  }
}

TEST_CASE("pole order agrees with the Laurent expansion oracle") {
  std::mt19937_64 rng(5150);
  int done = 0;
  while (done < 12) {
    std::size_t n = 2 + rng() % 2;
    std::vector<IntVec> gens;
    for (std::size_t i = 0; i < n; ++i) {
      IntVec g(n);
      for (auto& x : g) x = Int(static_cast<long>(rng() % 9) - 4);
      gens.push_back(std::move(g));
    }
    ConeData c = ConeData::make(n, gens);
    if (!c.pointed || c.dim() != n) continue;
    ++done;
    // interior direction
    RatVec a(n, Rat(0));
    for (const IntVec& g : c.generators)
      for (std::size_t j = 0; j < n; ++j) a[j] += Rat(g[j]);
    // ell on a random face: a partial sum of generators
    RatVec ell(n, Rat(0));
    std::size_t take = rng() % (c.generators.size() + 1);
    for (std::size_t i = 0; i < take; ++i)
      for (std::size_t j = 0; j < n; ++j) ell[j] += Rat(c.generators[i][j]);
    long structural = static_cast<long>(x_pole_order(c, ell, a));
    CHECK(structural == pole_order_by_expansion(c, ell, a));
  }
}

TEST_CASE("homogeneity of degree -rank") {
  ConeData c = ConeData::make(3, {iv({1, 0, 1}), iv({0, 1, 1}),
                                  iv({-1, 0, 1}), iv({0, -1, 1})});
  RationalConeFunction xf = make_x_function(c);
  RatVec s = {Rat(1, 3), Rat(-1, 5), Rat(2)};
  Rat base = xf.evaluate(s);
  for (long k = 2; k <= 5; ++k) {
    RatVec ks = s;
    for (Rat& v : ks) v *= k;
    CHECK(xf.evaluate(ks) * int_pow(Int(k), 3) == base);
  }
}

TEST_CASE("triangulation independence at random rational points") {
  ConeData c = ConeData::make(3, {iv({1, 0, 1}), iv({0, 1, 1}),
                                  iv({-1, 0, 1}), iv({0, -1, 1})});
  RationalConeFunction xa = make_x_function(c, 1, false);
  RationalConeFunction xb = make_x_function(c, 1, true);
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 20; ++i) {
    Rat s1(static_cast<long>(rng() % 17) - 8, 1 + rng() % 5);
    Rat s2(static_cast<long>(rng() % 17) - 8, 1 + rng() % 5);
    Rat s3 = abs(s1) + abs(s2) + Rat(1 + static_cast<long>(rng() % 5));
    RatVec s = {s1, s2, s3};
    CHECK(xa.evaluate(s) == xb.evaluate(s));
  }
}

TEST_CASE("requirements on the cone") {
  ConeData line = ConeData::make(2, {iv({1, 0}), iv({-1, 0})});
  CHECK_THROWS_AS(make_x_function(line), not_pointed_error);
  ConeData low = ConeData::make(2, {iv({1, 0})});
  CHECK_THROWS_AS(make_x_function(low), error);
}

}  // TEST_SUITE
