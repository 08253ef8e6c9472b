#include "toric/cone.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace toric;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

ConeData orthant2() { return ConeData::make(2, {iv({1, 0}), iv({0, 1})}); }

bool same_point_set(const ConeData& a, const ConeData& b) {
  for (const IntVec& g : a.generators)
    if (!cone_contains(b, g)) return false;
  for (const IntVec& g : b.generators)
    if (!cone_contains(a, g)) return false;
  return true;
}

}  // namespace

TEST_SUITE("cone") {

TEST_CASE("dual cone hand examples") {
  SUBCASE("the orthant is self-dual") {
    ConeData d = dual_cone(orthant2());
    CHECK(d.generators == std::vector<IntVec>{iv({0, 1}), iv({1, 0})});
  }
  SUBCASE("a single ray dualizes to a half-plane") {
    // inequality description has one constraint x >= 0; the extreme rays
    // of that half-plane were worked out by hand
    ConeData c = ConeData::make(2, {iv({1, 0})});
    ConeData d = dual_cone(c);
    std::vector<IntVec> expect = {iv({0, -1}), iv({0, 1}), iv({1, 0})};
    CHECK(d.generators == expect);
    CHECK_FALSE(d.pointed);
  }
  SUBCASE("the full plane dualizes to the origin") {
    ConeData c = ConeData::make(
        2, {iv({1, 0}), iv({-1, 0}), iv({0, 1}), iv({0, -1})});
    ConeData d = dual_cone(c);
    CHECK(d.generators.empty());
    CHECK_FALSE(c.pointed);
  }
}

TEST_CASE("dual of dual returns the original point set") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 25; ++iter) {
    std::size_t n = 2 + rng() % 3;
    std::vector<IntVec> gens;
    std::size_t count = 1 + rng() % 4;
    for (std::size_t i = 0; i < count; ++i) {
      IntVec g(n);
      for (auto& x : g) x = Int(static_cast<long>(rng() % 9) - 4);
      gens.push_back(std::move(g));
    }
    ConeData c = ConeData::make(n, gens);
    ConeData dd = dual_cone(dual_cone(c));
    CHECK(same_point_set(c, dd));
  }
}

TEST_CASE("minimal face containing a point") {
  ConeData c = orthant2();
  SUBCASE("interior point gives the cone itself") {
    FaceResult f = minimal_face_containing(c, {Rat(2), Rat(3)});
    CHECK(f.codim == 0);
    CHECK(same_point_set(f.face, c));
  }
  SUBCASE("the origin gives the zero face of full codimension") {
    FaceResult f = minimal_face_containing(c, {Rat(0), Rat(0)});
    CHECK(f.codim == 2);
    CHECK(f.face.generators.empty());
  }
  SUBCASE("a boundary ray point gives that ray") {
    FaceResult f = minimal_face_containing(c, {Rat(1), Rat(0)});
    CHECK(f.codim == 1);
    CHECK(f.face.generators == std::vector<IntVec>{iv({1, 0})});
  }
  SUBCASE("points outside throw") {
    CHECK_THROWS_AS(minimal_face_containing(c, {Rat(-1), Rat(0)}),
                    membership_error);
  }
}

TEST_CASE("triangulation basics") {
  SUBCASE("a simplicial cone is its own triangulation") {
    ConeData c = ConeData::make(3, {iv({1, 0, 0}), iv({0, 1, 0}),
                                    iv({0, 0, 1})});
    auto tri = triangulate(c);
    REQUIRE(tri.size() == 1);
    CHECK(same_point_set(tri[0], c));
  }
  SUBCASE("the cone over a square splits into two simplices") {
    ConeData c = ConeData::make(
        3, {iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, 0, 1}), iv({0, -1, 1})});
    auto tri = triangulate(c);
    CHECK(tri.size() == 2);
  }
  SUBCASE("non-pointed input is rejected") {
    ConeData c = ConeData::make(2, {iv({1, 0}), iv({-1, 0}), iv({0, 1})});
    CHECK_THROWS_AS(triangulate(c), not_pointed_error);
  }
}

namespace {

// 3! * vol{x in the tiling : <u, x> <= 1}, the triangulation invariant
// behind X-function independence (the bare index sum is only invariant
// when the generators share an affine hyperplane)
Rat truncated_volume(const std::vector<ConeData>& tri, const RatVec& u) {
  Rat total = 0;
  for (const ConeData& s : tri) {
    Rat denom = 1;
    for (const IntVec& g : s.generators) denom *= dot(g, u);
    total += Rat(simplicial_lattice_index(s)) / denom;
  }
  return total;
}

}  // namespace

TEST_CASE("triangulation invariants on random 3- and 4-generator cones") {
  std::mt19937_64 rng(4242);
  int done = 0;
  while (done < 15) {
    std::size_t n = 3;
    std::size_t count = 3 + rng() % 2;  // 3 or 4 generators
    std::vector<IntVec> gens;
    for (std::size_t i = 0; i < count; ++i) {
      IntVec g(n);
      for (auto& x : g) x = Int(static_cast<long>(rng() % 7) - 3);
      gens.push_back(std::move(g));
    }
    ConeData c = ConeData::make(n, gens);
    if (!c.pointed || c.dim() != n) continue;
    ++done;
    auto ta = triangulate(c);
    auto tb = triangulate_reversed(c);
    // a functional positive on the cone: sum of the facet normals
    ConeData d = dual_cone(c);
    RatVec u(n, Rat(0));
    for (const IntVec& w : d.generators)
      for (std::size_t j = 0; j < n; ++j) u[j] += Rat(w[j]);
    CHECK(truncated_volume(ta, u) == truncated_volume(tb, u));
    // pairwise disjoint interiors, union covered: spot-check that each
    // piece sits inside the original cone
    for (const auto& s : ta)
      for (const IntVec& g : s.generators) CHECK(cone_contains(c, g));
  }
}

TEST_CASE("index sums agree across triangulations of height-one cones") {
  // generators on the hyperplane z = 1: the bare index sums then agree
  std::mt19937_64 rng(777);
  int done = 0;
  while (done < 10) {
    std::vector<IntVec> gens;
    for (int i = 0; i < 4; ++i) {
      IntVec g(3);
      g[0] = Int(static_cast<long>(rng() % 9) - 4);
      g[1] = Int(static_cast<long>(rng() % 9) - 4);
      g[2] = 1;
      gens.push_back(std::move(g));
    }
    ConeData c = ConeData::make(3, gens);
    if (!c.pointed || c.dim() != 3) continue;
    ++done;
    Int suma = 0, sumb = 0;
    for (const auto& s : triangulate(c)) suma += simplicial_lattice_index(s);
    for (const auto& s : triangulate_reversed(c))
      sumb += simplicial_lattice_index(s);
    CHECK(suma == sumb);
  }
}

TEST_CASE("pointedness is computed, not assumed") {
  ConeData pointed = ConeData::make(2, {iv({1, 0}), iv({1, 1})});
  CHECK(pointed.pointed);
  ConeData line = ConeData::make(2, {iv({1, 0}), iv({-1, 0})});
  CHECK_FALSE(line.pointed);
}

}  // TEST_SUITE
