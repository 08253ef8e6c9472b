#include "toric/clemens.hpp"
#include "toric/fixtures.hpp"
#include "toric/lp.hpp"

#include <doctest.h>

using namespace toric;

namespace {

AdelicFaceSpec real_place(std::vector<std::size_t> rays) {
  AdelicFaceSpec s;
  s.entries.push_back({"v0", false, ClemensFace{std::move(rays)}});
  return s;
}

// independent pointedness check: the only nonnegative c with
// sum c_i g_i = 0 and sum c_i = 1 must not exist
bool pointed_by_lp(const ConeData& c) {
  if (c.generators.empty()) return true;
  const std::size_t n = c.ambient_rank;
  const std::size_t k = c.generators.size();
  std::vector<RatVec> rows(n + 1, RatVec(k));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) rows[i][j] = Rat(c.generators[j][i]);
    rows[n][j] = 1;
  }
  RatVec rhs(n + 1, Rat(0));
  rhs[n] = 1;
  return !lp_feasible(rows, rhs);
}

}  // namespace

TEST_SUITE("clemens") {

TEST_CASE("the blown-up plane has five nontrivial faces") {
  Fan f = load_fixture("bl2p2");
  auto faces = clemens_complex(f, {2, 3, 4});
  REQUIRE(faces.size() == 6);
  CHECK(faces[0].rays.empty());
  CHECK(faces[0].dim() == -1);
  std::vector<std::vector<std::size_t>> expect = {
      {2}, {3}, {4}, {2, 3}, {2, 4}};
  for (std::size_t i = 0; i < 5; ++i) CHECK(faces[i + 1].rays == expect[i]);
}

TEST_CASE("the projective line has one boundary face") {
  Fan f = load_fixture("p1");
  auto faces = clemens_complex(f, {1});
  REQUIRE(faces.size() == 2);
  CHECK(faces[1].dim() == 0);
}

TEST_CASE("an empty boundary gives only the empty face") {
  Fan f = load_fixture("quadric_u");
  auto faces = clemens_complex(f, {});
  REQUIRE(faces.size() == 1);
  CHECK(faces[0].dim() == -1);
}

TEST_CASE("adelic picard ranks on the blown-up plane") {
  Fan f = load_fixture("bl2p2");
  SUBCASE("maximal face {E_x, D} has rank 2") {
    AdelicPicard ap = adelic_picard(f, {2, 3, 4}, real_place({2, 3}));
    CHECK(ap.free_rank() == 2);
    CHECK(ap.torsion_orders().empty());
  }
  SUBCASE("face {D} has rank 1") {
    AdelicPicard ap = adelic_picard(f, {2, 3, 4}, real_place({2}));
    CHECK(ap.free_rank() == 1);
  }
  SUBCASE("the empty face recovers Pic U") {
    AdelicPicard ap = adelic_picard(f, {2, 3, 4}, {});
    CHECK(ap.free_rank() == 0);  // Pic A^2 = 0
    CHECK(ap.torsion_orders().empty());
  }
  SUBCASE("invalid faces are rejected") {
    CHECK_THROWS_AS(adelic_picard(f, {2, 3, 4}, real_place({3, 4})),
                    validation_error);
    CHECK_THROWS_AS(adelic_picard(f, {2, 3}, real_place({4})),
                    validation_error);
  }
}

TEST_CASE("empty-face degeneration matches Pic U exactly") {
  // same invariant factors as the subfan Picard group
  Fan f = load_fixture("quadric_x");
  AdelicPicard ap = adelic_picard(f, {1, 3}, {});
  PicardData pu = picard_group(load_fixture("quadric_u"));
  CHECK(ap.free_rank() == pu.free_rank());
  CHECK(ap.torsion_orders() == pu.torsion_orders());
  REQUIRE(ap.torsion_orders().size() == 1);
  CHECK(ap.torsion_orders()[0] == 2);
}

TEST_CASE("analytic obstructions on the blown-up plane") {
  Fan f = load_fixture("bl2p2");
  SUBCASE("face {E_x} is obstructed with witness x") {
    ObstructionReport r = analytic_obstruction(f, {2, 3, 4}, real_place({3}));
    REQUIRE(r.obstructed);
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness == IntVec{Int(1), Int(0)});
  }
  SUBCASE("face {D} is unobstructed") {
    CHECK_FALSE(
        analytic_obstruction(f, {2, 3, 4}, real_place({2})).obstructed);
  }
  SUBCASE("the maximal faces are unobstructed") {
    CHECK_FALSE(
        analytic_obstruction(f, {2, 3, 4}, real_place({2, 3})).obstructed);
    CHECK_FALSE(
        analytic_obstruction(f, {2, 3, 4}, real_place({2, 4})).obstructed);
  }
}

TEST_CASE("opposite rays kill all characters on the projective line") {
  Fan f = load_fixture("p1");
  CHECK_FALSE(analytic_obstruction(f, {1}, real_place({1})).obstructed);
}

TEST_CASE("unobstructed faces have pointed effective cones") {
  struct Case {
    std::string fixture;
    std::vector<std::size_t> boundary;
  };
  for (const Case& cs : {Case{"bl2p2", {2, 3, 4}}, Case{"p1", {1}},
                         Case{"quadric_x", {1, 3}}}) {
    Fan f = load_fixture(cs.fixture);
    for (const auto& face : clemens_complex(f, cs.boundary)) {
      AdelicFaceSpec spec =
          face.rays.empty() ? AdelicFaceSpec{} : real_place(face.rays);
      if (analytic_obstruction(f, cs.boundary, spec).obstructed) continue;
      AdelicPicard ap = adelic_picard(f, cs.boundary, spec);
      CHECK(ap.effective().cone.pointed);
      CHECK(pointed_by_lp(ap.effective().cone));
    }
  }
}

TEST_CASE("constraint growth shrinks the witness cone") {
  // dual-cone containment along the chain of faces {} < {E_x} < {E_x, D}
  Fan f = load_fixture("bl2p2");
  auto witness_cone = [&](const AdelicFaceSpec& spec) {
    std::vector<IntVec> gens = {f.ray(0), f.ray(1)};
    for (const auto& e : spec.entries)
      for (std::size_t i : e.face.rays) gens.push_back(f.ray(i));
    ConeData c;
    c.ambient_rank = 2;
    c.generators = gens;
    return dual_cone(c);
  };
  ConeData small = witness_cone(real_place({2, 3}));
  ConeData large = witness_cone(real_place({3}));
  for (const IntVec& g : small.generators) CHECK(cone_contains(large, g));
}

TEST_CASE("the archimedean constant") {
  SUBCASE("one real place with a single divisor gives 2") {
    ArchimedeanConstant c = archimedean_constant(real_place({0}));
    CHECK(c.two_exp == 1);
    CHECK(c.pi_exp == 0);
    CHECK(c.value() == doctest::Approx(2.0));
  }
  SUBCASE("one complex place with a single divisor gives 2 pi") {
    AdelicFaceSpec s;
    s.entries.push_back({"w", true, ClemensFace{{0}}});
    ArchimedeanConstant c = archimedean_constant(s);
    CHECK(c.two_exp == 1);
    CHECK(c.pi_exp == 1);
    CHECK(c.value() == doctest::Approx(6.283185307179586));
  }
  SUBCASE("the empty spec gives 1") {
    ArchimedeanConstant c = archimedean_constant({});
    CHECK(c.two_exp == 0);
    CHECK(c.pi_exp == 0);
    CHECK(c.value() == doctest::Approx(1.0));
  }
}

TEST_CASE("log canonical class maps through the presentation") {
  Fan f = load_fixture("bl2p2");
  AdelicPicard ap = adelic_picard(f, {2, 3, 4}, real_place({2, 3}));
  DivisorClass k = ap.log_canonical();
  // -K is minus the sum of U's divisor classes
  IntVec lambda(f.ray_count(), Int(0));
  lambda[0] = 1;
  lambda[1] = 1;
  DivisorClass minus_k = ap.from_ray_vector(lambda);
  for (std::size_t i = 0; i < k.free.size(); ++i)
    CHECK(k.free[i] == -minus_k.free[i]);
}

}  // TEST_SUITE
