#include "toric/counter.hpp"
#include "toric/fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace toric;

namespace {

// brute-force oracle for the blown-up plane model: all integer pairs with
// xy != 0 and max(|xy|, 1) <= t, optionally filtered by |x| <= |y|
i64 brute_hyperbola(i64 t, bool x_le_y) {
  i64 n = 0;
  for (i64 x = -t; x <= t; ++x) {
    if (x == 0) continue;
    for (i64 y = -t; y <= t; ++y) {
      if (y == 0) continue;
      if (std::abs(x) * std::abs(y) > t) continue;
      if (x_le_y && std::abs(x) > std::abs(y)) continue;
      ++n;
    }
  }
  return n;
}

HeightSpec bl2p2_height(const Fan& f) {
  return HeightSpec(f, {Int(1), Int(1), Int(0), Int(0), Int(0)});
}

}  // namespace

TEST_SUITE("counter") {

TEST_CASE("height specs reproduce the worked examples") {
  SUBCASE("O(1) on the projective line is the coordinate maximum") {
    Fan f = load_fixture("p1");
    // support functions solved by hand: m_{sigma+} = -1, m_{sigma-} = 0
    HeightSpec h(f, {Int(1), Int(0)});
    CHECK(h.evaluate({Int(3), Int(5)}) == 5);
    CHECK(h.evaluate({Int(-7), Int(2)}) == 7);
  }
  SUBCASE("the log anticanonical height of the blown-up plane") {
    Fan f = load_fixture("bl2p2");
    HeightSpec h = bl2p2_height(f);
    CHECK(h.evaluate(lift_from_u(f, {0, 1}, {Int(4), Int(-5)})) == 20);
    CHECK(h.evaluate(lift_from_u(f, {0, 1}, {Int(1), Int(1)})) == 1);
    CHECK(h.evaluate(lift_from_u(f, {0, 1}, {Int(0), Int(9)})) == 9);
  }
  SUBCASE("the quadric torsor height max(u^2, v^2)") {
    Fan f = load_fixture("p1");
    HeightSpec h(f, {Int(2), Int(0)});
    CHECK(h.evaluate({Int(3), Int(-2)}) == 9);
    CHECK(h.evaluate({Int(1), Int(4)}) == 16);
  }
  SUBCASE("non-nef classes are rejected") {
    Fan f = load_fixture("p1");
    CHECK_THROWS_AS(HeightSpec(f, {Int(-1), Int(0)}), validation_error);
  }
}

TEST_CASE("affine line counts are exactly 2T + 1") {
  Fan f = load_fixture("p1");
  HeightSpec h(f, {Int(1), Int(0)});
  CoxCountOptions opts;
  opts.include_boundary_points = true;
  for (i64 t : {1, 2, 5, 30, 1000}) {
    opts.thresholds = {t};
    CHECK(enumerate_cox(f, {0}, h, opts)[0].count == 2 * t + 1);
  }
  // torus-only drops the origin
  opts.include_boundary_points = false;
  opts.thresholds = {10};
  CHECK(enumerate_cox(f, {0}, h, opts)[0].count == 20);
}

TEST_CASE("blown-up plane counts match the double loop") {
  Fan f = load_fixture("bl2p2");
  HeightSpec h = bl2p2_height(f);
  CoxCountOptions opts;
  for (i64 t : {1, 7, 100, 1000}) {
    opts.thresholds = {t};
    opts.region = {};
    auto recs = enumerate_cox(f, {0, 1}, h, opts);
    CHECK(recs[0].count == brute_hyperbola(t, false));

    opts.region.id = "x_le_y";
    opts.region.constraints = {RegionConstraint{{1, 0}, {0, 1}, 1}};
    auto recs2 = enumerate_cox(f, {0, 1}, h, opts);
    CHECK(recs2[0].count == brute_hyperbola(t, true));
  }
}

TEST_CASE("region inclusion-exclusion recovers the full count") {
  Fan f = load_fixture("bl2p2");
  HeightSpec h = bl2p2_height(f);
  CoxCountOptions opts;
  opts.thresholds = {400};
  auto all = enumerate_cox(f, {0, 1}, h, opts);
  opts.region.constraints = {RegionConstraint{{1, 0}, {0, 1}, 1}};
  auto le = enumerate_cox(f, {0, 1}, h, opts);
  opts.region.constraints = {RegionConstraint{{0, 1}, {1, 0}, 1}};
  auto ge = enumerate_cox(f, {0, 1}, h, opts);
  opts.region.constraints = {RegionConstraint{{1, 0}, {0, 1}, 1},
                             RegionConstraint{{0, 1}, {1, 0}, 1}};
  auto eq = enumerate_cox(f, {0, 1}, h, opts);
  CHECK(le[0].count + ge[0].count - eq[0].count == all[0].count);
}

TEST_CASE("counts are independent of the worker partition") {
  Fan f = load_fixture("bl2p2");
  HeightSpec h = bl2p2_height(f);
  CoxCountOptions opts;
  opts.thresholds = {1000, 2000};
  opts.workers = 1;
  auto one = enumerate_cox(f, {0, 1}, h, opts);
  opts.workers = 3;
  auto three = enumerate_cox(f, {0, 1}, h, opts);
  opts.workers = 7;
  auto seven = enumerate_cox(f, {0, 1}, h, opts);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].count == three[i].count);
    CHECK(one[i].count == seven[i].count);
  }
}

TEST_CASE("coprime points on the projective line") {
  // #{(u,v): gcd = 1, uv != 0, max(u^2,v^2) <= T} counted modulo the sign
  // orbit (u,v) ~ (-u,-v)
  Fan f = load_fixture("p1");
  HeightSpec h(f, {Int(2), Int(0)});
  CoxCountOptions opts;
  opts.thresholds = {100};
  auto recs = enumerate_cox(f, {0, 1}, h, opts);
  i64 brute = 0;
  for (i64 u = -10; u <= 10; ++u)
    for (i64 v = -10; v <= 10; ++v) {
      if (u == 0 || v == 0 || std::gcd(u, v) != 1) continue;
      if (std::max(u * u, v * v) <= 100) ++brute;
    }
  CHECK(recs[0].count * 2 == brute);
}

TEST_CASE("torsion Picard groups route to the affine counter") {
  Fan f = load_fixture("quadric_x");
  HeightSpec h(f, {Int(1), Int(0), Int(1), Int(0)});
  CoxCountOptions opts;
  opts.thresholds = {10};
  CHECK_THROWS_WITH_AS(enumerate_cox(f, {0, 2}, h, opts),
                       doctest::Contains("torsion"), error);
}

TEST_CASE("dirichlet identity for the hyperbola count") {
  // #{(x,y) >= 1 : xy <= T} = sum_{d <= T} floor(T/d)
  Fan f = load_fixture("bl2p2");
  HeightSpec h = bl2p2_height(f);
  for (i64 t : {10, 100, 768}) {
    CoxCountOptions opts;
    opts.thresholds = {t};
    auto recs = enumerate_cox(f, {0, 1}, h, opts);
    i64 divisor_sum = 0;
    for (i64 d = 1; d <= t; ++d) divisor_sum += t / d;
    CHECK(recs[0].count == 4 * divisor_sum);
  }
}

TEST_CASE("affine model of the quadric cone") {
  AffineModel m = load_affine_model_file(fixture_path("quadric_affine"));
  SUBCASE("tiny bounds by hand") {
    AffineCountOptions opts;
    opts.thresholds = {1};
    auto recs = enumerate_affine(m, opts);
    // by hand: (1,1,z) and (-1,-1,z) with z^2 = 1
    CHECK(recs[0].count == 4);
    opts.include_nontorus_points = true;
    auto recs2 = enumerate_affine(m, opts);
    // adds (0,+-1,0) and (+-1,0,0)
    CHECK(recs2[0].count == 8);
  }
  SUBCASE("monotone in T") {
    AffineCountOptions opts;
    opts.thresholds = {1, 4, 9, 16, 25};
    auto recs = enumerate_affine(m, opts);
    for (std::size_t i = 1; i < recs.size(); ++i)
      CHECK(recs[i].count >= recs[i - 1].count);
  }
  SUBCASE("worker partition independence") {
    AffineCountOptions opts;
    opts.thresholds = {400};
    opts.workers = 1;
    auto a = enumerate_affine(m, opts);
    opts.workers = 5;
    auto b = enumerate_affine(m, opts);
    CHECK(a[0].count == b[0].count);
  }
}

TEST_CASE("asymptotic fits on synthetic data") {
  auto synth = [](double c, double a, double bm1) {
    std::vector<CountRecord> recs;
    for (int k = 0; k <= 10; ++k) {
      i64 t = 1000ll << k;
      double lt = std::log(static_cast<double>(t));
      double n = c * std::pow(static_cast<double>(t), a) * std::pow(lt, bm1);
      recs.push_back({"synthetic", "all", t, static_cast<i64>(n), 0});
    }
    return recs;
  };
  SUBCASE("N = 4 T log T") {
    FitResult f = fit_asymptotics(synth(4.0, 1.0, 1.0));
    CHECK(std::abs(f.a_hat - 1.0) < 0.05);
    CHECK(std::abs(f.b_hat - 2.0) < 0.05);
  }
  SUBCASE("N = 7 T") {
    FitResult f = fit_asymptotics(synth(7.0, 1.0, 0.0));
    CHECK(std::abs(f.a_hat - 1.0) < 0.05);
    CHECK(std::abs(f.b_hat - 1.0) < 0.05);
  }
  SUBCASE("pinned-exponent variant") {
    FitResult f = fit_asymptotics_given_a(synth(4.0, 1.0, 1.0), 1.0);
    CHECK(std::abs(f.b_hat - 2.0) < 0.02);
    CHECK(f.a_hat == 1.0);
  }
  SUBCASE("preconditions") {
    std::vector<CountRecord> too_few = {{"m", "r", 1000, 10, 0},
                                        {"m", "r", 2000, 20, 0}};
    CHECK_THROWS_AS(fit_asymptotics(too_few), error);
    auto narrow = synth(1.0, 1.0, 0.0);
    narrow.resize(6);  // spans only 1000..32000
    CHECK_THROWS_AS(fit_asymptotics(narrow), error);
  }
}

TEST_CASE("count records round-trip through CSV") {
  std::vector<CountRecord> recs = {{"model", "all", 1000, 42, 7},
                                   {"model", "x_le_y", 2000, 84, 9}};
  std::ostringstream os;
  write_count_csv(os, recs);
  std::istringstream is(os.str());
  auto back = read_count_csv(is);
  REQUIRE(back.size() == 2);
  CHECK(back[1].region_id == "x_le_y");
  CHECK(back[1].count == 84);
  CHECK(back[0].t == 1000);
}

TEST_CASE("default schedule doubles from a thousand") {
  auto s = default_schedule(10000);
  REQUIRE(s.size() == 5);
  CHECK(s.front() == 1000);
  CHECK(s.back() == 10000);
}

}  // TEST_SUITE
