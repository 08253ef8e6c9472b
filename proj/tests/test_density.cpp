#include "toric/density.hpp"
#include "toric/fixtures.hpp"

#include <doctest.h>

#include <cmath>

using namespace toric;

TEST_SUITE("density") {

TEST_CASE("closed forms at z = 0") {
  SUBCASE("projective line: 1 + 2/(q^2 - 1)") {
    Fan f = load_fixture("p1");
    for (long q : {2, 3, 5, 7}) {
      LocalDensityQuery qry{&f, nullptr, Int(q), RatVec(2, Rat(0))};
      DensityValue d = denef_density(qry);
      REQUIRE(d.exact);
      CHECK(d.rational == Rat(1) + Rat(2) / (Rat(q) * q - 1));
    }
  }
  SUBCASE("affine plane: 1 + 2/(q^2-1) + 1/(q^2-1)^2") {
    Fan f = load_fixture("a2");
    LocalDensityQuery qry{&f, nullptr, Int(3), RatVec(2, Rat(0))};
    Rat x = Rat(1) / Rat(8);  // 1/(9-1)
    CHECK(denef_density(qry).rational == Rat(1) + 2 * x + x * x);
  }
  SUBCASE("the zero fan has density 1") {
    Fan f(1, {}, {});
    LocalDensityQuery qry{&f, nullptr, Int(5), {}};
    CHECK(denef_density(qry).rational == Rat(1));
  }
}

TEST_CASE("rational shifts stay exact when exponents are integral") {
  Fan f = load_fixture("p1");
  LocalDensityQuery qry{&f, nullptr, Int(2), RatVec(2, Rat(1))};  // 2+z = 3
  DensityValue d = denef_density(qry);
  REQUIRE(d.exact);
  CHECK(d.rational == Rat(1) + Rat(2) / Rat(7));
}

TEST_CASE("half-integral shifts produce high-precision values") {
  Fan f = load_fixture("p1");
  LocalDensityQuery qry{&f, nullptr, Int(4), RatVec(2, Rat(-1, 2))};
  DensityValue d = denef_density(qry);
  CHECK_FALSE(d.exact);
  // q^{3/2} = 8 at q = 4, so the density is 1 + 2/7 exactly
  CHECK(abs(d.approx - Real(9) / Real(7)) < Real("1e-80"));
}

TEST_CASE("poles and divergence guards") {
  Fan f = load_fixture("p1");
  CHECK_THROWS_AS(
      denef_density({&f, nullptr, Int(2), RatVec(2, Rat(-2))}), pole_error);
  CHECK_THROWS_AS(
      denef_density({&f, nullptr, Int(2), RatVec(2, Rat(-3))}), error);
}

TEST_CASE("densities with a group action") {
  // factor swap on the quadric surface: fixed cones are {0} and the four
  // 2-cones are swapped pairwise; fixed are those stable under the swap
  Fan f = load_fixture("p1xp1");
  GroupAction a = attach_action(f, f.action_generators);
  LocalDensityQuery qry{&f, &a, Int(3), RatVec(a.ray_orbits().size(), Rat(0))};
  DensityValue d = denef_density(qry);
  REQUIRE(d.exact);
  // fixed cones: {0}, {0,2}, {1,3} (each a single orbit of size 2)
  Rat y = Rat(1) / (int_pow(Int(3), 4) - 1);
  CHECK(d.rational == Rat(1) + 2 * y);
}

TEST_CASE("euler products") {
  SUBCASE("raw product over p <= 100 for the projective line") {
    Fan f = load_fixture("p1");
    EulerProductResult r = euler_product(f, RatVec(2, Rat(0)), 100);
    double direct = 1.0;
    for (unsigned long p : primes_up_to(100))
      direct *= 1.0 + 2.0 / (static_cast<double>(p) * p - 1.0);
    CHECK(r.raw == doctest::Approx(direct).epsilon(1e-12));
    CHECK(r.primes_used == 25);
  }
  SUBCASE("the zero fan gives 1") {
    Fan f(1, {}, {});
    EulerProductResult r = euler_product(f, {}, 50);
    CHECK(r.raw == doctest::Approx(1.0));
    CHECK(r.normalized == doctest::Approx(1.0));
  }
  SUBCASE("normalized tail stabilizes for the projective plane") {
    Fan f = load_fixture("p2");
    EulerProductResult a = euler_product(f, RatVec(3, Rat(0)), 500);
    EulerProductResult b = euler_product(f, RatVec(3, Rat(0)), 1000);
    CHECK(std::abs(a.normalized - b.normalized) < 1e-6);
  }
  SUBCASE("divergent normalizations are rejected") {
    Fan f = load_fixture("p1");
    CHECK_THROWS_AS(euler_product(f, RatVec(2, Rat(-1, 2)), 10), error);
  }
}

}  // TEST_SUITE
