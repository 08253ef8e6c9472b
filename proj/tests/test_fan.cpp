#include "toric/fixtures.hpp"

#include <doctest.h>

using namespace toric;

TEST_SUITE("fan") {

TEST_CASE("loading the projective plane") {
  Fan f = load_fixture("p2");
  CHECK(f.ray_count() == 3);
  // hand enumeration: {0}, three rays, three 2-cones
  CHECK(f.cones().size() == 7);
  CHECK(f.maximal_cones().size() == 3);
  CHECK(is_smooth(f));
  CHECK(is_complete(f));
}

TEST_CASE("loading the affine plane") {
  Fan f = load_fixture("a2");
  CHECK(f.cones().size() == 4);
  CHECK(is_smooth(f));
  CHECK_FALSE(is_complete(f));
}

TEST_CASE("the projective line is complete") {
  Fan f = load_fixture("p1");
  CHECK(is_complete(f));
  CHECK(is_smooth(f));
}

TEST_CASE("validation failures") {
  SUBCASE("non-primitive ray") {
    CHECK_THROWS_WITH_AS(
        load_fan(R"({"lattice_rank":2,"rays":[[2,0],[0,1]],
                     "max_cones":[[0,1]]})"),
        doctest::Contains("not primitive"), validation_error);
  }
  SUBCASE("linearly dependent cone rays") {
    CHECK_THROWS_WITH_AS(
        load_fan(R"({"lattice_rank":2,"rays":[[1,0],[-1,0]],
                     "max_cones":[[0,1]]})"),
        doctest::Contains("linearly dependent"), validation_error);
  }
  SUBCASE("dangling ray index") {
    CHECK_THROWS_WITH_AS(
        load_fan(R"({"lattice_rank":2,"rays":[[1,0],[0,1]],
                     "max_cones":[[0,7]]})"),
        doctest::Contains("dangling"), validation_error);
  }
  SUBCASE("cones crossing through each other") {
    // cone(e1, e2) and cone(e1+2e2, e1-e2) overlap in dimension 2
    CHECK_THROWS_AS(
        load_fan(R"({"lattice_rank":2,"rays":[[1,0],[0,1],[1,2],[1,-1]],
                     "max_cones":[[0,1],[2,3]]})"),
        validation_error);
  }
}

TEST_CASE("index-2 cone is detected as non-smooth") {
  Fan f = load_fan(R"({"lattice_rank":2,"rays":[[1,0],[1,2]],
                       "max_cones":[[0,1]]})");
  CHECK_FALSE(is_smooth(f));
}

TEST_CASE("a fan of rays only is smooth") {
  Fan f = load_fixture("quadric_u");
  CHECK(is_smooth(f));
  CHECK_FALSE(is_complete(f));
}

TEST_CASE("subfans") {
  SUBCASE("restricting the projective plane to two rays gives A2") {
    Fan f = load_fixture("p2");
    Fan u = subfan(f, {0, 1});
    CHECK(u.ray_count() == 2);
    CHECK(u.cones().size() == 4);
  }
  SUBCASE("removing the boundary of the blown-up plane gives A2") {
    Fan f = load_fixture("bl2p2");
    Fan u = subfan(f, {0, 1});
    CHECK(u.cones().size() == 4);
    CHECK(u.has_cone({0, 1}));
  }
  SUBCASE("the empty ray set gives the zero fan") {
    Fan f = load_fixture("p2");
    Fan z = subfan(f, {});
    CHECK(z.ray_count() == 0);
    CHECK(z.cones().size() == 1);
  }
  SUBCASE("allowing every ray returns the same fan") {
    Fan f = load_fixture("bl2p2");
    Fan g = subfan(f, {0, 1, 2, 3, 4});
    CHECK(g.cones() == f.cones());
    CHECK(g.rays() == f.rays());
  }
}

TEST_CASE("group actions") {
  SUBCASE("factor swap on the quadric surface") {
    Fan f = load_fixture("p1xp1");
    GroupAction a = attach_action(f, f.action_generators);
    CHECK(a.order() == 2);
    std::vector<std::vector<std::size_t>> expect = {{0, 2}, {1, 3}};
    CHECK(a.ray_orbits() == expect);
  }
  SUBCASE("the identity acts trivially") {
    Fan f = load_fixture("p2");
    GroupAction a = attach_action(f, {{0, 1, 2}});
    CHECK(a.order() == 1);
    CHECK(a.fixed_cones().size() == f.cones().size());
  }
  SUBCASE("swapping only the exceptional rays breaks a cone") {
    Fan f = load_fixture("bl2p2");
    // 3 <-> 4 alone maps the cone {3,0} to {4,0}, which is absent
    CHECK_THROWS_WITH_AS(attach_action(f, {{0, 1, 2, 4, 3}}),
                         doctest::Contains("not in the fan"),
                         validation_error);
  }
  SUBCASE("the full swap symmetry of the blown-up plane is valid") {
    Fan f = load_fixture("bl2p2");
    GroupAction a = attach_action(f, f.action_generators);
    CHECK(a.order() == 2);
  }
  SUBCASE("orbits partition the rays") {
    Fan f = load_fixture("p1xp1");
    GroupAction a = attach_action(f, f.action_generators);
    std::size_t total = 0;
    for (const auto& orbit : a.ray_orbits()) total += orbit.size();
    CHECK(total == f.ray_count());
  }
}

TEST_CASE("rank-2 complete smooth fixtures have as many maximal cones as rays") {
  for (const std::string& name : {"p2", "p1xp1", "bl2p2", "quadric_x"}) {
    Fan f = load_fixture(name);
    REQUIRE(is_complete(f));
    REQUIRE(is_smooth(f));
    CHECK(f.maximal_cones().size() == f.ray_count());
  }
}

TEST_CASE("fan file with places and boundary data") {
  Fan f = load_fixture("bl2p2");
  CHECK(f.boundary_rays == std::vector<std::size_t>{2, 3, 4});
  REQUIRE(f.places.size() == 1);
  CHECK(f.places[0].name == "v0");
  CHECK_FALSE(f.places[0].complex_place);
  CHECK(f.places[0].rays == std::vector<std::size_t>{2, 3});
}

}  // TEST_SUITE
