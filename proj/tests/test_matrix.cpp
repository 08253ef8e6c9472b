#include "toric/matrix.hpp"

#include <doctest.h>

#include <random>

using namespace toric;

TEST_SUITE("matrix") {

TEST_CASE("smith normal form on the hand examples") {
  SUBCASE("identity stays the identity") {
    SmithResult r = smith_normal_form(IntMat::identity(2));
    CHECK(r.S == IntMat::identity(2));
  }
  SUBCASE("diag(2,4) from the classic 2x2") {
    // by-hand row/column reduction: [[2,4],[6,8]] -> diag(2, 4)
    IntMat m{{2, 4}, {6, 8}};
    SmithResult r = smith_normal_form(m);
    CHECK(r.S(0, 0) == 2);
    CHECK(r.S(1, 1) == 4);
    CHECK(r.S(0, 1) == 0);
    CHECK(r.S(1, 0) == 0);
  }
  SUBCASE("zero matrix stays zero") {
    IntMat m(3, 2);
    SmithResult r = smith_normal_form(m);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 2; ++j) CHECK(r.S(i, j) == 0);
  }
}

TEST_CASE("U m V = S with unimodular transforms on random matrices") {
  std::mt19937_64 rng(12345);
  for (int iter = 0; iter < 40; ++iter) {
    std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    IntMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        m(i, j) = Int(static_cast<long>(rng() % 21) - 10);
    SmithResult r = smith_normal_form(m);
    CHECK(r.U * m * r.V == r.S);
    Int du = determinant(r.U), dv = determinant(r.V);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    // diagonal, nonnegative, divisibility chain
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (i != j) CHECK(r.S(i, j) == 0);
    std::size_t lim = std::min(rows, cols);
    for (std::size_t i = 0; i + 1 < lim; ++i) {
      CHECK(r.S(i, i) >= 0);
      if (r.S(i + 1, i + 1) != 0) {
        REQUIRE(r.S(i, i) != 0);
        CHECK(r.S(i + 1, i + 1) % r.S(i, i) == 0);
      }
    }
  }
}

TEST_CASE("integer kernel is a saturated basis") {
  IntMat m{{1, 2, 3}, {2, 4, 6}};
  auto ker = integer_kernel(m);
  REQUIRE(ker.size() == 2);
  for (const auto& v : ker) {
    IntVec img = m * v;
    for (const Int& x : img) CHECK(x == 0);
  }
}

TEST_CASE("integral and rational solving") {
  IntMat m{{2, 0}, {0, 3}};
  IntVec x;
  CHECK(solve_integer(m, {Int(4), Int(9)}, x));
  CHECK(x == IntVec{Int(2), Int(3)});
  CHECK_FALSE(solve_integer(m, {Int(1), Int(0)}, x));
  RatVec rx;
  CHECK(solve_rational(m, {Rat(1), Rat(0)}, rx));
  CHECK(rx[0] == Rat(1, 2));
}

TEST_CASE("saturated row basis of a scaled row space") {
  IntMat m{{2, 4}};
  auto b = saturated_row_basis(m);
  REQUIRE(b.size() == 1);
  bool plus = b[0] == IntVec{Int(1), Int(2)};
  bool minus = b[0] == IntVec{Int(-1), Int(-2)};
  CHECK((plus || minus));
}

}  // TEST_SUITE
