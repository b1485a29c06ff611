#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattice_sight/errors.hpp"
#include "lattice_sight/forest.hpp"

using lsight::BigInt;
using lsight::Congruence;
using lsight::Forest;
using lsight::PrimeMatrix;
using u64 = std::uint64_t;

namespace {

// Checks every cell of the block with the scalar classifier.
bool block_is_invisible(unsigned b, u64 r, u64 s, u64 n, u64 m) {
  for (u64 i = 0; i < n; ++i) {
    for (u64 j = 0; j < m; ++j) {
      if (lsight::is_b_visible(b, {r + i, s + j})) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("default prime matrix fills the bottom row first") {
  const PrimeMatrix P = lsight::build_prime_matrix(3, 2);
  CHECK(P.cols == 3);
  CHECK(P.rows == 2);
  CHECK(P.at(0, 0) == 2);
  CHECK(P.at(1, 0) == 3);
  CHECK(P.at(2, 0) == 5);
  CHECK(P.at(0, 1) == 7);
  CHECK(P.at(1, 1) == 11);
  CHECK(P.at(2, 1) == 13);

  const PrimeMatrix single = lsight::build_prime_matrix(1, 1);
  CHECK(single.at(0, 0) == 2);

  // 100th prime
  const PrimeMatrix big = lsight::build_prime_matrix(10, 10);
  CHECK(big.entries.back() == 541);
}

TEST_CASE("explicit prime matrices are validated") {
  const PrimeMatrix P = lsight::build_prime_matrix(2, 2, {2, 3, 5, 7});
  CHECK(P.at(0, 0) == 2);
  CHECK(P.at(1, 0) == 3);
  CHECK(P.at(0, 1) == 5);
  CHECK(P.at(1, 1) == 7);

  CHECK_THROWS_AS(lsight::build_prime_matrix(2, 2, {2, 3, 5}), std::invalid_argument);
  CHECK_THROWS_AS(lsight::build_prime_matrix(2, 2, {2, 3, 5, 5}), std::invalid_argument);
  CHECK_THROWS_AS(lsight::build_prime_matrix(2, 2, {2, 3, 4, 5}), std::invalid_argument);
  CHECK_THROWS_AS(lsight::build_prime_matrix(0, 2), std::invalid_argument);
}

TEST_CASE("prime matrix text format puts the top row first") {
  const PrimeMatrix P = lsight::parse_prime_matrix("7 11 13\n2 3 5\n");
  CHECK(P.cols == 3);
  CHECK(P.rows == 2);
  CHECK(P.at(0, 0) == 2);
  CHECK(P.at(2, 1) == 13);
  CHECK(lsight::format_prime_matrix(P) == "7 11 13\n2 3 5\n");

  const PrimeMatrix one = lsight::parse_prime_matrix("2\n");
  CHECK(one.cols == 1);
  CHECK(one.rows == 1);

  CHECK(lsight::format_prime_matrix(lsight::build_prime_matrix(3, 2)) == "7 11 13\n2 3 5\n");

  CHECK_THROWS_AS(lsight::parse_prime_matrix(""), std::invalid_argument);
  CHECK_THROWS_AS(lsight::parse_prime_matrix("2 3\n5\n"), std::invalid_argument);
  CHECK_THROWS_AS(lsight::parse_prime_matrix("2 x\n"), std::invalid_argument);
  CHECK_THROWS_AS(lsight::parse_prime_matrix("2 3\n4 5\n"), std::invalid_argument);
}

TEST_CASE("column and row moduli") {
  const auto M = lsight::moduli(lsight::build_prime_matrix(3, 2), 2);
  REQUIRE(M.column.size() == 3);
  REQUIRE(M.row_pow.size() == 2);
  CHECK(M.column[0] == 14);
  CHECK(M.column[1] == 33);
  CHECK(M.column[2] == 65);
  CHECK(M.row_pow[0] == 900);      // (2*3*5)^2
  CHECK(M.row_pow[1] == 1002001);  // (7*11*13)^2

  const auto single = lsight::moduli(lsight::build_prime_matrix(1, 1), 1);
  CHECK(single.column[0] == 2);
  CHECK(single.row_pow[0] == 2);

  const auto square = lsight::moduli(lsight::build_prime_matrix(2, 2, {2, 3, 5, 7}), 1);
  CHECK(square.column[0] == 10);
  CHECK(square.column[1] == 21);
  CHECK(square.row_pow[0] == 6);
  CHECK(square.row_pow[1] == 35);

  // Both lists are pairwise coprime.
  for (u64 cols = 1; cols <= 3; ++cols) {
    for (u64 rows = 1; rows <= 3; ++rows) {
      const auto MM = lsight::moduli(lsight::build_prime_matrix(cols, rows), 2);
      for (std::size_t x = 0; x < MM.column.size(); ++x) {
        for (std::size_t y = x + 1; y < MM.column.size(); ++y) {
          CHECK(boost::multiprecision::gcd(MM.column[x], MM.column[y]) == 1);
        }
      }
      for (std::size_t x = 0; x < MM.row_pow.size(); ++x) {
        for (std::size_t y = x + 1; y < MM.row_pow.size(); ++y) {
          CHECK(boost::multiprecision::gcd(MM.row_pow[x], MM.row_pow[y]) == 1);
        }
      }
    }
  }
}

TEST_CASE("crt_solve worked systems") {
  const auto sol = lsight::crt_solve({{0, 14}, {32, 33}, {63, 65}});
  CHECK(sol.value == 27818);
  CHECK(sol.modulus == 30030);

  const auto single = lsight::crt_solve({{3, 7}});
  CHECK(single.value == 3);
  CHECK(single.modulus == 7);

  const auto pair = lsight::crt_solve({{0, 10}, {20, 21}});
  CHECK(pair.value == 20);
  CHECK(pair.modulus == 210);

  const auto empty = lsight::crt_solve({});
  CHECK(empty.value == 0);
  CHECK(empty.modulus == 1);

  CHECK_THROWS_AS(lsight::crt_solve({{0, 4}, {1, 6}}), std::invalid_argument);
  CHECK_THROWS_AS(lsight::crt_solve({{7, 7}}), std::invalid_argument);
  CHECK_THROWS_AS(lsight::crt_solve({{0, 0}}), std::invalid_argument);
}

TEST_CASE("crt_solve returns the canonical representative") {
  const std::vector<Congruence> sys = {{0, 14}, {32, 33}, {63, 65}};
  const auto sol = lsight::crt_solve(sys);
  // Shifting the solution by the full modulus changes nothing mod each
  // modulus, so re-solving lands on the same representative.
  std::vector<Congruence> shifted;
  for (const auto& c : sys) shifted.push_back({(sol.value + sol.modulus) % c.modulus, c.modulus});
  const auto again = lsight::crt_solve(shifted);
  CHECK(again.value == sol.value);
  CHECK(again.modulus == sol.modulus);

  for (const auto& c : sys) CHECK(sol.value % c.modulus == c.residue);
}

TEST_CASE("construct_forest reproduces the worked 3x2 anchor") {
  const Forest f = lsight::construct_forest(lsight::build_prime_matrix(3, 2), 2);
  CHECK(f.b == 2);
  CHECK(f.n == 3);
  CHECK(f.m == 2);
  CHECK(f.anchor.r == 27818);
  CHECK(f.anchor.s == 602202600);
  REQUIRE(f.r_modulus.has_value());
  REQUIRE(f.s_modulus.has_value());
  CHECK(*f.r_modulus == 30030);
  CHECK(*f.s_modulus == 901800900);
}

TEST_CASE("construct_forest small cases") {
  const Forest one = lsight::construct_forest(lsight::build_prime_matrix(1, 1), 1);
  CHECK(one.anchor.r == 2);  // residue 0 maps to the modulus
  CHECK(one.anchor.s == 2);

  const Forest sq = lsight::construct_forest(lsight::build_prime_matrix(2, 2, {2, 3, 5, 7}), 1);
  CHECK(sq.anchor.r == 20);
  CHECK(sq.anchor.s == 174);
  CHECK(*sq.r_modulus == 210);
  CHECK(*sq.s_modulus == 210);
}

TEST_CASE("verify_forest returns the witness grid of the 3x2 construction") {
  const Forest f = lsight::construct_forest(lsight::build_prime_matrix(3, 2), 2);
  const auto W = lsight::verify_forest(f);
  REQUIRE(W.cols == 3);
  REQUIRE(W.rows == 2);
  CHECK(W.at(0, 0).value == 2);
  CHECK(W.at(1, 0).value == 9);
  CHECK(W.at(2, 0).value == 10);
  CHECK(W.at(0, 1).value == 7);
  CHECK(W.at(1, 1).value == 11);
  CHECK(W.at(2, 1).value == 13);

  // 9 = 3^2 carries its factorization along.
  REQUIRE(W.at(1, 0).factors.size() == 1);
  CHECK(W.at(1, 0).factors[0].prime == 3);
  CHECK(W.at(1, 0).factors[0].exponent == 2);
}

TEST_CASE("verify_forest accepts a 1x1 forest and rejects a visible cell") {
  Forest tiny;
  tiny.b = 1;
  tiny.anchor = {2, 2};
  tiny.n = 1;
  tiny.m = 1;
  const auto W = lsight::verify_forest(tiny);
  CHECK(W.at(0, 0).value == 2);

  Forest bogus;
  bogus.b = 1;
  bogus.anchor = {1, 1};
  bogus.n = 1;
  bogus.m = 1;
  CHECK_THROWS_AS(lsight::verify_forest(bogus), lsight::NotAForestError);

  Forest partial;
  partial.b = 1;
  partial.anchor = {2, 2};
  partial.n = 2;  // (3,2) is coprime, hence visible
  partial.m = 1;
  try {
    lsight::verify_forest(partial);
    FAIL("expected NotAForestError");
  } catch (const lsight::NotAForestError& e) {
    CHECK(e.cell_i() == 1);
    CHECK(e.cell_j() == 0);
    CHECK(std::string(e.what()).find("(3, 2)") != std::string::npos);
  }
}

TEST_CASE("CRT forests verify, with the matrix prime dividing each witness") {
  for (u64 cols = 1; cols <= 3; ++cols) {
    for (u64 rows = 1; rows <= 3; ++rows) {
      for (unsigned b = 1; b <= 3; ++b) {
        const PrimeMatrix P = lsight::build_prime_matrix(cols, rows);
        const Forest f = lsight::construct_forest(P, b);
        const auto W = lsight::verify_forest(f);
        for (u64 i = 0; i < cols; ++i) {
          for (u64 j = 0; j < rows; ++j) {
            CHECK(W.at(i, j).value > 1);
            CHECK(W.at(i, j).value % P.at(i, j) == 0);
          }
        }
      }
    }
  }
}

TEST_CASE("anchors shifted by the moduli still verify") {
  const Forest f = lsight::construct_forest(lsight::build_prime_matrix(3, 2), 2);

  Forest right = f;
  right.anchor.r += *f.r_modulus;
  CHECK(lsight::verify_forest(right).at(0, 0).value > 1);

  Forest up = f;
  up.anchor.s += *f.s_modulus;
  CHECK(lsight::verify_forest(up).at(2, 1).value > 1);
}

TEST_CASE("nearest forest of size 1x1 is (2,2)") {
  const auto res = lsight::find_nearest_forest(1, 1, 1, 10, 10);
  REQUIRE(res.has_value());
  CHECK(res->distance_sq == 8);
  REQUIRE(res->forests.size() == 1);
  CHECK(res->forests[0].anchor.r == 2);
  CHECK(res->forests[0].anchor.s == 2);
  CHECK_FALSE(res->forests[0].r_modulus.has_value());
}

TEST_CASE("nearest 2x2 forest and its transpose tie at distance 596") {
  const auto res = lsight::find_nearest_forest(1, 2, 2, 100, 100);
  REQUIRE(res.has_value());
  CHECK(res->distance_sq == 596);
  REQUIRE(res->forests.size() == 2);
  // Ties are ordered by smaller s first, then smaller r.
  CHECK(res->forests[0].anchor.r == 20);
  CHECK(res->forests[0].anchor.s == 14);
  CHECK(res->forests[1].anchor.r == 14);
  CHECK(res->forests[1].anchor.s == 20);
  for (const Forest& f : res->forests) {
    CHECK(lsight::verify_forest(f).cells.size() == 4);
  }
}

TEST_CASE("nearest search agrees with a naive anchor scan") {
  const auto res = lsight::find_nearest_forest(1, 2, 2, 100, 100);
  REQUIRE(res.has_value());

  u64 best = UINT64_MAX;
  std::vector<std::pair<u64, u64>> naive;
  for (u64 r = 1; r <= 100; ++r) {
    for (u64 s = 1; s <= 100; ++s) {
      if (!block_is_invisible(1, r, s, 2, 2)) continue;
      const u64 d = r * r + s * s;
      if (d < best) {
        best = d;
        naive.clear();
      }
      if (d == best) naive.emplace_back(r, s);
    }
  }
  REQUIRE(best != UINT64_MAX);
  CHECK(best == res->distance_sq);
  REQUIRE(naive.size() == res->forests.size());
  for (const auto& [r, s] : naive) {
    bool present = false;
    for (const Forest& f : res->forests) {
      if (f.anchor.r == r && f.anchor.s == s) present = true;
    }
    CHECK(present);
  }
}

TEST_CASE("nearest 2-wide 3-tall forest within 400x400") {
  const auto res = lsight::find_nearest_forest(1, 2, 3, 400, 400);
  REQUIRE(res.has_value());
  CHECK(res->distance_sq == 55816);
  REQUIRE(res->forests.size() == 1);
  CHECK(res->forests[0].anchor.r == 230);
  CHECK(res->forests[0].anchor.s == 54);
  CHECK(lsight::verify_forest(res->forests[0]).cells.size() == 6);
}

TEST_CASE("search reports absence within too-small bounds") {
  const auto res = lsight::find_nearest_forest(1, 3, 3, 5, 5);
  CHECK_FALSE(res.has_value());
}

TEST_CASE("search validates its arguments") {
  CHECK_THROWS_AS(lsight::find_nearest_forest(0, 1, 1, 10, 10), std::invalid_argument);
  CHECK_THROWS_AS(lsight::find_nearest_forest(1, 0, 1, 10, 10), std::invalid_argument);
  CHECK_THROWS_AS(lsight::find_nearest_forest(1, 4, 1, 3, 10), std::invalid_argument);
  CHECK_THROWS_AS(lsight::find_nearest_forest(1, 1, 4, 10, 3), std::invalid_argument);
}
