#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lattice_sight/numtheory.hpp"
#include "lattice_sight/visibility.hpp"

namespace lsight {

// n x m array of distinct primes; i indexes columns (x), j indexes rows (y)
// with j = 0 the BOTTOM row.
struct PrimeMatrix {
  std::uint64_t cols = 0;  // n, x-extent
  std::uint64_t rows = 0;  // m, y-extent
  std::vector<std::uint64_t> entries;  // index j*cols + i

  std::uint64_t at(std::uint64_t i, std::uint64_t j) const { return entries[j * cols + i]; }
};

// Default strategy: the smallest cols*rows primes, filling the bottom row
// left to right, then the row above it, and so on.
PrimeMatrix build_prime_matrix(std::uint64_t cols, std::uint64_t rows);

// Explicit entries in the same fill order; rejects composites and duplicates.
PrimeMatrix build_prime_matrix(std::uint64_t cols, std::uint64_t rows,
                               const std::vector<std::uint64_t>& primes);

// Text format: `rows` lines of `cols` whitespace-separated primes, TOP row
// first; line order maps to j = rows-1 ... 0.
PrimeMatrix parse_prime_matrix(const std::string& text);
std::string format_prime_matrix(const PrimeMatrix& P);

// Column products C_i and row products raised to b, (R_j)^b; the two lists
// that become the CRT moduli for r and s respectively.
struct Moduli {
  std::vector<BigInt> column;   // C_i, i = 0..n-1
  std::vector<BigInt> row_pow;  // R_j^b, j = 0..m-1
};

Moduli moduli(const PrimeMatrix& P, unsigned b);

struct Congruence {
  BigInt residue;
  BigInt modulus;
};

struct CrtSolution {
  BigInt value;    // canonical representative, 0 <= value < modulus
  BigInt modulus;  // product of the input moduli
};

// Simultaneous solution of x = residue_i (mod modulus_i); rejects systems
// whose moduli are not pairwise coprime.
CrtSolution crt_solve(const std::vector<Congruence>& sys);

// A rectangular block of b-invisible points: (anchor.r + i, anchor.s + j)
// for 0 <= i < n, 0 <= j < m.  CRT-built forests carry the period moduli;
// forests found by search do not.
struct Forest {
  unsigned b = 0;
  Point anchor;
  std::uint64_t n = 0;  // width
  std::uint64_t m = 0;  // height
  std::optional<BigInt> r_modulus;  // product of the C_i
  std::optional<BigInt> s_modulus;  // product of the R_j^b
};

// Solves r = -i (mod C_i) and s = -j (mod R_j^b); anchors use the least
// POSITIVE representative (residue 0 maps to the modulus itself).
Forest construct_forest(const PrimeMatrix& P, unsigned b);

struct Witness {
  BigInt value;            // ggcd(b, r+i, s+j), always > 1 in a real forest
  Factorization factors;
};

// Witness for every cell, indexed like PrimeMatrix (j = 0 bottom).
struct WitnessGrid {
  std::uint64_t cols = 0;
  std::uint64_t rows = 0;
  std::vector<Witness> cells;

  const Witness& at(std::uint64_t i, std::uint64_t j) const { return cells[j * cols + i]; }
};

// Computes all witnesses, scanning rows bottom-up and columns left to
// right; throws NotAForestError at the first cell whose ggcd is 1.
WitnessGrid verify_forest(const Forest& f);

// All anchors at the minimal Euclidean distance from the origin, sorted by
// (s, r) ascending.
struct SearchResult {
  std::vector<Forest> forests;
  std::uint64_t distance_sq = 0;  // r^2 + s^2 of every listed anchor
};

// Exhaustive scan of anchors (r,s) in [1,r_max] x [1,s_max]; the n x m
// block itself may extend past the bounds.  Empty optional when no
// b-invisible forest anchors within the bounds (which proves nothing about
// larger bounds).
std::optional<SearchResult> find_nearest_forest(unsigned b, std::uint64_t n,
                                                std::uint64_t m, std::uint64_t r_max,
                                                std::uint64_t s_max);

}  // namespace lsight
