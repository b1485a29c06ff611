#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace lsight {

/// Arbitrary-precision integer; all library operations use non-negative
/// values unless stated otherwise.
using BigInt = boost::multiprecision::cpp_int;

/// One (prime, exponent) entry of a factorization.
struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  bool operator==(const PrimePower&) const = default;
};

/// Prime decomposition with strictly increasing primes and exponents >= 1.
/// The empty list is the factorization of 1.
using Factorization = std::vector<PrimePower>;

/// All primes <= limit, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Trial-division factorization; requires n >= 1.
Factorization factorize(const BigInt& n);

/// Product of prime^exponent over all entries (1 for the empty list).
BigInt factored_value(const Factorization& f);

/// Largest e with p^e dividing n; requires n >= 1 and p >= 2.
unsigned valuation(const BigInt& n, const BigInt& p);

/// Moebius function: 0 if k is not squarefree, else (-1)^(#prime factors).
int moebius(std::uint64_t k);

/// Moebius values for 0..limit (index 0 is a zero sentinel).
std::vector<std::int8_t> moebius_up_to(std::uint64_t limit);

/// Generalized gcd: max{k >= 1 : k divides r and k^b divides s}.
///
/// Computed as the product over primes p of r of
/// p^min(v_p(r), v_p(s)/b); only r is factorized, valuations of s are
/// taken by repeated division so s may be arbitrarily large.
/// Requires b >= 1, r >= 1, s >= 1.
BigInt ggcd(unsigned b, const BigInt& r, const BigInt& s);

/// ggcd value together with its prime decomposition.
struct GgcdWitness {
  BigInt value;
  Factorization factors;
};

GgcdWitness ggcd_with_factors(unsigned b, const BigInt& r, const BigInt& s);

}  // namespace lsight
