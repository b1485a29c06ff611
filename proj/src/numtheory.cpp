#include "lattice_sight/numtheory.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace lsight {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128{a} * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

void append_factor(Factorization& f, const BigInt& p, unsigned e) {
  if (e > 0) f.push_back({p, e});
}

// Trial division over the 2,3,5-free wheel; n fits in 64 bits.
Factorization factorize_u64(u64 n) {
  Factorization f;
  for (u64 p : {u64{2}, u64{3}}) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    append_factor(f, p, e);
  }
  u64 d = 5;
  while (d <= n / d) {
    for (u64 p : {d, d + 2}) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      append_factor(f, p, e);
    }
    d += 6;
  }
  if (n > 1) append_factor(f, n, 1);
  return f;
}

}  // namespace

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (u64 m = p * p; m <= limit; m += p) composite[m] = true;
  }
  return primes;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  // n - 1 = d * 2^r with d odd; the base set below is exact for all u64.
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Factorization factorize(const BigInt& n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
  if (n <= std::numeric_limits<u64>::max()) {
    return factorize_u64(n.convert_to<u64>());
  }
  Factorization f;
  BigInt rest = n;
  for (unsigned p : {2u, 3u}) {
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    append_factor(f, p, e);
  }
  BigInt d = 5;
  while (d * d <= rest) {
    if (rest <= std::numeric_limits<u64>::max()) {
      // The remaining cofactor fits in a machine word; finish there.
      Factorization tail = factorize_u64(rest.convert_to<u64>());
      f.insert(f.end(), tail.begin(), tail.end());
      return f;
    }
    for (int off : {0, 2}) {
      const BigInt p = d + off;
      unsigned e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      append_factor(f, p, e);
    }
    d += 6;
  }
  if (rest > 1) append_factor(f, rest, 1);
  return f;
}

BigInt factored_value(const Factorization& f) {
  BigInt n = 1;
  for (const auto& pp : f) n *= boost::multiprecision::pow(pp.prime, pp.exponent);
  return n;
}

unsigned valuation(const BigInt& n, const BigInt& p) {
  if (n < 1) throw std::invalid_argument("valuation: n must be >= 1");
  if (p < 2) throw std::invalid_argument("valuation: p must be >= 2");
  unsigned e = 0;
  BigInt rest = n;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  return e;
}

int moebius(u64 k) {
  if (k < 1) throw std::invalid_argument("moebius: k must be >= 1");
  Factorization f = factorize_u64(k);
  for (const auto& pp : f) {
    if (pp.exponent > 1) return 0;
  }
  return f.size() % 2 == 0 ? 1 : -1;
}

std::vector<std::int8_t> moebius_up_to(u64 limit) {
  std::vector<std::int8_t> mu(limit + 1, 1);
  mu[0] = 0;
  for (u64 p : primes_up_to(limit)) {
    for (u64 m = p; m <= limit; m += p) mu[m] = static_cast<std::int8_t>(-mu[m]);
    if (p <= limit / p) {
      u64 q = p * p;
      for (u64 m = q; m <= limit; m += q) mu[m] = 0;
    }
  }
  return mu;
}

GgcdWitness ggcd_with_factors(unsigned b, const BigInt& r, const BigInt& s) {
  if (b < 1) throw std::invalid_argument("ggcd: b must be >= 1");
  if (r < 1) throw std::invalid_argument("ggcd: r must be >= 1");
  if (s < 1) throw std::invalid_argument("ggcd: s must be >= 1");
  GgcdWitness w;
  w.value = 1;
  for (const auto& pp : factorize(r)) {
    // v_p(s) by repeated division, capped: beyond b * v_p(r) the p-exponent
    // of the result cannot grow further.
    const u64 cap = u64{b} * pp.exponent;
    u64 vs = 0;
    BigInt rest = s;
    while (vs < cap && rest % pp.prime == 0) {
      rest /= pp.prime;
      ++vs;
    }
    const unsigned e = static_cast<unsigned>(
        std::min<u64>(pp.exponent, vs / b));
    if (e > 0) {
      w.value *= boost::multiprecision::pow(pp.prime, e);
      w.factors.push_back({pp.prime, e});
    }
  }
  return w;
}

BigInt ggcd(unsigned b, const BigInt& r, const BigInt& s) {
  return ggcd_with_factors(b, r, s).value;
}

}  // namespace lsight
