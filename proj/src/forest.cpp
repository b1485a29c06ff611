#include "lattice_sight/forest.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <boost/dynamic_bitset.hpp>

#include "lattice_sight/errors.hpp"

namespace lsight {

namespace {

using u64 = std::uint64_t;

void check_dims(u64 cols, u64 rows) {
  if (cols < 1 || rows < 1) {
    throw std::invalid_argument("prime matrix dimensions must be >= 1");
  }
}

void check_entries(const PrimeMatrix& P) {
  std::vector<u64> seen = P.entries;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw std::invalid_argument("prime matrix entries must be distinct");
  }
  for (u64 p : P.entries) {
    if (!is_prime(p)) {
      throw std::invalid_argument("prime matrix entry " + std::to_string(p) + " is not prime");
    }
  }
}

// x with a*x = 1 (mod m), for gcd(a, m) = 1; extended Euclid.
BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt old_r = a % m, r = m;
  BigInt old_t = 1, t = 0;
  while (r != 0) {
    const BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r != 1) throw std::invalid_argument("mod_inverse: arguments are not coprime");
  if (old_t < 0) old_t += m;
  return old_t;
}

// Bits of `col` mark the s-values that make (r, s) b-invisible through
// some prime of r; bit index = s, sized s_hi + 1.
void fill_column(boost::dynamic_bitset<>& col, u64 r, unsigned b, u64 s_hi) {
  col.reset();
  u64 rest = r;
  for (u64 p = 2; p * p <= rest; p += (p == 2 ? 1 : 2)) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    u64 q = 1;
    bool fits = true;
    for (unsigned e = 0; e < b; ++e) {
      if (q > s_hi / p) {
        fits = false;
        break;
      }
      q *= p;
    }
    if (!fits) continue;
    for (u64 s = q; s <= s_hi; s += q) col.set(s);
  }
  if (rest > 1) {
    u64 q = 1;
    bool fits = true;
    for (unsigned e = 0; e < b; ++e) {
      if (q > s_hi / rest) {
        fits = false;
        break;
      }
      q *= rest;
    }
    if (fits) {
      for (u64 s = q; s <= s_hi; s += q) col.set(s);
    }
  }
}

}  // namespace

PrimeMatrix build_prime_matrix(u64 cols, u64 rows) {
  check_dims(cols, rows);
  const u64 need = cols * rows;
  // Prime counting: limit ~ n(ln n + ln ln n) covers the first n primes.
  u64 limit = 16;
  std::vector<u64> primes;
  while ((primes = primes_up_to(limit)).size() < need) limit *= 2;
  PrimeMatrix P;
  P.cols = cols;
  P.rows = rows;
  P.entries.assign(primes.begin(), primes.begin() + static_cast<std::ptrdiff_t>(need));
  return P;
}

PrimeMatrix build_prime_matrix(u64 cols, u64 rows, const std::vector<u64>& primes) {
  check_dims(cols, rows);
  if (primes.size() != cols * rows) {
    throw std::invalid_argument("expected exactly " + std::to_string(cols * rows) +
                                " primes, got " + std::to_string(primes.size()));
  }
  PrimeMatrix P;
  P.cols = cols;
  P.rows = rows;
  P.entries = primes;
  check_entries(P);
  return P;
}

PrimeMatrix parse_prime_matrix(const std::string& text) {
  std::vector<std::vector<u64>> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::vector<u64> row;
    u64 v = 0;
    while (fields >> v) row.push_back(v);
    if (!fields.eof()) {
      throw std::invalid_argument("prime matrix file: non-integer field in '" + line + "'");
    }
    if (!row.empty()) lines.push_back(std::move(row));
  }
  if (lines.empty()) throw std::invalid_argument("prime matrix file: no rows");
  PrimeMatrix P;
  P.rows = lines.size();
  P.cols = lines.front().size();
  for (const auto& row : lines) {
    if (row.size() != P.cols) {
      throw std::invalid_argument("prime matrix file: ragged rows");
    }
  }
  // First line is the TOP row (j = rows-1); store bottom row first.
  P.entries.resize(P.rows * P.cols);
  for (u64 line_no = 0; line_no < P.rows; ++line_no) {
    const u64 j = P.rows - 1 - line_no;
    for (u64 i = 0; i < P.cols; ++i) P.entries[j * P.cols + i] = lines[line_no][i];
  }
  check_entries(P);
  return P;
}

std::string format_prime_matrix(const PrimeMatrix& P) {
  std::ostringstream out;
  for (u64 line_no = 0; line_no < P.rows; ++line_no) {
    const u64 j = P.rows - 1 - line_no;
    for (u64 i = 0; i < P.cols; ++i) {
      if (i > 0) out << ' ';
      out << P.at(i, j);
    }
    out << '\n';
  }
  return out.str();
}

Moduli moduli(const PrimeMatrix& P, unsigned b) {
  if (b < 1) throw std::invalid_argument("moduli: b must be >= 1");
  check_dims(P.cols, P.rows);
  Moduli M;
  M.column.assign(P.cols, 1);
  M.row_pow.assign(P.rows, 1);
  for (u64 i = 0; i < P.cols; ++i) {
    for (u64 j = 0; j < P.rows; ++j) M.column[i] *= P.at(i, j);
  }
  for (u64 j = 0; j < P.rows; ++j) {
    BigInt row_product = 1;
    for (u64 i = 0; i < P.cols; ++i) row_product *= P.at(i, j);
    M.row_pow[j] = boost::multiprecision::pow(row_product, b);
  }
  return M;
}

CrtSolution crt_solve(const std::vector<Congruence>& sys) {
  CrtSolution sol;
  sol.value = 0;
  sol.modulus = 1;
  for (const Congruence& c : sys) {
    if (c.modulus < 1) throw std::invalid_argument("crt_solve: modulus must be >= 1");
    if (c.residue < 0 || c.residue >= c.modulus) {
      throw std::invalid_argument("crt_solve: residue must satisfy 0 <= residue < modulus");
    }
    if (boost::multiprecision::gcd(sol.modulus, c.modulus) != 1) {
      throw std::invalid_argument("crt_solve: moduli are not pairwise coprime");
    }
    // Lift x (mod M) to x' = x + M*k (mod M*m) with x' = residue (mod m).
    const BigInt diff = ((c.residue - sol.value) % c.modulus + c.modulus) % c.modulus;
    const BigInt k = diff * mod_inverse(sol.modulus, c.modulus) % c.modulus;
    sol.value += sol.modulus * k;
    sol.modulus *= c.modulus;
  }
  return sol;
}

Forest construct_forest(const PrimeMatrix& P, unsigned b) {
  const Moduli M = moduli(P, b);
  std::vector<Congruence> r_sys, s_sys;
  r_sys.reserve(P.cols);
  s_sys.reserve(P.rows);
  for (u64 i = 0; i < P.cols; ++i) {
    const BigInt& C = M.column[i];
    r_sys.push_back({(C - BigInt(i) % C) % C, C});
  }
  for (u64 j = 0; j < P.rows; ++j) {
    const BigInt& R = M.row_pow[j];
    s_sys.push_back({(R - BigInt(j) % R) % R, R});
  }
  const CrtSolution r = crt_solve(r_sys);
  const CrtSolution s = crt_solve(s_sys);
  Forest f;
  f.b = b;
  f.anchor.r = r.value == 0 ? r.modulus : r.value;
  f.anchor.s = s.value == 0 ? s.modulus : s.value;
  f.n = P.cols;
  f.m = P.rows;
  f.r_modulus = r.modulus;
  f.s_modulus = s.modulus;
  return f;
}

WitnessGrid verify_forest(const Forest& f) {
  if (f.b < 1) throw std::invalid_argument("verify_forest: b must be >= 1");
  if (f.n < 1 || f.m < 1) throw std::invalid_argument("verify_forest: dimensions must be >= 1");
  if (f.anchor.r < 1 || f.anchor.s < 1) {
    throw std::invalid_argument("verify_forest: anchor must have coordinates >= 1");
  }
  WitnessGrid W;
  W.cols = f.n;
  W.rows = f.m;
  W.cells.resize(f.n * f.m);
  for (u64 j = 0; j < f.m; ++j) {
    for (u64 i = 0; i < f.n; ++i) {
      GgcdWitness g = ggcd_with_factors(f.b, f.anchor.r + i, f.anchor.s + j);
      if (g.value == 1) {
        std::ostringstream msg;
        msg << "not a forest: point (" << (f.anchor.r + i) << ", " << (f.anchor.s + j)
            << ") at cell (" << i << ", " << j << ") is " << f.b << "-visible";
        throw NotAForestError(msg.str(), i, j);
      }
      W.cells[j * f.n + i] = {std::move(g.value), std::move(g.factors)};
    }
  }
  return W;
}

std::optional<SearchResult> find_nearest_forest(unsigned b, u64 n, u64 m, u64 r_max,
                                                u64 s_max) {
  if (b < 1) throw std::invalid_argument("find_nearest_forest: b must be >= 1");
  if (n < 1 || m < 1) {
    throw std::invalid_argument("find_nearest_forest: dimensions must be >= 1");
  }
  if (r_max < n || s_max < m) {
    throw std::invalid_argument("find_nearest_forest: bounds must be at least n x m");
  }
  constexpr u64 kBoundCap = u64{1} << 31;
  if (r_max > kBoundCap || s_max > kBoundCap) {
    throw std::invalid_argument("find_nearest_forest: bounds above 2^31 are not supported");
  }

  const u64 s_hi = s_max + m - 1;
  // Ring of the n column masks currently under the window; mask bit s says
  // (column, s) is b-invisible.
  std::vector<boost::dynamic_bitset<>> ring(n, boost::dynamic_bitset<>(s_hi + 1));
  for (u64 r = 1; r <= n; ++r) fill_column(ring[(r - 1) % n], r, b, s_hi);

  bool found = false;
  u64 best = 0;
  std::vector<std::pair<u64, u64>> anchors;  // (r, s)
  boost::dynamic_bitset<> window(s_hi + 1), runs(s_hi + 1);

  for (u64 r = 1; r <= r_max; ++r) {
    // Any s >= 1 from here on is farther than the current minimum.
    if (found && r * r >= best) break;
    if (r > 1) fill_column(ring[(r - 1 + n - 1) % n], r + n - 1, b, s_hi);
    window = ring[0];
    for (u64 i = 1; i < n; ++i) window &= ring[i];
    runs = window;
    for (u64 j = 1; j < m && runs.any(); ++j) runs &= window >> j;
    const auto s = runs.find_first();
    if (s == boost::dynamic_bitset<>::npos || s > s_max) continue;
    // Larger s in this column only increases the distance, so the first
    // run suffices.
    const u64 d = r * r + static_cast<u64>(s) * static_cast<u64>(s);
    if (!found || d < best) {
      found = true;
      best = d;
      anchors.clear();
    }
    if (d == best) anchors.emplace_back(r, static_cast<u64>(s));
  }
  if (!found) return std::nullopt;

  std::sort(anchors.begin(), anchors.end(),
            [](const auto& a, const auto& c) {
              return a.second != c.second ? a.second < c.second : a.first < c.first;
            });
  SearchResult result;
  result.distance_sq = best;
  result.forests.reserve(anchors.size());
  for (const auto& [ar, as] : anchors) {
    Forest f;
    f.b = b;
    f.anchor.r = ar;
    f.anchor.s = as;
    f.n = n;
    f.m = m;
    result.forests.push_back(std::move(f));
  }
  return result;
}

}  // namespace lsight
