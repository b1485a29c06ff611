#include "lattice_sight/visibility.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "lattice_sight/errors.hpp"

namespace lsight {

namespace {

using u64 = std::uint64_t;

// Smallest prime factor for every value in [2, n]; spf[0] = spf[1] = 0.
std::vector<u64> spf_table(u64 n) {
  std::vector<u64> spf(n + 1, 0);
  for (u64 p = 2; p <= n; ++p) {
    if (spf[p] != 0) continue;
    for (u64 m = p; m <= n; m += p) {
      if (spf[m] == 0) spf[m] = p;
    }
  }
  return spf;
}

// The distinct prime powers p^b for p | r that can still divide a value
// <= cap; an empty list means no s <= cap makes (r,s) b-invisible.
std::vector<u64> invisible_divisors(u64 r, unsigned b, u64 cap,
                                    const std::vector<u64>& spf) {
  std::vector<u64> qs;
  while (r > 1) {
    const u64 p = spf[r];
    u64 q = 1;
    bool fits = true;
    for (unsigned e = 0; e < b; ++e) {
      if (q > cap / p) {
        fits = false;
        break;
      }
      q *= p;
    }
    if (fits && q <= cap) qs.push_back(q);
    while (r % p == 0) r /= p;
  }
  return qs;
}

u64 count_invisible_rows(unsigned b, u64 n, u64 r_lo, u64 r_hi,
                         const std::vector<u64>& spf) {
  u64 count = 0;
  std::vector<u64> qs;
  for (u64 r = r_lo; r <= r_hi; ++r) {
    qs = invisible_divisors(r, b, n, spf);
    if (qs.empty()) continue;
    for (u64 s = 1; s <= n; ++s) {
      for (u64 q : qs) {
        if (s % q == 0) {
          ++count;
          break;
        }
      }
    }
  }
  return count;
}

}  // namespace

bool is_b_visible(unsigned b, const Point& p) {
  return ggcd(b, p.r, p.s) == 1;
}

Rational sight_coefficient(unsigned b, const Point& p) {
  if (b < 1) throw std::invalid_argument("sight_coefficient: b must be >= 1");
  if (p.r < 1 || p.s < 1) {
    throw std::invalid_argument("sight_coefficient: coordinates must be >= 1");
  }
  Rational a;
  a.num = p.s;
  a.den = boost::multiprecision::pow(p.r, b);
  const BigInt g = boost::multiprecision::gcd(a.num, a.den);
  a.num /= g;
  a.den /= g;
  return a;
}

const char* method_name(Method m) {
  switch (m) {
    case Method::brute:
      return "brute";
    case Method::sieve:
      return "sieve";
    case Method::moebius:
      return "moebius";
  }
  throw std::invalid_argument("method_name: unknown method");
}

Method method_from_name(const std::string& name) {
  if (name == "brute") return Method::brute;
  if (name == "sieve") return Method::sieve;
  if (name == "moebius") return Method::moebius;
  throw std::invalid_argument("unknown method '" + name + "' (expected brute, sieve or moebius)");
}

VisibilityGrid::VisibilityGrid(unsigned b, u64 width, u64 height)
    : b_(b), width_(width), height_(height), cells_(width * height, false) {
  if (b < 1) throw std::invalid_argument("VisibilityGrid: b must be >= 1");
  if (width < 1 || height < 1) {
    throw std::invalid_argument("VisibilityGrid: dimensions must be >= 1");
  }
}

u64 VisibilityGrid::index(u64 r, u64 s) const {
  if (r < 1 || r > width_ || s < 1 || s > height_) {
    throw std::out_of_range("VisibilityGrid: cell out of range");
  }
  return (s - 1) * width_ + (r - 1);
}

bool VisibilityGrid::invisible(u64 r, u64 s) const { return cells_[index(r, s)]; }

void VisibilityGrid::mark_invisible(u64 r, u64 s) {
  const u64 i = index(r, s);
  if (!cells_[i]) {
    cells_[i] = true;
    ++count_;
  }
}

u64 count_invisible_brute(unsigned b, u64 n, unsigned threads) {
  if (b < 1) throw std::invalid_argument("count_invisible_brute: b must be >= 1");
  if (n < 1) throw std::invalid_argument("count_invisible_brute: n must be >= 1");
  const std::vector<u64> spf = spf_table(n);
  if (threads <= 1 || n < 64) {
    return count_invisible_rows(b, n, 1, n, spf);
  }
  const unsigned workers = static_cast<unsigned>(std::min<u64>(threads, n));
  std::vector<u64> partial(workers, 0);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    const u64 lo = 1 + t * n / workers;
    const u64 hi = (t + 1) * n / workers;
    pool.emplace_back([&, t, lo, hi] { partial[t] = count_invisible_rows(b, n, lo, hi, spf); });
  }
  for (auto& th : pool) th.join();
  return std::accumulate(partial.begin(), partial.end(), u64{0});
}

VisibilityGrid sieve_grid(unsigned b, u64 width, u64 height, u64 cell_budget) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("sieve_grid: dimensions must be >= 1");
  }
  if (width > cell_budget / height) {
    throw GridBudgetError("sieve_grid: " + std::to_string(width) + "x" +
                          std::to_string(height) + " grid exceeds the cell budget of " +
                          std::to_string(cell_budget));
  }
  VisibilityGrid grid(b, width, height);
  for (u64 p : primes_up_to(width)) {
    u64 q = 1;
    bool fits = true;
    for (unsigned e = 0; e < b; ++e) {
      if (q > height / p) {
        fits = false;
        break;
      }
      q *= p;
    }
    if (!fits || q > height) continue;
    for (u64 r = p; r <= width; r += p) {
      for (u64 s = q; s <= height; s += q) grid.mark_invisible(r, s);
    }
  }
  return grid;
}

u64 count_visible_moebius(unsigned b, u64 n) {
  if (b < 1) throw std::invalid_argument("count_visible_moebius: b must be >= 1");
  if (n < 1) throw std::invalid_argument("count_visible_moebius: n must be >= 1");
  if (n > (u64{1} << 31)) {
    throw std::invalid_argument("count_visible_moebius: n above 2^31 overflows the term sum");
  }
  // Terms vanish once k^b > n, so k ranges over [1, n^(1/b)].
  u64 kmax = n;
  if (b > 1) {
    kmax = 1;
    while (true) {
      u64 q = 1;
      bool fits = true;
      for (unsigned e = 0; e < b; ++e) {
        if (q > n / (kmax + 1)) {
          fits = false;
          break;
        }
        q *= kmax + 1;
      }
      if (!fits || q > n) break;
      ++kmax;
    }
  }
  const std::vector<std::int8_t> mu = moebius_up_to(kmax);
  std::int64_t sum = 0;
  for (u64 k = 1; k <= kmax; ++k) {
    if (mu[k] == 0) continue;
    u64 kb = 1;
    for (unsigned e = 0; e < b; ++e) kb *= k;
    sum += static_cast<std::int64_t>(mu[k]) *
           static_cast<std::int64_t>((n / k) * (n / kb));
  }
  return static_cast<u64>(sum);
}

DensityReport density_report(unsigned b, u64 n, Method method, unsigned threads,
                             u64 cell_budget) {
  DensityReport rep;
  rep.b = b;
  rep.N = n;
  rep.total = n * n;
  rep.method = method;
  switch (method) {
    case Method::brute:
      rep.invisible_count = count_invisible_brute(b, n, threads);
      break;
    case Method::sieve:
      rep.invisible_count = sieve_grid(b, n, n, cell_budget).invisible_count();
      break;
    case Method::moebius:
      rep.invisible_count = rep.total - count_visible_moebius(b, n);
      break;
  }
  rep.visible_count = rep.total - rep.invisible_count;
  rep.observed_invisible_proportion =
      static_cast<double>(rep.invisible_count) / static_cast<double>(rep.total);
  const Proportions pred = predicted_proportions(b);
  rep.predicted_visible_proportion = pred.visible;
  rep.predicted_invisible_proportion = pred.invisible;
  return rep;
}

std::vector<DensityReport> table_rows(const std::vector<unsigned>& b_list, u64 n,
                                      Method method, unsigned threads) {
  std::vector<DensityReport> rows;
  rows.reserve(b_list.size());
  for (unsigned b : b_list) rows.push_back(density_report(b, n, method, threads));
  return rows;
}

}  // namespace lsight
