#include "lattice_sight/zeta.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace lsight {

namespace {

constexpr double kMinTol = 1e-14;
constexpr std::uint64_t kDefaultCutoff = 10000;

// Remainder of the Euler-Maclaurin expansion after the M^{-s-1} term; a
// conservative overestimate of the first omitted correction.
double tail_bound(unsigned s, std::uint64_t m) {
  const double md = static_cast<double>(m);
  return static_cast<double>(s) * (s + 1.0) * std::pow(md, -(s + 2.0));
}

}  // namespace

ZetaValue zeta_int(unsigned s, double tol) {
  if (s < 2) throw std::invalid_argument("zeta_int: s must be >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("zeta_int: tol must be > 0");
  if (tol < kMinTol) {
    throw std::invalid_argument("zeta_int: tol below 1e-14 is unattainable in double precision");
  }

  // Reserve part of the tolerance for accumulated rounding (zeta(s) < 2 for
  // s >= 2, so 16 ulp of 2.0 covers the compensated sum and the tail terms).
  const double rounding = 16.0 * std::numeric_limits<double>::epsilon();
  std::uint64_t m = kDefaultCutoff;
  while (tail_bound(s, m) > tol - rounding) m *= 2;

  // Kahan-compensated partial sum of n^{-s}, largest terms last.
  double sum = 0.0;
  double carry = 0.0;
  for (std::uint64_t n = m; n >= 1; --n) {
    const double term = std::pow(static_cast<double>(n), -static_cast<double>(s)) - carry;
    const double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }

  const double md = static_cast<double>(m);
  const double tail = std::pow(md, 1.0 - static_cast<double>(s)) / (s - 1.0) -
                      std::pow(md, -static_cast<double>(s)) / 2.0 +
                      s * std::pow(md, -(s + 1.0)) / 12.0;

  ZetaValue z;
  z.s = s;
  z.value = sum + tail;
  // Truncation remainder plus the rounding allowance reserved above.
  z.abs_error_bound = tail_bound(s, m) + rounding;
  return z;
}

Proportions predicted_proportions(unsigned b) {
  if (b < 1) throw std::invalid_argument("predicted_proportions: b must be >= 1");
  Proportions p;
  if (b > 10000) {
    // zeta(b+1) is exactly 1.0 in double precision long before this point.
    p.visible = 1.0;
    p.invisible = 0.0;
    return p;
  }
  p.visible = 1.0 / zeta_int(b + 1).value;
  p.invisible = 1.0 - p.visible;
  return p;
}

}  // namespace lsight
