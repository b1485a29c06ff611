#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lattice_sight/numtheory.hpp"
#include "lattice_sight/zeta.hpp"

namespace lsight {

// A first-quadrant lattice point; both coordinates are >= 1.
struct Point {
  BigInt r;
  BigInt s;
  bool operator==(const Point&) const = default;
};

// True iff ggcd(b, r, s) = 1, i.e. (r,s) is the first lattice point on its
// curve a*x^b from the origin.
bool is_b_visible(unsigned b, const Point& p);

// The coefficient a = s / r^b of that curve, in lowest terms.
struct Rational {
  BigInt num;
  BigInt den;
  bool operator==(const Rational&) const = default;
};

Rational sight_coefficient(unsigned b, const Point& p);

enum class Method { brute, sieve, moebius };

const char* method_name(Method m);
Method method_from_name(const std::string& name);

// One bit per cell over [1,width] x [1,height]; set = b-invisible.
class VisibilityGrid {
 public:
  VisibilityGrid(unsigned b, std::uint64_t width, std::uint64_t height);

  unsigned b() const noexcept { return b_; }
  std::uint64_t width() const noexcept { return width_; }
  std::uint64_t height() const noexcept { return height_; }

  bool invisible(std::uint64_t r, std::uint64_t s) const;
  void mark_invisible(std::uint64_t r, std::uint64_t s);
  std::uint64_t invisible_count() const noexcept { return count_; }

 private:
  std::uint64_t index(std::uint64_t r, std::uint64_t s) const;

  unsigned b_;
  std::uint64_t width_;
  std::uint64_t height_;
  std::uint64_t count_ = 0;
  std::vector<bool> cells_;  // row-major, (s-1)*width + (r-1)
};

inline constexpr std::uint64_t kDefaultCellBudget = std::uint64_t{1} << 31;

// Number of b-invisible points in [1,n]^2 by direct per-point evaluation.
// The row range may be split across `threads` workers; the count is
// identical for every thread count.
std::uint64_t count_invisible_brute(unsigned b, std::uint64_t n, unsigned threads = 1);

// Marks, for each prime p <= width, every (r,s) with p | r and p^b | s.
// Throws GridBudgetError when width*height exceeds the cell budget.
VisibilityGrid sieve_grid(unsigned b, std::uint64_t width, std::uint64_t height,
                          std::uint64_t cell_budget = kDefaultCellBudget);

// Inclusion-exclusion count of b-visible points in [1,n]^2:
// sum over k >= 1 of mu(k) * floor(n/k) * floor(n/k^b).
std::uint64_t count_visible_moebius(unsigned b, std::uint64_t n);

struct DensityReport {
  unsigned b = 0;
  std::uint64_t N = 0;
  std::uint64_t invisible_count = 0;
  std::uint64_t visible_count = 0;
  std::uint64_t total = 0;
  double observed_invisible_proportion = 0.0;
  double predicted_visible_proportion = 0.0;
  double predicted_invisible_proportion = 0.0;
  Method method = Method::brute;
};

DensityReport density_report(unsigned b, std::uint64_t n, Method method,
                             unsigned threads = 1,
                             std::uint64_t cell_budget = kDefaultCellBudget);

// One DensityReport per exponent in b_list, all over the same [1,n]^2 grid.
std::vector<DensityReport> table_rows(const std::vector<unsigned>& b_list,
                                      std::uint64_t n, Method method = Method::brute,
                                      unsigned threads = 1);

}  // namespace lsight
