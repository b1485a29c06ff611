#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lsight {

/// Thrown when a requested grid would exceed the configured cell budget.
class GridBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by verify_forest when a claimed forest contains a visible point.
/// Carries the (i, j) offset of the first visible cell, bottom row first.
class NotAForestError : public std::runtime_error {
 public:
  NotAForestError(const std::string& msg, std::uint64_t i, std::uint64_t j)
      : std::runtime_error(msg), i_(i), j_(j) {}

  std::uint64_t cell_i() const noexcept { return i_; }
  std::uint64_t cell_j() const noexcept { return j_; }

 private:
  std::uint64_t i_;
  std::uint64_t j_;
};

}  // namespace lsight
