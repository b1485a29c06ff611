#pragma once

#include <cstdint>
#include <string>

#include "lattice_sight/visibility.hpp"

namespace lsight {

enum class ImageFormat { pbm, svg };

ImageFormat format_from_name(const std::string& name);

struct RenderSpec {
  ImageFormat format = ImageFormat::pbm;
  std::uint64_t n = 0;   // square grid side
  unsigned b = 0;
  bool invert = false;   // false: invisible points drawn black
};

// PBM output is plain P1 with row s = n emitted first, bit 1 = invisible
// (flipped under invert).  SVG draws one unit square per invisible point.
// The grid must be square and match spec.n and spec.b.
std::string render_grid(const VisibilityGrid& g, const RenderSpec& spec);

// Inverse of the PBM path of render_grid (non-inverted): rebuilds the grid
// for the given exponent b.
VisibilityGrid parse_pbm(unsigned b, const std::string& text);

}  // namespace lsight
