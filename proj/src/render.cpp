#include "lattice_sight/render.hpp"

#include <sstream>
#include <stdexcept>

namespace lsight {

namespace {

using u64 = std::uint64_t;

std::string render_pbm(const VisibilityGrid& g, bool invert) {
  std::ostringstream out;
  out << "P1\n" << g.width() << ' ' << g.height() << '\n';
  for (u64 s = g.height(); s >= 1; --s) {
    for (u64 r = 1; r <= g.width(); ++r) {
      if (r > 1) out << ' ';
      out << ((g.invisible(r, s) != invert) ? '1' : '0');
    }
    out << '\n';
  }
  return out.str();
}

std::string render_svg(const VisibilityGrid& g, bool invert) {
  const u64 n = g.width();
  const char* square = invert ? "white" : "black";
  const char* ground = invert ? "black" : "white";
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << n << ' ' << n
      << "\" width=\"" << n << "\" height=\"" << n << "\">\n";
  out << "  <rect width=\"" << n << "\" height=\"" << n << "\" fill=\"" << ground
      << "\"/>\n";
  for (u64 s = g.height(); s >= 1; --s) {
    for (u64 r = 1; r <= g.width(); ++r) {
      if (!g.invisible(r, s)) continue;
      // Math coordinates put (r,s) in the unit cell [r-1,r] x [s-1,s]; the
      // SVG y axis points down.
      out << "  <rect x=\"" << (r - 1) << "\" y=\"" << (n - s)
          << "\" width=\"1\" height=\"1\" fill=\"" << square << "\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

ImageFormat format_from_name(const std::string& name) {
  if (name == "pbm") return ImageFormat::pbm;
  if (name == "svg") return ImageFormat::svg;
  throw std::invalid_argument("unknown image format '" + name + "' (expected pbm or svg)");
}

std::string render_grid(const VisibilityGrid& g, const RenderSpec& spec) {
  if (g.width() != spec.n || g.height() != spec.n) {
    throw std::invalid_argument("render_grid: grid is " + std::to_string(g.width()) + "x" +
                                std::to_string(g.height()) + " but the render settings want " +
                                std::to_string(spec.n) + "x" + std::to_string(spec.n));
  }
  if (g.b() != spec.b) {
    throw std::invalid_argument("render_grid: grid exponent does not match the render settings");
  }
  switch (spec.format) {
    case ImageFormat::pbm:
      return render_pbm(g, spec.invert);
    case ImageFormat::svg:
      return render_svg(g, spec.invert);
  }
  throw std::invalid_argument("render_grid: unknown format");
}

VisibilityGrid parse_pbm(unsigned b, const std::string& text) {
  std::istringstream in(text);
  std::string token;
  // Tokenizer that drops PBM comments ('#' to end of line).
  const auto next = [&](std::string& t) -> bool {
    while (in >> t) {
      if (t.front() != '#') return true;
      std::string rest;
      std::getline(in, rest);
    }
    return false;
  };
  if (!next(token) || token != "P1") {
    throw std::invalid_argument("parse_pbm: expected a plain P1 header");
  }
  u64 width = 0, height = 0;
  std::string ws, hs;
  if (!next(ws) || !next(hs)) throw std::invalid_argument("parse_pbm: missing dimensions");
  try {
    width = std::stoull(ws);
    height = std::stoull(hs);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_pbm: bad dimensions");
  }
  if (width < 1 || height < 1 || width > (u64{1} << 20) || height > (u64{1} << 20)) {
    throw std::invalid_argument("parse_pbm: unsupported dimensions");
  }
  VisibilityGrid g(b, width, height);
  for (u64 row = 0; row < height; ++row) {
    const u64 s = height - row;  // row s = height comes first
    for (u64 r = 1; r <= width; ++r) {
      if (!next(token) || (token != "0" && token != "1")) {
        throw std::invalid_argument("parse_pbm: expected a 0/1 bit");
      }
      if (token == "1") g.mark_invisible(r, s);
    }
  }
  return g;
}

}  // namespace lsight
