#pragma once

namespace lsight {

// zeta(s) for integer s >= 2, with an explicit bound on the absolute error
// of the returned double.
struct ZetaValue {
  unsigned s = 0;
  double value = 0.0;
  double abs_error_bound = 0.0;
};

// Truncated Dirichlet series plus Euler-Maclaurin tail correction.  The
// cutoff M grows until the tail remainder drops below tol; tol below 1e-14
// is rejected because 64-bit arithmetic cannot honour it.
ZetaValue zeta_int(unsigned s, double tol = 1e-12);

// Limiting proportions of b-visible / b-invisible lattice points:
// visible = 1/zeta(b+1), invisible = 1 - visible.
struct Proportions {
  double visible = 0.0;
  double invisible = 0.0;
};

Proportions predicted_proportions(unsigned b);

}  // namespace lsight
