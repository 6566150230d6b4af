#pragma once
// Zero localization for the leading transfer-matrix eigenvalue branch.
//
// A rectangle in the complex spectral-parameter plane is covered by a uniform
// grid; each grid cell is tested with a winding-number count of the function
// argument around its boundary, and flagged cells seed Newton refinements
// that use a central-difference derivative.  Refined candidates are
// deduplicated and checked against the two symmetries the branch eigenvalue
// obeys: complex conjugation and reflection about Re = -3/2.

#include <complex>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include <sp4/algebra.hpp>

namespace sp4 {

struct ZeroScanOptions {
  double re_lo = -3.4;
  double re_hi = 0.4;
  double im_lo = -2.0;
  double im_hi = 2.0;
  double grid_step = 0.05;
  double derivative_step = 1e-4;  // central-difference step for the Newton slope
  double dedupe_tol = 1e-4;       // candidates closer than this are merged
  double residual_factor = 1e-6;  // accept when |f| <= factor * local scale
  int max_newton_iterations = 60;
};

struct ZeroCandidate {
  cplx lambda;               // refined location
  double abs_value = 0.0;    // |f| at the refined location
  double local_scale = 0.0;  // max |f| over the corners of the seeding cell
  int iterations = 0;
  bool converged = false;
};

struct ZeroScanResult {
  std::vector<ZeroCandidate> zeros;        // converged, deduplicated, sorted by Im
  std::vector<ZeroCandidate> unconverged;  // flagged cells that did not settle
  int flagged_cells = 0;                   // cells with nonzero boundary winding
  double conjugation_residual = 0.0;  // max over zeros of dist(conj(z), zero set)
  double crossing_residual = 0.0;     // max over zeros of dist(-3 - z, zero set)
};

// Scan an arbitrary analytic function on the rectangle.
ZeroScanResult scan_zeros(const std::function<cplx(cplx)>& f,
                          const ZeroScanOptions& opt = {});

// Scan the leading eigenvalue branch of the chosen transfer family (rep 4 or
// 5) at chain length L, using its exact polynomial evaluator.
ZeroScanResult scan_branch_zeros(int rep, int L, const ZeroScanOptions& opt = {});

// Distribution of the zeros relative to the critical line Re = -3/2.
struct StripReport {
  int rep = 0;
  int L = 0;
  ZeroScanResult scan;
  int zeros_on_critical_line = 0;   // |Re z + 3/2| <= 1e-6
  double max_line_deviation = 0.0;  // max over zeros of |Re z + 3/2|
  // Widest open vertical strips free of zeros on each side of the line,
  // bounded by the scan rectangle: (left edge, right edge) of the strip.
  std::pair<double, double> widest_free_left{0.0, 0.0};
  std::pair<double, double> widest_free_right{0.0, 0.0};
};

StripReport strip_report(int rep, int L, const ZeroScanOptions& opt = {});

// re,im,abs_residual rows with 17 significant digits.
void write_zeros_csv(std::ostream& os, const ZeroScanResult& r);
// Self-contained gnuplot script with an inline data block.
void write_zeros_gnuplot(std::ostream& os, const ZeroScanResult& r);

}  // namespace sp4
