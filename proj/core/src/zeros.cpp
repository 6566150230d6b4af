#include <sp4/zeros.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <sp4/spectral.hpp>

namespace sp4 {

namespace {

// Sum of principal argument increments of f around the cell with corner
// values f00 (lower left), f10, f11, f01, walked counterclockwise.  A simple
// zero inside contributes +-2 pi; regular cells contribute ~0.
double boundary_winding(cplx f00, cplx f10, cplx f11, cplx f01) {
  const cplx vals[5] = {f00, f10, f11, f01, f00};
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (vals[k] == cplx(0.0) || vals[k + 1] == cplx(0.0))
      return 2.0 * M_PI;  // exact zero on the boundary: force a flag
    total += std::arg(vals[k + 1] / vals[k]);
  }
  return total;
}

struct NewtonOutcome {
  cplx z;
  double abs_value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool settled = false;
};

NewtonOutcome refine(const std::function<cplx(cplx)>& f, cplx seed,
                     const ZeroScanOptions& opt) {
  NewtonOutcome out;
  out.z = seed;
  cplx fz = f(out.z);
  const double h = opt.derivative_step;
  for (int it = 0; it < opt.max_newton_iterations; ++it) {
    const cplx dfz = (f(out.z + h) - f(out.z - h)) / (2.0 * h);
    if (dfz == cplx(0.0)) break;
    const cplx step = fz / dfz;
    out.z -= step;
    fz = f(out.z);
    out.iterations = it + 1;
    if (std::abs(step) < 1e-13 * (1.0 + std::abs(out.z))) {
      out.settled = true;
      break;
    }
  }
  out.abs_value = std::abs(fz);
  return out;
}

double set_distance(cplx point, const std::vector<ZeroCandidate>& zeros) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& z : zeros) best = std::min(best, std::abs(point - z.lambda));
  return best;
}

}  // namespace

ZeroScanResult scan_zeros(const std::function<cplx(cplx)>& f, const ZeroScanOptions& opt) {
  if (opt.grid_step <= 0.0 || opt.re_hi <= opt.re_lo || opt.im_hi <= opt.im_lo)
    throw std::invalid_argument("scan_zeros: malformed scan rectangle");

  const int nx = std::max(1, static_cast<int>(std::lround((opt.re_hi - opt.re_lo) / opt.grid_step)));
  const int ny = std::max(1, static_cast<int>(std::lround((opt.im_hi - opt.im_lo) / opt.grid_step)));
  const double dx = (opt.re_hi - opt.re_lo) / nx;
  const double dy = (opt.im_hi - opt.im_lo) / ny;

  std::vector<cplx> grid(static_cast<size_t>(nx + 1) * (ny + 1));
  auto node = [&](int i, int j) { return cplx(opt.re_lo + i * dx, opt.im_lo + j * dy); };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) grid[static_cast<size_t>(j) * (nx + 1) + i] = f(node(i, j));

  ZeroScanResult result;
  std::vector<ZeroCandidate> candidates;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const cplx f00 = grid[static_cast<size_t>(j) * (nx + 1) + i];
      const cplx f10 = grid[static_cast<size_t>(j) * (nx + 1) + i + 1];
      const cplx f01 = grid[static_cast<size_t>(j + 1) * (nx + 1) + i];
      const cplx f11 = grid[static_cast<size_t>(j + 1) * (nx + 1) + i + 1];
      if (std::abs(boundary_winding(f00, f10, f11, f01)) < M_PI) continue;
      ++result.flagged_cells;

      const cplx center = node(i, j) + cplx(0.5 * dx, 0.5 * dy);
      const NewtonOutcome ref = refine(f, center, opt);
      ZeroCandidate cand;
      cand.lambda = ref.z;
      cand.abs_value = ref.abs_value;
      cand.local_scale = std::max(std::max(std::abs(f00), std::abs(f10)),
                                  std::max(std::abs(f01), std::abs(f11)));
      cand.iterations = ref.iterations;
      cand.converged = ref.abs_value <= opt.residual_factor * cand.local_scale;
      candidates.push_back(cand);
    }

  // Deduplicate: best residual first, keep candidates separated by dedupe_tol
  // and inside the scan rectangle.
  std::sort(candidates.begin(), candidates.end(),
            [](const ZeroCandidate& a, const ZeroCandidate& b) { return a.abs_value < b.abs_value; });
  for (const auto& cand : candidates) {
    if (!cand.converged) {
      result.unconverged.push_back(cand);
      continue;
    }
    const bool inside = cand.lambda.real() >= opt.re_lo - 1e-9 &&
                        cand.lambda.real() <= opt.re_hi + 1e-9 &&
                        cand.lambda.imag() >= opt.im_lo - 1e-9 &&
                        cand.lambda.imag() <= opt.im_hi + 1e-9;
    if (!inside) continue;
    bool duplicate = false;
    for (const auto& kept : result.zeros)
      if (std::abs(kept.lambda - cand.lambda) < opt.dedupe_tol) {
        duplicate = true;
        break;
      }
    if (!duplicate) result.zeros.push_back(cand);
  }
  std::sort(result.zeros.begin(), result.zeros.end(), [](const ZeroCandidate& a, const ZeroCandidate& b) {
    if (a.lambda.imag() != b.lambda.imag()) return a.lambda.imag() < b.lambda.imag();
    return a.lambda.real() < b.lambda.real();
  });

  for (const auto& z : result.zeros) {
    result.conjugation_residual =
        std::max(result.conjugation_residual, set_distance(std::conj(z.lambda), result.zeros));
    result.crossing_residual =
        std::max(result.crossing_residual, set_distance(-3.0 - z.lambda, result.zeros));
  }
  return result;
}

ZeroScanResult scan_branch_zeros(int rep, int L, const ZeroScanOptions& opt) {
  const TransferPolynomial poly(rep, L);
  return scan_zeros([&poly](cplx z) { return poly(z); }, opt);
}

StripReport strip_report(int rep, int L, const ZeroScanOptions& opt) {
  StripReport rep_out;
  rep_out.rep = rep;
  rep_out.L = L;
  rep_out.scan = scan_branch_zeros(rep, L, opt);

  const double line = -1.5;
  for (const auto& z : rep_out.scan.zeros) {
    const double dev = std::abs(z.lambda.real() - line);
    rep_out.max_line_deviation = std::max(rep_out.max_line_deviation, dev);
    if (dev <= 1e-6) ++rep_out.zeros_on_critical_line;
  }

  auto widest_gap = [](std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    std::pair<double, double> best{xs.front(), xs.front()};
    for (size_t k = 0; k + 1 < xs.size(); ++k)
      if (xs[k + 1] - xs[k] > best.second - best.first) best = {xs[k], xs[k + 1]};
    return best;
  };
  std::vector<double> left{opt.re_lo, std::min(line, opt.re_hi)};
  std::vector<double> right{std::max(line, opt.re_lo), opt.re_hi};
  for (const auto& z : rep_out.scan.zeros) {
    const double x = z.lambda.real();
    if (x <= line) left.push_back(x);
    if (x >= line) right.push_back(x);
  }
  rep_out.widest_free_left = widest_gap(left);
  rep_out.widest_free_right = widest_gap(right);
  return rep_out;
}

void write_zeros_csv(std::ostream& os, const ZeroScanResult& r) {
  os.precision(17);
  os << "re,im,abs_residual\n";
  for (const auto& z : r.zeros)
    os << z.lambda.real() << ',' << z.lambda.imag() << ',' << z.abs_value << '\n';
}

void write_zeros_gnuplot(std::ostream& os, const ZeroScanResult& r) {
  os.precision(17);
  os << "set title 'leading-branch eigenvalue zeros'\n"
        "set xlabel 'Re lambda'\n"
        "set ylabel 'Im lambda'\n"
        "set grid\n"
        "set arrow from -1.5, graph 0 to -1.5, graph 1 nohead dt 2\n"
        "plot '-' using 1:2 with points pt 7 ps 1.5 title 'zeros'\n";
  for (const auto& z : r.zeros) os << z.lambda.real() << ' ' << z.lambda.imag() << '\n';
  os << "e\n";
}

}  // namespace sp4
