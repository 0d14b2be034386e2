// One-dimensional quadrature: adaptive Simpson with error control and plain
// composite Simpson on a fixed panel grid.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace geoprob {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // sum of local |S2 - S1| / 15 estimates
};

struct AdaptiveSimpsonOptions {
  double abs_tol = 1e-12;
  int max_depth = 40;
};

namespace detail {

template <typename F>
void simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                  double tol, int depth, QuadratureResult& acc) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    acc.value += left + right + delta / 15.0;
    acc.error += std::abs(delta) / 15.0;
    return;
  }
  simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, acc);
  simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, acc);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction. Starts from four panels so that
/// integrands vanishing at the midpoint are not mistaken for converged.
template <typename F>
QuadratureResult adaptive_simpson(const F& f, double a, double b,
                                  AdaptiveSimpsonOptions opts = {}) {
  QuadratureResult acc;
  if (a == b) return acc;
  constexpr int kInitialPanels = 4;
  const double h = (b - a) / kInitialPanels;
  double x0 = a;
  double f0 = f(a);
  for (int i = 0; i < kInitialPanels; ++i) {
    const double x1 = (i + 1 == kInitialPanels) ? b : a + (i + 1) * h;
    const double xm = 0.5 * (x0 + x1);
    const double fm = f(xm);
    const double f1 = f(x1);
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    detail::simpson_step(f, x0, x1, f0, fm, f1, whole, opts.abs_tol / kInitialPanels,
                         opts.max_depth, acc);
    x0 = x1;
    f0 = f1;
  }
  return acc;
}

/// Composite Simpson over `panels` equal panels (each panel uses its midpoint).
template <typename F>
double composite_simpson(const F& f, double a, double b, std::size_t panels) {
  if (panels == 0) throw std::invalid_argument("composite_simpson: panels must be positive");
  const double h = (b - a) / static_cast<double>(panels);
  double ends = f(a) + f(b);
  double mids = 0.0;
  double inner = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    const double x0 = a + h * static_cast<double>(i);
    mids += f(x0 + 0.5 * h);
    if (i > 0) inner += f(x0);
  }
  return h / 6.0 * (ends + 2.0 * inner + 4.0 * mids);
}

}  // namespace geoprob
