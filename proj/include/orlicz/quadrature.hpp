#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace orlicz {

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole,
                                   double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, m, fa, flm, fm);
  const double right = simpson(f, m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson on a finite window. `tol` is treated as an absolute
// tolerance for the window; callers set it from a relative target.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 40) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = detail::simpson(f, a, b, fa, fm, fb);
  const double scaled = std::max(tol, std::abs(whole) * 1e-12);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, scaled, max_depth);
}

// Integral over (0, b] of a function with an integrable singularity at 0:
// geometric window shrink toward the origin, stopping once window
// contributions fall below rel_tol of the running total.
inline double integrate_from_zero(const std::function<double(double)>& f, double b,
                                  double rel_tol = 1e-9) {
  if (!(b > 0.0)) return 0.0;
  double total = 0.0;
  double hi = b;
  for (int k = 0; k < 400; ++k) {
    const double lo = 0.5 * hi;
    const double piece = integrate(f, lo, hi, rel_tol * std::max(1.0, std::abs(total)) * 1e-3);
    total += piece;
    hi = lo;
    if (hi < 1e-300) break;
    if (k > 8 && std::abs(piece) <= rel_tol * std::max(std::abs(total), 1e-300)) break;
  }
  return total;
}

}  // namespace orlicz
