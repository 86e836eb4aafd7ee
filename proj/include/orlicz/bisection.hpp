#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace orlicz {

// Smallest x in [lo, hi] with pred(x) true, assuming pred is monotone
// (false on the left of the transition, true on the right). The bracket
// must satisfy !pred(lo) and pred(hi); callers are responsible for
// growing a valid bracket first.
template <class Pred>
double bisect_first_true(Pred&& pred, double lo, double hi, double rel_tol = 1e-12) {
  double a = lo, b = hi;
  for (int i = 0; i < 4000; ++i) {
    if (b - a <= rel_tol * std::max(1.0, std::abs(b))) break;
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;  // bracket at machine resolution
    if (pred(m)) b = m; else a = m;
  }
  return b;
}

// Same transition search but bisecting in log space; requires 0 < lo < hi.
// Suited to brackets spanning many orders of magnitude.
template <class Pred>
double bisect_first_true_log(Pred&& pred, double lo, double hi, double rel_tol = 1e-12) {
  double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < 4000; ++i) {
    if (b - a <= rel_tol) break;
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    if (pred(std::exp(m))) b = m; else a = m;
  }
  return std::exp(b);
}

// Golden-section maximization of a unimodal function on [a, b].
// Ties resolve toward the left end of the final bracket.
template <class F>
double golden_max(F&& f, double a, double b, double rel_tol = 1e-13) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 200; ++i) {
    if (b - a <= rel_tol * std::max(1.0, std::abs(b))) break;
    if (f1 >= f2) {  // >= keeps ties on the smaller argument
      b = x2;
      x2 = x1; f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2; f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 >= f2 ? x1 : x2;
}

}  // namespace orlicz
