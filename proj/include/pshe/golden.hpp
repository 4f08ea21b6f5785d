#pragma once

#include <cmath>
#include <utility>

namespace pshe {

struct LineMaximum {
  double x;
  double value;
};

/// Golden-section search for the maximum of a unimodal f on [a, b].
/// Stops once the bracket is narrower than `tol`.
template <class F>
LineMaximum golden_section_maximize(F&& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? LineMaximum{c, fc} : LineMaximum{d, fd};
}

}  // namespace pshe
