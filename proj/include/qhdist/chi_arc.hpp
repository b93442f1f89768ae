#ifndef QHDIST_CHI_ARC_HPP
#define QHDIST_CHI_ARC_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "polyline.hpp"

namespace qhdist {

// angular step: at most one degree, and chord sagitta below 1e-6 |a|
inline const double chi_arc_step = std::min(pi / 180.0, 2.0 * std::acos(1.0 - 1e-6));

// Circular arc from a to c = (|a|/|b|) b on |z| = |a|, then the radial segment [c, b].
// Diametrically opposite endpoints take the counterclockwise semicircle.
inline Polyline chi_arc(cplx a, cplx b)
{
  if (a == cplx(0.0) || b == cplx(0.0))
    throw std::invalid_argument("chi_arc: endpoints must be nonzero");
  bool swapped = std::abs(a) > std::abs(b);
  if (swapped)
    std::swap(a, b);
  const double ra = std::abs(a);
  const cplx c = (ra / std::abs(b)) * b;
  double dt = principal_arg(c / a);
  if (std::abs(dt) > pi - 1e-12)
    dt = pi;
  int n = static_cast<int>(std::ceil(std::abs(dt) / chi_arc_step));
  std::vector<cplx> pts{a};
  for (int k = 1; k < n; ++k)
    pts.push_back(a * std::polar(1.0, dt * k / n));
  if (n > 0)
    pts.push_back(c);
  pts.push_back(b);
  Polyline g = Polyline::cleaned(pts);
  return swapped ? g.reversed() : g;
}

} // namespace qhdist

#endif // QHDIST_CHI_ARC_HPP
