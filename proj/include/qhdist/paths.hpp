#ifndef QHDIST_PATHS_HPP
#define QHDIST_PATHS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "domain.hpp"
#include "polyline.hpp"

namespace qhdist {

namespace detail {

// Adaptive composite midpoint on t in [t0, t1] of rho(a + t (b - a)) |b - a|.
template <class F>
double midpoint_adaptive(const F &rho, cplx a, cplx ab, double t0, double t1, double coarse, double tol,
                         int depth)
{
  const double L = std::abs(ab);
  double tm = 0.5 * (t0 + t1);
  double h = t1 - t0;
  double left = 0.5 * h * L * rho(a + (t0 + 0.25 * h) * ab);
  double right = 0.5 * h * L * rho(a + (t0 + 0.75 * h) * ab);
  double fine = left + right;
  if (std::abs(fine - coarse) <= tol * std::abs(fine) || depth >= 40)
    return fine + (fine - coarse) / 3.0;
  return midpoint_adaptive(rho, a, ab, t0, tm, left, tol, depth + 1) +
         midpoint_adaptive(rho, a, ab, tm, t1, right, tol, depth + 1);
}

} // namespace detail

namespace detail {

// breakpoints in (0, 1/2] graded geometrically towards t = 0 while rho keeps growing there
template <class F>
void graded_breaks(const F &rho, cplx e, cplx em, std::vector<double> &out)
{
  double re = rho(e);
  double t = 0.5;
  out.push_back(t);
  for (int k = 0; k < 60 && rho(e + 0.5 * t * em) < 0.5 * re; ++k) {
    t *= 0.5;
    out.push_back(t);
  }
}

} // namespace detail

template <class F>
double rho_segment(const F &rho, cplx a, cplx b, double tol = 1e-10)
{
  cplx ab = b - a;
  if (std::abs(ab) == 0.0)
    return 0.0;
  // 8 base panels, refined geometrically towards an endpoint where rho blows up
  std::vector<double> ta, tb, br;
  detail::graded_breaks(rho, a, ab, ta);
  detail::graded_breaks(rho, b, -ab, tb);
  br.push_back(0.0);
  for (auto it = ta.rbegin(); it != ta.rend(); ++it)
    if (*it < 0.125)
      br.push_back(*it);
  for (int i = 1; i < 8; ++i)
    br.push_back(i / 8.0);
  for (double t : tb)
    if (t < 0.125)
      br.push_back(1.0 - t);
  br.push_back(1.0);
  double s = 0.0;
  for (std::size_t i = 1; i < br.size(); ++i) {
    double t0 = br[i - 1], t1 = br[i];
    if (!(t1 > t0))
      continue;
    double coarse = (t1 - t0) * std::abs(ab) * rho(a + 0.5 * (t0 + t1) * ab);
    s += detail::midpoint_adaptive(rho, a, ab, t0, t1, coarse, tol, 0);
  }
  return s;
}

// Conformal length of a polyline; rho throws for points outside its domain.
template <class F>
double rho_length(const Polyline &g, const F &rho, double tol = 1e-10)
{
  double s = 0.0;
  const auto &p = g.points();
  for (std::size_t i = 1; i < p.size(); ++i)
    s += rho_segment(rho, p[i - 1], p[i], tol);
  return s;
}

struct UniformArcReport {
  double quasiconvexity_ratio = 0.0; // l(g) / |a-b|
  double cone_ratio = 0.0;           // max over samples of min(l(g[z,a]), l(g[z,b])) / delta(z)
  bool pass = false;
};

inline UniformArcReport check_uniform_arc(const Polyline &g, const Domain &D, double C, int per_segment = 16)
{
  UniformArcReport r;
  const double L = g.length();
  const double chord = std::abs(g.back() - g.front());
  r.quasiconvexity_ratio = chord > 0.0 ? L / chord : (L > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  auto cum = g.arclengths();
  const auto &p = g.points();
  auto probe = [&](cplx z, double s) {
    double m = std::min(s, L - s);
    r.cone_ratio = std::max(r.cone_ratio, m / D.delta(z));
  };
  probe(p[0], 0.0);
  for (std::size_t i = 1; i < p.size(); ++i)
    for (int k = 1; k <= per_segment; ++k) {
      double t = static_cast<double>(k) / per_segment;
      probe(p[i - 1] + t * (p[i] - p[i - 1]), cum[i - 1] + t * (cum[i] - cum[i - 1]));
    }
  r.pass = r.quasiconvexity_ratio <= C * (1.0 + 1e-12) && r.cone_ratio <= C * (1.0 + 1e-12);
  return r;
}

} // namespace qhdist

#endif // QHDIST_PATHS_HPP
