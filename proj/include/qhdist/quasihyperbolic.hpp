#ifndef QHDIST_QUASIHYPERBOLIC_HPP
#define QHDIST_QUASIHYPERBOLIC_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chi_arc.hpp"
#include "domain.hpp"
#include "interval.hpp"
#include "paths.hpp"

namespace qhdist {

inline double k_star_exact(cplx a, cplx b)
{
  if (a == cplx(0.0) || b == cplx(0.0))
    throw std::domain_error("k_star_exact: zero argument");
  cplx w = b / a;
  return std::hypot(std::log(std::abs(b) / std::abs(a)), principal_arg(w));
}

inline double k_halfplane_exact(cplx a, cplx b)
{
  if (!(a.imag() > 0.0 && b.imag() > 0.0))
    throw std::domain_error("k_halfplane_exact: points outside the upper half-plane");
  return std::acosh(1.0 + std::norm(a - b) / (2.0 * a.imag() * b.imag()));
}

struct GpBounds {
  double j = 0.0;           // log(1 + |a-b| / min delta)
  double delta_ratio = 0.0; // |log(delta(a)/delta(b))|
};

inline GpBounds gp_lower_bound(const Domain &D, cplx a, cplx b)
{
  double da = D.delta(a), db = D.delta(b);
  return {std::log1p(std::abs(a - b) / std::min(da, db)), std::abs(std::log(da / db))};
}

// log(1 + l(g)/dist(|g|, boundary)); the distance is sampled, which can only overestimate it.
inline double k_length_lower(const Polyline &g, const Domain &D, int per_segment = 8)
{
  if (g.size() < 2)
    return 0.0;
  double dist = std::numeric_limits<double>::infinity();
  const auto &p = g.points();
  for (std::size_t i = 0; i < p.size(); ++i) {
    dist = std::min(dist, D.delta(p[i]));
    if (i + 1 < p.size())
      for (int k = 1; k < per_segment; ++k)
        dist = std::min(dist, D.delta(p[i] + (static_cast<double>(k) / per_segment) * (p[i + 1] - p[i])));
  }
  // exact segment distance to point components
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    for (cplx q : D.punctures()) {
      cplx ab = p[i + 1] - p[i];
      double t = std::clamp(std::real(std::conj(ab) * (q - p[i])) / std::norm(ab), 0.0, 1.0);
      dist = std::min(dist, std::abs(p[i] + t * ab - q));
    }
  return std::log1p(g.length() / dist);
}

// Segment [z0, z1] lies in Omega (checked exactly for each boundary shape).
inline bool segment_in_domain(const Domain &D, cplx z0, cplx z1)
{
  if (!D.contains(z0) || !D.contains(z1))
    return false;
  cplx ab = z1 - z0;
  auto closest = [&](cplx q) {
    double n = std::norm(ab);
    double t = n > 0.0 ? std::clamp(std::real(std::conj(ab) * (q - z0)) / n, 0.0, 1.0) : 0.0;
    return std::abs(z0 + t * ab - q);
  };
  for (cplx q : D.punctures())
    if (closest(q) == 0.0)
      return false;
  if (D.region() == Domain::Region::disk_exterior)
    return closest(D.disk_center()) > D.disk_radius();
  return true; // plane, disk interior and half-plane are convex
}

namespace detail {

struct Labeled {
  double value;
  std::string source;
};

inline void raise(Labeled &best, double v, const std::string &src)
{
  if (v > best.value)
    best = {v, src};
}

inline std::string pt(cplx z)
{
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

inline double halfplane_k(cplx a, cplx b, double da, double db)
{
  return std::acosh(1.0 + std::norm(a - b) / (2.0 * da * db));
}

} // namespace detail

// Largest analytic lower bound for k(a, b) available for this domain.
inline detail::Labeled k_lower_bound(const Domain &D, cplx a, cplx b)
{
  detail::Labeled best{0.0, "trivial"};
  if (a == b)
    return {0.0, "identical points"};
  GpBounds g = gp_lower_bound(D, a, b);
  detail::raise(best, g.j, "Gehring-Palka j");
  detail::raise(best, g.delta_ratio, "delta ratio");
  for (cplx p : D.punctures())
    detail::raise(best, k_star_exact(a - p, b - p), "punctured plane C\\{" + detail::pt(p) + "} exact");
  switch (D.region()) {
  case Domain::Region::half_plane: {
    cplx n = D.half_plane_normal(), q = D.half_plane_point();
    double da = std::real((a - q) * std::conj(n)), db = std::real((b - q) * std::conj(n));
    detail::raise(best, detail::halfplane_k(a, b, da, db), "half-plane exact");
    break;
  }
  case Domain::Region::disk_exterior:
    detail::raise(best, k_star_exact(a - D.disk_center(), b - D.disk_center()), "punctured plane about disk center");
    break;
  case Domain::Region::disk_interior: {
    // supporting half-planes {Re((z-c) conj u) < R}
    cplx c = D.disk_center();
    double R = D.disk_radius();
    auto f = [&](double t) {
      cplx u = std::polar(1.0, t);
      return detail::halfplane_k(a, b, R - std::real((a - c) * std::conj(u)), R - std::real((b - c) * std::conj(u)));
    };
    int nbest = 0;
    double vbest = -1.0;
    const int N = 128;
    for (int k = 0; k < N; ++k) {
      double v = f(2 * pi * k / N);
      if (v > vbest)
        vbest = v, nbest = k;
    }
    double lo = 2 * pi * (nbest - 1) / N, hi = 2 * pi * (nbest + 1) / N;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 60; ++it) {
      double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
      if (f(x1) > f(x2))
        hi = x2;
      else
        lo = x1;
    }
    detail::raise(best, std::max(vbest, f(0.5 * (lo + hi))), "supporting half-plane");
    break;
  }
  default: break;
  }
  return best;
}

// Chordal analogues of the Gehring-Palka bounds for k_chi.
inline detail::Labeled k_chordal_lower_bound(const Domain &D, cplx a, cplx b)
{
  if (a == b)
    return {0.0, "identical points"};
  double ca = D.chi(a), cb = D.chi(b);
  detail::Labeled best{std::log1p(chordal_distance(a, b) / std::min(ca, cb)), "chordal Gehring-Palka j"};
  detail::raise(best, std::abs(std::log(ca / cb)), "chordal delta ratio");
  return best;
}

namespace detail {

inline std::optional<Polyline> shifted_chi_arc(cplx a, cplx b, cplx o)
{
  if (a == o || b == o)
    return std::nullopt;
  Polyline g = chi_arc(a - o, b - o);
  std::vector<cplx> pts;
  for (cplx z : g.points())
    pts.push_back(z + o);
  // translation can round the ends away
  pts.front() = a;
  pts.back() = b;
  return Polyline::cleaned(pts);
}

// logarithmic spiral about o from a to b, discretized finely
inline std::optional<Polyline> spiral(cplx a, cplx b, cplx o, double step = 0.004)
{
  if (a == o || b == o)
    return std::nullopt;
  cplx w = b - o, v = a - o;
  cplx L(std::log(std::abs(w) / std::abs(v)), principal_arg(w / v));
  int n = std::max(2, static_cast<int>(std::ceil(std::abs(L) / step)));
  std::vector<cplx> pts{a};
  for (int k = 1; k < n; ++k)
    pts.push_back(o + v * std::exp(L * (static_cast<double>(k) / n)));
  pts.push_back(b);
  return Polyline::cleaned(pts);
}

inline bool polyline_in_domain(const Domain &D, const Polyline &g)
{
  const auto &p = g.points();
  if (p.size() == 1)
    return D.contains(p[0]);
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (!segment_in_domain(D, p[i], p[i + 1]))
      return false;
  return true;
}

} // namespace detail

// Cheap certified k interval: analytic lower bound, conformal length of explicit paths as upper bound.
inline DistanceInterval k_interval_fast(const Domain &D, cplx a, cplx b)
{
  if (!D.contains(a) || !D.contains(b))
    throw std::domain_error("k_interval_fast: points outside the domain");
  if (a == b)
    return make_interval(0.0, "identical points", 0.0, "identical points");
  auto lo = k_lower_bound(D, a, b);
  auto rho = [&](cplx z) { return 1.0 / D.delta(z); };
  double up = std::numeric_limits<double>::infinity();
  std::string src = "none";
  auto consider = [&](const std::optional<Polyline> &g, const std::string &label) {
    if (!g || !detail::polyline_in_domain(D, *g))
      return;
    double v = rho_length(*g, rho, 1e-10);
    if (v < up)
      up = v, src = label;
  };
  consider(Polyline::cleaned({a, b}), "segment");
  std::vector<cplx> near = D.punctures();
  if (D.region() == Domain::Region::disk_exterior)
    near.push_back(D.disk_center());
  cplx mid = 0.5 * (a + b);
  std::sort(near.begin(), near.end(), [&](cplx x, cplx y) { return std::abs(x - mid) < std::abs(y - mid); });
  if (near.size() > 3)
    near.resize(3);
  for (cplx o : near) {
    consider(detail::shifted_chi_arc(a, b, o), "chi-arc about " + detail::pt(o));
    consider(detail::spiral(a, b, o), "spiral about " + detail::pt(o));
  }
  if (!std::isfinite(up))
    throw std::domain_error("k_interval_fast: no admissible comparison path");
  // quadrature error of the path length
  if (lo.value > up && lo.value <= up * (1 + 1e-8))
    up = lo.value;
  return make_interval(lo.value, lo.source, up, "conformal length of " + src);
}

} // namespace qhdist

#endif // QHDIST_QUASIHYPERBOLIC_HPP
