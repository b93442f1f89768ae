#ifndef QHDIST_QH_CHECKS_HPP
#define QHDIST_QH_CHECKS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "annulus.hpp"
#include "beta.hpp"
#include "geodesic_solver.hpp"
#include "mobius.hpp"
#include "quasihyperbolic.hpp"

namespace qhdist {

// k interval: closed form where the domain is a punctured plane or a half-plane, grid solver otherwise.
inline DistanceInterval k_interval(const Domain &D, cplx a, cplx b, int resolution = default_resolution)
{
  if (!D.contains(a) || !D.contains(b))
    throw std::domain_error("k_interval: points outside the domain");
  if (D.region() == Domain::Region::plane && D.punctures().size() == 1 && D.infinity_on_boundary()) {
    cplx p = D.punctures().front();
    double k = k_star_exact(a - p, b - p);
    return make_interval(k, "punctured plane exact", k, "punctured plane exact");
  }
  if (D.region() == Domain::Region::half_plane && D.punctures().empty()) {
    cplx n = D.half_plane_normal(), q = D.half_plane_point();
    double da = std::real((a - q) * std::conj(n)), db = std::real((b - q) * std::conj(n));
    double k = std::acosh(1.0 + std::norm(a - b) / (2.0 * da * db));
    return make_interval(k, "half-plane exact", k, "half-plane exact");
  }
  return k_numeric(D, a, b, resolution).distance;
}

inline bool is_identity(const MobiusMap &T)
{
  return std::abs(T.b()) < 1e-15 && std::abs(T.c()) < 1e-15 && std::abs(T.a() - T.d()) < 1e-15;
}

// Image of a punctured-plane domain; the image must stay inside C.
inline Domain mobius_image(const MobiusMap &T, const Domain &D)
{
  if (is_identity(T))
    return D;
  if (D.region() != Domain::Region::plane)
    throw std::invalid_argument("mobius_image: only finite-complement domains are supported");
  auto pole = T.pole();
  bool pole_on_boundary = !pole;
  if (pole)
    for (cplx p : D.punctures())
      pole_on_boundary = pole_on_boundary || std::abs(p - *pole) <= 1e-14 * (1.0 + std::abs(p));
  if (pole && !pole_on_boundary)
    throw std::domain_error("mobius_image: T sends a point of the domain to infinity");
  if (!pole && !D.infinity_on_boundary())
    throw std::domain_error("mobius_image: T fixes infinity, which lies in the domain");
  std::vector<cplx> img;
  bool inf = false;
  for (cplx p : D.punctures()) {
    ExtPoint w = T.apply(ExtPoint(p));
    if (w.is_infinity())
      inf = true;
    else
      img.push_back(w.value());
  }
  if (D.infinity_on_boundary()) {
    ExtPoint w = T.apply(ExtPoint::infinity());
    if (w.is_infinity())
      inf = true;
    else
      img.push_back(w.value());
  }
  return Domain::finite_complement(img, inf);
}

struct MobiusPairCheck {
  cplx a, b;
  DistanceInterval k, k_image;
  double ratio; // midpoint ratio k'/k
  bool violation;
};

struct MobiusReport {
  std::vector<MobiusPairCheck> pairs;
  int violations = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
};

inline MobiusReport check_mobius_quasi_invariance(const MobiusMap &T, const Domain &D,
                                                  const std::vector<std::pair<cplx, cplx>> &pairs,
                                                  int resolution = default_resolution)
{
  Domain E = mobius_image(T, D);
  MobiusReport rep;
  for (auto [a, b] : pairs) {
    DistanceInterval k = k_interval(D, a, b, resolution);
    DistanceInterval kp = k_interval(E, T(a), T(b), resolution);
    bool bad = kp.lower > 2.0 * k.upper || kp.upper < 0.5 * k.lower;
    double ratio = k.mid() > 0.0 ? kp.mid() / k.mid() : 1.0;
    rep.pairs.push_back({a, b, k, kp, ratio, bad});
    rep.violations += bad;
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  return rep;
}

// distance from each vertex of one side to the other two sides, measured by the certified lower bound
inline double thin_triangle_defect(const Domain &D, cplx a, cplx b, cplx c, int resolution = default_resolution)
{
  if (a == b && b == c)
    return 0.0;
  std::vector<Polyline> side;
  for (auto [x, y] : {std::pair{a, b}, std::pair{b, c}, std::pair{c, a}})
    side.push_back(k_numeric(D, x, y, resolution).path);
  double defect = 0.0;
  for (int s = 0; s < 3; ++s)
    for (cplx x : side[s].points()) {
      double d = std::numeric_limits<double>::infinity();
      for (int t = 0; t < 3 && d > defect; ++t) {
        if (t == s)
          continue;
        for (cplx y : side[t].points())
          d = std::min(d, k_lower_bound(D, x, y).value);
      }
      defect = std::max(defect, d);
    }
  return defect;
}

struct AnnulusSampleCheck {
  cplx a, b;
  double k_star;
  DistanceInterval k;
  double ratio; // k midpoint over k_star
  bool consistent;
};

struct AnnulusComparisonReport {
  std::vector<AnnulusSampleCheck> pairs;
  int delta_violations = 0;
  int k_violations = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
};

inline AnnulusComparisonReport check_annulus_k_comparison(const Domain &D, const Annulus &A,
                                                          const std::vector<std::pair<cplx, cplx>> &samples,
                                                          int resolution = default_resolution)
{
  cplx c = A.center();
  double r = A.inner_radius(), R = A.outer_radius();
  if (!(R > 4.0 * r))
    throw std::invalid_argument("check_annulus_k_comparison: need R/r > 4");
  if (D.contains(c))
    throw std::invalid_argument("check_annulus_k_comparison: annulus center lies in the domain");
  if (!annulus_in_domain(D, A))
    throw std::invalid_argument("check_annulus_k_comparison: annulus is not contained in the domain");
  AnnulusComparisonReport rep;
  for (auto [a, b] : samples) {
    for (cplx z : {a, b}) {
      double s = std::abs(z - c);
      if (!(s > 2.0 * r && s < 0.5 * R))
        throw std::invalid_argument("check_annulus_k_comparison: sample outside the middle band");
      double d = D.delta(z);
      if (d < 0.5 * s || d > s)
        ++rep.delta_violations;
    }
    double ks = k_star_exact(a - c, b - c);
    DistanceInterval k = k_interval(D, a, b, resolution);
    bool ok = k.upper >= ks * (1 - 1e-12) && k.lower <= 2.0 * ks * (1 + 1e-12);
    double ratio = ks > 0.0 ? k.mid() / ks : 1.0;
    rep.pairs.push_back({a, b, ks, k, ratio, ok});
    rep.k_violations += !ok;
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  return rep;
}

} // namespace qhdist

#endif // QHDIST_QH_CHECKS_HPP
