#ifndef QHDIST_HYPERBOLIC_HPP
#define QHDIST_HYPERBOLIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chi_arc.hpp"
#include "constants.hpp"
#include "beta.hpp"
#include "density.hpp"
#include "domain.hpp"
#include "interval.hpp"
#include "paths.hpp"

namespace qhdist {

inline double h_disk_exact(cplx a, cplx b)
{
  if (!(std::abs(a) < 1.0 && std::abs(b) < 1.0))
    throw std::domain_error("h_disk_exact: points outside the unit disk");
  double x = std::abs(a - b) / std::abs(1.0 - std::conj(a) * b);
  return 2.0 * std::atanh(std::min(x, 1.0));
}

inline double h_halfplane_exact(cplx a, cplx b)
{
  if (!(a.imag() > 0.0 && b.imag() > 0.0))
    throw std::domain_error("h_halfplane_exact: points outside the upper half-plane");
  return std::acosh(1.0 + std::norm(a - b) / (2.0 * a.imag() * b.imag()));
}

// Punctured unit disk, through the covering w = log z onto {Re w < 0}.
inline double h_punctured_disk_exact(cplx a, cplx b)
{
  double ra = std::abs(a), rb = std::abs(b);
  if (!(ra > 0.0 && ra < 1.0 && rb > 0.0 && rb < 1.0))
    throw std::domain_error("h_punctured_disk_exact: points outside the punctured disk");
  double la = std::log(ra), lb = std::log(rb);
  double t = principal_arg(b / a);
  return std::acosh(1.0 + ((la - lb) * (la - lb) + t * t) / (2.0 * la * lb));
}

inline double h_exterior_disk_exact(cplx a, cplx b)
{
  if (!(std::abs(a) > 1.0 && std::abs(b) > 1.0))
    throw std::domain_error("h_exterior_disk_exact: points inside the closed unit disk");
  return h_punctured_disk_exact(1.0 / a, 1.0 / b);
}

inline double h_upper_Dstar(cplx a, cplx b)
{
  double ra = std::abs(a), rb = std::abs(b);
  if (!(ra > 0.0 && ra < 1.0 && rb > 0.0 && rb < 1.0))
    throw std::domain_error("h_upper_Dstar: points outside the punctured disk");
  return std::abs(std::log(std::log(1.0 / ra) / std::log(1.0 / rb))) + C1;
}

inline double h_upper_Dextstar(cplx a, cplx b)
{
  double ra = std::abs(a), rb = std::abs(b);
  if (!(ra > 1.0 && rb > 1.0) || !std::isfinite(ra) || !std::isfinite(rb))
    throw std::domain_error("h_upper_Dextstar: need |a|, |b| > 1");
  return std::abs(std::log(std::log(ra) / std::log(rb))) + C1;
}

// Lower bound for the distance in C\{0,1}; invalid when |a| < 1 < |b| (or the reverse).
inline Estimate h01_lower(cplx a, cplx b)
{
  double ra = std::abs(a), rb = std::abs(b);
  if (!(ra > 0.0 && rb > 0.0))
    throw std::domain_error("h01_lower: zero argument");
  if (ra > rb)
    std::swap(ra, rb);
  if (ra >= 1.0)
    return {std::log((kappa + std::log(rb)) / (kappa + std::log(ra))), true};
  if (rb <= 1.0)
    return {std::log((kappa + std::log(1.0 / ra)) / (kappa + std::log(1.0 / rb))), true};
  return {0.0, false};
}

// Upper bound in C\{0,-a,-b} between a and b.
inline double h_upper_three_punct(double a, double b)
{
  if (!(a > 0.0 && b > a) || !(std::log(b / a) > 2.0))
    throw std::domain_error("h_upper_three_punct: need 0 < a < b with log(b/a) > 2");
  return 4.0 + pi * std::log(0.5 * std::log(b / a));
}

struct HStrategy {
  enum class Kind { automatic, punctured_disk, bp_arc };
  Kind kind = Kind::automatic;
  cplx p{0.0}; // punctured_disk: center and radius of D*(p;R)
  double R = 0.0;

  static HStrategy punctured_disk(cplx p, double R) { return {Kind::punctured_disk, p, R}; }
  static HStrategy bp_arc() { return {Kind::bp_arc, 0.0, 0.0}; }
};

namespace detail {

struct Candidate {
  double value;
  std::string source;
};

// distance from the puncture p to the rest of the boundary
inline double isolation_radius(const Domain &D, cplx p)
{
  double r = std::numeric_limits<double>::infinity();
  for (const auto &K : D.components()) {
    if (auto *P = std::get_if<PointComponent>(&K); P && P->p == p)
      continue;
    r = std::min(r, component_distance(K, p));
  }
  return r;
}

// closed form for the bare region (no punctures); throws for the plane
inline double region_h(const Domain &D, cplx a, cplx b)
{
  switch (D.region()) {
  case Domain::Region::disk_interior: {
    cplx c = D.disk_center();
    double R = D.disk_radius();
    return h_disk_exact((a - c) / R, (b - c) / R);
  }
  case Domain::Region::disk_exterior: {
    cplx c = D.disk_center();
    double R = D.disk_radius();
    return h_exterior_disk_exact((a - c) / R, (b - c) / R);
  }
  case Domain::Region::half_plane: {
    cplx rot = cplx(0.0, 1.0) / D.half_plane_normal();
    cplx p = D.half_plane_point();
    return h_halfplane_exact((a - p) * rot, (b - p) * rot);
  }
  default: throw std::logic_error("region_h: plane region");
  }
}

inline std::string fmt_point(cplx z)
{
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

// Pointwise upper bound for the hyperbolic density: the minimum over the inscribed disk D(z;delta(z)),
// punctured disks D*(p;R_p) inside Omega that contain z, and the BP upper bound where beta > 0.
class InnerDensity {
public:
  explicit InnerDensity(const Domain &D, bool with_disks = true) : D_(D), disks_(with_disks)
  {
    for (cplx p : D.punctures())
      iso_.emplace_back(p, isolation_radius(D, p));
  }

  double operator()(cplx z) const
  {
    BetaResult b = beta(D_, z);
    double v = b.value > 0.0 ? (pi / 2.0) / (b.delta * b.value) : std::numeric_limits<double>::infinity();
    if (disks_) {
      v = std::min(v, 2.0 / b.delta);
      for (auto [p, R] : iso_) {
        double r = std::abs(z - p);
        if (r < R)
          v = std::min(v, 1.0 / (r * std::log(R / r)));
      }
    }
    if (!std::isfinite(v))
      throw std::domain_error("inner density: no finite bound at this point");
    return v;
  }

private:
  const Domain &D_;
  bool disks_;
  std::vector<std::pair<cplx, double>> iso_;
};

// Integral of an inner density along the segment and along chi-arcs about the nearest punctures.
inline std::optional<Candidate> path_upper(const Domain &D, cplx a, cplx b, bool with_disks)
{
  InnerDensity rho(D, with_disks);
  const std::string what = with_disks ? "inner-domain density" : "BP upper density";
  std::optional<Candidate> best;
  auto try_path = [&](const Polyline &g, const std::string &label) {
    for (cplx z : g.points())
      if (!D.contains(z))
        return;
    try {
      double v = rho_length(g, rho, 1e-7);
      if (std::isfinite(v) && (!best || v < best->value))
        best = Candidate{v, what + " along " + label};
    } catch (const std::domain_error &) {
    }
  };
  try_path(Polyline::cleaned({a, b}), "segment");
  std::vector<cplx> near = D.punctures();
  cplx mid = 0.5 * (a + b);
  std::sort(near.begin(), near.end(), [&](cplx x, cplx y) { return std::abs(x - mid) < std::abs(y - mid); });
  if (near.size() > 3)
    near.resize(3);
  for (cplx o : near)
    if (a != o && b != o) {
      Polyline g = chi_arc(a - o, b - o);
      std::vector<cplx> pts;
      for (cplx z : g.points())
        pts.push_back(z + o);
      try_path(Polyline::cleaned(pts), "chi-arc about " + fmt_point(o));
    }
  return best;
}

} // namespace detail

// Hyperbolic distance enclosure by domain monotonicity: inner domains with a closed form (or the BP upper
// density along a chi-arc) give the upper end, twice-punctured planes containing Omega give the lower end.
inline DistanceInterval h_interval(const Domain &D, cplx a, cplx b, HStrategy strategy = {})
{
  D.require_hyperbolic("h_interval");
  if (!D.contains(a) || !D.contains(b))
    throw std::domain_error("h_interval: points outside the domain");
  if (a == b)
    return make_interval(0.0, "identical points", 0.0, "identical points");

  std::vector<detail::Candidate> uppers;
  const bool bare = D.punctures().empty() && D.region() != Domain::Region::plane;
  if (strategy.kind == HStrategy::Kind::automatic || strategy.kind == HStrategy::Kind::punctured_disk) {
    std::vector<std::pair<cplx, double>> disks;
    if (strategy.kind == HStrategy::Kind::punctured_disk) {
      if (!(strategy.R > 0.0) || strategy.R > detail::isolation_radius(D, strategy.p) * (1.0 + 1e-12) ||
          std::find(D.punctures().begin(), D.punctures().end(), strategy.p) == D.punctures().end())
        throw std::domain_error("h_interval: punctured disk is not contained in the domain");
      disks.emplace_back(strategy.p, strategy.R);
    } else {
      for (cplx p : D.punctures())
        disks.emplace_back(p, detail::isolation_radius(D, p));
    }
    for (auto [p, R] : disks) {
      if (!std::isfinite(R) || !(std::abs(a - p) < R && std::abs(b - p) < R))
        continue;
      uppers.push_back({h_punctured_disk_exact((a - p) / R, (b - p) / R),
                        "punctured disk D*(" + detail::fmt_point(p) + ";" + std::to_string(R) + ") closed form"});
    }
    if (strategy.kind == HStrategy::Kind::punctured_disk && uppers.empty())
      throw std::domain_error("h_interval: points outside the requested punctured disk");
  }
  if (strategy.kind == HStrategy::Kind::automatic) {
    if (bare)
      uppers.push_back({detail::region_h(D, a, b), "region closed form"});
    // round disks inside Omega around the endpoints and their midpoint
    for (cplx c : {a, b, 0.5 * (a + b)}) {
      if (!D.contains(c))
        continue;
      double r = D.delta(c);
      if (std::isfinite(r) && std::abs(a - c) < r && std::abs(b - c) < r)
        uppers.push_back({h_disk_exact((a - c) / r, (b - c) / r), "inscribed disk D(" + detail::fmt_point(c) + ")"});
    }
  }
  if ((strategy.kind == HStrategy::Kind::automatic && !bare) || strategy.kind == HStrategy::Kind::bp_arc) {
    if (auto c = detail::path_upper(D, a, b, strategy.kind == HStrategy::Kind::automatic))
      uppers.push_back(*c);
  }
  if (uppers.empty())
    throw std::domain_error("h_interval: no admissible inner domain");
  auto up = *std::min_element(uppers.begin(), uppers.end(),
                              [](const auto &x, const auto &y) { return x.value < y.value; });

  detail::Candidate lo{0.0, "trivial"};
  if (D.region() != Domain::Region::plane) {
    double v = detail::region_h(D, a, b);
    if (v > lo.value)
      lo = {v, bare ? "region closed form" : "containing region closed form"};
  }
  // boundary points near the endpoints; each ordered pair normalized to {0,1}
  std::vector<cplx> pts;
  for (cplx z : {a, b}) {
    std::vector<cplx> near = D.punctures();
    std::sort(near.begin(), near.end(), [&](cplx x, cplx y) { return std::abs(x - z) < std::abs(y - z); });
    if (near.size() > 6)
      near.resize(6);
    for (const auto &K : D.components())
      if (!std::holds_alternative<PointComponent>(K))
        near.push_back(component_nearest(K, z));
    for (cplx p : near)
      if (std::find(pts.begin(), pts.end(), p) == pts.end())
        pts.push_back(p);
  }
  for (cplx p : pts)
    for (cplx q : pts) {
      if (p == q)
        continue;
      Estimate e = h01_lower((a - p) / (q - p), (b - p) / (q - p));
      if (e.valid && e.value > lo.value)
        lo = {e.value, "C\\{0,1} lower bound normalized at " + detail::fmt_point(p) + ", " + detail::fmt_point(q)};
    }
  return make_interval(lo.value, lo.source, up.value, up.source);
}

} // namespace qhdist

#endif // QHDIST_HYPERBOLIC_HPP
