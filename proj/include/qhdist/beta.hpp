#ifndef QHDIST_BETA_HPP
#define QHDIST_BETA_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "annulus.hpp"
#include "constants.hpp"
#include "domain.hpp"
#include "interval.hpp"

namespace qhdist {

// A lies in Omega (bounded annuli only for disk and half-plane regions).
inline bool annulus_in_domain(const Domain &D, const Annulus &A)
{
  cplx c = A.center();
  double r = A.inner_radius(), R = A.outer_radius();
  // boundary points on the circles (up to rounding) do not count
  for (cplx p : D.punctures()) {
    double t = std::abs(p - c);
    if (t > r * (1 + 1e-12) && t < R * (1 - 1e-12))
      return false;
  }
  switch (D.region()) {
  case Domain::Region::plane: return true;
  case Domain::Region::disk_interior: return std::abs(c - D.disk_center()) + R <= D.disk_radius();
  case Domain::Region::disk_exterior: return std::abs(c - D.disk_center()) + D.disk_radius() <= r;
  case Domain::Region::half_plane:
    return std::real((c - D.half_plane_point()) * std::conj(D.half_plane_normal())) >= R;
  }
  return false;
}

// Annulus of A_Omega: inside Omega with its center in the complement.
inline bool in_annulus_family(const Domain &D, const Annulus &A)
{
  return !D.contains(A.center()) && annulus_in_domain(D, A);
}

struct BetaResult {
  double value = 0.0;
  double delta = 0.0;
  cplx witness_zeta;
  cplx witness_xi;
  std::optional<Annulus> bp_annulus;
};

namespace detail {

inline constexpr double on_piece_tol = 1e-12;

} // namespace detail

// Beardon-Pommerenke function: inf over nearest boundary points zeta and complement points xi != zeta
// of |log(|zeta - z| / |zeta - xi|)|.
inline BetaResult beta(const Domain &D, cplx z)
{
  D.require_hyperbolic("beta");
  BetaResult best;
  best.value = std::numeric_limits<double>::infinity();
  const double dz = D.delta(z);
  best.delta = dz;
  auto consider = [&](cplx zeta, double t, cplx xi) {
    double v = std::abs(std::log(dz / t));
    if (v < best.value) {
      best.value = v;
      best.witness_zeta = zeta;
      best.witness_xi = xi;
    }
  };
  for (cplx zeta : D.nearest_boundary_set(z)) {
    const double scale = std::max(1.0, std::abs(zeta));
    for (cplx p : D.punctures())
      if (std::abs(p - zeta) > detail::on_piece_tol * scale)
        consider(zeta, std::abs(p - zeta), p);
    if (D.region() == Domain::Region::plane)
      continue;
    // xi runs over the solid complement of the region; distances form an interval [lo, hi]
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    cplx u_out; // direction from zeta into the complement piece
    const cplx c = D.disk_center();
    const double R = D.disk_radius();
    switch (D.region()) {
    case Domain::Region::disk_interior: {
      cplx v = zeta - c;
      double s = std::abs(v);
      u_out = s > 0.0 ? v / s : cplx(1.0);
      lo = std::max(0.0, R - s);
      break;
    }
    case Domain::Region::disk_exterior: {
      cplx v = c - zeta;
      double s = std::abs(v);
      u_out = s > 0.0 ? v / s : cplx(1.0);
      lo = std::max(0.0, s - R);
      hi = s + R;
      break;
    }
    case Domain::Region::half_plane: {
      cplx n = D.half_plane_normal();
      u_out = -n;
      lo = std::max(0.0, std::real((zeta - D.half_plane_point()) * std::conj(n)));
      break;
    }
    default: break;
    }
    double t = std::clamp(dz, lo, hi);
    consider(zeta, t, zeta + t * u_out);
  }
  if (!std::isfinite(best.value))
    throw std::domain_error("beta: complement has no second point");
  if (best.value < 1e-15)
    best.value = 0.0;
  if (best.value > 0.0)
    best.bp_annulus = Annulus(best.witness_zeta, dz, best.value);
  return best;
}

struct BpBounds {
  double lower = 0.0;
  Estimate upper{0.0, false};
  double beta = 0.0;
  double delta = 0.0;
};

inline BpBounds bp_lambda_bounds(const Domain &D, cplx z)
{
  BetaResult b = beta(D, z);
  BpBounds r;
  r.beta = b.value;
  r.delta = b.delta;
  r.lower = 1.0 / (b.delta * (kappa + b.value));
  if (b.value > 0.0)
    r.upper = {(pi / 2.0) / (b.delta * b.value), true};
  return r;
}

} // namespace qhdist

#endif // QHDIST_BETA_HPP
