#ifndef QHDIST_ANNULUS_HPP
#define QHDIST_ANNULUS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "plane.hpp"

namespace qhdist {

inline constexpr double radius_tol = 1e-9;

// A(c;d,m) = {d e^-m < |z-c| < d e^m}, plus the two modulus-infinity variants.
class Annulus {
public:
  enum class Kind { bounded, punctured_disk, exterior };

  Annulus(cplx c, double d, double m) : kind_(Kind::bounded), c_(c), d_(d), m_(m)
  {
    if (!is_finite(c) || !(d > 0.0) || !std::isfinite(d) || !(m > 0.0) || !std::isfinite(m))
      throw std::invalid_argument("Annulus: need finite center, d > 0, m > 0");
  }

  static Annulus from_radii(cplx c, double r, double R)
  {
    if (!(r > 0.0) || !(R > r) || !std::isfinite(R))
      throw std::invalid_argument("Annulus::from_radii: need 0 < r < R < inf");
    return Annulus(c, std::sqrt(r * R), 0.5 * std::log(R / r));
  }

  // D*(c;R)
  static Annulus punctured_disk(cplx c, double R)
  {
    if (!(R > 0.0) || !std::isfinite(R))
      throw std::invalid_argument("Annulus::punctured_disk: need R > 0");
    return Annulus(Kind::punctured_disk, c, R);
  }

  // C \ D[c;R]
  static Annulus exterior(cplx c, double R)
  {
    if (!(R > 0.0) || !std::isfinite(R))
      throw std::invalid_argument("Annulus::exterior: need R > 0");
    return Annulus(Kind::exterior, c, R);
  }

  Kind kind() const { return kind_; }
  bool is_degenerate() const { return kind_ != Kind::bounded; }
  cplx center() const { return c_; }
  // For degenerate variants d() is the finite radius R and m() is infinite.
  double d() const { return d_; }
  double m() const { return m_; }

  double inner_radius() const
  {
    switch (kind_) {
    case Kind::bounded: return d_ * std::exp(-m_);
    case Kind::punctured_disk: return 0.0;
    case Kind::exterior: return d_;
    }
    return 0.0;
  }

  double outer_radius() const
  {
    switch (kind_) {
    case Kind::bounded: return d_ * std::exp(m_);
    case Kind::punctured_disk: return d_;
    case Kind::exterior: return std::numeric_limits<double>::infinity();
    }
    return 0.0;
  }

  double modulus() const
  {
    return kind_ == Kind::bounded ? 2.0 * m_ : std::numeric_limits<double>::infinity();
  }

  bool contains(cplx z) const
  {
    double t = std::abs(z - c_);
    return t > inner_radius() && t < outer_radius();
  }

  Annulus core(double q) const
  {
    if (kind_ == Kind::punctured_disk)
      return punctured_disk(c_, d_ * std::exp(-q));
    if (kind_ == Kind::exterior)
      return exterior(c_, d_ * std::exp(q));
    if (!(q > 0.0) || !(q < m_))
      throw std::invalid_argument("Annulus::core: need 0 < q < m");
    return Annulus(c_, d_, m_ - q);
  }

  Annulus band(double r) const
  {
    if (kind_ == Kind::punctured_disk)
      return punctured_disk(c_, d_ * std::exp(r));
    if (kind_ == Kind::exterior)
      return exterior(c_, d_ * std::exp(-r));
    if (!(r > 0.0))
      throw std::invalid_argument("Annulus::band: need r > 0");
    return Annulus(c_, d_, m_ + r);
  }

private:
  Annulus(Kind k, cplx c, double R) : kind_(k), c_(c), d_(R), m_(std::numeric_limits<double>::infinity())
  {
    if (!is_finite(c))
      throw std::invalid_argument("Annulus: non-finite center");
  }

  Kind kind_;
  cplx c_;
  double d_;
  double m_;
};

inline double annulus_modulus(const Annulus &A) { return A.modulus(); }

namespace detail {

inline bool le_tol(double x, double y)
{
  if (std::isinf(y))
    return true;
  return x <= y + radius_tol * std::max({1.0, std::abs(x), std::abs(y)});
}

} // namespace detail

// A' is a subannulus of A: A' in A, A_in in A'_in, A_out in A'_out.
// With disks the last two reduce to |c-c'| + r <= r' and |c-c'| + R' <= R, and those imply A' in A.
inline bool is_subannulus(const Annulus &Ap, const Annulus &A)
{
  double s = std::abs(A.center() - Ap.center());
  double r = A.inner_radius(), rp = Ap.inner_radius();
  double R = A.outer_radius(), Rp = Ap.outer_radius();
  if (Ap.kind() == Annulus::Kind::punctured_disk && A.kind() != Annulus::Kind::punctured_disk)
    return false;
  if (Ap.kind() == Annulus::Kind::exterior && A.kind() != Annulus::Kind::exterior)
    return false;
  bool in_ok = A.kind() == Annulus::Kind::punctured_disk ? detail::le_tol(s, rp) : detail::le_tol(s + r, rp);
  bool out_ok = Ap.kind() == Annulus::Kind::exterior ? true : detail::le_tol(s + Rp, R);
  return in_ok && out_ok;
}

inline bool is_concentric_subannulus(const Annulus &Ap, const Annulus &A)
{
  return std::abs(A.center() - Ap.center()) <= radius_tol * std::max(1.0, std::abs(A.center())) &&
         is_subannulus(Ap, A);
}

// True iff E meets both complementary components of A. Throws if a point of E lies in A.
inline bool separates(const Annulus &A, const std::vector<ExtPoint> &E)
{
  bool inside = false, outside = false;
  for (const auto &e : E) {
    if (e.is_infinity()) {
      outside = true;
      continue;
    }
    cplx z = e.value();
    if (A.contains(z))
      throw std::invalid_argument("separates: point of E lies in the annulus");
    if (std::abs(z - A.center()) <= A.inner_radius())
      inside = true;
    else
      outside = true;
  }
  return inside && outside;
}

} // namespace qhdist

#endif // QHDIST_ANNULUS_HPP
