#ifndef QHDIST_PLANE_HPP
#define QHDIST_PLANE_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace qhdist {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

inline bool is_finite(cplx z)
{
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// A point of the Riemann sphere. Infinity is its own state, never a big number.
class ExtPoint {
public:
  ExtPoint(cplx z) : z_(z)
  {
    if (!qhdist::is_finite(z))
      throw std::invalid_argument("ExtPoint: non-finite coordinates");
  }
  ExtPoint(double re, double im = 0.0) : ExtPoint(cplx(re, im)) {}

  static ExtPoint infinity()
  {
    ExtPoint p;
    return p;
  }

  bool is_infinity() const { return !z_.has_value(); }
  bool is_finite() const { return z_.has_value(); }

  cplx value() const
  {
    if (!z_)
      throw std::logic_error("ExtPoint: value() of infinity");
    return *z_;
  }

  friend bool operator==(const ExtPoint &a, const ExtPoint &b) { return a.z_ == b.z_; }

private:
  ExtPoint() = default;
  std::optional<cplx> z_;
};

inline double chordal_distance(const ExtPoint &z, const ExtPoint &w)
{
  if (z.is_infinity() && w.is_infinity())
    return 0.0;
  if (z.is_infinity())
    return 2.0 / std::hypot(1.0, std::abs(w.value()));
  if (w.is_infinity())
    return 2.0 / std::hypot(1.0, std::abs(z.value()));
  cplx a = z.value(), b = w.value();
  double v = 2.0 * std::abs(a - b) / (std::hypot(1.0, std::abs(a)) * std::hypot(1.0, std::abs(b)));
  return std::min(v, 2.0);
}

// 2 asin(chi/2), written as 2 atan2(|z-w|, |1 + conj(z) w|) so antipodes stay accurate
inline double spherical_distance(const ExtPoint &z, const ExtPoint &w)
{
  if (z.is_infinity() && w.is_infinity())
    return 0.0;
  if (z.is_infinity() || w.is_infinity())
    return 2.0 * std::atan2(1.0, std::abs(z.is_infinity() ? w.value() : z.value()));
  cplx a = z.value(), b = w.value();
  return 2.0 * std::atan2(std::abs(a - b), std::abs(1.0 + std::conj(a) * b));
}

// Principal argument in (-pi, pi]; std::arg already returns that range except for -0 imaginary parts.
inline double principal_arg(cplx z)
{
  double t = std::atan2(z.imag(), z.real());
  if (t <= -pi)
    t += 2.0 * pi;
  if (z.imag() == 0.0 && z.real() < 0.0)
    t = pi;
  return t;
}

} // namespace qhdist

#endif // QHDIST_PLANE_HPP
