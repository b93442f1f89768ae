#ifndef QHDIST_MOBIUS_HPP
#define QHDIST_MOBIUS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "plane.hpp"

namespace qhdist {

// z -> (az+b)/(cz+d), stored with ad-bc = 1.
class MobiusMap {
public:
  MobiusMap(cplx a, cplx b, cplx c, cplx d)
  {
    double s = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    if (!(s > 0.0) || !std::isfinite(s))
      throw std::invalid_argument("MobiusMap: bad coefficients");
    a /= s, b /= s, c /= s, d /= s;
    cplx det = a * d - b * c;
    if (std::abs(det) <= 1e-12)
      throw std::invalid_argument("MobiusMap: degenerate determinant");
    cplx r = std::sqrt(det);
    a_ = a / r, b_ = b / r, c_ = c / r, d_ = d / r;
  }

  static MobiusMap identity() { return MobiusMap(1.0, 0.0, 0.0, 1.0); }

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }

  // finite point sent to infinity, if any
  std::optional<cplx> pole() const
  {
    if (c_ == cplx(0.0))
      return std::nullopt;
    return -d_ / c_;
  }

  ExtPoint apply(const ExtPoint &z) const
  {
    if (z.is_infinity()) {
      if (c_ == cplx(0.0))
        return ExtPoint::infinity();
      return ExtPoint(a_ / c_);
    }
    cplx w = z.value();
    cplx den = c_ * w + d_;
    if (den == cplx(0.0))
      return ExtPoint::infinity();
    return ExtPoint((a_ * w + b_) / den);
  }

  cplx operator()(cplx z) const
  {
    ExtPoint w = apply(ExtPoint(z));
    if (w.is_infinity())
      throw std::domain_error("MobiusMap: image is infinity");
    return w.value();
  }

  cplx derivative(cplx z) const
  {
    cplx den = c_ * z + d_;
    if (den == cplx(0.0))
      throw std::domain_error("MobiusMap: derivative at the pole");
    return (a_ * d_ - b_ * c_) / (den * den);
  }

  // (this o o)(z) = this(o(z))
  MobiusMap compose(const MobiusMap &o) const
  {
    return MobiusMap(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
                     c_ * o.b_ + d_ * o.d_);
  }

  MobiusMap inverse() const { return MobiusMap(d_, -b_, -c_, a_); }

private:
  cplx a_, b_, c_, d_;
};

inline ExtPoint mobius_apply(const MobiusMap &T, const ExtPoint &z) { return T.apply(z); }
inline cplx mobius_derivative(const MobiusMap &T, cplx z) { return T.derivative(z); }

} // namespace qhdist

#endif // QHDIST_MOBIUS_HPP
