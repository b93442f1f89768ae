#ifndef QHDIST_DENSITY_HPP
#define QHDIST_DENSITY_HPP

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "beta.hpp"
#include "constants.hpp"
#include "domain.hpp"

namespace qhdist {

// (|z| (kappa + |log|z||))^-1, a lower bound for the density of C\{0,1}
inline double lambda01_lower(cplx z)
{
  if (z == cplx(0.0) || z == cplx(1.0))
    throw std::domain_error("lambda01_lower: z must avoid 0 and 1");
  double r = std::abs(z);
  return 1.0 / (r * (kappa + std::abs(std::log(r))));
}

class Density {
public:
  enum class Kind {
    quasihyperbolic,
    hyperbolic_disk,
    hyperbolic_punctured_disk,
    hyperbolic_exterior_disk,
    hyperbolic_half_plane,
    lambda01_lower,
    bp_lower,
    bp_upper,
    chordal_quasihyperbolic
  };

  static Density quasihyperbolic(const Domain &D) { return Density(Kind::quasihyperbolic, D); }
  static Density bp_lower(const Domain &D) { return Density(Kind::bp_lower, D); }
  static Density bp_upper(const Domain &D) { return Density(Kind::bp_upper, D); }
  static Density chordal_quasihyperbolic(const Domain &D) { return Density(Kind::chordal_quasihyperbolic, D); }
  static Density hyperbolic_disk() { return Density(Kind::hyperbolic_disk); }
  static Density hyperbolic_punctured_disk() { return Density(Kind::hyperbolic_punctured_disk); }
  static Density hyperbolic_exterior_disk() { return Density(Kind::hyperbolic_exterior_disk); }
  static Density hyperbolic_half_plane() { return Density(Kind::hyperbolic_half_plane); }
  static Density lambda01() { return Density(Kind::lambda01_lower); }

  Kind kind() const { return kind_; }
  const Domain *domain() const { return dom_.get(); }

  double operator()(cplx z) const
  {
    switch (kind_) {
    case Kind::quasihyperbolic: return 1.0 / dom_->delta(z);
    case Kind::hyperbolic_disk: {
      double n = std::norm(z);
      if (!(n < 1.0))
        throw std::domain_error("density: point outside the unit disk");
      return 2.0 / (1.0 - n);
    }
    case Kind::hyperbolic_punctured_disk: {
      double r = std::abs(z);
      if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("density: point outside the punctured disk");
      return 1.0 / (r * std::log(1.0 / r));
    }
    case Kind::hyperbolic_exterior_disk: {
      double r = std::abs(z);
      if (!(r > 1.0) || !std::isfinite(r))
        throw std::domain_error("density: point outside the exterior disk");
      return 1.0 / (r * std::log(r));
    }
    case Kind::hyperbolic_half_plane:
      if (!(z.imag() > 0.0))
        throw std::domain_error("density: point outside the upper half-plane");
      return 1.0 / z.imag();
    case Kind::lambda01_lower: return lambda01_lower(z);
    case Kind::bp_lower: {
      BetaResult b = beta(*dom_, z);
      return 1.0 / (b.delta * (kappa + b.value));
    }
    case Kind::bp_upper: {
      BetaResult b = beta(*dom_, z);
      if (!(b.value > 0.0))
        throw std::domain_error("density: BP upper bound needs beta > 0");
      return (pi / 2.0) / (b.delta * b.value);
    }
    case Kind::chordal_quasihyperbolic: return (2.0 / (1.0 + std::norm(z))) / dom_->chi(z);
    }
    return 0.0;
  }

  std::string name() const
  {
    switch (kind_) {
    case Kind::quasihyperbolic: return "quasihyperbolic";
    case Kind::hyperbolic_disk: return "hyperbolic_disk";
    case Kind::hyperbolic_punctured_disk: return "hyperbolic_punctured_disk";
    case Kind::hyperbolic_exterior_disk: return "hyperbolic_exterior_disk";
    case Kind::hyperbolic_half_plane: return "hyperbolic_half_plane";
    case Kind::lambda01_lower: return "lambda01_lower";
    case Kind::bp_lower: return "bp_lower";
    case Kind::bp_upper: return "bp_upper";
    case Kind::chordal_quasihyperbolic: return "chordal_quasihyperbolic";
    }
    return "";
  }

private:
  explicit Density(Kind k) : kind_(k) {}
  Density(Kind k, const Domain &D) : kind_(k), dom_(std::make_shared<const Domain>(D)) {}

  Kind kind_;
  std::shared_ptr<const Domain> dom_;
};

inline double density_eval(const Density &rho, cplx z) { return rho(z); }

} // namespace qhdist

#endif // QHDIST_DENSITY_HPP
