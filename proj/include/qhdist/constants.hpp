#ifndef QHDIST_CONSTANTS_HPP
#define QHDIST_CONSTANTS_HPP

#include <cmath>

#include "plane.hpp"

namespace qhdist {

// Gamma(1/4)^4 / (4 pi^2) = 1 / lambda_01(-1)
inline constexpr double kappa = 4.37687923045295;

inline const double mu_h = 3.0 * kappa;
inline constexpr double nu_h = 2.5;
inline constexpr double mu_k = pi;
inline const double nu_k = std::log(2.0);
inline const double C1 = pi / std::log(2.0);

inline double kappa_from_gamma()
{
  double g = std::tgamma(0.25);
  return g * g * g * g / (4.0 * pi * pi);
}

} // namespace qhdist

#endif // QHDIST_CONSTANTS_HPP
