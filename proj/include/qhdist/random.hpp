#ifndef QHDIST_RANDOM_HPP
#define QHDIST_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "plane.hpp"

namespace qhdist {

// mt19937_64; doubles take the top 53 bits so results do not depend on the standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

  cplx complex_box(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }

  // log|z| uniform in [lo, hi], argument uniform
  cplx complex_log_radius(double lo, double hi)
  {
    double r = std::exp(uniform(lo, hi));
    return std::polar(r, uniform(-pi, pi));
  }

  std::mt19937_64 &engine() { return eng_; }

private:
  std::mt19937_64 eng_;
};

} // namespace qhdist

#endif // QHDIST_RANDOM_HPP
