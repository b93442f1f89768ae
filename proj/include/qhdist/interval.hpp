#ifndef QHDIST_INTERVAL_HPP
#define QHDIST_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qhdist {

class InconsistentIntervalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Certified enclosure of a distance with the name of the estimate behind each end.
struct DistanceInterval {
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_source;
  std::string upper_source;

  double width() const { return upper - lower; }
  double mid() const { return 0.5 * (lower + upper); }
  bool contains(double x, double tol = 0.0) const { return x >= lower - tol && x <= upper + tol; }
};

// Never clips: lower > upper beyond rounding is thrown, within rounding the upper end is raised.
inline DistanceInterval make_interval(double lower, std::string lsrc, double upper, std::string usrc)
{
  if (lower < 0.0 || std::isnan(lower) || std::isnan(upper))
    throw InconsistentIntervalError("distance interval: invalid bound");
  if (lower > upper + 1e-12 * std::max(1.0, std::abs(upper))) {
    std::ostringstream os;
    os.precision(17);
    os << "distance interval: lower " << lower << " (" << lsrc << ") exceeds upper " << upper << " (" << usrc
       << ")";
    throw InconsistentIntervalError(os.str());
  }
  return {lower, std::max(lower, upper), std::move(lsrc), std::move(usrc)};
}

// A partial bound: valid == false means the estimate's hypothesis failed.
struct Estimate {
  double value = 0.0;
  bool valid = true;
};

} // namespace qhdist

#endif // QHDIST_INTERVAL_HPP
