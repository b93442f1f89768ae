#ifndef QHDIST_POLYLINE_HPP
#define QHDIST_POLYLINE_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "annulus.hpp"
#include "plane.hpp"

namespace qhdist {

inline constexpr double vertex_tol = 1e-15;

class Polyline {
public:
  explicit Polyline(std::vector<cplx> pts) : pts_(std::move(pts))
  {
    if (pts_.empty())
      throw std::invalid_argument("Polyline: need at least one point");
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (!is_finite(pts_[i]))
        throw std::invalid_argument("Polyline: non-finite vertex");
      if (i > 0 && std::abs(pts_[i] - pts_[i - 1]) <= vertex_tol)
        throw std::invalid_argument("Polyline: repeated consecutive vertex");
    }
  }

  // Drops consecutive duplicates instead of rejecting them.
  static Polyline cleaned(const std::vector<cplx> &pts)
  {
    std::vector<cplx> out;
    for (cplx z : pts)
      if (out.empty() || std::abs(z - out.back()) > vertex_tol)
        out.push_back(z);
    return Polyline(std::move(out));
  }

  const std::vector<cplx> &points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  cplx front() const { return pts_.front(); }
  cplx back() const { return pts_.back(); }
  cplx operator[](std::size_t i) const { return pts_[i]; }

  double length() const
  {
    double s = 0.0;
    for (std::size_t i = 1; i < pts_.size(); ++i)
      s += std::abs(pts_[i] - pts_[i - 1]);
    return s;
  }

  // cumulative arclength at each vertex
  std::vector<double> arclengths() const
  {
    std::vector<double> s(pts_.size(), 0.0);
    for (std::size_t i = 1; i < pts_.size(); ++i)
      s[i] = s[i - 1] + std::abs(pts_[i] - pts_[i - 1]);
    return s;
  }

  cplx point_at(double s) const
  {
    auto cum = arclengths();
    if (s <= 0.0)
      return pts_.front();
    if (s >= cum.back())
      return pts_.back();
    auto it = std::upper_bound(cum.begin(), cum.end(), s);
    std::size_t j = static_cast<std::size_t>(it - cum.begin());
    double t = (s - cum[j - 1]) / (cum[j] - cum[j - 1]);
    return pts_[j - 1] + t * (pts_[j] - pts_[j - 1]);
  }

  // Subpath between arclength parameters s0 <= s1.
  Polyline subpath(double s0, double s1) const
  {
    if (s1 < s0)
      throw std::invalid_argument("Polyline::subpath: s1 < s0");
    auto cum = arclengths();
    std::vector<cplx> out{point_at(s0)};
    for (std::size_t i = 0; i < pts_.size(); ++i)
      if (cum[i] > s0 && cum[i] < s1)
        out.push_back(pts_[i]);
    out.push_back(point_at(s1));
    return cleaned(out);
  }

  Polyline reversed() const
  {
    std::vector<cplx> r(pts_.rbegin(), pts_.rend());
    return Polyline(std::move(r));
  }

  // Joins two paths sharing an endpoint.
  Polyline concat(const Polyline &o) const
  {
    std::vector<cplx> r = pts_;
    r.insert(r.end(), o.pts_.begin(), o.pts_.end());
    return cleaned(r);
  }

private:
  std::vector<cplx> pts_;
};

// Number of disjoint subpaths running from the inner to the outer boundary circle (or back).
inline int crossing_count(const Polyline &g, const Annulus &A)
{
  const cplx c = A.center();
  const double rin = A.inner_radius(), rout = A.outer_radius();
  // -1 inner side, +1 outer side, 0 undecided
  int last = 0, count = 0;
  auto visit = [&](double r) {
    int side = 0;
    if (A.kind() == Annulus::Kind::punctured_disk ? r <= 0.0 : r < rin * (1.0 - radius_tol))
      side = -1;
    else if (std::isfinite(rout) && r > rout * (1.0 + radius_tol))
      side = 1;
    if (side != 0) {
      if (last != 0 && side != last)
        ++count;
      last = side;
    }
  };
  const auto &p = g.points();
  visit(std::abs(p[0] - c));
  for (std::size_t i = 1; i < p.size(); ++i) {
    cplx a = p[i - 1], b = p[i];
    cplx ab = b - a;
    double t = std::real(std::conj(ab) * (c - a)) / std::norm(ab);
    if (t > 0.0 && t < 1.0)
      visit(std::abs(a + t * ab - c));
    visit(std::abs(b - c));
  }
  return count;
}

} // namespace qhdist

#endif // QHDIST_POLYLINE_HPP
