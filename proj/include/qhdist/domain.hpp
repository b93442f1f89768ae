#ifndef QHDIST_DOMAIN_HPP
#define QHDIST_DOMAIN_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "plane.hpp"

namespace qhdist {

inline constexpr double eps_B = 1e-9;

struct Similarity {
  cplx s{1.0};
  cplx t{0.0};

  cplx operator()(cplx z) const { return s * z + t; }
  Similarity inverse() const { return {1.0 / s, -t / s}; }
  Similarity then(const Similarity &o) const { return {o.s * s, o.s * t + o.t}; }
};

struct PointComponent {
  cplx p;
};
struct CircleComponent {
  cplx c;
  double R;
};
// line through p with unit direction u
struct LineComponent {
  cplx p;
  cplx u;
};
using Component = std::variant<PointComponent, CircleComponent, LineComponent>;

inline double component_distance(const Component &K, cplx z)
{
  if (auto *P = std::get_if<PointComponent>(&K))
    return std::abs(z - P->p);
  if (auto *C = std::get_if<CircleComponent>(&K))
    return std::abs(std::abs(z - C->c) - C->R);
  auto &L = std::get<LineComponent>(K);
  return std::abs(std::imag((z - L.p) * std::conj(L.u)));
}

// Nearest point of the component; a circle seen from its center returns c + R.
inline cplx component_nearest(const Component &K, cplx z)
{
  if (auto *P = std::get_if<PointComponent>(&K))
    return P->p;
  if (auto *C = std::get_if<CircleComponent>(&K)) {
    cplx v = z - C->c;
    double r = std::abs(v);
    return r > 0.0 ? C->c + C->R * v / r : C->c + C->R;
  }
  auto &L = std::get<LineComponent>(K);
  return L.p + std::real((z - L.p) * std::conj(L.u)) * L.u;
}

namespace detail {

using Vec3 = std::array<double, 3>;

inline Vec3 to_sphere(cplx z)
{
  double n = std::norm(z);
  return {2.0 * z.real() / (n + 1.0), 2.0 * z.imag() / (n + 1.0), (n - 1.0) / (n + 1.0)};
}
inline Vec3 sub(Vec3 a, Vec3 b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 add(Vec3 a, Vec3 b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 scale(Vec3 a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
inline double dot(Vec3 a, Vec3 b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(Vec3 a, Vec3 b)
{
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm3(Vec3 a) { return std::sqrt(dot(a, a)); }

// Chordal distance from P (on the unit sphere) to the circle through A, B, C.
inline double chordal_to_circle(Vec3 P, Vec3 A, Vec3 B, Vec3 C)
{
  Vec3 ab = sub(B, A), ac = sub(C, A);
  Vec3 n = cross(ab, ac);
  double nn = dot(n, n);
  Vec3 q = add(A, scale(add(scale(cross(n, ab), dot(ac, ac)), scale(cross(ac, n), dot(ab, ab))), 0.5 / nn));
  double rho = norm3(sub(A, q));
  Vec3 nu = scale(n, 1.0 / std::sqrt(nn));
  Vec3 v = sub(P, q);
  double h = dot(v, nu);
  Vec3 w = sub(v, scale(nu, h));
  double d = norm3(w) - rho;
  return std::sqrt(h * h + d * d);
}

} // namespace detail

// Chordal distance from a finite z to a boundary component (lines include infinity).
inline double component_chordal(const Component &K, cplx z)
{
  using namespace detail;
  if (auto *P = std::get_if<PointComponent>(&K))
    return chordal_distance(z, P->p);
  Vec3 Z = to_sphere(z);
  if (auto *C = std::get_if<CircleComponent>(&K))
    return chordal_to_circle(Z, to_sphere(C->c + C->R), to_sphere(C->c + C->R * cplx(0, 1)),
                             to_sphere(C->c - C->R));
  auto &L = std::get<LineComponent>(K);
  return chordal_to_circle(Z, to_sphere(L.p), to_sphere(L.p + L.u), Vec3{0.0, 0.0, 1.0});
}

class Domain {
public:
  enum class Kind {
    finite_complement,
    unit_disk,
    punctured_unit_disk,
    exterior_unit_disk,
    upper_half_plane,
    punctured_subdomain,
    translated_scaled
  };
  enum class Region { plane, disk_interior, disk_exterior, half_plane };

  static Domain finite_complement(std::vector<cplx> punctures, bool includes_infinity = true)
  {
    Domain D(Kind::finite_complement);
    D.region_ = Region::plane;
    D.includes_infinity_ = includes_infinity;
    D.own_ = punctures;
    D.punctures_ = std::move(punctures);
    D.finish();
    return D;
  }

  static Domain unit_disk()
  {
    Domain D(Kind::unit_disk);
    D.region_ = Region::disk_interior;
    D.finish();
    return D;
  }

  static Domain punctured_unit_disk()
  {
    Domain D(Kind::punctured_unit_disk);
    D.region_ = Region::disk_interior;
    D.punctures_ = {0.0};
    D.finish();
    return D;
  }

  static Domain exterior_unit_disk()
  {
    Domain D(Kind::exterior_unit_disk);
    D.region_ = Region::disk_exterior;
    D.finish();
    return D;
  }

  static Domain upper_half_plane()
  {
    Domain D(Kind::upper_half_plane);
    D.region_ = Region::half_plane;
    D.hp_point_ = 0.0;
    D.hp_normal_ = cplx(0.0, 1.0);
    D.finish();
    return D;
  }

  static Domain punctured(const Domain &base, std::vector<cplx> pts)
  {
    Domain D = base;
    D.kind_ = Kind::punctured_subdomain;
    D.base_ = std::make_shared<const Domain>(base);
    D.own_ = pts;
    for (cplx p : pts) {
      if (!base.contains(p))
        throw std::invalid_argument("Domain::punctured: puncture outside the base domain");
      D.punctures_.push_back(p);
    }
    D.finish();
    return D;
  }

  static Domain transformed(const Domain &base, Similarity f)
  {
    if (std::abs(f.s) == 0.0 || !is_finite(f.s) || !is_finite(f.t))
      throw std::invalid_argument("Domain::transformed: degenerate similarity");
    Domain D = base;
    D.kind_ = Kind::translated_scaled;
    D.base_ = std::make_shared<const Domain>(base);
    D.own_.clear();
    D.sim_ = f;
    D.center_ = f(base.center_);
    D.radius_ = base.radius_ * std::abs(f.s);
    D.hp_point_ = f(base.hp_point_);
    D.hp_normal_ = base.hp_normal_ * f.s / std::abs(f.s);
    for (auto &p : D.punctures_)
      p = f(p);
    D.finish();
    return D;
  }

  Kind kind() const { return kind_; }
  Region region() const { return region_; }
  const Domain *base() const { return base_.get(); }
  const Similarity &similarity() const { return sim_; }
  // punctures introduced by this node (finite_complement / punctured_subdomain)
  const std::vector<cplx> &own_punctures() const { return own_; }
  // all finite point boundary components
  const std::vector<cplx> &punctures() const { return punctures_; }
  bool includes_infinity() const { return includes_infinity_; }
  cplx disk_center() const { return center_; }
  double disk_radius() const { return radius_; }
  cplx half_plane_point() const { return hp_point_; }
  cplx half_plane_normal() const { return hp_normal_; }

  bool infinity_in_omega() const { return region_ == Region::plane && !includes_infinity_; }
  bool infinity_on_boundary() const
  {
    return (region_ == Region::plane && includes_infinity_) || region_ == Region::disk_exterior ||
           region_ == Region::half_plane;
  }
  bool has_continuum_boundary() const { return region_ != Region::plane; }

  // number of boundary points on the sphere, capped at a large value for continua
  std::size_t sphere_boundary_count() const
  {
    if (has_continuum_boundary())
      return std::numeric_limits<std::size_t>::max();
    return punctures_.size() + (includes_infinity_ ? 1 : 0);
  }
  bool is_hyperbolic() const { return sphere_boundary_count() >= 3; }
  void require_hyperbolic(const char *what) const
  {
    if (!is_hyperbolic())
      throw std::domain_error(std::string(what) + ": domain is not hyperbolic");
  }
  bool has_finite_boundary() const { return has_continuum_boundary() || !punctures_.empty(); }

  const std::vector<Component> &components() const { return comps_; }

  bool in_region(cplx z) const
  {
    switch (region_) {
    case Region::plane: return true;
    case Region::disk_interior: return std::abs(z - center_) < radius_;
    case Region::disk_exterior: return std::abs(z - center_) > radius_;
    case Region::half_plane: return std::real((z - hp_point_) * std::conj(hp_normal_)) > 0.0;
    }
    return false;
  }

  bool contains(cplx z) const
  {
    if (!is_finite(z) || !in_region(z))
      return false;
    for (cplx p : punctures_)
      if (z == p)
        return false;
    return true;
  }

  // Euclidean distance to the boundary; +inf when the boundary is empty in C.
  double delta(cplx z) const
  {
    if (!contains(z))
      throw std::domain_error("delta: point outside the domain");
    return delta_unchecked(z);
  }

  double delta_unchecked(cplx z) const
  {
    double d = std::numeric_limits<double>::infinity();
    for (const auto &K : comps_)
      d = std::min(d, component_distance(K, z));
    return d;
  }

  // Nearest boundary points within relative slack eps_B.
  std::vector<cplx> nearest_boundary_set(cplx z) const
  {
    double d = delta(z);
    if (!std::isfinite(d))
      throw std::domain_error("nearest_boundary_set: no finite boundary");
    std::vector<cplx> out;
    for (const auto &K : comps_)
      if (component_distance(K, z) <= (1.0 + eps_B) * d)
        out.push_back(component_nearest(K, z));
    return out;
  }

  // Chordal distance from z to the boundary on the sphere.
  double chi(cplx z) const
  {
    if (!contains(z))
      throw std::domain_error("chi: point outside the domain");
    double d = std::numeric_limits<double>::infinity();
    for (const auto &K : comps_)
      d = std::min(d, component_chordal(K, z));
    if (infinity_on_boundary())
      d = std::min(d, chordal_distance(z, ExtPoint::infinity()));
    return d;
  }

  std::string kind_name() const
  {
    switch (kind_) {
    case Kind::finite_complement: return "finite_complement";
    case Kind::unit_disk: return "unit_disk";
    case Kind::punctured_unit_disk: return "punctured_unit_disk";
    case Kind::exterior_unit_disk: return "exterior_unit_disk";
    case Kind::upper_half_plane: return "upper_half_plane";
    case Kind::punctured_subdomain: return "punctured_subdomain";
    case Kind::translated_scaled: return "translated_scaled";
    }
    return "";
  }

private:
  explicit Domain(Kind k) : kind_(k) {}

  void finish()
  {
    for (std::size_t i = 0; i < punctures_.size(); ++i) {
      if (!is_finite(punctures_[i]))
        throw std::invalid_argument("Domain: non-finite puncture");
      for (std::size_t j = 0; j < i; ++j)
        if (punctures_[i] == punctures_[j])
          throw std::invalid_argument("Domain: repeated puncture");
    }
    if (kind_ == Kind::finite_complement && sphere_boundary_count() < 2)
      throw std::invalid_argument("Domain: finite complement needs at least two boundary points");
    comps_.clear();
    switch (region_) {
    case Region::plane: break;
    case Region::disk_interior:
    case Region::disk_exterior: comps_.push_back(CircleComponent{center_, radius_}); break;
    case Region::half_plane: comps_.push_back(LineComponent{hp_point_, hp_normal_ * cplx(0, -1)}); break;
    }
    for (cplx p : punctures_) {
      if (region_ != Region::plane && !in_region(p))
        throw std::invalid_argument("Domain: puncture outside the region");
      comps_.push_back(PointComponent{p});
    }
  }

  Kind kind_;
  Region region_ = Region::plane;
  bool includes_infinity_ = true;
  cplx center_{0.0};
  double radius_ = 1.0;
  cplx hp_point_{0.0};
  cplx hp_normal_{0.0, 1.0};
  std::vector<cplx> punctures_;
  std::vector<cplx> own_;
  std::shared_ptr<const Domain> base_;
  Similarity sim_;
  std::vector<Component> comps_;
};

} // namespace qhdist

#endif // QHDIST_DOMAIN_HPP
