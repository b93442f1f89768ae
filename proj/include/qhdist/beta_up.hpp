#ifndef QHDIST_BETA_UP_HPP
#define QHDIST_BETA_UP_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "annulus.hpp"
#include "beta.hpp"
#include "density.hpp"
#include "paths.hpp"
#include "random.hpp"

namespace qhdist {

// ---- beta decay in fat annuli

struct BpDecaySample {
  cplx z;
  double t;    // log(|z - o| / d)
  double beta;
  double ratio; // beta / (r - |t|)
  bool ok;
};

struct BpDecayReport {
  std::vector<BpDecaySample> samples;
  int violations = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
};

namespace detail {

inline bool boundary_meets_circle(const Domain &D, cplx o, double rho, double tol = 1e-9)
{
  for (const auto &K : D.components()) {
    if (auto *P = std::get_if<PointComponent>(&K)) {
      if (std::abs(std::abs(P->p - o) - rho) <= tol * rho)
        return true;
    } else if (auto *C = std::get_if<CircleComponent>(&K)) {
      double s = std::abs(C->c - o);
      if (std::abs(s - C->R) <= rho * (1 + tol) && s + C->R >= rho * (1 - tol))
        return true;
    } else if (component_distance(K, o) <= rho * (1 + tol)) {
      return true;
    }
  }
  return false;
}

} // namespace detail

inline constexpr double log16 = 2.772588722239781;

inline BpDecayReport check_bp_decay(const Domain &D, const Annulus &A, const std::vector<cplx> &samples)
{
  if (A.is_degenerate())
    throw std::invalid_argument("check_bp_decay: annulus must be bounded");
  const cplx o = A.center();
  const double d = A.d(), r = A.m();
  if (!(r > log16))
    throw std::invalid_argument("check_bp_decay: need r > log 16");
  if (!in_annulus_family(D, A))
    throw std::invalid_argument("check_bp_decay: annulus is not in the domain's annulus family");
  if (!detail::boundary_meets_circle(D, o, A.inner_radius()) || !detail::boundary_meets_circle(D, o, A.outer_radius()))
    throw std::invalid_argument("check_bp_decay: a boundary circle of the annulus misses the boundary");
  BpDecayReport rep;
  for (cplx z : samples) {
    double t = std::log(std::abs(z - o) / d);
    if (!(std::abs(t) <= r - log16 + 1e-12))
      throw std::invalid_argument("check_bp_decay: sample outside |t| <= r - log 16");
    double b = beta(D, z).value, gap = r - std::abs(t);
    bool ok = b >= 0.5 * gap * (1 - 1e-12) && b <= 2.0 * gap * (1 + 1e-12);
    double ratio = b / gap;
    rep.samples.push_back({z, t, b, ratio, ok});
    rep.violations += !ok;
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  return rep;
}

// t uniform in [-(r - log 16), r - log 16], argument uniform
inline std::vector<cplx> bp_decay_samples(const Annulus &A, int n, Rng &rng)
{
  double tm = A.m() - log16;
  std::vector<cplx> z;
  for (int i = 0; i < n; ++i)
    z.push_back(A.center() + std::polar(A.d() * std::exp(rng.uniform(-tm, tm)), rng.uniform(-pi, pi)));
  return z;
}

// ---- arcs bounce or cross

struct AbcViolation {
  Annulus annulus; // A(o; d, mu)
  std::string kind; // "excursion" or "crossing"
  double excess;    // log-radius excess beyond mu, or extra crossings
};

struct AbcReport {
  int candidates_checked = 0;
  int skipped = 0;
  int violations = 0;
  int crossing_violations = 0;
  double max_excess = 0.0;
  std::vector<AbcViolation> details;
  bool pass = true;
};

namespace detail {

// parameters s = i + t of the hits of |z - o| = d along the polyline
inline std::vector<double> circle_hits(const Polyline &g, cplx o, double d)
{
  std::vector<double> s;
  const auto &p = g.points();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    cplx a = p[i] - o, v = p[i + 1] - p[i];
    double A = std::norm(v), B = 2.0 * std::real(std::conj(v) * a), C = std::norm(a) - d * d;
    double disc = B * B - 4 * A * C;
    if (disc < 0.0)
      continue;
    double sq = std::sqrt(disc);
    for (double t : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)})
      if (t >= 0.0 && t <= 1.0)
        s.push_back(static_cast<double>(i) + t);
  }
  std::sort(s.begin(), s.end());
  return s;
}

// largest |log(|z - o|/d)| on the subpath between parameters s0 <= s1
inline double max_log_excursion(const Polyline &g, cplx o, double d, double s0, double s1)
{
  const auto &p = g.points();
  double best = 0.0;
  auto visit = [&](cplx z) { best = std::max(best, std::abs(std::log(std::abs(z - o) / d))); };
  std::size_t i0 = static_cast<std::size_t>(s0), i1 = std::min(static_cast<std::size_t>(s1), p.size() - 2);
  for (std::size_t i = i0; i <= i1; ++i) {
    double ta = i == i0 ? s0 - static_cast<double>(i) : 0.0;
    double tb = i == i1 ? s1 - static_cast<double>(i) : 1.0;
    cplx v = p[i + 1] - p[i];
    visit(p[i] + ta * v);
    visit(p[i] + tb * v);
    double tc = std::real(std::conj(v) * (o - p[i])) / std::norm(v);
    if (tc > ta && tc < tb)
      visit(p[i] + tc * v);
  }
  return best;
}

} // namespace detail

// slack: tolerated excess in radius ratio (grid paths are only approximate geodesics)
inline AbcReport check_abc(const Polyline &g, const Domain &D, double mu, double nu,
                           const std::vector<Annulus> &candidates, double slack = 1e-3)
{
  if (!(mu > 0.0) || !(nu > 0.0))
    throw std::invalid_argument("check_abc: need mu, nu > 0");
  AbcReport rep;
  if (g.size() < 2)
    return rep;
  const double allowed = mu + std::log1p(slack);
  for (const Annulus &cand : candidates) {
    cplx o = cand.center();
    double d = cand.d();
    Annulus An(o, d, nu), Am(o, d, mu);
    if (!in_annulus_family(D, An)) {
      ++rep.skipped;
      continue;
    }
    ++rep.candidates_checked;
    std::vector<double> hits = detail::circle_hits(g, o, d);
    if (hits.size() >= 2) {
      double ex = detail::max_log_excursion(g, o, d, hits.front(), hits.back());
      rep.max_excess = std::max(rep.max_excess, ex - mu);
      if (ex > allowed) {
        ++rep.violations;
        rep.details.push_back({Am, "excursion", ex - mu});
      }
    }
    int n = crossing_count(g, Am);
    if (n > 1) {
      ++rep.crossing_violations;
      rep.details.push_back({Am, "crossing", static_cast<double>(n - 1)});
    }
  }
  rep.pass = rep.violations == 0 && rep.crossing_violations == 0;
  return rep;
}

// A(p; 2^(k/per_octave), nu) about each finite puncture, kept when in A_Omega
inline std::vector<Annulus> dyadic_annulus_family(const Domain &D, double nu, int kmin, int kmax, int per_octave = 1)
{
  std::vector<Annulus> out;
  for (cplx p : D.punctures())
    for (int k = kmin * per_octave; k <= kmax * per_octave; ++k) {
      Annulus A(p, std::exp2(static_cast<double>(k) / per_octave), nu);
      if (in_annulus_family(D, A))
        out.push_back(A);
    }
  return out;
}

// ---- uniform perfectness

struct Ray {
  cplx origin;
  cplx direction;
};

// circles |z - center| = unit * base^n, n_min <= n <= n_max; self_similar marks the family as
// continuing toward center and infinity
struct CircleLayers {
  cplx center;
  double base;
  int n_min;
  int n_max;
  double unit = 1.0;
  bool self_similar = true;
};

struct DiskPiece {
  cplx center;
  double radius;
};

// closed half-plane {Re((z - point) conj(normal)) >= 0}
struct HalfPlanePiece {
  cplx point;
  cplx normal;
};

// closed set E in the sphere, described piece by piece
struct UpSet {
  std::vector<cplx> points;
  std::vector<CircleLayers> layers;
  std::vector<Ray> rays;
  std::vector<DiskPiece> disks;     // closed disks
  std::vector<DiskPiece> exteriors; // {|z - c| >= R}
  std::vector<HalfPlanePiece> half_planes;
  bool infinity = true;
};

struct UPReport {
  bool unbounded = false;
  double sup_modulus = 0.0; // infinity when unbounded
  std::optional<Annulus> witness_annulus;
  std::vector<ExtPoint> isolated_points;
  std::size_t centers_checked = 0;
};

namespace detail {

struct Span {
  double lo, hi;
};

inline std::vector<Span> distance_spans(const UpSet &E, cplx c)
{
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<Span> s;
  for (cplx p : E.points)
    s.push_back({std::abs(p - c), std::abs(p - c)});
  for (const auto &L : E.layers) {
    if (!(L.base > 1.0) || !(L.unit > 0.0) || L.n_min > L.n_max)
      throw std::invalid_argument("up_modulus_sup: bad circle layer");
    double t = std::abs(c - L.center);
    for (int n = L.n_min; n <= L.n_max; ++n) {
      double rho = L.unit * std::pow(L.base, n);
      s.push_back({std::abs(t - rho), t + rho});
    }
    if (L.self_similar)
      s.push_back({t, t});
  }
  for (const auto &R : E.rays) {
    cplx u = R.direction / std::abs(R.direction), w = (c - R.origin) * std::conj(u);
    s.push_back({w.real() <= 0.0 ? std::abs(w) : std::abs(w.imag()), inf});
  }
  for (const auto &K : E.disks) {
    double t = std::abs(c - K.center);
    s.push_back({std::max(0.0, t - K.radius), t + K.radius});
  }
  for (const auto &K : E.exteriors)
    s.push_back({std::max(0.0, K.radius - std::abs(c - K.center)), inf});
  for (const auto &H : E.half_planes) {
    cplx n = H.normal / std::abs(H.normal);
    s.push_back({std::max(0.0, -std::real((c - H.point) * std::conj(n))), inf});
  }
  std::sort(s.begin(), s.end(), [](const Span &a, const Span &b) { return a.lo < b.lo; });
  std::vector<Span> m;
  for (const Span &x : s) {
    if (!m.empty() && x.lo <= m.back().hi * (1 + 1e-12))
      m.back().hi = std::max(m.back().hi, x.hi);
    else
      m.push_back(x);
  }
  return m;
}

inline bool has_unbounded_piece(const UpSet &E)
{
  return !E.rays.empty() || !E.exteriors.empty() || !E.half_planes.empty();
}

} // namespace detail

// Sup of moduli of annuli in the complement of E centred at points of E.
inline UPReport up_modulus_sup(const UpSet &E, std::size_t budget = 100000)
{
  struct Center {
    cplx c;
    bool accumulation;
    bool listed; // report if isolated
  };
  std::vector<Center> centers;
  for (cplx p : E.points) {
    bool acc = false;
    for (const auto &L : E.layers)
      acc = acc || (L.self_similar && std::abs(p - L.center) <= 1e-12 * (1.0 + std::abs(p)));
    centers.push_back({p, acc, true});
  }
  for (const auto &L : E.layers)
    if (L.self_similar)
      centers.push_back({L.center, true, false});
  for (const auto &R : E.rays)
    centers.push_back({R.origin, true, false});
  for (const auto &K : E.disks)
    centers.push_back({K.center, true, false});
  if (centers.size() > budget)
    throw std::invalid_argument("up_modulus_sup: candidate budget exceeded");
  bool inf_accumulates = detail::has_unbounded_piece(E);
  for (const auto &L : E.layers)
    inf_accumulates = inf_accumulates || L.self_similar;

  UPReport rep;
  rep.centers_checked = centers.size();
  auto raise = [&](double mod, const Annulus &A) {
    if (!rep.unbounded && mod > rep.sup_modulus) {
      rep.sup_modulus = mod;
      rep.witness_annulus = A;
    }
  };
  auto flag = [&](const ExtPoint &p, const Annulus &A) {
    if (std::find(rep.isolated_points.begin(), rep.isolated_points.end(), p) == rep.isolated_points.end())
      rep.isolated_points.push_back(p);
    if (!rep.unbounded) {
      rep.unbounded = true;
      rep.sup_modulus = std::numeric_limits<double>::infinity();
      rep.witness_annulus = A;
    }
  };
  for (const Center &ce : centers) {
    std::vector<detail::Span> sp = detail::distance_spans(E, ce.c);
    // drop the center itself
    std::size_t first = 0;
    if (!sp.empty() && sp[0].lo == 0.0 && sp[0].hi == 0.0)
      first = 1;
    if (first == sp.size()) {
      // nothing else in the finite plane: the whole punctured plane is a gap
      if (ce.listed && !ce.accumulation)
        flag(ExtPoint(ce.c), Annulus::punctured_disk(ce.c, 1.0));
      if (E.infinity && !inf_accumulates)
        flag(ExtPoint::infinity(), Annulus::exterior(ce.c, 1.0));
      continue;
    }
    bool covered0 = first == 0 && sp[0].lo == 0.0;
    if (!covered0 && !ce.accumulation && ce.listed)
      flag(ExtPoint(ce.c), Annulus::punctured_disk(ce.c, sp[first].lo));
    for (std::size_t i = first; i + 1 < sp.size(); ++i)
      raise(std::log(sp[i + 1].lo / sp[i].hi), Annulus::from_radii(ce.c, sp[i].hi, sp[i + 1].lo));
    if (std::isfinite(sp.back().hi) && E.infinity && !inf_accumulates)
      flag(ExtPoint::infinity(), Annulus::exterior(ce.c, sp.back().hi));
  }
  return rep;
}

// UP constants of the chordal-to-Euclidean comparison: cases |c| >= R, |c| <= r, and general.
struct UpConstants {
  double far;     // 4M
  double near;    // 8M^2
  double general; // 64M^4
};

inline UpConstants chordal_up_to_euclidean_bound(double M)
{
  if (!(M >= 2.0))
    throw std::invalid_argument("chordal_up_to_euclidean_bound: need M >= 2");
  return {4 * M, 8 * M * M, 64 * M * M * M * M};
}

// ---- fat annulus witness points

enum class FatSide { inner, outer };

struct FatAnnulusWitness {
  double m;
  FatSide side;
  cplx a, b, c;
  double k_lower, k_upper; // claimed range of k(a,b) and k(c,b)
  double h_lower;          // lower bound for h(a,b)
  double bp_integral;      // BP-upper integral along [b, c]
  double bp_limit = 1.1;
};

// normalized domain C \ {0, -e^-m, -e^m}
inline Domain fat_annulus_domain(double m)
{
  return Domain::finite_complement({0.0, -std::exp(-m), -std::exp(m)});
}

inline FatAnnulusWitness fat_annulus_witness(double m, FatSide side = FatSide::inner)
{
  if (!(m > 1.0))
    throw std::invalid_argument("fat_annulus_witness: need m > 1");
  FatAnnulusWitness w;
  w.m = m;
  w.side = side;
  double s = side == FatSide::inner ? -1.0 : 1.0;
  w.a = std::exp(s * (m - 1));
  w.b = std::exp(s * (m - 1) / 2);
  w.c = 1.0;
  w.k_lower = 0.5 * (m - 1);
  w.k_upper = m - 1;
  w.h_lower = std::log1p((m - 1) / (2 * (kappa + 1)));
  w.bp_integral = (pi / 2) * std::log(2 * m / (m + 1));
  return w;
}

// numeric line integral of the BP upper density along [b, c]
inline double fat_annulus_bp_integral_numeric(const FatAnnulusWitness &w, double tol = 1e-10)
{
  Domain D = fat_annulus_domain(w.m);
  Density rho = Density::bp_upper(D);
  return rho_length(Polyline({w.b, w.c}), [&](cplx z) { return rho(z); }, tol);
}

} // namespace qhdist

#endif // QHDIST_BETA_UP_HPP
