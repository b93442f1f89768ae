#ifndef QHDIST_ACCEPTANCE_HPP
#define QHDIST_ACCEPTANCE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "beta.hpp"
#include "beta_up.hpp"
#include "chi_arc.hpp"
#include "geodesic_solver.hpp"
#include "hyperbolic.hpp"
#include "paths.hpp"
#include "qh_checks.hpp"
#include "qi.hpp"
#include "quasihyperbolic.hpp"
#include "random.hpp"

namespace qhdist::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

inline constexpr int criterion_count = 12;

namespace detail {

struct Checks {
  bool ok = true;
  std::ostringstream msg;

  void expect(bool cond, const std::string &what)
  {
    if (!cond) {
      ok = false;
      msg << "[fail] " << what << "; ";
    }
  }
  template <class T>
  void note(const std::string &k, const T &v)
  {
    msg << k << "=" << v << "; ";
  }
};

inline std::string g17(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

inline CriterionResult finish(int id, std::string name, Checks &c)
{
  std::string d = c.msg.str();
  if (d.size() >= 2)
    d.resize(d.size() - 2);
  return {id, std::move(name), c.ok, d};
}

} // namespace detail

// 1: k_star_exact against the grid solver in C\{0}
inline CriterionResult criterion_1(std::uint64_t seed)
{
  detail::Checks c;
  Domain Cs = Domain::finite_complement({0.0});
  Rng rng(seed + 1);
  int outside = 0, wide = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    cplx a = rng.complex_log_radius(-2, 2);
    cplx L;
    do
      L = cplx(rng.uniform(-6, 6), rng.uniform(-pi, pi));
    while (std::abs(L) > 6.0 || std::abs(L) < 1e-3);
    cplx b = a * std::exp(L);
    double exact = k_star_exact(a, b);
    DistanceInterval k = k_numeric(Cs, a, b).distance;
    outside += !k.contains(exact, 1e-12 * exact);
    double rel = k.width() / exact;
    wide += rel > 0.02;
    worst = std::max(worst, rel);
  }
  c.expect(outside == 0, "exact value outside the interval on " + std::to_string(outside) + " pairs");
  c.expect(wide == 0, "width above 2% on " + std::to_string(wide) + " pairs");
  c.note("pairs", 100);
  c.note("max_rel_width", detail::g17(worst));
  return detail::finish(1, "k_star_exact vs numeric solver in C\\{0}", c);
}

// 2: half-plane anchor
inline CriterionResult criterion_2(std::uint64_t)
{
  detail::Checks c;
  Domain H = Domain::upper_half_plane();
  cplx i(0, 1);
  double exact = k_halfplane_exact(i, 1.0 + i);
  c.expect(std::abs(exact - std::acosh(1.5)) <= 1e-15, "k_halfplane_exact(i, 1+i) != arccosh 1.5");
  DistanceInterval k = k_numeric(H, i, 1.0 + i).distance;
  double rel = std::abs(k.upper - exact) / exact;
  c.expect(k.contains(exact, 1e-12) && rel <= 0.02, "grid solver misses arccosh 1.5 within 2%");
  double v = k_halfplane_exact(i, 2.0 * i);
  double quad = rho_length(Polyline({i, 2.0 * i}), [](cplx z) { return 1.0 / z.imag(); }, 1e-13);
  c.expect(std::abs(v - std::log(2.0)) <= 1e-15 && std::abs(quad - v) <= 1e-9, "vertical pair differs from log 2");
  c.note("numeric", "[" + detail::g17(k.lower) + ", " + detail::g17(k.upper) + "]");
  c.note("rel_err", detail::g17(rel));
  c.note("vertical_quadrature_err", detail::g17(std::abs(quad - v)));
  return detail::finish(2, "half-plane anchor", c);
}

// 3: BP lower density at the equality point
inline CriterionResult criterion_3(std::uint64_t)
{
  detail::Checks c;
  BpBounds b = bp_lambda_bounds(Domain::finite_complement({0.0, 1.0}), -1.0);
  double err = std::abs(b.lower - 1.0 / kappa);
  c.expect(err <= 1e-12, "lower bound differs from 1/kappa");
  c.note("lower", detail::g17(b.lower));
  c.note("err", detail::g17(err));
  return detail::finish(3, "BP sandwich at z = -1", c);
}

// 4: beta decay inside a fat annulus
inline CriterionResult criterion_4(std::uint64_t seed)
{
  detail::Checks c;
  Domain D = fat_annulus_domain(5.0);
  Annulus A(0.0, 1.0, 5.0);
  Rng rng(seed + 4);
  BpDecayReport r = check_bp_decay(D, A, bp_decay_samples(A, 200, rng));
  c.expect(r.samples.size() == 200 && r.violations == 0, std::to_string(r.violations) + " decay violations");
  double b1 = beta(D, 1.0).value;
  c.expect(b1 == 5.0, "beta(1) = " + detail::g17(b1));
  c.note("ratio_range", "[" + detail::g17(r.min_ratio) + ", " + detail::g17(r.max_ratio) + "]");
  return detail::finish(4, "beta decay in A(0;1,5)", c);
}

// 5: ABC property of numeric geodesics
inline CriterionResult criterion_5(std::uint64_t seed)
{
  detail::Checks c;
  Domain D = Domain::finite_complement({0.0, -1.0});
  auto family = dyadic_annulus_family(D, std::log(2.0), -8, 8, 4);
  Rng rng(seed + 5);
  int done = 0, failed = 0, checked = 0;
  double excess = 0.0;
  while (done < 20) {
    cplx a = rng.complex_log_radius(-3, 3), b = rng.complex_log_radius(-3, 3);
    if (std::abs(a + 1.0) < 0.05 || std::abs(b + 1.0) < 0.05 || std::abs(a - b) < 1e-3)
      continue;
    AbcReport r = check_abc(k_numeric(D, a, b).path, D, pi, std::log(2.0), family);
    failed += !r.pass;
    checked += r.candidates_checked;
    excess = std::max(excess, r.max_excess);
    ++done;
  }
  c.expect(failed == 0, std::to_string(failed) + " geodesics fail the ABC check");
  c.note("geodesics", done);
  c.note("annuli_checked", checked);
  c.note("max_excess", detail::g17(excess));
  return detail::finish(5, "ABC property of numeric geodesics", c);
}

// 6: fat-annulus witness, m = 5
inline CriterionResult criterion_6(std::uint64_t)
{
  detail::Checks c;
  FatAnnulusWitness w = fat_annulus_witness(5.0);
  double kab = k_star_exact(w.a, w.b), kcb = k_star_exact(w.c, w.b);
  c.expect(std::abs(kab - 2.0) <= 1e-14 && std::abs(kcb - 2.0) <= 1e-14, "k_star values differ from 2");
  c.expect(w.k_lower <= 2.0 && 2.0 <= w.k_upper, "2 not in [2, 4]");
  // normalize 0 -> 0 and -e^-5 -> 1, so |T(a)| = e and |T(b)| = e^3
  double s = std::exp(-5.0);
  auto T = [&](cplx z) { return -z / s; };
  Estimate h = h01_lower(T(w.a), T(w.b));
  c.expect(h.valid, "h01_lower not applicable");
  c.expect(std::abs(h.value - 0.31638) <= 1e-5,
           "h(a,b) lower bound " + detail::g17(h.value) + " is not 0.31638 +- 1e-5");
  double bp = fat_annulus_bp_integral_numeric(w);
  c.expect(std::abs(bp - 0.80236) <= 1e-4 && bp <= 1.1, "BP integral " + detail::g17(bp));
  c.note("h_lower", detail::g17(h.value));
  c.note("h_lower_closed_form", detail::g17(w.h_lower));
  c.note("bp_integral", detail::g17(bp));
  return detail::finish(6, "fat-annulus witness m = 5", c);
}

inline PunctureConfig sphere_minus_three()
{
  PunctureConfig cfg;
  cfg.infinity_in_omega = true;
  cfg.finite = {{0.0, 0.25}, {1.0, 0.25}};
  cfg.r_infinity = 8.0;
  return cfg;
}

// 7: rough isometry of Phi on the punctured disk
inline CriterionResult criterion_7(std::uint64_t seed)
{
  detail::Checks c;
  GlobalQiMap m = build_global_qi_map(sphere_minus_three());
  Rng rng(seed + 7);
  std::vector<std::pair<cplx, cplx>> pairs;
  for (int i = 0; i < 500; ++i)
    pairs.push_back({rng.complex_log_radius(std::log(1e-8), std::log(0.25)),
                     rng.complex_log_radius(std::log(1e-8), std::log(0.25))});
  QIReport r = verify_rough_isometry(std::cref(m), m.domain(), pairs, 1.0, pi / std::log(2.0));
  c.expect(r.violations.empty(), std::to_string(r.violations.size()) + " interval-disjoint violations");
  c.expect(r.max_slack <= 1.2, "slack " + detail::g17(r.max_slack) + " above 1.2");
  c.note("pairs", r.pairs.size());
  c.note("max_slack", detail::g17(r.max_slack));
  c.note("mean_slack", detail::g17(r.mean_slack));
  return detail::finish(7, "rough isometry of Phi on D[0;1/4]\\{0}", c);
}

// 8: counterexample divergence
inline CriterionResult criterion_8(std::uint64_t)
{
  detail::Checks c;
  DivergenceTable t = counterexample_divergence(1.0, 12);
  double b3 = t.rows[2].bound, b7 = t.rows[6].bound;
  c.expect(std::abs(b3 + 0.355) <= 1e-2, "bound_3 = " + detail::g17(b3));
  c.expect(std::abs(b7 - 110.93) <= 1e-2, "bound_7 = " + detail::g17(b7));
  c.expect(t.increasing_from <= 4, "not increasing from n = 4");
  c.expect(t.rows[5].bound > 40.0, "bound_6 not above 40");
  c.note("bound_3", detail::g17(b3));
  c.note("bound_7", detail::g17(b7));
  c.note("increasing_from", t.increasing_from);
  c.note("bound_12", detail::g17(t.rows.back().bound));
  return detail::finish(8, "counterexample divergence", c);
}

// 9: UP estimator and constants
inline CriterionResult criterion_9(std::uint64_t)
{
  detail::Checks c;
  UpSet E;
  E.points = {0.0};
  E.layers = {{0.0, 4.0, -5, 5}};
  UPReport r = up_modulus_sup(E);
  c.expect(!r.unbounded && std::abs(r.sup_modulus - std::log(4.0)) <= 1e-9, "layered set modulus");
  c.expect(r.witness_annulus && r.witness_annulus->center() == cplx(0.0), "witness not centered at 0");
  UpSet F;
  F.points = {0.0, 1.0};
  UPReport u = up_modulus_sup(F);
  c.expect(u.unbounded && u.isolated_points.size() == 3, "{0,1,inf} not reported unbounded with 3 isolated points");
  UpConstants k = chordal_up_to_euclidean_bound(2.0);
  c.expect(k.far == 8.0 && k.near == 32.0 && k.general == 1024.0, "constants at M = 2");
  c.note("sup_modulus", detail::g17(r.sup_modulus));
  c.note("constants", "(" + detail::g17(k.far) + ", " + detail::g17(k.near) + ", " + detail::g17(k.general) + ")");
  return detail::finish(9, "UP estimator", c);
}

// 10: Moebius quasi-invariance
inline CriterionResult criterion_10(std::uint64_t seed)
{
  detail::Checks c;
  Rng rng(seed + 10);
  std::vector<std::pair<cplx, cplx>> pairs;
  for (int i = 0; i < 100; ++i)
    pairs.push_back({rng.complex_log_radius(-3, 3), rng.complex_log_radius(-3, 3)});
  MobiusReport inv = check_mobius_quasi_invariance(MobiusMap(0.0, 1.0, 1.0, 0.0), Domain::finite_complement({0.0}), pairs);
  // exact up to rounding of b/a against (1/b)/(1/a)
  c.expect(inv.violations == 0 && std::abs(inv.min_ratio - 1.0) <= 1e-12 && std::abs(inv.max_ratio - 1.0) <= 1e-12,
           "1/z ratio not 1");
  // the pole -1 of the Cayley map must be a boundary point
  Domain D = Domain::finite_complement({0.0, 1.0, -1.0});
  std::vector<std::pair<cplx, cplx>> q;
  while (q.size() < 50) {
    cplx a = rng.complex_box(-2, 2), b = rng.complex_box(-2, 2);
    if (D.delta(a) < 0.05 || D.delta(b) < 0.05 || std::abs(a - b) < 1e-3)
      continue;
    q.push_back({a, b});
  }
  MobiusReport cay = check_mobius_quasi_invariance(MobiusMap(1.0, -1.0, 1.0, 1.0), D, q);
  c.expect(cay.violations == 0, std::to_string(cay.violations) + " Cayley violations");
  c.note("inversion_ratio_dev", detail::g17(std::max(1.0 - inv.min_ratio, inv.max_ratio - 1.0)));
  c.note("cayley_ratio_range", "[" + detail::g17(cay.min_ratio) + ", " + detail::g17(cay.max_ratio) + "]");
  return detail::finish(10, "Moebius quasi-invariance", c);
}

// 11: chi-arc quasiconvexity and cone condition
inline CriterionResult criterion_11(std::uint64_t seed)
{
  detail::Checks c;
  Rng rng(seed + 11);
  int qcx_bad = 0, cone_bad = 0;
  double qcx_worst = 0.0, cone_worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    cplx a = rng.complex_log_radius(-3, 3), b = rng.complex_log_radius(-3, 3);
    Polyline g = chi_arc(a, b);
    auto cum = g.arclengths();
    for (int k = 0; k < 10; ++k) {
      std::size_t u = rng.index(g.size()), v = rng.index(g.size());
      if (u > v)
        std::swap(u, v);
      if (u == v)
        continue;
      double ratio = (cum[v] - cum[u]) / std::abs(g[v] - g[u]);
      qcx_worst = std::max(qcx_worst, ratio);
      qcx_bad += ratio > 3.0 * (1 + 1e-12);
    }
  }
  // cone condition: A = A(0;1,m) with m >= log 4 in C\{0, -e^-5, e^5}, endpoints in core_{log 2}(A)
  Domain D = Domain::finite_complement({0.0, -std::exp(-5.0), std::exp(5.0)});
  for (int i = 0; i < 200; ++i) {
    double m = rng.uniform(std::log(4.0), 5.0);
    Annulus A(0.0, 1.0, m);
    if (!in_annulus_family(D, A))
      continue;
    double q = m - std::log(2.0);
    cplx a = std::polar(std::exp(rng.uniform(-q, q)), rng.uniform(-pi, pi));
    cplx b = std::polar(std::exp(rng.uniform(-q, q)), rng.uniform(-pi, pi));
    if (std::abs(a) > std::abs(b))
      std::swap(a, b);
    Polyline g = chi_arc(a, b);
    auto cum = g.arclengths();
    for (std::size_t j = 0; j < g.size(); ++j) {
      double ratio = cum[j] / (2 * pi * D.delta(g[j]));
      cone_worst = std::max(cone_worst, ratio);
      cone_bad += ratio > 1 + 1e-12;
    }
  }
  c.expect(qcx_bad == 0, std::to_string(qcx_bad) + " subarcs longer than 3|x-y|");
  c.expect(cone_bad == 0, std::to_string(cone_bad) + " cone violations");
  c.note("max_subarc_ratio", detail::g17(qcx_worst));
  c.note("max_cone_ratio", detail::g17(cone_worst));
  return detail::finish(11, "chi-arc properties", c);
}

// 12: chordal vs Euclidean quasihyperbolic distance when 0 is a boundary point
inline CriterionResult criterion_12(std::uint64_t seed)
{
  detail::Checks c;
  Domain Cs = Domain::finite_complement({0.0});
  Rng rng(seed + 12);
  int bad = 0;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int i = 0; i < 50; ++i) {
    cplx a = rng.complex_log_radius(-2, 2), b = rng.complex_log_radius(-2, 2);
    DistanceInterval kc = k_chordal_numeric(Cs, a, b).distance;
    DistanceInterval k = k_interval(Cs, a, b);
    bad += kc.upper < 0.25 * k.lower || kc.lower > 8.0 * k.upper;
    lo = std::min(lo, kc.mid() / k.mid());
    hi = std::max(hi, kc.mid() / k.mid());
  }
  c.expect(bad == 0, std::to_string(bad) + " certified violations of k/4 <= k_chi <= 8k");
  c.note("ratio_range", "[" + detail::g17(lo) + ", " + detail::g17(hi) + "]");
  return detail::finish(12, "chordal comparison", c);
}

inline CriterionResult run_criterion(int id, std::uint64_t seed = 0)
{
  using Fn = CriterionResult (*)(std::uint64_t);
  static const Fn table[criterion_count] = {criterion_1, criterion_2, criterion_3,  criterion_4,
                                            criterion_5, criterion_6, criterion_7,  criterion_8,
                                            criterion_9, criterion_10, criterion_11, criterion_12};
  if (id < 1 || id > criterion_count)
    throw std::invalid_argument("no criterion " + std::to_string(id));
  try {
    return table[id - 1](seed);
  } catch (const std::exception &e) {
    return {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what()};
  }
}

inline std::string format(const CriterionResult &r)
{
  return "criterion " + std::to_string(r.id) + ": " + (r.pass ? "PASS" : "FAIL") + "  " + r.name + "  (" +
         r.detail + ")";
}

} // namespace qhdist::acceptance

#endif // QHDIST_ACCEPTANCE_HPP
