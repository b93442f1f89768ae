#include <gtest/gtest.h>

#include <cmath>

#include "qhdist/qh_checks.hpp"
#include "qhdist/random.hpp"

using namespace qhdist;

namespace {
const double e = std::exp(1.0);
const cplx I(0.0, 1.0);
} // namespace

TEST(KStar, Examples)
{
  EXPECT_NEAR(k_star_exact(1.0, e), 1.0, 1e-15);
  EXPECT_EQ(k_star_exact(cplx(0.3, -2), cplx(0.3, -2)), 0.0);
  EXPECT_NEAR(k_star_exact(1.0, I), pi / 2, 1e-15);
  EXPECT_NEAR(k_star_exact(1.0, -1.0), pi, 1e-15);
  EXPECT_THROW(k_star_exact(0.0, 1.0), std::domain_error);
}

TEST(KHalfPlane, Examples)
{
  EXPECT_NEAR(k_halfplane_exact(I, 2.0 * I), std::log(2.0), 1e-15);
  // quadrature oracle along the vertical geodesic
  double q = rho_length(Polyline({I, 2.0 * I}), [](cplx z) { return 1.0 / z.imag(); });
  EXPECT_NEAR(q, k_halfplane_exact(I, 2.0 * I), 1e-9);
  EXPECT_EQ(k_halfplane_exact(1.0 + I, 1.0 + I), 0.0);
  EXPECT_NEAR(k_halfplane_exact(I, 1.0 + I), 0.962423650119206895, 1e-15);
  EXPECT_THROW(k_halfplane_exact(-I, I), std::domain_error);
}

TEST(GehringPalka, Examples)
{
  Domain D = Domain::unit_disk();
  EXPECT_NEAR(gp_lower_bound(D, 0.0, 0.9).j, std::log(10.0), 1e-14);
  EXPECT_NEAR(gp_lower_bound(D, 0.0, 0.9).delta_ratio, std::log(10.0), 1e-14);
  GpBounds z = gp_lower_bound(D, 0.2, 0.2);
  EXPECT_EQ(z.j, 0.0);
  EXPECT_EQ(z.delta_ratio, 0.0);
  Domain Cs = Domain::finite_complement({0.0});
  EXPECT_NEAR(gp_lower_bound(Cs, 1.0, 2.0).j, std::log(2.0), 1e-15);
  EXPECT_LE(gp_lower_bound(Cs, 1.0, 2.0).j, k_star_exact(1.0, 2.0) + 1e-15);
}

TEST(KLengthLower, Examples)
{
  Domain D = Domain::unit_disk();
  EXPECT_NEAR(k_length_lower(Polyline({0.0, 0.9}), D), std::log(10.0), 1e-14);
  EXPECT_EQ(k_length_lower(Polyline({0.3}), D), 0.0);
  std::vector<cplx> loop;
  const int n = 4096;
  for (int k = 0; k <= n; ++k)
    loop.push_back(std::polar(1.0, 2 * pi * k / n));
  EXPECT_NEAR(k_length_lower(Polyline(loop), Domain::finite_complement({0.0})), std::log1p(2 * pi), 1e-6);
}

TEST(KLowerBound, NeverExceedsExact)
{
  Rng rng(11);
  Domain Cs = Domain::finite_complement({0.0});
  Domain H = Domain::upper_half_plane();
  for (int i = 0; i < 500; ++i) {
    cplx a = rng.complex_log_radius(-3, 3), b = rng.complex_log_radius(-3, 3);
    EXPECT_NEAR(k_lower_bound(Cs, a, b).value, k_star_exact(a, b), 1e-12);
    cplx p(rng.uniform(-3, 3), std::exp(rng.uniform(-3, 3))), q(rng.uniform(-3, 3), std::exp(rng.uniform(-3, 3)));
    EXPECT_NEAR(k_lower_bound(H, p, q).value, k_halfplane_exact(p, q), 1e-9);
  }
  // disk: k_D(0, r) = log(1/(1-r)) along the radius
  Domain D = Domain::unit_disk();
  EXPECT_NEAR(k_lower_bound(D, 0.0, 0.5).value, std::log(2.0), 1e-12);
}

TEST(KIntervalFast, ContainsExact)
{
  Rng rng(12);
  Domain Cs = Domain::finite_complement({0.0});
  for (int i = 0; i < 100; ++i) {
    cplx a = rng.complex_log_radius(-2, 2), b = rng.complex_log_radius(-2, 2);
    DistanceInterval k = k_interval_fast(Cs, a, b);
    double x = k_star_exact(a, b);
    EXPECT_TRUE(k.contains(x, 1e-12)) << a << " " << b;
    EXPECT_LE(k.upper, x * (1 + 1e-4) + 1e-12);
  }
  Domain D2 = Domain::finite_complement({0.0, -1.0});
  DistanceInterval f = k_interval_fast(D2, cplx(-0.5, 0.3), cplx(-0.5, -0.3));
  DistanceInterval g = k_numeric(D2, cplx(-0.5, 0.3), cplx(-0.5, -0.3)).distance;
  EXPECT_LE(f.lower, g.upper);
  EXPECT_LE(g.lower, f.upper);
}

TEST(SegmentInDomain, Shapes)
{
  Domain Cs = Domain::finite_complement({0.0});
  EXPECT_FALSE(segment_in_domain(Cs, -1.0, 1.0));
  EXPECT_TRUE(segment_in_domain(Cs, -1.0 + I, 1.0 + I));
  Domain X = Domain::exterior_unit_disk();
  EXPECT_FALSE(segment_in_domain(X, cplx(-2, 0.5), cplx(2, 0.5)));
  EXPECT_TRUE(segment_in_domain(X, cplx(-2, 1.5), cplx(2, 1.5)));
}

TEST(KNumeric, Examples)
{
  Domain Cs = Domain::finite_complement({0.0});
  GeodesicResult r = k_numeric(Cs, 1.0, e);
  EXPECT_LE(r.distance.lower, 1.0 + 1e-12);
  EXPECT_GE(r.distance.upper, 1.0 - 1e-12);
  EXPECT_LE(r.distance.upper, 1.02);
  GeodesicResult z = k_numeric(Cs, cplx(2, 1), cplx(2, 1));
  EXPECT_EQ(z.distance.lower, 0.0);
  EXPECT_EQ(z.distance.upper, 0.0);
  GeodesicResult q = k_numeric(Cs, 1.0, I);
  EXPECT_NEAR(q.distance.upper, pi / 2, 0.02 * pi / 2);
  EXPECT_TRUE(q.distance.contains(pi / 2, 1e-12));
}

TEST(KNumeric, RandomPunctured)
{
  Rng rng(13);
  Domain Cs = Domain::finite_complement({0.0});
  for (int i = 0; i < 15; ++i) {
    cplx a = rng.complex_log_radius(-2, 2), b = rng.complex_log_radius(-2, 2);
    double x = k_star_exact(a, b);
    DistanceInterval k = k_numeric(Cs, a, b).distance;
    EXPECT_TRUE(k.contains(x, 1e-12));
    EXPECT_LE(k.width(), 0.02 * x);
  }
}

TEST(KNumeric, HalfPlane)
{
  GeodesicResult r = k_numeric(Domain::upper_half_plane(), I, 1.0 + I);
  double x = std::acosh(1.5);
  EXPECT_TRUE(r.distance.contains(x, 1e-12));
  EXPECT_NEAR(r.distance.upper, x, 0.02 * x);
}

TEST(KNumeric, PathInvariants)
{
  Domain D = Domain::finite_complement({0.0, 1.0});
  cplx a(-0.4, 0.7), b(1.6, -0.3);
  GeodesicResult r = k_numeric(D, a, b);
  EXPECT_EQ(r.path.front(), a);
  EXPECT_EQ(r.path.back(), b);
  double len = rho_length(r.path, [&](cplx z) { return 1.0 / D.delta(z); });
  EXPECT_GE(len, r.distance.lower);
  EXPECT_LE(len, r.distance.upper * (1 + 1e-9));
  EXPECT_EQ(r.resolution.resolution, default_resolution);
  EXPECT_GT(r.resolution.charts, 0);
}

TEST(KNumeric, Symmetry)
{
  Domain D = Domain::finite_complement({0.0, -1.0});
  Rng rng(14);
  for (int i = 0; i < 4; ++i) {
    cplx a = rng.complex_box(-2, 2), b = rng.complex_box(-2, 2);
    DistanceInterval ab = k_numeric(D, a, b).distance, ba = k_numeric(D, b, a).distance;
    EXPECT_LE(ab.lower, ba.upper);
    EXPECT_LE(ba.lower, ab.upper);
    EXPECT_NEAR(ab.upper, ba.upper, 1e-6 * ab.upper);
  }
}

TEST(KNumeric, TriangleInequality)
{
  Domain D = Domain::finite_complement({0.0, 1.0});
  Rng rng(15);
  for (int i = 0; i < 3; ++i) {
    cplx a = rng.complex_box(-2, 3), b = rng.complex_box(-2, 3), c = rng.complex_box(-2, 3);
    DistanceInterval ab = k_numeric(D, a, b).distance, bc = k_numeric(D, b, c).distance,
                     ac = k_numeric(D, a, c).distance;
    EXPECT_LE(ac.lower, ab.upper + bc.upper);
    EXPECT_LE(ab.lower, ac.upper + bc.upper);
  }
}

TEST(KNumeric, RefinementMonotone)
{
  Domain D = Domain::finite_complement({0.0, 1.0, cplx(0.5, 1.0)});
  cplx a(-0.5, 0.4), b(1.3, 0.6);
  double prev = k_numeric(D, a, b, 64).distance.upper;
  for (int r : {128, 256, 512}) {
    double u = k_numeric(D, a, b, r).distance.upper;
    EXPECT_LE(u, prev + 1e-9) << r;
    prev = u;
  }
}

TEST(KNumeric, Errors)
{
  Domain D = Domain::unit_disk();
  EXPECT_THROW(k_numeric(D, 0.0, 0.9999, 64), std::domain_error);
  EXPECT_THROW(k_numeric(D, 0.0, 1.5), std::domain_error);
  EXPECT_THROW(k_numeric(D, 0.0, 0.5, 4), std::invalid_argument);
  // disk interval contains the radial value
  DistanceInterval k = k_numeric(D, 0.0, 0.9).distance;
  EXPECT_TRUE(k.contains(std::log(10.0), 1e-12));
}

TEST(KChordal, ComparisonWithK)
{
  Domain Cs = Domain::finite_complement({0.0});
  EXPECT_EQ(k_chordal_numeric(Cs, I, I).distance.upper, 0.0);
  Rng rng(16);
  for (int i = 0; i < 6; ++i) {
    cplx a = rng.complex_log_radius(-2, 2), b = rng.complex_log_radius(-2, 2);
    DistanceInterval kc = k_chordal_numeric(Cs, a, b).distance;
    DistanceInterval k = k_interval(Cs, a, b);
    EXPECT_GE(kc.upper, 0.25 * k.lower);
    EXPECT_LE(kc.lower, 8.0 * k.upper);
  }
}

TEST(Mobius, Identity)
{
  Domain D = Domain::finite_complement({0.0, 1.0});
  MobiusReport r = check_mobius_quasi_invariance(MobiusMap::identity(), D, {{cplx(0.5, 0.5), cplx(-1, 0.2)}});
  EXPECT_EQ(r.violations, 0);
  EXPECT_EQ(r.min_ratio, 1.0);
  EXPECT_EQ(r.max_ratio, 1.0);
}

TEST(Mobius, Inversion)
{
  Domain Cs = Domain::finite_complement({0.0});
  Rng rng(17);
  std::vector<std::pair<cplx, cplx>> pairs;
  for (int i = 0; i < 100; ++i)
    pairs.push_back({rng.complex_log_radius(-3, 3), rng.complex_log_radius(-3, 3)});
  MobiusReport r = check_mobius_quasi_invariance(MobiusMap(0.0, 1.0, 1.0, 0.0), Cs, pairs);
  EXPECT_EQ(r.violations, 0);
  EXPECT_NEAR(r.min_ratio, 1.0, 1e-12);
  EXPECT_NEAR(r.max_ratio, 1.0, 1e-12);
}

TEST(Mobius, Cayley)
{
  MobiusMap T(1.0, -1.0, 1.0, 1.0);
  Domain D = Domain::finite_complement({0.0, 1.0, -1.0});
  Domain E = mobius_image(T, D);
  ASSERT_EQ(E.punctures().size(), 3u);
  EXPECT_TRUE(E.infinity_on_boundary());
  EXPECT_THROW(mobius_image(T, Domain::finite_complement({0.0, 1.0})), std::domain_error);
  MobiusReport r = check_mobius_quasi_invariance(T, D, {{cplx(0.5, 0.5), cplx(-2, 1)}, {cplx(2, -1), cplx(0.1, 0.3)}});
  EXPECT_EQ(r.violations, 0);
  EXPECT_GE(r.min_ratio, 0.5);
  EXPECT_LE(r.max_ratio, 2.0);
}

TEST(ThinTriangle, Examples)
{
  Domain H = Domain::upper_half_plane();
  EXPECT_EQ(thin_triangle_defect(H, I, I, I), 0.0);
  double d = thin_triangle_defect(H, I, 2.0 * I, 1.0 + I);
  EXPECT_GE(d, 0.0);
  EXPECT_LE(d, std::log(1 + std::sqrt(2.0)) + 0.05);
  Domain Cs = Domain::finite_complement({0.0});
  double e4 = std::exp(4.0);
  double t = thin_triangle_defect(Cs, 1.0, e4, e4 * I);
  EXPECT_TRUE(std::isfinite(t));
  EXPECT_GT(t, 0.0);
}

TEST(AnnulusComparison, PuncturedPlane)
{
  Domain Cs = Domain::finite_complement({0.0});
  auto rep = check_annulus_k_comparison(Cs, Annulus::from_radii(0.0, 0.01, 100.0),
                                        {{1.0, I}, {cplx(0.8, 0.1), cplx(-1.2, 0.3)}});
  EXPECT_EQ(rep.k_violations, 0);
  EXPECT_EQ(rep.delta_violations, 0);
  EXPECT_NEAR(rep.min_ratio, 1.0, 1e-15);
  EXPECT_NEAR(rep.max_ratio, 1.0, 1e-15);
}

TEST(AnnulusComparison, TwoPunctures)
{
  Domain D = Domain::finite_complement({0.0, 100.0});
  EXPECT_EQ(D.delta(1.0), 1.0);
  auto rep = check_annulus_k_comparison(D, Annulus::from_radii(0.0, 1e-3, 10.0),
                                        {{1.0, I}, {cplx(0.9, 0.2), cplx(-1.1, -0.1)}, {1.0, 1.5}});
  EXPECT_EQ(rep.k_violations, 0);
  EXPECT_EQ(rep.delta_violations, 0);
  EXPECT_GE(rep.min_ratio, 1.0 - 1e-12);
  EXPECT_LE(rep.max_ratio, 2.0);
  EXPECT_THROW(check_annulus_k_comparison(D, Annulus::from_radii(0.0, 1.0, 200.0), {}), std::invalid_argument);
  EXPECT_THROW(check_annulus_k_comparison(D, Annulus::from_radii(0.0, 1.0, 3.0), {}), std::invalid_argument);
  EXPECT_THROW(check_annulus_k_comparison(D, Annulus::from_radii(0.0, 1e-3, 10.0), {{1e-3 * 1.5, 1.0}}),
               std::invalid_argument);
}
