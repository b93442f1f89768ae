#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qhdist/annulus.hpp"
#include "qhdist/chi_arc.hpp"
#include "qhdist/mobius.hpp"
#include "qhdist/polyline.hpp"
#include "qhdist/random.hpp"

using namespace qhdist;

TEST(Chordal, Examples)
{
  EXPECT_DOUBLE_EQ(chordal_distance(0.0, ExtPoint::infinity()), 2.0);
  EXPECT_DOUBLE_EQ(chordal_distance(cplx(0.3, -2.0), cplx(0.3, -2.0)), 0.0);
  EXPECT_DOUBLE_EQ(chordal_distance(1.0, -1.0), 2.0);
  EXPECT_DOUBLE_EQ(chordal_distance(ExtPoint::infinity(), ExtPoint::infinity()), 0.0);
  // 2 |i - 0| / (sqrt 2 * 1)
  EXPECT_NEAR(chordal_distance(cplx(0, 1), 0.0), std::sqrt(2.0), 1e-15);
}

TEST(Chordal, Spherical)
{
  EXPECT_DOUBLE_EQ(spherical_distance(2.0, 2.0), 0.0);
  EXPECT_NEAR(spherical_distance(0.0, ExtPoint::infinity()), pi, 1e-15);
  EXPECT_NEAR(spherical_distance(1.0, -1.0), pi, 1e-15);
}

TEST(Chordal, TriangleInequalityAndSineRelation)
{
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    auto pick = [&]() -> ExtPoint {
      if (rng.uniform() < 0.05)
        return ExtPoint::infinity();
      return rng.complex_log_radius(-4.0, 4.0);
    };
    ExtPoint x = pick(), y = pick(), z = pick();
    double xy = chordal_distance(x, y), yz = chordal_distance(y, z), xz = chordal_distance(x, z);
    EXPECT_LE(xz, xy + yz + 1e-12);
    EXPECT_NEAR(chordal_distance(y, x), xy, 1e-15);
    EXPECT_LE(xy, 2.0);
    double s = spherical_distance(x, y);
    EXPECT_NEAR(2.0 * std::sin(s / 2.0), xy, 1e-12);
    EXPECT_LE(xy, s + 1e-15);
    EXPECT_LE(s, pi / 2.0 * xy + 1e-12);
  }
}

TEST(ExtPointTest, RejectsNonFinite)
{
  EXPECT_THROW(ExtPoint(cplx(NAN, 0.0)), std::invalid_argument);
  EXPECT_THROW(ExtPoint(cplx(INFINITY, 0.0)), std::invalid_argument);
  EXPECT_TRUE(ExtPoint::infinity().is_infinity());
  EXPECT_THROW(ExtPoint::infinity().value(), std::logic_error);
}

TEST(AnnulusTest, Modulus)
{
  EXPECT_DOUBLE_EQ(annulus_modulus(Annulus(0.0, 1.0, 1.0)), 2.0);
  Annulus A = Annulus::from_radii(0.0, 1.0, 4.0);
  EXPECT_NEAR(A.d(), 2.0, 1e-15);
  EXPECT_NEAR(A.m(), std::log(2.0), 1e-15);
  EXPECT_NEAR(annulus_modulus(A), std::log(4.0), 1e-15);
  EXPECT_TRUE(std::isinf(annulus_modulus(Annulus::punctured_disk(0.0, 1.0))));
  EXPECT_TRUE(std::isinf(annulus_modulus(Annulus::exterior(0.0, 1.0))));
  EXPECT_THROW(Annulus(0.0, -1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(Annulus(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST(AnnulusTest, CoreBandRoundTrip)
{
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    Annulus A(rng.complex_box(-5, 5), std::exp(rng.uniform(-3, 3)), rng.uniform(0.1, 6.0));
    double q = rng.uniform(0.01, 0.99) * A.m();
    Annulus B = A.core(q).band(q);
    EXPECT_NEAR(B.m(), A.m(), 1e-12);
    EXPECT_EQ(B.d(), A.d());
    Annulus C = A.band(q).core(q);
    EXPECT_NEAR(C.m(), A.m(), 1e-12);
    EXPECT_TRUE(is_concentric_subannulus(A.core(q), A));
  }
}

TEST(AnnulusTest, Subannulus)
{
  EXPECT_TRUE(is_subannulus(Annulus(0.0, 1.0, 1.0), Annulus(0.0, 1.0, 2.0)));
  EXPECT_FALSE(is_subannulus(Annulus(0.0, 1.0, 2.0), Annulus(0.0, 1.0, 1.0)));
  Annulus Ap = Annulus::from_radii(0.1, 0.5, 1.5), A = Annulus::from_radii(0.0, 0.2, 3.0);
  EXPECT_TRUE(is_subannulus(Ap, A));
  EXPECT_FALSE(is_concentric_subannulus(Ap, A));
  // shifted far enough that the inner disk of A pokes out of A'_in
  EXPECT_FALSE(is_subannulus(Annulus::from_radii(0.35, 0.5, 1.5), A));
  EXPECT_TRUE(is_subannulus(Annulus(0.0, 1.0, 1.0), Annulus::punctured_disk(0.0, 5.0)));
  EXPECT_FALSE(is_subannulus(Annulus::punctured_disk(0.0, 1.0), Annulus(0.0, 1.0, 3.0)));
}

TEST(AnnulusTest, SubannulusSeparatesBoundaryCircles)
{
  Rng rng(11);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    Annulus A(rng.complex_box(-2, 2), std::exp(rng.uniform(-1, 1)), rng.uniform(0.5, 3.0));
    Annulus Ap(A.center() + rng.complex_box(-0.3, 0.3) * A.d(), A.d() * std::exp(rng.uniform(-0.3, 0.3)),
               rng.uniform(0.05, 1.0) * A.m());
    if (!is_subannulus(Ap, A))
      continue;
    ++checked;
    std::vector<ExtPoint> E;
    for (int k = 0; k < 16; ++k) {
      E.push_back(A.center() + std::polar(A.inner_radius(), 2 * pi * k / 16));
      E.push_back(A.center() + std::polar(A.outer_radius(), 2 * pi * k / 16));
    }
    EXPECT_TRUE(separates(Ap, E));
  }
  EXPECT_GT(checked, 50);
}

TEST(AnnulusTest, Separates)
{
  Annulus A(0.0, 1.0, 0.5);
  EXPECT_TRUE(separates(A, {0.0, ExtPoint::infinity()}));
  EXPECT_FALSE(separates(A, {0.0}));
  Annulus B = Annulus::from_radii(0.0, 1.0, 2.0);
  EXPECT_TRUE(separates(B, {0.0, 0.5, 3.0, ExtPoint::infinity()}));
  EXPECT_THROW(separates(B, {1.5}), std::invalid_argument);
}

TEST(Crossing, Examples)
{
  Annulus A = Annulus::from_radii(0.0, 1.0, 2.0);
  EXPECT_EQ(crossing_count(Polyline({0.5, 3.0}), A), 1);
  std::vector<cplx> arc;
  for (int k = 0; k <= 20; ++k)
    arc.push_back(std::polar(1.5, 0.1 * k));
  EXPECT_EQ(crossing_count(Polyline(arc), A), 0);
  EXPECT_EQ(crossing_count(Polyline({0.5, 3.0, 0.5}), A), 2);
  // passing straight through the hole crosses twice
  EXPECT_EQ(crossing_count(Polyline({cplx(-3, 0.1), cplx(3, 0.1)}), A), 2);
  // touching the outer circle is not a crossing
  EXPECT_EQ(crossing_count(Polyline({0.5, 2.0}), A), 0);
  EXPECT_EQ(crossing_count(Polyline({cplx(0.5)}), A), 0);
}

TEST(Crossing, AtLeastOneWhenEndpointsSeparated)
{
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    Annulus A(rng.complex_box(-1, 1), std::exp(rng.uniform(-1, 1)), rng.uniform(0.1, 2.0));
    std::vector<cplx> pts;
    for (int k = 0; k < 6; ++k)
      pts.push_back(rng.complex_box(-8, 8));
    Polyline g = Polyline::cleaned(pts);
    std::vector<ExtPoint> ends{g.front(), g.back()};
    if (A.contains(g.front()) || A.contains(g.back()))
      continue;
    if (separates(A, ends)) {
      EXPECT_GE(crossing_count(g, A), 1);
    }
  }
}

TEST(PolylineTest, LengthAndSubpath)
{
  Polyline g({0.0, 3.0, cplx(3, 4)});
  EXPECT_DOUBLE_EQ(g.length(), 7.0);
  Polyline s = g.subpath(1.0, 5.0);
  EXPECT_NEAR(s.length(), 4.0, 1e-14);
  EXPECT_NEAR(std::abs(s.front() - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.back() - cplx(3, 2)), 0.0, 1e-15);
  EXPECT_EQ(s.size(), 3u);
  EXPECT_THROW(Polyline({1.0, 1.0}), std::invalid_argument);
  EXPECT_EQ(Polyline::cleaned({1.0, 1.0, 2.0}).size(), 2u);
  EXPECT_DOUBLE_EQ(g.reversed().length(), 7.0);
}

TEST(ChiArc, Examples)
{
  Polyline s = chi_arc(1.0, 2.0);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_DOUBLE_EQ(s.length(), 1.0);

  Polyline q = chi_arc(1.0, cplx(0, 2));
  EXPECT_NEAR(q.length(), pi / 2 + 1.0, 1e-6);
  EXPECT_LE(q.length(), pi / 2 + 1.0);
  EXPECT_EQ(q.front(), cplx(1.0));
  EXPECT_EQ(q.back(), cplx(0, 2));
  EXPECT_LE(q.length(), (pi / 2 + 1) * std::abs(cplx(1.0) - cplx(0, 2)));

  // reversed order gives the reversed path
  Polyline r = chi_arc(cplx(0, 2), 1.0);
  EXPECT_EQ(r.front(), cplx(0, 2));
  EXPECT_NEAR(r.length(), q.length(), 1e-12);

  // opposite points go counterclockwise: the arc passes through i
  Polyline o = chi_arc(1.0, -3.0);
  bool upper = false;
  for (cplx z : o.points())
    if (z.imag() > 0.99)
      upper = true;
  EXPECT_TRUE(upper);
  EXPECT_THROW(chi_arc(0.0, 1.0), std::invalid_argument);
}

TEST(ChiArc, ModulusRangeAndStep)
{
  Polyline g = chi_arc(cplx(0.5, 0.2), cplx(-3, -1));
  double ra = std::abs(cplx(0.5, 0.2)), rb = std::abs(cplx(-3, -1));
  for (cplx z : g.points()) {
    EXPECT_GE(std::abs(z), ra * (1 - 1e-12));
    EXPECT_LE(std::abs(z), rb * (1 + 1e-12));
  }
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    double sag = ra * (1 - std::cos(std::arg(g[i] / g[i - 1]) / 2));
    EXPECT_LE(sag, 1e-6 * ra);
  }
}

TEST(ChiArc, Quasiconvexity)
{
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    cplx a = rng.complex_log_radius(-3, 3), b = rng.complex_log_radius(-3, 3);
    Polyline g = chi_arc(a, b);
    EXPECT_LE(g.length(), (pi / 2 + 1) * std::abs(a - b) * (1 + 1e-12));
    auto cum = g.arclengths();
    for (int k = 0; k < 10; ++k) {
      std::size_t u = rng.index(g.size()), v = rng.index(g.size());
      if (u > v)
        std::swap(u, v);
      EXPECT_LE(cum[v] - cum[u], 3.0 * std::abs(g[v] - g[u]) + 1e-12);
    }
  }
}

TEST(Mobius, Examples)
{
  MobiusMap I = MobiusMap::identity();
  EXPECT_EQ(I.apply(cplx(2, 3)).value(), cplx(2, 3));
  EXPECT_NEAR(std::abs(I.derivative(cplx(2, 3)) - 1.0), 0.0, 1e-15);
  MobiusMap inv(0.0, 1.0, 1.0, 0.0);
  EXPECT_NEAR(std::abs(inv(2.0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(inv.derivative(2.0) - (-0.25)), 0.0, 1e-15);
  EXPECT_TRUE(inv.apply(0.0).is_infinity());
  EXPECT_EQ(inv.apply(ExtPoint::infinity()).value(), cplx(0.0));
  MobiusMap T(1.0, -1.0, 1.0, 1.0);
  EXPECT_NEAR(std::abs(T.apply(ExtPoint::infinity()).value() - 1.0), 0.0, 1e-15);
  EXPECT_THROW(T.derivative(-1.0), std::domain_error);
  EXPECT_THROW(MobiusMap(1.0, 2.0, 2.0, 4.0), std::invalid_argument);
}

TEST(Mobius, ComposeInverse)
{
  Rng rng(9);
  MobiusMap T(cplx(1, 2), cplx(0.5, -1), cplx(0.3, 0.1), cplx(2, 0));
  MobiusMap S = T.compose(T.inverse());
  for (int i = 0; i < 50; ++i) {
    cplx z = rng.complex_box(-3, 3);
    EXPECT_NEAR(std::abs(S(z) - z), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(T.inverse()(T(z)) - z), 0.0, 1e-12);
    cplx h = 1e-6;
    cplx fd = (T(z + h) - T(z - h)) / (2.0 * h);
    EXPECT_NEAR(std::abs(fd - T.derivative(z)), 0.0, 1e-6 * std::max(1.0, std::abs(fd)));
  }
}
