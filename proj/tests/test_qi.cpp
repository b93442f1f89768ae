#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "qhdist/qi.hpp"
#include "qhdist/random.hpp"

using namespace qhdist;

namespace {

const double ln2 = std::log(2.0);

PunctureConfig sphere_three()
{
  PunctureConfig c;
  c.infinity_in_omega = true;
  c.finite = {{0.0, 0.25}, {1.0, 0.25}};
  c.r_infinity = 8.0;
  return c;
}

std::vector<std::pair<cplx, cplx>> disk_pairs(std::uint64_t seed, int n, double lo, double hi)
{
  Rng rng(seed);
  std::vector<std::pair<cplx, cplx>> out;
  for (int i = 0; i < n; ++i)
    out.push_back({rng.complex_log_radius(lo, hi), rng.complex_log_radius(lo, hi)});
  return out;
}

} // namespace

TEST(ModelMaps, Examples)
{
  EXPECT_DOUBLE_EQ(theta_ray(0.0, 0.25).real(), 0.25);
  EXPECT_NEAR(psi_log(1.0 / 16, 0.25), ln2, 1e-15);
  EXPECT_NEAR(phi_punctured_disk(1.0 / 16, 0.25).real(), 0.125, 1e-16);
  EXPECT_NEAR(phi_punctured_disk(std::pow(4.0, -4), 0.25).real(), 1.0 / 16, 1e-16);
  // Phi = theta o psi on the punctured disk
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    cplx z = rng.complex_log_radius(-20, std::log(0.25));
    EXPECT_NEAR(std::abs(phi_punctured_disk(z, 0.25) - theta_ray(psi_log(z, 0.25), 0.25)), 0.0, 1e-15);
  }
  EXPECT_THROW(psi_log(0.0, 0.25), std::domain_error);
  EXPECT_THROW(psi_log(0.5, 0.25), std::domain_error);
  EXPECT_THROW(phi_punctured_disk(0.1, 0.75), std::domain_error);
  EXPECT_THROW(theta_ray(-1.0, 0.25), std::domain_error);
}

TEST(ModelMaps, PhiP)
{
  for (cplx z : {cplx(1.0 / 16), cplx(0, 0.2), cplx(-1e-9, 3e-9)})
    EXPECT_NEAR(std::abs(phi_p(z, 0.0, 1.0, 0.25) - phi_punctured_disk(z, 0.25)), 0.0, 1e-16);
  // boundary circle is fixed pointwise in modulus, image on the ray towards xi
  cplx p(2, -1), xi(2, 1);
  cplx w = phi_p(p + std::polar(0.5, 1.0), p, xi, 0.5);
  EXPECT_NEAR(std::abs(w - p), 0.5, 1e-15);
  EXPECT_NEAR(std::arg(w - p), pi / 2, 1e-15);
  EXPECT_THROW(phi_p(p, p, xi, 0.5), std::domain_error);
  EXPECT_THROW(phi_p(1.0, p, p, 0.5), std::domain_error);
}

TEST(PunctureConfig, Validate)
{
  EXPECT_TRUE(validate_puncture_config(sphere_three()).empty());

  PunctureConfig c;
  c.complement = {1.0};
  c.finite = {{0.0, 0.75}};
  auto bad = validate_puncture_config(c);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_NE(bad[0].find("(E:1)"), std::string::npos);

  c.finite = {{0.0, 0.25}, {0.6, 0.1}};
  c.complement = {5.0};
  bad = validate_puncture_config(c);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_NE(bad[0].find("(E:2)"), std::string::npos);

  PunctureConfig d;
  d.complement = {1.0};
  d.infinity_in_omega = true;
  d.finite = {{0.0, 0.5}};
  d.r_infinity = 3.0;
  bad = validate_puncture_config(d);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_NE(bad[0].find("(E:3)"), std::string::npos);
  d.r_infinity = 4.0;
  EXPECT_TRUE(validate_puncture_config(d).empty());

  PunctureConfig e;
  e.finite = {{0.0, 0.25}};
  e.r_infinity = 8.0; // infinity is not a point of C
  EXPECT_FALSE(validate_puncture_config(e).empty());
}

TEST(PunctureConfig, Xi)
{
  PunctureConfig c;
  c.complement = {cplx(0, 1), cplx(0, -1), 3.0};
  c.finite = {{0.0, 0.25}};
  EXPECT_EQ(puncture_xi(c, 0.0), cplx(0, -1)); // tie broken by argument
}

TEST(GlobalQiMap, SphereThreePunctures)
{
  GlobalQiMap m = build_global_qi_map(sphere_three());
  EXPECT_NEAR(m.M(), std::log(6.4), 1e-12);
  EXPECT_NEAR(m.M_prime(), 56.5225507654354393, 1e-9);
  EXPECT_NEAR(m.K(), kappa + m.M_prime(), 1e-12);
  EXPECT_EQ(m.xi()[0], cplx(1.0));
  EXPECT_EQ(m.xi()[1], cplx(0.0));
  ASSERT_TRUE(m.infinity().has_value());
  EXPECT_EQ(m.infinity()->xi, cplx(1.0));
  EXPECT_EQ(m.infinity()->eta, cplx(0.0));
  EXPECT_DOUBLE_EQ(m.infinity()->R, 8.0);

  EXPECT_EQ(m(cplx(0.5, 0.3)), cplx(0.5, 0.3));
  EXPECT_EQ(m.branch(cplx(0.5, 0.3)), -2);
  EXPECT_NEAR(std::abs(m(1.0 / 16) - 0.125), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(m(1.0 + 1.0 / 16) - 0.875), 0.0, 1e-15);
  EXPECT_EQ(m.branch(cplx(0, 20)), -1);
  // Delta_inf boundary |z| = 8 goes to the ray point 1 - R1 = -8
  EXPECT_NEAR(std::abs(m(cplx(-8.0)) - cplx(-8.0)), 0.0, 1e-12);
  // images of large points move out along the negative real axis
  cplx w1 = m(cplx(0, 1e3)), w2 = m(cplx(0, 1e6));
  EXPECT_LT(w1.real(), -8.0);
  EXPECT_LT(w2.real(), w1.real());
  EXPECT_NEAR(w1.imag(), 0.0, 1e-9);
  EXPECT_THROW(m(0.0), std::domain_error);
}

TEST(GlobalQiMap, Errors)
{
  PunctureConfig c;
  c.complement = {1.0};
  c.finite = {{0.0, 0.25}};
  // complement of Omega_Delta has the isolated point 1
  EXPECT_THROW(build_global_qi_map(c), std::domain_error);
  c.finite = {{0.0, 0.75}};
  EXPECT_THROW(build_global_qi_map(c), std::invalid_argument);
}

TEST(GlobalQiMap, SinglePunctureWithoutUp)
{
  PunctureConfig c;
  c.complement = {1.0};
  c.finite = {{0.0, 0.25}};
  GlobalQiMap m = build_global_qi_map(c, false);
  EXPECT_TRUE(std::isinf(m.M()));
  EXPECT_TRUE(std::isinf(m.K()));
  EXPECT_EQ(m.xi()[0], cplx(1.0));
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    cplx z = rng.complex_log_radius(-30, std::log(0.25));
    EXPECT_EQ(m.branch(z), 0);
    EXPECT_EQ(m(z), phi_p(z, 0.0, 1.0, 0.25));
  }
  EXPECT_EQ(m(cplx(0.5, 0.5)), cplx(0.5, 0.5));
  EXPECT_FALSE(m.infinity().has_value());
}

TEST(GlobalQiMap, MPrime)
{
  EXPECT_NEAR(m_prime(2.0), 56.5225507654354393, 1e-12);
  EXPECT_NEAR(m_prime(40.0), 80 + std::log(4.0), 1e-12);
}

TEST(PhiInfinity, Unnormalized)
{
  // complement {2i, -1}: xi = 2i, normalized {1, i/2}
  std::vector<cplx> comp = {cplx(0, 2), cplx(-1)};
  InfinityChart ch = infinity_chart(comp, 8.0);
  EXPECT_EQ(ch.xi, cplx(0, 2));
  EXPECT_DOUBLE_EQ(ch.R, 4.0);
  EXPECT_NEAR(std::abs(ch.eta - cplx(0, 0.5)), 0.0, 1e-16);
  cplx z(0, 8.0); // z / xi = 4, inside |u - 1| < R1, projected onto the circle
  cplx w = phi_infinity(z, ch);
  double s = 1 + std::sqrt(1 + 25.0 - 1);
  double Psi = std::log(std::log((s - 1) / std::abs(ch.eta - 1.0)) / std::log(ch.R2));
  EXPECT_NEAR(std::abs(w - cplx(0, 2) * (1 - 5 * std::exp(Psi))), 0.0, 1e-13);
  EXPECT_THROW(infinity_chart(comp, 7.0), std::domain_error);
  EXPECT_THROW(phi_infinity(cplx(1.0), ch), std::domain_error);
  EXPECT_THROW(infinity_chart({cplx(2.0)}, 8.0), std::domain_error);
}

TEST(RoughIsometry, PuncturedDisk)
{
  GlobalQiMap m = build_global_qi_map(sphere_three());
  auto pairs = disk_pairs(7, 500, std::log(1e-8), std::log(0.25));
  auto t0 = std::chrono::steady_clock::now();
  QIReport r = verify_rough_isometry(std::cref(m), m.domain(), pairs, 1.0, pi / ln2);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_TRUE(r.violations.empty());
  EXPECT_LE(r.max_slack, 1.2);
  EXPECT_LT(secs, 60.0);
  for (const auto &q : r.pairs) {
    EXPECT_TRUE(q.h.lower <= q.h.upper && q.k_mapped.lower <= q.k_mapped.upper);
    EXPECT_FALSE(q.violation);
  }
}

TEST(RoughIsometry, SquaringFails)
{
  GlobalQiMap m = build_global_qi_map(sphere_three());
  auto sq = [](cplx z) { return z * z; };
  std::vector<std::pair<cplx, cplx>> pairs = {{1e-8, 0.2}, {cplx(0, 1e-10), 0.1}, {1e-3, cplx(0, -0.2)}};
  QIReport r = verify_rough_isometry(sq, m.domain(), pairs, 1.0, pi / ln2);
  EXPECT_FALSE(r.violations.empty());
  EXPECT_GT(r.max_slack, 1.0);
  EXPECT_THROW(verify_rough_isometry(sq, m.domain(), pairs, 0.5, 0.0), std::invalid_argument);
}

TEST(RoughIsometry, IdentityOnDisk)
{
  // complement of the unit disk is UP with M = 0, so K = kappa
  Domain D = Domain::unit_disk();
  auto id = [](cplx z) { return z; };
  std::vector<std::pair<cplx, cplx>> pairs;
  Rng rng(11);
  for (int i = 0; i < 40; ++i)
    pairs.push_back({std::polar(rng.uniform(0, 0.99), rng.uniform(-pi, pi)),
                     std::polar(rng.uniform(0, 0.99), rng.uniform(-pi, pi))});
  QIReport r = verify_rough_isometry(id, D, pairs, kappa, 0.0);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.max_slack, 0.0);
}

TEST(Qie, Inequality)
{
  auto c = qie_inequality_check(1, 1, 1, 1);
  EXPECT_DOUBLE_EQ(c.lhs, 1.0);
  EXPECT_DOUBLE_EQ(c.rhs, 0.5);
  EXPECT_TRUE(c.holds);
  EXPECT_TRUE(qie_inequality_check(kappa, ln2, 1, 1).holds);
  auto d = qie_inequality_check(1, 1, 10, 1);
  EXPECT_DOUBLE_EQ(d.lhs, 5.5);
  EXPECT_DOUBLE_EQ(d.rhs, 5.0);
  EXPECT_TRUE(d.holds);
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    double K = std::exp(rng.uniform(-5, 5)), L = std::exp(rng.uniform(-5, 5));
    double x = std::exp(rng.uniform(-8, 8)), y = L * std::exp(rng.uniform(0, 8));
    EXPECT_TRUE(qie_inequality_check(K, L, x, y).holds);
  }
  EXPECT_THROW(qie_inequality_check(1, 2, 1, 1), std::invalid_argument);
  EXPECT_THROW(qie_inequality_check(0, 1, 1, 1), std::invalid_argument);
}

TEST(Counterexample, Divergence)
{
  DivergenceTable t = counterexample_divergence(1.0, 12);
  ASSERT_EQ(t.rows.size(), 12u);
  EXPECT_EQ(t.rows[0].L, 1.0);
  EXPECT_NEAR(t.rows[2].bound, -0.355172180607204, 1e-12);
  EXPECT_NEAR(t.rows[6].bound, 110.934483458178387, 1e-10);
  EXPECT_EQ(t.rows[6].k, 128.0);
  EXPECT_LE(t.increasing_from, 3);
  EXPECT_GT(t.rows.back().bound, 4000.0);
  DivergenceTable s = counterexample_divergence(0.1, 12);
  EXPECT_GT(s.increasing_from, t.increasing_from);
  EXPECT_GT(s.rows.back().bound, 0.0);
  EXPECT_THROW(counterexample_divergence(0.0), std::invalid_argument);
  EXPECT_THROW(counterexample_divergence(1.5), std::invalid_argument);
}

TEST(QsIndex, EventualIdentity)
{
  QsIndex q = qs_eventual_identity_index(1.0, 1.0);
  EXPECT_DOUBLE_EQ(q.tau, 0.5);
  EXPECT_LE(q.N, 2);
  EXPECT_GE(q.N, 1);
  QsIndex r = qs_eventual_identity_index(4.0, 1.0);
  EXPECT_DOUBLE_EQ(r.tau, 0.125);
  EXPECT_GT(r.N, q.N);
  EXPECT_NEAR(q.ratios[0], std::sqrt((1 + std::exp(4.0)) / (1 + std::exp(8.0))), 1e-15);
  EXPECT_DOUBLE_EQ(qs_eventual_identity_index(0.25, 1.0).tau, 1.0);
  EXPECT_THROW(qs_eventual_identity_index(1.0, 0.0), std::invalid_argument);
}
