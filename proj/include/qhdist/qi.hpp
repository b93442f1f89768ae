#ifndef QHDIST_QI_HPP
#define QHDIST_QI_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "beta_up.hpp"
#include "constants.hpp"
#include "domain.hpp"
#include "hyperbolic.hpp"
#include "interval.hpp"
#include "quasihyperbolic.hpp"

namespace qhdist {

// ---- puncture configurations

struct Puncture {
  cplx p;
  double r;
};

// Omega is the sphere minus the finite set `complement` (and minus infinity unless infinity_in_omega).
struct PunctureConfig {
  std::vector<cplx> complement;
  bool infinity_in_omega = false;
  std::vector<Puncture> finite;
  std::optional<double> r_infinity; // set when infinity is a puncture
};

inline double base_delta(const PunctureConfig &cfg, cplx z)
{
  double d = std::numeric_limits<double>::infinity();
  for (cplx q : cfg.complement)
    d = std::min(d, std::abs(z - q));
  return d;
}

// Violated assumptions, empty when the configuration is admissible.
inline std::vector<std::string> validate_puncture_config(const PunctureConfig &cfg)
{
  std::vector<std::string> bad;
  bool inf_puncture = cfg.r_infinity.has_value();
  if (inf_puncture != cfg.infinity_in_omega)
    bad.push_back(inf_puncture ? "infinity is a puncture but does not lie in Omega"
                               : "infinity lies in Omega but is not a puncture");
  for (const auto &q : cfg.finite) {
    if (!is_finite(q.p) || !(q.r > 0.0) || !std::isfinite(q.r))
      bad.push_back("puncture " + detail::fmt_point(q.p) + ": radius must be positive and finite");
    for (cplx c : cfg.complement)
      if (c == q.p)
        bad.push_back("puncture " + detail::fmt_point(q.p) + " is not a point of Omega");
  }
  if (inf_puncture && !(*cfg.r_infinity > 0.0))
    bad.push_back("r_infinity must be positive");
  for (const auto &q : cfg.finite)
    if (!(2 * q.r <= base_delta(cfg, q.p)))
      bad.push_back("(E:1) 2 r_p <= delta(p) fails at " + detail::fmt_point(q.p));
  for (std::size_t i = 0; i < cfg.finite.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.finite.size(); ++j) {
      const auto &a = cfg.finite[i], &b = cfg.finite[j];
      if (!(2 * (a.r + b.r) <= std::abs(a.p - b.p)))
        bad.push_back("(E:2) 2(r_p + r_q) <= |p - q| fails for " + detail::fmt_point(a.p) + ", " + detail::fmt_point(b.p));
    }
  if (inf_puncture) {
    double lim = 0.25 * *cfg.r_infinity;
    for (cplx c : cfg.complement)
      if (!(std::abs(c) <= lim))
        bad.push_back("(E:3) complement point " + detail::fmt_point(c) + " lies outside D[0; r_inf/4]");
    for (const auto &q : cfg.finite)
      if (!(std::abs(q.p) + q.r <= lim))
        bad.push_back("(E:3) Delta_p for p = " + detail::fmt_point(q.p) + " is not inside D[0; r_inf/4]");
  }
  std::size_t nb = cfg.complement.size() + cfg.finite.size() + 1; // infinity is always outside Omega_Pi
  if (nb < 3)
    bad.push_back("Omega_Pi is not hyperbolic");
  return bad;
}

// Omega_Pi as a domain (always a plane domain)
inline Domain omega_pi(const PunctureConfig &cfg)
{
  std::vector<cplx> pts = cfg.complement;
  for (const auto &q : cfg.finite)
    pts.push_back(q.p);
  return Domain::finite_complement(pts, true);
}

// complement of Omega_Delta as a UP set description
inline UpSet omega_delta_complement(const PunctureConfig &cfg)
{
  UpSet E;
  E.points = cfg.complement;
  for (const auto &q : cfg.finite)
    E.disks.push_back({q.p, q.r});
  if (cfg.r_infinity)
    E.exteriors.push_back({0.0, *cfg.r_infinity});
  E.infinity = true;
  return E;
}

// ---- model maps

inline cplx theta_ray(double s, double r)
{
  if (!(s >= 0.0) || !(r > 0.0))
    throw std::domain_error("theta_ray: need s >= 0 and r > 0");
  return r * std::exp(-s);
}

inline double psi_log(cplx z, double r)
{
  double a = std::abs(z);
  if (!(r > 0.0 && r < 1.0) || !(a > 0.0 && a <= r))
    throw std::domain_error("psi_log: need 0 < |z| <= r < 1");
  return std::log(std::log(1.0 / a) / std::log(1.0 / r));
}

inline cplx phi_punctured_disk(cplx z, double r)
{
  double a = std::abs(z);
  if (!(r > 0.0 && r <= 0.5) || !(a > 0.0 && a <= r))
    throw std::domain_error("phi_punctured_disk: need 0 < |z| <= r <= 1/2");
  return r * std::log(1.0 / r) / std::log(1.0 / a);
}

inline cplx phi_p(cplx z, cplx p, cplx xi, double rp)
{
  if (z == p)
    throw std::domain_error("phi_p: z equals the puncture");
  double s = std::abs(xi - p);
  if (!(s > 0.0) || !is_finite(xi))
    throw std::domain_error("phi_p: degenerate xi");
  return p + rp * (xi - p) / s * (std::log(rp / s) / std::log(std::abs(z - p) / s));
}

namespace detail {

// ties broken by the smallest argument of (candidate - p)
inline cplx pick_by(const std::vector<cplx> &cand, cplx p, bool nearest)
{
  if (cand.empty())
    throw std::domain_error("no boundary point to choose from");
  cplx best = cand.front();
  double bd = std::abs(best - p);
  for (cplx c : cand) {
    double d = std::abs(c - p);
    double tol = 1e-12 * std::max(d, bd);
    bool better = nearest ? d < bd - tol : d > bd + tol;
    bool tie = std::abs(d - bd) <= tol;
    if (better || (tie && principal_arg(c - p) < principal_arg(best - p)))
      best = c, bd = d;
  }
  return best;
}

} // namespace detail

// nearest boundary point of Omega_Pi u {p} to p
inline cplx puncture_xi(const PunctureConfig &cfg, cplx p)
{
  std::vector<cplx> cand;
  for (cplx c : cfg.complement)
    cand.push_back(c);
  for (const auto &q : cfg.finite)
    if (q.p != p)
      cand.push_back(q.p);
  return detail::pick_by(cand, p, true);
}

// Normalized exterior map data: Omega' = Omega_inf / xi with complement in the closed unit disk.
struct InfinityChart {
  cplx xi;      // max-modulus finite complement point of Omega_Pi u {inf}
  cplx eta;     // normalized complement point farthest from 1
  double R;     // r_inf / |xi|
  double R1;    // R + 1
  double R2;    // R1 / |eta - 1|
};

inline InfinityChart infinity_chart(const std::vector<cplx> &finite_complement, double r_inf)
{
  if (finite_complement.empty())
    throw std::domain_error("phi_infinity: no finite complement point");
  cplx xi = finite_complement.front();
  for (cplx c : finite_complement)
    if (std::abs(c) > std::abs(xi) || (std::abs(c) == std::abs(xi) && principal_arg(c) < principal_arg(xi)))
      xi = c;
  if (xi == cplx(0.0))
    throw std::domain_error("phi_infinity: complement is {0}");
  std::vector<cplx> norm;
  for (cplx c : finite_complement)
    norm.push_back(c / xi);
  InfinityChart ch;
  ch.xi = xi;
  ch.eta = detail::pick_by(norm, 1.0, false);
  if (!(std::abs(ch.eta - 1.0) > 0.0))
    throw std::domain_error("phi_infinity: Omega_inf has a single finite complement point");
  ch.R = r_inf / std::abs(xi);
  if (!(ch.R >= 4.0 * (1 - 1e-12)))
    throw std::domain_error("phi_infinity: need r_inf >= 4 |xi|");
  ch.R1 = ch.R + 1.0;
  ch.R2 = ch.R1 / std::abs(ch.eta - 1.0);
  return ch;
}

// Phi_inf(z) = xi Phi(z / xi) with the normalized exterior map
// Phi(z) = 1 - R1 exp(Psi(z)), Psi(z) = log(log|w1| / log R2), w1 = (z1 - 1)/(eta - 1),
// z1 the radial projection of z onto |z - 1| = R1 when |z - 1| < R1.
inline cplx phi_infinity(cplx z, const InfinityChart &ch)
{
  cplx u = z / ch.xi;
  if (!(std::abs(u) >= ch.R * (1 - 1e-12)))
    throw std::domain_error("phi_infinity: z outside Delta_inf");
  cplx z1 = u;
  if (std::abs(u - 1.0) < ch.R1) {
    cplx dir = u / std::abs(u);
    double c = dir.real();
    z1 = dir * (c + std::sqrt(c * c + ch.R1 * ch.R1 - 1.0));
  }
  cplx w1 = (z1 - 1.0) / (ch.eta - 1.0);
  double Psi = std::log(std::log(std::abs(w1)) / std::log(ch.R2));
  return ch.xi * (1.0 - ch.R1 * std::exp(Psi));
}

inline cplx phi_infinity(cplx z, const std::vector<cplx> &finite_complement, double r_inf)
{
  return phi_infinity(z, infinity_chart(finite_complement, r_inf));
}

// ---- global map

inline double m_prime(double M) { return std::max(2 * M + std::log(4.0), 12 * kappa + 4); }

class GlobalQiMap {
public:
  // require_up = false builds the map anyway and reports M = M' = K = inf
  explicit GlobalQiMap(PunctureConfig cfg, bool require_up = true)
      : cfg_(std::move(cfg)), domain_(omega_pi_checked(cfg_))
  {
    UPReport up = up_modulus_sup(omega_delta_complement(cfg_));
    if (up.unbounded && require_up)
      throw std::domain_error("build_global_qi_map: complement of Omega_Delta is not uniformly perfect");
    M_ = up.sup_modulus;
    up_ = up;
    Mp_ = m_prime(M_);
    K_ = kappa + Mp_;
    for (const auto &q : cfg_.finite)
      xi_.push_back(puncture_xi(cfg_, q.p));
    if (cfg_.r_infinity) {
      std::vector<cplx> fc = cfg_.complement;
      for (const auto &q : cfg_.finite)
        fc.push_back(q.p);
      chart_ = infinity_chart(fc, *cfg_.r_infinity);
    }
  }

  cplx operator()(cplx z) const
  {
    if (!domain_.contains(z))
      throw std::domain_error("global QI map: point outside Omega_Pi");
    for (std::size_t i = 0; i < cfg_.finite.size(); ++i) {
      const auto &q = cfg_.finite[i];
      if (std::abs(z - q.p) <= q.r)
        return phi_p(z, q.p, xi_[i], q.r);
    }
    if (chart_ && std::abs(z) >= *cfg_.r_infinity)
      return phi_infinity(z, *chart_);
    return z;
  }

  // which branch handles z: index into finite punctures, -1 for infinity, -2 for identity
  int branch(cplx z) const
  {
    for (std::size_t i = 0; i < cfg_.finite.size(); ++i)
      if (std::abs(z - cfg_.finite[i].p) <= cfg_.finite[i].r)
        return static_cast<int>(i);
    if (chart_ && std::abs(z) >= *cfg_.r_infinity)
      return -1;
    return -2;
  }

  const PunctureConfig &config() const { return cfg_; }
  const Domain &domain() const { return domain_; }
  double M() const { return M_; }
  double M_prime() const { return Mp_; }
  double K() const { return K_; }
  const UPReport &up_report() const { return up_; }
  const std::vector<cplx> &xi() const { return xi_; }
  const std::optional<InfinityChart> &infinity() const { return chart_; }

private:
  static Domain omega_pi_checked(const PunctureConfig &cfg)
  {
    auto bad = validate_puncture_config(cfg);
    if (!bad.empty())
      throw std::invalid_argument("build_global_qi_map: " + bad.front());
    return omega_pi(cfg);
  }

  PunctureConfig cfg_;
  Domain domain_;
  double M_ = 0.0, Mp_ = 0.0, K_ = 0.0;
  UPReport up_;
  std::vector<cplx> xi_;
  std::optional<InfinityChart> chart_;
};

inline GlobalQiMap build_global_qi_map(const PunctureConfig &cfg, bool require_up = true)
{
  return GlobalQiMap(cfg, require_up);
}

// ---- rough isometry verification

struct QIPair {
  cplx a, b;
  DistanceInterval h;        // h(a, b)
  DistanceInterval k_mapped; // k(Phi a, Phi b)
  double slack;              // extra additive constant the intervals may need
  bool violation;
};

struct QIReport {
  double L = 1.0;
  double C = 0.0;
  std::vector<QIPair> pairs;
  std::vector<std::size_t> violations;
  double max_slack = 0.0;
  double mean_slack = 0.0;
};

using KIntervalFn = std::function<DistanceInterval(const Domain &, cplx, cplx)>;

// Band [h/L - C, L h + C] against k(Phi a, Phi b); only interval-disjoint pairs are violations.
inline QIReport verify_rough_isometry(const std::function<cplx(cplx)> &phi, const Domain &D,
                                      const std::vector<std::pair<cplx, cplx>> &pairs, double L, double C,
                                      const KIntervalFn &kfn = k_interval_fast)
{
  if (!(L >= 1.0) || !(C >= 0.0))
    throw std::invalid_argument("verify_rough_isometry: need L >= 1 and C >= 0");
  QIReport rep;
  rep.L = L;
  rep.C = C;
  double total = 0.0;
  for (auto [a, b] : pairs) {
    QIPair q;
    q.a = a;
    q.b = b;
    q.h = h_interval(D, a, b);
    q.k_mapped = kfn(D, phi(a), phi(b));
    double over = q.k_mapped.upper - (L * q.h.lower + C);
    double under = (q.h.upper / L - C) - q.k_mapped.lower;
    q.slack = std::max({0.0, over, under});
    q.violation = q.k_mapped.lower > L * q.h.upper + C || q.k_mapped.upper < q.h.lower / L - C;
    if (q.violation)
      rep.violations.push_back(rep.pairs.size());
    rep.max_slack = std::max(rep.max_slack, q.slack);
    total += q.slack;
    rep.pairs.push_back(std::move(q));
  }
  if (!rep.pairs.empty())
    rep.mean_slack = total / static_cast<double>(rep.pairs.size());
  return rep;
}

// ---- numeric helpers

struct QieCheck {
  double lhs, rhs;
  bool holds;
};

inline QieCheck qie_inequality_check(double K, double L, double x, double y)
{
  if (!(K > 0.0) || !(L > 0.0) || !(x > 0.0) || !(y >= L))
    throw std::invalid_argument("qie_inequality_check: need K, L, x > 0 and y >= L");
  double lhs = (K + x) / (K + y), rhs = L / (K + L) * x / y;
  return {lhs, rhs, lhs >= rhs};
}

// ---- counterexample divergence

struct DivergenceRow {
  int n;
  double L;       // half log(x_{n+1}/x_n)
  double k;       // 2 L
  double h_upper; // 4 + pi log L, meaningful once L > 1
  double bound;   // 2 alpha L - 4 - pi log L
  bool h_valid;
};

struct DivergenceTable {
  double alpha;
  std::vector<DivergenceRow> rows;
  int increasing_from = -1; // first n from which the bound increases strictly to the end of the table
};

// log_x[i] = log x_{i+1}
inline DivergenceTable counterexample_divergence(double alpha, const std::vector<double> &log_x)
{
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("counterexample_divergence: need alpha in (0, 1]");
  DivergenceTable t;
  t.alpha = alpha;
  for (std::size_t i = 0; i + 1 < log_x.size(); ++i) {
    double L = 0.5 * (log_x[i + 1] - log_x[i]);
    if (!(L > 0.0))
      throw std::invalid_argument("counterexample_divergence: sequence must increase");
    DivergenceRow r;
    r.n = static_cast<int>(i) + 1;
    r.L = L;
    r.k = 2 * L;
    r.h_upper = 4 + pi * std::log(L);
    r.bound = 2 * alpha * L - 4 - pi * std::log(L);
    r.h_valid = L > 1.0;
    t.rows.push_back(r);
  }
  int from = t.rows.empty() ? -1 : t.rows.back().n;
  for (std::size_t i = t.rows.size(); i-- > 1;) {
    if (t.rows[i].bound > t.rows[i - 1].bound)
      from = t.rows[i - 1].n;
    else
      break;
  }
  t.increasing_from = from;
  return t;
}

// default sequence x_n = exp(2^n), n = 1..n_max
inline DivergenceTable counterexample_divergence(double alpha, int n_max = 12)
{
  if (n_max < 1)
    throw std::invalid_argument("counterexample_divergence: need n_max >= 1");
  std::vector<double> lx;
  for (int n = 1; n <= n_max + 1; ++n)
    lx.push_back(std::ldexp(1.0, n));
  return counterexample_divergence(alpha, lx);
}

// ---- quasisymmetric eventual identity

struct QsIndex {
  double tau;
  int N; // -1 when no index works within the computed range
  std::vector<double> ratios; // chi(a_{n+1}, inf) / chi(a_n, inf), n = 1, 2, ...
};

// eta(t) = H max(t^alpha, t^(1/alpha)); log_a[i] = log a_{i+1}
inline QsIndex qs_eventual_identity_index(const std::vector<double> &log_a, double H, double alpha)
{
  if (!(H > 0.0) || !std::isfinite(H) || !(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("qs_eventual_identity_index: need H > 0 and alpha in (0, 1]");
  QsIndex q;
  // on (0,1) t^alpha dominates, so eta(tau) = 1/2 gives tau = (1/(2H))^(1/alpha)
  q.tau = std::min(1.0, std::pow(0.5 / H, 1.0 / alpha));
  auto softplus = [](double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); };
  for (std::size_t i = 0; i + 1 < log_a.size(); ++i) {
    if (!(log_a[i + 1] > log_a[i]))
      throw std::invalid_argument("qs_eventual_identity_index: sequence must increase");
    // chi(a, inf) = 2 / sqrt(1 + a^2)
    double lr = 0.5 * (softplus(2 * log_a[i]) - softplus(2 * log_a[i + 1]));
    q.ratios.push_back(std::exp(lr));
  }
  q.N = -1;
  for (std::size_t i = q.ratios.size(); i-- > 0;) {
    if (q.ratios[i] < q.tau)
      q.N = static_cast<int>(i) + 1;
    else
      break;
  }
  return q;
}

inline QsIndex qs_eventual_identity_index(double H, double alpha, int n_max = 12)
{
  std::vector<double> la;
  for (int n = 1; n <= n_max + 1; ++n)
    la.push_back(std::ldexp(1.0, n));
  return qs_eventual_identity_index(la, H, alpha);
}

} // namespace qhdist

#endif // QHDIST_QI_HPP
