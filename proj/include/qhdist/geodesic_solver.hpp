#ifndef QHDIST_GEODESIC_SOLVER_HPP
#define QHDIST_GEODESIC_SOLVER_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "domain.hpp"
#include "hyperbolic.hpp"
#include "interval.hpp"
#include "paths.hpp"
#include "quasihyperbolic.hpp"

namespace qhdist {

struct GridResolution {
  int resolution = 0;
  int charts = 0;
  int chart_nodes = 0;
  int background_nx = 0;
  int background_ny = 0;
  double background_cell = 0.0;
  int graph_nodes = 0;
  int path_vertices = 0;
  int relax_sweeps = 0;
  int best_level = 0; // resolution whose path was kept
};

struct GeodesicResult {
  DistanceInterval distance;
  Polyline path;
  GridResolution resolution;
};

namespace detail {

struct Chart {
  cplx p;
  double R;
  double u0;
  double du;
  int nu;
  int nt;
  int base;
};

inline constexpr double relax_rho_step = 0.02;
inline constexpr int coarsest_level = 64;

template <class Rho>
class GeodesicSolver {
public:
  GeodesicSolver(const Domain &D, cplx a, cplx b, int resolution, Rho rho)
      : D_(D), a_(a), b_(b), res_(resolution), rho_(std::move(rho))
  {
    info_.resolution = resolution;
  }

  Polyline solve()
  {
    build_charts();
    build_background();
    check_endpoints();
    add_endpoints();
    std::vector<cplx> raw = shortest_path();
    std::vector<cplx> relaxed = relax(raw);
    info_.path_vertices = static_cast<int>(relaxed.size());
    return Polyline::cleaned(relaxed);
  }

  const GridResolution &info() const { return info_; }

private:
  const Domain &D_;
  cplx a_, b_;
  int res_;
  Rho rho_;
  GridResolution info_;

  std::vector<Chart> charts_;
  cplx origin_;
  double h_ = 0.0;
  int nx_ = 0, ny_ = 0, bg_base_ = 0;
  int ia_ = -1, ib_ = -1;

  std::vector<cplx> pos_;
  std::vector<double> del_; // 0 marks a node outside the graph
  std::vector<double> rho_at_;
  std::vector<std::vector<int>> extra_;

  double delta_or_zero(cplx z) const { return D_.contains(z) ? D_.delta_unchecked(z) : 0.0; }

  int push_node(cplx z, double d)
  {
    pos_.push_back(z);
    del_.push_back(d);
    rho_at_.push_back(d > 0.0 ? rho_(z) : 0.0);
    return static_cast<int>(pos_.size()) - 1;
  }

  void build_charts()
  {
    cplx lo(std::min(a_.real(), b_.real()), std::min(a_.imag(), b_.imag()));
    cplx hi(std::max(a_.real(), b_.real()), std::max(a_.imag(), b_.imag()));
    double m = 0.75 * std::abs(a_ - b_);
    for (cplx p : D_.punctures()) {
      double ra = std::abs(a_ - p), rb = std::abs(b_ - p);
      double R = std::exp(1.0) * std::max(ra, rb);
      double iso = isolation_radius(D_, p);
      if (std::isfinite(iso))
        R = std::min(R, 0.5 * iso);
      // skip punctures whose chart misses the search box
      double dx = std::max({lo.real() - m - p.real(), 0.0, p.real() - hi.real() - m});
      double dy = std::max({lo.imag() - m - p.imag(), 0.0, p.imag() - hi.imag() - m});
      if (std::hypot(dx, dy) > R)
        continue;
      Chart c;
      c.p = p;
      c.R = R;
      c.nt = res_;
      c.du = 2.0 * pi / c.nt;
      double u1 = std::log(R);
      double umin = std::min(u1 - 2.0, std::log(std::min(ra, rb)) - 1.0);
      c.nu = static_cast<int>(std::ceil((u1 - umin) / c.du)) + 1;
      c.u0 = u1 - (c.nu - 1) * c.du;
      c.base = static_cast<int>(pos_.size());
      for (int i = 0; i < c.nu; ++i)
        for (int j = 0; j < c.nt; ++j) {
          cplx z = p + std::polar(std::exp(c.u0 + i * c.du), j * c.du);
          push_node(z, delta_or_zero(z));
        }
      charts_.push_back(c);
      info_.chart_nodes += c.nu * c.nt;
    }
    info_.charts = static_cast<int>(charts_.size());
  }

  void build_background()
  {
    double m = 0.75 * std::abs(a_ - b_);
    double x0 = std::min(a_.real(), b_.real()) - m, x1 = std::max(a_.real(), b_.real()) + m;
    double y0 = std::min(a_.imag(), b_.imag()) - m, y1 = std::max(a_.imag(), b_.imag()) + m;
    if (D_.region() == Domain::Region::disk_interior) {
      cplx c = D_.disk_center();
      double R = D_.disk_radius();
      x0 = std::max(x0, c.real() - R), x1 = std::min(x1, c.real() + R);
      y0 = std::max(y0, c.imag() - R), y1 = std::min(y1, c.imag() + R);
    }
    double W = std::max(x1 - x0, y1 - y0);
    h_ = W / res_;
    origin_ = cplx(x0, y0);
    nx_ = static_cast<int>(std::ceil((x1 - x0) / h_)) + 1;
    ny_ = static_cast<int>(std::ceil((y1 - y0) / h_)) + 1;
    info_.background_nx = nx_;
    info_.background_ny = ny_;
    info_.background_cell = h_;
    bg_base_ = static_cast<int>(pos_.size());
    for (int iy = 0; iy < ny_; ++iy)
      for (int ix = 0; ix < nx_; ++ix) {
        cplx z = origin_ + cplx(ix * h_, iy * h_);
        double d = delta_or_zero(z);
        if (d < 0.5 * h_)
          d = 0.0;
        for (const Chart &c : charts_)
          if (std::abs(z - c.p) < 0.8 * c.R)
            d = 0.0;
        push_node(z, d);
      }
    extra_.assign(pos_.size() + 2, {});
    // stitch chart rims to the background
    for (const Chart &c : charts_)
      for (int i = 0; i < c.nu; ++i) {
        if (std::exp(c.u0 + i * c.du) < 0.7 * c.R)
          continue;
        for (int j = 0; j < c.nt; ++j) {
          int n = c.base + i * c.nt + j;
          if (del_[n] <= 0.0)
            continue;
          link_background(n, 0, 1);
        }
      }
  }

  int bg_index(int ix, int iy) const
  {
    if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_)
      return -1;
    return bg_base_ + iy * nx_ + ix;
  }

  void link(int u, int v)
  {
    if (u == v || del_[u] <= 0.0 || del_[v] <= 0.0)
      return;
    extra_[u].push_back(v);
    extra_[v].push_back(u);
  }

  void link_background(int n, int lo, int hi)
  {
    cplx w = (pos_[n] - origin_) / h_;
    int ix = static_cast<int>(std::floor(w.real())), iy = static_cast<int>(std::floor(w.imag()));
    for (int dy = -lo; dy <= hi; ++dy)
      for (int dx = -lo; dx <= hi; ++dx)
        if (int m = bg_index(ix + dx, iy + dy); m >= 0)
          link(n, m);
  }

  void check_endpoints() const
  {
    for (cplx e : {a_, b_}) {
      bool charted = false;
      for (const Chart &c : charts_)
        charted = charted || std::abs(e - c.p) < c.R;
      if (!charted && D_.delta(e) < 2.0 * h_)
        throw std::domain_error("k_numeric: endpoint " + fmt_point(e) +
                                " is closer to the boundary than two grid cells");
    }
  }

  void add_endpoints()
  {
    ia_ = push_node(a_, D_.delta(a_));
    ib_ = push_node(b_, D_.delta(b_));
    for (int e : {ia_, ib_}) {
      for (const Chart &c : charts_) {
        cplx w = pos_[e] - c.p;
        double fi = (std::log(std::abs(w)) - c.u0) / c.du;
        if (fi < -1.0 || fi > c.nu)
          continue;
        double fj = std::arg(w) / c.du;
        int i0 = static_cast<int>(std::floor(fi)), j0 = static_cast<int>(std::floor(fj));
        for (int i = i0 - 1; i <= i0 + 2; ++i)
          for (int j = j0 - 1; j <= j0 + 2; ++j)
            if (i >= 0 && i < c.nu)
              link(e, c.base + i * c.nt + ((j % c.nt) + c.nt) % c.nt);
      }
      link_background(e, 1, 2);
    }
    link(ia_, ib_);
    info_.graph_nodes = static_cast<int>(pos_.size());
  }

  template <class F>
  void for_neighbors(int n, F &&f) const
  {
    if (n >= bg_base_ && n < bg_base_ + nx_ * ny_) {
      int k = n - bg_base_, ix = k % nx_, iy = k / nx_;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          if ((dx || dy))
            if (int m = bg_index(ix + dx, iy + dy); m >= 0)
              f(m);
    } else if (n < bg_base_) {
      for (const Chart &c : charts_) {
        if (n < c.base || n >= c.base + c.nu * c.nt)
          continue;
        int k = n - c.base, i = k / c.nt, j = k % c.nt;
        for (int di = -1; di <= 1; ++di)
          for (int dj = -1; dj <= 1; ++dj)
            if ((di || dj) && i + di >= 0 && i + di < c.nu)
              f(c.base + (i + di) * c.nt + ((j + dj) % c.nt + c.nt) % c.nt);
      }
    }
    for (int m : extra_[n])
      f(m);
  }

  // graph edge weight (Simpson) or infinity when the segment is not admissible
  double edge_weight(int u, int v) const
  {
    if (del_[v] <= 0.0)
      return std::numeric_limits<double>::infinity();
    cplx z0 = pos_[u], z1 = pos_[v];
    double L = std::abs(z1 - z0);
    if (!(L < del_[u] + del_[v]))
      return std::numeric_limits<double>::infinity();
    cplx zm = 0.5 * (z0 + z1);
    if (!D_.contains(zm))
      return std::numeric_limits<double>::infinity();
    return L * (rho_at_[u] + 4.0 * rho_(zm) + rho_at_[v]) / 6.0;
  }

  std::vector<cplx> shortest_path() const
  {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(pos_.size(), inf);
    std::vector<int> prev(pos_.size(), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[ia_] = 0.0;
    pq.push({0.0, ia_});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u])
        continue;
      if (u == ib_)
        break;
      for_neighbors(u, [&](int v) {
        double w = edge_weight(u, v);
        if (d + w < dist[v]) {
          dist[v] = d + w;
          prev[v] = u;
          pq.push({dist[v], v});
        }
      });
    }
    if (!std::isfinite(dist[ib_]))
      throw std::runtime_error("k_numeric: grid graph does not connect the endpoints");
    std::vector<cplx> path;
    for (int n = ib_; n != -1; n = prev[n])
      path.push_back(pos_[n]);
    std::reverse(path.begin(), path.end());
    return path;
  }

  // relaxation works with segments no longer than half the smaller endpoint distance
  bool short_segment(cplx z0, cplx z1) const
  {
    if (!D_.contains(z0) || !D_.contains(z1))
      return false;
    return std::abs(z1 - z0) <= 0.5 * std::min(D_.delta_unchecked(z0), D_.delta_unchecked(z1));
  }

  double gl4(cplx z0, cplx z1) const
  {
    static constexpr std::array<double, 4> x{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                             0.8611363115940526};
    static constexpr std::array<double, 4> w{0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                             0.3478548451374538};
    cplx m = 0.5 * (z0 + z1), hlf = 0.5 * (z1 - z0);
    double s = 0.0;
    for (int k = 0; k < 4; ++k)
      s += w[k] * rho_(m + x[k] * hlf);
    return s * std::abs(hlf);
  }

  double piece(cplx z0, cplx z1) const
  {
    if (!short_segment(z0, z1))
      return std::numeric_limits<double>::infinity();
    return gl4(z0, z1);
  }

  std::vector<double> cumulative(const std::vector<cplx> &p) const
  {
    std::vector<double> s(p.size(), 0.0);
    for (std::size_t i = 1; i < p.size(); ++i) {
      cplx z0 = p[i - 1], z1 = p[i];
      double L = std::abs(z1 - z0);
      double d = std::min(D_.delta_unchecked(z0), D_.delta_unchecked(z1));
      int m = std::max(1, static_cast<int>(std::ceil(4.0 * L / std::max(d, 1e-300))));
      m = std::min(m, 4096);
      double acc = 0.0;
      for (int k = 0; k < m; ++k)
        acc += gl4(z0 + (z1 - z0) * (static_cast<double>(k) / m), z0 + (z1 - z0) * (static_cast<double>(k + 1) / m));
      s[i] = s[i - 1] + acc;
    }
    return s;
  }

  std::vector<cplx> resample(const std::vector<cplx> &p, const std::vector<double> &s, int n) const
  {
    std::vector<cplx> q{p.front()};
    std::size_t seg = 1;
    for (int k = 1; k < n; ++k) {
      double t = s.back() * k / n;
      while (seg + 1 < p.size() && s[seg] < t)
        ++seg;
      double span = s[seg] - s[seg - 1];
      double f = span > 0.0 ? std::clamp((t - s[seg - 1]) / span, 0.0, 1.0) : 0.0;
      q.push_back(p[seg - 1] + f * (p[seg] - p[seg - 1]));
    }
    q.push_back(p.back());
    return q;
  }

  bool all_short(const std::vector<cplx> &q) const
  {
    for (std::size_t i = 1; i < q.size(); ++i)
      if (!short_segment(q[i - 1], q[i]))
        return false;
    return true;
  }

  // subdivide until every segment is short
  std::vector<cplx> subdivide(const std::vector<cplx> &p) const
  {
    std::vector<cplx> q{p.front()};
    std::function<void(cplx, cplx, int)> rec = [&](cplx z0, cplx z1, int depth) {
      if (depth > 40 || short_segment(z0, z1)) {
        q.push_back(z1);
        return;
      }
      cplx m = 0.5 * (z0 + z1);
      rec(z0, m, depth + 1);
      rec(m, z1, depth + 1);
    };
    for (std::size_t i = 1; i < p.size(); ++i)
      rec(p[i - 1], p[i], 0);
    return q;
  }

  double total(const std::vector<cplx> &q) const
  {
    double t = 0.0;
    for (std::size_t i = 1; i < q.size(); ++i)
      t += piece(q[i - 1], q[i]);
    return t;
  }

  // golden-section slide of vertex i along direction d
  bool slide(std::vector<cplx> &q, std::size_t i, cplx d) const
  {
    cplx zl = q[i - 1], zr = q[i + 1], z = q[i];
    auto f = [&](double t) { return piece(zl, z + t * d) + piece(z + t * d, zr); };
    double f0 = f(0.0);
    double lo = -1.0, hi = 1.0;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 24; ++it) {
      if (f1 < f2) {
        hi = x2, x2 = x1, f2 = f1;
        x1 = hi - gr * (hi - lo), f1 = f(x1);
      } else {
        lo = x1, x1 = x2, f1 = f2;
        x2 = lo + gr * (hi - lo), f2 = f(x2);
      }
    }
    double t = 0.5 * (lo + hi), ft = f(t);
    if (ft < f0) {
      q[i] = z + t * d;
      return true;
    }
    return false;
  }

  void relax_level(std::vector<cplx> &q)
  {
    double cur = total(q);
    for (int sweep = 0; sweep < 400; ++sweep) {
      ++info_.relax_sweeps;
      for (std::size_t i = 1; i + 1 < q.size(); ++i) {
        cplx tan = q[i + 1] - q[i - 1];
        double s = 0.25 * std::min(std::abs(q[i] - q[i - 1]), std::abs(q[i + 1] - q[i]));
        if (std::abs(tan) == 0.0 || s == 0.0)
          continue;
        cplx u = tan / std::abs(tan);
        slide(q, i, u * cplx(0.0, 1.0) * s);
        slide(q, i, u * s);
      }
      double nxt = total(q);
      bool done = !(cur - nxt > 1e-7 * std::max(1.0, nxt));
      cur = nxt;
      if (done)
        break;
    }
  }

  std::vector<cplx> relax(const std::vector<cplx> &raw)
  {
    std::vector<cplx> p = subdivide(raw);
    double T = cumulative(p).back();
    int n_final = std::clamp(static_cast<int>(std::ceil(T / relax_rho_step)), 32, 8192);
    int n = std::clamp(static_cast<int>(std::ceil(2.0 * T)), 16, n_final);
    for (;;) {
      std::vector<double> s = cumulative(p);
      std::vector<cplx> q = resample(p, s, n);
      int m = n;
      while (!all_short(q) && m < (1 << 15)) {
        m *= 2;
        q = resample(p, s, m);
      }
      if (!all_short(q))
        q = subdivide(q);
      relax_level(q);
      p = std::move(q);
      if (n >= n_final)
        break;
      n = std::min(2 * n, n_final);
    }
    return p;
  }
};

template <class Rho, class Lower>
GeodesicResult solve_geodesic(const Domain &D, cplx a, cplx b, int resolution, Rho rho, Lower lower,
                              const char *what)
{
  if (!D.contains(a) || !D.contains(b))
    throw std::domain_error(std::string(what) + ": endpoints must lie in the domain");
  if (resolution < 8)
    throw std::invalid_argument(std::string(what) + ": resolution must be at least 8");
  if (!D.has_finite_boundary())
    throw std::domain_error(std::string(what) + ": domain has no finite boundary point");
  if (a == b)
    return {make_interval(0.0, "identical points", 0.0, "identical points"), Polyline({a}), {resolution}};
  // canonical endpoint order keeps the solver symmetric
  bool swapped = std::make_pair(b.real(), b.imag()) < std::make_pair(a.real(), a.imag());
  cplx p = swapped ? b : a, q = swapped ? a : b;
  // the halved resolutions are solved too, so refining never loses a path
  std::optional<Polyline> best;
  double up = std::numeric_limits<double>::infinity();
  GridResolution info;
  for (int r = resolution; r >= std::min(resolution, coarsest_level); r /= 2) {
    GeodesicSolver<Rho> S(D, p, q, r, rho);
    Polyline g = S.solve();
    double len = rho_length(g, rho, 1e-10);
    if (len < up || !best) {
      up = len, best = g, info = S.info();
      info.best_level = r;
    }
  }
  info.resolution = resolution;
  Labeled lo = lower(D, a, b);
  Polyline g = swapped ? best->reversed() : *best;
  return {make_interval(lo.value, lo.source, up, "relaxed grid geodesic length"), g, info};
}

} // namespace detail

inline constexpr int default_resolution = 256;

inline GeodesicResult k_numeric(const Domain &D, cplx a, cplx b, int resolution = default_resolution)
{
  auto rho = [&D](cplx z) { return 1.0 / D.delta_unchecked(z); };
  return detail::solve_geodesic(D, a, b, resolution, rho, k_lower_bound, "k_numeric");
}

inline GeodesicResult k_chordal_numeric(const Domain &D, cplx a, cplx b, int resolution = default_resolution)
{
  auto rho = [&D](cplx z) { return 2.0 / (1.0 + std::norm(z)) / D.chi(z); };
  return detail::solve_geodesic(D, a, b, resolution, rho, k_chordal_lower_bound, "k_chordal_numeric");
}

} // namespace qhdist

#endif // QHDIST_GEODESIC_SOLVER_HPP
