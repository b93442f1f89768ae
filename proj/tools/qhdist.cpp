#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qhdist/acceptance.hpp"
#include "qhdist/density.hpp"
#include "qhdist/qh_checks.hpp"
#include "qhdist/serialize.hpp"

using namespace qhdist;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// writes to --out when given, stdout otherwise
class Output {
public:
  explicit Output(const std::string &path)
  {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_)
        throw UsageError("cannot write '" + path + "'");
    }
  }
  std::ostream &os() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

cplx flag_point(const std::string &s, const char *name)
{
  try {
    return parse_complex_flag(s);
  } catch (const ParseError &e) {
    throw UsageError(std::string("--") + name + ": " + e.what());
  }
}

void emit(const std::string &out, const json &j)
{
  Output o(out);
  o.os() << j.dump(2) << '\n';
}

struct Common {
  std::string domain, out;
  std::string a = "", b = "";
  int resolution = default_resolution;
};

std::function<double(cplx)> heat_quantity(const std::string &q, const Domain &D)
{
  if (q == "delta")
    return [&D](cplx z) { return D.delta(z); };
  if (q == "chi")
    return [&D](cplx z) { return D.chi(z); };
  if (q == "beta")
    return [&D](cplx z) { return beta(D, z).value; };
  if (q == "k_density")
    return [&D](cplx z) { return 1.0 / D.delta(z); };
  if (q == "bp_lower")
    return [d = Density::bp_lower(D)](cplx z) { return d(z); };
  if (q == "bp_upper")
    return [d = Density::bp_upper(D)](cplx z) { return d(z); };
  throw UsageError("unknown quantity '" + q + "'");
}

int grid_count(double lo, double hi, double step)
{
  if (!(step > 0.0) || !(hi >= lo))
    throw UsageError("need step > 0 and max >= min");
  double n = std::floor((hi - lo) / step + 1e-9) + 1;
  if (n > 4096)
    throw UsageError("grid too large (more than 4096 points per axis)");
  return static_cast<int>(n);
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"quasihyperbolic and hyperbolic distance toolkit"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;

  // distance
  Common dist;
  std::string metric = "k";
  auto *c_dist = app.add_subcommand("distance", "certified distance interval between two points");
  c_dist->add_option("--domain", dist.domain, "domain JSON file")->required();
  c_dist->add_option("--metric", metric, "k | h | kchi")->check(CLI::IsMember({"k", "h", "kchi"}));
  c_dist->add_option("--a", dist.a, "first point re,im")->required();
  c_dist->add_option("--b", dist.b, "second point re,im")->required();
  c_dist->add_option("--resolution", dist.resolution, "grid resolution")->check(CLI::Range(8, 8192));
  c_dist->add_option("--out", dist.out, "output file");

  // geodesic
  Common geo;
  std::string geo_metric = "k", geo_csv;
  auto *c_geo = app.add_subcommand("geodesic", "numeric geodesic with its distance interval");
  c_geo->add_option("--domain", geo.domain, "domain JSON file")->required();
  c_geo->add_option("--metric", geo_metric, "k | kchi")->check(CLI::IsMember({"k", "kchi"}));
  c_geo->add_option("--a", geo.a, "first point re,im")->required();
  c_geo->add_option("--b", geo.b, "second point re,im")->required();
  c_geo->add_option("--resolution", geo.resolution, "grid resolution")->check(CLI::Range(8, 8192));
  c_geo->add_option("--out", geo.out, "output JSON file");
  c_geo->add_option("--csv", geo_csv, "also write the path as CSV");

  // heatmap
  std::string hm_domain, hm_out, hm_quantity = "delta";
  double re_min = -2, re_max = 2, im_min = -2, im_max = 2, step = 0.05;
  auto *c_heat = app.add_subcommand("heatmap", "grid of a pointwise quantity as CSV re,im,value");
  c_heat->add_option("--domain", hm_domain, "domain JSON file")->required();
  c_heat->add_option("--quantity", hm_quantity, "delta | chi | beta | k_density | bp_lower | bp_upper");
  c_heat->add_option("--re-min", re_min);
  c_heat->add_option("--re-max", re_max);
  c_heat->add_option("--im-min", im_min);
  c_heat->add_option("--im-max", im_max);
  c_heat->add_option("--step", step);
  c_heat->add_option("--out", hm_out, "CSV file; grid description goes to <out>.json")->required();

  // beta-map
  std::string bm_domain, bm_out;
  std::vector<std::string> bm_points;
  auto *c_beta = app.add_subcommand("beta-map", "beta with witnesses at the given points");
  c_beta->add_option("--domain", bm_domain, "domain JSON file")->required();
  c_beta->add_option("--z", bm_points, "point re,im (repeatable)")->required();
  c_beta->add_option("--out", bm_out, "output file");

  // up-check
  std::string up_set, up_out;
  std::size_t up_budget = 100000;
  auto *c_up = app.add_subcommand("up-check", "uniform perfectness modulus of a closed set");
  c_up->add_option("--set", up_set, "UP set JSON file")->required();
  c_up->add_option("--budget", up_budget, "maximal number of circle pieces");
  c_up->add_option("--out", up_out, "output file");

  // qi-verify
  std::string qi_config, qi_out, qi_map = "phi";
  int qi_pairs = 500, qi_puncture = 0;
  double qi_L = 1.0, qi_C = pi / std::log(2.0), qi_depth = 1e-8;
  auto *c_qi = app.add_subcommand("qi-verify", "rough isometry check of the global map near a puncture");
  c_qi->add_option("--config", qi_config, "puncture configuration JSON file")->required();
  c_qi->add_option("--pairs", qi_pairs, "number of sampled pairs")->check(CLI::Range(1, 100000));
  c_qi->add_option("--puncture", qi_puncture, "index of the puncture whose disk is sampled");
  c_qi->add_option("--L", qi_L, "multiplicative constant");
  c_qi->add_option("--C", qi_C, "additive constant");
  c_qi->add_option("--depth", qi_depth, "smallest sampled radius relative to r_p")->check(CLI::Range(1e-300, 1.0));
  c_qi->add_option("--map", qi_map, "phi | identity")->check(CLI::IsMember({"phi", "identity"}));
  c_qi->add_option("--seed", seed, "sampling seed");
  c_qi->add_option("--out", qi_out, "output file");

  // counterexample
  double alpha = 1.0;
  int nmax = 12;
  std::string ce_out;
  auto *c_ce = app.add_subcommand("counterexample", "divergence table for x_n = exp(2^n)");
  c_ce->add_option("--alpha", alpha, "Hoelder exponent in (0, 1]");
  c_ce->add_option("--nmax", nmax, "number of rows")->check(CLI::Range(1, 60));
  c_ce->add_option("--out", ce_out, "CSV file");

  // verify-all
  auto *c_all = app.add_subcommand("verify-all", "run the acceptance suite");
  c_all->add_option("--seed", seed, "sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (c_dist->parsed()) {
      Domain D = load_domain(dist.domain);
      cplx a = flag_point(dist.a, "a"), b = flag_point(dist.b, "b");
      DistanceInterval d;
      if (metric == "k")
        d = k_interval(D, a, b, dist.resolution);
      else if (metric == "h")
        d = h_interval(D, a, b);
      else
        d = k_chordal_numeric(D, a, b, dist.resolution).distance;
      json j = to_json(d);
      j["metric"] = metric;
      emit(dist.out, j);
    } else if (c_geo->parsed()) {
      Domain D = load_domain(geo.domain);
      cplx a = flag_point(geo.a, "a"), b = flag_point(geo.b, "b");
      GeodesicResult g = geo_metric == "k" ? k_numeric(D, a, b, geo.resolution)
                                           : k_chordal_numeric(D, a, b, geo.resolution);
      emit(geo.out, to_json(g));
      if (!geo_csv.empty()) {
        Output o(geo_csv);
        write_path_csv(o.os(), g.path);
      }
    } else if (c_heat->parsed()) {
      Domain D = load_domain(hm_domain);
      auto f = heat_quantity(hm_quantity, D);
      int nx = grid_count(re_min, re_max, step), ny = grid_count(im_min, im_max, step);
      {
        Output o(hm_out);
        o.os() << "re,im,value\n";
        for (int iy = 0; iy < ny; ++iy)
          for (int ix = 0; ix < nx; ++ix) {
            cplx z(re_min + ix * step, im_min + iy * step);
            double v = std::nan("");
            if (D.contains(z)) {
              try {
                v = f(z);
              } catch (const std::domain_error &) {
              }
            }
            o.os() << fmt17(z.real()) << ',' << fmt17(z.imag()) << ',' << fmt17(v) << '\n';
          }
      }
      json side = to_json(GridSpec{re_min, re_max, im_min, im_max, step});
      side["nx"] = nx;
      side["ny"] = ny;
      side["quantity"] = hm_quantity;
      side["domain"] = to_json(D);
      emit(hm_out + ".json", side);
    } else if (c_beta->parsed()) {
      Domain D = load_domain(bm_domain);
      json arr = json::array();
      for (const auto &s : bm_points) {
        cplx z = flag_point(s, "z");
        json j = to_json(beta(D, z));
        j["z"] = point_json(z);
        arr.push_back(j);
      }
      emit(bm_out, arr);
    } else if (c_up->parsed()) {
      UpSet E = up_set_from_json(detail::read_json_file(up_set));
      emit(up_out, to_json(up_modulus_sup(E, up_budget)));
    } else if (c_qi->parsed()) {
      PunctureConfig cfg = puncture_config_from_json(detail::read_json_file(qi_config));
      auto issues = validate_puncture_config(cfg);
      if (!issues.empty()) {
        for (const auto &s : issues)
          std::cerr << "invalid configuration: " << s << '\n';
        return 1;
      }
      if (qi_puncture < 0 || qi_puncture >= static_cast<int>(cfg.finite.size()))
        throw UsageError("--puncture out of range");
      GlobalQiMap m = build_global_qi_map(cfg);
      const auto &P = cfg.finite[static_cast<std::size_t>(qi_puncture)];
      Rng rng(seed);
      double lo = std::log(P.r * qi_depth), hi = std::log(P.r);
      std::vector<std::pair<cplx, cplx>> pairs;
      for (int i = 0; i < qi_pairs; ++i) {
        cplx a = P.p + rng.complex_log_radius(lo, hi);
        cplx b = P.p + rng.complex_log_radius(lo, hi);
        pairs.push_back({a, b});
      }
      std::function<cplx(cplx)> phi = std::cref(m);
      if (qi_map == "identity")
        phi = [](cplx z) { return z; };
      QIReport r = verify_rough_isometry(phi, m.domain(), pairs, qi_L, qi_C);
      json j = {{"config", to_json(cfg)},  {"map", qi_map},     {"seed", seed},
                {"M", num(m.M())},         {"M_prime", num(m.M_prime())}, {"K", num(m.K())},
                {"report", to_json(r)}};
      emit(qi_out, j);
    } else if (c_ce->parsed()) {
      DivergenceTable t = counterexample_divergence(alpha, nmax);
      Output o(ce_out);
      write_divergence_csv(o.os(), t);
    } else if (c_all->parsed()) {
      bool all = true;
      for (int i = 1; i <= acceptance::criterion_count; ++i) {
        auto r = acceptance::run_criterion(i, seed);
        std::cout << acceptance::format(r) << std::endl;
        all = all && r.pass;
      }
      return all ? 0 : 1;
    }
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError &e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
