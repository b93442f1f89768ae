#ifndef QHDIST_SERIALIZE_HPP
#define QHDIST_SERIALIZE_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "annulus.hpp"
#include "beta.hpp"
#include "beta_up.hpp"
#include "domain.hpp"
#include "geodesic_solver.hpp"
#include "interval.hpp"
#include "plane.hpp"
#include "qi.hpp"

namespace qhdist {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// ---- scalars

// non-finite doubles become null
inline json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json point_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json point_json(const ExtPoint &p)
{
  if (p.is_infinity())
    return "infinity";
  return point_json(p.value());
}

inline std::string fmt17(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline cplx parse_point(const json &j)
{
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("expected a point [re, im], got " + j.dump());
  cplx z(j[0].get<double>(), j[1].get<double>());
  if (!is_finite(z))
    throw ParseError("non-finite point " + j.dump());
  return z;
}

// "re,im" or "re"
inline cplx parse_complex_flag(const std::string &s)
{
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re))
    throw ParseError("bad complex value '" + s + "'");
  if (in >> comma) {
    if (comma != ',' || !(in >> im))
      throw ParseError("bad complex value '" + s + "'");
  }
  std::string rest;
  if (in >> rest)
    throw ParseError("bad complex value '" + s + "'");
  cplx z(re, im);
  if (!is_finite(z))
    throw ParseError("non-finite complex value '" + s + "'");
  return z;
}

// ---- domains

namespace detail {

inline void require_fields(const json &j, std::set<std::string> allowed, std::set<std::string> required)
{
  if (!j.is_object())
    throw ParseError("domain description must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ParseError("unknown field '" + it.key() + "' in domain description");
  for (const auto &r : required)
    if (!j.contains(r))
      throw ParseError("missing field '" + r + "' in domain description");
}

inline std::vector<cplx> parse_points(const json &j)
{
  if (!j.is_array())
    throw ParseError("expected an array of points");
  std::vector<cplx> out;
  for (const auto &p : j)
    out.push_back(parse_point(p));
  return out;
}

} // namespace detail

// {"type": "finite_complement", "punctures": [[re,im],...], "includes_infinity": bool}
// {"type": "unit_disk" | "punctured_unit_disk" | "exterior_unit_disk" | "upper_half_plane"}
// {"type": "punctured", "base": {...}, "punctures": [...]}
// {"type": "transformed", "base": {...}, "scale": [re,im], "shift": [re,im]}   z -> scale z + shift
inline Domain domain_from_json(const json &j)
{
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ParseError("domain description needs a string 'type'");
  std::string t = j["type"].get<std::string>();
  try {
    if (t == "finite_complement") {
      detail::require_fields(j, {"type", "punctures", "includes_infinity"}, {"punctures"});
      bool inf = true;
      if (j.contains("includes_infinity")) {
        if (!j["includes_infinity"].is_boolean())
          throw ParseError("'includes_infinity' must be a boolean");
        inf = j["includes_infinity"].get<bool>();
      }
      return Domain::finite_complement(detail::parse_points(j["punctures"]), inf);
    }
    if (t == "unit_disk" || t == "punctured_unit_disk" || t == "exterior_unit_disk" || t == "upper_half_plane") {
      detail::require_fields(j, {"type"}, {});
      if (t == "unit_disk")
        return Domain::unit_disk();
      if (t == "punctured_unit_disk")
        return Domain::punctured_unit_disk();
      if (t == "exterior_unit_disk")
        return Domain::exterior_unit_disk();
      return Domain::upper_half_plane();
    }
    if (t == "punctured") {
      detail::require_fields(j, {"type", "base", "punctures"}, {"base", "punctures"});
      return Domain::punctured(domain_from_json(j["base"]), detail::parse_points(j["punctures"]));
    }
    if (t == "transformed") {
      detail::require_fields(j, {"type", "base", "scale", "shift"}, {"base"});
      Similarity f;
      if (j.contains("scale"))
        f.s = parse_point(j["scale"]);
      if (j.contains("shift"))
        f.t = parse_point(j["shift"]);
      return Domain::transformed(domain_from_json(j["base"]), f);
    }
  } catch (const ParseError &) {
    throw;
  } catch (const std::exception &e) {
    throw ParseError(std::string("invalid domain: ") + e.what());
  }
  throw ParseError("unknown domain type '" + t + "'");
}

inline Domain parse_domain(const std::string &text)
{
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return domain_from_json(j);
}

inline Domain load_domain(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open domain file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_domain(ss.str());
}

inline json to_json(const Domain &D)
{
  json pts = json::array();
  switch (D.kind()) {
  case Domain::Kind::finite_complement:
    for (cplx p : D.own_punctures())
      pts.push_back(point_json(p));
    return {{"type", "finite_complement"}, {"punctures", pts}, {"includes_infinity", D.includes_infinity()}};
  case Domain::Kind::unit_disk: return {{"type", "unit_disk"}};
  case Domain::Kind::punctured_unit_disk: return {{"type", "punctured_unit_disk"}};
  case Domain::Kind::exterior_unit_disk: return {{"type", "exterior_unit_disk"}};
  case Domain::Kind::upper_half_plane: return {{"type", "upper_half_plane"}};
  case Domain::Kind::punctured_subdomain:
    for (cplx p : D.own_punctures())
      pts.push_back(point_json(p));
    return {{"type", "punctured"}, {"base", to_json(*D.base())}, {"punctures", pts}};
  case Domain::Kind::translated_scaled:
    return {{"type", "transformed"},
            {"base", to_json(*D.base())},
            {"scale", point_json(D.similarity().s)},
            {"shift", point_json(D.similarity().t)}};
  }
  throw std::logic_error("to_json: unknown domain kind");
}

// ---- results

inline json to_json(const DistanceInterval &d)
{
  return {{"lower", num(d.lower)},
          {"upper", num(d.upper)},
          {"lower_source", d.lower_source},
          {"upper_source", d.upper_source}};
}

inline json to_json(const Annulus &A)
{
  json j = {{"center", point_json(A.center())}};
  switch (A.kind()) {
  case Annulus::Kind::bounded:
    j["kind"] = "bounded";
    j["d"] = A.d();
    j["m"] = A.m();
    j["inner_radius"] = A.inner_radius();
    j["outer_radius"] = A.outer_radius();
    break;
  case Annulus::Kind::punctured_disk:
    j["kind"] = "punctured_disk";
    j["outer_radius"] = A.outer_radius();
    break;
  case Annulus::Kind::exterior:
    j["kind"] = "exterior";
    j["inner_radius"] = A.inner_radius();
    break;
  }
  j["modulus"] = num(A.modulus());
  return j;
}

inline json to_json(const Polyline &g)
{
  json pts = json::array();
  for (cplx z : g.points())
    pts.push_back(point_json(z));
  return pts;
}

inline json to_json(const GridResolution &r)
{
  return {{"resolution", r.resolution},         {"charts", r.charts},
          {"chart_nodes", r.chart_nodes},       {"background_nx", r.background_nx},
          {"background_ny", r.background_ny},   {"background_cell", num(r.background_cell)},
          {"graph_nodes", r.graph_nodes},       {"path_vertices", r.path_vertices},
          {"relax_sweeps", r.relax_sweeps},     {"best_level", r.best_level}};
}

inline json to_json(const GeodesicResult &g)
{
  return {{"lower", num(g.distance.lower)},
          {"upper", num(g.distance.upper)},
          {"lower_source", g.distance.lower_source},
          {"upper_source", g.distance.upper_source},
          {"path", to_json(g.path)},
          {"resolution", to_json(g.resolution)}};
}

inline json to_json(const BetaResult &b)
{
  json j = {{"value", num(b.value)},
            {"delta", num(b.delta)},
            {"witness_zeta", point_json(b.witness_zeta)},
            {"witness_xi", point_json(b.witness_xi)}};
  j["bp_annulus"] = b.bp_annulus ? to_json(*b.bp_annulus) : json(nullptr);
  return j;
}

inline json to_json(const UPReport &r)
{
  json iso = json::array();
  for (const auto &p : r.isolated_points)
    iso.push_back(point_json(p));
  return {{"unbounded", r.unbounded},
          {"sup_modulus", num(r.sup_modulus)},
          {"witness_annulus", r.witness_annulus ? to_json(*r.witness_annulus) : json(nullptr)},
          {"isolated_points", iso},
          {"centers_checked", r.centers_checked}};
}

inline json to_json(const AbcReport &r)
{
  json det = json::array();
  for (const auto &v : r.details)
    det.push_back({{"annulus", to_json(v.annulus)}, {"kind", v.kind}, {"excess", num(v.excess)}});
  return {{"pass", r.pass},
          {"candidates_checked", r.candidates_checked},
          {"skipped", r.skipped},
          {"violations", r.violations},
          {"crossing_violations", r.crossing_violations},
          {"max_excess", num(r.max_excess)},
          {"details", det}};
}

inline json to_json(const QIReport &r)
{
  json pairs = json::array();
  for (const auto &q : r.pairs)
    pairs.push_back({{"a", point_json(q.a)},
                     {"b", point_json(q.b)},
                     {"h", to_json(q.h)},
                     {"k_mapped", to_json(q.k_mapped)},
                     {"slack", num(q.slack)},
                     {"violation", q.violation}});
  return {{"L", num(r.L)},
          {"C", num(r.C)},
          {"violations", r.violations},
          {"max_slack", num(r.max_slack)},
          {"mean_slack", num(r.mean_slack)},
          {"pairs", pairs}};
}

// ---- UP sets and puncture configurations

namespace detail {

inline void require_keys(const json &j, const char *what, std::set<std::string> allowed, std::set<std::string> required)
{
  if (!j.is_object())
    throw ParseError(std::string(what) + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ParseError("unknown field '" + it.key() + "' in " + what);
  for (const auto &r : required)
    if (!j.contains(r))
      throw ParseError("missing field '" + r + "' in " + what);
}

inline double get_number(const json &j, const char *key)
{
  if (!j.at(key).is_number())
    throw ParseError(std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

inline int get_int(const json &j, const char *key)
{
  if (!j.at(key).is_number_integer())
    throw ParseError(std::string("'") + key + "' must be an integer");
  return j.at(key).get<int>();
}

inline bool get_bool(const json &j, const char *key)
{
  if (!j.at(key).is_boolean())
    throw ParseError(std::string("'") + key + "' must be a boolean");
  return j.at(key).get<bool>();
}

inline json read_json_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
}

} // namespace detail

// {"points": [[re,im],...], "layers": [{"center","base","n_min","n_max","unit","self_similar"}],
//  "rays": [{"origin","direction"}], "disks": [{"center","radius"}], "exteriors": [{"center","radius"}],
//  "half_planes": [{"point","normal"}], "infinity": bool}
inline UpSet up_set_from_json(const json &j)
{
  detail::require_keys(j, "UP set", {"points", "layers", "rays", "disks", "exteriors", "half_planes", "infinity"}, {});
  UpSet E;
  auto arr = [&](const char *k) -> json {
    if (!j.contains(k))
      return json::array();
    if (!j[k].is_array())
      throw ParseError(std::string("'") + k + "' must be an array");
    return j[k];
  };
  E.points = detail::parse_points(arr("points"));
  for (const auto &l : arr("layers")) {
    detail::require_keys(l, "layer", {"center", "base", "n_min", "n_max", "unit", "self_similar"},
                         {"center", "base", "n_min", "n_max"});
    CircleLayers c{parse_point(l["center"]), detail::get_number(l, "base"), detail::get_int(l, "n_min"),
                   detail::get_int(l, "n_max")};
    if (l.contains("unit"))
      c.unit = detail::get_number(l, "unit");
    if (l.contains("self_similar"))
      c.self_similar = detail::get_bool(l, "self_similar");
    E.layers.push_back(c);
  }
  for (const auto &r : arr("rays")) {
    detail::require_keys(r, "ray", {"origin", "direction"}, {"origin", "direction"});
    E.rays.push_back({parse_point(r["origin"]), parse_point(r["direction"])});
  }
  for (const char *k : {"disks", "exteriors"})
    for (const auto &d : arr(k)) {
      detail::require_keys(d, k, {"center", "radius"}, {"center", "radius"});
      DiskPiece piece{parse_point(d["center"]), detail::get_number(d, "radius")};
      (std::string(k) == "disks" ? E.disks : E.exteriors).push_back(piece);
    }
  for (const auto &h : arr("half_planes")) {
    detail::require_keys(h, "half-plane", {"point", "normal"}, {"point", "normal"});
    E.half_planes.push_back({parse_point(h["point"]), parse_point(h["normal"])});
  }
  if (j.contains("infinity"))
    E.infinity = detail::get_bool(j, "infinity");
  return E;
}

// {"complement": [[re,im],...], "infinity_in_omega": bool, "punctures": [{"p": [re,im], "r": x}], "r_infinity": x}
inline PunctureConfig puncture_config_from_json(const json &j)
{
  detail::require_keys(j, "puncture configuration", {"complement", "infinity_in_omega", "punctures", "r_infinity"},
                       {"punctures"});
  PunctureConfig c;
  if (j.contains("complement"))
    c.complement = detail::parse_points(j["complement"]);
  if (j.contains("infinity_in_omega"))
    c.infinity_in_omega = detail::get_bool(j, "infinity_in_omega");
  if (!j["punctures"].is_array())
    throw ParseError("'punctures' must be an array");
  for (const auto &p : j["punctures"]) {
    detail::require_keys(p, "puncture", {"p", "r"}, {"p", "r"});
    c.finite.push_back({parse_point(p["p"]), detail::get_number(p, "r")});
  }
  if (j.contains("r_infinity") && !j["r_infinity"].is_null())
    c.r_infinity = detail::get_number(j, "r_infinity");
  return c;
}

inline json to_json(const PunctureConfig &c)
{
  json comp = json::array(), pun = json::array();
  for (cplx z : c.complement)
    comp.push_back(point_json(z));
  for (const auto &p : c.finite)
    pun.push_back({{"p", point_json(p.p)}, {"r", p.r}});
  return {{"complement", comp},
          {"infinity_in_omega", c.infinity_in_omega},
          {"punctures", pun},
          {"r_infinity", c.r_infinity ? json(*c.r_infinity) : json(nullptr)}};
}

// ---- CSV

inline void write_path_csv(std::ostream &os, const Polyline &g)
{
  os << "re,im\n";
  for (cplx z : g.points())
    os << fmt17(z.real()) << ',' << fmt17(z.imag()) << '\n';
}

inline void write_divergence_csv(std::ostream &os, const DivergenceTable &t)
{
  os << "n,L_n,k_n,h_upper_n,bound_n\n";
  for (const auto &r : t.rows)
    os << r.n << ',' << fmt17(r.L) << ',' << fmt17(r.k) << ',' << fmt17(r.h_upper) << ',' << fmt17(r.bound)
       << '\n';
}

struct GridSpec {
  double re_min, re_max, im_min, im_max;
  double step;
};

inline json to_json(const GridSpec &g)
{
  return {{"re_min", g.re_min}, {"re_max", g.re_max}, {"im_min", g.im_min},
          {"im_max", g.im_max}, {"step", g.step},     {"order", "row-major, im outer, re inner"}};
}

} // namespace qhdist

#endif // QHDIST_SERIALIZE_HPP
