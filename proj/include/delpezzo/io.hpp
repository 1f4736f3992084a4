#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "delpezzo/linear_series.hpp"
#include "delpezzo/surface_builder.hpp"

namespace delpezzo {

using Json = nlohmann::ordered_json;

inline Json to_json(const PicardVector& v) { return to_string(v); }

inline Json to_json(const std::vector<PicardVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_string(v));
  return a;
}

inline Rational json_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw Error(ErrorKind::Parse, "rationals must be strings 'p/q'");
  return parse_rational(j.get<std::string>());
}

/// Generators as term lists {exponents, coeff}, terms in descending exponent order.
inline Json series_to_json(const LinearSeries& s) {
  Json gens = Json::array();
  for (const auto& g : s.generators) {
    Json terms = Json::array();
    for (auto it = g.terms().rbegin(); it != g.terms().rend(); ++it)
      terms.push_back({{"exponents", {it->first[0], it->first[1], it->first[2]}}, {"coeff", rational_text(it->second)}});
    gens.push_back(std::move(terms));
  }
  return {{"degree", s.degree}, {"generators", std::move(gens)}};
}

/// Also accepts generators written as text, e.g. "x^2 - 2*y*z".
inline LinearSeries series_from_json(const Json& j) {
  LinearSeries s;
  s.degree = j.at("degree").get<int>();
  for (const auto& g : j.at("generators")) {
    if (g.is_string()) {
      s.generators.push_back(parse_polynomial(g.get<std::string>(), projective_names()));
      continue;
    }
    Polynomial p(3);
    for (const auto& t : g) {
      auto e = t.at("exponents").get<std::vector<int>>();
      if (e.size() != 3) throw Error(ErrorKind::Parse, "exponents need three entries");
      p.add_term({e[0], e[1], e[2]}, json_rational(t.at("coeff")));
    }
    s.generators.push_back(std::move(p));
  }
  for (const auto& g : s.generators)
    if (!g.is_zero() && (!g.is_homogeneous() || g.total_degree() != s.degree))
      throw Error(ErrorKind::Parse, "generators must be homogeneous of the stated degree");
  return s;
}

inline Json forest_to_json(const BasePointForest& f) {
  Json a = Json::array();
  for (const auto& p : f) {
    Json n = {{"chart", chart_name(p.chart)},
              {"depth", p.depth},
              {"solution", {rational_text(p.a), rational_text(p.b)}},
              {"multiplicity", p.multiplicity}};
    if (p.overlap()) n["overlap"] = true;
    n["t"] = forest_to_json(p.t);
    n["s"] = forest_to_json(p.s);
    a.push_back(std::move(n));
  }
  return a;
}

inline Json trees_to_json(const BasePointTrees& t) {
  return {{"z", forest_to_json(t.z)}, {"y", forest_to_json(t.y)}, {"x", forest_to_json(t.x)}};
}

inline BasePointForest forest_from_json(const Json& a) {
  BasePointForest f;
  for (const auto& n : a) {
    BasePoint p;
    const auto& sol = n.at("solution");
    if (sol.size() != 2) throw Error(ErrorKind::Parse, "a solution has two coordinates");
    p.a = json_rational(sol[0]);
    p.b = json_rational(sol[1]);
    p.multiplicity = n.value("multiplicity", 1);
    if (n.value("overlap", false) || p.multiplicity < 0) continue;
    if (n.contains("t")) p.t = forest_from_json(n["t"]);
    if (n.contains("s")) p.s = forest_from_json(n["s"]);
    f.push_back(std::move(p));
  }
  return f;
}

/// Prescribed trees; chart and depth fields are implied by position.
inline BasePointTrees trees_from_json(const Json& j) {
  BasePointTrees t;
  if (j.contains("z")) t.z = forest_from_json(j["z"]);
  if (j.contains("y")) t.y = forest_from_json(j["y"]);
  if (j.contains("x")) t.x = forest_from_json(j["x"]);
  normalize(t);
  return t;
}

inline Json configuration_to_json(const PointConfiguration& c) {
  Json a = Json::array();
  for (int i = 0; i < c.rank(); ++i) {
    const auto& p = c.points[i];
    Json n = {{"point", i + 1}};
    if (p.parent >= 0) n["parent"] = p.parent + 1;
    n["chart"] = chart_name(p.chart);
    n["coordinates"] = {rational_text(p.a), rational_text(p.b)};
    a.push_back(std::move(n));
  }
  return a;
}

/// Points numbered from 1; "parent" marks an infinitely near point in chart Ct or Cs.
inline PointConfiguration configuration_from_json(const Json& a) {
  PointConfiguration c;
  for (const auto& n : a) {
    ConfigPoint p;
    p.parent = n.value("parent", 0) - 1;
    p.chart = parse_chart(n.value("chart", p.parent < 0 ? "Uz" : "Ct"));
    const auto& xy = n.at("coordinates");
    p.a = json_rational(xy.at(0));
    p.b = json_rational(xy.at(1));
    if (p.parent < 0 && p.chart != Chart::Uz) throw Error(ErrorKind::Parse, "plane points use chart Uz");
    if (p.parent >= 0 && p.chart != Chart::Ct && p.chart != Chart::Cs)
      throw Error(ErrorKind::Parse, "infinitely near points use chart Ct or Cs");
    if (p.parent >= static_cast<int>(c.points.size())) throw Error(ErrorKind::Parse, "parent must come earlier");
    c.points.push_back(p);
  }
  return c;
}

}  // namespace delpezzo
