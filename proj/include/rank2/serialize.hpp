#pragma once

#include <sstream>
#include <string>

#include "json.hpp"
#include "rank2/verify.hpp"

namespace rank2 {

using nlohmann::json;

inline std::string integer_text(const Integer& c) { return c.str(); }

inline std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    return Rational(Integer(s.substr(0, slash))) / Rational(Integer(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw MalformedInput("not a rational: " + s);
  }
}

/// [[m1, m2, "coeff"], ...] in lexicographic exponent order.
inline json to_json(const LaurentPoly& p) {
  json a = json::array();
  for (const auto& [m, c] : p) a.push_back({m.m1, m.m2, integer_text(c)});
  return a;
}

inline LaurentPoly poly_from_json(const json& a) {
  if (!a.is_array()) throw MalformedInput("polynomial must be an array of triples");
  LaurentPoly p;
  for (const auto& t : a) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() || !t[2].is_string())
      throw MalformedInput("polynomial term must be [m1, m2, \"coeff\"]");
    try {
      p.add_term({t[0].get<std::int64_t>(), t[1].get<std::int64_t>()}, Integer(t[2].get<std::string>()));
    } catch (const std::runtime_error&) {
      throw MalformedInput("bad coefficient " + t[2].get<std::string>());
    }
  }
  return p;
}

inline json to_json(const ScatteringDiagram& D) {
  json walls = json::array();
  for (const Wall& w : D.walls) {
    json coeffs = json::object();
    for (const auto& [k, c] : w.coeffs) coeffs[std::to_string(k)] = integer_text(c);
    walls.push_back({{"dir", {w.direction.m1, w.direction.m2}}, {"geom", to_string(w.geometry)}, {"coeffs", coeffs}});
  }
  return {{"b", D.params.b}, {"c", D.params.c}, {"variant", to_string(D.variant)}, {"order", D.order}, {"walls", walls}};
}

inline ScatteringDiagram diagram_from_json(const json& j) {
  try {
    const ClusterParams params{j.at("b").get<std::int64_t>(), j.at("c").get<std::int64_t>()};
    const std::string v = j.at("variant").get<std::string>();
    if (v != "g" && v != "d") throw MalformedInput("variant must be \"g\" or \"d\"");
    const std::int64_t K = j.at("order").get<std::int64_t>();
    ScatteringDiagram D = v == "g" ? initial_diagram_g(params, K) : initial_diagram_d(params, K);
    D.walls.clear();
    for (const auto& jw : j.at("walls")) {
      Wall w;
      const auto& dir = jw.at("dir");
      w.direction = {dir.at(0).get<std::int64_t>(), dir.at(1).get<std::int64_t>()};
      const std::string g = jw.at("geom").get<std::string>();
      if (g != "line" && g != "ray") throw MalformedInput("geom must be \"line\" or \"ray\"");
      w.geometry = g == "line" ? WallGeometry::line : WallGeometry::ray;
      for (const auto& [k, c] : jw.at("coeffs").items()) w.coeffs[std::stoll(k)] = Integer(c.get<std::string>());
      D.walls.push_back(std::move(w));
    }
    D.normalize();
    D.validate();
    return D;
  } catch (const MalformedInput&) {
    throw;
  } catch (const std::exception& e) {
    throw MalformedInput(std::string("bad diagram JSON: ") + e.what());
  }
}

inline json to_json(const RationalPoint& q) { return {rational_text(q.q1), rational_text(q.q2)}; }

/// One record per domain of linearity.
inline json to_json(const BrokenLine& l) {
  json a = json::array();
  for (const auto& s : l.segments) {
    a.push_back({{"exponent", {s.exponent.m1, s.exponent.m2}},
                 {"coeff", integer_text(s.coeff)},
                 {"bend_point", s.bend_point ? to_json(*s.bend_point) : json(nullptr)}});
  }
  return a;
}

inline json to_json(const ComparisonReport& r) {
  json j = {{"params", {{"b", r.params.b}, {"c", r.params.c}}},
            {"d_vector", {r.d.a1, r.d.a2}},
            {"order", r.order},
            {"greedy", to_json(r.greedy)},
            {"theta", to_json(r.theta)},
            {"equal", r.equal},
            {"support_certificate", r.support_certificate},
            {"timing_ms", {{"greedy", r.greedy_ms}, {"theta", r.theta_ms}}}};
  if (!r.equal) {
    json og = json::array(), ot = json::array();
    for (const auto& m : r.only_greedy) og.push_back({m.m1, m.m2});
    for (const auto& m : r.only_theta) ot.push_back({m.m1, m.m2});
    j["symmetric_difference"] = {{"greedy_only", og}, {"theta_only", ot}};
  }
  return j;
}

}  // namespace rank2
