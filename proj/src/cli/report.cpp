#include "report.hpp"

#include <cstdio>
#include <variant>

#include "quadric/cli/parser.hpp"

namespace quadric::cli {

namespace {

Json vec2(const Vec2& v) { return Json::array({v.u, v.v}); }

template <class T>
Json optional_check(const std::optional<T>& value, double residual) {
  if (!value) return nullptr;
  return Json{{"value", *value}, {"residual", residual}};
}

std::string number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string scalar(const Json& j) {
  switch (j.type()) {
    case Json::value_t::string: return j.get<std::string>();
    case Json::value_t::boolean: return j.get<bool>() ? "true" : "false";
    case Json::value_t::null: return "null";
    case Json::value_t::number_float: return number(j.get<double>());
    default: return j.dump();
  }
}

bool numeric_array(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& e : j)
    if (!e.is_number()) return false;
  return true;
}

void flatten(const Json& j, const std::string& path, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (numeric_array(j)) {
    out += path + ": [";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + scalar(j[i]);
    out += "]\n";
  } else if (j.is_array()) {
    if (j.empty()) out += path + ": []\n";
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out += path + ": " + scalar(j) + "\n";
  }
}

}  // namespace

// Adding zero turns -0 into 0.
Json to_json(const Vec3& v) { return Json::array({v.x + 0.0, v.y + 0.0, v.z + 0.0}); }

Json to_json(const Plane3& pl) { return {{"normal", to_json(pl.normal())}, {"offset", pl.offset()}}; }

Json to_json(const Line3& line) {
  return {{"point", to_json(line.point())}, {"direction", to_json(line.direction())}};
}

Json to_json(const Ellipse3& e) {
  return {{"center", to_json(e.center)},
          {"major_dir", to_json(e.major_dir)},
          {"minor_dir", to_json(e.minor_dir)},
          {"semi_major", e.semi_major},
          {"semi_minor", e.semi_minor}};
}

Json to_json(const RigidMotion& m) {
  const Mat3& r = m.rotation();
  return {{"rotation", Json::array({to_json(r.row(0)), to_json(r.row(1)), to_json(r.row(2))})},
          {"translation", to_json(m.translation())}};
}

Json to_json(const PlanarConic& c) {
  Json shape = {{"center", vec2(c.shape.center)},
                {"center_3d", to_json(c.lift(c.shape.center))},
                {"axis1", vec2(c.shape.axis1)},
                {"axis2", vec2(c.shape.axis2)},
                {"semi1", c.shape.semi1},
                {"semi2", c.shape.semi2},
                {"latus", c.shape.latus}};
  return {{"class", std::string(to_string(c.cls))},
          {"frame", {{"origin", to_json(c.origin)}, {"e1", to_json(c.e1)}, {"e2", to_json(c.e2)}}},
          {"coefficients", {{"A", c.A}, {"B", c.B}, {"C", c.C}, {"D", c.D}, {"E", c.E}, {"F", c.F}}},
          {"shape", shape}};
}

Json to_json(const CanonicalForm& cf) {
  return {{"class", std::string(to_string(cf.cls))},
          {"semi_axes", to_json(cf.semi_axes)},
          {"parabolic", Json::array({cf.parabolic[0], cf.parabolic[1]})},
          {"linear_only", cf.linear_only},
          {"canonical_equation", emit_polynomial(cf.canonical_quadric())},
          {"origin", to_json(cf.origin())},
          {"axes", Json::array({to_json(cf.axis(0)), to_json(cf.axis(1)), to_json(cf.axis(2))})},
          {"motion", to_json(cf.motion)}};
}

Json to_json(const CenterResult& c) {
  return std::visit(
      [](const auto& r) -> Json {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, UniquePoint>) return {{"kind", "UniquePoint"}, {"point", to_json(r.point)}};
        if constexpr (std::is_same_v<T, LineOfCenters>) return {{"kind", "LineOfCenters"}, {"line", to_json(r.line)}};
        if constexpr (std::is_same_v<T, PlaneOfCenters>) return {{"kind", "PlaneOfCenters"}, {"plane", to_json(r.plane)}};
        if constexpr (std::is_same_v<T, NoCenter>) return {{"kind", "NoCenter"}};
        return {{"kind", "EverywhereCenter"}};
      },
      c);
}

Json to_json(const SectionVerdict& v) {
  return {{"predicted", std::string(to_string(v.predicted))},
          {"observed", to_json(v.observed)},
          {"class_ok", v.class_ok},
          {"axis_location", {{"value", v.axis_location}, {"residual", v.axis_residual}}},
          {"similarity", optional_check(v.similarity, v.similarity_residual)},
          {"latus", optional_check(v.latus, v.latus_residual)},
          {"major_axis", optional_check(v.major_axis, v.major_residual)},
          {"minor_axis", optional_check(v.minor_axis, v.minor_residual)},
          {"ratio", optional_check(v.ratio, v.ratio_residual)},
          {"circle_flag", v.circle_flag},
          {"holds", v.holds}};
}

Json to_json(const Tolerance& tol) {
  return {{"rank_eps", tol.rank_eps}, {"residual_eps", tol.residual_eps}, {"iter_max", tol.iter_max}};
}

std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

std::string render_text(const Json& report) {
  std::string out;
  flatten(report, "", out);
  return out;
}

}  // namespace quadric::cli
