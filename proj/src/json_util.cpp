#include "hcf/json_util.hpp"

#include <cmath>

#include "hcf/errors.hpp"

namespace hcf {

using nlohmann::json;

json jq(const Rational& q) { return to_string(q); }

json jdouble(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json jv(const Value& v) {
  json j;
  j["approx"] = jdouble(v.approx);
  if (v.exact) j["exact"] = to_string(*v.exact);
  return j;
}

json jpoint(const Point& p) {
  json j = json::array();
  for (const auto& x : p) j.push_back(jq(x));
  return j;
}

json jball(const Ball& b) {
  json j;
  j["center"] = jpoint(b.center);
  j["radius"] = jq(b.radius);
  if (b.center_id) j["center_id"] = *b.center_id;
  return j;
}

json jballs(const std::vector<Ball>& b) {
  json j = json::array();
  for (const auto& x : b) j.push_back(jball(x));
  return j;
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return from_double(j.get<double>());
  throw InputError("expected a rational");
}

Point point_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected a coordinate array");
  Point p;
  for (const auto& x : j) p.push_back(rational_from_json(x));
  return p;
}

Ball ball_from_json(const json& j) {
  if (!j.is_object() || !j.contains("radius")) throw InputError("ball needs a radius");
  Ball b;
  if (j.contains("center")) b.center = point_from_json(j.at("center"));
  b.radius = rational_from_json(j.at("radius"));
  if (j.contains("center_id")) b.center_id = j.at("center_id").get<std::size_t>();
  if (b.center.empty() && !b.center_id) throw InputError("ball needs a center or a center_id");
  return b;
}

}  // namespace hcf
