#include "hcf/io.hpp"

#include <fstream>
#include <sstream>

#include "hcf/errors.hpp"
#include "hcf/json_util.hpp"

namespace hcf {

using nlohmann::json;

namespace {

std::vector<std::vector<double>> rows_of(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of arrays");
  std::vector<std::vector<double>> out;
  for (const auto& r : j) {
    if (!r.is_array()) throw InputError(std::string(what) + " must be an array of arrays");
    std::vector<double> row;
    for (const auto& x : r) {
      if (!x.is_number()) throw InputError(std::string(what) + " entries must be numbers");
      row.push_back(x.get<double>());
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

Space space_from_json(const json& j) {
  if (!j.is_object()) throw InputError("space must be a JSON object");
  std::string variant = j.value("variant", std::string("voxel"));
  if (variant == "voxel") {
    if (!j.contains("n") || !j.contains("cells")) throw InputError("voxel space needs n and cells");
    int n = j.at("n").get<int>();
    Rational delta = j.contains("delta") ? rational_from_json(j.at("delta")) : Rational(1);
    std::vector<IntPoint> cells;
    if (!j.at("cells").is_array()) throw InputError("cells must be an array");
    for (const auto& c : j.at("cells")) {
      if (!c.is_array()) throw InputError("each cell must be an integer array");
      IntPoint p;
      for (const auto& x : c) {
        if (!x.is_number_integer()) throw InputError("cell coordinates must be integers");
        p.push_back(x.get<std::int64_t>());
      }
      cells.push_back(std::move(p));
    }
    return Space::voxel(n, delta, std::move(cells));
  }
  if (variant == "net") {
    double eps = j.value("eps_net", 0.0);
    if (j.contains("matrix")) return Space::net_from_matrix(rows_of(j.at("matrix"), "matrix"), eps);
    if (!j.contains("points")) throw InputError("net space needs points or matrix");
    Metric metric = parse_metric(j.value("metric", std::string("l2")));
    return Space::net(rows_of(j.at("points"), "points"), metric, eps);
  }
  throw InputError("unknown space variant '" + variant + "'");
}

json space_to_json(const Space& s) {
  json j;
  if (s.is_voxel()) {
    j["variant"] = "voxel";
    j["n"] = s.dim();
    j["delta"] = jq(s.delta());
    j["cells"] = s.cells();
    return j;
  }
  j["variant"] = "net";
  j["eps_net"] = s.eps_net();
  if (s.has_coordinates()) {
    j["metric"] = to_string(s.metric());
    j["points"] = s.points();
  } else {
    j["metric"] = "matrix";
    std::size_t k = s.size();
    json rows = json::array();
    for (std::size_t a = 0; a < k; ++a) {
      std::vector<double> r(s.matrix().begin() + a * k, s.matrix().begin() + (a + 1) * k);
      rows.push_back(r);
    }
    j["matrix"] = rows;
  }
  return j;
}

Covering covering_from_json(const json& j) {
  Covering c;
  const json* balls = &j;
  if (j.is_object()) {
    if (!j.contains("balls")) throw InputError("covering needs a balls array");
    balls = &j.at("balls");
    if (j.contains("m")) c.m = j.at("m").get<double>();
  }
  if (!balls->is_array()) throw InputError("balls must be an array");
  for (const auto& b : *balls) c.balls.push_back(ball_from_json(b));
  c.cost = covering_cost(c.balls, c.m);
  return c;
}

json covering_to_json(const Covering& c) {
  json j;
  j["m"] = c.m;
  j["balls"] = jballs(c.balls);
  return j;
}

std::vector<ThickPoint> thick_points_from_json(const json& j) {
  const json* list = &j;
  if (j.is_object()) {
    if (!j.contains("points")) throw InputError("point file needs a points array");
    list = &j.at("points");
  }
  if (!list->is_array()) throw InputError("points must be an array");
  std::vector<ThickPoint> out;
  for (const auto& x : *list) {
    ThickPoint p;
    if (x.is_object()) {
      if (!x.contains("center")) throw InputError("thick point needs a center");
      p.c = point_from_json(x.at("center"));
      p.rho = x.contains("radius") ? rational_from_json(x.at("radius")) : Rational(0);
    } else {
      p.c = point_from_json(x);
      p.rho = 0;
    }
    if (p.rho < 0) throw InputError("negative point radius");
    out.push_back(std::move(p));
  }
  return out;
}

Point parse_point(const std::string& s) {
  Point p;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) p.push_back(parse_rational(tok));
  if (p.empty()) throw InputError("empty point '" + s + "'");
  return p;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot write");
  out << text;
}

namespace {

template <class F>
auto load(const std::string& path, F f) {
  json j = read_json_file(path);
  try {
    return f(j);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace

Space load_space(const std::string& path) { return load(path, space_from_json); }
Covering load_covering(const std::string& path) { return load(path, covering_from_json); }
std::vector<ThickPoint> load_thick_points(const std::string& path) { return load(path, thick_points_from_json); }

}  // namespace hcf
