#pragma once

#include <vector>

#include <json.hpp>

#include "hcf/rational.hpp"
#include "hcf/space.hpp"

namespace hcf {

// Rationals are written as "p/q" strings so reports stay exact and byte-stable.
nlohmann::json jq(const Rational& q);
nlohmann::json jv(const Value& v);  // {"approx": x, "exact": "p/q"?}
nlohmann::json jpoint(const Point& p);
nlohmann::json jball(const Ball& b);
nlohmann::json jballs(const std::vector<Ball>& b);
nlohmann::json jdouble(double x);  // non-finite values become strings

Rational rational_from_json(const nlohmann::json& j);
Point point_from_json(const nlohmann::json& j);
Ball ball_from_json(const nlohmann::json& j);

}  // namespace hcf
