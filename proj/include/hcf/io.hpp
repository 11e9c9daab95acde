#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hcf/pushout.hpp"
#include "hcf/space.hpp"

namespace hcf {

// Space files:
//   {"variant": "voxel", "n": 2, "delta": "1/8", "cells": [[0, 0], [1, 0]]}
//   {"variant": "net", "metric": "l2", "eps_net": 0.05, "points": [[0.0, 0.1], ...]}
//   {"variant": "net", "metric": "matrix", "eps_net": 0.05, "matrix": [[0, 1], [1, 0]]}
// Optional "name" and "tags" fields are ignored by the loader.
Space space_from_json(const nlohmann::json& j);
nlohmann::json space_to_json(const Space& s);

// {"m": 2, "balls": [{"center": ["0", "1/2"], "radius": "1/4"}, ...]}; a bare
// ball list is accepted too.
Covering covering_from_json(const nlohmann::json& j);
nlohmann::json covering_to_json(const Covering& c);

// Thick points: [{"center": [...], "radius": "1/16"}, ...] or
// {"points": [...]}. Plain coordinate lists get radius 0.
std::vector<ThickPoint> thick_points_from_json(const nlohmann::json& j);

// Comma-separated coordinates, each a decimal or p/q.
Point parse_point(const std::string& s);

// File helpers; errors name the file and throw InputError.
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Space load_space(const std::string& path);
Covering load_covering(const std::string& path);
std::vector<ThickPoint> load_thick_points(const std::string& path);

}  // namespace hcf
