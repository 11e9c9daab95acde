#pragma once

#include <string>

#include <json.hpp>

#include "hcf/coarea.hpp"
#include "hcf/cone.hpp"
#include "hcf/cover.hpp"
#include "hcf/pushout.hpp"

namespace hcf {

inline constexpr const char* kSchema = "hcf-report/1";

// {"schema": ..., "kind": kind, "report": body}
nlohmann::json envelope(const std::string& kind, nlohmann::json body);
// Two-space indented text with a trailing newline.
std::string dump(const nlohmann::json& j);

nlohmann::json to_json(const ContentResult& r);
nlohmann::json to_json(const Covering& c);
nlohmann::json to_json(const SliceProfile& p, double m);
nlohmann::json to_json(const Slice& s);
// Output balls are listed only when with_output is set; counts and costs always.
nlohmann::json to_json(const ConeCertificate& c, bool with_output = true);
nlohmann::json to_json(const CoverageReport& r);
nlohmann::json to_json(const ThickPoint& p);
nlohmann::json to_json(const AveragePoint& a);
nlohmann::json to_json(const DeformationTrace& t);
nlohmann::json to_json(const LoomisWhitneyReport& r);
nlohmann::json to_json(const CubeEqualityReport& r);

}  // namespace hcf
