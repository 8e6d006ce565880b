#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "inbox/convexset.hpp"

namespace inbox {

using ordered_json = nlohmann::ordered_json;

// Schema: {"dim": d, "constraints": [{"type":"linear","p":[...],"b":x},
// {"type":"quadratic","A":[[...]],"b":[...],"c":x}]} or
// {"polygon": {"vertices": [[x,y],...]}} with ccw vertices.
ConvexSet parse_set(const ordered_json& j);
ConvexSet parse_set_file(const std::string& path);

Rectangle2D parse_rectangle(const ordered_json& j);
Rectangle2D parse_rectangle_file(const std::string& path);

// Round to 12 significant digits; all CLI numerics go through this.
double round12(double x);

ordered_json to_json(const BoxRegion& box);
ordered_json to_json(const Rectangle2D& rect);

// FNV-1a 64 over a canonical rendering of the parsed set.
std::string set_digest(const ConvexSet& set);

// Exact polygon or single-ellipse area when available (for ratio output).
std::optional<double> exact_area(const ConvexSet& set);

}  // namespace inbox
