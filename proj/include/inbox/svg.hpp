#pragma once

#include <string>
#include <vector>

#include "inbox/convexset.hpp"
#include "inbox/mair2d.hpp"

namespace inbox {

// Set boundary (one path) plus one inscribed rectangle polygon. Quadratic
// boundaries are marched as 512 ray segments from an interior point.
std::string render_figure(const ConvexSet& set, const Rectangle2D& rect);
std::string render_figure(const ConvexSet& set, const BoxRegion& box);

// Line plot of f(t) over the sampled directions.
std::string render_profile(const std::vector<DirectionSample>& samples);

void write_file(const std::string& path, const std::string& content);

}  // namespace inbox
