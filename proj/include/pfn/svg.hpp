#pragma once

#include <string>

#include "pfn/partition.hpp"

namespace pfn {

/// SVG picture of a plane partition: cells colored by sign vector (sampled
/// on a raster), factor zero-curves traced by marching over a 512x512 sign
/// grid with bisection refinement at each crossing (final bracket signs are
/// checked exactly), input points drawn per collection.
std::string render_partition_svg(const Partition& partition,
                                 const std::vector<std::vector<Point>>& collections,
                                 int pixels = 640);

} // namespace pfn
