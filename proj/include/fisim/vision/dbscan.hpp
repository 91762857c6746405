#pragma once

#include <vector>

namespace fisim {

struct Point2i {
  int x = 0;
  int y = 0;
};

inline constexpr int kDbscanNoise = -1;

// Standard density clustering over 2D integer points with Euclidean eps.
// A point is core when its eps-neighborhood (itself included) holds at least
// min_pts points; clusters are maximal density-connected sets; the rest is
// noise. Labels are 0..k-1 in discovery order, which is deterministic for a
// fixed input ordering. Grid-accelerated; O(n * neighborhood).
std::vector<int> dbscan(const std::vector<Point2i>& pts, double eps, int min_pts);

}  // namespace fisim
