#pragma once

#include <vector>

#include "fisim/vision/dbscan.hpp"
#include "fisim/vision/image.hpp"

namespace fisim {

struct DetectParams {
  int sobel_threshold = 60;
  double dbscan_eps = 6.0;
  int dbscan_min_pts = 12;
  double px_per_m = 100.0;
  int max_edge_points = 40000;  // deterministic uniform subsample above this
};

struct LaneDetection {
  bool ok = false;
  double left_m = 0.0;   // signed, relative to the image midline
  double right_m = 0.0;
};

// Horizontal-derivative Sobel; a pixel is an edge when |g| exceeds the
// threshold. Points are returned row-major; when more than max_points fire,
// a uniform index subsample keeps the count at max_points.
std::vector<Point2i> sobel_edges(const Image& img, int threshold, int max_points);

// Edge extraction, density clustering, then midline split: each cluster
// contributes its sub-centroids left/right of the midline; the candidate
// nearest the midline on each side becomes that side's marker.
// Fails when either side has no candidate. Ordering left < right holds on
// clean renders but is not guaranteed on corrupted frames.
LaneDetection detect_lanes(const Image& img, const DetectParams& p);

}  // namespace fisim
