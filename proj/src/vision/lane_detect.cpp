#include "fisim/vision/lane_detect.hpp"

#include <cmath>
#include <cstdlib>
#include <map>

namespace fisim {

std::vector<Point2i> sobel_edges(const Image& img, int threshold, int max_points) {
  std::vector<Point2i> pts;
  if (img.width < 3 || img.height < 3) return pts;
  const int W = img.width, H = img.height;
  // v[x] = vertical (1,2,1) sum at column x for the current row, so the
  // horizontal Sobel response is v[x+1] - v[x-1].
  std::vector<int> v(static_cast<size_t>(W));
  for (int y = 1; y < H - 1; ++y) {
    const uint8_t* r0 = img.row(y - 1);
    const uint8_t* r1 = img.row(y);
    const uint8_t* r2 = img.row(y + 1);
    for (int x = 0; x < W; ++x) v[static_cast<size_t>(x)] = r0[x] + 2 * r1[x] + r2[x];
    for (int x = 1; x < W - 1; ++x) {
      const int g = v[static_cast<size_t>(x + 1)] - v[static_cast<size_t>(x - 1)];
      if (g > threshold || g < -threshold) pts.push_back({x, y});
    }
  }
  const int n = static_cast<int>(pts.size());
  if (max_points > 0 && n > max_points) {
    std::vector<Point2i> keep(static_cast<size_t>(max_points));
    for (int i = 0; i < max_points; ++i)
      keep[static_cast<size_t>(i)] =
          pts[static_cast<size_t>(static_cast<int64_t>(i) * n / max_points)];
    pts = std::move(keep);
  }
  return pts;
}

LaneDetection detect_lanes(const Image& img, const DetectParams& p) {
  LaneDetection out;
  const std::vector<Point2i> pts = sobel_edges(img, p.sobel_threshold, p.max_edge_points);
  if (pts.empty()) return out;
  const std::vector<int> labels = dbscan(pts, p.dbscan_eps, p.dbscan_min_pts);

  int n_clusters = 0;
  for (int l : labels) n_clusters = std::max(n_clusters, l + 1);
  if (n_clusters == 0) return out;

  // Per cluster, accumulate centroid terms separately on each side of the
  // image midline (pixel center x + 0.5 against width/2).
  const double mid = img.width / 2.0;
  struct Side {
    double sum = 0.0;
    int n = 0;
  };
  std::vector<Side> left(static_cast<size_t>(n_clusters));
  std::vector<Side> right(static_cast<size_t>(n_clusters));
  for (size_t i = 0; i < pts.size(); ++i) {
    const int l = labels[i];
    if (l < 0) continue;
    const double cx = pts[i].x + 0.5;
    Side& s = cx < mid ? left[static_cast<size_t>(l)] : right[static_cast<size_t>(l)];
    s.sum += cx;
    s.n += 1;
  }

  bool have_l = false, have_r = false;
  double best_l = 0.0, best_r = 0.0;
  for (int c = 0; c < n_clusters; ++c) {
    const Side& sl = left[static_cast<size_t>(c)];
    if (sl.n > 0) {
      const double centroid = sl.sum / sl.n;
      if (!have_l || centroid > best_l) {
        best_l = centroid;
        have_l = true;
      }
    }
    const Side& sr = right[static_cast<size_t>(c)];
    if (sr.n > 0) {
      const double centroid = sr.sum / sr.n;
      if (!have_r || centroid < best_r) {
        best_r = centroid;
        have_r = true;
      }
    }
  }
  if (!have_l || !have_r) return out;
  out.ok = true;
  out.left_m = (best_l - mid) / p.px_per_m;
  out.right_m = (best_r - mid) / p.px_per_m;
  return out;
}

}  // namespace fisim
