#include "fisim/vision/dbscan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>

namespace fisim {

namespace {

// Uniform grid with cell size eps; all neighbors of a point lie in its 3x3
// cell block. Points are copied into cell-sorted order (stable, so points in
// a cell keep ascending input order) and neighbor scans run over contiguous
// slots; labels are mapped back to input order at the end. Enumeration order
// equals (cell block scan, input order within cell), which makes border-point
// assignment deterministic.
struct Grid {
  double eps;
  int min_x = 0, min_y = 0, cols = 0, rows = 0;
  std::vector<int> starts;    // CSR offsets per cell
  std::vector<int> to_input;  // slot -> input index
  std::vector<int> xs, ys;    // coordinates in slot order

  Grid(const std::vector<Point2i>& pts, double eps_in) : eps(eps_in) {
    int max_x = 0, max_y = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
      if (i == 0) {
        min_x = max_x = pts[i].x;
        min_y = max_y = pts[i].y;
      } else {
        min_x = std::min(min_x, pts[i].x);
        max_x = std::max(max_x, pts[i].x);
        min_y = std::min(min_y, pts[i].y);
        max_y = std::max(max_y, pts[i].y);
      }
    }
    cols = static_cast<int>((max_x - min_x) / eps) + 1;
    rows = static_cast<int>((max_y - min_y) / eps) + 1;
    starts.assign(static_cast<size_t>(cols) * rows + 1, 0);
    for (const auto& p : pts) ++starts[static_cast<size_t>(cell_of(p)) + 1];
    for (size_t i = 1; i < starts.size(); ++i) starts[i] += starts[i - 1];
    to_input.resize(pts.size());
    xs.resize(pts.size());
    ys.resize(pts.size());
    std::vector<int> cursor(starts.begin(), starts.end() - 1);
    for (size_t i = 0; i < pts.size(); ++i) {
      const size_t slot =
          static_cast<size_t>(cursor[static_cast<size_t>(cell_of(pts[i]))]++);
      to_input[slot] = static_cast<int>(i);
      xs[slot] = pts[i].x;
      ys[slot] = pts[i].y;
    }
  }

  int cell_of(const Point2i& p) const {
    const int cx = static_cast<int>((p.x - min_x) / eps);
    const int cy = static_cast<int>((p.y - min_y) / eps);
    return cy * cols + cx;
  }
};

}  // namespace

std::vector<int> dbscan(const std::vector<Point2i>& pts, double eps, int min_pts) {
  const int n = static_cast<int>(pts.size());
  if (n == 0) return {};
  const Grid grid(pts, eps);
  // Integral point coordinates make the squared radius usable as an integer.
  const int eps2 = static_cast<int>(std::floor(eps * eps));

  // Adjacency (slot indices) is memoized during the core pass so the
  // expansion below never re-tests a pair.
  std::vector<int> adj_start(static_cast<size_t>(n) + 1, 0);
  std::vector<int> adj;
  adj.reserve(static_cast<size_t>(n) * 16);
  std::vector<uint8_t> core(static_cast<size_t>(n), 0);
  for (int s = 0; s < n; ++s) {
    adj_start[static_cast<size_t>(s)] = static_cast<int>(adj.size());
    const int px = grid.xs[static_cast<size_t>(s)];
    const int py = grid.ys[static_cast<size_t>(s)];
    const int cx = static_cast<int>((px - grid.min_x) / grid.eps);
    const int cy = static_cast<int>((py - grid.min_y) / grid.eps);
    for (int gy = std::max(0, cy - 1); gy <= std::min(grid.rows - 1, cy + 1); ++gy) {
      for (int gx = std::max(0, cx - 1); gx <= std::min(grid.cols - 1, cx + 1); ++gx) {
        const size_t cell = static_cast<size_t>(gy) * grid.cols + gx;
        const int end = grid.starts[cell + 1];
        for (int t = grid.starts[cell]; t < end; ++t) {
          const int dx = grid.xs[static_cast<size_t>(t)] - px;
          const int dy = grid.ys[static_cast<size_t>(t)] - py;
          if (dx * dx + dy * dy <= eps2) adj.push_back(t);
        }
      }
    }
    const int count = static_cast<int>(adj.size()) - adj_start[static_cast<size_t>(s)];
    core[static_cast<size_t>(s)] = count >= min_pts ? 1 : 0;
  }
  adj_start[static_cast<size_t>(n)] = static_cast<int>(adj.size());

  // Seeds are visited in input order; discovery order fixes cluster ids.
  std::vector<int> slot_of(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) slot_of[static_cast<size_t>(grid.to_input[static_cast<size_t>(s)])] = s;

  constexpr int kUnvisited = -2;
  std::vector<int> label(static_cast<size_t>(n), kUnvisited);  // by slot
  int next_cluster = 0;
  std::deque<int> queue;
  for (int i = 0; i < n; ++i) {
    const int seed = slot_of[static_cast<size_t>(i)];
    if (label[static_cast<size_t>(seed)] != kUnvisited || !core[static_cast<size_t>(seed)])
      continue;
    const int cid = next_cluster++;
    label[static_cast<size_t>(seed)] = cid;
    queue.clear();
    queue.push_back(seed);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int k = adj_start[static_cast<size_t>(u)];
           k < adj_start[static_cast<size_t>(u) + 1]; ++k) {
        const int v = adj[static_cast<size_t>(k)];
        int& lv = label[static_cast<size_t>(v)];
        if (lv == kUnvisited) {
          lv = cid;
          if (core[static_cast<size_t>(v)]) queue.push_back(v);
        }
      }
    }
  }

  std::vector<int> out(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s)
    out[static_cast<size_t>(grid.to_input[static_cast<size_t>(s)])] =
        label[static_cast<size_t>(s)] == kUnvisited ? kDbscanNoise
                                                    : label[static_cast<size_t>(s)];
  return out;
}

}  // namespace fisim
