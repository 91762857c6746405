#include "fisim/vision/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace fisim {

namespace {

// Fills one marker's pixels on a row. A pixel belongs to the marker when its
// center x+0.5 lies in [center - w/2, center + w/2).
inline void draw_marker_row(uint8_t* row, int width, double center, int marker_w,
                            uint8_t val) {
  const double lo = center - marker_w / 2.0;
  const double hi = center + marker_w / 2.0;
  int x0 = static_cast<int>(std::ceil(lo - 0.5));
  int x1 = static_cast<int>(std::ceil(hi - 0.5)) - 1;
  x0 = std::max(x0, 0);
  x1 = std::min(x1, width - 1);
  for (int x = x0; x <= x1; ++x) row[x] = val;
}

}  // namespace

void render_scene(const RenderParams& p, double lat_offset, double heading, Image& out) {
  if (out.width != p.width || out.height != p.height) out = Image(p.width, p.height);
  std::memset(out.px.data(), static_cast<int>(p.road_intensity), out.px.size());

  const double mid = p.width / 2.0;
  const double left_m = -p.lane_half_width - lat_offset;
  const double right_m = p.lane_half_width - lat_offset;
  const double sin_h = std::sin(heading);
  const double depth_per_row = 2.0 * p.preview / (p.height - 1);
  const uint8_t val = static_cast<uint8_t>(p.marker_intensity);

  for (int y = 0; y < p.height; ++y) {
    const double depth = (p.height - 1 - y) * depth_per_row;
    const double shear = p.px_per_m * depth * sin_h;
    uint8_t* row = out.row(y);
    draw_marker_row(row, p.width, mid + p.px_per_m * left_m + shear, p.marker_width_px, val);
    draw_marker_row(row, p.width, mid + p.px_per_m * right_m + shear, p.marker_width_px, val);
  }
}

Image render_scene(const RenderParams& p, double lat_offset, double heading) {
  Image out;
  render_scene(p, lat_offset, heading, out);
  return out;
}

Image translate_image(const Image& img, double delta_m, double px_per_m) {
  const int shift = static_cast<int>(std::lround(px_per_m * delta_m));
  Image out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    const uint8_t* in = img.row(y);
    uint8_t* o = out.row(y);
    for (int x = 0; x < img.width; ++x) {
      const int sx = std::clamp(x - shift, 0, img.width - 1);
      o[x] = in[sx];
    }
  }
  return out;
}

}  // namespace fisim
