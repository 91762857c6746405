#pragma once

#include "fisim/vision/image.hpp"

namespace fisim {

struct RenderParams {
  int width = 640;
  int height = 480;
  double px_per_m = 100.0;
  int road_intensity = 40;
  int marker_intensity = 220;
  int marker_width_px = 8;
  double lane_half_width = 1.85;  // m
  double preview = 20.0;          // m; rows span depth [0, 2*preview], mean = preview
};

// Top-down style view: uniform road, two bright markers at columns mapped
// from (-/+ lane_half_width - lat_offset) at 100 px/m. Heading shears marker
// columns linearly with row depth (bottom row = depth 0). Deterministic.
void render_scene(const RenderParams& p, double lat_offset, double heading, Image& out);
Image render_scene(const RenderParams& p, double lat_offset, double heading);

// Horizontal shift by round(px_per_m * delta_m) columns (positive moves
// content toward +x); vacated columns replicate the edge.
Image translate_image(const Image& img, double delta_m, double px_per_m);

}  // namespace fisim
