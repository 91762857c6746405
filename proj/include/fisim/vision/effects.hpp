#pragma once

#include <cstdint>
#include <string>

#include "fisim/vision/image.hpp"

namespace fisim {

class Rng;

enum class EffectKind { Rain, Fog, Snow, Occlusion, Contrast, Brightness, Blur };

// Blur kernel family. Auto is resolved to a concrete (kind, size) draw before
// a run starts so the whole run uses one kernel.
enum class BlurKind { Auto, Averaging, Gaussian, Median };

struct EffectParams {
  EffectKind effect = EffectKind::Rain;
  int thickness = 10;        // Rain/Fog/Snow density, 0..10 (0 = identity)
  int blob_count = 6;        // Occlusion disc count
  BlurKind blur_kind = BlurKind::Auto;
  int blur_size = 0;         // valid: Averaging 3..6, Gaussian {3,5,7}, Median {3,5}
  double rain_angle_deg = 75.0;   // streak angle from horizontal
  int rain_streak_len = 20;       // px
  int snow_block_rate = 400;      // 2x2 blocks per thickness unit
};

const char* to_string(EffectKind k);
EffectKind effect_from_string(const char* s);
const char* to_string_kernel(BlurKind k);
BlurKind kernel_from_string(const std::string& s);

// Replaces an Auto blur request with a concrete kernel drawn from the
// supported set; other effects pass through unchanged.
EffectParams resolve_blur(const EffectParams& p, Rng& rng);

// Applies one environmental effect. Pure: identical (img, params, seed) give
// a bit-identical result. Rain/Fog/Snow at thickness 0 are the identity.
Image perturb(const Image& img, const EffectParams& params, uint64_t seed);

// Shared raster helpers, exposed for tests.
void gaussian_blur(Image& img, double sigma);
void motion_blur(Image& img, int len, double angle_deg);
void averaging_blur(Image& img, int size);
void median_blur(Image& img, int size);

}  // namespace fisim
