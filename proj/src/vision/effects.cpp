#include "fisim/vision/effects.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "fisim/rng.hpp"
#include "fisim/units.hpp"

namespace fisim {

namespace {

inline uint8_t clamp_u8(int v) {
  return static_cast<uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
}

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

// Horizontal box filter with edge replication; window w, left offset lo.
void box_h(const Image& src, Image& dst, int w, int lo) {
  const int W = src.width, H = src.height;
  for (int y = 0; y < H; ++y) {
    const uint8_t* in = src.row(y);
    uint8_t* out = dst.row(y);
    int sum = 0;
    for (int k = -lo; k < w - lo; ++k) sum += in[clampi(k, 0, W - 1)];
    for (int x = 0; x < W; ++x) {
      out[x] = static_cast<uint8_t>((sum + w / 2) / w);
      sum += in[clampi(x + w - lo, 0, W - 1)] - in[clampi(x - lo, 0, W - 1)];
    }
  }
}

// Vertical box filter with edge replication.
void box_v(const Image& src, Image& dst, int w, int lo) {
  const int W = src.width, H = src.height;
  std::vector<int> sum(static_cast<size_t>(W), 0);
  for (int k = -lo; k < w - lo; ++k) {
    const uint8_t* in = src.row(clampi(k, 0, H - 1));
    for (int x = 0; x < W; ++x) sum[x] += in[x];
  }
  for (int y = 0; y < H; ++y) {
    uint8_t* out = dst.row(y);
    const uint8_t* add = src.row(clampi(y + w - lo, 0, H - 1));
    const uint8_t* sub = src.row(clampi(y - lo, 0, H - 1));
    for (int x = 0; x < W; ++x) {
      out[x] = static_cast<uint8_t>((sum[x] + w / 2) / w);
      sum[x] += add[x] - sub[x];
    }
  }
}

void box_blur(Image& img, Image& tmp, int w, int lo) {
  if (w <= 1) return;
  box_h(img, tmp, w, lo);
  box_v(tmp, img, w, lo);
}

// Three box widths whose composition approximates a Gaussian of the given
// sigma (standard box-triple construction).
std::array<int, 3> boxes_for_gauss(double sigma) {
  const int n = 3;
  double w_ideal = std::sqrt(12.0 * sigma * sigma / n + 1.0);
  int wl = static_cast<int>(std::floor(w_ideal));
  if (wl % 2 == 0) --wl;
  if (wl < 1) wl = 1;
  const int wu = wl + 2;
  const double m_ideal =
      (12.0 * sigma * sigma - n * wl * wl - 4.0 * n * wl - 3.0 * n) / (-4.0 * wl - 4.0);
  const int m = clampi(static_cast<int>(std::lround(m_ideal)), 0, n);
  std::array<int, 3> out{};
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = i < m ? wl : wu;
  return out;
}

// Separable odd-size binomial kernel; exact small-kernel Gaussian used by the
// Blur effect (sizes 3, 5, 7).
void binomial_blur(Image& img, int size) {
  static const int k3[] = {1, 2, 1};
  static const int k5[] = {1, 4, 6, 4, 1};
  static const int k7[] = {1, 6, 15, 20, 15, 6, 1};
  const int* k = size == 3 ? k3 : (size == 5 ? k5 : k7);
  const int norm = size == 3 ? 4 : (size == 5 ? 16 : 64);
  const int r = size / 2;
  const int W = img.width, H = img.height;
  Image tmp(W, H);
  for (int y = 0; y < H; ++y) {
    const uint8_t* in = img.row(y);
    uint8_t* out = tmp.row(y);
    for (int x = 0; x < W; ++x) {
      int acc = 0;
      for (int i = -r; i <= r; ++i) acc += k[i + r] * in[clampi(x + i, 0, W - 1)];
      out[x] = static_cast<uint8_t>((acc + norm / 2) / norm);
    }
  }
  for (int y = 0; y < H; ++y) {
    uint8_t* out = img.row(y);
    for (int x = 0; x < W; ++x) {
      int acc = 0;
      for (int i = -r; i <= r; ++i) acc += k[i + r] * tmp.at(x, clampi(y + i, 0, H - 1));
      out[x] = static_cast<uint8_t>((acc + norm / 2) / norm);
    }
  }
}

// Blends `layer_val` over the image using an 8-bit opacity mask.
void composite(Image& img, const Image& alpha, int layer_val) {
  const size_t n = img.size();
  for (size_t i = 0; i < n; ++i) {
    const int a = alpha.px[i];
    if (a == 0) continue;
    img.px[i] = static_cast<uint8_t>((img.px[i] * (255 - a) + layer_val * a + 127) / 255);
  }
}

void apply_gain(Image& img, double gain) {
  uint8_t lut[256];
  for (int i = 0; i < 256; ++i) lut[i] = clamp_u8(static_cast<int>(std::lround(i * gain)));
  for (auto& p : img.px) p = lut[p];
}

// Draws a line segment of max-combined opacity into an alpha mask.
void draw_streak(Image& alpha, double x0, double y0, double dx, double dy, int len,
                 uint8_t a) {
  double x = x0, y = y0;
  for (int i = 0; i < len; ++i) {
    const int xi = static_cast<int>(std::lround(x));
    const int yi = static_cast<int>(std::lround(y));
    if (xi >= 0 && xi < alpha.width && yi >= 0 && yi < alpha.height) {
      uint8_t& cell = alpha.at(xi, yi);
      if (a > cell) cell = a;
    }
    x += dx;
    y += dy;
  }
}

// Fog-style haze: darken the background, then add a low-frequency bright
// noise field. Shared by Fog and Snow.
void apply_haze(Image& img, int thickness, Rng& rng) {
  apply_gain(img, rng.uniform(0.4, 0.9));
  const double density = 0.03 * thickness;
  Image noise(img.width, img.height, 0);
  for (auto& p : noise.px) {
    if (rng.uniform01() < density) p = static_cast<uint8_t>(rng.uniform_u32(256));
  }
  const double sigma = rng.uniform(5.0, 7.0);
  Image tmp(img.width, img.height);
  for (int w : boxes_for_gauss(sigma)) box_blur(noise, tmp, w, (w - 1) / 2);
  for (size_t i = 0; i < img.size(); ++i)
    img.px[i] = clamp_u8(img.px[i] + noise.px[i] / 2);
}

void apply_rain(Image& img, const EffectParams& p, Rng& rng) {
  apply_gain(img, rng.uniform(0.65, 0.75));
  {
    const double sigma = rng.uniform(0.5, 1.5);
    Image tmp(img.width, img.height);
    for (int w : boxes_for_gauss(sigma)) box_blur(img, tmp, w, (w - 1) / 2);
  }
  const int count = 1000 * p.thickness;
  const double ang = deg_to_rad(p.rain_angle_deg);
  const double dx = std::cos(ang), dy = std::sin(ang);  // y grows downward
  Image alpha(img.width, img.height, 0);
  for (int i = 0; i < count; ++i) {
    const double x0 = rng.uniform(0.0, img.width);
    const double y0 = rng.uniform(0.0, img.height);
    const uint8_t a = static_cast<uint8_t>(std::lround(rng.uniform(0.1, 0.2) * 255.0));
    draw_streak(alpha, x0, y0, dx, dy, p.rain_streak_len, a);
  }
  motion_blur(alpha, 2, 45.0);
  composite(img, alpha, 255);
}

void apply_snow(Image& img, const EffectParams& p, Rng& rng) {
  apply_haze(img, p.thickness, rng);
  const int count = p.snow_block_rate * p.thickness;
  Image alpha(img.width, img.height, 0);
  for (int i = 0; i < count; ++i) {
    const int x = static_cast<int>(rng.uniform_u32(static_cast<uint32_t>(img.width)));
    const int y = static_cast<int>(rng.uniform_u32(static_cast<uint32_t>(img.height)));
    for (int dy2 = 0; dy2 < 2; ++dy2)
      for (int dx2 = 0; dx2 < 2; ++dx2)
        if (x + dx2 < img.width && y + dy2 < img.height) alpha.at(x + dx2, y + dy2) = 255;
  }
  {
    const double sigma = rng.uniform(0.5, 1.5);
    Image tmp(img.width, img.height);
    for (int w : boxes_for_gauss(sigma)) box_blur(alpha, tmp, w, (w - 1) / 2);
  }
  motion_blur(alpha, 5, 75.0);
  composite(img, alpha, 255);
}

void apply_occlusion(Image& img, const EffectParams& p, Rng& rng) {
  Image alpha(img.width, img.height, 0);
  for (int i = 0; i < p.blob_count; ++i) {
    const int cx = static_cast<int>(rng.uniform_u32(static_cast<uint32_t>(img.width)));
    const int cy = static_cast<int>(rng.uniform_u32(static_cast<uint32_t>(img.height)));
    const double r = rng.uniform(5.0, 50.0);
    const int ri = static_cast<int>(std::ceil(r));
    const double r2 = r * r;
    for (int y = clampi(cy - ri, 0, img.height - 1); y <= clampi(cy + ri, 0, img.height - 1); ++y) {
      for (int x = clampi(cx - ri, 0, img.width - 1); x <= clampi(cx + ri, 0, img.width - 1); ++x) {
        const double ddx = x - cx, ddy = y - cy;
        if (ddx * ddx + ddy * ddy <= r2) alpha.at(x, y) = 255;
      }
    }
  }
  Image tmp(img.width, img.height);
  for (int w : boxes_for_gauss(7.0)) box_blur(alpha, tmp, w, (w - 1) / 2);
  composite(img, alpha, 12);
}

void apply_blur_effect(Image& img, const EffectParams& p) {
  switch (p.blur_kind) {
    case BlurKind::Averaging:
      averaging_blur(img, p.blur_size);
      return;
    case BlurKind::Gaussian:
      binomial_blur(img, p.blur_size);
      return;
    case BlurKind::Median:
      median_blur(img, p.blur_size);
      return;
    case BlurKind::Auto:
      throw std::runtime_error("blur kernel not resolved before perturb");
  }
}

}  // namespace

const char* to_string(EffectKind k) {
  switch (k) {
    case EffectKind::Rain: return "rain";
    case EffectKind::Fog: return "fog";
    case EffectKind::Snow: return "snow";
    case EffectKind::Occlusion: return "occlusion";
    case EffectKind::Contrast: return "contrast";
    case EffectKind::Brightness: return "brightness";
    case EffectKind::Blur: return "blur";
  }
  return "?";
}

EffectKind effect_from_string(const char* s) {
  const std::string v(s);
  if (v == "rain") return EffectKind::Rain;
  if (v == "fog") return EffectKind::Fog;
  if (v == "snow") return EffectKind::Snow;
  if (v == "occlusion") return EffectKind::Occlusion;
  if (v == "contrast") return EffectKind::Contrast;
  if (v == "brightness") return EffectKind::Brightness;
  if (v == "blur") return EffectKind::Blur;
  throw std::runtime_error("unknown effect: " + v);
}

const char* to_string_kernel(BlurKind k) {
  switch (k) {
    case BlurKind::Auto: return "auto";
    case BlurKind::Averaging: return "averaging";
    case BlurKind::Gaussian: return "gaussian";
    case BlurKind::Median: return "median";
  }
  return "?";
}

BlurKind kernel_from_string(const std::string& s) {
  if (s == "auto") return BlurKind::Auto;
  if (s == "averaging") return BlurKind::Averaging;
  if (s == "gaussian") return BlurKind::Gaussian;
  if (s == "median") return BlurKind::Median;
  throw std::runtime_error("blur kernel must be auto|averaging|gaussian|median");
}

EffectParams resolve_blur(const EffectParams& p, Rng& rng) {
  if (p.effect != EffectKind::Blur || p.blur_kind != BlurKind::Auto) return p;
  // Supported kernels: averaging 3..6, Gaussian 3/5/7, median 3/5.
  static const std::pair<BlurKind, int> kChoices[] = {
      {BlurKind::Averaging, 3}, {BlurKind::Averaging, 4}, {BlurKind::Averaging, 5},
      {BlurKind::Averaging, 6}, {BlurKind::Gaussian, 3},  {BlurKind::Gaussian, 5},
      {BlurKind::Gaussian, 7},  {BlurKind::Median, 3},    {BlurKind::Median, 5}};
  EffectParams out = p;
  const auto& pick = kChoices[rng.uniform_u32(9)];
  out.blur_kind = pick.first;
  out.blur_size = pick.second;
  return out;
}

void gaussian_blur(Image& img, double sigma) {
  Image tmp(img.width, img.height);
  for (int w : boxes_for_gauss(sigma)) box_blur(img, tmp, w, (w - 1) / 2);
}

void motion_blur(Image& img, int len, double angle_deg) {
  if (len <= 1) return;
  const double ang = deg_to_rad(angle_deg);
  const double dx = std::cos(ang), dy = std::sin(ang);
  std::vector<std::pair<int, int>> offs;
  offs.reserve(static_cast<size_t>(len));
  for (int k = 0; k < len; ++k) {
    const double c = k - (len - 1) / 2;  // integer division keeps len=2 at {0,1}
    offs.emplace_back(static_cast<int>(std::lround(c * dx)),
                      static_cast<int>(std::lround(c * dy)));
  }
  const int W = img.width, H = img.height;
  Image src = img;
  for (int y = 0; y < H; ++y) {
    uint8_t* out = img.row(y);
    for (int x = 0; x < W; ++x) {
      int acc = 0;
      for (const auto& [ox, oy] : offs)
        acc += src.at(clampi(x + ox, 0, W - 1), clampi(y + oy, 0, H - 1));
      out[x] = static_cast<uint8_t>((acc + len / 2) / len);
    }
  }
}

void averaging_blur(Image& img, int size) {
  if (size <= 1) return;
  Image tmp(img.width, img.height);
  box_blur(img, tmp, size, (size - 1) / 2);
}

void median_blur(Image& img, int size) {
  const int r_lo = (size - 1) / 2, r_hi = size / 2;
  const int W = img.width, H = img.height;
  const int n = size * size;
  Image src = img;
  std::vector<uint8_t> window(static_cast<size_t>(n));
  for (int y = 0; y < H; ++y) {
    uint8_t* out = img.row(y);
    for (int x = 0; x < W; ++x) {
      int idx = 0;
      for (int oy = -r_lo; oy <= r_hi; ++oy) {
        const uint8_t* in = src.row(clampi(y + oy, 0, H - 1));
        for (int ox = -r_lo; ox <= r_hi; ++ox)
          window[static_cast<size_t>(idx++)] = in[clampi(x + ox, 0, W - 1)];
      }
      std::nth_element(window.begin(), window.begin() + n / 2, window.end());
      out[x] = window[static_cast<size_t>(n) / 2];
    }
  }
}

Image perturb(const Image& img, const EffectParams& params, uint64_t seed) {
  Image out = img;
  Rng rng(seed);
  switch (params.effect) {
    case EffectKind::Rain:
      if (params.thickness <= 0) return out;
      apply_rain(out, params, rng);
      break;
    case EffectKind::Fog:
      if (params.thickness <= 0) return out;
      apply_haze(out, params.thickness, rng);
      break;
    case EffectKind::Snow:
      if (params.thickness <= 0) return out;
      apply_snow(out, params, rng);
      break;
    case EffectKind::Occlusion:
      apply_occlusion(out, params, rng);
      break;
    case EffectKind::Contrast:
      apply_gain(out, rng.uniform(1.2, 3.0));
      break;
    case EffectKind::Brightness: {
      const int bias = static_cast<int>(std::lround(rng.uniform(10.0, 100.0)));
      for (auto& p : out.px) p = clamp_u8(p + bias);
      break;
    }
    case EffectKind::Blur:
      apply_blur_effect(out, params);
      break;
  }
  return out;
}

}  // namespace fisim
