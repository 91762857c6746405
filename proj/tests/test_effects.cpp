#include "fisim/vision/effects.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <set>
#include <stdexcept>
#include <utility>

#include "fisim/rng.hpp"
#include "fisim/vision/render.hpp"

namespace fisim {
namespace {

Image test_frame() { return render_scene(RenderParams{}, 0.1, 0.002); }

EffectParams effect_of(EffectKind k) {
  EffectParams p;
  p.effect = k;
  return p;
}

TEST(Perturb, PureInImageParamsSeed) {
  Image img = test_frame();
  for (EffectKind k : {EffectKind::Rain, EffectKind::Fog, EffectKind::Snow,
                       EffectKind::Occlusion, EffectKind::Contrast, EffectKind::Brightness}) {
    EffectParams p = effect_of(k);
    Image a = perturb(img, p, 777);
    Image b = perturb(img, p, 777);
    EXPECT_TRUE(a == b) << "effect " << to_string(k);
    // And the input is never modified in place.
    EXPECT_TRUE(img == test_frame()) << "effect " << to_string(k);
  }
}

TEST(Perturb, SeedChangesWeatherDraws) {
  Image img = test_frame();
  EffectParams p = effect_of(EffectKind::Rain);
  Image a = perturb(img, p, 1);
  Image b = perturb(img, p, 2);
  EXPECT_FALSE(a == b);
}

TEST(Perturb, ZeroThicknessWeatherIsIdentity) {
  Image img = test_frame();
  for (EffectKind k : {EffectKind::Rain, EffectKind::Fog, EffectKind::Snow}) {
    EffectParams p = effect_of(k);
    p.thickness = 0;
    EXPECT_TRUE(perturb(img, p, 5) == img) << "effect " << to_string(k);
  }
}

TEST(Perturb, WeatherActuallyPerturbs) {
  Image img = test_frame();
  for (EffectKind k : {EffectKind::Rain, EffectKind::Fog, EffectKind::Snow,
                       EffectKind::Contrast, EffectKind::Brightness}) {
    EffectParams p = effect_of(k);
    EXPECT_FALSE(perturb(img, p, 5) == img) << "effect " << to_string(k);
  }
}

TEST(Perturb, BrightnessOnlyRaisesAndClamps) {
  Image img = test_frame();
  EffectParams p = effect_of(EffectKind::Brightness);
  Image out = perturb(img, p, 9);
  int bias = -1;
  for (size_t i = 0; i < img.size(); ++i) {
    ASSERT_GE(out.px[i], img.px[i]);
    ASSERT_LE(out.px[i], 255);
    const int d = out.px[i] - img.px[i];
    if (out.px[i] < 255) {
      // Unclamped pixels all share one additive bias.
      if (bias < 0) bias = d;
      ASSERT_EQ(d, bias);
    }
  }
  EXPECT_GE(bias, 10);
  EXPECT_LE(bias, 100);
}

TEST(Perturb, ContrastIsMonotoneGain) {
  Image img = test_frame();
  Image out = perturb(img, effect_of(EffectKind::Contrast), 3);
  // Gain >= 1.2 maps the bright marker value to a strictly larger (or
  // saturated) value and preserves ordering between road and marker. The
  // frame is rendered at lat 0.1, so the bottom-row left marker sits at
  // column 320 - 100 * 1.95 = 125.
  ASSERT_GT(img.at(125, 479), img.at(0, 479));
  EXPECT_GT(out.at(125, 479), out.at(0, 479));
}

TEST(Blur, UniformImageIsFixedPoint) {
  // With edge replication every blur kernel averages a constant field.
  Image img(64, 48, 123);
  for (auto [kind, size] : {std::pair<BlurKind, int>{BlurKind::Averaging, 3},
                            {BlurKind::Averaging, 4},
                            {BlurKind::Averaging, 6},
                            {BlurKind::Gaussian, 3},
                            {BlurKind::Gaussian, 7},
                            {BlurKind::Median, 3},
                            {BlurKind::Median, 5}}) {
    EffectParams p = effect_of(EffectKind::Blur);
    p.blur_kind = kind;
    p.blur_size = size;
    EXPECT_TRUE(perturb(img, p, 0) == img)
        << to_string_kernel(kind) << " size " << size;
  }
}

TEST(Blur, MedianRemovesImpulseNoise) {
  Image img(32, 32, 100);
  img.at(16, 16) = 255;  // lone hot pixel
  EffectParams p = effect_of(EffectKind::Blur);
  p.blur_kind = BlurKind::Median;
  p.blur_size = 3;
  Image out = perturb(img, p, 0);
  EXPECT_EQ(out.at(16, 16), 100);
}

TEST(Blur, AveragingSpreadsEdges) {
  Image img(32, 1, 0);
  for (int x = 16; x < 32; ++x) img.at(x, 0) = 200;
  EffectParams p = effect_of(EffectKind::Blur);
  p.blur_kind = BlurKind::Averaging;
  p.blur_size = 3;
  Image out = perturb(img, p, 0);
  // One-third of the step leaks across the boundary, rounded.
  EXPECT_EQ(out.at(15, 0), 67);
  EXPECT_EQ(out.at(16, 0), 133);
  EXPECT_EQ(out.at(0, 0), 0);
  EXPECT_EQ(out.at(31, 0), 200);
}

TEST(Blur, UnresolvedAutoKernelThrows) {
  EffectParams p = effect_of(EffectKind::Blur);
  ASSERT_EQ(p.blur_kind, BlurKind::Auto);
  Image img = test_frame();
  EXPECT_THROW(perturb(img, p, 0), std::runtime_error);
}

TEST(ResolveBlur, AlwaysYieldsSupportedKernel) {
  Rng rng(505);
  std::set<std::pair<BlurKind, int>> seen;
  for (int i = 0; i < 500; ++i) {
    EffectParams p = effect_of(EffectKind::Blur);
    EffectParams r = resolve_blur(p, rng);
    ASSERT_NE(r.blur_kind, BlurKind::Auto);
    const bool supported =
        (r.blur_kind == BlurKind::Averaging && r.blur_size >= 3 && r.blur_size <= 6) ||
        (r.blur_kind == BlurKind::Gaussian &&
         (r.blur_size == 3 || r.blur_size == 5 || r.blur_size == 7)) ||
        (r.blur_kind == BlurKind::Median && (r.blur_size == 3 || r.blur_size == 5));
    ASSERT_TRUE(supported) << to_string_kernel(r.blur_kind) << " " << r.blur_size;
    seen.insert({r.blur_kind, r.blur_size});
  }
  // All nine supported kernels get drawn over 500 resolutions.
  EXPECT_EQ(seen.size(), 9u);
}

TEST(ResolveBlur, NonBlurAndConcreteKernelsPassThrough) {
  Rng rng(1);
  EffectParams rain = effect_of(EffectKind::Rain);
  EffectParams r = resolve_blur(rain, rng);
  EXPECT_EQ(r.effect, EffectKind::Rain);
  EXPECT_EQ(r.blur_kind, BlurKind::Auto);  // untouched; rain never blurs by kernel

  EffectParams fixed = effect_of(EffectKind::Blur);
  fixed.blur_kind = BlurKind::Gaussian;
  fixed.blur_size = 5;
  EffectParams f = resolve_blur(fixed, rng);
  EXPECT_EQ(f.blur_kind, BlurKind::Gaussian);
  EXPECT_EQ(f.blur_size, 5);
}

TEST(EffectNames, RoundTrip) {
  for (EffectKind k : {EffectKind::Rain, EffectKind::Fog, EffectKind::Snow,
                       EffectKind::Occlusion, EffectKind::Contrast, EffectKind::Brightness,
                       EffectKind::Blur}) {
    EXPECT_EQ(effect_from_string(to_string(k)), k);
  }
  EXPECT_THROW(effect_from_string("hail"), std::runtime_error);
  for (BlurKind k : {BlurKind::Auto, BlurKind::Averaging, BlurKind::Gaussian, BlurKind::Median}) {
    EXPECT_EQ(kernel_from_string(to_string_kernel(k)), k);
  }
  EXPECT_THROW(kernel_from_string("box"), std::runtime_error);
}

TEST(MotionBlur, ShortLengthIsIdentity) {
  Image img = test_frame();
  Image copy = img;
  motion_blur(copy, 1, 45.0);
  EXPECT_TRUE(copy == img);
}

}  // namespace
}  // namespace fisim
