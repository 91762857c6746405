#include "fisim/sensors.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace fisim {
namespace {

WorldState centered_state() {
  WorldState w;
  w.host_speed = 20.0;
  w.lead_present = true;
  w.lead_pos = 40.0;
  w.lead_speed = 15.0;
  return w;
}

TEST(SenseRadar, ExactWithoutNoise) {
  WorldState w = centered_state();
  RadarReading r = sense_radar(w, 0.0, 0.0, nullptr);
  EXPECT_TRUE(r.valid);
  ASSERT_EQ(r.track_count, 1);
  EXPECT_DOUBLE_EQ(r.tracks[0].d_rel, 40.0);
  EXPECT_DOUBLE_EQ(r.tracks[0].v_rel, -5.0);
}

TEST(SenseRadar, NoLeadNoTracks) {
  WorldState w = centered_state();
  w.lead_present = false;
  RadarReading r = sense_radar(w, 0.0, 0.0, nullptr);
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.track_count, 0);
  EXPECT_EQ(r.nearest(), nullptr);
}

TEST(RadarReading, NearestPrefersCloserTrack) {
  RadarReading r;
  r.push({40.0, -5.0});
  r.push({10.0, -3.0});
  ASSERT_NE(r.nearest(), nullptr);
  EXPECT_DOUBLE_EQ(r.nearest()->d_rel, 10.0);
  // Ties resolve to the first-pushed track.
  RadarReading tie;
  tie.push({10.0, -1.0});
  tie.push({10.0, -9.0});
  EXPECT_DOUBLE_EQ(tie.nearest()->v_rel, -1.0);
}

TEST(RadarReading, PushCapsAtTwoTracks) {
  RadarReading r;
  r.push({1.0, 0.0});
  r.push({2.0, 0.0});
  r.push({3.0, 0.0});
  EXPECT_EQ(r.track_count, 2);
}

TEST(SenseVisionAnalytic, CenteredMarkers) {
  WorldState w = centered_state();
  VisionReading v = sense_vision_analytic(w, 20.0);
  EXPECT_TRUE(v.valid);
  EXPECT_DOUBLE_EQ(v.left_lane_x, -1.85);
  EXPECT_DOUBLE_EQ(v.right_lane_x, 1.85);
}

TEST(SenseVisionAnalytic, LateralOffsetShiftsMarkers) {
  WorldState w = centered_state();
  w.lat_offset = 0.5;  // host right of center: left marker further left in view
  VisionReading v = sense_vision_analytic(w, 20.0);
  EXPECT_DOUBLE_EQ(v.left_lane_x, -2.35);
  EXPECT_DOUBLE_EQ(v.right_lane_x, 1.35);
}

TEST(SenseVisionAnalytic, HeadingShiftsBothMarkersAtPreview) {
  WorldState w = centered_state();
  w.heading = 0.02;
  VisionReading v = sense_vision_analytic(w, 20.0);
  const double shift = 20.0 * std::sin(0.02);
  EXPECT_DOUBLE_EQ(v.left_lane_x, -1.85 + shift);
  EXPECT_DOUBLE_EQ(v.right_lane_x, 1.85 + shift);
}

TEST(SenseCar, ReportsStateAndSetpoint) {
  WorldState w = centered_state();
  w.steer_angle = 0.1;
  CarReading c = sense_car(w, 26.8224);
  EXPECT_DOUBLE_EQ(c.speed, 20.0);
  EXPECT_DOUBLE_EQ(c.steer_angle, 0.1);
  EXPECT_DOUBLE_EQ(c.cruise_set, 26.8224);
}

TEST(SensorRig, TicksPerVisionFromRates) {
  SimConfig cfg = default_config();
  SensorRig rig(cfg, VisionMode::Analytic, 1);
  // 100 Hz loop, 20 Hz vision.
  EXPECT_EQ(rig.ticks_per_vision(), 5);
  EXPECT_TRUE(rig.is_vision_tick(0));
  EXPECT_FALSE(rig.is_vision_tick(1));
  EXPECT_FALSE(rig.is_vision_tick(4));
  EXPECT_TRUE(rig.is_vision_tick(5));
}

TEST(SensorRig, VisionHeldBetweenVisionTicks) {
  SimConfig cfg = default_config();
  SensorRig rig(cfg, VisionMode::Analytic, 1);
  WorldState w = centered_state();

  SensorFrame f0 = rig.sense(w, 0, nullptr, 0);
  EXPECT_DOUBLE_EQ(f0.vision.left_lane_x, -1.85);

  // The world moves but ticks 1..4 must replay the tick-0 vision reading.
  w.lat_offset = 0.5;
  for (int tick = 1; tick < 5; ++tick) {
    SensorFrame f = rig.sense(w, tick, nullptr, 0);
    EXPECT_DOUBLE_EQ(f.vision.left_lane_x, -1.85) << "tick " << tick;
    // Radar and car still run at the control rate.
    EXPECT_DOUBLE_EQ(f.car.speed, w.host_speed);
  }
  SensorFrame f5 = rig.sense(w, 5, nullptr, 0);
  EXPECT_DOUBLE_EQ(f5.vision.left_lane_x, -2.35);
}

TEST(SensorRig, NoiselessRigsBitIdentical) {
  SimConfig cfg = default_config();
  SensorRig a(cfg, VisionMode::Analytic, 1);
  SensorRig b(cfg, VisionMode::Analytic, 2);  // different seed, zero sigma
  WorldState w = centered_state();
  for (int tick = 0; tick < 20; ++tick) {
    SensorFrame fa = a.sense(w, tick, nullptr, 0);
    SensorFrame fb = b.sense(w, tick, nullptr, 0);
    EXPECT_EQ(fa.radar.tracks[0].d_rel, fb.radar.tracks[0].d_rel);
    EXPECT_EQ(fa.vision.left_lane_x, fb.vision.left_lane_x);
    EXPECT_EQ(fa.vision.right_lane_x, fb.vision.right_lane_x);
    w.host_pos += 0.2;
    w.lead_pos += 0.15;
  }
}

TEST(SensorRig, RadarNoiseSeedDeterministic) {
  SimConfig cfg = default_config();
  cfg.sensors.radar_sigma_d = 0.5;
  cfg.sensors.radar_sigma_v = 0.2;
  SensorRig a(cfg, VisionMode::Analytic, 77);
  SensorRig b(cfg, VisionMode::Analytic, 77);
  SensorRig c(cfg, VisionMode::Analytic, 78);
  WorldState w = centered_state();
  bool any_diff = false;
  for (int tick = 0; tick < 10; ++tick) {
    SensorFrame fa = a.sense(w, tick, nullptr, 0);
    SensorFrame fb = b.sense(w, tick, nullptr, 0);
    SensorFrame fc = c.sense(w, tick, nullptr, 0);
    ASSERT_EQ(fa.radar.tracks[0].d_rel, fb.radar.tracks[0].d_rel);
    ASSERT_EQ(fa.radar.tracks[0].v_rel, fb.radar.tracks[0].v_rel);
    if (fa.radar.tracks[0].d_rel != fc.radar.tracks[0].d_rel) any_diff = true;
  }
  EXPECT_TRUE(any_diff);
}

TEST(SensorRig, PipelineMatchesAnalyticOnCleanFrames) {
  SimConfig cfg = default_config();
  SensorRig rig(cfg, VisionMode::Pipeline, 1);
  WorldState w = centered_state();
  for (double lat : {0.0, 0.3, -0.4}) {
    w.lat_offset = lat;
    VisionReading truth = sense_vision_analytic(w, cfg.sensors.preview);
    SensorFrame f = rig.sense(w, 0, nullptr, 0);
    ASSERT_TRUE(f.vision.valid) << "lat " << lat;
    // Rendered-and-detected markers within one pixel worth of the projection.
    EXPECT_NEAR(f.vision.left_lane_x, truth.left_lane_x, 0.1) << "lat " << lat;
    EXPECT_NEAR(f.vision.right_lane_x, truth.right_lane_x, 0.1) << "lat " << lat;
  }
}

}  // namespace
}  // namespace fisim
