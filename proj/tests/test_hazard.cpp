#include "fisim/hazard.hpp"

#include <gtest/gtest.h>

namespace fisim {
namespace {

HazardParams params() { return HazardParams{}; }

WorldState driving_state() {
  WorldState w;
  w.t = 5.0;
  w.host_speed = 20.0;
  w.lead_present = true;
  w.lead_pos = 40.0;
  w.lead_speed = 15.0;
  return w;
}

TEST(CheckH1, SafetyDistanceBoundary) {
  WorldState w = driving_state();
  w.host_pos = 0.0;
  w.lead_pos = 2.01;
  EXPECT_FALSE(check_h1(w, params()));
  w.lead_pos = 2.0;  // d_rel == d_min counts as violated
  EXPECT_TRUE(check_h1(w, params()));
  w.lead_pos = 0.5;
  EXPECT_TRUE(check_h1(w, params()));
}

TEST(CheckH1, RequiresLead) {
  WorldState w = driving_state();
  w.lead_present = false;
  w.lead_pos = 1.0;
  EXPECT_FALSE(check_h1(w, params()));
}

TEST(CheckH2, StoppedWithoutLeadInRange) {
  WorldState w = driving_state();
  w.host_speed = 0.0;
  w.lead_present = false;
  EXPECT_TRUE(check_h2(w, params()));
}

TEST(CheckH2, WarmupSuppresses) {
  WorldState w = driving_state();
  w.host_speed = 0.0;
  w.lead_present = false;
  w.t = 1.0;  // t <= warmup
  EXPECT_FALSE(check_h2(w, params()));
  w.t = 1.01;
  EXPECT_TRUE(check_h2(w, params()));
}

TEST(CheckH2, NearbyLeadJustifiesStop) {
  WorldState w = driving_state();
  w.host_speed = 0.0;
  w.lead_pos = 50.0;  // stopping 50 m behind traffic is intended behavior
  EXPECT_FALSE(check_h2(w, params()));
  w.lead_pos = 100.0;  // exactly at d_far still counts as in range
  EXPECT_FALSE(check_h2(w, params()));
  w.lead_pos = 101.0;  // lead too far to explain the stop
  EXPECT_TRUE(check_h2(w, params()));
}

TEST(CheckH2, MovingHostNeverStopped) {
  WorldState w = driving_state();
  w.lead_present = false;
  w.host_speed = 0.5;  // at v_stop: not stopped
  EXPECT_FALSE(check_h2(w, params()));
  w.host_speed = 0.49;
  EXPECT_TRUE(check_h2(w, params()));
}

TEST(CheckH3, LaneDepartureSymmetricBoundary) {
  // Departure when |lat| exceeds lane_half_width - vehicle_half_width = 0.95.
  WorldState w = driving_state();
  w.lat_offset = 0.95;
  EXPECT_FALSE(check_h3(w, params()));
  w.lat_offset = 0.951;
  EXPECT_TRUE(check_h3(w, params()));
  w.lat_offset = -0.95;
  EXPECT_FALSE(check_h3(w, params()));
  w.lat_offset = -0.951;
  EXPECT_TRUE(check_h3(w, params()));
}

TEST(HazardMonitor, RecordsFirstOccurrencePerKind) {
  HazardMonitor m(params());
  WorldState w = driving_state();
  w.lat_offset = 1.2;
  w.t = 3.0;
  m.update(w);
  w.t = 3.01;
  m.update(w);  // still departed: no second event
  w.lat_offset = 0.0;
  w.lead_pos = w.host_pos + 1.0;
  w.t = 3.02;
  m.update(w);  // now H1

  ASSERT_EQ(m.events().size(), 2u);
  EXPECT_EQ(m.events()[0].kind, HazardKind::H3);
  EXPECT_DOUBLE_EQ(m.events()[0].t, 3.0);
  EXPECT_EQ(m.events()[1].kind, HazardKind::H1);
  EXPECT_DOUBLE_EQ(m.events()[1].t, 3.02);
  EXPECT_TRUE(m.any());
  EXPECT_DOUBLE_EQ(*m.first_time(HazardKind::H3), 3.0);
  EXPECT_DOUBLE_EQ(*m.first_time(HazardKind::H1), 3.02);
  EXPECT_FALSE(m.first_time(HazardKind::H2).has_value());
}

TEST(HazardMonitor, CleanRunStaysEmpty) {
  HazardMonitor m(params());
  WorldState w = driving_state();
  for (int i = 0; i < 100; ++i) {
    w.t = i * 0.01;
    m.update(w);
  }
  EXPECT_FALSE(m.any());
  EXPECT_TRUE(m.events().empty());
}

TEST(HazardKindNames, Stable) {
  EXPECT_STREQ(to_string(HazardKind::H1), "H1");
  EXPECT_STREQ(to_string(HazardKind::H2), "H2");
  EXPECT_STREQ(to_string(HazardKind::H3), "H3");
}

}  // namespace
}  // namespace fisim
