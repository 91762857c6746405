#include "fisim/hazard.hpp"

#include <cmath>

namespace fisim {

const char* to_string(HazardKind k) {
  switch (k) {
    case HazardKind::H1: return "H1";
    case HazardKind::H2: return "H2";
    case HazardKind::H3: return "H3";
  }
  return "?";
}

bool check_h1(const WorldState& w, const HazardParams& p) {
  return w.lead_present && w.d_rel() <= p.d_min;
}

bool check_h2(const WorldState& w, const HazardParams& p) {
  if (w.t <= p.warmup) return false;
  if (w.host_speed >= p.v_stop) return false;
  return !w.lead_present || w.d_rel() > p.d_far;
}

bool check_h3(const WorldState& w, const HazardParams& p) {
  return std::abs(w.lat_offset) > p.lane_half_width - p.vehicle_half_width;
}

void HazardMonitor::update(const WorldState& w) {
  const bool hits[3] = {check_h1(w, p_), check_h2(w, p_), check_h3(w, p_)};
  static const HazardKind kinds[3] = {HazardKind::H1, HazardKind::H2, HazardKind::H3};
  for (int i = 0; i < 3; ++i) {
    if (hits[i] && !seen_[i]) {
      seen_[i] = true;
      events_.push_back({kinds[i], w.t});
    }
  }
}

std::optional<double> HazardMonitor::first_time(HazardKind k) const {
  for (const auto& e : events_)
    if (e.kind == k) return e.t;
  return std::nullopt;
}

}  // namespace fisim
