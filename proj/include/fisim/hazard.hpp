#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fisim/config.hpp"
#include "fisim/world.hpp"

namespace fisim {

enum class HazardKind { H1, H2, H3 };

const char* to_string(HazardKind k);

struct HazardEvent {
  HazardKind kind;
  double t;
};

// Ground-truth hazard predicates. H1: safety distance violated. H2: stopped
// with no lead in range past the warmup. H3: lane departure.
bool check_h1(const WorldState& w, const HazardParams& p);
bool check_h2(const WorldState& w, const HazardParams& p);
bool check_h3(const WorldState& w, const HazardParams& p);

// First-occurrence registry; a run reports at most one event per kind.
class HazardMonitor {
 public:
  explicit HazardMonitor(const HazardParams& p) : p_(p) {}

  // Checks all predicates against this tick's ground truth.
  void update(const WorldState& w);

  const std::vector<HazardEvent>& events() const { return events_; }
  bool any() const { return !events_.empty(); }
  std::optional<double> first_time(HazardKind k) const;

 private:
  HazardParams p_;
  bool seen_[3] = {false, false, false};
  std::vector<HazardEvent> events_;
};

}  // namespace fisim
