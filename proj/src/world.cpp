#include "fisim/world.hpp"

#include <stdexcept>

namespace fisim {

const char* to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::S1: return "S1";
    case ScenarioId::S2: return "S2";
    case ScenarioId::S3: return "S3";
    case ScenarioId::S4: return "S4";
    case ScenarioId::S5: return "S5";
  }
  return "S?";
}

ScenarioId scenario_from_string(const std::string& s) {
  if (s == "S1") return ScenarioId::S1;
  if (s == "S2") return ScenarioId::S2;
  if (s == "S3") return ScenarioId::S3;
  if (s == "S4") return ScenarioId::S4;
  if (s == "S5") return ScenarioId::S5;
  throw std::runtime_error("unknown scenario id: " + s);
}

}  // namespace fisim
