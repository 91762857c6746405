#include "fisim/rng.hpp"

#include <cmath>

namespace fisim {

double Rng::gaussian(double mean, double sigma) {
  // Box-Muller with a cached spare so consecutive draws stay cheap.
  if (has_spare_) {
    has_spare_ = false;
    return mean + sigma * spare_;
  }
  double u1 = uniform01();
  double u2 = uniform01();
  // Guard the log against u1 == 0.
  while (u1 <= 0.0) u1 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * 3.14159265358979323846 * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return mean + sigma * r * std::cos(theta);
}

uint64_t mix_seed(uint64_t parent, uint64_t stream) {
  // One SplitMix64 scramble over a combination of parent and stream index.
  uint64_t z = parent ^ (stream * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace fisim
