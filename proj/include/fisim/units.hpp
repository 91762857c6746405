#pragma once

namespace fisim {

inline constexpr double kMphToMps = 0.44704;
inline constexpr double kPi = 3.14159265358979323846;

constexpr double mph_to_mps(double mph) { return mph * kMphToMps; }
constexpr double mps_to_mph(double mps) { return mps / kMphToMps; }
constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace fisim
