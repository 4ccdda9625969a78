#pragma once

#include <vector>

#include "leobf/config.hpp"
#include "leobf/types.hpp"

namespace leobf {

// Orthonormal triad of a satellite panel: z points to the Earth core,
// x is normal to the (approximate) orbital plane, y completes the frame.
// The array elements lie in the local XY-plane.
struct PanelFrame {
  Vec3 x, y, z;
};

struct Scenario {
  std::vector<Vec3> sat_positions;  // ECEF, m
  std::vector<PanelFrame> sat_frames;
  std::vector<Vec3> ut_positions;   // on the Earth sphere, m
  uint64_t rng_seed = 0;
};

// Angle-of-departure in the panel frame. Elevation is measured from the
// panel plane, so boresight (straight toward the Earth core) is pi/2;
// the steering phases use cos(az)cos(el) and sin(az)cos(el) direction
// cosines directly.
struct LinkGeometry {
  double distance_m = 0;
  double elevation_rad = 0;      // ground elevation of the satellite at the UT
  double aod_azimuth_rad = 0;
  double aod_elevation_rad = 0;  // from the panel plane
};

// UTs area-uniform on the service spherical cap, satellites area-uniform on
// the parallel cap at orbit height; deterministic given cfg.rng_seed.
Scenario generate_scenario(const SystemConfig& cfg);

LinkGeometry link_geometry(const Scenario& scn, int s, int u);

}  // namespace leobf
