#include "leobf/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "leobf/rng.hpp"

namespace leobf {

namespace {

// Area-uniform point on the spherical cap of central angle `cap_angle`
// around +z: cos(theta) uniform in [cos(cap_angle), 1], azimuth uniform.
Vec3 sample_cap(Rng& rng, double radius, double cap_angle) {
  const double cos_theta = rng.uniform(std::cos(cap_angle), 1.0);
  const double az = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  return radius * Vec3(sin_theta * std::cos(az), sin_theta * std::sin(az), cos_theta);
}

PanelFrame frame_for(const Vec3& sat_pos) {
  PanelFrame f;
  f.z = -sat_pos.normalized();
  // Orbital plane approximated by the plane through the satellite, the
  // constellation-cap center (+z axis) and the Earth core.
  const Vec3 axis(0.0, 0.0, 1.0);
  Vec3 n = sat_pos.cross(axis);
  if (n.norm() < 1e-9 * sat_pos.norm()) {
    n = Vec3(1.0, 0.0, 0.0);  // satellite on the cap axis: plane degenerate
  }
  f.x = n.normalized();
  f.y = f.z.cross(f.x);
  return f;
}

}  // namespace

Scenario generate_scenario(const SystemConfig& cfg) {
  cfg.validate();
  Scenario scn;
  scn.rng_seed = cfg.rng_seed;

  const double ut_cap = cfg.service_area_radius_m / cfg.earth_radius_m;
  scn.ut_positions.reserve(cfg.num_uts);
  for (int u = 0; u < cfg.num_uts; ++u) {
    Rng rng = Rng::stream(cfg.rng_seed, "geometry.ut", u);
    scn.ut_positions.push_back(sample_cap(rng, cfg.earth_radius_m, ut_cap));
  }

  const double orbit_radius = cfg.earth_radius_m + cfg.orbit_height_m;
  const double sat_cap = cfg.sat_area_radius_m / orbit_radius;
  scn.sat_positions.reserve(cfg.num_sats);
  scn.sat_frames.reserve(cfg.num_sats);
  for (int s = 0; s < cfg.num_sats; ++s) {
    Rng rng = Rng::stream(cfg.rng_seed, "geometry.sat", s);
    const Vec3 p = sample_cap(rng, orbit_radius, sat_cap);
    scn.sat_positions.push_back(p);
    scn.sat_frames.push_back(frame_for(p));
  }
  return scn;
}

LinkGeometry link_geometry(const Scenario& scn, int s, int u) {
  if (s < 0 || s >= static_cast<int>(scn.sat_positions.size()) ||
      u < 0 || u >= static_cast<int>(scn.ut_positions.size())) {
    throw std::out_of_range("link_geometry: index out of range");
  }
  const Vec3& sat = scn.sat_positions[s];
  const Vec3& ut = scn.ut_positions[u];
  const PanelFrame& f = scn.sat_frames[s];

  LinkGeometry geo;
  const Vec3 d = ut - sat;
  geo.distance_m = d.norm();
  const Vec3 dir = d / geo.distance_m;

  const Vec3 local(f.x.dot(dir), f.y.dot(dir), f.z.dot(dir));
  geo.aod_azimuth_rad = std::atan2(local.y(), local.x());
  geo.aod_elevation_rad = std::asin(std::clamp(local.z(), -1.0, 1.0));

  const Vec3 zenith = ut.normalized();
  geo.elevation_rad = std::asin(std::clamp(zenith.dot(-dir), -1.0, 1.0));
  return geo;
}

}  // namespace leobf
