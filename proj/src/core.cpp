#include "collisim/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace collisim {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

const char* mode_name(Mode m) {
  return m == Mode::Rigid ? "rigid" : "flexible";
}

bool State::finite() const {
  return position.allFinite() && velocity.allFinite();
}

double CollisionFrame::gap(const Eigen::Vector3d& position) const {
  return normal().dot(position - origin) - rest_offset;
}

void ContactParams::validate() const {
  if (!(k > 0)) throw std::invalid_argument("ContactParams: k must be > 0");
  if (!(f >= 0)) throw std::invalid_argument("ContactParams: f must be >= 0");
  if (!(mu >= 0)) throw std::invalid_argument("ContactParams: mu must be >= 0");
  if (!(nu >= 0)) throw std::invalid_argument("ContactParams: nu must be >= 0");
}

void VehicleParams::validate() const {
  if (!(mass > 0)) throw std::invalid_argument("VehicleParams: mass must be > 0");
  if ((drag.array() < 0).any())
    throw std::invalid_argument("VehicleParams: drag components must be >= 0");
  if (!std::isfinite(gravity))
    throw std::invalid_argument("VehicleParams: gravity must be finite");
}

void CamGeometry::validate() const {
  if (!(cam_radius > circle_radius && circle_radius > 0))
    throw std::invalid_argument("CamGeometry: requires cam_radius > circle_radius > 0");
}

CollisionFrame make_collision_frame(const Eigen::Vector3d& plane_point,
                                    const Eigen::Vector3d& outward_normal,
                                    const Eigen::Vector3d& up_hint,
                                    double rest_offset) {
  const double n_norm = outward_normal.norm();
  if (n_norm < 1e-12)
    throw std::invalid_argument("make_collision_frame: outward_normal is zero");
  if (!(rest_offset > 0))
    throw std::invalid_argument("make_collision_frame: rest_offset must be > 0");

  const Eigen::Vector3d x = outward_normal / n_norm;
  Eigen::Vector3d z = up_hint - up_hint.dot(x) * x;
  const double z_norm = z.norm();
  if (z_norm < 1e-9 * up_hint.norm() || up_hint.norm() < 1e-12)
    throw std::invalid_argument(
        "make_collision_frame: up_hint is parallel to the outward normal");
  z /= z_norm;
  const Eigen::Vector3d y = z.cross(x);

  CollisionFrame frame;
  frame.origin = plane_point;
  frame.rotation.col(0) = x;
  frame.rotation.col(1) = y;
  frame.rotation.col(2) = z;
  frame.rest_offset = rest_offset;
  return frame;
}

CfState to_collision_frame(const State& state, const CollisionFrame& frame) {
  const Eigen::Vector3d rel = state.position - frame.origin;
  const Eigen::Vector3d p = frame.rotation.transpose() * rel;
  const Eigen::Vector3d v = frame.rotation.transpose() * state.velocity;
  CfState cf;
  cf.x = p.x() - frame.rest_offset;  // signed gap
  cf.y = p.y();
  cf.z = p.z();
  cf.vx = v.x();
  cf.vy = v.y();
  cf.vz = v.z();
  return cf;
}

State from_collision_frame(const CfState& cf, const CollisionFrame& frame) {
  const Eigen::Vector3d p(cf.x + frame.rest_offset, cf.y, cf.z);
  const Eigen::Vector3d v(cf.vx, cf.vy, cf.vz);
  State state;
  state.position = frame.origin + frame.rotation * p;
  state.velocity = frame.rotation * v;
  return state;
}

double cam_rod_extension(double theta, const CamGeometry& geom) {
  geom.validate();
  constexpr double kHalfPi = 1.5707963267948966;
  const double tol = 1e-12;
  if (theta < geom.theta_0 - tol || theta > geom.theta_0 + kHalfPi + tol)
    throw std::invalid_argument(
        "cam_rod_extension: theta outside [theta_0, theta_0 + pi/2]");
  return geom.cam_radius - geom.circle_radius * std::cos(theta);
}

ContactParams mode_params(Mode mode, const std::string& surface) {
  const std::string s = lower(surface);
  ContactParams p;
  p.mode = mode;
  p.surface = s;
  if (s == "concrete") {
    if (mode == Mode::Rigid)
      p.k = 5500.0, p.f = 15.0, p.mu = 0.3, p.nu = 0.5;
    else
      p.k = 750.0, p.f = 8.5, p.mu = 5.0, p.nu = 0.7;
  } else if (s == "acrylic") {
    if (mode == Mode::Rigid)
      p.k = 4200.0, p.f = 15.0, p.mu = 0.3, p.nu = 5.0;
    else
      p.k = 1250.0, p.f = 8.5, p.mu = 5.0, p.nu = 10.0;
  } else {
    throw std::invalid_argument("mode_params: unknown surface '" + surface +
                                "' (expected concrete or acrylic)");
  }
  return p;
}

}  // namespace collisim
