#pragma once

#include <Eigen/Core>
#include <string>

namespace collisim {

// Stiffness configuration of the vehicle: arms locked (rigid) or free on
// bearings (flexible).
enum class Mode : int { Rigid = 1, Flexible = 2 };

const char* mode_name(Mode m);

// Point-mass vehicle state in the inertial frame.
struct State {
  Eigen::Vector3d position{Eigen::Vector3d::Zero()};  // m
  Eigen::Vector3d velocity{Eigen::Vector3d::Zero()};  // m/s

  bool finite() const;
};

// Frame attached to a planar obstacle. The rotation maps collision-frame
// vectors to inertial ones; its first column is the outward unit normal
// (X axis of the frame), Y points "to the right", Z completes the
// right-handed triad. rest_offset is the distance from the vehicle center
// of mass to the plane at first guard contact, so the signed gap is
//   gap = n . (p - origin) - rest_offset
// and gap < 0 means guard compression.
struct CollisionFrame {
  Eigen::Vector3d origin{Eigen::Vector3d::Zero()};
  Eigen::Matrix3d rotation{Eigen::Matrix3d::Identity()};
  double rest_offset{0.2};

  Eigen::Vector3d normal() const { return rotation.col(0); }
  double gap(const Eigen::Vector3d& position) const;
};

// State expressed in a collision frame; x is the signed gap.
struct CfState {
  double x{0}, y{0}, z{0};     // m
  double vx{0}, vy{0}, vz{0};  // m/s
};

// Contact coefficients for one (mode, surface) pairing.
// k: spring [N/m], f: damper [N s/m], mu/nu: friction constants.
struct ContactParams {
  double k{0};
  double f{0};
  double mu{0};
  double nu{0};
  Mode mode{Mode::Rigid};
  std::string surface;

  void validate() const;  // throws std::invalid_argument on bad values
};

struct VehicleParams {
  double mass{1.3};                               // kg
  Eigen::Vector3d drag{Eigen::Vector3d::Zero()};  // 1/s, per inertial axis
  double gravity{9.81};                           // m/s^2

  void validate() const;
};

// Cam-disc geometry of the arm lock. The rod extends by
// l = R_cam - r cos(theta) as the disc turns.
struct CamGeometry {
  double cam_radius{0.02};    // m
  double circle_radius{0.01}; // m
  double theta_0{0.0};        // rad, lower rotation limit

  void validate() const;
};

// Builds a right-handed collision frame whose X axis equals the normalized
// outward normal; Z is the projection of up_hint onto the plane normal to X.
// Throws std::invalid_argument if the normal and hint are (anti)parallel or
// rest_offset <= 0.
CollisionFrame make_collision_frame(const Eigen::Vector3d& plane_point,
                                    const Eigen::Vector3d& outward_normal,
                                    const Eigen::Vector3d& up_hint,
                                    double rest_offset);

CfState to_collision_frame(const State& state, const CollisionFrame& frame);
State from_collision_frame(const CfState& cf, const CollisionFrame& frame);

// Rod extension for a cam angle within [theta_0, theta_0 + pi/2].
double cam_rod_extension(double theta, const CamGeometry& geom);

// Identified contact coefficient presets per mode and surface
// ("concrete" or "acrylic", case-insensitive).
ContactParams mode_params(Mode mode, const std::string& surface);

}  // namespace collisim
