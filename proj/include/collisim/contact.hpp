#pragma once

#include "collisim/core.hpp"
#include "collisim/lcp.hpp"

namespace collisim {

// Contact force expressed in the collision frame. lambda_x is the normal
// component (nonnegative), lambda_y/lambda_z the friction components.
struct ContactForce {
  double lambda_x{0};
  double lambda_y{0};
  double lambda_z{0};
  bool active{false};

  Eigen::Vector3d vec() const { return {lambda_x, lambda_y, lambda_z}; }
};

struct StepConfig {
  double h{1e-4};            // s
  double contact_tol{1e-10}; // N, complementarity residual budget

  void validate() const;
};

// Scalar LCP for the end-of-step normal force under implicit Euler.
// free_accel_x is the non-contact acceleration along the frame X axis
// (thrust + gravity), drag_x the drag coefficient along that axis.
//   M = 1 + (k h + f) c,   q = k x_free + f v_free
// with c = (h/m)/(1 + h b_x), v_free = (vx + h a_x)/(1 + h b_x),
// x_free = x + h v_free.
LcpProblem assemble_contact_lcp(const CfState& cf, const ContactParams& params,
                                const VehicleParams& vehicle,
                                double free_accel_x, double drag_x, double h);

// Friction laws, evaluated from the solved normal force and the lateral
// velocity: lambda_y = -mu lambda_x vy, lambda_z = -nu lambda_x/(1+lambda_x).
// lambda_x is in newtons; the saturation constant in the z law is likewise
// 1 N.
std::pair<double, double> friction_forces(double lambda_x, double ydot_cf,
                                          const ContactParams& params);

// One implicit-Euler step against a single collision frame. When the gap is
// positive this reduces to a free step with an inactive force. input_accel
// is the inertial-frame non-contact acceleration (thrust and gravity,
// supplied by the caller), drag is applied decelerating per axis.
std::pair<State, ContactForce> step_contact(const State& state,
                                            const CollisionFrame& frame,
                                            const ContactParams& params,
                                            const VehicleParams& vehicle,
                                            const Eigen::Vector3d& input_accel,
                                            const StepConfig& cfg);

}  // namespace collisim
