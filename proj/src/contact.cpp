#include "collisim/contact.hpp"

#include <cmath>
#include <stdexcept>

namespace collisim {

void StepConfig::validate() const {
  if (!(h > 0)) throw std::invalid_argument("StepConfig: h must be > 0");
  if (!(contact_tol > 0))
    throw std::invalid_argument("StepConfig: contact_tol must be > 0");
}

LcpProblem assemble_contact_lcp(const CfState& cf, const ContactParams& params,
                                const VehicleParams& vehicle,
                                double free_accel_x, double drag_x, double h) {
  params.validate();
  vehicle.validate();
  if (!(h > 0)) throw std::invalid_argument("assemble_contact_lcp: h must be > 0");
  if (!std::isfinite(cf.x) || !std::isfinite(cf.vx) || !std::isfinite(free_accel_x))
    throw std::invalid_argument("assemble_contact_lcp: non-finite state");

  const double c = (h / vehicle.mass) / (1.0 + h * drag_x);
  const double v_free = (cf.vx + h * free_accel_x) / (1.0 + h * drag_x);
  const double x_free = cf.x + h * v_free;

  LcpProblem lcp;
  lcp.M.resize(1, 1);
  lcp.q.resize(1);
  lcp.M(0, 0) = 1.0 + (params.k * h + params.f) * c;
  lcp.q(0) = params.k * x_free + params.f * v_free;
  return lcp;
}

std::pair<double, double> friction_forces(double lambda_x, double ydot_cf,
                                          const ContactParams& params) {
  if (!(lambda_x >= 0))
    throw std::invalid_argument("friction_forces: lambda_x must be >= 0");
  const double lambda_y = -params.mu * lambda_x * ydot_cf;
  const double lambda_z = -params.nu * lambda_x / (1.0 + lambda_x);
  return {lambda_y, lambda_z};
}

std::pair<State, ContactForce> step_contact(const State& state,
                                            const CollisionFrame& frame,
                                            const ContactParams& params,
                                            const VehicleParams& vehicle,
                                            const Eigen::Vector3d& input_accel,
                                            const StepConfig& cfg) {
  cfg.validate();
  if (!state.finite() || !input_accel.allFinite())
    throw std::invalid_argument("step_contact: non-finite input");

  const double h = cfg.h;
  const double m = vehicle.mass;

  CfState cf = to_collision_frame(state, frame);
  if (cf.x > 0.0) {
    // not in contact: plain free step, inactive force
    State next;
    for (int i = 0; i < 3; ++i) {
      const double v =
          (state.velocity(i) + h * input_accel(i)) / (1.0 + h * vehicle.drag(i));
      next.velocity(i) = v;
      next.position(i) = state.position(i) + h * v;
    }
    return {next, ContactForce{}};
  }

  const Eigen::Matrix3d& R = frame.rotation;
  const Eigen::Vector3d a_cf = R.transpose() * input_accel;
  // drag along each collision axis: diagonal of R^T diag(b) R
  Eigen::Vector3d b_cf;
  for (int i = 0; i < 3; ++i)
    b_cf(i) = (vehicle.drag.array() * R.col(i).array().square()).sum();

  const LcpProblem lcp =
      assemble_contact_lcp(cf, params, vehicle, a_cf.x(), b_cf.x(), h);
  const double lambda_x = solve_lcp_scalar(lcp);

  const double c = (h / m) / (1.0 + h * b_cf.x());
  const double vx = (cf.vx + h * a_cf.x()) / (1.0 + h * b_cf.x()) + c * lambda_x;

  // lateral channel with the friction law folded into the implicit update,
  // so the returned lambda_y is consistent with the end-of-step velocity
  const double vy = (cf.vy + h * a_cf.y()) /
                    (1.0 + h * b_cf.y() + (h / m) * params.mu * lambda_x);
  const auto [lambda_y, lambda_z] = friction_forces(lambda_x, vy, params);
  const double vz = (cf.vz + h * a_cf.z() + (h / m) * lambda_z) /
                    (1.0 + h * b_cf.z());

  cf.vx = vx;
  cf.vy = vy;
  cf.vz = vz;
  cf.x += h * vx;
  cf.y += h * vy;
  cf.z += h * vz;

  ContactForce force;
  force.lambda_x = lambda_x;
  force.lambda_y = lambda_y;
  force.lambda_z = lambda_z;
  force.active = lambda_x > 0.0;
  return {from_collision_frame(cf, frame), force};
}

}  // namespace collisim
