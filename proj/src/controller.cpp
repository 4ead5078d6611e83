#include "collisim/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace collisim {

void ControllerConfig::validate() const {
  if (!(lambda_th > 0))
    throw std::invalid_argument("ControllerConfig: lambda_th must be > 0");
  if (alpha.x() < 0 || alpha.y() < 0)
    throw std::invalid_argument("ControllerConfig: alpha must be >= 0");
  if (!(accel_limit > 0))
    throw std::invalid_argument("ControllerConfig: accel_limit must be > 0");
  if (pos_p < 0 || vel_p < 0 || vel_i < 0)
    throw std::invalid_argument("ControllerConfig: gains must be >= 0");
}

void PidState::reset() {
  integ.setZero();
  prev_err.setZero();
  has_prev = false;
}

ForceEstimate estimate_external_force(const Eigen::Vector3d& measured_accel,
                                      const Eigen::Vector3d& commanded_accel,
                                      const VehicleParams& vehicle, double t) {
  if (!measured_accel.allFinite() || !commanded_accel.allFinite())
    throw std::invalid_argument("estimate_external_force: non-finite input");
  ForceEstimate e;
  e.lambda_hat = vehicle.mass * (measured_accel - commanded_accel);
  e.t = t;
  return e;
}

bool detect_collision(const ForceEstimate& estimate,
                      const ControllerConfig& config, DetectorState& detector) {
  const double driver =
      std::max(std::abs(estimate.lambda_hat.x()), std::abs(estimate.lambda_hat.y()));
  if (detector.armed && driver >= config.lambda_th) {
    detector.armed = false;
    return true;
  }
  if (!detector.armed && driver < 0.5 * config.lambda_th) detector.armed = true;
  return false;
}

Eigen::Vector3d recovery_setpoint(const Eigen::Vector3d& position_at_tc,
                                  const ForceEstimate& estimate,
                                  const ControllerConfig& config, double z_ref) {
  Eigen::Vector3d ref;
  ref.x() = position_at_tc.x() + config.alpha.x() * estimate.lambda_hat.x();
  ref.y() = position_at_tc.y() - config.alpha.y() * estimate.lambda_hat.y();
  ref.z() = z_ref;
  return ref;
}

Eigen::Vector3d position_controller(const State& state,
                                    const Eigen::Vector3d& setpoint,
                                    const Eigen::Vector3d& v_ff,
                                    const ControllerConfig& config,
                                    const VehicleParams& vehicle,
                                    PidState& pid, double h) {
  if (!state.finite() || !setpoint.allFinite() || !v_ff.allFinite())
    throw std::invalid_argument("position_controller: non-finite input");
  if (!(h > 0)) throw std::invalid_argument("position_controller: h must be > 0");

  Eigen::Vector3d cmd;
  for (int i = 0; i < 3; ++i) {
    const double v_cmd = config.pos_p * (setpoint(i) - state.position(i)) + v_ff(i);
    const double err = v_cmd - state.velocity(i);
    pid.integ(i) = std::clamp(pid.integ(i) + err * h, -config.integ_limit,
                              config.integ_limit);
    double a = config.vel_p * err + config.vel_i * pid.integ(i);
    if (config.vel_d > 0 && pid.has_prev)
      a += config.vel_d * (err - pid.prev_err(i)) / h;
    pid.prev_err(i) = err;
    cmd(i) = std::clamp(a, -config.accel_limit, config.accel_limit);
  }
  pid.has_prev = true;
  cmd.z() += vehicle.gravity;  // hover compensation
  return cmd;
}

}  // namespace collisim
