#pragma once

#include "collisim/core.hpp"

namespace collisim {

// Recovery and low-level control parameters. The outer position loop is a
// proportional law producing a velocity command; the inner velocity loop is
// a PID producing an acceleration command, saturated per axis. alpha are the
// recovery gains of the post-collision setpoint law; scenarios may override
// them per collision.
struct ControllerConfig {
  double lambda_th{5.0};                      // N, collision detection threshold
  Eigen::Vector2d alpha{0.12, 0.025};         // m/N, (alpha_x, alpha_y)
  double pos_p{2.5};                          // 1/s
  double vel_p{10.0};                         // 1/s
  double vel_i{2.0};                          // 1/s^2
  double vel_d{0.0};                          // dimensionless
  double accel_limit{6.0};                    // m/s^2 per axis, feedback part
  double integ_limit{1.0};                    // m/s, clamp on integrated error
  double noise_std{0.0};                      // m/s^2, estimator noise hook (off)

  void validate() const;
};

// External force estimate in the inertial frame.
struct ForceEstimate {
  Eigen::Vector3d lambda_hat{Eigen::Vector3d::Zero()};  // N
  double t{0};
};

// Detector hysteresis: fires once per episode, re-arms when the driving
// components fall below lambda_th/2.
struct DetectorState {
  bool armed{true};
};

// Velocity-loop integrator and derivative memory, one value per axis.
struct PidState {
  Eigen::Vector3d integ{Eigen::Vector3d::Zero()};
  Eigen::Vector3d prev_err{Eigen::Vector3d::Zero()};
  bool has_prev{false};

  void reset();
};

// lambda_hat = m (measured - commanded). In simulation the measured
// acceleration is the true one including contact forces and the commanded
// one is the model-predicted free acceleration, so the residual is the
// contact force.
ForceEstimate estimate_external_force(const Eigen::Vector3d& measured_accel,
                                      const Eigen::Vector3d& commanded_accel,
                                      const VehicleParams& vehicle, double t = 0);

// True exactly once per contact episode: when armed and |lambda_hat_x| or
// |lambda_hat_y| crosses lambda_th. Mutates the hysteresis state.
bool detect_collision(const ForceEstimate& estimate,
                      const ControllerConfig& config, DetectorState& detector);

// Post-collision setpoint: x_ref = x(t_c) + alpha_x lhat_x,
// y_ref = y(t_c) - alpha_y lhat_y, z_ref held.
Eigen::Vector3d recovery_setpoint(const Eigen::Vector3d& position_at_tc,
                                  const ForceEstimate& estimate,
                                  const ControllerConfig& config, double z_ref);

// P-PID position controller. Returns the commanded acceleration in the
// inertial frame including gravity compensation on the vertical axis; the
// feedback part is saturated to accel_limit per axis. v_ff is a velocity
// feedforward added to the outer-loop output (zero for hold setpoints).
Eigen::Vector3d position_controller(const State& state,
                                    const Eigen::Vector3d& setpoint,
                                    const Eigen::Vector3d& v_ff,
                                    const ControllerConfig& config,
                                    const VehicleParams& vehicle,
                                    PidState& pid, double h);

}  // namespace collisim
