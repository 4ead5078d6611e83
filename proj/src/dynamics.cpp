#include "collisim/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace collisim {

void FlightTiming::validate() const {
  if (!(approach_timeout > 0) || !(impact_timeout > 0) || !(recovery_time > 0) ||
      !(settle_time >= 0) || !(approach_margin >= 0))
    throw std::invalid_argument("FlightTiming: windows must be positive");
}

void Scenario::validate() const {
  if (!(duration > 0)) throw std::invalid_argument("Scenario: duration must be > 0");
  if (!initial_state.finite())
    throw std::invalid_argument("Scenario: non-finite initial state");
  vehicle.validate();
  timing.validate();
  if (controller) controller->validate();
  for (const auto& c : collisions) {
    if (c.wall < 0 || c.wall >= static_cast<int>(walls.size()))
      throw std::invalid_argument("Scenario: collision wall index out of range");
  }
  if (!collisions.empty() && walls.empty())
    throw std::invalid_argument("Scenario: collisions require at least one wall");
  if (kind == ScenarioKind::FlightCollision && !collisions.empty() && !controller)
    throw std::invalid_argument("Scenario: flight collisions require a controller");
}

const char* event_name(EventKind kind) {
  switch (kind) {
    case EventKind::ContactStart: return "ContactStart";
    case EventKind::ContactEnd: return "ContactEnd";
    case EventKind::ModeSwitch: return "ModeSwitch";
    case EventKind::CollisionDetected: return "CollisionDetected";
  }
  return "?";
}

int Trajectory::detections() const {
  int n = 0;
  for (const auto& e : events) n += e.kind == EventKind::CollisionDetected;
  return n;
}

State step_free(const State& state, const Eigen::Vector3d& input_accel,
                const VehicleParams& vehicle, double h) {
  if (!state.finite() || !input_accel.allFinite())
    throw std::invalid_argument("step_free: non-finite input");
  if (!(h > 0)) throw std::invalid_argument("step_free: h must be > 0");
  State next;
  for (int i = 0; i < 3; ++i) {
    const double v =
        (state.velocity(i) + h * input_accel(i)) / (1.0 + h * vehicle.drag(i));
    next.velocity(i) = v;
    next.position(i) = state.position(i) + h * v;
  }
  return next;
}

namespace {

enum class Phase { Approach, Impact, Recovery, Goal, Done };

// Inertial approach velocity for a collision plan: the commanded
// collision-frame (vx, vy) mapped through the wall rotation, zero vertical.
Eigen::Vector3d approach_velocity_inertial(const Wall& wall,
                                           const CollisionPlan& plan) {
  Eigen::Vector3d v = plan.approach_velocity.x() * wall.frame.rotation.col(0) +
                      plan.approach_velocity.y() * wall.frame.rotation.col(1);
  v.z() = 0.0;
  return v;
}

struct PhaseMachine {
  const Scenario& sc;
  Phase phase{Phase::Goal};
  int slot{0};          // index of the next expected collision
  double phase_t0{0};
  Eigen::Vector3d phase_origin;
  Eigen::Vector3d setpoint;
  Eigen::Vector3d v_ff{Eigen::Vector3d::Zero()};
  Eigen::Vector3d pos_tc{Eigen::Vector3d::Zero()};
  ForceEstimate latched;
  double approach_budget{0};
  bool aborted{false};  // a required collision did not happen

  explicit PhaseMachine(const Scenario& scenario) : sc(scenario) {
    phase_origin = sc.initial_state.position;
    setpoint = phase_origin;
    setpoint.z() = sc.z_ref;
    if (sc.collisions.empty()) {
      phase = Phase::Goal;
      if (sc.goal)
        setpoint = {sc.goal->x(), sc.goal->y(), sc.z_ref};
    } else {
      enter_approach(0, 0.0, sc.initial_state.position);
    }
  }

  void enter_approach(int idx, double t, const Eigen::Vector3d& position) {
    phase = Phase::Approach;
    slot = idx;
    phase_t0 = t;
    phase_origin = position;
    const auto& plan = sc.collisions[idx];
    const auto& wall = sc.walls[plan.wall];
    v_ff = approach_velocity_inertial(wall, plan);
    const double gap = wall.frame.gap(position);
    const double closing = -v_ff.dot(wall.frame.normal());
    if (closing > 1e-9 && gap > 0)
      approach_budget = gap / closing + sc.timing.approach_margin;
    else
      approach_budget = sc.timing.approach_timeout;
  }

  // Advances phase timers; returns false when the simulation should stop.
  bool update(double t, const Eigen::Vector3d& position, double driver) {
    switch (phase) {
      case Phase::Approach: {
        const double dt = t - phase_t0;
        setpoint = phase_origin + v_ff * dt;
        setpoint.z() = sc.z_ref;
        if (dt > approach_budget) {
          if (sc.timing.require_all_collisions) {
            aborted = true;
            return false;
          }
          if (slot + 1 < static_cast<int>(sc.collisions.size()))
            enter_approach(slot + 1, t, position);
          else {
            phase = Phase::Done;
            phase_t0 = t;
          }
        }
        break;
      }
      case Phase::Impact: {
        v_ff.setZero();
        const bool decayed = sc.controller &&
                             driver < 0.5 * sc.controller->lambda_th;
        if (decayed || t - phase_t0 > sc.timing.impact_timeout) {
          // engage the post-collision setpoint now that the transient is over
          ControllerConfig cfg = *sc.controller;
          cfg.alpha = sc.collisions[slot].alpha;
          setpoint = recovery_setpoint(pos_tc, latched, cfg, sc.z_ref);
          phase = Phase::Recovery;
          phase_t0 = t;
        }
        break;
      }
      case Phase::Recovery: {
        v_ff.setZero();
        if (t - phase_t0 > sc.timing.recovery_time) {
          if (slot + 1 < static_cast<int>(sc.collisions.size()))
            enter_approach(slot + 1, t, position);
          else {
            phase = Phase::Done;
            phase_t0 = t;
          }
        }
        break;
      }
      case Phase::Done:
        v_ff.setZero();
        if (t - phase_t0 > sc.timing.settle_time) return false;
        break;
      case Phase::Goal:
        break;
    }
    return true;
  }

  void on_detection(double t, const Eigen::Vector3d& position,
                    const ForceEstimate& estimate) {
    if (phase == Phase::Goal) return;  // unplanned hit while goal tracking
    if (phase == Phase::Approach || phase == Phase::Recovery ||
        phase == Phase::Done) {
      // a detection during recovery or settling consumes the next slot
      const int next = phase == Phase::Approach ? slot : slot + 1;
      if (next < static_cast<int>(sc.collisions.size())) {
        slot = next;
        phase = Phase::Impact;
        phase_t0 = t;
        pos_tc = position;
        latched = estimate;
        setpoint = position;
        setpoint.z() = sc.z_ref;
        v_ff.setZero();
      }
    }
  }
};

}  // namespace

Trajectory simulate(const Scenario& scenario, const StepConfig& cfg,
                    int record_stride) {
  scenario.validate();
  cfg.validate();

  const double h = cfg.h;
  const double g = scenario.vehicle.gravity;
  const Eigen::Vector3d gravity_accel(0, 0, -g);
  const int n_steps = static_cast<int>(std::llround(scenario.duration / h));
  const int n_walls = static_cast<int>(scenario.walls.size());

  Trajectory traj;
  traj.walls = scenario.walls;
  if (record_stride >= 1)
    traj.samples.reserve(static_cast<size_t>(n_steps / record_stride) + 2);

  State state = scenario.initial_state;
  Mode mode = scenario.collisions.empty() ? Mode::Rigid
                                          : scenario.collisions.front().mode;
  std::optional<Mode> pending_mode;
  PhaseMachine machine(scenario);
  PidState pid;
  DetectorState detector;
  std::vector<bool> in_contact(scenario.walls.size(), false);
  double driver = 0.0;  // max(|lhat_x|, |lhat_y|) of the previous step
  double t = 0.0;

  // per-wall params cache, refreshed on mode switches
  std::vector<ContactParams> wall_params;
  auto refresh_params = [&] {
    wall_params.clear();
    for (const auto& w : scenario.walls)
      wall_params.push_back(mode_params(mode, w.surface));
  };
  refresh_params();

  auto contact_dispatch = [&](const State& s, const Eigen::Vector3d& input)
      -> std::pair<State, ContactForce> {
    int wall = -1;
    double min_gap = 0.0;
    for (int w = 0; w < n_walls; ++w) {
      const double gap = scenario.walls[w].frame.gap(s.position);
      if (gap <= 0.0 && (wall < 0 || gap < min_gap)) {
        wall = w;
        min_gap = gap;
      }
    }
    if (wall < 0) return {step_free(s, input, scenario.vehicle, h), ContactForce{}};
    auto [next, force] = step_contact(s, scenario.walls[wall].frame,
                                      wall_params[wall], scenario.vehicle,
                                      input, cfg);
    return {next, force};
  };

  auto active_wall_of = [&](const State& s) {
    int wall = -1;
    double min_gap = 0.0;
    for (int w = 0; w < n_walls; ++w) {
      const double gap = scenario.walls[w].frame.gap(s.position);
      if (gap <= 0.0 && (wall < 0 || gap < min_gap)) {
        wall = w;
        min_gap = gap;
      }
    }
    return wall;
  };

  for (int step = 0; step < n_steps; ++step) {
    // controller
    Eigen::Vector3d input_accel = gravity_accel;
    if (scenario.controller) {
      if (!machine.update(t, state.position, driver)) break;
      const Eigen::Vector3d cmd =
          position_controller(state, machine.setpoint, machine.v_ff,
                              *scenario.controller, scenario.vehicle, pid, h);
      input_accel = cmd + gravity_accel;  // vertical command carries +g
    }

    const int wall_before = active_wall_of(state);
    auto [next, force] = contact_dispatch(state, input_accel);

    if ((record_stride >= 1 && step % record_stride == 0) ||
        (record_stride == 0 && step == 0))
      traj.samples.push_back({t, state, force, machine.setpoint, mode});

    // contact episode bookkeeping: an episode of a wall is the run of steps
    // where it is the active wall and carries force
    for (int w = 0; w < n_walls; ++w) {
      const bool now = w == wall_before && force.active;
      if (now && !in_contact[w])
        traj.events.push_back({t, EventKind::ContactStart, w});
      if (!now && in_contact[w])
        traj.events.push_back({t, EventKind::ContactEnd, w});
      in_contact[w] = now;
    }

    // force estimation and collision detection
    if (scenario.controller) {
      Eigen::Vector3d a_meas = (next.velocity - state.velocity) / h;
      Eigen::Vector3d a_pred;
      for (int i = 0; i < 3; ++i) {
        const double vf = (state.velocity(i) + h * input_accel(i)) /
                          (1.0 + h * scenario.vehicle.drag(i));
        a_pred(i) = (vf - state.velocity(i)) / h;
      }
      const ForceEstimate estimate =
          estimate_external_force(a_meas, a_pred, scenario.vehicle, t + h);
      driver = std::max(std::abs(estimate.lambda_hat.x()),
                        std::abs(estimate.lambda_hat.y()));
      if (detect_collision(estimate, *scenario.controller, detector)) {
        traj.events.push_back({t + h, EventKind::CollisionDetected, wall_before});
        const int prev_slot = machine.slot;
        const Phase prev_phase = machine.phase;
        machine.on_detection(t + h, next.position, estimate);
        if (machine.phase == Phase::Impact &&
            (prev_phase != Phase::Impact || machine.slot != prev_slot)) {
          pid.reset();
          if (machine.slot + 1 < static_cast<int>(scenario.collisions.size()))
            pending_mode = scenario.collisions[machine.slot + 1].mode;
        }
      }
    }

    state = next;
    t += h;

    // mode switches latch in once the guard is clear of every wall
    if (pending_mode && active_wall_of(state) < 0) {
      mode = *pending_mode;
      pending_mode.reset();
      refresh_params();
      traj.events.push_back({t, EventKind::ModeSwitch, -1});
    }
  }

  // final sample: evaluate the force at the terminal state without stepping
  Eigen::Vector3d input_accel = gravity_accel;
  if (scenario.controller) {
    PidState scratch = pid;
    const Eigen::Vector3d cmd =
        position_controller(state, machine.setpoint, machine.v_ff,
                            *scenario.controller, scenario.vehicle, scratch, h);
    input_accel = cmd + gravity_accel;
  }
  auto [unused, force] = contact_dispatch(state, input_accel);
  traj.samples.push_back({t, state, force, machine.setpoint, mode});

  return traj;
}

Scenario drop_test_scenario(double height, Mode mode,
                            const std::string& surface) {
  if (!(height >= 0))
    throw std::invalid_argument("drop_test_scenario: height must be >= 0");
  Scenario sc;
  sc.kind = ScenarioKind::DropTest;
  sc.name = "drop";
  Wall ground;
  ground.frame = make_collision_frame(Eigen::Vector3d::Zero(),
                                      Eigen::Vector3d(0, 0, 1),
                                      Eigen::Vector3d(1, 0, 0), 0.2);
  ground.surface = surface;
  ground.label = "ground";
  sc.walls.push_back(ground);
  CollisionPlan plan;
  plan.wall = 0;
  plan.mode = mode;
  sc.collisions.push_back(plan);
  sc.initial_state.position = {0, 0, height + ground.frame.rest_offset};
  sc.initial_state.velocity.setZero();
  sc.vehicle.mass = 1.3;
  sc.vehicle.drag.setZero();  // unpowered chassis drop, drag negligible
  sc.duration = 1.0;
  sc.controller.reset();
  return sc;
}

}  // namespace collisim
