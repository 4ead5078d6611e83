#pragma once

#include <optional>
#include <string>
#include <vector>

#include "collisim/contact.hpp"
#include "collisim/controller.hpp"
#include "collisim/core.hpp"

namespace collisim {

struct Wall {
  CollisionFrame frame;
  std::string surface;  // preset key: concrete or acrylic
  std::string label;    // free-form, for reporting
};

// One expected collision: which wall, the commanded pre-collision velocity
// in that wall's frame (x along the outward normal, so approaching means
// a negative x component), the stiffness mode to collide in, and the
// recovery gains applied afterwards.
struct CollisionPlan {
  int wall{0};
  Eigen::Vector2d approach_velocity{Eigen::Vector2d::Zero()};  // m/s (vx, vy)
  Mode mode{Mode::Rigid};
  Eigen::Vector2d alpha{0.12, 0.025};
};

// Timing policy of the flight phase machine. An approach phase is given
// nominal transit time plus approach_margin when the commanded normal
// velocity closes the gap, else approach_timeout. The recovery setpoint is
// engaged when the contact transient has decayed (or after impact_timeout
// for degenerate pressing contacts).
struct FlightTiming {
  double approach_timeout{4.0};  // s
  double approach_margin{1.5};   // s
  double impact_timeout{1.0};    // s
  double recovery_time{1.5};     // s
  double settle_time{2.5};       // s
  bool require_all_collisions{false};  // abort as soon as a collision is missed

  void validate() const;
};

enum class ScenarioKind { DropTest, FlightCollision };

struct Scenario {
  ScenarioKind kind{ScenarioKind::DropTest};
  std::string name;
  State initial_state;
  std::vector<Wall> walls;
  std::vector<CollisionPlan> collisions;  // mode schedule + approach velocities
  double duration{1.0};                   // s, hard cap
  VehicleParams vehicle;
  std::optional<ControllerConfig> controller;  // absent: uncontrolled (drops)
  double z_ref{1.0};                           // m, held altitude in flight
  FlightTiming timing;
  std::optional<Eigen::Vector2d> goal;  // tracked when no collisions are planned

  void validate() const;
};

enum class EventKind { ContactStart, ContactEnd, ModeSwitch, CollisionDetected };

const char* event_name(EventKind kind);

struct Event {
  double t{0};
  EventKind kind{EventKind::ContactStart};
  int wall{-1};
};

struct Sample {
  double t{0};
  State state;
  ContactForce force;  // applied over the step starting at t, collision frame
  Eigen::Vector3d setpoint{Eigen::Vector3d::Zero()};
  Mode mode{Mode::Rigid};
};

struct Trajectory {
  std::vector<Sample> samples;
  std::vector<Event> events;
  std::vector<Wall> walls;  // copied from the scenario, for metrics and I/O

  const Sample& back() const { return samples.back(); }
  int detections() const;
};

// Implicit-Euler free-flight step; drag decelerating per axis, gravity is
// part of input_accel (caller supplied).
State step_free(const State& state, const Eigen::Vector3d& input_accel,
                const VehicleParams& vehicle, double h);

// Forward-simulates a scenario. Deterministic: identical inputs give
// bit-identical trajectories. record_stride selects every n-th sample
// (0 keeps only the first and last), the final state is always recorded.
Trajectory simulate(const Scenario& scenario, const StepConfig& cfg,
                    int record_stride = 1);

// Free drop of the chassis onto a concrete ground plane: gravity along the
// inward normal, no control input, no drag, rest offset 0.2 m.
Scenario drop_test_scenario(double height, Mode mode,
                            const std::string& surface = "concrete");

}  // namespace collisim
