#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iqfrl/sim.hpp"

namespace iqfrl {

struct TrackingInputs {
  double d = 0.0;
  double dev = 0.0;
  double dv = 0.0;
  double dtheta = 0.0;
};

/// A moving objective: where it is, where it heads and how fast.
struct TrackTarget {
  Pose pose;
  double velocity = 0.0;
};

struct FusionConfig {
  double triggerDist = 0.4;
  double safeDist = 0.5;
  /// Desired robot-target distance; 0 means path tracking and d is the raw distance.
  double dRef = 0.0;
  double kDev = 1.5;
  RobotLimits limits;
};

/// d = distance / d_ref (raw when d_ref = 0); dev = bearing to the target minus heading (positive:
/// the target is to the left); dv = (v_r - v_m) / v_max; dtheta = theta_m - theta_r. Angles in (-pi, pi].
TrackingInputs trackingInputs(const RobotState &robot, const TrackTarget &target, const FusionConfig &cfg);

/// Proportional tracker: vang = clamp(k_dev dev), vlin = clamp(v_max min(1, d) max(0, cos dev)).
Command simpleTracker(const TrackingInputs &in, const FusionConfig &cfg);

enum class Behavior { Tracking, Avoidance };
enum class Side { Right, Left };

/// Mirror image of a scan (left and right swapped).
std::vector<double> mirrorScan(std::span<const double> scan);

/// Switches to avoidance below the trigger distance and back to tracking only once every obstacle
/// is beyond the safe distance. Obstacles on the left are handled by the right-wall follower on the
/// mirrored scan with the turn negated.
class Arbiter {
 public:
  Arbiter(FusionConfig cfg, const ControllerSet &avoidance, LaserConfig laser = {});

  struct Output {
    Behavior behavior = Behavior::Tracking;
    Side side = Side::Right;
    Command command;
  };

  Output step(std::span<const double> scan, const RobotState &robot, const TrackTarget &target);

  Behavior behavior() const { return _behavior; }

  /// Wall-following command for an obstacle on the given side.
  std::optional<Command> avoidanceCommand(std::span<const double> scan, double velocity, Side side) const;

 private:
  FusionConfig _cfg;
  LaserConfig _laser;
  WallFollower _follower;
  Behavior _behavior = Behavior::Tracking;
  Side _side = Side::Right;
  Command _last;
};

/// A point moving along a polyline at constant speed (stops at the end).
struct Waypath {
  std::vector<Vec2> points;
  double speed = 0.0;

  /// Position and heading after t seconds.
  Pose at(double t) const;
};

struct MovingObstacle {
  Waypath path;
  double halfSize = 0.2;

  std::vector<Segment> segmentsAt(double t) const;
};

/**
 * Scenario file:
 *
 *   scenario 1
 *   mode path | object              (object tracking keeps d_ref = 0.5 m)
 *   robot <x> <y> <theta>
 *   duration <s>
 *   target <speed>
 *   at <x> <y>                      (waypoints of the preceding target/obstacle)
 *   obstacle <half-size> <speed>
 */
struct Scenario {
  double dRef = 0.0;
  Pose robot;
  double duration = 60.0;
  Waypath target;
  std::vector<MovingObstacle> obstacles;
};

Scenario parseScenario(std::string_view text);
Scenario loadScenario(const std::string &path);

struct TrackRecord {
  double t = 0.0;
  RobotState state;
  Pose target;
  Behavior behavior = Behavior::Tracking;
  Command command;
};

struct TrackResult {
  std::vector<TrackRecord> trace;
  double meanDistance = 0.0;
  double avoidanceTime = 0.0;
  int collisions = 0;
  int switches = 0;
};

TrackResult runTracking(const Environment &env, const Scenario &scenario, const ControllerSet &avoidance,
                        const FusionConfig &cfg, const SimConfig &sim = {});

}  // namespace iqfrl
