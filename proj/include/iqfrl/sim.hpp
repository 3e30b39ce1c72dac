#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iqfrl/dataset.hpp"
#include "iqfrl/inference.hpp"

namespace iqfrl {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Vec2 &) const = default;
};

struct Segment {
  Vec2 a;
  Vec2 b;

  bool operator==(const Segment &) const = default;
};

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  bool operator==(const Pose &) const = default;
};

/// Angle wrapped to (-pi, pi].
double wrapAngle(double a);

/// Segment world. The lap gate passes through the anchor perpendicular to its heading; a lap ends
/// when the robot crosses it travelling along the heading (direction +1) or against it (-1).
struct Environment {
  std::string name;
  std::vector<Segment> segments;
  Pose lapAnchor;
  int lapDirection = 1;
  /// Where runs start; the lap anchor when absent.
  std::optional<Pose> start;

  Pose startPose() const { return start.value_or(lapAnchor); }

  bool operator==(const Environment &) const = default;
};

/**
 * Environment file (lengths in metres, angles in radians):
 *
 *   environment 1
 *   name <text>
 *   segment <x1> <y1> <x2> <y2>      (at least three)
 *   lap <x> <y> <theta> <+1|-1>
 *   start <x> <y> <theta>            (optional)
 */
Environment parseEnvironment(std::string_view text);
Environment loadEnvironment(const std::string &path);
std::string serializeEnvironment(const Environment &env);

/// Two back-to-back scanners. Beam k points at -fov/2 + (k + 0.5) fov / n relative to the heading,
/// counter-clockwise from the rear-right; with the defaults beam 180 looks right and 361 ahead.
/// Reversing a scan mirrors it left-right.
struct LaserConfig {
  std::size_t beams = 722;
  double fov = 2.0 * std::numbers::pi;
  double maxRange = 8.0;

  double angle(std::size_t k) const;
};

class EmbeddedError : public std::runtime_error {
 public:
  EmbeddedError() : std::runtime_error("robot embedded in wall") {}
};

/// Distance along the ray to the segment, or nothing when the ray misses it.
std::optional<double> raySegment(Vec2 origin, double angle, const Segment &s);

/// Nearest intersection per beam, clamped to the maximum range.
std::vector<double> raycast(const Environment &env, const Pose &pose, const LaserConfig &laser = {});
std::vector<double> raycast(std::span<const Segment> segments, const Pose &pose, const LaserConfig &laser = {});

struct RobotState {
  Pose pose;
  double v = 0.0;
  double omega = 0.0;

  bool operator==(const RobotState &) const = default;
};

struct RobotLimits {
  double vMax = 0.5;
  double omegaMax = std::numbers::pi / 4.0;
};

/// Exact circular-arc unicycle update with commands clamped to the limits.
RobotState step(const RobotState &state, const Command &cmd, double dt, const RobotLimits &limits = {});

/// Closest point of the segment to p.
Vec2 closestPoint(const Segment &s, Vec2 p);

struct WallContact {
  Vec2 point;
  double distance = 0.0;
  std::size_t segment = 0;
};
WallContact nearestWall(std::span<const Segment> segments, Vec2 p);

/// Pose 0.5 m (configurable) off the nearest wall point, heading along the wall with the wall on the right.
Pose recoveryPose(std::span<const Segment> segments, Vec2 p, double offset = 0.5);

struct BlockadeConfig {
  double robotRadius = 0.25;
  double window = 5.0;
  double minMove = 0.02;
  double recoveryOffset = 0.5;
};

/// Watches the pose history for collisions and stalls.
class BlockadeMonitor {
 public:
  explicit BlockadeMonitor(BlockadeConfig cfg = {}) : _cfg(cfg) {}

  /// Records the pose at time t and reports a blockade (collision or no progress over the window).
  bool update(double t, Vec2 position, std::span<const double> scan);
  void reset() { _history.clear(); }

  const BlockadeConfig &config() const { return _cfg; }

 private:
  struct Sample {
    double t;
    Vec2 p;
  };
  BlockadeConfig _cfg;
  std::vector<Sample> _history;
};

struct LapMetrics {
  double distCm = 0.0;
  double velCm = 0.0;
  double velChangeCm = 0.0;
  double time = 0.0;
  double blockades = 0.0;

  bool operator==(const LapMetrics &) const = default;
};

/// 1 / (1 + (1 + B)(0.9 |Dist - 50| + 0.1 |Vel - 50|)) with Dist in cm and Vel in cm/s.
double quality(double distCm, double velCm, double blockades);
double quality(const LapMetrics &m);

/// Right-wall distance: minimum range over beams within 30 degrees of the robot's right.
double rightDistance(std::span<const double> scan, const LaserConfig &laser);
/// Minimum range over beams within halfAngle of the heading.
double frontDistance(std::span<const double> scan, const LaserConfig &laser, double halfAngle);
/// Minimum range over the beams whose angle lies in [from, to].
double minRange(std::span<const double> scan, const LaserConfig &laser, double from, double to);

enum class Situation { StraightWall = 1, ConvexCorner = 2, ConcaveCorner = 3 };
const char *situationName(Situation s);

/// Geometric situation of a scan: concave when something is close ahead, convex when the right
/// wall has fallen away, straight otherwise.
Situation labelSituation(std::span<const double> scan, const LaserConfig &laser);

/**
 * Scripted wall-following supervisor.
 *
 * The wall point is the closest return between -150 and -30 degrees (d_w at angle phi_w). With
 * alpha = phi_w + pi/2 and e = clamp(d_w - 0.5, -0.4, 0.4):
 *   omega = 1.5 alpha - 2.0 e,  v = v_max (1 - 0.6 |omega| / omega_max).
 * When the frontal clearance d_f (within 20 degrees of the heading) drops below 1 m, with
 * f = clamp((d_f - 0.4) / 0.6, 0, 1): v is scaled by f and omega moves towards +omega_max by (1 - f).
 */
struct SupervisorConfig {
  double targetDistance = 0.5;
  double kAngle = 1.5;
  double kDistance = 2.0;
  double maxError = 0.4;
  double frontSlow = 1.0;
  double frontStop = 0.4;
  double frontHalfAngle = 20.0 * std::numbers::pi / 180.0;
  double turnSlowdown = 0.6;
  RobotLimits limits;
};

Command supervisorCommand(std::span<const double> scan, const LaserConfig &laser, const SupervisorConfig &cfg = {});

struct SimConfig {
  LaserConfig laser;
  RobotLimits limits;
  BlockadeConfig blockade;
  double dt = 0.1;
  /// Gate half-length and the travel required between two lap crossings.
  double gateHalfLength = 1.0;
  double minLapTravel = 3.0;
  /// A lap taking longer than this is reported incomplete.
  double maxLapTime = 600.0;
};

struct GenDataOptions {
  /// Examples per situation (straight wall, convex corner, concave corner).
  std::array<std::size_t, 3> counts{572, 540, 594};
  std::uint64_t seed = 1;
  /// Chance of recording a visited state.
  double recordProbability = 0.5;
  /// Standard deviations of the exploration noise added to the executed command.
  double noiseV = 0.05;
  double noiseOmega = 0.2;
  /// Every this many cycles the pose is jittered (lateral metres, heading radians).
  int jitterInterval = 40;
  double jitterPosition = 0.12;
  double jitterHeading = 0.35;
  /// Chance that a jitter event also redraws the speed uniformly from [0, v_max].
  double speedJitterProbability = 0.25;
  double maxTime = 3000.0;
  SupervisorConfig supervisor;
  SimConfig sim;
};

struct GeneratedData {
  /// One regression dataset per situation, indexed by Situation - 1.
  std::array<Dataset, 3> bySituation;
  Dataset classes;
};

/// Drives the supervisor around the environment and records examples until every count is met.
/// Throws std::runtime_error when a requested situation never shows up.
GeneratedData generateSupervisorData(const Environment &env, const GenDataOptions &opt);

struct TraceRecord {
  double t = 0.0;
  RobotState state;
  Situation situation = Situation::StraightWall;
  Command command;
  bool held = false;
  bool blockade = false;
};

std::string traceHeader();
std::string formatTrace(const TraceRecord &r);

/// Regression KBs per situation plus the classifier picking one of them each cycle.
struct ControllerSet {
  std::optional<KnowledgeBase> straight;
  std::optional<KnowledgeBase> convex;
  std::optional<KnowledgeBase> concave;
  std::optional<KnowledgeBase> classifier;
};

/// Chooses the situation KB and produces a command; holds the previous command when nothing fires.
class WallFollower {
 public:
  explicit WallFollower(const ControllerSet &kbs);

  struct Decision {
    Situation situation = Situation::StraightWall;
    std::optional<Command> command;
  };

  Decision decide(std::span<const double> scan, double velocity) const;

 private:
  std::optional<CompiledKnowledgeBase> _classifier;
  std::array<std::optional<CompiledKnowledgeBase>, 3> _kbs;
};

struct RunResult {
  std::vector<LapMetrics> laps;
  bool complete = false;
  std::size_t heldCycles = 0;
  std::vector<TraceRecord> trace;
};

/// Closed-loop wall following for n laps (stops early when a lap exceeds the time limit).
RunResult runWallFollowing(const Environment &env, const ControllerSet &kbs, int laps, const SimConfig &cfg = {},
                           bool keepTrace = true);

struct MetricsSummary {
  LapMetrics mean;
  LapMetrics stddev;
  double quality = 0.0;
};

/// Mean and population standard deviation of each indicator; quality is computed from the means.
MetricsSummary summarize(std::span<const LapMetrics> laps);

/**
 * Metrics report:
 *
 *   metrics 1
 *   environment <name>
 *   status complete|incomplete
 *   lap <k> dist <cm> vel <cm/s> velch <cm/s> time <s> blockades <n> quality <q>
 *   mean dist ... quality <q>
 *   std dist ... blockades <x>
 */
std::string formatMetricsReport(const std::string &envName, const RunResult &run);

struct MetricsReport {
  std::string environment;
  bool complete = false;
  std::vector<LapMetrics> laps;
  std::vector<double> lapQuality;
  MetricsSummary summary;
};
MetricsReport parseMetricsReport(std::string_view text);

/// Cross-environment table: one row per report (its mean indicators) plus mean and stddev rows.
std::string formatQualityTable(std::span<const MetricsReport> reports);

}  // namespace iqfrl
