#include "iqfrl/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "iqfrl/text.hpp"

namespace iqfrl {

TrackingInputs trackingInputs(const RobotState &robot, const TrackTarget &target, const FusionConfig &cfg) {
  TrackingInputs in;
  double dx = target.pose.x - robot.pose.x;
  double dy = target.pose.y - robot.pose.y;
  double dist = std::hypot(dx, dy);
  in.d = cfg.dRef > 0.0 ? dist / cfg.dRef : dist;
  in.dev = dist > 0.0 ? wrapAngle(std::atan2(dy, dx) - robot.pose.theta) : 0.0;
  in.dv = (robot.v - target.velocity) / cfg.limits.vMax;
  in.dtheta = wrapAngle(target.pose.theta - robot.pose.theta);
  return in;
}

Command simpleTracker(const TrackingInputs &in, const FusionConfig &cfg) {
  const auto &lim = cfg.limits;
  double w = std::clamp(cfg.kDev * in.dev, -lim.omegaMax, lim.omegaMax);
  double v = lim.vMax * std::min(1.0, in.d) * std::max(0.0, std::cos(in.dev));
  return {std::clamp(v, 0.0, lim.vMax), w};
}

std::vector<double> mirrorScan(std::span<const double> scan) { return {scan.rbegin(), scan.rend()}; }

Arbiter::Arbiter(FusionConfig cfg, const ControllerSet &avoidance, LaserConfig laser)
    : _cfg(cfg), _laser(laser), _follower(avoidance) {
  if (!(cfg.triggerDist < cfg.safeDist)) throw std::invalid_argument("trigger distance must be below the safe distance");
}

std::optional<Command> Arbiter::avoidanceCommand(std::span<const double> scan, double velocity, Side side) const {
  if (side == Side::Right) return _follower.decide(scan, velocity).command;
  auto mirrored = mirrorScan(scan);
  auto cmd = _follower.decide(mirrored, velocity).command;
  if (cmd) cmd->vang = -cmd->vang;
  return cmd;
}

Arbiter::Output Arbiter::step(std::span<const double> scan, const RobotState &robot, const TrackTarget &target) {
  auto nearest = std::min_element(scan.begin(), scan.end());
  double dmin = nearest == scan.end() ? _laser.maxRange : *nearest;
  if (_behavior == Behavior::Tracking && dmin < _cfg.triggerDist) {
    _behavior = Behavior::Avoidance;
    double a = _laser.angle(static_cast<std::size_t>(nearest - scan.begin()));
    _side = a <= 0.0 ? Side::Right : Side::Left;
  } else if (_behavior == Behavior::Avoidance && dmin >= _cfg.safeDist) {
    _behavior = Behavior::Tracking;
  }
  Output out;
  out.behavior = _behavior;
  out.side = _side;
  if (_behavior == Behavior::Tracking) {
    _last = simpleTracker(trackingInputs(robot, target, _cfg), _cfg);
  } else if (auto cmd = avoidanceCommand(scan, robot.v, _side)) {
    _last = *cmd;
  }
  out.command = _last;
  return out;
}

Pose Waypath::at(double t) const {
  if (points.empty()) return {};
  if (points.size() == 1) return {points[0].x, points[0].y, 0.0};
  double remaining = std::max(0.0, t) * speed;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    Vec2 a = points[k];
    Vec2 b = points[k + 1];
    double len = std::hypot(b.x - a.x, b.y - a.y);
    double heading = std::atan2(b.y - a.y, b.x - a.x);
    if (remaining <= len || k + 2 == points.size()) {
      double u = len > 0.0 ? std::min(1.0, remaining / len) : 1.0;
      return {a.x + u * (b.x - a.x), a.y + u * (b.y - a.y), heading};
    }
    remaining -= len;
  }
  return {};
}

std::vector<Segment> MovingObstacle::segmentsAt(double t) const {
  Pose c = path.at(t);
  double h = halfSize;
  Vec2 p[4] = {{c.x - h, c.y - h}, {c.x + h, c.y - h}, {c.x + h, c.y + h}, {c.x - h, c.y + h}};
  return {{p[0], p[1]}, {p[1], p[2]}, {p[2], p[3]}, {p[3], p[0]}};
}

Scenario parseScenario(std::string_view text) {
  LineReader rd(text);
  Scenario sc;
  auto toks = rd.next("'scenario 1' header");
  rd.expectWord(toks, 0, "scenario");
  rd.expectWord(toks, 1, "1");
  rd.expectEnd(toks, 2);
  Waypath *current = nullptr;
  bool haveTarget = false;
  while (!rd.done()) {
    toks = rd.next("scenario entry");
    const auto &key = toks[0];
    if (key.text == "mode") {
      const auto &m = rd.at(toks, 1, "mode");
      if (m.text == "path") {
        sc.dRef = 0.0;
      } else if (m.text == "object") {
        sc.dRef = 0.5;
      } else {
        rd.fail("mode must be 'path' or 'object'", m);
      }
      rd.expectEnd(toks, 2);
    } else if (key.text == "robot") {
      sc.robot = {rd.number(toks, 1, "x"), rd.number(toks, 2, "y"), rd.number(toks, 3, "theta")};
      rd.expectEnd(toks, 4);
    } else if (key.text == "duration") {
      sc.duration = rd.number(toks, 1, "duration");
      rd.expectEnd(toks, 2);
      if (!(sc.duration > 0.0)) rd.fail("duration must be positive", toks[1]);
    } else if (key.text == "target") {
      if (haveTarget) rd.fail("only one target is supported", key);
      haveTarget = true;
      sc.target.speed = rd.number(toks, 1, "speed");
      rd.expectEnd(toks, 2);
      current = &sc.target;
    } else if (key.text == "obstacle") {
      MovingObstacle o;
      o.halfSize = rd.number(toks, 1, "half size");
      o.path.speed = rd.number(toks, 2, "speed");
      rd.expectEnd(toks, 3);
      if (!(o.halfSize > 0.0)) rd.fail("half size must be positive", toks[1]);
      sc.obstacles.push_back(std::move(o));
      current = &sc.obstacles.back().path;
    } else if (key.text == "at") {
      if (!current) rd.fail("'at' must follow a target or obstacle", key);
      current->points.push_back({rd.number(toks, 1, "x"), rd.number(toks, 2, "y")});
      rd.expectEnd(toks, 3);
    } else {
      rd.fail("unknown scenario entry", key);
    }
  }
  if (!haveTarget || sc.target.points.empty()) throw ParseError("scenario needs a target with waypoints", rd.line(), 1, "");
  for (const auto &o : sc.obstacles) {
    if (o.path.points.empty()) throw ParseError("obstacle without waypoints", rd.line(), 1, "");
  }
  return sc;
}

Scenario loadScenario(const std::string &path) { return parseScenario(readFile(path)); }

TrackResult runTracking(const Environment &env, const Scenario &scenario, const ControllerSet &avoidance,
                        const FusionConfig &baseCfg, const SimConfig &sim) {
  FusionConfig cfg = baseCfg;
  cfg.dRef = scenario.dRef;
  Arbiter arbiter(cfg, avoidance, sim.laser);
  TrackResult result;
  RobotState state;
  state.pose = scenario.robot;
  Behavior last = Behavior::Tracking;
  double sumDist = 0.0;
  std::size_t cycles = 0;
  bool touching = false;
  for (double t = 0.0; t < scenario.duration; t += sim.dt) {
    std::vector<Segment> world = env.segments;
    for (const auto &o : scenario.obstacles) {
      auto segs = o.segmentsAt(t);
      world.insert(world.end(), segs.begin(), segs.end());
    }
    Pose tp = scenario.target.at(t);
    double dtgt = std::hypot(tp.x - state.pose.x, tp.y - state.pose.y);
    TrackTarget target{tp, dtgt > 0.0 && t < scenario.duration ? scenario.target.speed : 0.0};
    std::vector<double> scan;
    try {
      scan = raycast(std::span<const Segment>(world), state.pose, sim.laser);
    } catch (const EmbeddedError &) {
      ++result.collisions;
      break;
    }
    auto out = arbiter.step(scan, state, target);
    if (out.behavior != last) ++result.switches;
    last = out.behavior;
    if (out.behavior == Behavior::Avoidance) result.avoidanceTime += sim.dt;
    bool contact = *std::min_element(scan.begin(), scan.end()) <= sim.blockade.robotRadius;
    if (contact && !touching) ++result.collisions;
    touching = contact;
    result.trace.push_back({t, state, tp, out.behavior, out.command});
    sumDist += dtgt;
    ++cycles;
    state = step(state, out.command, sim.dt, sim.limits);
  }
  result.meanDistance = cycles ? sumDist / static_cast<double>(cycles) : 0.0;
  return result;
}

}  // namespace iqfrl
