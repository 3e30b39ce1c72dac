#include "iqfrl/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "iqfrl/classifier.hpp"
#include "iqfrl/text.hpp"

namespace iqfrl {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
Vec2 sub(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }

double deg(double d) { return d * kPi / 180.0; }

}  // namespace

double wrapAngle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

// ---------------------------------------------------------------- environment files

Environment parseEnvironment(std::string_view text) {
  LineReader rd(text);
  Environment env;
  auto toks = rd.next("'environment 1' header");
  rd.expectWord(toks, 0, "environment");
  rd.expectWord(toks, 1, "1");
  rd.expectEnd(toks, 2);
  bool haveLap = false;
  while (!rd.done()) {
    toks = rd.next("environment entry");
    const auto &key = toks[0];
    if (key.text == "name") {
      const auto &v = rd.at(toks, 1, "name");
      env.name = std::string(v.text);
      rd.expectEnd(toks, 2);
    } else if (key.text == "segment") {
      Segment s{{rd.number(toks, 1, "x1"), rd.number(toks, 2, "y1")}, {rd.number(toks, 3, "x2"), rd.number(toks, 4, "y2")}};
      rd.expectEnd(toks, 5);
      for (double c : {s.a.x, s.a.y, s.b.x, s.b.y}) {
        if (!std::isfinite(c)) rd.fail("non-finite coordinate", toks[1]);
      }
      if (s.a == s.b) rd.fail("degenerate segment", toks[1]);
      env.segments.push_back(s);
    } else if (key.text == "lap") {
      env.lapAnchor = {rd.number(toks, 1, "x"), rd.number(toks, 2, "y"), rd.number(toks, 3, "theta")};
      auto dir = rd.integer(toks, 4, "lap direction");
      if (dir != 1 && dir != -1) rd.fail("lap direction must be +1 or -1", toks[4]);
      env.lapDirection = static_cast<int>(dir);
      rd.expectEnd(toks, 5);
      haveLap = true;
    } else if (key.text == "start") {
      env.start = Pose{rd.number(toks, 1, "x"), rd.number(toks, 2, "y"), rd.number(toks, 3, "theta")};
      rd.expectEnd(toks, 4);
    } else {
      rd.fail("unknown environment entry", key);
    }
  }
  if (env.segments.size() < 3) throw ParseError("an environment needs at least three segments", rd.line(), 1, "");
  if (!haveLap) throw ParseError("missing 'lap' anchor", rd.line(), 1, "");
  return env;
}

Environment loadEnvironment(const std::string &path) { return parseEnvironment(readFile(path)); }

std::string serializeEnvironment(const Environment &env) {
  std::ostringstream os;
  os << "environment 1\n";
  if (!env.name.empty()) os << "name " << env.name << '\n';
  for (const auto &s : env.segments) {
    os << "segment " << formatDouble(s.a.x) << ' ' << formatDouble(s.a.y) << ' ' << formatDouble(s.b.x) << ' '
       << formatDouble(s.b.y) << '\n';
  }
  const auto &a = env.lapAnchor;
  os << "lap " << formatDouble(a.x) << ' ' << formatDouble(a.y) << ' ' << formatDouble(a.theta) << ' '
     << env.lapDirection << '\n';
  if (env.start) {
    os << "start " << formatDouble(env.start->x) << ' ' << formatDouble(env.start->y) << ' '
       << formatDouble(env.start->theta) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------- sensing

double LaserConfig::angle(std::size_t k) const {
  return -fov / 2.0 + (static_cast<double>(k) + 0.5) * fov / static_cast<double>(beams);
}

std::optional<double> raySegment(Vec2 origin, double angle, const Segment &s) {
  Vec2 d{std::cos(angle), std::sin(angle)};
  Vec2 e = sub(s.b, s.a);
  double denom = cross(d, e);
  if (std::abs(denom) < 1e-15) return std::nullopt;
  Vec2 ao = sub(s.a, origin);
  double t = cross(ao, e) / denom;
  double u = cross(ao, d) / denom;
  if (t < 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return t;
}

Vec2 closestPoint(const Segment &s, Vec2 p) {
  Vec2 e = sub(s.b, s.a);
  double len2 = dot(e, e);
  double u = len2 > 0.0 ? std::clamp(dot(sub(p, s.a), e) / len2, 0.0, 1.0) : 0.0;
  return {s.a.x + u * e.x, s.a.y + u * e.y};
}

WallContact nearestWall(std::span<const Segment> segments, Vec2 p) {
  WallContact best;
  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < segments.size(); ++k) {
    Vec2 c = closestPoint(segments[k], p);
    double d = norm(sub(p, c));
    if (d < best.distance) best = {c, d, k};
  }
  return best;
}

std::vector<double> raycast(std::span<const Segment> segments, const Pose &pose, const LaserConfig &laser) {
  Vec2 o{pose.x, pose.y};
  if (!segments.empty() && nearestWall(segments, o).distance < 1e-9) throw EmbeddedError();
  std::vector<double> out(laser.beams, laser.maxRange);
  for (std::size_t k = 0; k < laser.beams; ++k) {
    double a = pose.theta + laser.angle(k);
    for (const auto &s : segments) {
      if (auto t = raySegment(o, a, s); t && *t < out[k]) out[k] = *t;
    }
  }
  return out;
}

std::vector<double> raycast(const Environment &env, const Pose &pose, const LaserConfig &laser) {
  return raycast(std::span<const Segment>(env.segments), pose, laser);
}

double minRange(std::span<const double> scan, const LaserConfig &laser, double from, double to) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < scan.size(); ++k) {
    double a = laser.angle(k);
    if (a >= from && a <= to) best = std::min(best, scan[k]);
  }
  return std::isfinite(best) ? best : laser.maxRange;
}

double rightDistance(std::span<const double> scan, const LaserConfig &laser) {
  return minRange(scan, laser, deg(-120.0), deg(-60.0));
}

double frontDistance(std::span<const double> scan, const LaserConfig &laser, double halfAngle) {
  return minRange(scan, laser, -halfAngle, halfAngle);
}

// ---------------------------------------------------------------- motion

RobotState step(const RobotState &state, const Command &cmd, double dt, const RobotLimits &limits) {
  RobotState out = state;
  double v = std::clamp(cmd.vlin, -limits.vMax, limits.vMax);
  double w = std::clamp(cmd.vang, -limits.omegaMax, limits.omegaMax);
  const double th = state.pose.theta;
  if (std::abs(w) < 1e-12) {
    out.pose.x += v * std::cos(th) * dt;
    out.pose.y += v * std::sin(th) * dt;
  } else {
    double th2 = th + w * dt;
    out.pose.x += v / w * (std::sin(th2) - std::sin(th));
    out.pose.y -= v / w * (std::cos(th2) - std::cos(th));
  }
  out.pose.theta = wrapAngle(th + w * dt);
  out.v = v;
  out.omega = w;
  return out;
}

// ---------------------------------------------------------------- blockades

Pose recoveryPose(std::span<const Segment> segments, Vec2 p, double offset) {
  WallContact c = nearestWall(segments, p);
  Vec2 n = sub(p, c.point);
  double len = norm(n);
  if (len < 1e-12) {
    // On the wall itself: use the segment's left normal.
    Vec2 e = sub(segments[c.segment].b, segments[c.segment].a);
    double el = norm(e);
    n = {-e.y / el, e.x / el};
  } else {
    n = {n.x / len, n.y / len};
  }
  return {c.point.x + offset * n.x, c.point.y + offset * n.y, std::atan2(-n.x, n.y)};
}

bool BlockadeMonitor::update(double t, Vec2 position, std::span<const double> scan) {
  _history.push_back({t, position});
  if (!scan.empty() && *std::min_element(scan.begin(), scan.end()) <= _cfg.robotRadius) return true;
  // Keep just enough history to span the window.
  while (_history.size() >= 2 && t - _history[1].t >= _cfg.window - 1e-9) _history.erase(_history.begin());
  if (t - _history.front().t < _cfg.window - 1e-9) return false;
  Vec2 origin = _history.front().p;
  for (const auto &s : _history) {
    if (norm(sub(s.p, origin)) >= _cfg.minMove) return false;
  }
  return true;
}

// ---------------------------------------------------------------- quality

double quality(double distCm, double velCm, double blockades) {
  return 1.0 / (1.0 + (1.0 + blockades) * (0.9 * std::abs(distCm - 50.0) + 0.1 * std::abs(velCm - 50.0)));
}

double quality(const LapMetrics &m) { return quality(m.distCm, m.velCm, m.blockades); }

// ---------------------------------------------------------------- supervisor

const char *situationName(Situation s) {
  switch (s) {
    case Situation::StraightWall:
      return "straight";
    case Situation::ConvexCorner:
      return "convex";
    case Situation::ConcaveCorner:
      return "concave";
  }
  return "unknown";
}

Situation labelSituation(std::span<const double> scan, const LaserConfig &laser) {
  if (frontDistance(scan, laser, deg(20.0)) < 1.0) return Situation::ConcaveCorner;
  if (rightDistance(scan, laser) > 0.8) return Situation::ConvexCorner;
  return Situation::StraightWall;
}

Command supervisorCommand(std::span<const double> scan, const LaserConfig &laser, const SupervisorConfig &cfg) {
  double dw = std::numeric_limits<double>::infinity();
  double phiW = -kPi / 2.0;
  for (std::size_t k = 0; k < scan.size(); ++k) {
    double a = laser.angle(k);
    if (a < deg(-150.0) || a > deg(-30.0)) continue;
    if (scan[k] < dw) {
      dw = scan[k];
      phiW = a;
    }
  }
  if (!std::isfinite(dw)) dw = laser.maxRange;
  double alpha = wrapAngle(phiW + kPi / 2.0);
  double e = std::clamp(dw - cfg.targetDistance, -cfg.maxError, cfg.maxError);
  const double wMax = cfg.limits.omegaMax;
  double w = std::clamp(cfg.kAngle * alpha - cfg.kDistance * e, -wMax, wMax);
  double v = cfg.limits.vMax * (1.0 - cfg.turnSlowdown * std::abs(w) / wMax);
  double df = frontDistance(scan, laser, cfg.frontHalfAngle);
  if (df < cfg.frontSlow) {
    double f = std::clamp((df - cfg.frontStop) / (cfg.frontSlow - cfg.frontStop), 0.0, 1.0);
    v *= f;
    w += (wMax - w) * (1.0 - f);
  }
  return {std::clamp(v, 0.0, cfg.limits.vMax), std::clamp(w, -wMax, wMax)};
}

GeneratedData generateSupervisorData(const Environment &env, const GenDataOptions &opt) {
  const auto &sim = opt.sim;
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  GeneratedData out;
  Domain domain = Domain::forBeams(sim.laser.beams);
  for (auto &d : out.bySituation) {
    d.domain = domain;
    d.kind = KbKind::Regression;
  }
  out.classes.domain = domain;
  out.classes.kind = KbKind::Classification;
  out.classes.classCount = 3;

  auto done = [&] {
    for (std::size_t s = 0; s < 3; ++s) {
      if (out.bySituation[s].size() < opt.counts[s]) return false;
    }
    return true;
  };

  RobotState state;
  state.pose = env.startPose();
  BlockadeMonitor monitor(sim.blockade);
  double t = 0.0;
  long cycle = 0;
  while (!done()) {
    if (t > opt.maxTime) {
      std::ostringstream msg;
      msg << "environment '" << env.name << "' did not provide the requested situations:";
      for (std::size_t s = 0; s < 3; ++s) {
        if (out.bySituation[s].size() < opt.counts[s]) {
          msg << ' ' << situationName(static_cast<Situation>(s + 1)) << ' ' << out.bySituation[s].size() << '/'
              << opt.counts[s];
        }
      }
      throw std::runtime_error(msg.str());
    }
    auto scan = raycast(env, state.pose, sim.laser);
    Command cmd = supervisorCommand(scan, sim.laser, opt.supervisor);
    Situation sit = labelSituation(scan, sim.laser);
    std::size_t si = static_cast<std::size_t>(sit) - 1;
    if (out.bySituation[si].size() < opt.counts[si] && unit(rng) < opt.recordProbability) {
      Example e;
      e.distances = scan;
      e.velocity = state.v;
      e.vlin = cmd.vlin;
      e.vang = cmd.vang;
      out.bySituation[si].examples.push_back(e);
      e.vlin = 0.0;
      e.vang = 0.0;
      e.classId = static_cast<int>(sit);
      out.classes.examples.push_back(std::move(e));
    }
    Command exec{cmd.vlin + opt.noiseV * gauss(rng), cmd.vang + opt.noiseOmega * gauss(rng)};
    exec.vlin = std::max(0.0, exec.vlin);
    RobotState next = step(state, exec, sim.dt, sim.limits);
    t += sim.dt;
    ++cycle;
    if (monitor.update(t, {next.pose.x, next.pose.y}, scan)) {
      next.pose = recoveryPose(env.segments, {next.pose.x, next.pose.y}, sim.blockade.recoveryOffset);
      next.v = 0.0;
      monitor.reset();
    } else if (opt.jitterInterval > 0 && cycle % opt.jitterInterval == 0) {
      double lateral = opt.jitterPosition * (2.0 * unit(rng) - 1.0);
      double turn = opt.jitterHeading * (2.0 * unit(rng) - 1.0);
      Pose cand = next.pose;
      cand.x += lateral * -std::sin(cand.theta);
      cand.y += lateral * std::cos(cand.theta);
      cand.theta = wrapAngle(cand.theta + turn);
      if (nearestWall(env.segments, {cand.x, cand.y}).distance > sim.blockade.robotRadius + 0.05) next.pose = cand;
      if (unit(rng) < opt.speedJitterProbability) next.v = sim.limits.vMax * unit(rng);
    }
    state = next;
  }
  return out;
}

// ---------------------------------------------------------------- closed loop

WallFollower::WallFollower(const ControllerSet &kbs) {
  if (kbs.classifier) _classifier.emplace(*kbs.classifier);
  if (kbs.straight) _kbs[0].emplace(*kbs.straight);
  if (kbs.convex && !kbs.convex->rules.empty()) _kbs[1].emplace(*kbs.convex);
  if (kbs.concave && !kbs.concave->rules.empty()) _kbs[2].emplace(*kbs.concave);
  if (!_kbs[0]) throw std::invalid_argument("a straight-wall knowledge base is required");
}

WallFollower::Decision WallFollower::decide(std::span<const double> scan, double velocity) const {
  Decision d;
  if (_classifier) d.situation = static_cast<Situation>(classify(*_classifier, scan, velocity));
  std::size_t si = static_cast<std::size_t>(d.situation) - 1;
  const auto &kb = _kbs[si] ? *_kbs[si] : *_kbs[0];
  d.command = kb.tryInfer(scan, velocity);
  return d;
}

RunResult runWallFollowing(const Environment &env, const ControllerSet &kbs, int laps, const SimConfig &cfg,
                           bool keepTrace) {
  RunResult result;
  WallFollower follower(kbs);
  RobotState state;
  state.pose = env.startPose();
  BlockadeMonitor monitor(cfg.blockade);

  const Pose &anchor = env.lapAnchor;
  const Vec2 heading{std::cos(anchor.theta), std::sin(anchor.theta)};
  auto along = [&](Vec2 p) { return env.lapDirection * dot(sub(p, {anchor.x, anchor.y}), heading); };
  auto across = [&](Vec2 p) { return std::abs(cross(heading, sub(p, {anchor.x, anchor.y}))); };

  Command previous;
  double t = 0.0;
  double lapStart = 0.0;
  double travel = 0.0;
  double prevSpeed = 0.0;
  std::size_t cycles = 0;
  double sumDist = 0.0;
  double sumVel = 0.0;
  double sumVelCh = 0.0;
  int blockades = 0;

  while (static_cast<int>(result.laps.size()) < laps) {
    if (t - lapStart > cfg.maxLapTime) return result;
    auto scan = raycast(env, state.pose, cfg.laser);
    auto decision = follower.decide(scan, state.v);
    TraceRecord rec;
    rec.t = t;
    rec.state = state;
    rec.situation = decision.situation;
    if (decision.command) {
      previous = *decision.command;
    } else {
      rec.held = true;
      ++result.heldCycles;
    }
    rec.command = previous;

    RobotState next = step(state, previous, cfg.dt, cfg.limits);
    Vec2 p0{state.pose.x, state.pose.y};
    Vec2 p1{next.pose.x, next.pose.y};
    double disp = norm(sub(p1, p0));
    double speed = disp / cfg.dt;
    sumDist += 100.0 * rightDistance(scan, cfg.laser);
    sumVel += 100.0 * speed;
    sumVelCh += 100.0 * std::abs(speed - prevSpeed);
    prevSpeed = speed;
    ++cycles;
    t += cfg.dt;
    travel += disp;

    bool lapDone = false;
    if (monitor.update(t, p1, scan)) {
      rec.blockade = true;
      ++blockades;
      next.pose = recoveryPose(env.segments, p1, cfg.blockade.recoveryOffset);
      next.v = 0.0;
      next.omega = 0.0;
      prevSpeed = 0.0;
      monitor.reset();
    } else if (travel >= cfg.minLapTravel && along(p0) < 0.0 && along(p1) >= 0.0 &&
               across(p1) <= cfg.gateHalfLength) {
      lapDone = true;
    }
    if (keepTrace) result.trace.push_back(rec);
    state = next;

    if (lapDone) {
      double n = static_cast<double>(cycles);
      result.laps.push_back({sumDist / n, sumVel / n, sumVelCh / n, t - lapStart, static_cast<double>(blockades)});
      lapStart = t;
      travel = 0.0;
      cycles = 0;
      sumDist = sumVel = sumVelCh = 0.0;
      blockades = 0;
    }
  }
  result.complete = true;
  return result;
}

// ---------------------------------------------------------------- traces and reports

std::string traceHeader() { return "# t x y theta v omega situation vlin vang held blockade\n"; }

std::string formatTrace(const TraceRecord &r) {
  std::ostringstream os;
  os << formatDouble(r.t) << ' ' << formatDouble(r.state.pose.x) << ' ' << formatDouble(r.state.pose.y) << ' '
     << formatDouble(r.state.pose.theta) << ' ' << formatDouble(r.state.v) << ' ' << formatDouble(r.state.omega)
     << ' ' << situationName(r.situation) << ' ' << formatDouble(r.command.vlin) << ' '
     << formatDouble(r.command.vang) << ' ' << (r.held ? 1 : 0) << ' ' << (r.blockade ? 1 : 0) << '\n';
  return os.str();
}

MetricsSummary summarize(std::span<const LapMetrics> laps) {
  MetricsSummary s;
  if (laps.empty()) return s;
  double n = static_cast<double>(laps.size());
  auto field = [&](auto member) {
    double mean = 0.0;
    for (const auto &l : laps) mean += l.*member;
    mean /= n;
    double var = 0.0;
    for (const auto &l : laps) var += (l.*member - mean) * (l.*member - mean);
    s.mean.*member = mean;
    s.stddev.*member = std::sqrt(var / n);
  };
  field(&LapMetrics::distCm);
  field(&LapMetrics::velCm);
  field(&LapMetrics::velChangeCm);
  field(&LapMetrics::time);
  field(&LapMetrics::blockades);
  s.quality = quality(s.mean);
  return s;
}

namespace {

std::string metricsFields(const LapMetrics &m) {
  std::ostringstream os;
  os << "dist " << formatDouble(m.distCm) << " vel " << formatDouble(m.velCm) << " velch "
     << formatDouble(m.velChangeCm) << " time " << formatDouble(m.time) << " blockades " << formatDouble(m.blockades);
  return os.str();
}

LapMetrics readFields(const LineReader &rd, const std::vector<Token> &toks, std::size_t from) {
  LapMetrics m;
  const char *names[] = {"dist", "vel", "velch", "time", "blockades"};
  double *targets[] = {&m.distCm, &m.velCm, &m.velChangeCm, &m.time, &m.blockades};
  for (std::size_t i = 0; i < 5; ++i) {
    rd.expectWord(toks, from + 2 * i, names[i]);
    *targets[i] = rd.number(toks, from + 2 * i + 1, names[i]);
  }
  return m;
}

}  // namespace

std::string formatMetricsReport(const std::string &envName, const RunResult &run) {
  std::ostringstream os;
  os << "metrics 1\n";
  os << "environment " << (envName.empty() ? "unnamed" : envName) << '\n';
  os << "status " << (run.complete ? "complete" : "incomplete") << '\n';
  for (std::size_t k = 0; k < run.laps.size(); ++k) {
    os << "lap " << k + 1 << ' ' << metricsFields(run.laps[k]) << " quality " << formatDouble(quality(run.laps[k]))
       << '\n';
  }
  if (!run.laps.empty()) {
    auto s = summarize(run.laps);
    os << "mean " << metricsFields(s.mean) << " quality " << formatDouble(s.quality) << '\n';
    os << "std " << metricsFields(s.stddev) << '\n';
  }
  return os.str();
}

MetricsReport parseMetricsReport(std::string_view text) {
  LineReader rd(text);
  MetricsReport r;
  auto toks = rd.next("'metrics 1' header");
  rd.expectWord(toks, 0, "metrics");
  rd.expectWord(toks, 1, "1");
  toks = rd.next("environment");
  rd.expectWord(toks, 0, "environment");
  r.environment = std::string(rd.at(toks, 1, "environment name").text);
  toks = rd.next("status");
  rd.expectWord(toks, 0, "status");
  const auto &st = rd.at(toks, 1, "status");
  if (st.text != "complete" && st.text != "incomplete") rd.fail("unknown status", st);
  r.complete = st.text == "complete";
  bool haveMean = false;
  while (!rd.done()) {
    toks = rd.next("report line");
    const auto &key = toks[0];
    if (key.text == "lap") {
      if (rd.integer(toks, 1, "lap number") != static_cast<long long>(r.laps.size()) + 1) {
        rd.fail("laps must be numbered in order", toks[1]);
      }
      r.laps.push_back(readFields(rd, toks, 2));
      rd.expectWord(toks, 12, "quality");
      r.lapQuality.push_back(rd.number(toks, 13, "quality"));
      rd.expectEnd(toks, 14);
    } else if (key.text == "mean") {
      r.summary.mean = readFields(rd, toks, 1);
      rd.expectWord(toks, 11, "quality");
      r.summary.quality = rd.number(toks, 12, "quality");
      rd.expectEnd(toks, 13);
      haveMean = true;
    } else if (key.text == "std") {
      r.summary.stddev = readFields(rd, toks, 1);
      rd.expectEnd(toks, 11);
    } else {
      rd.fail("unknown report line", key);
    }
  }
  if (!haveMean && !r.laps.empty()) r.summary = summarize(r.laps);
  return r;
}

std::string formatQualityTable(std::span<const MetricsReport> reports) {
  std::ostringstream os;
  os << "# environment dist vel velch time blockades quality\n";
  std::vector<LapMetrics> rows;
  std::vector<double> qualities;
  for (const auto &r : reports) {
    const auto &m = r.summary.mean;
    os << r.environment << ' ' << formatDouble(m.distCm) << ' ' << formatDouble(m.velCm) << ' '
       << formatDouble(m.velChangeCm) << ' ' << formatDouble(m.time) << ' ' << formatDouble(m.blockades) << ' '
       << formatDouble(r.summary.quality) << '\n';
    rows.push_back(m);
    qualities.push_back(r.summary.quality);
  }
  if (rows.empty()) return os.str();
  auto s = summarize(rows);
  double n = static_cast<double>(qualities.size());
  double qMean = 0.0;
  for (double q : qualities) qMean += q;
  qMean /= n;
  double qVar = 0.0;
  for (double q : qualities) qVar += (q - qMean) * (q - qMean);
  auto line = [&](const char *label, const LapMetrics &m, double q) {
    os << label << ' ' << formatDouble(m.distCm) << ' ' << formatDouble(m.velCm) << ' ' << formatDouble(m.velChangeCm)
       << ' ' << formatDouble(m.time) << ' ' << formatDouble(m.blockades) << ' ' << formatDouble(q) << '\n';
  };
  line("mean", s.mean, qMean);
  line("std", s.stddev, std::sqrt(qVar / n));
  return os.str();
}

}  // namespace iqfrl
