#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "iqfrl/classifier.hpp"
#include "iqfrl/inference.hpp"
#include "iqfrl/rule_select.hpp"

namespace testing {

using namespace iqfrl;

double uniform(Rng &rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniformInt(Rng &rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

namespace {

template <class... Args>
std::string describe(const Args &...args) {
  std::ostringstream os;
  os.precision(17);
  (os << ... << args);
  return os.str();
}

Universe randomUniverse(Rng &rng) {
  double lo = uniform(rng, -5.0, 5.0);
  return {"u", lo, lo + uniform(rng, 0.1, 10.0)};
}

// Independent trapezoid: zero outside (lo, hi), one on [p0, p1], evaluated on clamped inputs.
struct Trap {
  double min, max, lo, p0, p1, hi;

  double operator()(double x) const {
    x = std::min(std::max(x, min), max);
    if (x <= lo || x >= hi) return 0.0;
    if (x < p0) return (x - lo) / (p0 - lo);
    if (x > p1) return (hi - x) / (hi - p1);
    return 1.0;
  }
  double a() const { return std::max(lo, min); }
  double b() const { return std::min(hi, max); }
};

Trap labelTrap(const Universe &u, int g, int j) {
  if (g == 1) return {u.min, u.max, u.min - 1.0, u.min, u.max, u.max + 1.0};
  double h = (u.max - u.min) / (g - 1);
  double c = u.min + (j - 1) * h;
  return {u.min, u.max, c - h, c, c, c + h};
}

Trap maskTrap(const TriangularMask &m) {
  return {m.universe.min, m.universe.max, 2.0 * m.left - m.center, m.center, m.center, 2.0 * m.right - m.center};
}

// Midpoint-grid similarity over the union of both supports (pieces in ascending order).
double gridSimilarity(const Trap &x, const Trap &y, int points) {
  double xa = x.a(), xb = x.b(), ya = y.a(), yb = y.b();
  std::vector<std::pair<double, double>> parts;
  if (xa < yb && ya < xb) {
    parts.push_back({std::min(xa, ya), std::max(xb, yb)});
  } else {
    if (ya < xa) {
      std::swap(xa, ya);
      std::swap(xb, yb);
    }
    if (xb > xa) parts.push_back({xa, xb});
    if (yb > ya) parts.push_back({ya, yb});
  }
  double total = 0.0;
  for (auto [p, q] : parts) total += q - p;
  if (total <= 0.0) return 0.0;
  double acc = 0.0;
  for (int k = 0; k < points; ++k) {
    double t = (k + 0.5) * total / points;
    double x0 = 0.0;
    for (auto [p, q] : parts) {
      x0 = p + t;
      if (t <= q - p) break;
      t -= q - p;
    }
    acc += std::abs(x(x0) - y(x0));
  }
  return 1.0 - acc / points;
}

}  // namespace

// ---------------------------------------------------------------- generators

LinguisticLabel randomLabel(Rng &rng, const Universe &u, int maxGranularity) {
  int g = uniformInt(rng, 1, maxGranularity);
  return LinguisticLabel(u, g, uniformInt(rng, 1, g));
}

LinguisticLabel randomBeamLabel(Rng &rng, const Domain &d, int maxGranularity) {
  for (;;) {
    auto label = randomLabel(rng, d.beam, maxGranularity);
    if (sectorWeights(label, d.beamCount()).total > 0.0) return label;
  }
}

QFRule randomRule(Rng &rng, const Domain &d, int classCount) {
  QFRule rule;
  int sectors = uniformInt(rng, 1, 4);
  for (int k = 0; k < sectors; ++k) {
    SectorProposition s;
    s.distance = randomLabel(rng, d.distance, 40);
    s.beams = randomBeamLabel(rng, d, std::min(40, static_cast<int>(d.beamCount())));
    s.q = uniform(rng, d.quantifier.min, d.quantifier.max);
    rule.sectors.push_back(s);
  }
  if (uniform(rng, 0.0, 1.0) < 0.5) rule.velocity = VelocityProposition{randomLabel(rng, d.velocity, 20)};
  if (classCount > 0) {
    rule.consequent = ClassConsequent{uniformInt(rng, 1, classCount)};
  } else {
    rule.consequent = Consequent{uniformInt(rng, 1, d.vlinGranularity), uniformInt(rng, 1, d.vangGranularity)};
  }
  rule.fitness = uniform(rng, 0.0, 1.0);
  return rule;
}

KnowledgeBase randomKb(Rng &rng, const Domain &d, bool classification) {
  KnowledgeBase kb;
  kb.domain = d;
  kb.kind = classification ? KbKind::Classification : KbKind::Regression;
  kb.classCount = 3;
  kb.defaultClass = classification ? uniformInt(rng, 1, 3) : 1;
  int n = uniformInt(rng, 1, 8);
  for (int k = 0; k < n; ++k) kb.rules.push_back(randomRule(rng, d, classification ? kb.classCount : 0));
  return kb;
}

std::vector<double> randomScan(Rng &rng, std::size_t beams) {
  std::vector<double> scan(beams);
  std::size_t h = 0;
  while (h < beams) {
    std::size_t len = static_cast<std::size_t>(uniformInt(rng, 2, static_cast<int>(std::max<std::size_t>(2, beams / 2))));
    double level = uniform(rng, 0.15, 1.6);
    for (std::size_t k = 0; k < len && h < beams; ++k, ++h) scan[h] = level;
  }
  return scan;
}

Dataset syntheticDataset(std::size_t examples, std::size_t beams, std::uint64_t seed) {
  Rng rng(seed);
  Dataset data;
  data.domain = Domain::forBeams(beams);
  data.kind = KbKind::Regression;
  const std::size_t right = beams / 4;
  const std::size_t front = beams / 2;
  for (std::size_t i = 0; i < examples; ++i) {
    Example e;
    e.distances = randomScan(rng, beams);
    e.velocity = uniform(rng, 0.0, 0.5);
    double r = std::min(e.distances[right], 1.5);
    double f = std::min(e.distances[front], 1.5);
    e.vlin = 0.5 * f / 1.5;
    e.vang = std::clamp(1.2 * (0.75 - r), -std::numbers::pi / 4.0, std::numbers::pi / 4.0);
    data.examples.push_back(std::move(e));
  }
  return data;
}

KnowledgeBase handFollower() {
  KnowledgeBase kb;
  kb.domain = Domain::forBeams(722);
  const Domain &d = kb.domain;
  auto rule = [&](int dg, int dj, double q, int bg, int bj, int vlin, int vang) {
    QFRule r;
    r.sectors.push_back({LinguisticLabel(d.distance, dg, dj), LinguisticLabel(d.beam, bg, bj), q});
    r.consequent = Consequent{vlin, vang};
    r.fitness = 1.0;
    kb.rules.push_back(r);
  };
  rule(4, 1, 30.0, 9, 5, 2, 19);   // something close ahead: slow, hard left
  rule(4, 1, 40.0, 9, 3, 6, 13);   // right wall close: gentle left
  rule(4, 2, 40.0, 9, 3, 9, 10);   // right wall at about half a metre: straight
  rule(4, 3, 60.0, 9, 3, 6, 6);    // right wall far: right
  rule(4, 4, 60.0, 9, 3, 4, 4);    // right wall gone: sharper right
  return kb;
}

Environment randomScene(Rng &rng) {
  Environment env;
  env.name = "random";
  int n = uniformInt(rng, 5, 9);
  std::vector<Vec2> corners;
  for (int k = 0; k < n; ++k) {
    double a = 2.0 * std::numbers::pi * (k + uniform(rng, 0.1, 0.9)) / n;
    double r = uniform(rng, 2.0, 6.0);
    corners.push_back({r * std::cos(a), r * std::sin(a)});
  }
  for (int k = 0; k < n; ++k) env.segments.push_back({corners[k], corners[(k + 1) % n]});
  int loose = uniformInt(rng, 0, 3);
  for (int k = 0; k < loose; ++k) {
    Vec2 a{uniform(rng, -4.0, 4.0), uniform(rng, -4.0, 4.0)};
    double ang = uniform(rng, -std::numbers::pi, std::numbers::pi);
    double len = uniform(rng, 0.2, 2.0);
    env.segments.push_back({a, {a.x + len * std::cos(ang), a.y + len * std::sin(ang)}});
  }
  env.lapAnchor = {0.0, 0.0, 0.0};
  return env;
}

// ---------------------------------------------------------------- oracles

double oracleMembership(const Universe &u, int g, int j, double x) { return labelTrap(u, g, j)(x); }

double oracleSimilarity(const Universe &u, int ga, int ja, int gb, int jb, int points) {
  return gridSimilarity(labelTrap(u, ga, ja), labelTrap(u, gb, jb), points);
}

LinguisticLabel oracleMaskToLabel(const TriangularMask &raw, const MaskSearchOptions &opt) {
  TriangularMask mask = raw;
  double spread = opt.minSpread * (raw.universe.max - raw.universe.min);
  mask.left = std::min(mask.left, mask.center - spread);
  mask.right = std::max(mask.right, mask.center + spread);
  const Universe &u = mask.universe;
  const double w = u.max - u.min;
  const double tol = 1e-9 * w;
  Trap m = maskTrap(mask);
  const double s = m.b() - m.a();

  LinguisticLabel best(u, 1, 1);
  double bestSim = -1.0;
  for (int g = 1; g <= opt.maxGranularity; ++g) {
    bool allFit = true;
    for (int j = 1; j <= g; ++j) {
      Trap t = labelTrap(u, g, j);
      double width = t.b() - t.a();
      if (width > s + tol) {
        allFit = false;
        continue;
      }
      if (!(t.a() < m.b() && m.a() < t.b())) continue;
      double sim = gridSimilarity(m, t, opt.similarity.gridPoints);
      if (sim > bestSim) {
        bestSim = sim;
        best = LinguisticLabel(u, g, j);
      }
    }
    if (allFit) break;
  }
  return best;
}

double oracleRay(const Environment &env, const Pose &pose, double angle, double maxRange) {
  const double dx = std::cos(angle);
  const double dy = std::sin(angle);
  const double stepLen = 0.02;
  const int steps = static_cast<int>(std::ceil(maxRange / stepLen)) + 1;
  double best = maxRange;
  for (const auto &s : env.segments) {
    double ex = s.b.x - s.a.x;
    double ey = s.b.y - s.a.y;
    // Signed side of the ray point relative to the segment's line.
    auto side = [&](double t) {
      double px = pose.x + t * dx - s.a.x;
      double py = pose.y + t * dy - s.a.y;
      return ex * py - ey * px;
    };
    double t0 = 0.0;
    double f0 = side(0.0);
    for (int k = 1; k <= steps && t0 < best; ++k) {
      double t1 = k * stepLen;
      double f1 = side(t1);
      if ((f0 <= 0.0 && f1 >= 0.0) || (f0 >= 0.0 && f1 <= 0.0)) {
        double lo = t0, hi = t1;
        for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
          double mid = 0.5 * (lo + hi);
          double fm = side(mid);
          if ((f0 <= 0.0) == (fm <= 0.0)) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        double t = 0.5 * (lo + hi);
        double px = pose.x + t * dx - s.a.x;
        double py = pose.y + t * dy - s.a.y;
        double u = (px * ex + py * ey) / (ex * ex + ey * ey);
        if (u >= -1e-12 && u <= 1.0 + 1e-12) {
          best = std::min(best, t);
          break;
        }
      }
      t0 = t1;
      f0 = f1;
    }
  }
  return best;
}

Pose oracleArc(const Pose &p, double v, double w, double dt, int n) {
  // Classic fourth-order Runge-Kutta on (x, y, theta).
  double x = p.x, y = p.y, th = p.theta;
  const double h = dt / n;
  for (int k = 0; k < n; ++k) {
    double k1x = v * std::cos(th), k1y = v * std::sin(th);
    double th2 = th + 0.5 * h * w;
    double k2x = v * std::cos(th2), k2y = v * std::sin(th2);
    double k4x = v * std::cos(th + h * w), k4y = v * std::sin(th + h * w);
    x += h / 6.0 * (k1x + 4.0 * k2x + k4x);
    y += h / 6.0 * (k1y + 4.0 * k2y + k4y);
    th += h * w;
  }
  return {x, y, th};
}

// ---------------------------------------------------------------- property checks

Outcome checkStrongPartition(int maxGranularity, int points, double tol, std::uint64_t seed) {
  Rng rng(seed);
  Outcome out;
  for (int g = 2; g <= maxGranularity; ++g) {
    Universe u = randomUniverse(rng);
    for (int i = 0; i < points; ++i) {
      double x = i == 0 ? u.min : i == 1 ? u.max : uniform(rng, u.min, u.max);
      double sum = 0.0;
      for (int j = 1; j <= g; ++j) sum += membership(LinguisticLabel(u, g, j), x);
      if (std::abs(sum - 1.0) > tol) out.fail(describe("g=", g, " x=", x, " sum=", sum));
    }
  }
  return out;
}

Outcome checkSimilarityProperties(int pairs, std::uint64_t seed) {
  Rng rng(seed);
  Outcome out;
  for (int i = 0; i < pairs; ++i) {
    Universe u = randomUniverse(rng);
    auto a = randomLabel(rng, u, 30);
    auto b = randomLabel(rng, u, 30);
    double ab = similarity(a, b);
    double ba = similarity(b, a);
    if (std::abs(ab - ba) > 1e-12) out.fail(describe("asymmetric ", ab, " vs ", ba));
    if (!(ab >= 0.0 && ab <= 1.0)) out.fail(describe("out of range ", ab));
    if (std::abs(similarity(a, a) - 1.0) > 1e-12) out.fail("identity fails");
    double c = std::min(u.max, std::max(u.min, uniform(rng, u.min, u.max)));
    TriangularMask m{u, c - uniform(rng, 0.001, 1.0), c, c + uniform(rng, 0.001, 1.0)};
    double ma = similarity(shapeOf(m), shapeOf(a));
    double am = similarity(shapeOf(a), shapeOf(m));
    if (std::abs(ma - am) > 1e-12) out.fail("mask similarity asymmetric");
    if (!(ma >= 0.0 && ma <= 1.0)) out.fail("mask similarity out of range");
  }
  return out;
}

Outcome checkQuantifierMonotonicity(int samples, std::uint64_t seed) {
  Rng rng(seed);
  Outcome out;
  const Domain d = Domain::forBeams(16);
  for (int i = 0; i < samples; ++i) {
    double p1 = uniform(rng, 0.0, 1.0), p2 = uniform(rng, 0.0, 1.0);
    double q1 = uniform(rng, 10.0, 100.0), q2 = uniform(rng, 10.0, 100.0);
    if (p1 > p2) std::swap(p1, p2);
    if (q1 > q2) std::swap(q1, q2);
    if (quantifierDegree(p1, q1) > quantifierDegree(p2, q1)) out.fail("quantifier not monotone in p");
    if (quantifierDegree(p1, q2) > quantifierDegree(p1, q1)) out.fail("quantifier not antitone in q");

    SectorProposition prop;
    prop.distance = randomLabel(rng, d.distance, 20);
    prop.beams = randomBeamLabel(rng, d, 16);
    prop.q = q1;
    auto scan = randomScan(rng, 16);
    double base = qfpDof(prop, scan);
    SectorProposition stricter = prop;
    stricter.q = q2;
    if (qfpDof(stricter, scan) > base + 1e-15) out.fail(describe("qfp_dof grew with q: ", q1, " -> ", q2));
    // Moving one sector beam onto the label centre cannot lower the proportion.
    auto sector = sectorWeights(prop.beams, 16);
    auto better = scan;
    better[sector.beams[static_cast<std::size_t>(uniformInt(rng, 0, static_cast<int>(sector.beams.size()) - 1))]] =
        prop.distance.center();
    if (qfpDof(prop, better) < base - 1e-15) out.fail("qfp_dof dropped when p grew");
  }
  return out;
}

Outcome checkMaskToLabelOracle(int masks, std::uint64_t seed) {
  Rng rng(seed);
  Outcome out;
  MaskSearchOptions opt;
  for (int i = 0; i < masks; ++i) {
    Universe u = i % 2 == 0 ? Universe{"distance", 0.0, 1.5} : Universe{"beam", 0.0, 721.0};
    double w = u.width();
    double c = uniform(rng, u.min, u.max);
    double spread = w * std::pow(10.0, uniform(rng, -3.0, -0.3));
    TriangularMask m{u, c - spread * uniform(rng, 0.2, 1.0), c, c + spread * uniform(rng, 0.2, 1.0)};
    auto got = maskToLabel(m, opt);
    auto want = oracleMaskToLabel(m, opt);
    if (got == want) continue;
    // Accept exact ties in the oracle's own similarity.
    Trap mt = maskTrap(widenMask(m, opt));
    double sg = gridSimilarity(mt, labelTrap(u, got.granularity, got.index), opt.similarity.gridPoints);
    double sw = gridSimilarity(mt, labelTrap(u, want.granularity, want.index), opt.similarity.gridPoints);
    if (std::abs(sg - sw) > 1e-12) {
      out.fail(describe("mask (", m.left, ", ", m.center, ", ", m.right, ") got A^{", got.granularity, ",", got.index,
                        "} want A^{", want.granularity, ",", want.index, "}"));
    }
  }
  return out;
}

namespace {

Dataset randomClassDataset(Rng &rng, std::size_t n, std::size_t beams) {
  Dataset data = syntheticDataset(n, beams, rng());
  data.kind = KbKind::Classification;
  data.classCount = 3;
  for (auto &e : data.examples) e.classId = uniformInt(rng, 1, 3);
  return data;
}

std::vector<std::size_t> allIndices(const Dataset &data) {
  std::vector<std::size_t> idx(data.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return idx;
}

}  // namespace

Outcome checkOperatorValidity(int applications, std::uint64_t seed) {
  Rng rng(seed);
  Outcome out;
  LearnerConfig cfg;
  const Dataset reg = syntheticDataset(20, 16, rng());
  const Dataset cls = randomClassDataset(rng, 20, 16);
  const Domain &d = reg.domain;
  const auto uncovered = allIndices(reg);
  for (int i = 0; i < applications; ++i) {
    int op = i % 3;
    QFRule child;
    int classes = 0;
    if (op == 0) {
      bool classification = uniform(rng, 0.0, 1.0) < 0.5;
      classes = classification ? 3 : 0;
      auto a = randomRule(rng, d, classes);
      auto b = randomRule(rng, d, classes);
      child = crossover(a, b, d, cfg, rng);
    } else if (op == 1) {
      auto ind = evaluateRegression(randomRule(rng, d), reg, uncovered, cfg);
      child = mutateRegression(ind, reg, uncovered, cfg, rng);
    } else {
      classes = 3;
      std::vector<Individual> pop;
      for (int k = 0; k < 4; ++k) pop.push_back(evaluateClassification(randomRule(rng, d, 3), cls, uncovered, cfg));
      child = mutateClassification(pop[0], pop, cls, uncovered, cfg, rng);
    }
    auto v = validate(child, d, classes);
    if (!v) out.fail(describe("operator ", op, " produced an invalid rule: ", v.diagnostics.front()));
    if (child.sectors.empty()) out.fail(describe("operator ", op, " produced a rule without sectors"));
  }
  return out;
}

Outcome checkMutationDirection(int applications, std::uint64_t seed) {
  Rng rng(seed);
  Outcome out;
  LearnerConfig cfg;
  const Domain d = Domain::forBeams(16);
  int moved = 0;
  for (int i = 0; i < applications; ++i) {
    const QFRule original = randomRule(rng, d);
    auto scan = randomScan(rng, 16);
    double velocity = uniform(rng, 0.0, 0.5);
    bool generalize = i % 2 == 0;
    QFRule rule = original;
    auto changes = generalize ? generalizeAntecedent(rule, scan, velocity, d, cfg, rng)
                              : specializeAntecedent(rule, scan, velocity, d, cfg, rng);
    if (rule.propositionCount() != original.propositionCount()) {
      out.fail("mutation changed the number of propositions");
      continue;
    }
    for (std::size_t k = 0; k < rule.propositionCount(); ++k) {
      double before = propositionDegree(original, k, scan, velocity);
      double after = propositionDegree(rule, k, scan, velocity);
      if (generalize && after < before) out.fail(describe("generalisation lowered mu: ", before, " -> ", after));
      if (!generalize && after > before) out.fail(describe("specialisation raised mu: ", before, " -> ", after));
      if (after != before) ++moved;
    }
    for (const auto &c : changes) {
      if (std::abs(c.before - propositionDegree(original, c.proposition, scan, velocity)) > 1e-12 ||
          std::abs(c.after - propositionDegree(rule, c.proposition, scan, velocity)) > 1e-12) {
        out.fail("reported degrees disagree with the rule");
      }
    }
  }
  if (moved == 0) out.fail("no mutation changed any degree");
  return out;
}

Outcome checkRaycastOracle(int scenes, double tol, std::uint64_t seed) {
  Rng rng(seed);
  Outcome out;
  LaserConfig laser;
  for (int i = 0; i < scenes; ++i) {
    Environment env = randomScene(rng);
    Pose pose;
    do {
      pose = {uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5), uniform(rng, -std::numbers::pi, std::numbers::pi)};
    } while (nearestWall(env.segments, {pose.x, pose.y}).distance < 0.05);
    auto scan = raycast(env, pose, laser);
    for (std::size_t k = 0; k < laser.beams; ++k) {
      double want = oracleRay(env, pose, pose.theta + laser.angle(k), laser.maxRange);
      if (std::abs(scan[k] - want) > tol) {
        out.fail(describe("scene ", i, " beam ", k, ": ", scan[k], " vs ", want));
      }
    }
  }
  return out;
}

Outcome checkArcOracle(int cases, double tol, std::uint64_t seed) {
  Rng rng(seed);
  Outcome out;
  RobotLimits limits;
  for (int i = 0; i < cases; ++i) {
    RobotState s;
    s.pose = {uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0), uniform(rng, -std::numbers::pi, std::numbers::pi)};
    double v = uniform(rng, 0.0, limits.vMax);
    double w = i % 5 == 0 ? 0.0 : uniform(rng, -limits.omegaMax, limits.omegaMax);
    double dt = uniform(rng, 0.05, 1.0);
    auto next = step(s, {v, w}, dt, limits);
    auto want = oracleArc(s.pose, v, w, dt, 10000);
    double dth = std::abs(wrapAngle(next.pose.theta - want.theta));
    if (std::abs(next.pose.x - want.x) > tol || std::abs(next.pose.y - want.y) > tol || dth > tol) {
      out.fail(describe("v=", v, " w=", w, " dt=", dt, ": (", next.pose.x, ", ", next.pose.y, ") vs (", want.x, ", ",
                        want.y, ")"));
    }
  }
  return out;
}

Outcome checkRuleSelection(int instances, std::uint64_t seed) {
  Rng rng(seed);
  Outcome out;
  LearnerConfig cfg;
  for (int i = 0; i < instances; ++i) {
    Dataset data = syntheticDataset(30, 16, rng());
    KnowledgeBase kb;
    kb.domain = data.domain;
    int n = uniformInt(rng, 3, 8);
    for (int k = 0; k < n; ++k) {
      const auto &e = data.examples[static_cast<std::size_t>(uniformInt(rng, 0, 29))];
      QFRule r = initRule(data.domain, e, cfg);
      r.regression().vlin = uniformInt(rng, 1, data.domain.vlinGranularity);
      r.regression().vang = uniformInt(rng, 1, data.domain.vangGranularity);
      r.fitness = uniform(rng, 0.0, 1.0);
      kb.rules.push_back(r);
    }
    QFRule dead;
    dead.sectors.push_back({LinguisticLabel(data.domain.distance, 101, 1), LinguisticLabel(data.domain.beam, 1, 1), 100.0});
    dead.consequent = Consequent{1, 1};
    dead.fitness = 2.0;
    kb.rules.insert(kb.rules.begin() + uniformInt(rng, 0, n), dead);

    SelectOptions opt;
    opt.seed = rng();
    auto result = ilsSelect(kb, data, opt);
    double full = scoreMask(kb, RuleMask(kb.rules.size(), true), data);
    if (result.score > full + 1e-12) out.fail(describe("instance ", i, ": selected ", result.score, " > full ", full));
    for (std::size_t k = 0; k < kb.rules.size(); ++k) {
      if (!result.mask[k]) continue;
      bool fires = false;
      for (const auto &e : data.examples) fires = fires || ruleDof(kb.rules[k], e.distances, e.velocity) > 0.0;
      if (!fires) out.fail(describe("instance ", i, ": never-firing rule ", k, " kept"));
    }
  }
  return out;
}

}  // namespace testing
