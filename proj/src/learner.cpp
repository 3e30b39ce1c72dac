#include "iqfrl/learner.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <cmath>
#include <numeric>

namespace iqfrl {

std::size_t sampleWeighted(std::span<const double> weights, Rng &rng) {
  if (weights.empty()) throw std::invalid_argument("sampleWeighted: no candidates");
  double total = 0.0;
  for (double w : weights) total += std::max(0.0, w);
  if (!(total > 0.0) || !std::isfinite(total)) {
    return std::uniform_int_distribution<std::size_t>(0, weights.size() - 1)(rng);
  }
  double r = std::uniform_real_distribution<double>(0.0, total)(rng);
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last = i;
    if (r < acc) return i;
  }
  return last;
}

double consequentError(const Domain &d, const Consequent &c, const Example &e) {
  double a = (e.vlin - vlinCenter(d, c.vlin)) / d.vlin.width();
  double b = (e.vang - vangCenter(d, c.vang)) / d.vang.width();
  return a * a + b * b;
}

double matchProbability(double error, double me) { return std::exp(-error / me); }

Consequent argmaxConsequent(const Domain &d, double vlin, double vang) {
  return {argmaxLabel(d.vlin, d.vlinGranularity, vlin), argmaxLabel(d.vang, d.vangGranularity, vang)};
}

double closeness(const Domain &d, const Consequent &a, const Consequent &b) {
  double x = (vlinCenter(d, a.vlin) - vlinCenter(d, b.vlin)) / d.vlin.width();
  double y = (vangCenter(d, a.vang) - vangCenter(d, b.vang)) / d.vang.width();
  return 1.0 - (x * x + y * y) / 2.0;
}

std::vector<std::pair<std::size_t, std::size_t>> segmentScan(std::span<const double> scan, const Universe &distance,
                                                             double sigmaBd) {
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  const double limit = sigmaBd * sigmaBd;
  std::size_t first = 0;
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t h = 0; h < scan.size(); ++h) {
    double x = (distance.clamp(scan[h]) - distance.min) / distance.width();
    if (h == first) {
      mean = x;
      m2 = 0.0;
      continue;
    }
    double n = static_cast<double>(h - first + 1);
    double delta = x - mean;
    double nextMean = mean + delta / n;
    double nextM2 = m2 + delta * (x - nextMean);
    if (nextM2 / n > limit) {
      groups.emplace_back(first, h - 1);
      first = h;
      mean = x;
      m2 = 0.0;
    } else {
      mean = nextMean;
      m2 = nextM2;
    }
  }
  if (!scan.empty()) groups.emplace_back(first, scan.size() - 1);
  return groups;
}

int velocityGranularity(double sigmaV) { return static_cast<int>(std::lround(1.0 + 1.0 / sigmaV)); }

QFRule initAntecedent(const Domain &d, const Example &e, const LearnerConfig &cfg) {
  QFRule rule;
  for (auto [first, last] : segmentScan(e.distances, d.distance, cfg.sigmaBd)) {
    double n = static_cast<double>(last - first + 1);
    double mean = 0.0;
    for (std::size_t h = first; h <= last; ++h) mean += d.distance.clamp(e.distances[h]);
    mean /= n;
    double var = 0.0;
    for (std::size_t h = first; h <= last; ++h) {
      double dx = d.distance.clamp(e.distances[h]) - mean;
      var += dx * dx;
    }
    double sd = std::sqrt(var / n);

    SectorProposition s;
    s.distance = maskToLabel({d.distance, mean - sd, mean, mean + sd}, cfg.mask);
    double fb = static_cast<double>(first);
    double lb = static_cast<double>(last);
    double mid = 0.5 * (fb + lb);
    // At least one beam on each side keeps the label wide enough to contain a beam index.
    s.beams = maskToLabel({d.beam, std::min(fb, mid - 1.0), mid, std::max(lb, mid + 1.0)}, cfg.mask);
    double p = proportion(e.distances, s.distance, s.beams);
    s.q = std::clamp(std::floor(100.0 * p + 1e-9), d.quantifier.min, d.quantifier.max);
    rule.sectors.push_back(std::move(s));
  }
  int g = velocityGranularity(cfg.sigmaV);
  rule.velocity = VelocityProposition{LinguisticLabel(d.velocity, g, argmaxLabel(d.velocity, g, e.velocity))};
  return rule;
}

QFRule initRule(const Domain &d, const Example &e, const LearnerConfig &cfg) {
  QFRule rule = initAntecedent(d, e, cfg);
  rule.consequent = argmaxConsequent(d, e.vlin, e.vang);
  return rule;
}

LinguisticLabel mergeLabels(const LinguisticLabel &a, const LinguisticLabel &b, int extra,
                            const SimilarityOptions &opt) {
  if (a == b) return a;
  const Universe &u = a.universe;
  const double pa = a.center();
  const double pb = b.center();
  const double minWidth = std::min(a.supportWidth(), b.supportWidth());
  const double tol = 1e-9 * u.width();
  const int gmax = std::max(a.granularity, b.granularity) + extra;
  const auto shapeA = shapeOf(a);
  const auto shapeB = shapeOf(b);
  for (int g = gmax; g >= 2; --g) {
    double step = u.width() / (g - 1);
    // Centres strictly within one step of both peaks.
    double cLo = std::max(pa, pb) - step;
    double cHi = std::min(pa, pb) + step;
    int jlo = std::max(1, static_cast<int>(std::floor((cLo - u.min) / step)) + 1);
    int jhi = std::min(g, static_cast<int>(std::ceil((cHi - u.min) / step)) + 1);
    int best = 0;
    double bestScore = -1.0;
    for (int j = jlo; j <= jhi; ++j) {
      auto cand = shapeOf(u, g, j);
      double c = cand.peak();
      if (std::abs(u.clamp(pa) - c) >= step - tol || std::abs(u.clamp(pb) - c) >= step - tol) continue;
      if (cand.supportWidth() < minWidth - tol) continue;
      double score = similarity(cand, shapeA, opt) + similarity(cand, shapeB, opt);
      if (score > bestScore) {
        bestScore = score;
        best = j;
      }
    }
    if (best > 0) return LinguisticLabel(u, g, best);
  }
  return LinguisticLabel(u, 1, 1);
}

namespace {

enum class Component { Distance, Beam, Quantifier, Velocity };

int beamGranularityCap(const Domain &d, const LearnerConfig &cfg) {
  return std::min(cfg.mask.maxGranularity, static_cast<int>(d.beamCount()));
}

struct MoveKey {
  double min;
  double max;
  int granularity;
  int index;
  int target;
  int gridPoints;

  bool operator==(const MoveKey &) const = default;
};

struct MoveKeyHash {
  std::size_t operator()(const MoveKey &k) const {
    std::size_t h = std::hash<double>{}(k.min) ^ (std::hash<double>{}(k.max) << 1);
    for (int v : {k.granularity, k.index, k.target, k.gridPoints}) h = h * 1000003u ^ std::hash<int>{}(v);
    return h;
  }
};

// Neighbouring-granularity moves are pure functions of the label, so they are memoised.
int neighbourIndex(const LinguisticLabel &label, int target, const SimilarityOptions &opt) {
  thread_local std::unordered_map<MoveKey, int, MoveKeyHash> cache;
  MoveKey key{label.universe.min, label.universe.max, label.granularity, label.index, target, opt.gridPoints};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  int j = mostSimilarAt(label, target, opt).index;
  cache.emplace(key, j);
  return j;
}

bool moveLabel(LinguisticLabel &label, bool coarser, int cap, const SimilarityOptions &opt) {
  int g = label.granularity;
  if (coarser ? g <= 1 : g >= cap) return false;
  int target = coarser ? g - 1 : g + 1;
  label = LinguisticLabel(label.universe, target, neighbourIndex(label, target, opt));
  return true;
}

bool stepComponent(QFRule &rule, std::size_t k, Component c, bool coarser, const Domain &d,
                   const LearnerConfig &cfg) {
  const auto &opt = cfg.mask.similarity;
  switch (c) {
    case Component::Distance:
      return moveLabel(rule.sectors[k].distance, coarser, cfg.mask.maxGranularity, opt);
    case Component::Beam:
      return moveLabel(rule.sectors[k].beams, coarser, beamGranularityCap(d, cfg), opt);
    case Component::Quantifier: {
      double &q = rule.sectors[k].q;
      double next = coarser ? std::ceil(q) - 1.0 : std::floor(q) + 1.0;
      if (next < d.quantifier.min || next > d.quantifier.max) {
        next = std::clamp(next, d.quantifier.min, d.quantifier.max);
        if (next == q) return false;
      }
      q = next;
      return true;
    }
    case Component::Velocity:
      return moveLabel(rule.velocity->label, coarser, cfg.mask.maxGranularity, opt);
  }
  return false;
}

struct Candidate {
  QFRule rule;
  double mu = 0.0;
};

// Repeats one kind of move until the proposition reaches the target side of DOF_min.
Candidate runMove(const QFRule &start, std::size_t k, Component c, bool coarser, std::span<const double> scan,
                  double velocity, const Domain &d, const LearnerConfig &cfg) {
  Candidate out{start, propositionDegree(start, k, scan, velocity)};
  const int maxSteps = 4 * cfg.mask.maxGranularity + 200;
  for (int step = 0; step < maxSteps; ++step) {
    if (!stepComponent(out.rule, k, c, coarser, d, cfg)) break;
    out.mu = propositionDegree(out.rule, k, scan, velocity);
    if (coarser ? out.mu >= cfg.dofMin : out.mu < cfg.dofMin) break;
  }
  return out;
}

std::vector<Component> componentsOf(const QFRule &rule, std::size_t k) {
  if (k < rule.sectors.size()) return {Component::Distance, Component::Beam, Component::Quantifier};
  return {Component::Velocity};
}

// Applies one weighted choice among the candidate moves; returns false when none is admissible.
bool applyMove(QFRule &rule, std::size_t k, bool coarser, std::span<const double> scan, double velocity,
               const Domain &d, const LearnerConfig &cfg, Rng &rng, PropositionChange &change) {
  double start = propositionDegree(rule, k, scan, velocity);
  std::vector<Candidate> cands;
  for (Component c : componentsOf(rule, k)) {
    Candidate cand = runMove(rule, k, c, coarser, scan, velocity, d, cfg);
    if (cand.rule == rule) continue;
    if (coarser ? cand.mu < start : cand.mu > start) continue;
    cands.push_back(std::move(cand));
  }
  if (cands.empty()) return false;
  std::vector<double> weights;
  for (const auto &cand : cands) weights.push_back(coarser ? cand.mu : 1.0 / std::max(cand.mu, 1e-9));
  auto &chosen = cands[sampleWeighted(weights, rng)];
  rule = std::move(chosen.rule);
  change = {k, start, chosen.mu};
  return true;
}

}  // namespace

double propositionDegree(const QFRule &rule, std::size_t k, std::span<const double> scan, double velocity) {
  if (k < rule.sectors.size()) return qfpDof(rule.sectors[k], scan);
  return rule.velocity ? velocityDof(*rule.velocity, velocity) : 1.0;
}

std::vector<PropositionChange> generalizeAntecedent(QFRule &rule, std::span<const double> scan, double velocity,
                                                    const Domain &d, const LearnerConfig &cfg, Rng &rng) {
  std::vector<PropositionChange> changes;
  for (std::size_t k = 0; k < rule.propositionCount(); ++k) {
    if (propositionDegree(rule, k, scan, velocity) >= cfg.dofMin) continue;
    PropositionChange change;
    if (applyMove(rule, k, true, scan, velocity, d, cfg, rng, change)) changes.push_back(change);
  }
  return changes;
}

std::vector<PropositionChange> specializeAntecedent(QFRule &rule, std::span<const double> scan, double velocity,
                                                    const Domain &d, const LearnerConfig &cfg, Rng &rng) {
  std::vector<PropositionChange> changes;
  std::size_t n = rule.propositionCount();
  if (n == 0) return changes;
  std::size_t k = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  PropositionChange change;
  if (applyMove(rule, k, false, scan, velocity, d, cfg, rng, change)) changes.push_back(change);
  return changes;
}

std::vector<double> consequentMutationWeights(int alpha, int beta) {
  int lo = std::min(alpha, beta);
  int hi = std::max(alpha, beta);
  double span = std::abs(alpha - beta) + 1.0;
  std::vector<double> w;
  for (int g = lo; g <= hi; ++g) w.push_back(1.0 - std::abs(alpha - g) / span);
  return w;
}

int mutateLabelIndex(int alpha, int beta, Rng &rng) {
  auto w = consequentMutationWeights(alpha, beta);
  return std::min(alpha, beta) + static_cast<int>(sampleWeighted(w, rng));
}

QFRule crossover(const QFRule &a, const QFRule &b, const Domain &d, const LearnerConfig &cfg, Rng &rng) {
  QFRule child = a;
  const auto &opt = cfg.mask.similarity;
  int gmax = 1;
  for (const auto *r : {&a, &b}) {
    for (const auto &s : r->sectors) gmax = std::max(gmax, s.beams.granularity);
  }
  const bool anyVelocity = a.velocity.has_value() || b.velocity.has_value();
  const int na = gmax + 1;
  int m = 0;
  do {
    m = std::uniform_int_distribution<int>(1, na)(rng);
  } while (m == na && !anyVelocity);

  if (m == na) {
    if (!a.velocity) {
      child.velocity = b.velocity;
    } else if (!b.velocity) {
      child.velocity.reset();
    } else {
      const auto &la = a.velocity->label;
      const auto &lb = b.velocity->label;
      if (la == lb || !overlaps(shapeOf(la), shapeOf(lb))) {
        child.velocity.reset();
      } else {
        child.velocity = VelocityProposition{mergeLabels(la, lb, cfg.mergeExtraGranularity, opt)};
      }
    }
    return child;
  }

  const auto reference = shapeOf(d.beam, gmax, m);
  auto closest = [&](const QFRule &r) {
    std::size_t best = 0;
    double bestSim = -1.0;
    for (std::size_t k = 0; k < r.sectors.size(); ++k) {
      double s = similarity(shapeOf(r.sectors[k].beams), reference, opt);
      if (s > bestSim) {
        bestSim = s;
        best = k;
      }
    }
    return best;
  };
  std::size_t ka = closest(a);
  const auto &sa = a.sectors[ka];
  const auto &sb = b.sectors[closest(b)];
  bool zero = !overlaps(shapeOf(sa.beams), shapeOf(sb.beams)) || !overlaps(shapeOf(sa.distance), shapeOf(sb.distance));
  bool total = sa.beams == sb.beams && sa.distance == sb.distance;
  if (zero || total) {
    if (child.sectors.size() > 1) child.sectors.erase(child.sectors.begin() + static_cast<std::ptrdiff_t>(ka));
    return child;
  }
  auto &sc = child.sectors[ka];
  const int finest = std::max(sa.beams.granularity, sb.beams.granularity);
  const int beamExtra = std::clamp(beamGranularityCap(d, cfg) - finest, 0, cfg.mergeExtraGranularity);
  sc.beams = mergeLabels(sa.beams, sb.beams, beamExtra, opt);
  sc.distance = mergeLabels(sa.distance, sb.distance, cfg.mergeExtraGranularity, opt);
  sc.q = std::min(sa.q, sb.q);
  return child;
}

Individual evaluateRegression(QFRule rule, const Dataset &data, std::span<const std::size_t> uncovered,
                              const LearnerConfig &cfg) {
  Individual ind;
  CompiledRule compiled(rule, data.domain.beamCount());
  const auto &c = rule.regression();
  ind.dofs.resize(uncovered.size());
  double sum = 0.0;
  double rho = 0.0;
  for (std::size_t i = 0; i < uncovered.size(); ++i) {
    const auto &e = data.examples[uncovered[i]];
    double dof = compiled.dof(e.distances, e.velocity);
    ind.dofs[i] = dof;
    if (dof <= 0.0) continue;
    sum += dof;
    if (dof > cfg.dofMin && matchProbability(consequentError(data.domain, c, e), cfg.me) > cfg.pMin) {
      rho += dof;
      ind.covered.push_back(uncovered[i]);
    }
  }
  ind.confidence = sum > 0.0 ? rho / sum : 0.0;
  ind.support = uncovered.empty() ? 0.0 : rho / static_cast<double>(uncovered.size());
  ind.fitness = cfg.alphaF * ind.confidence + (1.0 - cfg.alphaF) * ind.support;
  rule.fitness = ind.fitness;
  ind.rule = std::move(rule);
  return ind;
}

QFRule mutateRegression(const Individual &ind, const Dataset &data, std::span<const std::size_t> uncovered,
                        const LearnerConfig &cfg, Rng &rng) {
  const Domain &d = data.domain;
  QFRule rule = ind.rule;
  const Consequent c = rule.regression();
  auto prob = [&](std::size_t i) {
    return matchProbability(consequentError(d, c, data.examples[uncovered[i]]), cfg.me);
  };
  bool generalize = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < std::clamp(ind.confidence, 0.0, 1.0);

  std::vector<std::size_t> pool;
  std::vector<double> weights;
  for (std::size_t i = 0; i < uncovered.size(); ++i) {
    bool uncov = ind.dofs[i] < cfg.dofMin;
    if (uncov != generalize) continue;
    pool.push_back(i);
    weights.push_back(generalize ? prob(i) : 1.0 - prob(i));
  }
  if (pool.empty()) return rule;
  const Example &sel = data.examples[uncovered[pool[sampleWeighted(weights, rng)]]];

  const Example *target = &sel;
  if (generalize) {
    generalizeAntecedent(rule, sel.distances, sel.velocity, d, cfg, rng);
  } else {
    specializeAntecedent(rule, sel.distances, sel.velocity, d, cfg, rng);
    std::size_t pick = std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng);
    target = &data.examples[uncovered[pool[pick]]];
  }
  Consequent beta = argmaxConsequent(d, target->vlin, target->vang);
  auto &out = rule.regression();
  out.vlin = mutateLabelIndex(c.vlin, beta.vlin, rng);
  out.vang = mutateLabelIndex(c.vang, beta.vang, rng);
  return rule;
}

namespace detail {

namespace {

void insertUnique(std::vector<Individual> &pop, Individual ind) {
  for (const auto &p : pop) {
    if (p.rule == ind.rule) return;
  }
  pop.push_back(std::move(ind));
}

void truncate(std::vector<Individual> &pop, std::size_t n) {
  std::stable_sort(pop.begin(), pop.end(), [](const Individual &a, const Individual &b) { return a.fitness > b.fitness; });
  if (pop.size() > n) pop.resize(n);
}

std::size_t tournament(const std::vector<Individual> &pop, Rng &rng) {
  std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
  std::size_t i = pick(rng);
  std::size_t j = pick(rng);
  return pop[j].fitness > pop[i].fitness ? j : i;
}

}  // namespace

TrainResult runEpochs(const LearningTask &task, const Dataset &data, std::vector<std::size_t> uncovered,
                      KnowledgeBase kb, const LearnerConfig &cfg, const EpochObserver &observer) {
  checkConfig(cfg);
  Rng rng(cfg.seed);
  TrainResult result;
  std::size_t epoch = 0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::optional<QFRule>> seedCache(data.size());
  auto seedRule = [&](std::size_t s) -> const QFRule & {
    if (!seedCache[s]) seedCache[s] = task.seedRule(s);
    return *seedCache[s];
  };
  while (!uncovered.empty() && (cfg.maxEpochs == 0 || epoch < static_cast<std::size_t>(cfg.maxEpochs))) {
    ++epoch;
    std::vector<std::size_t> seeds = uncovered;
    if (seeds.size() > static_cast<std::size_t>(cfg.popMax)) {
      std::shuffle(seeds.begin(), seeds.end(), rng);
      seeds.resize(static_cast<std::size_t>(cfg.popMax));
    }
    std::vector<Individual> pop;
    for (std::size_t s : seeds) insertUnique(pop, task.evaluate(seedRule(s), uncovered));
    truncate(pop, static_cast<std::size_t>(cfg.popMax));

    QFRule best = pop.front().rule;
    int it = 0;
    int equal = 0;
    while (true) {
      std::vector<Individual> offspring;
      if (pop.size() >= 2) {
        for (int pair = 0; pair < cfg.offspringPairs; ++pair) {
          std::size_t i1 = tournament(pop, rng);
          std::vector<double> w(pop.size());
          for (std::size_t k = 0; k < pop.size(); ++k) {
            w[k] = k == i1 ? 0.0 : std::max(0.0, task.closeness(pop[i1].rule, pop[k].rule));
          }
          std::size_t i2 = sampleWeighted(w, rng);
          if (i2 == i1) i2 = (i1 + 1) % pop.size();
          const auto &p1 = pop[i1];
          const auto &p2 = pop[i2];
          QFRule c1;
          QFRule c2;
          if (unit(rng) < cfg.pCross) {
            c1 = crossover(p1.rule, p2.rule, data.domain, cfg, rng);
            c2 = crossover(p2.rule, p1.rule, data.domain, cfg, rng);
          } else {
            c1 = task.mutate(p1, pop, uncovered, rng);
            c2 = task.mutate(p2, pop, uncovered, rng);
          }
          offspring.push_back(task.evaluate(std::move(c1), uncovered));
          offspring.push_back(task.evaluate(std::move(c2), uncovered));
        }
      } else {
        offspring.push_back(task.evaluate(task.mutate(pop.front(), pop, uncovered, rng), uncovered));
      }
      for (auto &o : offspring) insertUnique(pop, std::move(o));
      truncate(pop, static_cast<std::size_t>(cfg.popMax));
      ++it;
      if (pop.front().rule == best) {
        ++equal;
      } else {
        best = pop.front().rule;
        equal = 0;
      }
      if ((it >= cfg.itMin && equal >= cfg.itCheck) || it >= cfg.itMax) break;
    }

    Individual &winner = pop.front();
    EpochReport report;
    report.epoch = epoch;
    report.iterations = it;
    report.bestFitness = winner.fitness;
    std::vector<std::size_t> removed = winner.covered;
    if (removed.empty()) {
      report.forced = true;
      CompiledRule compiled(winner.rule, data.domain.beamCount());
      std::size_t pick = uncovered.front();
      double bestDof = -1.0;
      for (std::size_t idx : uncovered) {
        double dof = compiled.dof(data.examples[idx].distances, data.examples[idx].velocity);
        if (dof > bestDof) {
          bestDof = dof;
          pick = idx;
        }
      }
      removed.push_back(pick);
    }
    std::sort(removed.begin(), removed.end());
    std::vector<std::size_t> rest;
    std::set_difference(uncovered.begin(), uncovered.end(), removed.begin(), removed.end(), std::back_inserter(rest));
    report.removed = uncovered.size() - rest.size();
    uncovered = std::move(rest);
    report.uncoveredAfter = uncovered.size();
    kb.rules.push_back(winner.rule);
    result.epochs.push_back(report);
    if (observer) observer(report);
  }
  result.kb = std::move(kb);
  result.uncovered = std::move(uncovered);
  return result;
}

}  // namespace detail

namespace {

class RegressionTask : public detail::LearningTask {
 public:
  RegressionTask(const Dataset &data, const LearnerConfig &cfg) : _data(data), _cfg(cfg) {}

  QFRule seedRule(std::size_t example) const override { return initRule(_data.domain, _data.examples[example], _cfg); }

  Individual evaluate(QFRule rule, std::span<const std::size_t> uncovered) const override {
    return evaluateRegression(std::move(rule), _data, uncovered, _cfg);
  }

  QFRule mutate(const Individual &ind, std::span<const Individual>, std::span<const std::size_t> uncovered,
                Rng &rng) const override {
    return mutateRegression(ind, _data, uncovered, _cfg, rng);
  }

  double closeness(const QFRule &a, const QFRule &b) const override {
    return iqfrl::closeness(_data.domain, a.regression(), b.regression());
  }

 private:
  const Dataset &_data;
  const LearnerConfig &_cfg;
};

}  // namespace

TrainResult trainRegression(const Dataset &data, const LearnerConfig &cfg, const EpochObserver &observer) {
  if (data.kind != KbKind::Regression) throw std::invalid_argument("regression training needs a regression dataset");
  if (data.empty()) throw std::invalid_argument("cannot train on an empty dataset");
  std::vector<std::size_t> uncovered(data.size());
  std::iota(uncovered.begin(), uncovered.end(), std::size_t{0});
  KnowledgeBase kb;
  kb.domain = data.domain;
  kb.kind = KbKind::Regression;
  RegressionTask task(data, cfg);
  return detail::runEpochs(task, data, std::move(uncovered), std::move(kb), cfg, observer);
}

double matchRate(const KnowledgeBase &kb, const Dataset &data, const LearnerConfig &cfg) {
  if (data.empty()) return 1.0;
  CompiledKnowledgeBase compiled(kb);
  std::size_t matched = 0;
  for (const auto &e : data.examples) {
    auto dofs = compiled.dofs(e.distances, e.velocity);
    for (std::size_t k = 0; k < dofs.size(); ++k) {
      if (dofs[k] > cfg.dofMin &&
          matchProbability(consequentError(kb.domain, kb.rules[k].regression(), e), cfg.me) > cfg.pMin) {
        ++matched;
        break;
      }
    }
  }
  return static_cast<double>(matched) / static_cast<double>(data.size());
}

}  // namespace iqfrl
