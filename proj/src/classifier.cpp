#include "iqfrl/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iqfrl {

ClassFitnessStats classFitness(int ruleClass, std::span<const double> dofs, const Dataset &data,
                               const std::vector<bool> &inScope) {
  ClassFitnessStats s;
  std::size_t classTotal = 0;
  for (std::size_t l = 0; l < data.size(); ++l) {
    int c = data.examples[l].classId;
    double dof = dofs[l];
    if (c == ruleClass) {
      if (!inScope[l]) continue;
      ++classTotal;
      if (dof > 0.0) {
        ++s.tpCount;
        s.tpd += dof;
      }
    } else if (dof > 0.0) {
      ++s.fpCount;
      s.fpd += dof;
    }
  }
  s.fnCount = classTotal - s.tpCount;
  s.tp = s.tpCount > 0 ? static_cast<double>(s.tpCount) + s.tpd / static_cast<double>(s.tpCount) : 0.0;
  s.fp = s.fpCount > 0 ? static_cast<double>(s.fpCount) + s.fpd / static_cast<double>(s.fpCount) : 0.0;
  s.confidence = std::pow(10.0, -s.fp);
  double denom = s.tp + static_cast<double>(s.fnCount);
  s.support = denom > 0.0 ? s.tp / denom : 0.0;
  s.fitness = s.confidence * s.support;
  return s;
}

namespace {

std::vector<bool> scopeMask(std::size_t n, std::span<const std::size_t> uncovered) {
  std::vector<bool> mask(n, false);
  for (std::size_t i : uncovered) mask[i] = true;
  return mask;
}

}  // namespace

Individual evaluateClassification(QFRule rule, const Dataset &data, std::span<const std::size_t> uncovered,
                                  const LearnerConfig &cfg) {
  Individual ind;
  CompiledRule compiled(rule, data.domain.beamCount());
  ind.dofs.resize(data.size());
  for (std::size_t l = 0; l < data.size(); ++l) {
    ind.dofs[l] = compiled.dof(data.examples[l].distances, data.examples[l].velocity);
  }
  int c = rule.classId();
  auto stats = classFitness(c, ind.dofs, data, scopeMask(data.size(), uncovered));
  ind.confidence = stats.confidence;
  ind.support = stats.support;
  ind.fitness = stats.fitness;
  for (std::size_t l : uncovered) {
    if (data.examples[l].classId == c && ind.dofs[l] > cfg.dofMin) ind.covered.push_back(l);
  }
  rule.fitness = ind.fitness;
  ind.rule = std::move(rule);
  return ind;
}

double generalizationWeight(std::span<const Individual> population, std::size_t example) {
  double num = 0.0;
  double den = 0.0;
  for (const auto &ind : population) {
    double dof = ind.dofs[example];
    num += dof * ind.confidence;
    den += dof;
  }
  return den > 0.0 ? 1.0 - num / den : 1.0;
}

std::vector<double> classDistribution(std::span<const double> dofs, const Dataset &data) {
  std::vector<double> p(static_cast<std::size_t>(data.classCount), 0.0);
  double total = 0.0;
  for (std::size_t l = 0; l < data.size(); ++l) {
    if (dofs[l] <= 0.0) continue;
    p[static_cast<std::size_t>(data.examples[l].classId - 1)] += dofs[l];
    total += dofs[l];
  }
  for (auto &x : p) x = total > 0.0 ? x / total : 1.0 / static_cast<double>(p.size());
  return p;
}

QFRule mutateClassification(const Individual &ind, std::span<const Individual> population, const Dataset &data,
                            std::span<const std::size_t> uncovered, const LearnerConfig &cfg, Rng &rng) {
  const Domain &d = data.domain;
  QFRule rule = ind.rule;
  bool generalize = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < std::clamp(ind.confidence, 0.0, 1.0);

  std::vector<std::size_t> pool;
  std::vector<double> weights;
  if (generalize) {
    for (std::size_t l : uncovered) {
      if (ind.dofs[l] >= cfg.dofMin) continue;
      pool.push_back(l);
      weights.push_back(generalizationWeight(population, l));
    }
  } else {
    for (std::size_t l = 0; l < data.size(); ++l) {
      if (ind.dofs[l] < cfg.dofMin) continue;
      pool.push_back(l);
      weights.push_back(1.0 - ind.dofs[l]);
    }
  }
  if (pool.empty()) return rule;
  const Example &sel = data.examples[pool[sampleWeighted(weights, rng)]];
  if (generalize) {
    generalizeAntecedent(rule, sel.distances, sel.velocity, d, cfg, rng);
  } else {
    specializeAntecedent(rule, sel.distances, sel.velocity, d, cfg, rng);
  }
  auto dist = classDistribution(ind.dofs, data);
  rule.consequent = ClassConsequent{static_cast<int>(sampleWeighted(dist, rng)) + 1};
  return rule;
}

namespace {

class ClassificationTask : public detail::LearningTask {
 public:
  ClassificationTask(const Dataset &data, const LearnerConfig &cfg) : _data(data), _cfg(cfg) {}

  QFRule seedRule(std::size_t example) const override {
    const auto &e = _data.examples[example];
    QFRule rule = initAntecedent(_data.domain, e, _cfg);
    rule.consequent = ClassConsequent{e.classId};
    return rule;
  }

  Individual evaluate(QFRule rule, std::span<const std::size_t> uncovered) const override {
    return evaluateClassification(std::move(rule), _data, uncovered, _cfg);
  }

  QFRule mutate(const Individual &ind, std::span<const Individual> population, std::span<const std::size_t> uncovered,
                Rng &rng) const override {
    return mutateClassification(ind, population, _data, uncovered, _cfg, rng);
  }

  double closeness(const QFRule &a, const QFRule &b) const override { return a.classId() == b.classId() ? 1.0 : 0.0; }

 private:
  const Dataset &_data;
  const LearnerConfig &_cfg;
};

}  // namespace

TrainResult trainClassifier(const Dataset &data, const LearnerConfig &cfg, const EpochObserver &observer) {
  if (data.kind != KbKind::Classification) {
    throw std::invalid_argument("classifier training needs a classification dataset");
  }
  if (cfg.defaultClass > data.classCount) throw std::invalid_argument("default class outside the class range");
  std::vector<std::size_t> uncovered;
  for (std::size_t l = 0; l < data.size(); ++l) {
    if (data.examples[l].classId != cfg.defaultClass) uncovered.push_back(l);
  }
  KnowledgeBase kb;
  kb.domain = data.domain;
  kb.kind = KbKind::Classification;
  kb.classCount = data.classCount;
  kb.defaultClass = cfg.defaultClass;
  ClassificationTask task(data, cfg);
  return detail::runEpochs(task, data, std::move(uncovered), std::move(kb), cfg, observer);
}

int classify(const CompiledKnowledgeBase &kb, std::span<const double> scan, double velocity) {
  int best = kb.kb().defaultClass;
  double bestDof = 0.0;
  for (std::size_t k = 0; k < kb.size(); ++k) {
    double dof = kb.rule(k).dof(scan, velocity);
    if (dof > bestDof) {
      bestDof = dof;
      best = kb.rule(k).rule().classId();
    }
  }
  return best;
}

int classify(const KnowledgeBase &kb, std::span<const double> scan, double velocity) {
  return classify(CompiledKnowledgeBase(kb), scan, velocity);
}

ClassMetrics metricsFromConfusion(std::vector<std::vector<double>> counts) {
  ClassMetrics m;
  std::size_t n = counts.size();
  double total = 0.0;
  double diag = 0.0;
  std::vector<double> rows(n, 0.0);
  std::vector<double> cols(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (counts[i].size() != n) throw std::invalid_argument("confusion matrix must be square");
    for (std::size_t j = 0; j < n; ++j) {
      total += counts[i][j];
      rows[i] += counts[i][j];
      cols[j] += counts[i][j];
    }
    diag += counts[i][i];
  }
  m.counts = std::move(counts);
  if (total <= 0.0) return m;
  m.accuracy = diag / total;
  double pe = 0.0;
  for (std::size_t i = 0; i < n; ++i) pe += (rows[i] / total) * (cols[i] / total);
  if (pe < 1.0) m.kappa = (m.accuracy - pe) / (1.0 - pe);
  return m;
}

ClassMetrics confusionAndKappa(const KnowledgeBase &kb, const Dataset &data) {
  std::size_t n = static_cast<std::size_t>(std::max(kb.classCount, data.classCount));
  std::vector<std::vector<double>> counts(n, std::vector<double>(n, 0.0));
  CompiledKnowledgeBase compiled(kb);
  for (const auto &e : data.examples) {
    int predicted = classify(compiled, e.distances, e.velocity);
    counts[static_cast<std::size_t>(e.classId - 1)][static_cast<std::size_t>(predicted - 1)] += 1.0;
  }
  return metricsFromConfusion(std::move(counts));
}

}  // namespace iqfrl
