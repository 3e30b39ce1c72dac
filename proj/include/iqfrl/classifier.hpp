#pragma once

#include <optional>
#include <span>
#include <vector>

#include "iqfrl/learner.hpp"

namespace iqfrl {

struct ClassFitnessStats {
  std::size_t tpCount = 0;
  std::size_t fpCount = 0;
  std::size_t fnCount = 0;
  double tpd = 0.0;
  double fpd = 0.0;
  double tp = 0.0;
  double fp = 0.0;
  double confidence = 1.0;
  double support = 0.0;
  double fitness = 0.0;
};

/// tp/fn are counted over the examples in scope (flag per dataset index), fp over every example.
ClassFitnessStats classFitness(int ruleClass, std::span<const double> dofs, const Dataset &data,
                               const std::vector<bool> &inScope);

/// Classification individual: DOFs over the whole dataset.
Individual evaluateClassification(QFRule rule, const Dataset &data, std::span<const std::size_t> uncovered,
                                  const LearnerConfig &cfg);

/// Generalisation weight of one example: 1 - sum_j DOF_j conf_j / sum_j DOF_j (1 when nothing covers it).
double generalizationWeight(std::span<const Individual> population, std::size_t example);

/// Probability of switching the consequent to each class (index c-1); uniform when the rule fires nowhere.
std::vector<double> classDistribution(std::span<const double> dofs, const Dataset &data);

QFRule mutateClassification(const Individual &ind, std::span<const Individual> population, const Dataset &data,
                            std::span<const std::size_t> uncovered, const LearnerConfig &cfg, Rng &rng);

/// Iterative rule learning of a classifier. Examples of the default class seed no rules.
TrainResult trainClassifier(const Dataset &data, const LearnerConfig &cfg, const EpochObserver &observer = {});

/// Class of the rule with the largest DOF (earliest rule on ties); the default class when none fires.
int classify(const CompiledKnowledgeBase &kb, std::span<const double> scan, double velocity);
int classify(const KnowledgeBase &kb, std::span<const double> scan, double velocity);

struct ClassMetrics {
  /// counts[actual-1][predicted-1]; fractional entries are allowed.
  std::vector<std::vector<double>> counts;
  double accuracy = 0.0;
  /// Empty when kappa is undefined (chance agreement equal to 1).
  std::optional<double> kappa;
};

ClassMetrics metricsFromConfusion(std::vector<std::vector<double>> counts);
ClassMetrics confusionAndKappa(const KnowledgeBase &kb, const Dataset &data);

}  // namespace iqfrl
