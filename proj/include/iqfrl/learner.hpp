#pragma once

#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "iqfrl/config.hpp"
#include "iqfrl/dataset.hpp"
#include "iqfrl/inference.hpp"

namespace iqfrl {

using Rng = std::mt19937_64;

/// Index drawn with probability proportional to the weights; uniform when no weight is positive.
std::size_t sampleWeighted(std::span<const double> weights, Rng &rng);

/// Squared normalised distance between the consequent label centres and the example outputs.
double consequentError(const Domain &d, const Consequent &c, const Example &e);
double matchProbability(double error, double me);

/// Consequent whose labels have the largest membership for the given outputs.
Consequent argmaxConsequent(const Domain &d, double vlin, double vang);

/// Closeness of two consequents: 1 - sum_k (normalised centre difference)^2 / 2.
double closeness(const Domain &d, const Consequent &a, const Consequent &b);

/// Greedy left-to-right split of the scan into runs [first, last] whose standard deviation of
/// normalised (clamped) distances does not exceed sigmaBd.
std::vector<std::pair<std::size_t, std::size_t>> segmentScan(std::span<const double> scan, const Universe &distance,
                                                             double sigmaBd);

/// Granularity whose consecutive labels are sigmaV (fraction of the universe) apart.
int velocityGranularity(double sigmaV);

/// Antecedent describing one example: one sector per scan segment plus a velocity proposition.
QFRule initAntecedent(const Domain &d, const Example &e, const LearnerConfig &cfg);
/// initAntecedent plus the argmax-membership consequent.
QFRule initRule(const Domain &d, const Example &e, const LearnerConfig &cfg);

/// Finest label (granularity up to max(g_a, g_b) + extra) that is positive at both peaks and at
/// least as wide as the narrower input. Identical inputs merge to themselves.
LinguisticLabel mergeLabels(const LinguisticLabel &a, const LinguisticLabel &b, int extra,
                            const SimilarityOptions &opt = {});

/// Offspring of parent a receiving material from parent b (consequent stays a's).
QFRule crossover(const QFRule &a, const QFRule &b, const Domain &d, const LearnerConfig &cfg, Rng &rng);

/// Degree of proposition k of the rule (sectors first, then velocity) for one example.
double propositionDegree(const QFRule &rule, std::size_t k, std::span<const double> scan, double velocity);

/// Effect of one antecedent mutation on the proposition it touched.
struct PropositionChange {
  std::size_t proposition = 0;
  double before = 0.0;
  double after = 0.0;
};

/// Coarsens every proposition that does not cover the example until it does (or cannot move further).
std::vector<PropositionChange> generalizeAntecedent(QFRule &rule, std::span<const double> scan, double velocity,
                                                    const Domain &d, const LearnerConfig &cfg, Rng &rng);

/// Refines one random proposition until it no longer covers the example (or cannot move further).
std::vector<PropositionChange> specializeAntecedent(QFRule &rule, std::span<const double> scan, double velocity,
                                                    const Domain &d, const LearnerConfig &cfg, Rng &rng);

/// Unnormalised weights of moving an output label from alpha towards beta; entry i is label
/// min(alpha, beta) + i.
std::vector<double> consequentMutationWeights(int alpha, int beta);
int mutateLabelIndex(int alpha, int beta, Rng &rng);

struct Individual {
  QFRule rule;
  double fitness = 0.0;
  double confidence = 0.0;
  double support = 0.0;
  /// DOF per example of the evaluation set (see the learner in use).
  std::vector<double> dofs;
  /// Dataset indices of the examples the rule covers accurately.
  std::vector<std::size_t> covered;
};

/// Regression fitness of a rule over the uncovered examples (dataset indices).
Individual evaluateRegression(QFRule rule, const Dataset &data, std::span<const std::size_t> uncovered,
                              const LearnerConfig &cfg);

/// One regression mutation: generalise with probability = confidence, otherwise specialise, then
/// move the consequent towards the selected example.
QFRule mutateRegression(const Individual &ind, const Dataset &data, std::span<const std::size_t> uncovered,
                        const LearnerConfig &cfg, Rng &rng);

struct EpochReport {
  std::size_t epoch = 0;
  int iterations = 0;
  double bestFitness = 0.0;
  std::size_t removed = 0;
  std::size_t uncoveredAfter = 0;
  /// True when the best rule covered nothing accurately and an example was removed to ensure progress.
  bool forced = false;
};

using EpochObserver = std::function<void(const EpochReport &)>;

struct TrainResult {
  KnowledgeBase kb;
  std::vector<EpochReport> epochs;
  std::vector<std::size_t> uncovered;
};

/// Iterative rule learning for regression: one evolutionary run per rule until every example is covered.
TrainResult trainRegression(const Dataset &data, const LearnerConfig &cfg, const EpochObserver &observer = {});

/// Share of examples matched by some rule with DOF > DOF_min and P > P_min.
double matchRate(const KnowledgeBase &kb, const Dataset &data, const LearnerConfig &cfg);

namespace detail {

/// Hooks that specialise the shared epoch loop for regression or classification.
struct LearningTask {
  virtual ~LearningTask() = default;
  virtual QFRule seedRule(std::size_t example) const = 0;
  virtual Individual evaluate(QFRule rule, std::span<const std::size_t> uncovered) const = 0;
  virtual QFRule mutate(const Individual &ind, std::span<const Individual> population,
                        std::span<const std::size_t> uncovered, Rng &rng) const = 0;
  virtual double closeness(const QFRule &a, const QFRule &b) const = 0;
};

TrainResult runEpochs(const LearningTask &task, const Dataset &data, std::vector<std::size_t> uncovered,
                      KnowledgeBase kb, const LearnerConfig &cfg, const EpochObserver &observer);

}  // namespace detail

}  // namespace iqfrl
