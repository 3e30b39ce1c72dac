#pragma once

#include <cstdint>
#include <vector>

#include "iqfrl/dataset.hpp"
#include "iqfrl/rule.hpp"

namespace iqfrl {

/// Bit k selects rule k of the knowledge base.
using RuleMask = std::vector<bool>;

/// Rule positions sorted by decreasing fitness (stable).
std::vector<std::size_t> rankByFitness(const KnowledgeBase &kb);

/// Masks selecting the top-1, top-2, ... rules of the ranking.
std::vector<RuleMask> prefixCandidates(const KnowledgeBase &kb);

/// Per-example, per-rule DOFs of a regression KB, computed once and reused for every mask.
class MaskScorer {
 public:
  /// lambda < 0 selects the default penalty: 4 times the largest single-example error (= 8).
  MaskScorer(const KnowledgeBase &kb, const Dataset &data, double lambda = -1.0);

  /// Mean squared normalised output error, with lambda charged for every example no selected rule fires on.
  double score(const RuleMask &mask) const;
  double lambda() const { return _lambda; }
  std::size_t ruleCount() const { return _centers.size(); }

 private:
  const Dataset &_data;
  double _lambda;
  std::vector<std::pair<double, double>> _centers;
  std::vector<std::vector<std::pair<std::size_t, double>>> _firing;
};

double scoreMask(const KnowledgeBase &kb, const RuleMask &mask, const Dataset &data, double lambda = -1.0);

struct SelectOptions {
  int radius = 1;
  int maxRestarts = 2;
  std::uint64_t seed = 1;
  double lambda = -1.0;
};

struct SelectResult {
  KnowledgeBase kb;
  RuleMask mask;
  double score = 0.0;
  double fullScore = 0.0;
};

/// Iterated local search over rule subsets, started from the best prefix candidate. Equal scores
/// (within 1e-12) prefer fewer rules.
SelectResult ilsSelect(const KnowledgeBase &kb, const Dataset &data, const SelectOptions &opt = {});

/// Knowledge base restricted to the masked rules (order preserved).
KnowledgeBase applyMask(const KnowledgeBase &kb, const RuleMask &mask);

}  // namespace iqfrl
