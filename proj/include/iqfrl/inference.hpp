#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "iqfrl/rule.hpp"

namespace iqfrl {

struct Command {
  double vlin = 0.0;
  double vang = 0.0;

  bool operator==(const Command &) const = default;
};

class UncoveredInputError : public std::runtime_error {
 public:
  UncoveredInputError() : std::runtime_error("uncovered input: no rule fires") {}
};

/// Degree of fulfillment of a quantified sector proposition for a scan.
double qfpDof(const SectorProposition &prop, std::span<const double> scan);
double velocityDof(const VelocityProposition &prop, double velocity);

/// A rule with its sector beam weights precomputed for a fixed scan length.
class CompiledRule {
 public:
  CompiledRule(QFRule rule, std::size_t beamCount);

  /// Minimum over all antecedent propositions; stops early at 0.
  double dof(std::span<const double> scan, double velocity) const;

  /// Degree of proposition k: sectors first, then the velocity proposition (k == sectors.size()).
  double propositionDof(std::size_t k, std::span<const double> scan, double velocity) const;

  const QFRule &rule() const { return _rule; }

 private:
  QFRule _rule;
  std::vector<SectorWeights> _sectors;
};

double ruleDof(const QFRule &rule, std::span<const double> scan, double velocity);

/// Knowledge base prepared for repeated evaluation.
class CompiledKnowledgeBase {
 public:
  explicit CompiledKnowledgeBase(const KnowledgeBase &kb);

  std::vector<double> dofs(std::span<const double> scan, double velocity) const;

  /// Weighted average of consequent centres; empty when no rule fires.
  std::optional<Command> tryInfer(std::span<const double> scan, double velocity) const;
  Command infer(std::span<const double> scan, double velocity) const;

  const KnowledgeBase &kb() const { return _kb; }
  std::size_t size() const { return _rules.size(); }
  const CompiledRule &rule(std::size_t k) const { return _rules[k]; }

 private:
  KnowledgeBase _kb;
  std::vector<CompiledRule> _rules;
};

/// DOF-weighted average of the consequent centres. Throws UncoveredInputError when every DOF is 0.
Command defuzzify(const Domain &domain, std::span<const QFRule> rules, std::span<const double> dofs);

Command infer(const KnowledgeBase &kb, std::span<const double> scan, double velocity);

}  // namespace iqfrl
