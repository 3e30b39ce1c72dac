#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "iqfrl/fuzzy.hpp"

namespace iqfrl {

/// Universes of every variable of a learning problem plus the output partitions.
struct Domain {
  Universe distance{"distance", 0.0, 1.5};
  Universe beam{"beam", 0.0, 721.0};
  Universe quantifier{"quantifier", 10.0, 100.0};
  Universe velocity{"velocity", 0.0, 0.5};
  Universe vlin{"vlin", 0.0, 0.5};
  Universe vang{"vang", -std::numbers::pi / 4.0, std::numbers::pi / 4.0};
  int vlinGranularity = 9;
  int vangGranularity = 19;

  std::size_t beamCount() const { return static_cast<std::size_t>(beam.max - beam.min) + 1; }

  /// Default universes with a beam universe [0, n-1].
  static Domain forBeams(std::size_t n);

  bool operator==(const Domain &) const = default;
};

/// "d(h) is F_d in Q of F_b".
struct SectorProposition {
  LinguisticLabel distance;
  LinguisticLabel beams;
  double q = 100.0;

  bool operator==(const SectorProposition &) const = default;
};

/// "velocity is F_v".
struct VelocityProposition {
  LinguisticLabel label;

  bool operator==(const VelocityProposition &) const = default;
};

/// Output labels (1-based) into the vlin and vang partitions.
struct Consequent {
  int vlin = 1;
  int vang = 1;

  bool operator==(const Consequent &) const = default;
};

struct ClassConsequent {
  int classId = 1;

  bool operator==(const ClassConsequent &) const = default;
};

struct QFRule {
  std::vector<SectorProposition> sectors;
  std::optional<VelocityProposition> velocity;
  std::variant<Consequent, ClassConsequent> consequent;
  /// Fitness the rule had when it was learned; used to rank rules for subset selection.
  double fitness = 0.0;

  bool isClassification() const { return std::holds_alternative<ClassConsequent>(consequent); }
  const Consequent &regression() const { return std::get<Consequent>(consequent); }
  Consequent &regression() { return std::get<Consequent>(consequent); }
  int classId() const { return std::get<ClassConsequent>(consequent).classId; }

  std::size_t propositionCount() const { return sectors.size() + (velocity ? 1 : 0); }

  bool operator==(const QFRule &) const = default;
};

enum class KbKind { Regression, Classification };

struct KnowledgeBase {
  Domain domain;
  KbKind kind = KbKind::Regression;
  int classCount = 3;
  int defaultClass = 1;
  std::vector<QFRule> rules;

  bool operator==(const KnowledgeBase &) const = default;
};

struct ValidationResult {
  bool valid = true;
  std::vector<std::string> diagnostics;

  explicit operator bool() const { return valid; }
};

/// Checks that the rule derives from the rule grammar and that every label lives on its universe.
ValidationResult validate(const QFRule &rule, const Domain &domain, int classCount = 0);
ValidationResult validate(const KnowledgeBase &kb);

/// Centres of the consequent labels.
double vlinCenter(const Domain &d, int index);
double vangCenter(const Domain &d, int index);

}  // namespace iqfrl
