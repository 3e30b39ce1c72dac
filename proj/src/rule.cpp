#include "iqfrl/rule.hpp"

namespace iqfrl {

Domain Domain::forBeams(std::size_t n) {
  Domain d;
  d.beam.max = static_cast<double>(n) - 1.0;
  return d;
}

double vlinCenter(const Domain &d, int index) { return LinguisticLabel(d.vlin, d.vlinGranularity, index).center(); }

double vangCenter(const Domain &d, int index) { return LinguisticLabel(d.vang, d.vangGranularity, index).center(); }

namespace {

void checkLabel(const LinguisticLabel &label, const Universe &expected, const std::string &what,
                std::vector<std::string> &out) {
  if (!(label.universe == expected)) out.push_back(what + " label is not on the " + expected.name + " universe");
  if (label.granularity < 1 || label.index < 1 || label.index > label.granularity) {
    out.push_back(what + " label index out of range");
  }
}

}  // namespace

ValidationResult validate(const QFRule &rule, const Domain &domain, int classCount) {
  ValidationResult r;
  auto &diag = r.diagnostics;
  if (rule.sectors.empty()) diag.emplace_back("rule has no sector proposition");
  for (std::size_t k = 0; k < rule.sectors.size(); ++k) {
    const auto &s = rule.sectors[k];
    auto tag = "sector " + std::to_string(k + 1);
    checkLabel(s.distance, domain.distance, tag + " distance", diag);
    checkLabel(s.beams, domain.beam, tag + " beam", diag);
    if (!(s.q >= domain.quantifier.min && s.q <= domain.quantifier.max)) {
      diag.push_back(tag + " quantifier outside [" + std::to_string(domain.quantifier.min) + ", " +
                     std::to_string(domain.quantifier.max) + "]");
    }
  }
  if (rule.velocity) checkLabel(rule.velocity->label, domain.velocity, "velocity", diag);
  if (const auto *c = std::get_if<Consequent>(&rule.consequent)) {
    if (c->vlin < 1 || c->vlin > domain.vlinGranularity) diag.emplace_back("vlin consequent out of range");
    if (c->vang < 1 || c->vang > domain.vangGranularity) diag.emplace_back("vang consequent out of range");
  } else {
    int id = std::get<ClassConsequent>(rule.consequent).classId;
    if (id < 1 || (classCount > 0 && id > classCount)) diag.emplace_back("class consequent out of range");
  }
  r.valid = diag.empty();
  return r;
}

ValidationResult validate(const KnowledgeBase &kb) {
  ValidationResult r;
  for (std::size_t k = 0; k < kb.rules.size(); ++k) {
    const auto &rule = kb.rules[k];
    auto sub = validate(rule, kb.domain, kb.kind == KbKind::Classification ? kb.classCount : 0);
    bool wantClass = kb.kind == KbKind::Classification;
    if (rule.isClassification() != wantClass) sub.diagnostics.emplace_back("consequent kind differs from the KB kind");
    for (auto &d : sub.diagnostics) r.diagnostics.push_back("rule " + std::to_string(k + 1) + ": " + d);
  }
  r.valid = r.diagnostics.empty();
  return r;
}

}  // namespace iqfrl
