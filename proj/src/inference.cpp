#include "iqfrl/inference.hpp"

#include <algorithm>

namespace iqfrl {

double qfpDof(const SectorProposition &prop, std::span<const double> scan) {
  return quantifierDegree(proportion(scan, prop.distance, prop.beams), prop.q);
}

double velocityDof(const VelocityProposition &prop, double velocity) { return membership(prop.label, velocity); }

CompiledRule::CompiledRule(QFRule rule, std::size_t beamCount) : _rule(std::move(rule)) {
  _sectors.reserve(_rule.sectors.size());
  for (const auto &s : _rule.sectors) _sectors.push_back(sectorWeights(s.beams, beamCount));
}

double CompiledRule::propositionDof(std::size_t k, std::span<const double> scan, double velocity) const {
  if (k < _sectors.size()) {
    const auto &s = _rule.sectors[k];
    return quantifierDegree(proportion(scan, s.distance, _sectors[k]), s.q);
  }
  return _rule.velocity ? velocityDof(*_rule.velocity, velocity) : 1.0;
}

double CompiledRule::dof(std::span<const double> scan, double velocity) const {
  double out = 1.0;
  if (_rule.velocity) {
    out = velocityDof(*_rule.velocity, velocity);
    if (out <= 0.0) return 0.0;
  }
  for (std::size_t k = 0; k < _sectors.size(); ++k) {
    const auto &s = _rule.sectors[k];
    out = std::min(out, quantifierDegree(proportion(scan, s.distance, _sectors[k]), s.q));
    if (out <= 0.0) return 0.0;
  }
  return out;
}

double ruleDof(const QFRule &rule, std::span<const double> scan, double velocity) {
  return CompiledRule(rule, scan.size()).dof(scan, velocity);
}

CompiledKnowledgeBase::CompiledKnowledgeBase(const KnowledgeBase &kb) : _kb(kb) {
  _rules.reserve(kb.rules.size());
  for (const auto &r : kb.rules) _rules.emplace_back(r, kb.domain.beamCount());
}

std::vector<double> CompiledKnowledgeBase::dofs(std::span<const double> scan, double velocity) const {
  std::vector<double> out(_rules.size());
  for (std::size_t k = 0; k < _rules.size(); ++k) out[k] = _rules[k].dof(scan, velocity);
  return out;
}

Command defuzzify(const Domain &domain, std::span<const QFRule> rules, std::span<const double> dofs) {
  double sum = 0.0;
  double vlin = 0.0;
  double vang = 0.0;
  for (std::size_t k = 0; k < rules.size(); ++k) {
    if (dofs[k] <= 0.0) continue;
    const auto &c = rules[k].regression();
    sum += dofs[k];
    vlin += dofs[k] * vlinCenter(domain, c.vlin);
    vang += dofs[k] * vangCenter(domain, c.vang);
  }
  if (sum <= 0.0) throw UncoveredInputError();
  return {vlin / sum, vang / sum};
}

std::optional<Command> CompiledKnowledgeBase::tryInfer(std::span<const double> scan, double velocity) const {
  auto d = dofs(scan, velocity);
  if (std::none_of(d.begin(), d.end(), [](double x) { return x > 0.0; })) return std::nullopt;
  return defuzzify(_kb.domain, _kb.rules, d);
}

Command CompiledKnowledgeBase::infer(std::span<const double> scan, double velocity) const {
  return defuzzify(_kb.domain, _kb.rules, dofs(scan, velocity));
}

Command infer(const KnowledgeBase &kb, std::span<const double> scan, double velocity) {
  return CompiledKnowledgeBase(kb).infer(scan, velocity);
}

}  // namespace iqfrl
