#include "iqfrl/rule_select.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "iqfrl/inference.hpp"
#include "iqfrl/learner.hpp"

namespace iqfrl {

std::vector<std::size_t> rankByFitness(const KnowledgeBase &kb) {
  std::vector<std::size_t> order(kb.rules.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return kb.rules[a].fitness > kb.rules[b].fitness; });
  return order;
}

std::vector<RuleMask> prefixCandidates(const KnowledgeBase &kb) {
  auto order = rankByFitness(kb);
  std::vector<RuleMask> out;
  RuleMask mask(kb.rules.size(), false);
  for (std::size_t k : order) {
    mask[k] = true;
    out.push_back(mask);
  }
  return out;
}

MaskScorer::MaskScorer(const KnowledgeBase &kb, const Dataset &data, double lambda)
    : _data(data), _lambda(lambda < 0.0 ? 4.0 * 2.0 : lambda) {
  if (kb.kind != KbKind::Regression) throw std::invalid_argument("rule selection needs a regression KB");
  for (const auto &r : kb.rules) {
    const auto &c = r.regression();
    _centers.emplace_back(vlinCenter(kb.domain, c.vlin), vangCenter(kb.domain, c.vang));
  }
  CompiledKnowledgeBase compiled(kb);
  _firing.resize(data.size());
  for (std::size_t l = 0; l < data.size(); ++l) {
    auto dofs = compiled.dofs(data.examples[l].distances, data.examples[l].velocity);
    for (std::size_t k = 0; k < dofs.size(); ++k) {
      if (dofs[k] > 0.0) _firing[l].emplace_back(k, dofs[k]);
    }
  }
}

double MaskScorer::score(const RuleMask &mask) const {
  if (_data.empty()) return 0.0;
  const Domain &d = _data.domain;
  double total = 0.0;
  for (std::size_t l = 0; l < _data.size(); ++l) {
    double sum = 0.0;
    double vlin = 0.0;
    double vang = 0.0;
    for (auto [k, dof] : _firing[l]) {
      if (!mask[k]) continue;
      sum += dof;
      vlin += dof * _centers[k].first;
      vang += dof * _centers[k].second;
    }
    if (sum <= 0.0) {
      total += _lambda;
      continue;
    }
    const auto &e = _data.examples[l];
    double a = (e.vlin - vlin / sum) / d.vlin.width();
    double b = (e.vang - vang / sum) / d.vang.width();
    total += a * a + b * b;
  }
  return total / static_cast<double>(_data.size());
}

double scoreMask(const KnowledgeBase &kb, const RuleMask &mask, const Dataset &data, double lambda) {
  return MaskScorer(kb, data, lambda).score(mask);
}

KnowledgeBase applyMask(const KnowledgeBase &kb, const RuleMask &mask) {
  KnowledgeBase out = kb;
  out.rules.clear();
  for (std::size_t k = 0; k < kb.rules.size(); ++k) {
    if (mask[k]) out.rules.push_back(kb.rules[k]);
  }
  return out;
}

namespace {

struct Scored {
  RuleMask mask;
  double score = 0.0;
  std::size_t count = 0;
};

bool better(const Scored &a, const Scored &b) {
  if (a.score < b.score - 1e-12) return true;
  if (a.score > b.score + 1e-12) return false;
  return a.count < b.count;
}

Scored scored(const MaskScorer &scorer, RuleMask mask) {
  Scored s;
  s.count = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
  s.score = scorer.score(mask);
  s.mask = std::move(mask);
  return s;
}

// Best non-empty mask within Hamming distance `radius` of the current one (excluding itself).
void bestNeighbour(const MaskScorer &scorer, const Scored &from, int radius, std::size_t start, RuleMask &work,
                   Scored &best, bool &found) {
  for (std::size_t k = start; k < work.size(); ++k) {
    work[k] = !work[k];
    if (std::find(work.begin(), work.end(), true) != work.end()) {
      auto cand = scored(scorer, work);
      if (!found || better(cand, best)) {
        best = std::move(cand);
        found = true;
      }
    }
    if (radius > 1) bestNeighbour(scorer, from, radius - 1, k + 1, work, best, found);
    work[k] = !work[k];
  }
}

Scored localSearch(const MaskScorer &scorer, Scored current, int radius) {
  while (true) {
    RuleMask work = current.mask;
    Scored best;
    bool found = false;
    bestNeighbour(scorer, current, radius, 0, work, best, found);
    if (!found || !better(best, current)) return current;
    current = std::move(best);
  }
}

}  // namespace

SelectResult ilsSelect(const KnowledgeBase &kb, const Dataset &data, const SelectOptions &opt) {
  SelectResult result;
  const std::size_t n = kb.rules.size();
  if (n == 0) {
    result.kb = kb;
    return result;
  }
  MaskScorer scorer(kb, data, opt.lambda);
  result.fullScore = scorer.score(RuleMask(n, true));

  Scored incumbent;
  bool have = false;
  for (auto &mask : prefixCandidates(kb)) {
    auto s = scored(scorer, std::move(mask));
    if (!have || better(s, incumbent)) {
      incumbent = std::move(s);
      have = true;
    }
  }

  std::mt19937_64 rng(opt.seed);
  Scored current = incumbent;
  for (int restart = 0;; ++restart) {
    current = localSearch(scorer, std::move(current), std::max(1, opt.radius));
    if (better(current, incumbent)) incumbent = current;
    if (restart >= opt.maxRestarts) break;
    RuleMask perturbed = incumbent.mask;
    std::vector<std::size_t> bits(n);
    std::iota(bits.begin(), bits.end(), std::size_t{0});
    std::shuffle(bits.begin(), bits.end(), rng);
    std::size_t flips = std::min<std::size_t>(n, static_cast<std::size_t>(opt.radius) + 1);
    for (std::size_t i = 0; i < flips; ++i) perturbed[bits[i]] = !perturbed[bits[i]];
    if (std::find(perturbed.begin(), perturbed.end(), true) == perturbed.end()) perturbed[bits[0]] = true;
    current = scored(scorer, std::move(perturbed));
  }

  result.mask = incumbent.mask;
  result.score = incumbent.score;
  result.kb = applyMask(kb, incumbent.mask);
  return result;
}

}  // namespace iqfrl
