#include <cmath>

#include "doctest.h"
#include "iqfrl/classifier.hpp"
#include "support.hpp"

using namespace iqfrl;

namespace {

/// Flat scans at one level per class: class 1 near, class 2 middle, class 3 far.
Dataset levelDataset(const std::vector<int> &classes) {
  Dataset data;
  data.domain = Domain::forBeams(16);
  data.kind = KbKind::Classification;
  data.classCount = 3;
  const double levels[] = {0.2, 0.75, 1.3};
  for (int c : classes) {
    Example e;
    e.distances.assign(16, levels[c - 1]);
    e.velocity = 0.2;
    e.classId = c;
    data.examples.push_back(e);
  }
  return data;
}

QFRule levelRule(const Domain &d, int level, int classId) {
  // A^{5,1}, A^{5,3} and A^{5,5} peak near the three levels and do not overlap them.
  const int index[] = {1, 3, 5};
  QFRule r;
  r.sectors.push_back({LinguisticLabel(d.distance, 5, index[level - 1]), LinguisticLabel(d.beam, 1, 1), 100.0});
  r.consequent = ClassConsequent{classId};
  return r;
}

std::vector<bool> everything(std::size_t n) { return std::vector<bool>(n, true); }

}  // namespace

TEST_CASE("classification fitness") {
  auto data = levelDataset({1, 2, 2, 3});

  SUBCASE("no false positives gives full confidence") {
    std::vector<double> dofs{0.0, 1.0, 1.0, 0.0};
    auto s = classFitness(2, dofs, data, everything(4));
    CHECK(s.confidence == 1.0);
    CHECK(s.tp == doctest::Approx(3.0));
    CHECK(s.support == doctest::Approx(1.0));
    CHECK(s.fitness == doctest::Approx(1.0));
  }

  SUBCASE("one false positive at full degree") {
    std::vector<double> dofs{1.0, 1.0, 1.0, 0.0};
    auto s = classFitness(2, dofs, data, everything(4));
    CHECK(s.fpCount == 1);
    CHECK(s.fp == doctest::Approx(2.0));
    CHECK(s.confidence == doctest::Approx(0.01));
  }

  SUBCASE("missed examples lower the support") {
    std::vector<double> dofs{0.0, 1.0, 0.0, 0.0};
    auto s = classFitness(2, dofs, data, everything(4));
    CHECK(s.fnCount == 1);
    CHECK(s.support == doctest::Approx(2.0 / 3.0));
  }

  SUBCASE("fitness stays in [0, 1]") {
    testing::Rng rng(51);
    for (int i = 0; i < 500; ++i) {
      std::vector<double> dofs(4);
      for (auto &x : dofs) x = testing::uniform(rng, 0.0, 1.0) < 0.4 ? 0.0 : testing::uniform(rng, 0.0, 1.0);
      auto s = classFitness(testing::uniformInt(rng, 1, 3), dofs, data, everything(4));
      CHECK(s.fitness >= 0.0);
      CHECK(s.fitness <= 1.0);
    }
  }
}

TEST_CASE("classification mutation") {
  auto data = levelDataset({1, 1, 2, 2, 2, 3});

  SUBCASE("class distribution follows the covered degrees") {
    std::vector<double> dofs{1.0, 2.0, 1.0, 0.0, 0.0, 0.0};
    auto p = classDistribution(dofs, data);
    CHECK(p[0] == doctest::Approx(0.75));
    CHECK(p[1] == doctest::Approx(0.25));
    CHECK(p[2] == 0.0);
    std::vector<double> none(6, 0.0);
    for (double x : classDistribution(none, data)) CHECK(x == doctest::Approx(1.0 / 3.0));
  }

  SUBCASE("a rule firing only on class 2 switches to class 2") {
    LearnerConfig cfg;
    std::vector<std::size_t> all{0, 1, 2, 3, 4, 5};
    auto ind = evaluateClassification(levelRule(data.domain, 2, 1), data, all, cfg);
    std::vector<Individual> pop{ind};
    testing::Rng rng(52);
    for (int i = 0; i < 100; ++i) CHECK(mutateClassification(ind, pop, data, all, cfg, rng).classId() == 2);
  }

  SUBCASE("an example nobody covers has generalisation weight 1") {
    LearnerConfig cfg;
    std::vector<std::size_t> all{0, 1, 2, 3, 4, 5};
    std::vector<Individual> pop{evaluateClassification(levelRule(data.domain, 2, 2), data, all, cfg)};
    CHECK(generalizationWeight(pop, 0) == 1.0);
    CHECK(generalizationWeight(pop, 2) == doctest::Approx(0.0));
  }
}

TEST_CASE("classify") {
  KnowledgeBase kb;
  kb.domain = Domain::forBeams(16);
  kb.kind = KbKind::Classification;
  kb.defaultClass = 1;
  std::vector<double> scan(16, 0.75);
  CHECK(classify(kb, scan, 0.2) == 1);

  QFRule partial = levelRule(kb.domain, 2, 3);
  partial.velocity = VelocityProposition{LinguisticLabel(kb.domain.velocity, 11, 5)};
  kb.rules.push_back(partial);
  // velocity 0.19 has membership 0.8 in A^{11,5} (centre 0.2, half-width 0.05).
  CHECK(CompiledKnowledgeBase(kb).dofs(scan, 0.19)[0] == doctest::Approx(0.8));
  CHECK(classify(kb, scan, 0.19) == 3);

  kb.rules.clear();
  kb.rules.push_back(levelRule(kb.domain, 2, 2));
  kb.rules.push_back(levelRule(kb.domain, 2, 3));
  CHECK(classify(kb, scan, 0.2) == 2);
}

TEST_CASE("confusion metrics") {
  auto perfect = metricsFromConfusion({{5, 0, 0}, {0, 7, 0}, {0, 0, 3}});
  CHECK(perfect.accuracy == 1.0);
  REQUIRE(perfect.kappa);
  CHECK(*perfect.kappa == doctest::Approx(1.0));

  CHECK_FALSE(metricsFromConfusion({{4, 0}, {0, 0}}).kappa.has_value());

  SUBCASE("chance-level predictions") {
    testing::Rng rng(53);
    std::vector<std::vector<double>> counts(3, std::vector<double>(3, 0.0));
    for (int i = 0; i < 10000; ++i) counts[static_cast<std::size_t>(i % 3)][static_cast<std::size_t>(testing::uniformInt(rng, 0, 2))] += 1;
    auto m = metricsFromConfusion(counts);
    REQUIRE(m.kappa);
    CHECK(std::abs(*m.kappa) <= 0.05);
  }

  SUBCASE("averaged cross-validation matrix") {
    std::vector<std::vector<double>> counts{{30.85, 2.40, 0.23}, {0.70, 30.97, 0.00}, {0.23, 0.06, 34.55}};
    // Cohen's kappa by hand from the marginals.
    double total = 99.99;
    double po = (30.85 + 30.97 + 34.55) / total;
    double pe = (33.48 * 31.78 + 31.67 * 33.43 + 34.84 * 34.78) / (total * total);
    auto m = metricsFromConfusion(counts);
    CHECK(m.accuracy == doctest::Approx(po));
    CHECK(std::abs(m.accuracy - 0.96) <= 0.005);
    REQUIRE(m.kappa);
    CHECK(*m.kappa == doctest::Approx((po - pe) / (1.0 - pe)));
  }
}

TEST_CASE("classifier learning on separable data") {
  std::vector<int> classes;
  for (int i = 0; i < 30; ++i) classes.push_back(1 + i % 3);
  auto data = levelDataset(classes);
  testing::Rng rng(54);
  for (auto &e : data.examples) {
    for (auto &x : e.distances) x += testing::uniform(rng, -0.02, 0.02);
  }
  LearnerConfig cfg;
  cfg.seed = 4;
  auto result = trainClassifier(data, cfg);
  CHECK(result.uncovered.empty());
  auto m = confusionAndKappa(result.kb, data);
  CHECK(m.accuracy == 1.0);
  for (const auto &r : result.kb.rules) CHECK(r.classId() != cfg.defaultClass);
}
