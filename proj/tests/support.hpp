#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "iqfrl/dataset.hpp"
#include "iqfrl/fuzzy.hpp"
#include "iqfrl/learner.hpp"
#include "iqfrl/rule.hpp"
#include "iqfrl/sim.hpp"

namespace testing {

using Rng = std::mt19937_64;

double uniform(Rng &rng, double lo, double hi);
int uniformInt(Rng &rng, int lo, int hi);

// ---------------------------------------------------------------- generators

iqfrl::LinguisticLabel randomLabel(Rng &rng, const iqfrl::Universe &u, int maxGranularity);
/// Beam label whose support contains at least one beam index.
iqfrl::LinguisticLabel randomBeamLabel(Rng &rng, const iqfrl::Domain &d, int maxGranularity);
iqfrl::QFRule randomRule(Rng &rng, const iqfrl::Domain &d, int classCount = 0);
iqfrl::KnowledgeBase randomKb(Rng &rng, const iqfrl::Domain &d, bool classification);

/// Piecewise-constant scans made of a few plateaus, 16 beams by default.
std::vector<double> randomScan(Rng &rng, std::size_t beams);

/// Outputs depend on the scan plateau under the right sector and the front sector.
iqfrl::Dataset syntheticDataset(std::size_t examples, std::size_t beams, std::uint64_t seed);

/// Random closed polygon rooms plus a few free-standing segments.
iqfrl::Environment randomScene(Rng &rng);

/// Hand-written right-wall follower on 722 beams: turn away from close walls ahead or on the right,
/// drift right when the right wall is far, otherwise go straight.
iqfrl::KnowledgeBase handFollower();

// ---------------------------------------------------------------- oracles

/// Triangle membership written independently of the library.
double oracleMembership(const iqfrl::Universe &u, int g, int j, double x);

/// 1 - mean |mu_a - mu_b| by dense midpoint sampling of the union of both supports.
double oracleSimilarity(const iqfrl::Universe &u, int ga, int ja, int gb, int jb, int points);

/// Exhaustive scan of every label of every granularity up to the first one whose labels all fit in the
/// mask, keeping the most similar label that overlaps the mask and whose support does not exceed the mask's.
iqfrl::LinguisticLabel oracleMaskToLabel(const iqfrl::TriangularMask &mask, const iqfrl::MaskSearchOptions &opt);

/// Ray distance by marching along the beam in small steps and bisecting on the first crossing.
double oracleRay(const iqfrl::Environment &env, const iqfrl::Pose &pose, double angle, double maxRange);

/// Fourth-order Runge-Kutta integration of the unicycle with n substeps.
iqfrl::Pose oracleArc(const iqfrl::Pose &p, double v, double w, double dt, int n);

// ---------------------------------------------------------------- property checks

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string &what) {
    if (pass) detail = what;
    pass = false;
  }
};

Outcome checkStrongPartition(int maxGranularity, int points, double tol, std::uint64_t seed);
Outcome checkSimilarityProperties(int pairs, std::uint64_t seed);
Outcome checkQuantifierMonotonicity(int samples, std::uint64_t seed);
Outcome checkMaskToLabelOracle(int masks, std::uint64_t seed);
Outcome checkOperatorValidity(int applications, std::uint64_t seed);
Outcome checkMutationDirection(int applications, std::uint64_t seed);
Outcome checkRaycastOracle(int scenes, double tol, std::uint64_t seed);
Outcome checkArcOracle(int cases, double tol, std::uint64_t seed);
Outcome checkRuleSelection(int instances, std::uint64_t seed);

}  // namespace testing
