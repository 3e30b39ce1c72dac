#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace iqfrl {

/// Range of values a linguistic variable can take.
struct Universe {
  std::string name;
  double min = 0.0;
  double max = 1.0;

  double width() const { return max - min; }
  double clamp(double x) const;

  bool operator==(const Universe &) const = default;
};

/// Label A^{granularity,index} of a uniform triangular partition.
///
/// For granularity 1 the label is the whole universe (membership 1 everywhere). Otherwise the label
/// is a triangle centred at min + (index-1)*step with half-width step = width/(granularity-1); the
/// two edge labels are clipped at the universe bounds so the partition stays strong.
struct LinguisticLabel {
  Universe universe;
  int granularity = 1;
  int index = 1;

  LinguisticLabel() = default;
  LinguisticLabel(Universe u, int g, int j);

  double center() const;
  double halfWidth() const;
  double supportWidth() const;

  bool operator==(const LinguisticLabel &) const = default;
};

/// Triangle described by its half-membership points: mu(left) = mu(right) = 0.5, mu(center) = 1.
struct TriangularMask {
  Universe universe;
  double left = 0.0;
  double center = 0.0;
  double right = 0.0;
};

/// Clipped trapezoid used to evaluate labels and masks uniformly.
/// Membership is 0 outside (lo, hi), 1 on [peakLo, peakHi], linear in between. Inputs are clamped
/// to the universe before evaluation.
struct MembershipShape {
  /// Universe bounds.
  double min = 0.0;
  double max = 1.0;
  double lo = 0.0;
  double peakLo = 0.0;
  double peakHi = 0.0;
  double hi = 0.0;

  double operator()(double x) const;
  /// Open support intersected with the universe, as [first, second].
  std::pair<double, double> support() const;
  double supportWidth() const;
  double peak() const { return 0.5 * (peakLo + peakHi); }
};

MembershipShape shapeOf(const LinguisticLabel &label);
MembershipShape shapeOf(const Universe &u, int granularity, int index);
MembershipShape shapeOf(const TriangularMask &mask);

double membership(const LinguisticLabel &label, double x);

/// Index (1-based) of the label of granularity g with the largest membership for x; ties go to the
/// lower index.
int argmaxLabel(const Universe &u, int granularity, double x);

struct SimilarityOptions {
  int gridPoints = 101;

  bool operator==(const SimilarityOptions &) const = default;
};

/// 1 - mean |mu_a(x) - mu_b(x)| over a uniform midpoint grid laid on the support of a u b.
/// When the supports are disjoint the grid is spread over both intervals proportionally to length.
/// Returns 0 when the joint support is empty (degenerate input).
double similarity(const MembershipShape &a, const MembershipShape &b, const SimilarityOptions &opt = {});
double similarity(const LinguisticLabel &a, const LinguisticLabel &b, const SimilarityOptions &opt = {});

/// True when the open supports of a and b intersect.
bool overlaps(const MembershipShape &a, const MembershipShape &b);

struct MaskSearchOptions {
  SimilarityOptions similarity;
  /// Masks whose half-membership spread is below this fraction of the universe width are widened.
  double minSpread = 0.005;
  /// Hard bound on the scanned granularity.
  int maxGranularity = 2000;

  bool operator==(const MaskSearchOptions &) const = default;
};

/// Widens masks narrower than the configured minimum spread around their centre.
TriangularMask widenMask(const TriangularMask &mask, const MaskSearchOptions &opt);

/**
 * Most similar label to a mask among the labels whose support does not exceed the mask's.
 *
 * Granularities are scanned from 1 up to the first granularity whose labels all fit inside the
 * mask's support width; within a granularity only labels overlapping the mask are compared. Ties
 * keep the coarsest (first found) label.
 */
LinguisticLabel maskToLabel(const TriangularMask &mask, const MaskSearchOptions &opt = {});

/// Label of the given granularity most similar to label (ties to the lower index).
LinguisticLabel mostSimilarAt(const LinguisticLabel &label, int granularity, const SimilarityOptions &opt = {});

/// Zadeh-style proportional quantifier "at least q percent": min(1, 100 p / q).
double quantifierDegree(double proportion, double qPercent);

class EmptySectorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sparse membership of the beam indices in a sector label (only beams with mu > 0).
struct SectorWeights {
  std::vector<std::size_t> beams;
  std::vector<double> weights;
  double total = 0.0;
};

SectorWeights sectorWeights(const LinguisticLabel &beamLabel, std::size_t beamCount);

/// Fraction of the sector's beams whose distance fulfils the distance label.
/// Throws EmptySectorError when no beam has positive membership in the sector.
double proportion(std::span<const double> scan, const LinguisticLabel &distanceLabel,
                  const LinguisticLabel &beamLabel);
double proportion(std::span<const double> scan, const LinguisticLabel &distanceLabel, const SectorWeights &sector);

}  // namespace iqfrl
