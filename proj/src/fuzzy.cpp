#include "iqfrl/fuzzy.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace iqfrl {

double Universe::clamp(double x) const { return std::clamp(x, min, max); }

LinguisticLabel::LinguisticLabel(Universe u, int g, int j) : universe(std::move(u)), granularity(g), index(j) {
  if (g < 1 || j < 1 || j > g) {
    throw std::invalid_argument("label index " + std::to_string(j) + " outside granularity " + std::to_string(g));
  }
}

double LinguisticLabel::center() const {
  if (granularity == 1) return universe.min + 0.5 * universe.width();
  return universe.min + (index - 1) * halfWidth();
}

double LinguisticLabel::halfWidth() const {
  if (granularity == 1) return universe.width();
  return universe.width() / (granularity - 1);
}

double LinguisticLabel::supportWidth() const { return shapeOf(*this).supportWidth(); }

double MembershipShape::operator()(double x) const {
  x = std::clamp(x, min, max);
  if (x < peakLo) return x > lo ? (x - lo) / (peakLo - lo) : 0.0;
  if (x > peakHi) return x < hi ? (hi - x) / (hi - peakHi) : 0.0;
  return 1.0;
}

std::pair<double, double> MembershipShape::support() const {
  return {std::max(lo, min), std::min(hi, max)};
}

double MembershipShape::supportWidth() const {
  auto [a, b] = support();
  return std::max(0.0, b - a);
}

MembershipShape shapeOf(const Universe &u, int granularity, int index) {
  if (granularity == 1) return {u.min, u.max, u.min, u.min, u.max, u.max};
  double h = u.width() / (granularity - 1);
  double c = u.min + (index - 1) * h;
  // Edge labels: the flat part beyond the universe never matters because inputs are clamped.
  return {u.min, u.max, c - h, c, c, c + h};
}

MembershipShape shapeOf(const LinguisticLabel &label) { return shapeOf(label.universe, label.granularity, label.index); }

MembershipShape shapeOf(const TriangularMask &mask) {
  double c = mask.center;
  const auto &u = mask.universe;
  return {u.min, u.max, c - 2.0 * (c - mask.left), c, c, c + 2.0 * (mask.right - c)};
}

double membership(const LinguisticLabel &label, double x) {
  if (label.granularity == 1) return 1.0;
  x = label.universe.clamp(x);
  double d = std::abs(x - label.center()) / label.halfWidth();
  return d >= 1.0 ? 0.0 : 1.0 - d;
}

int argmaxLabel(const Universe &u, int granularity, double x) {
  if (granularity == 1) return 1;
  double step = u.width() / (granularity - 1);
  double pos = (u.clamp(x) - u.min) / step;
  // Round half down so ties go to the lower label.
  int j = static_cast<int>(std::ceil(pos - 0.5)) + 1;
  return std::clamp(j, 1, granularity);
}

bool overlaps(const MembershipShape &a, const MembershipShape &b) {
  auto [a0, a1] = a.support();
  auto [b0, b1] = b.support();
  return a0 < b1 && b0 < a1;
}

double similarity(const MembershipShape &a, const MembershipShape &b, const SimilarityOptions &opt) {
  auto sa = a.support();
  auto sb = b.support();
  std::array<std::pair<double, double>, 2> parts;
  std::size_t count = 0;
  if (overlaps(a, b)) {
    parts[count++] = {std::min(sa.first, sb.first), std::max(sa.second, sb.second)};
  } else {
    if (sb.first < sa.first) std::swap(sa, sb);
    if (sa.second > sa.first) parts[count++] = sa;
    if (sb.second > sb.first) parts[count++] = sb;
  }
  double total = 0.0;
  for (std::size_t k = 0; k < count; ++k) total += parts[k].second - parts[k].first;
  if (total <= 0.0 || opt.gridPoints < 1) return 0.0;

  const int n = opt.gridPoints;
  double acc = 0.0;
  std::size_t part = 0;
  double consumed = 0.0;
  for (int k = 0; k < n; ++k) {
    double t = (k + 0.5) * total / n;
    while (part + 1 < count && t > consumed + (parts[part].second - parts[part].first)) {
      consumed += parts[part].second - parts[part].first;
      ++part;
    }
    double x = parts[part].first + (t - consumed);
    acc += std::abs(a(x) - b(x));
  }
  return 1.0 - acc / n;
}

double similarity(const LinguisticLabel &a, const LinguisticLabel &b, const SimilarityOptions &opt) {
  return similarity(shapeOf(a), shapeOf(b), opt);
}

TriangularMask widenMask(const TriangularMask &mask, const MaskSearchOptions &opt) {
  TriangularMask out = mask;
  double minSpread = opt.minSpread * mask.universe.width();
  if (out.center - out.left < minSpread) out.left = out.center - minSpread;
  if (out.right - out.center < minSpread) out.right = out.center + minSpread;
  return out;
}

namespace {

// Range of label indices at granularity g whose support may intersect (a, b).
std::pair<int, int> overlappingIndices(const Universe &u, int g, double a, double b) {
  if (g <= 2) return {1, g};
  double step = u.width() / (g - 1);
  int lo = static_cast<int>(std::floor((a - step - u.min) / step)) + 1;
  int hi = static_cast<int>(std::ceil((b + step - u.min) / step)) + 1;
  return {std::max(1, lo), std::min(g, hi)};
}

double widestLabel(const Universe &u, int g) { return g <= 2 ? u.width() : 2.0 * u.width() / (g - 1); }

}  // namespace

LinguisticLabel mostSimilarAt(const LinguisticLabel &label, int granularity, const SimilarityOptions &opt) {
  const auto &u = label.universe;
  auto shape = shapeOf(label);
  auto [a, b] = shape.support();
  auto [jlo, jhi] = overlappingIndices(u, granularity, a, b);
  int best = std::clamp(jlo, 1, granularity);
  double bestSim = -1.0;
  auto scan = [&](int from, int to, bool requireOverlap) {
    for (int j = from; j <= to; ++j) {
      auto cs = shapeOf(u, granularity, j);
      if (requireOverlap && !overlaps(cs, shape)) continue;
      double s = similarity(shape, cs, opt);
      if (s > bestSim) {
        bestSim = s;
        best = j;
      }
    }
  };
  scan(jlo, jhi, true);
  if (bestSim < 0.0) scan(1, granularity, false);
  return LinguisticLabel(u, granularity, best);
}

LinguisticLabel maskToLabel(const TriangularMask &rawMask, const MaskSearchOptions &opt) {
  TriangularMask mask = widenMask(rawMask, opt);
  const auto &u = mask.universe;
  MembershipShape shape = shapeOf(mask);
  const double s = shape.supportWidth();
  const double tol = 1e-9 * u.width();
  auto [a, b] = shape.support();

  int bestG = 1;
  int bestJ = 1;
  double bestSim = -1.0;
  for (int g = 1; g <= opt.maxGranularity; ++g) {
    bool allFit = widestLabel(u, g) <= s + tol;
    auto [jlo, jhi] = overlappingIndices(u, g, a, b);
    for (int j = jlo; j <= jhi; ++j) {
      auto cs = shapeOf(u, g, j);
      if (cs.supportWidth() > s + tol || !overlaps(cs, shape)) continue;
      double sim = similarity(shape, cs, opt.similarity);
      if (sim > bestSim) {
        bestSim = sim;
        bestG = g;
        bestJ = j;
      }
    }
    if (allFit) break;
  }
  return LinguisticLabel(u, bestG, bestJ);
}

double quantifierDegree(double p, double qPercent) { return std::min(1.0, 100.0 * p / qPercent); }

SectorWeights sectorWeights(const LinguisticLabel &beamLabel, std::size_t beamCount) {
  SectorWeights out;
  auto shape = shapeOf(beamLabel);
  auto [a, b] = shape.support();
  std::size_t first = a <= 0.0 ? 0 : static_cast<std::size_t>(std::floor(a));
  std::size_t last = std::min(beamCount, static_cast<std::size_t>(std::max(0.0, std::ceil(b))) + 1);
  for (std::size_t h = first; h < last; ++h) {
    double mu = membership(beamLabel, static_cast<double>(h));
    if (mu > 0.0) {
      out.beams.push_back(h);
      out.weights.push_back(mu);
      out.total += mu;
    }
  }
  return out;
}

double proportion(std::span<const double> scan, const LinguisticLabel &distanceLabel, const SectorWeights &sector) {
  if (sector.total <= 0.0) throw EmptySectorError("sector label covers no beam");
  double num = 0.0;
  for (std::size_t k = 0; k < sector.beams.size(); ++k) {
    num += std::min(membership(distanceLabel, scan[sector.beams[k]]), sector.weights[k]);
  }
  return num / sector.total;
}

double proportion(std::span<const double> scan, const LinguisticLabel &distanceLabel,
                  const LinguisticLabel &beamLabel) {
  return proportion(scan, distanceLabel, sectorWeights(beamLabel, scan.size()));
}

}  // namespace iqfrl
