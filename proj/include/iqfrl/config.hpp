#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "iqfrl/fuzzy.hpp"

namespace iqfrl {

/// Every parameter of the evolutionary learners.
struct LearnerConfig {
  double me = 0.02;       ///< meaningful error
  double dofMin = 0.001;  ///< minimum degree of fulfillment that counts as covering
  double alphaF = 0.99;   ///< confidence weight in the regression fitness
  double pCross = 0.8;
  int popMax = 70;
  int itMin = 50;
  int itCheck = 10;
  int itMax = 100;
  double sigmaBd = 0.01;  ///< max std-dev of normalised distances inside one sector
  double sigmaV = 0.1;    ///< separation of consecutive velocity labels, fraction of the universe
  double pMin = 0.17;     ///< minimum match probability that counts as accurate
  std::uint64_t seed = 1;

  /// Offspring pairs produced per iteration (each pair comes from one mating).
  int offspringPairs = 10;
  /// Granularity headroom above the finest input when merging two labels.
  int mergeExtraGranularity = 20;
  int defaultClass = 1;
  /// Zero means no bound besides the dataset size.
  int maxEpochs = 0;
  MaskSearchOptions mask;

  bool operator==(const LearnerConfig &) const = default;
};

/// Throws std::invalid_argument naming the first bad field.
void checkConfig(const LearnerConfig &cfg);

/**
 * Reads "key = value" lines ('#' comments allowed). Keys: me, dof_min, alpha_f, p_cross, pop_max,
 * it_min, it_check, it_max, sigma_bd, sigma_v, p_min, seed, offspring_pairs,
 * merge_extra_granularity, default_class, max_epochs, mask_min_spread, max_granularity,
 * similarity_grid. Missing keys keep their defaults; unknown keys are errors.
 */
LearnerConfig parseConfig(std::string_view text, LearnerConfig base = {});
LearnerConfig loadConfig(const std::string &path);
std::string serializeConfig(const LearnerConfig &cfg);

}  // namespace iqfrl
