#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "iqfrl/rule.hpp"

namespace iqfrl {

/// One record: a full range scan, the measured velocity and the target outputs.
/// Regression records use vlin/vang; classification records use classId.
struct Example {
  std::vector<double> distances;
  double velocity = 0.0;
  double vlin = 0.0;
  double vang = 0.0;
  int classId = 0;

  bool operator==(const Example &) const = default;
};

struct Dataset {
  Domain domain;
  KbKind kind = KbKind::Regression;
  int classCount = 3;
  std::vector<Example> examples;

  std::size_t size() const { return examples.size(); }
  bool empty() const { return examples.empty(); }

  bool operator==(const Dataset &) const = default;
};

/**
 * Text format for datasets.
 *
 *   iqfrl-data 1
 *   kind regression | kind classification <classes>
 *   beams <N_b>
 *   universe <distance|beam|quantifier|velocity> <min> <max>
 *   output <vlin|vang> <min> <max> <granularity>
 *   examples <count>
 *   <d_1> ... <d_Nb> <velocity> <vlin> <vang>      (regression)
 *   <d_1> ... <d_Nb> <velocity> <class>             (classification)
 *
 * Fields are separated by whitespace or commas.
 */
std::string serializeDataset(const Dataset &data);
Dataset parseDataset(std::string_view text);
Dataset loadDataset(const std::string &path);
void saveDataset(const std::string &path, const Dataset &data);

}  // namespace iqfrl
