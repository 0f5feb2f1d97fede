// Copyright 2026 The PUET Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PUET_IMPORTANCE_H_
#define PUET_IMPORTANCE_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "puet/forest.h"

namespace puet {

struct ImportanceReport {
  // Forest averages, one entry per feature.
  std::vector<double> raw;
  std::vector<double> normalized;
  // Per-tree sums, indexed [tree][feature].
  std::vector<std::vector<double>> per_tree_raw;
  std::vector<std::vector<double>> per_tree_normalized;
  std::size_t n_trees = 0;
};

// Sums the recorded risk reductions of each feature's split nodes per tree
// and averages over trees. Nodes whose reduction is +infinity are skipped.
// The normalized variant divides each reduction by the node weight
// |P'| w_p + |U'| w_u first.
ImportanceReport ComputeImportance(const ForestModel& model);

// CSV with header `feature,raw,normalized`.
void WriteImportanceCsv(std::ostream& out, const ImportanceReport& report);

// Plain PGM (P2) of `values` laid out row-major on a width x height grid,
// min-max scaled to 0..255. Throws ConfigError when the grid size does not
// match the number of values.
void WritePgm(std::ostream& out, std::span<const double> values, int width,
              int height);

// Indices of the k largest values; ties go to the lower index.
std::vector<int> TopFeatures(std::span<const double> values, std::size_t k);

}  // namespace puet

#endif  // PUET_IMPORTANCE_H_
