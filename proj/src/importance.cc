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

#include "puet/importance.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "puet/errors.h"
#include "text_util.h"

namespace puet {

ImportanceReport ComputeImportance(const ForestModel& model) {
  const std::size_t d = model.dim();
  const ExampleWeights& w = model.weights();
  ImportanceReport report;
  report.n_trees = model.trees().size();
  report.raw.assign(d, 0.0);
  report.normalized.assign(d, 0.0);
  for (const Tree& tree : model.trees()) {
    std::vector<double> raw(d, 0.0);
    std::vector<double> normalized(d, 0.0);
    for (const TreeNode& node : tree.nodes()) {
      if (node.is_leaf() || node.reduction_infinite()) continue;
      const auto f = static_cast<std::size_t>(node.feature);
      const double weight = static_cast<double>(node.count_p) * w.w_p +
                            static_cast<double>(node.count_u) * w.w_u;
      raw[f] += node.reduction;
      normalized[f] += node.reduction / weight;
    }
    for (std::size_t f = 0; f < d; ++f) {
      report.raw[f] += raw[f];
      report.normalized[f] += normalized[f];
    }
    report.per_tree_raw.push_back(std::move(raw));
    report.per_tree_normalized.push_back(std::move(normalized));
  }
  if (report.n_trees > 0) {
    const auto n = static_cast<double>(report.n_trees);
    for (std::size_t f = 0; f < d; ++f) {
      report.raw[f] /= n;
      report.normalized[f] /= n;
    }
  }
  return report;
}

void WriteImportanceCsv(std::ostream& out, const ImportanceReport& report) {
  out << "feature,raw,normalized\n";
  for (std::size_t f = 0; f < report.raw.size(); ++f) {
    out << f << ',' << internal::FormatDouble(report.raw[f]) << ','
        << internal::FormatDouble(report.normalized[f]) << '\n';
  }
}

void WritePgm(std::ostream& out, std::span<const double> values, int width,
              int height) {
  if (width < 1 || height < 1 ||
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height) !=
          values.size()) {
    throw ConfigError("grid " + std::to_string(width) + "x" +
                      std::to_string(height) + " does not match " +
                      std::to_string(values.size()) + " features");
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  out << "P2\n" << width << ' ' << height << "\n255\n";
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const double v = values[static_cast<std::size_t>(r * width + c)];
      const long level =
          range > 0.0 ? std::lround(255.0 * (v - *lo) / range) : 0L;
      out << (c == 0 ? "" : " ") << level;
    }
    out << '\n';
  }
}

std::vector<int> TopFeatures(std::span<const double> values, std::size_t k) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return values[static_cast<std::size_t>(a)] >
           values[static_cast<std::size_t>(b)];
  });
  order.resize(std::min(k, order.size()));
  return order;
}

}  // namespace puet
