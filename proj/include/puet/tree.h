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

#ifndef PUET_TREE_H_
#define PUET_TREE_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "puet/risk.h"
#include "puet/rng.h"
#include "puet/splitter.h"
#include "puet/training_set.h"

namespace puet {

struct StoppingRule {
  std::optional<int> max_depth;  // unlimited when empty; the root is depth 0
  std::int64_t min_node_size = 1;  // nodes with fewer examples become leaves
  bool purity_check = true;

  // Throws ConfigError on a negative depth or a node size below 1.
  void Validate() const;
};

// One node of the flat pre-order layout. An internal node's left child is
// the next node; `right` is the index of its right child.
struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  double reduction = 0.0;  // +infinity is kept as is and flagged below
  int prediction = -1;
  std::int32_t right = -1;
  std::int64_t count_p = 0;  // first-set rows at the node
  std::int64_t count_u = 0;  // second-set rows at the node

  bool is_leaf() const { return feature < 0; }
  bool reduction_infinite() const { return std::isinf(reduction); }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class Tree {
 public:
  Tree() = default;
  // Validates the pre-order structure; throws DataError when malformed.
  explicit Tree(std::vector<TreeNode> nodes);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t LeafCount() const;
  int Depth() const;

  // Follows f <= t to the left until a leaf. `x` must hold at least
  // max-feature + 1 values; callers check the dimension.
  int Predict(std::span<const double> x) const;

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  std::vector<TreeNode> nodes_;
};

struct TreeConfig {
  SplitterConfig splitter;
  StoppingRule stopping;
};

// Full termination test: all features constant, depth limit, minimum node
// size, or a pure node (risk -infinity under upu, 0 under nnpu and pn).
bool ShouldTerminate(const TrainingSet& data, std::span<const RowIndex> rows,
                     int depth, const StoppingRule& rule,
                     const RiskModel& model);

// Grows a tree on the given rows, which may repeat.
Tree BuildTree(const TrainingSet& data, std::vector<RowIndex> rows,
               const RiskModel& model, const TreeConfig& config, Rng& rng);

}  // namespace puet

#endif  // PUET_TREE_H_
