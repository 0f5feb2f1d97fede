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

#include "puet/tree.h"

#include <algorithm>
#include <string>

#include "puet/errors.h"

namespace puet {

void StoppingRule::Validate() const {
  if (max_depth && *max_depth < 0) {
    throw ConfigError("max depth must be >= 0");
  }
  if (min_node_size < 1) throw ConfigError("min node size must be >= 1");
}

namespace {

// Returns the index one past the subtree rooted at `i`, or throws.
std::size_t CheckSubtree(const std::vector<TreeNode>& nodes, std::size_t i,
                         int depth) {
  if (i >= nodes.size()) throw DataError("tree node list is truncated");
  if (depth > static_cast<int>(nodes.size())) {
    throw DataError("tree nodes form a cycle");
  }
  const TreeNode& node = nodes[i];
  if (node.prediction != 1 && node.prediction != -1) {
    throw DataError("tree node " + std::to_string(i) +
                    " has a prediction other than -1/+1");
  }
  if (node.is_leaf()) return i + 1;
  const std::size_t right = CheckSubtree(nodes, i + 1, depth + 1);
  if (node.right != static_cast<std::int32_t>(right)) {
    throw DataError("tree node " + std::to_string(i) +
                    " has an inconsistent right child index");
  }
  return CheckSubtree(nodes, right, depth + 1);
}

int SubtreeDepth(const std::vector<TreeNode>& nodes, std::size_t i) {
  const TreeNode& node = nodes[i];
  if (node.is_leaf()) return 0;
  return 1 + std::max(SubtreeDepth(nodes, i + 1),
                      SubtreeDepth(nodes, static_cast<std::size_t>(node.right)));
}

class Builder {
 public:
  Builder(const TrainingSet& data, const RiskModel& model,
          const TreeConfig& config, Rng& rng)
      : data_(data), model_(model), config_(config), rng_(rng) {}

  void Grow(std::span<RowIndex> rows, int depth) {
    const NodeCounts counts = CountRows(data_, rows);
    const NodeStats stats = model_.Stats(counts.first, counts.second);
    const std::size_t index = nodes_.size();
    TreeNode node;
    node.prediction = OptimalConstantPrediction(stats);
    node.count_p = counts.first;
    node.count_u = counts.second;
    nodes_.push_back(node);

    const StoppingRule& rule = config_.stopping;
    if (rule.max_depth && depth >= *rule.max_depth) return;
    if (counts.total() < rule.min_node_size) return;
    if (rule.purity_check && model_.IsPure(stats)) return;

    const auto split =
        FindSplit(data_, rows, config_.splitter, model_, rng_, workspace_);
    if (!split) return;

    const double* col =
        data_.column(static_cast<std::size_t>(split->feature)).data();
    const double t = split->threshold;
    const auto middle = std::partition(
        rows.begin(), rows.end(), [&](RowIndex r) { return col[r] <= t; });
    const auto n_left = static_cast<std::size_t>(middle - rows.begin());
    if (n_left == 0 || n_left == rows.size()) {
      throw InvariantError("chosen split leaves a child empty");
    }

    nodes_[index].feature = split->feature;
    nodes_[index].threshold = split->threshold;
    nodes_[index].reduction = split->reduction;
    Grow(rows.first(n_left), depth + 1);
    nodes_[index].right = static_cast<std::int32_t>(nodes_.size());
    Grow(rows.subspan(n_left), depth + 1);
  }

  std::vector<TreeNode> Take() { return std::move(nodes_); }

 private:
  const TrainingSet& data_;
  const RiskModel& model_;
  const TreeConfig& config_;
  Rng& rng_;
  SplitWorkspace workspace_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

Tree::Tree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw DataError("tree has no nodes");
  if (CheckSubtree(nodes_, 0, 0) != nodes_.size()) {
    throw DataError("tree has trailing nodes");
  }
}

std::size_t Tree::LeafCount() const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

int Tree::Depth() const { return nodes_.empty() ? 0 : SubtreeDepth(nodes_, 0); }

int Tree::Predict(std::span<const double> x) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& node = nodes_[i];
    i = x[static_cast<std::size_t>(node.feature)] <= node.threshold
            ? i + 1
            : static_cast<std::size_t>(node.right);
  }
  return nodes_[i].prediction;
}

bool ShouldTerminate(const TrainingSet& data, std::span<const RowIndex> rows,
                     int depth, const StoppingRule& rule,
                     const RiskModel& model) {
  if (rows.empty()) throw InvariantError("termination test on an empty node");
  if (rule.max_depth && depth >= *rule.max_depth) return true;
  if (static_cast<std::int64_t>(rows.size()) < rule.min_node_size) return true;
  const NodeCounts counts = CountRows(data, rows);
  if (rule.purity_check && model.IsPure(model.Stats(counts.first, counts.second))) {
    return true;
  }
  for (std::size_t f = 0; f < data.cols(); ++f) {
    const double* col = data.column(f).data();
    const double first = col[rows.front()];
    for (const RowIndex r : rows) {
      if (col[r] != first) return false;
    }
  }
  return true;
}

Tree BuildTree(const TrainingSet& data, std::vector<RowIndex> rows,
               const RiskModel& model, const TreeConfig& config, Rng& rng) {
  if (rows.empty()) throw DataError("cannot grow a tree on zero examples");
  config.stopping.Validate();
  config.splitter.Validate();
  Builder builder(data, model, config, rng);
  builder.Grow(rows, 0);
  return Tree(builder.Take());
}

}  // namespace puet
