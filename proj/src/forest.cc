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

#include "puet/forest.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "puet/errors.h"
#include "puet/training_set.h"
#include "text_util.h"

namespace puet {

using internal::FormatDouble;
using internal::ParseDouble;
using internal::ParseInt;

namespace {

constexpr std::string_view kMagic = "puet-model";

struct MethodName {
  ForestMethod method;
  std::string_view name;
};

constexpr MethodName kMethodNames[] = {
    {ForestMethod::kPuEt, "pu-et"},
    {ForestMethod::kPuRfBootstrap, "pu-rf-bootstrap"},
    {ForestMethod::kPuBaggingEt, "pu-bagging-et"},
    {ForestMethod::kNaivePuEt, "naive-pu-et"},
    {ForestMethod::kSupervisedPnEt, "supervised-pn-et"},
};

}  // namespace

ForestMethod ParseForestMethod(std::string_view name) {
  std::string canonical(name);
  std::replace(canonical.begin(), canonical.end(), '_', '-');
  for (const auto& entry : kMethodNames) {
    if (entry.name == canonical) return entry.method;
  }
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected pu-et|pu-rf-bootstrap|pu-bagging-et|"
                    "naive-pu-et|supervised-pn-et)");
}

std::string_view ForestMethodName(ForestMethod method) {
  for (const auto& entry : kMethodNames) {
    if (entry.method == method) return entry.name;
  }
  return "?";
}

bool UsesLabeledTrees(ForestMethod method) {
  return method == ForestMethod::kPuBaggingEt ||
         method == ForestMethod::kNaivePuEt ||
         method == ForestMethod::kSupervisedPnEt;
}

EstimatorKind ForestConfig::EffectiveEstimator() const {
  return UsesLabeledTrees(method) ? EstimatorKind::kPn : estimator;
}

void ForestConfig::Validate() const {
  if (n_trees < 1) throw ConfigError("tree count must be >= 1");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  tree.splitter.Validate();
  tree.stopping.Validate();
  if (!UsesLabeledTrees(method)) {
    if (estimator == EstimatorKind::kPn) {
      throw ConfigError(std::string(ForestMethodName(method)) +
                        " needs the upu or nnpu risk estimator");
    }
    if (!(prior > 0.0 && prior < 1.0)) {
      throw ConfigError("class prior must lie in (0, 1), got " +
                        FormatDouble(prior));
    }
  }
  ValidateRiskCombination(EffectiveEstimator(), loss);
}

ForestConfig DefaultForestConfig(ForestMethod method) {
  ForestConfig config;
  config.method = method;
  config.tree.splitter.mode = method == ForestMethod::kPuRfBootstrap
                                  ? SplitMode::kExactSweep
                                  : SplitMode::kRandom;
  return config;
}

ForestModel::ForestModel(ForestConfig config, std::size_t dim,
                         ExampleWeights weights, std::vector<Tree> trees)
    : config_(config), dim_(dim), weights_(weights), trees_(std::move(trees)) {
  for (const Tree& tree : trees_) {
    for (const TreeNode& node : tree.nodes()) {
      if (!node.is_leaf() && static_cast<std::size_t>(node.feature) >= dim_) {
        throw DataError("tree splits on feature " +
                        std::to_string(node.feature) + " of a " +
                        std::to_string(dim_) + "-dimensional model");
      }
    }
  }
}

int ForestModel::Predict(std::span<const double> x) const {
  if (x.size() != dim_) {
    throw DataError("input has " + std::to_string(x.size()) +
                    " features, model expects " + std::to_string(dim_));
  }
  std::size_t positive = 0;
  for (const Tree& tree : trees_) positive += tree.Predict(x) > 0 ? 1 : 0;
  return 2 * positive > trees_.size() ? +1 : -1;
}

std::vector<int> ForestModel::Predict(const Matrix& x) const {
  if (x.rows() > 0 && x.cols() != dim_) {
    throw DataError("input has " + std::to_string(x.cols()) +
                    " features, model expects " + std::to_string(dim_));
  }
  std::vector<int> out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) out[r] = Predict(x.row(r));
  return out;
}

void ForestModel::Serialize(std::ostream& out) const {
  const auto& c = config_;
  out << kMagic << ' ' << kFormatVersion << '\n'
      << "method " << ForestMethodName(c.method) << '\n'
      << "estimator " << EstimatorName(c.estimator) << '\n'
      << "loss " << LossName(c.loss) << '\n'
      << "split-mode " << SplitModeName(c.tree.splitter.mode) << '\n'
      << "features " << c.tree.splitter.n_features << '\n'
      << "thresholds " << c.tree.splitter.n_thresholds << '\n'
      << "max-depth "
      << (c.tree.stopping.max_depth ? std::to_string(*c.tree.stopping.max_depth)
                                    : std::string("none"))
      << '\n'
      << "min-node-size " << c.tree.stopping.min_node_size << '\n'
      << "purity-check " << (c.tree.stopping.purity_check ? 1 : 0) << '\n'
      << "prior " << FormatDouble(c.prior) << '\n'
      << "seed " << c.seed << '\n'
      << "dim " << dim_ << '\n'
      << "weights " << FormatDouble(weights_.w_p) << ' '
      << FormatDouble(weights_.w_u) << ' ' << FormatDouble(weights_.prior)
      << ' ' << weights_.n_p << ' ' << weights_.n_u << '\n'
      << "trees " << trees_.size() << '\n';
  for (std::size_t t = 0; t < trees_.size(); ++t) {
    const auto& nodes = trees_[t].nodes();
    out << "tree " << t << ' ' << nodes.size() << '\n';
    for (const TreeNode& n : nodes) {
      if (n.is_leaf()) {
        out << "L " << n.prediction << ' ' << n.count_p << ' ' << n.count_u
            << '\n';
      } else {
        out << "S " << n.prediction << ' ' << n.count_p << ' ' << n.count_u
            << ' ' << n.feature << ' ' << FormatDouble(n.threshold) << ' '
            << FormatDouble(n.reduction) << '\n';
      }
    }
  }
  out << "end\n";
}

std::string ForestModel::SerializeToString() const {
  std::ostringstream out;
  Serialize(out);
  return out.str();
}

namespace {

class ModelReader {
 public:
  explicit ModelReader(std::istream& in) : in_(in) {}

  std::vector<std::string> Line() {
    std::string line;
    if (!std::getline(in_, line)) Fail("unexpected end of model file");
    ++line_no_;
    std::istringstream tokens(line);
    std::vector<std::string> out;
    for (std::string t; tokens >> t;) out.push_back(t);
    return out;
  }

  // Reads `key value...` and returns the values.
  std::vector<std::string> Field(std::string_view key, std::size_t n_values) {
    auto tokens = Line();
    if (tokens.empty() || tokens[0] != key || tokens.size() != n_values + 1) {
      Fail("expected '" + std::string(key) + "' with " +
           std::to_string(n_values) + " value(s)");
    }
    tokens.erase(tokens.begin());
    return tokens;
  }

  template <typename Int>
  Int Integer(const std::string& s) {
    const auto v = ParseInt<Int>(s);
    if (!v) Fail("'" + s + "' is not an integer");
    return *v;
  }

  double Real(const std::string& s) {
    const auto v = ParseDouble(s);
    if (!v) Fail("'" + s + "' is not a number");
    return *v;
  }

  template <typename Fn>
  auto Parse(Fn&& fn) -> decltype(fn()) {
    try {
      return fn();
    } catch (const ConfigError& e) {
      Fail(e.what());
    }
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw DataError("model file line " + std::to_string(line_no_) + ": " +
                    what);
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

// Pre-order parse; fills in the right-child indices.
void ReadSubtree(ModelReader& reader, std::vector<TreeNode>& nodes,
                 std::size_t expected) {
  if (nodes.size() >= expected) reader.Fail("tree has more nodes than declared");
  const auto tokens = reader.Line();
  TreeNode node;
  if (tokens.size() == 4 && tokens[0] == "L") {
    node.feature = -1;
  } else if (tokens.size() == 7 && tokens[0] == "S") {
    node.feature = reader.Integer<int>(tokens[4]);
    if (node.feature < 0) reader.Fail("negative feature index");
    node.threshold = reader.Real(tokens[5]);
    node.reduction = reader.Real(tokens[6]);
  } else {
    reader.Fail("expected a node line");
  }
  node.prediction = reader.Integer<int>(tokens[1]);
  node.count_p = reader.Integer<std::int64_t>(tokens[2]);
  node.count_u = reader.Integer<std::int64_t>(tokens[3]);
  const std::size_t index = nodes.size();
  nodes.push_back(node);
  if (node.is_leaf()) return;
  ReadSubtree(reader, nodes, expected);
  nodes[index].right = static_cast<std::int32_t>(nodes.size());
  ReadSubtree(reader, nodes, expected);
}

}  // namespace

ForestModel ForestModel::Deserialize(std::istream& in) {
  ModelReader r(in);
  const auto header = r.Line();
  if (header.size() != 2 || header[0] != kMagic) {
    r.Fail("not a model file (missing '" + std::string(kMagic) + "' header)");
  }
  if (r.Integer<int>(header[1]) != kFormatVersion) {
    r.Fail("unsupported model format version " + header[1]);
  }
  ForestConfig c;
  c.method = r.Parse([&] { return ParseForestMethod(r.Field("method", 1)[0]); });
  c.estimator =
      r.Parse([&] { return ParseEstimator(r.Field("estimator", 1)[0]); });
  c.loss = r.Parse([&] { return ParseLoss(r.Field("loss", 1)[0]); });
  c.tree.splitter.mode =
      r.Parse([&] { return ParseSplitMode(r.Field("split-mode", 1)[0]); });
  c.tree.splitter.n_features = r.Integer<int>(r.Field("features", 1)[0]);
  c.tree.splitter.n_thresholds = r.Integer<int>(r.Field("thresholds", 1)[0]);
  const auto depth = r.Field("max-depth", 1)[0];
  if (depth != "none") c.tree.stopping.max_depth = r.Integer<int>(depth);
  c.tree.stopping.min_node_size =
      r.Integer<std::int64_t>(r.Field("min-node-size", 1)[0]);
  c.tree.stopping.purity_check = r.Integer<int>(r.Field("purity-check", 1)[0]) != 0;
  c.prior = r.Real(r.Field("prior", 1)[0]);
  c.seed = r.Integer<std::uint64_t>(r.Field("seed", 1)[0]);
  const auto dim = r.Integer<std::size_t>(r.Field("dim", 1)[0]);
  const auto w = r.Field("weights", 5);
  ExampleWeights weights;
  weights.w_p = r.Real(w[0]);
  weights.w_u = r.Real(w[1]);
  weights.prior = r.Real(w[2]);
  weights.n_p = r.Integer<std::int64_t>(w[3]);
  weights.n_u = r.Integer<std::int64_t>(w[4]);
  const auto n_trees = r.Integer<std::size_t>(r.Field("trees", 1)[0]);
  c.n_trees = static_cast<int>(n_trees);
  r.Parse([&] {
    c.Validate();
    return 0;
  });

  std::vector<Tree> trees;
  for (std::size_t t = 0; t < n_trees; ++t) {
    const auto head = r.Line();
    if (head.size() != 3 || head[0] != "tree" ||
        r.Integer<std::size_t>(head[1]) != t) {
      r.Fail("expected 'tree " + std::to_string(t) + " <nodes>'");
    }
    const auto n_nodes = r.Integer<std::size_t>(head[2]);
    std::vector<TreeNode> nodes;
    ReadSubtree(r, nodes, n_nodes);
    if (nodes.size() != n_nodes) r.Fail("tree has fewer nodes than declared");
    trees.emplace_back(std::move(nodes));
  }
  const auto tail = r.Line();
  if (tail.size() != 1 || tail[0] != "end") r.Fail("expected 'end'");
  return ForestModel(c, dim, weights, std::move(trees));
}

void ForestModel::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  Serialize(out);
  if (!out) throw DataError("failed writing '" + path + "'");
}

ForestModel ForestModel::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return Deserialize(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

namespace {

// Bootstrap of `count` rows drawn from [begin, begin + size).
void AppendBootstrap(std::vector<RowIndex>& rows, std::size_t begin,
                     std::size_t size, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, size - 1);
  for (std::size_t i = 0; i < size; ++i) {
    rows.push_back(static_cast<RowIndex>(begin + pick(rng)));
  }
}

std::vector<RowIndex> TreeRows(const TrainingSet& data, ForestMethod method,
                               Rng& rng) {
  const std::size_t n_first = data.first_rows();
  const std::size_t n_second = data.rows() - n_first;
  std::vector<RowIndex> rows;
  switch (method) {
    case ForestMethod::kPuRfBootstrap:
      rows.reserve(data.rows());
      AppendBootstrap(rows, 0, n_first, rng);
      AppendBootstrap(rows, n_first, n_second, rng);
      return rows;
    case ForestMethod::kPuBaggingEt:
      rows.reserve(data.rows());
      for (std::size_t i = 0; i < n_first; ++i) {
        rows.push_back(static_cast<RowIndex>(i));
      }
      AppendBootstrap(rows, n_first, n_second, rng);
      return rows;
    case ForestMethod::kPuEt:
    case ForestMethod::kNaivePuEt:
    case ForestMethod::kSupervisedPnEt:
      break;
  }
  return data.AllRows();
}

}  // namespace

ForestModel TrainForest(const Matrix& first, const Matrix& second,
                        const ForestConfig& config,
                        std::vector<TreeTrainingRecord>* log) {
  config.Validate();
  if (first.rows() == 0 || second.rows() == 0) {
    throw DataError(config.method == ForestMethod::kSupervisedPnEt
                        ? "labeled training data needs both classes"
                        : "training needs nonempty positive and unlabeled sets");
  }
  const TrainingSet data(first, second);
  const auto n_first = static_cast<std::int64_t>(first.rows());
  const auto n_second = static_cast<std::int64_t>(second.rows());
  const ExampleWeights weights =
      UsesLabeledTrees(config.method)
          ? ExampleWeights::ForPn(n_first, n_second)
          : ExampleWeights::ForPu(n_first, n_second, config.prior);
  const RiskModel model(config.EffectiveEstimator(), config.loss, weights);

  const auto n_trees = static_cast<std::size_t>(config.n_trees);
  std::vector<Tree> trees(n_trees);
  std::vector<TreeTrainingRecord> records(n_trees);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t t = next++; t < n_trees; t = next++) {
      try {
        const auto start = std::chrono::steady_clock::now();
        Rng rng(config.seed ^ static_cast<std::uint64_t>(t));
        auto rows = TreeRows(data, config.method, rng);
        trees[t] = BuildTree(data, std::move(rows), model, config.tree, rng);
        const std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;
        records[t] = {static_cast<int>(t), elapsed.count(), trees[t].Depth(),
                      trees[t].size(), trees[t].LeafCount()};
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n_trees;
      }
    }
  };

  const auto n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(config.jobs), n_trees);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }
  if (failure) std::rethrow_exception(failure);

  if (log) *log = std::move(records);
  return ForestModel(config, data.cols(), weights, std::move(trees));
}

}  // namespace puet
