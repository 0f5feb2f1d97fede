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

#ifndef PUET_DATA_IO_H_
#define PUET_DATA_IO_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "puet/matrix.h"
#include "puet/rng.h"

namespace puet {

struct LabeledDataset {
  Matrix x;
  std::vector<int> y;  // -1 or +1
  std::vector<std::string> feature_names;  // empty for LIBSVM input

  std::size_t size() const { return y.size(); }
  std::size_t dim() const { return x.cols(); }
  std::size_t CountPositives() const;
};

struct PUDataset {
  Matrix positives;
  Matrix unlabeled;
  double prior = 0.0;
};

enum class DataFormat { kLibsvm, kCsv };
DataFormat ParseDataFormat(std::string_view name);

// Sparse `label idx:val ...` lines with 1-based, strictly ascending indices.
// Labels equal to `positive_label` map to +1, every other numeric label to
// -1. Absent indices are 0. With no `dim`, the dimension is the largest
// index seen. Blank lines and `#` comments are skipped. Throws DataError
// with the offending line number.
LabeledDataset ParseLibsvm(std::istream& in, std::optional<std::size_t> dim,
                           double positive_label = 1.0);

// Header row required. Every column except `label_column` must be numeric;
// a label cell equal to `positive_value` (as text, or numerically when both
// parse as numbers) maps to +1. Double-quoted fields are accepted.
LabeledDataset ParseCsv(std::istream& in, std::string_view label_column,
                        std::string_view positive_value);

void WriteLibsvm(std::ostream& out, const LabeledDataset& data);
void WriteCsv(std::ostream& out, const LabeledDataset& data,
              std::string_view label_column = "label");

struct LoadOptions {
  DataFormat format = DataFormat::kLibsvm;
  std::string positive_label = "1";
  std::string label_column = "label";
  std::optional<std::size_t> dim;
};
LabeledDataset LoadDataset(const std::string& path, const LoadOptions& options);

// Samples n_p positives without replacement as P; U is the whole dataset and
// the prior is its positive rate. Throws DataError if there are fewer than
// n_p positives.
PUDataset MakePuScenario(const LabeledDataset& data, std::size_t n_p, Rng& rng);

// Random split; the test part holds round(test_fraction * n) rows.
std::pair<LabeledDataset, LabeledDataset> TrainTestSplit(
    const LabeledDataset& data, double test_fraction, Rng& rng);

// Rows where y == label, as a matrix.
Matrix RowsWithLabel(const LabeledDataset& data, int label);

LabeledDataset SelectFeatures(const LabeledDataset& data,
                              std::span<const int> features);

// Per-feature affine map of the training range onto [0, 1]. Constant
// features map to 0.
class MinMaxScaler {
 public:
  static MinMaxScaler Fit(const Matrix& train);

  Matrix Transform(const Matrix& x) const;
  void WriteCsv(std::ostream& out) const;

  const std::vector<double>& min() const { return min_; }
  const std::vector<double>& max() const { return max_; }

 private:
  std::vector<double> min_;
  std::vector<double> max_;
};

}  // namespace puet

#endif  // PUET_DATA_IO_H_
