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

#ifndef PUET_TRAINING_SET_H_
#define PUET_TRAINING_SET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "puet/matrix.h"

namespace puet {

using RowIndex = std::uint32_t;

// Column-major copy of two example sets stacked on top of each other: rows
// [0, first_rows) come from `first` (labeled positives), the rest from
// `second` (unlabeled examples, or negatives in labeled mode). Tree nodes
// refer to rows by index; an index may repeat to express a bootstrap sample.
class TrainingSet {
 public:
  TrainingSet(const Matrix& first, const Matrix& second);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t first_rows() const { return first_rows_; }

  double at(RowIndex row, std::size_t feature) const {
    return columns_[feature * rows_ + row];
  }
  std::span<const double> column(std::size_t feature) const {
    return {columns_.data() + feature * rows_, rows_};
  }
  bool is_first(RowIndex row) const { return row < first_rows_; }

  // Indices 0..rows()-1.
  std::vector<RowIndex> AllRows() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t first_rows_ = 0;
  std::vector<double> columns_;
};

struct NodeCounts {
  std::int64_t first = 0;
  std::int64_t second = 0;

  std::int64_t total() const { return first + second; }
};

NodeCounts CountRows(const TrainingSet& data, std::span<const RowIndex> rows);

}  // namespace puet

#endif  // PUET_TRAINING_SET_H_
