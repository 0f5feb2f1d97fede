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

#include "puet/training_set.h"

#include <limits>
#include <numeric>
#include <string>

#include "puet/errors.h"

namespace puet {

TrainingSet::TrainingSet(const Matrix& first, const Matrix& second)
    : rows_(first.rows() + second.rows()),
      cols_(first.rows() > 0 ? first.cols() : second.cols()),
      first_rows_(first.rows()) {
  if (first.rows() > 0 && second.rows() > 0 && first.cols() != second.cols()) {
    throw DataError("example sets have different dimensions (" +
                    std::to_string(first.cols()) + " vs " +
                    std::to_string(second.cols()) + ")");
  }
  if (rows_ > std::numeric_limits<RowIndex>::max()) {
    throw DataError("too many training rows");
  }
  columns_.resize(rows_ * cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    double* out = columns_.data() + c * rows_;
    for (std::size_t r = 0; r < first.rows(); ++r) *out++ = first(r, c);
    for (std::size_t r = 0; r < second.rows(); ++r) *out++ = second(r, c);
  }
}

std::vector<RowIndex> TrainingSet::AllRows() const {
  std::vector<RowIndex> rows(rows_);
  std::iota(rows.begin(), rows.end(), RowIndex{0});
  return rows;
}

NodeCounts CountRows(const TrainingSet& data, std::span<const RowIndex> rows) {
  NodeCounts counts;
  for (const RowIndex r : rows) {
    if (data.is_first(r)) ++counts.first;
  }
  counts.second = static_cast<std::int64_t>(rows.size()) - counts.first;
  return counts;
}

}  // namespace puet
