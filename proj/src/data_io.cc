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

#include "puet/data_io.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>

#include "puet/errors.h"
#include "text_util.h"

namespace puet {

using internal::FormatDouble;
using internal::ParseDouble;
using internal::Trim;

namespace {

// Dense matrices above this size get a warning at load time.
constexpr double kDenseWarningBytes = 1024.0 * 1024.0 * 1024.0;

std::string LineError(std::size_t line_no, const std::string& what) {
  return "line " + std::to_string(line_no) + ": " + what;
}

struct SparseRow {
  int label = -1;
  std::vector<std::pair<std::size_t, double>> entries;  // 1-based index
};

// Splits one CSV record, honoring double quotes ("" is an escaped quote).
std::vector<std::string> SplitCsvRecord(std::string_view line,
                                        std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (quoted) throw DataError(LineError(line_no, "unterminated quote"));
  fields.push_back(std::move(field));
  return fields;
}

bool LabelMatches(std::string_view cell, std::string_view positive) {
  cell = Trim(cell);
  positive = Trim(positive);
  if (cell == positive) return true;
  const auto a = ParseDouble(cell);
  const auto b = ParseDouble(positive);
  return a && b && *a == *b;
}

void WarnIfLarge(std::size_t rows, std::size_t cols) {
  const double bytes = static_cast<double>(rows) * static_cast<double>(cols) *
                       sizeof(double);
  if (bytes > kDenseWarningBytes) {
    std::clog << "warning: densified dataset needs about "
              << bytes / (1024.0 * 1024.0) << " MiB (" << rows << " x "
              << cols << ")\n";
  }
}

}  // namespace

std::size_t LabeledDataset::CountPositives() const {
  return static_cast<std::size_t>(std::count(y.begin(), y.end(), 1));
}

DataFormat ParseDataFormat(std::string_view name) {
  if (name == "libsvm") return DataFormat::kLibsvm;
  if (name == "csv") return DataFormat::kCsv;
  throw ConfigError("unknown data format '" + std::string(name) +
                    "' (expected libsvm|csv)");
}

LabeledDataset ParseLibsvm(std::istream& in, std::optional<std::size_t> dim,
                           double positive_label) {
  std::vector<SparseRow> rows;
  std::size_t max_index = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = Trim(view);
    if (view.empty()) continue;

    std::istringstream tokens{std::string(view)};
    std::string token;
    tokens >> token;
    const auto label = ParseDouble(token);
    if (!label || !std::isfinite(*label)) {
      throw DataError(LineError(line_no, "label '" + token +
                                             "' is not a number"));
    }
    SparseRow row;
    row.label = *label == positive_label ? +1 : -1;
    std::size_t previous = 0;
    while (tokens >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos) {
        throw DataError(LineError(line_no, "expected idx:val, got '" + token +
                                               "'"));
      }
      const auto index =
          internal::ParseInt<std::size_t>(std::string_view(token).substr(0, colon));
      const auto value = ParseDouble(std::string_view(token).substr(colon + 1));
      if (!index || *index == 0) {
        throw DataError(LineError(line_no, "bad feature index in '" + token +
                                               "' (indices are 1-based)"));
      }
      if (!value || !std::isfinite(*value)) {
        throw DataError(LineError(line_no, "bad feature value in '" + token +
                                               "'"));
      }
      if (*index <= previous) {
        throw DataError(LineError(line_no, "feature indices must be strictly "
                                           "ascending"));
      }
      if (dim && *index > *dim) {
        throw DataError(LineError(line_no, "feature index " +
                                               std::to_string(*index) +
                                               " exceeds dimension " +
                                               std::to_string(*dim)));
      }
      previous = *index;
      max_index = std::max(max_index, *index);
      row.entries.emplace_back(*index, *value);
    }
    rows.push_back(std::move(row));
  }

  const std::size_t d = dim.value_or(max_index);
  WarnIfLarge(rows.size(), d);
  LabeledDataset data;
  data.x = Matrix(rows.size(), d);
  data.y.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [index, value] : rows[r].entries) {
      data.x(r, index - 1) = value;
    }
    data.y.push_back(rows[r].label);
  }
  return data;
}

LabeledDataset ParseCsv(std::istream& in, std::string_view label_column,
                        std::string_view positive_value) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!Trim(line).empty()) {
      header = SplitCsvRecord(line, line_no);
      break;
    }
  }
  if (header.empty()) throw DataError("CSV input has no header row");

  std::optional<std::size_t> label_index;
  LabeledDataset data;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto name = Trim(header[c]);
    if (name == Trim(label_column)) {
      label_index = c;
    } else {
      data.feature_names.emplace_back(name);
    }
  }
  if (!label_index) {
    throw DataError("CSV header has no label column '" +
                    std::string(label_column) + "'");
  }

  std::vector<double> features(header.size() - 1);
  data.x = Matrix(0, features.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto fields = SplitCsvRecord(line, line_no);
    if (fields.size() != header.size()) {
      throw DataError(LineError(line_no, "expected " +
                                             std::to_string(header.size()) +
                                             " fields, got " +
                                             std::to_string(fields.size())));
    }
    std::size_t j = 0;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (c == *label_index) continue;
      const auto value = ParseDouble(fields[c]);
      if (!value || !std::isfinite(*value)) {
        throw DataError(LineError(line_no, "column " + std::to_string(c + 1) +
                                               " ('" + header[c] +
                                               "') is not numeric: '" +
                                               fields[c] + "'"));
      }
      features[j++] = *value;
    }
    data.x.AppendRow(features);
    data.y.push_back(LabelMatches(fields[*label_index], positive_value) ? +1
                                                                        : -1);
  }
  return data;
}

void WriteLibsvm(std::ostream& out, const LabeledDataset& data) {
  for (std::size_t r = 0; r < data.size(); ++r) {
    out << (data.y[r] > 0 ? "+1" : "-1");
    const auto row = data.x.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] != 0.0) out << ' ' << (c + 1) << ':' << FormatDouble(row[c]);
    }
    out << '\n';
  }
}

void WriteCsv(std::ostream& out, const LabeledDataset& data,
              std::string_view label_column) {
  for (std::size_t c = 0; c < data.dim(); ++c) {
    out << (c < data.feature_names.size() ? data.feature_names[c]
                                          : "f" + std::to_string(c + 1))
        << ',';
  }
  out << label_column << '\n';
  for (std::size_t r = 0; r < data.size(); ++r) {
    for (const double v : data.x.row(r)) out << FormatDouble(v) << ',';
    out << (data.y[r] > 0 ? "1" : "-1") << '\n';
  }
}

LabeledDataset LoadDataset(const std::string& path,
                           const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    if (options.format == DataFormat::kCsv) {
      return ParseCsv(in, options.label_column, options.positive_label);
    }
    const auto positive = ParseDouble(options.positive_label);
    if (!positive) {
      throw ConfigError("LIBSVM positive label must be numeric, got '" +
                        options.positive_label + "'");
    }
    return ParseLibsvm(in, options.dim, *positive);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

PUDataset MakePuScenario(const LabeledDataset& data, std::size_t n_p,
                         Rng& rng) {
  std::vector<std::size_t> positives;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.y[i] > 0) positives.push_back(i);
  }
  if (positives.size() < n_p) {
    throw DataError("requested " + std::to_string(n_p) +
                    " labeled positives but the data has only " +
                    std::to_string(positives.size()));
  }
  if (n_p == 0) throw DataError("a PU scenario needs at least one positive");
  std::shuffle(positives.begin(), positives.end(), rng);
  positives.resize(n_p);
  std::sort(positives.begin(), positives.end());

  PUDataset pu;
  pu.positives = data.x.SelectRows(positives);
  pu.unlabeled = data.x;
  pu.prior = static_cast<double>(data.CountPositives()) /
             static_cast<double>(data.size());
  return pu;
}

std::pair<LabeledDataset, LabeledDataset> TrainTestSplit(
    const LabeledDataset& data, double test_fraction, Rng& rng) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  const auto n_test = static_cast<std::size_t>(
      std::llround(test_fraction * static_cast<double>(data.size())));
  std::vector<std::size_t> test_rows(order.begin(), order.begin() + n_test);
  std::vector<std::size_t> train_rows(order.begin() + n_test, order.end());
  std::sort(test_rows.begin(), test_rows.end());
  std::sort(train_rows.begin(), train_rows.end());

  auto take = [&](const std::vector<std::size_t>& rows) {
    LabeledDataset part;
    part.x = data.x.SelectRows(rows);
    part.feature_names = data.feature_names;
    for (const auto r : rows) part.y.push_back(data.y[r]);
    return part;
  };
  return {take(train_rows), take(test_rows)};
}

Matrix RowsWithLabel(const LabeledDataset& data, int label) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.y[i] == label) rows.push_back(i);
  }
  return data.x.SelectRows(rows);
}

LabeledDataset SelectFeatures(const LabeledDataset& data,
                              std::span<const int> features) {
  LabeledDataset out;
  out.x = data.x.SelectColumns(features);
  out.y = data.y;
  if (!data.feature_names.empty()) {
    for (const int f : features) {
      out.feature_names.push_back(data.feature_names[static_cast<std::size_t>(f)]);
    }
  }
  return out;
}

MinMaxScaler MinMaxScaler::Fit(const Matrix& train) {
  MinMaxScaler scaler;
  scaler.min_.assign(train.cols(), 0.0);
  scaler.max_.assign(train.cols(), 0.0);
  for (std::size_t c = 0; c < train.cols(); ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < train.rows(); ++r) {
      lo = std::min(lo, train(r, c));
      hi = std::max(hi, train(r, c));
    }
    scaler.min_[c] = lo;
    scaler.max_[c] = hi;
  }
  return scaler;
}

Matrix MinMaxScaler::Transform(const Matrix& x) const {
  if (x.cols() != min_.size()) {
    throw DataError("scaler fitted on " + std::to_string(min_.size()) +
                    " features, got " + std::to_string(x.cols()));
  }
  Matrix out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) {
      const double range = max_[c] - min_[c];
      out(r, c) = range > 0.0 ? (x(r, c) - min_[c]) / range : 0.0;
    }
  }
  return out;
}

void MinMaxScaler::WriteCsv(std::ostream& out) const {
  out << "feature,min,max\n";
  for (std::size_t c = 0; c < min_.size(); ++c) {
    out << c << ',' << FormatDouble(min_[c]) << ',' << FormatDouble(max_[c])
        << '\n';
  }
}

}  // namespace puet
