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

// Closed-form minimum partial risks shared by the labeled and PU paths, in
// terms of positive weight wp, negative weight wn and total wt = wp + wn.
// Each form is symmetric in (wp, wn) down to the last bit, so mirrored
// nodes get identical values.

#ifndef PUET_SRC_CLOSED_FORMS_H_
#define PUET_SRC_CLOSED_FORMS_H_

#include <algorithm>
#include <cmath>

namespace puet::internal {

// 4 wt v (1 - v) with v = wp / wt, written as 4 wp wn / wt; requires wt > 0.
inline double QuadraticForm(double wp, double wn, double wt) {
  return 4.0 * (wp * wn) / wt;
}

// wt (-v ln v - (1 - v) ln(1 - v)), written as wp ln(wt / wp) +
// wn ln(wt / wn); requires wp > 0 and wn > 0.
inline double EntropyForm(double wp, double wn, double wt) {
  return wp * std::log(wt / wp) + wn * std::log(wt / wn);
}

inline double SigmoidForm(double wp, double wn) { return std::min(wp, wn); }

}  // namespace puet::internal

#endif  // PUET_SRC_CLOSED_FORMS_H_
