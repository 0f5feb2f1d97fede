#!/usr/bin/env python3
# Copyright 2026 The PUET Authors. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#     http://www.apache.org/licenses/LICENSE-2.0
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""One-hot encodes the UCI mushroom table (agaricus-lepiota.data) as LIBSVM.

Label 1 = edible (the majority class), 2 = poisonous. Every observed
(attribute, value) pair becomes one binary feature, ordered by attribute
and then by value character.
"""

import argparse
import sys


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("input", help="agaricus-lepiota.data")
    parser.add_argument("output", help="LIBSVM file to write")
    args = parser.parse_args()

    with open(args.input) as f:
        rows = [line.strip().split(",") for line in f if line.strip()]

    n_attrs = len(rows[0]) - 1
    columns = []
    for a in range(n_attrs):
        columns.append(sorted({r[a + 1] for r in rows}))
    index = {}
    for a, values in enumerate(columns):
        for v in values:
            index[(a, v)] = len(index) + 1

    with open(args.output, "w") as out:
        for r in rows:
            label = "1" if r[0] == "e" else "2"
            feats = sorted(index[(a, r[a + 1])] for a in range(n_attrs))
            out.write(label + "".join(f" {i}:1" for i in feats) + "\n")

    print(f"{len(rows)} rows, {len(index)} features", file=sys.stderr)


if __name__ == "__main__":
    main()
