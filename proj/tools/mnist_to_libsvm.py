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
"""Converts MNIST idx files to LIBSVM with +1 for even digits, -1 for odd.

Pixels are scaled to [0, 1] and zero pixels are omitted. Inputs may be
gzip-compressed.
"""

import argparse
import gzip
import struct
import sys


def read_idx(path):
    opener = gzip.open if path.endswith(".gz") else open
    with opener(path, "rb") as f:
        data = f.read()
    _, dtype, ndim = struct.unpack(">HBB", data[:4])
    if dtype != 0x08:
        sys.exit(f"{path}: expected unsigned byte data")
    dims = struct.unpack(f">{ndim}I", data[4:4 + 4 * ndim])
    return dims, data[4 + 4 * ndim:]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("images", help="e.g. train-images-idx3-ubyte.gz")
    parser.add_argument("labels", help="e.g. train-labels-idx1-ubyte.gz")
    parser.add_argument("output", help="LIBSVM file to write")
    args = parser.parse_args()

    (n, rows, cols), pixels = read_idx(args.images)
    (n_labels,), labels = read_idx(args.labels)
    if n != n_labels:
        sys.exit(f"{n} images but {n_labels} labels")
    size = rows * cols

    with open(args.output, "w") as out:
        for i in range(n):
            image = pixels[i * size:(i + 1) * size]
            label = "+1" if labels[i] % 2 == 0 else "-1"
            feats = "".join(f" {j + 1}:{p / 255:.6g}"
                            for j, p in enumerate(image) if p)
            out.write(label + feats + "\n")

    print(f"{n} rows, {size} features", file=sys.stderr)


if __name__ == "__main__":
    main()
