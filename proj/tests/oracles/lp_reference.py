#!/usr/bin/env python3
# Copyright 2026 The mrfs Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Reference LP solve of an exported MPS file with scipy's HiGHS backend.

Usage: lp_reference.py model.mps [--expect VALUE] [--rtol 1e-9]

Prints the optimal objective with 17 significant digits. With --expect, exits
non-zero when the reference optimum differs from VALUE by more than rtol
(relative, with an absolute floor of rtol).
"""

import argparse
import sys

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import coo_matrix


def read_mps(path):
    rows, senses, cols, cost = [], {}, {}, {}
    entries, rhs = [], {}
    section = None
    with open(path) as f:
        for line in f:
            if not line.strip():
                continue
            if not line[0].isspace():
                section = line.split()[0]
                continue
            parts = line.split()
            if section == "ROWS":
                sense, name = parts
                if sense == "N":
                    continue
                senses[name] = sense
                rows.append(name)
            elif section == "COLUMNS":
                col, row, value = parts[0], parts[1], float(parts[2])
                cols.setdefault(col, len(cols))
                if row == "OBJ":
                    cost[col] = value
                else:
                    entries.append((row, col, value))
            elif section == "RHS":
                rhs[parts[1]] = float(parts[2])
    return rows, senses, cols, cost, entries, rhs


def solve(path):
    rows, senses, cols, cost, entries, rhs = read_mps(path)
    n = len(cols)
    c = np.zeros(n)
    for name, value in cost.items():
        c[cols[name]] = value
    ub_rows = [r for r in rows if senses[r] in ("L", "G")]
    eq_rows = [r for r in rows if senses[r] == "E"]
    ub_index = {r: i for i, r in enumerate(ub_rows)}
    eq_index = {r: i for i, r in enumerate(eq_rows)}
    ub_i, ub_j, ub_v, eq_i, eq_j, eq_v = [], [], [], [], [], []
    for row, col, value in entries:
        if row in ub_index:
            sign = -1.0 if senses[row] == "G" else 1.0
            ub_i.append(ub_index[row])
            ub_j.append(cols[col])
            ub_v.append(sign * value)
        else:
            eq_i.append(eq_index[row])
            eq_j.append(cols[col])
            eq_v.append(value)
    b_ub = np.array([(-1.0 if senses[r] == "G" else 1.0) * rhs.get(r, 0.0)
                     for r in ub_rows])
    b_eq = np.array([rhs.get(r, 0.0) for r in eq_rows])
    kwargs = {}
    if ub_rows:
        kwargs["A_ub"] = coo_matrix((ub_v, (ub_i, ub_j)), shape=(len(ub_rows), n))
        kwargs["b_ub"] = b_ub
    if eq_rows:
        kwargs["A_eq"] = coo_matrix((eq_v, (eq_i, eq_j)), shape=(len(eq_rows), n))
        kwargs["b_eq"] = b_eq
    res = linprog(c, bounds=(0, None), method="highs", **kwargs)
    if res.status != 0:
        raise SystemExit(f"reference solve failed: {res.message}")
    return res.fun


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("mps")
    parser.add_argument("--expect", type=float)
    parser.add_argument("--rtol", type=float, default=1e-9)
    args = parser.parse_args()
    value = solve(args.mps)
    print(f"{value:.17g}")
    if args.expect is not None:
        tol = args.rtol * max(1.0, abs(args.expect))
        if abs(value - args.expect) > tol:
            print(f"mismatch: expected {args.expect:.17g}", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
