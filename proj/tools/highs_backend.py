#!/usr/bin/env python3
"""Solve an MPS file with HiGHS (through scipy) and write a gcut solution file.

Usage: highs_backend.py MODEL.mps OUT.sol [--mode mip|lp] [--time-limit S]
                        [--seed N]

The solution file holds "# status <s>", "# objective <v>" and one
"name value" line per column.
"""

import argparse
import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import coo_matrix


def read_mps(path):
    rows = {}          # name -> sense (N, L, G, E)
    row_order = []
    objective_row = None
    maximize = False
    cols = {}          # name -> index
    col_names = []
    integer = []
    entries = []       # (row, col, value)
    rhs = {}
    lower, upper = [], []
    section = None
    in_int = False

    def column(name):
        if name not in cols:
            cols[name] = len(col_names)
            col_names.append(name)
            integer.append(in_int)
            lower.append(0.0)
            upper.append(np.inf)
        return cols[name]

    with open(path) as handle:
        for raw in handle:
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("*"):
                continue
            if not line[0].isspace():
                head = line.split()
                section = head[0]
                continue
            f = line.split()
            if section == "OBJSENSE":
                maximize = f[0].upper() in ("MAX", "MAXIMIZE")
            elif section == "ROWS":
                sense, name = f[0], f[1]
                rows[name] = sense
                if sense == "N":
                    if objective_row is None:
                        objective_row = name
                else:
                    row_order.append(name)
            elif section == "COLUMNS":
                if len(f) >= 3 and f[1] == "'MARKER'":
                    in_int = f[2] == "'INTORG'"
                    continue
                j = column(f[0])
                for k in range(1, len(f) - 1, 2):
                    entries.append((f[k], j, float(f[k + 1])))
            elif section == "RHS":
                for k in range(1, len(f) - 1, 2):
                    rhs[f[k]] = float(f[k + 1])
            elif section == "BOUNDS":
                kind, name = f[0], f[2]
                j = column(name)
                value = float(f[3]) if len(f) > 3 else 0.0
                if kind == "UP":
                    upper[j] = value
                elif kind == "LO":
                    lower[j] = value
                elif kind == "FX":
                    lower[j] = upper[j] = value
                elif kind == "MI":
                    lower[j] = -np.inf
                elif kind == "PL":
                    upper[j] = np.inf
                elif kind == "BV":
                    lower[j], upper[j] = 0.0, 1.0
                    integer[j] = True
    n = len(col_names)
    c = np.zeros(n)
    row_index = {name: i for i, name in enumerate(row_order)}
    data, ri, ci = [], [], []
    for row, j, value in entries:
        if row == objective_row:
            c[j] += value
        elif row in row_index:
            data.append(value)
            ri.append(row_index[row])
            ci.append(j)
    m = len(row_order)
    lo = np.full(m, -np.inf)
    hi = np.full(m, np.inf)
    for name, i in row_index.items():
        b = rhs.get(name, 0.0)
        sense = rows[name]
        if sense in ("L", "E"):
            hi[i] = b
        if sense in ("G", "E"):
            lo[i] = b
    a = coo_matrix((data, (ri, ci)), shape=(m, n)).tocsr()
    return col_names, c, maximize, a, lo, hi, np.array(integer, dtype=int), \
        np.array(lower), np.array(upper)


def main(argv):
    parser = argparse.ArgumentParser()
    parser.add_argument("mps")
    parser.add_argument("sol")
    parser.add_argument("--mode", choices=("mip", "lp"), default="mip")
    parser.add_argument("--time-limit", type=float, default=60.0)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    names, c, maximize, a, lo, hi, integer, lower, upper = read_mps(args.mps)
    sign = -1.0 if maximize else 1.0
    if args.mode == "lp":
        integer = np.zeros_like(integer)
    constraints = [LinearConstraint(a, lo, hi)] if a.shape[0] else []
    # scipy's milp does not expose the HiGHS random seed.
    result = milp(sign * c, constraints=constraints, integrality=integer,
                  bounds=Bounds(lower, upper),
                  options={"time_limit": args.time_limit})
    with open(args.sol, "w") as out:
        if result.x is None:
            status = "infeasible" if result.status == 2 else "timeout"
            out.write(f"# status {status}\n")
            return 0
        status = "optimal" if result.status == 0 else "feasible"
        values = result.x
        objective = float(np.dot(c, values))
        out.write(f"# status {status}\n")
        out.write(f"# objective {objective!r}\n")
        for name, value in zip(names, values):
            out.write(f"{name} {float(value)!r}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
