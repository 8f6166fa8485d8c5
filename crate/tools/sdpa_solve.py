#!/usr/bin/env python3
"""Solve an SDPA sparse file with cvxpy (Clarabel) and print CSDP-style results.

Usage: sdpa_solve.py FILE.dat-s

The file describes  min c.x  subject to  sum_i x_i F_i - F_0 >= 0.
Diagonal blocks (negative sizes) and 1x1 blocks become linear inequalities.
"""
import re
import sys

import numpy as np
import cvxpy as cp


def parse(path):
    tokens = []
    header = True
    counted = 0
    with open(path) as f:
        for line in f:
            t = line.strip()
            if header and (t.startswith("*") or t.startswith('"')):
                continue
            if not t:
                continue
            header = False
            words = re.sub(r"[,{}()]", " ", t).split()
            if counted < 2:
                words = words[:1]
                counted += 1
            tokens.extend(words)
    it = iter(tokens)
    m = int(next(it))
    nblocks = int(next(it))
    sizes = [int(next(it)) for _ in range(nblocks)]
    c = np.array([float(next(it)) for _ in range(m)])
    mats = [[np.zeros((abs(s), abs(s))) for s in sizes] for _ in range(m + 1)]
    rest = list(it)
    for k in range(0, len(rest), 5):
        mat, blk, i, j = (int(x) for x in rest[k:k + 4])
        v = float(rest[k + 4])
        a = mats[mat][blk - 1]
        a[i - 1, j - 1] = v
        a[j - 1, i - 1] = v
    return m, sizes, c, mats


def solve(path):
    m, sizes, c, mats = parse(path)
    x = cp.Variable(m)
    cons = []
    for b, s in enumerate(sizes):
        f = sum(x[i] * mats[i + 1][b] for i in range(m)) - mats[0][b]
        if s < 0:
            cons.append(cp.diag(f) >= 0)
        elif s == 1:
            cons.append(f >= 0)
        else:
            cons.append((f + f.T) / 2 >> 0)
    prob = cp.Problem(cp.Minimize(c @ x), cons)
    prob.solve(solver=cp.CLARABEL)
    ok = prob.status == cp.OPTIMAL
    print("Success: SDP solved" if ok else "Failure: " + str(prob.status))
    if prob.value is not None and np.isfinite(prob.value):
        print("Primal objective value: %.15e" % prob.value)
        print("Dual objective value: %.15e" % prob.value)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(solve(sys.argv[1]))
