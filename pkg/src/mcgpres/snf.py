"""Smith normal form over the integers (invariant factors only)."""

from __future__ import annotations

from typing import Sequence


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list:
    """Diagonal entries d_1 | d_2 | ... (length min(rows, cols), zeros last).

    Works on a copy with Python ints.  The pivot at each stage is the
    smallest nonzero entry in absolute value, which keeps entries small.
    """
    a = [[int(x) for x in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(row) != cols for row in a):
        raise ValueError("ragged matrix")
    diag = []
    t = 0
    while t < min(rows, cols):
        pivot = _smallest(a, t, rows, cols)
        if pivot is None:
            break
        pr, pc = pivot
        a[t], a[pr] = a[pr], a[t]
        for row in a:
            row[t], row[pc] = row[pc], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    ri, rt = a[i], a[t]
                    for j in range(t, cols):
                        ri[j] -= q * rt[j]
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for i in range(t, rows):
                        a[i][j] -= q * a[i][t]
                if a[t][j]:
                    done = False
            if done:
                # the pivot must also divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                i, _ = bad
                for j in range(t, cols):
                    a[t][j] += a[i][j]
                continue
            pivot = _smallest(a, t, rows, cols, restrict=True)
            pr, pc = pivot
            a[t], a[pr] = a[pr], a[t]
            for row in a:
                row[t], row[pc] = row[pc], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    diag += [0] * (min(rows, cols) - len(diag))
    return diag


def _smallest(a, t, rows, cols, restrict=False):
    best = None
    rng_i = range(t, rows)
    for i in rng_i:
        row = a[i]
        js = range(t, cols)
        if restrict and i != t:
            js = (t,)
        for j in js:
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
    return None if best is None else (best[1], best[2])


def invariants(diag: Sequence[int], n_columns: int) -> dict:
    """Free rank and torsion of the cokernel Z^n / rowspace."""
    nonzero = [d for d in diag if d]
    return {"free_rank": n_columns - len(nonzero), "torsion": [d for d in nonzero if d > 1]}
