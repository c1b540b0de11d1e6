"""Smith normal form over the integers, exact arithmetic throughout."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(v) for v in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))


@dataclass(frozen=True)
class SNFResult:
    diagonal: tuple[int, ...]  # nonzero invariant factors d1 | d2 | ...
    rank: int


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_decomposition(m: IntMatrix) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(D, L, R)`` with ``L @ M @ R == D``, L and R unimodular, D diagonal."""
    a = m.to_lists()
    nr, nc = m.rows, m.cols
    L = _identity(nr)
    R = _identity(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        L[dst] = [x + q * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in R:
            row[dst] += q * row[src]

    t = 0
    while t < min(nr, nc):
        pivot = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        done = False
            if not done:
                # a nonzero remainder is smaller than the pivot: move it into place
                best = None
                for i in range(t + 1, nr):
                    if a[i][t] and (best is None or abs(a[i][t]) < abs(best[2])):
                        best = (i, None, a[i][t])
                for j in range(t + 1, nc):
                    if a[t][j] and (best is None or abs(a[t][j]) < abs(best[2])):
                        best = (None, j, a[t][j])
                if best[0] is not None:
                    swap_rows(t, best[0])
                else:
                    swap_cols(t, best[1])
                continue
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            L[t] = [-x for x in L[t]]
        t += 1
    return a, L, R


def smith_normal_form(m: IntMatrix | Sequence[Sequence[int]]) -> SNFResult:
    if not isinstance(m, IntMatrix):
        m = IntMatrix.from_rows(m)
    d, _, _ = smith_decomposition(m)
    diag = tuple(d[i][i] for i in range(min(m.rows, m.cols)) if d[i][i])
    return SNFResult(diag, len(diag))


def in_integer_span(vectors: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """Is ``target`` an integer combination of ``vectors``?"""
    n = len(target)
    if not vectors:
        return not any(target)
    cols = IntMatrix.from_rows([[v[i] for v in vectors] for i in range(n)], len(vectors))
    d, L, _ = smith_decomposition(cols)
    y = [sum(L[i][k] * target[k] for k in range(n)) for i in range(n)]
    for i in range(n):
        di = d[i][i] if i < cols.cols else 0
        if di == 0:
            if y[i]:
                return False
        elif y[i] % di:
            return False
    return True
