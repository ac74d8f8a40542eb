"""Exact rational linear algebra plus a float Jacobi eigensolver."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .problems import DomainError, Frac

Vector = tuple[Frac, ...]
Matrix = list[list[Frac]]


def _copy(rows: Sequence[Sequence[Frac]]) -> Matrix:
    return [[Frac(x) for x in row] for row in rows]


def rank_exact(rows: Sequence[Sequence[Frac]]) -> int:
    """Rank over the rationals by Gaussian elimination."""
    a = _copy(rows)
    if not a:
        return 0
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == m:
            break
    return r


def solve_linear_system(a_rows: Sequence[Sequence[Frac]], b: Sequence[Frac]):
    """Solve A x = b exactly.

    Returns ("unique", x), ("inconsistent", None), or
    ("underdetermined", particular, kernel_basis).
    """
    a = _copy(a_rows)
    m = len(a)
    n = len(a[0]) if a else 0
    rhs = [Frac(x) for x in b]
    if len(rhs) != m:
        raise DomainError("dimension mismatch")
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        rhs[r], rhs[piv] = rhs[piv], rhs[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        rhs[r] /= inv
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                rhs[i] -= f * rhs[r]
        pivots.append((r, c))
        r += 1
    for i in range(r, m):
        if rhs[i] != 0:
            return ("inconsistent", None)
    particular = [Frac(0)] * n
    for row, col in pivots:
        particular[col] = rhs[row]
    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(n) if c not in pivot_cols]
    if not free_cols:
        return ("unique", tuple(particular))
    kernel = []
    for fc in free_cols:
        vec = [Frac(0)] * n
        vec[fc] = Frac(1)
        for row, col in pivots:
            vec[col] = -a[row][fc]
        kernel.append(tuple(vec))
    return ("underdetermined", tuple(particular), tuple(kernel))


def affine_hull(points: Sequence[Sequence[Frac]]) -> tuple[tuple[Vector, ...], Vector]:
    """Offset = first point; basis = maximal independent set of differences."""
    if not points:
        raise DomainError("need at least one point")
    offset = tuple(Frac(x) for x in points[0])
    n = len(offset)
    basis: list[Vector] = []
    echelon: Matrix = []
    pivot_cols: list[int] = []
    for p in points[1:]:
        diff = [Frac(x) - o for x, o in zip(p, offset)]
        if len(diff) != n:
            raise DomainError("dimension mismatch")
        red = list(diff)
        for row, pc in zip(echelon, pivot_cols):
            if red[pc] != 0:
                f = red[pc]
                red = [x - f * y for x, y in zip(red, row)]
        pc = next((j for j in range(n) if red[j] != 0), None)
        if pc is None:
            continue
        inv = red[pc]
        red = [x / inv for x in red]
        echelon.append(red)
        pivot_cols.append(pc)
        basis.append(tuple(diff))
    return tuple(basis), offset


def symmetric_eigen_min(m_rows, tol: float = 1e-12) -> float:
    """Minimum eigenvalue of a symmetric float matrix via cyclic Jacobi rotations.

    Error is bounded by tol times the Frobenius norm; asymmetric input (beyond
    1e-12 relative) is a domain error.
    """
    a = [[float(x) for x in row] for row in m_rows]
    n = len(a)
    if any(len(row) != n for row in a):
        raise DomainError("matrix must be square")
    scale = max((abs(x) for row in a for x in row), default=0.0)
    for i in range(n):
        for j in range(n):
            if abs(a[i][j] - a[j][i]) > 1e-12 * max(1.0, scale):
                raise DomainError(f"matrix not symmetric at ({i},{j})")
    if n == 0:
        return 0.0
    norm = math.sqrt(sum(x * x for row in a for x in row))
    if norm == 0.0:
        return 0.0
    threshold = tol * norm
    for _ in range(100):
        off = math.sqrt(sum(a[i][j] ** 2 for i in range(n) for j in range(n) if i != j))
        if off < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if abs(apq) <= threshold / max(n, 1) / 10:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
    return min(a[i][i] for i in range(n))
