"""Exact rational simplex with Bland's anti-cycling rule and dual certificates.

The Tableau works on the canonical form  max c.x  s.t.  A x <= b, x >= 0  and
stays alive between solves so callers can swap objectives and continue from
the current basis (the feasible region is unchanged, so re-optimization is
typically a handful of pivots).  StandardLp/simplex_exact wrap it for general
LPs: free variables are split, >= and = rows become <= rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .problems import DomainError, Frac

LE = "<="
GE = ">="
EQ = "=="

ZERO = Fraction(0)
ONE = Fraction(1)


class Tableau:
    """Dense simplex tableau for max c.x, A x <= b, x >= 0.

    Columns: [0, n) variables, [n, n+m) slacks, then transient artificials.
    Artificial columns are never removed, only banned from entering, so dual
    multipliers can always be read off the slack columns in original row order.
    """

    def __init__(self, a_rows: Sequence[Sequence[Frac]], b: Sequence[Frac], c: Sequence[Frac]):
        self.m = len(a_rows)
        self.n = len(c)
        self.ncols = self.n + self.m
        self.banned_from = self.ncols
        self.rows: list[list[Frac]] = []
        for i in range(self.m):
            row = [Frac(x) for x in a_rows[i]]
            if len(row) != self.n:
                raise DomainError("row length mismatch")
            slack = [ZERO] * self.m
            slack[i] = ONE
            self.rows.append(row + slack + [Frac(b[i])])
        self.basis = [self.n + i for i in range(self.m)]
        self.c_real = [Frac(x) for x in c]
        self.obj: list[Frac] = []
        self.value = ZERO
        self._feasible = all(self.rows[i][-1] >= 0 for i in range(self.m))

    # -- core pivoting ------------------------------------------------------

    def _pivot(self, r: int, jc: int) -> None:
        row = self.rows[r]
        piv = row[jc]
        if piv != 1:
            inv = ONE / piv
            row = [v * inv for v in row]
            self.rows[r] = row
        for i in range(self.m):
            if i == r:
                continue
            other = self.rows[i]
            f = other[jc]
            if f != 0:
                self.rows[i] = [a - f * bb for a, bb in zip(other, row)]
        f = self.obj[jc]
        if f != 0:
            self.obj = [a - f * bb for a, bb in zip(self.obj, row[:-1])]
            self.value += f * row[-1]
        self.basis[r] = jc

    def _install_objective(self, c_full: list[Frac]) -> None:
        obj = list(c_full)
        value = ZERO
        for r in range(self.m):
            cb = c_full[self.basis[r]]
            if cb != 0:
                row = self.rows[r]
                obj = [a - cb * bb for a, bb in zip(obj, row[:-1])]
                value += cb * row[-1]
        self.obj = obj
        self.value = value

    def set_objective(self, c: Sequence[Frac]) -> None:
        """Install a new objective over the variable block and price out the basis."""
        if len(c) != self.n:
            raise DomainError("objective length mismatch")
        self.c_real = [Frac(x) for x in c]
        self._install_objective(self.c_real + [ZERO] * (self.ncols - self.n))

    def optimize(self) -> str:
        """Bland pivoting to optimality; requires a feasible current basis."""
        while True:
            enter = next((j for j in range(self.banned_from) if self.obj[j] > 0), None)
            if enter is None:
                return "optimal"
            leave = None
            best = None
            for r in range(self.m):
                a = self.rows[r][enter]
                if a > 0:
                    ratio = self.rows[r][-1] / a
                    if best is None or ratio < best or (
                            ratio == best and self.basis[r] < self.basis[leave]):
                        best = ratio
                        leave = r
            if leave is None:
                return "unbounded"
            self._pivot(leave, enter)

    # -- feasibility --------------------------------------------------------

    def ensure_feasible(self) -> bool:
        """Phase one with artificials on negative-rhs rows; True iff feasible."""
        if self._feasible:
            return True
        bad = [r for r in range(self.m) if self.rows[r][-1] < 0]
        k = len(bad)
        art_from = self.ncols
        for r in range(self.m):
            row = self.rows[r]
            if r in bad:
                row = [-v for v in row]
            art = [ZERO] * k
            if r in bad:
                art[bad.index(r)] = ONE
            self.rows[r] = row[:-1] + art + [row[-1]]
        for pos, r in enumerate(bad):
            self.basis[r] = art_from + pos
        self.ncols += k
        self.banned_from = self.ncols
        phase1 = [ZERO] * art_from + [Frac(-1)] * k
        self._install_objective(phase1)
        status = self.optimize()
        assert status == "optimal"  # phase-one objective is bounded above by 0
        if self.value != 0:
            return False
        # drive artificials out of the basis where a real pivot exists
        for r in range(self.m):
            if self.basis[r] >= art_from:
                jc = next((j for j in range(art_from) if self.rows[r][j] != 0), None)
                if jc is not None:
                    self.obj = [ZERO] * (self.ncols)
                    self._pivot(r, jc)
        self.banned_from = art_from
        self._feasible = True
        return True

    # -- reading the solution ------------------------------------------------

    def solve(self) -> str:
        if not self.ensure_feasible():
            return "infeasible"
        self._install_objective(self.c_real + [ZERO] * (self.ncols - self.n))
        return self.optimize()

    def primal(self) -> list[Frac]:
        x = [ZERO] * self.ncols
        for r in range(self.m):
            x[self.basis[r]] = self.rows[r][-1]
        return x[: self.n]

    def duals(self) -> list[Frac]:
        """Multipliers u >= 0 on the <= rows with u.b = value at optimality.

        Reading -obj at each slack column is sign-correct even for rows that
        phase one negated, and ignores artificial columns entirely.
        """
        return [-self.obj[self.n + i] for i in range(self.m)]


@dataclass(frozen=True)
class StandardLp:
    """General LP: free variables, rows (coeffs, relation, rhs), max or min."""

    objective: tuple[Frac, ...]
    constraints: tuple[tuple[tuple[Frac, ...], str, Frac], ...]
    sense: str = "max"

    def __post_init__(self):
        if self.sense not in ("max", "min"):
            raise DomainError("sense must be max or min")
        for coeffs, rel, _ in self.constraints:
            if len(coeffs) != len(self.objective):
                raise DomainError("constraint dimension mismatch")
            if rel not in (LE, GE, EQ):
                raise DomainError(f"unknown relation {rel}")


@dataclass(frozen=True)
class SimplexResult:
    status: str  # optimal | unbounded | infeasible
    value: Frac | None = None
    point: tuple[Frac, ...] | None = None
    duals: tuple[Frac, ...] | None = None


def simplex_exact(lp: StandardLp) -> SimplexResult:
    """Solve exactly; at optimality sum_i u_i b_i = value and sum_i u_i a_i = c."""
    n = len(lp.objective)
    sign = 1 if lp.sense == "max" else -1
    # split every variable: x = p - q with p, q >= 0; equalities become row pairs
    canon_rows: list[list[Frac]] = []
    canon_b: list[Frac] = []
    row_map: list[tuple[int, int]] = []  # (original row index, orientation)
    for ridx, (coeffs, rel, rhs) in enumerate(lp.constraints):
        pos = [Frac(x) for x in coeffs]
        neg = [-x for x in pos]
        if rel in (LE, EQ):
            canon_rows.append(pos + neg)
            canon_b.append(Frac(rhs))
            row_map.append((ridx, +1))
        if rel in (GE, EQ):
            canon_rows.append(neg + pos)
            canon_b.append(-Frac(rhs))
            row_map.append((ridx, -1))
    c = [sign * Frac(x) for x in lp.objective] + [-sign * Frac(x) for x in lp.objective]
    tab = Tableau(canon_rows, canon_b, c)
    status = tab.solve()
    if status != "optimal":
        return SimplexResult(status)
    xs = tab.primal()
    point = tuple(xs[j] - xs[n + j] for j in range(n))
    duals = [ZERO] * len(lp.constraints)
    for (ridx, orient), yi in zip(row_map, tab.duals()):
        duals[ridx] += sign * orient * yi
    return SimplexResult("optimal", sign * tab.value, point, tuple(duals))
