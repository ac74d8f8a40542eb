"""Slack matrices, nonnegative/LP factorizations, and the proof correspondence.

A slack matrix row is an instance surviving the soundness filter, a column is
a solution, and the entry is the (sign-adjusted) gap between the completeness
guarantee and the measured value.  Factorizations certify LP formulations in
both directions: a factorization yields an explicit nonnegativity proof over
the nonnegative orthant, and a proof yields a factorization through exact
dual multipliers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .linalg import rank_exact
from .problems import (
    DomainError, Frac, FractionalProblem, GuaranteeViolation,
    OptimizationProblem, brute_force_opt, brute_force_opt_fractional,
)
from .simplex import GE, LE, StandardLp, simplex_exact
from .verdict import Verdict, accept, reject

Matrix = tuple[tuple[Frac, ...], ...]


def as_matrix(rows: Sequence[Sequence[Frac]]) -> Matrix:
    return tuple(tuple(Frac(x) for x in row) for row in rows)


def _guarantee_fn(g) -> Callable:
    if callable(g):
        return g
    if isinstance(g, dict):
        return lambda inst: g[inst]
    return lambda inst: Frac(g)


@dataclass(frozen=True)
class SlackMatrix:
    """Guarantee-minus-value gaps over filtered instances times solutions."""

    problem_name: str
    tau: int
    rows: tuple  # instances passing the soundness filter
    cols: tuple  # all solutions
    entries: Matrix
    completeness: tuple[Frac, ...]  # C per row
    soundness: tuple[Frac, ...]  # S per row

    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)


@dataclass(frozen=True)
class FractionalSlackMatrix:
    """Denominator block stacked over the completeness block."""

    problem_name: str
    tau: int
    rows: tuple
    cols: tuple
    den_block: Matrix
    num_block: Matrix

    def stacked(self) -> Matrix:
        return self.den_block + self.num_block


def soundness_filter(problem: OptimizationProblem, s_fn) -> list:
    """Instances whose optimum respects the soundness guarantee."""
    s_fn = _guarantee_fn(s_fn)
    tau = problem.tau
    kept = []
    for inst in problem.instances:
        opt, _ = brute_force_opt(problem, inst)
        if tau * opt <= tau * s_fn(inst):
            kept.append(inst)
    return kept


def build_slack_matrix(problem: OptimizationProblem, c_fn, s_fn) -> SlackMatrix:
    """Filter rows by the soundness guarantee, then take tau*(C - value) gaps.

    A negative entry means C fails to dominate on a kept instance and aborts
    construction, naming the offending (instance, solution).
    """
    c_fn, s_fn = _guarantee_fn(c_fn), _guarantee_fn(s_fn)
    tau = problem.tau
    rows = soundness_filter(problem, s_fn)
    entries = []
    for inst in rows:
        c = Frac(c_fn(inst))
        row = []
        for sol in problem.solutions:
            v = tau * (c - problem.measure(inst, sol))
            if v < 0:
                raise GuaranteeViolation(
                    f"negative slack at instance {inst!r}, solution {sol!r}: {v}")
            row.append(v)
        entries.append(row)
    return SlackMatrix(problem.name, tau, tuple(rows), tuple(problem.solutions),
                       as_matrix(entries),
                       tuple(Frac(c_fn(i)) for i in rows),
                       tuple(Frac(s_fn(i)) for i in rows))


def build_fractional_slack(problem: FractionalProblem, c_fn, s_fn) -> FractionalSlackMatrix:
    """Denominators and tau*(C*den - num) gaps over soundness-filtered rows."""
    c_fn, s_fn = _guarantee_fn(c_fn), _guarantee_fn(s_fn)
    tau = problem.tau
    rows = []
    for inst in problem.instances:
        opt, _ = brute_force_opt_fractional(problem, inst)
        if tau * opt <= tau * Frac(s_fn(inst)):
            rows.append(inst)
    den_rows, num_rows = [], []
    for inst in rows:
        c = Frac(c_fn(inst))
        dr, nr = [], []
        for sol in problem.solutions:
            den = problem.measure_den(inst, sol)
            num = problem.measure_num(inst, sol)
            if den < 0:
                raise GuaranteeViolation(f"negative denominator at {inst!r}, {sol!r}")
            gap = tau * (c * den - num)
            if gap < 0:
                raise GuaranteeViolation(
                    f"negative slack at instance {inst!r}, solution {sol!r}: {gap}")
            dr.append(den)
            nr.append(gap)
        den_rows.append(dr)
        num_rows.append(nr)
    return FractionalSlackMatrix(problem.name, tau, tuple(rows), tuple(problem.solutions),
                                 as_matrix(den_rows), as_matrix(num_rows))


# ---------------------------------------------------------------------------
# Factorizations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NonnegFactorization:
    """Sum of nonnegative rank-1 terms plus an optional equal-columns term.

    factors are (row_vector, column_vector) outer products; uniform is a
    per-row vector whose term repeats it in every column.  The size counts
    only the rank-1 factors, matching how LP formulations are measured.
    """

    factors: tuple[tuple[tuple[Frac, ...], tuple[Frac, ...]], ...]
    uniform: tuple[Frac, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.factors)

    def nonneg_factor_count(self) -> int:
        extra = 1 if self.uniform is not None and any(u != 0 for u in self.uniform) else 0
        return len(self.factors) + extra

    def entry(self, i: int, j: int) -> Frac:
        v = sum((rv[i] * cv[j] for rv, cv in self.factors), Frac(0))
        if self.uniform is not None:
            v += self.uniform[i]
        return v


def _entries_of(m) -> Matrix:
    if isinstance(m, SlackMatrix):
        return m.entries
    if isinstance(m, FractionalSlackMatrix):
        return m.stacked()
    return as_matrix(m)


def verify_factorization(m, fact: NonnegFactorization) -> Verdict:
    """Exact equality of the sum with every component nonnegative."""
    entries = _entries_of(m)
    nrows = len(entries)
    ncols = len(entries[0]) if nrows else 0
    for fi, (rv, cv) in enumerate(fact.factors):
        if len(rv) != nrows or len(cv) != ncols:
            return reject("shape", witness=fi, detail=f"factor {fi} has wrong shape")
        for i, x in enumerate(rv):
            if x < 0:
                return reject("nonnegativity", witness=("factor-row", fi, i),
                              detail=f"factor {fi} row entry {i} is negative")
        for j, x in enumerate(cv):
            if x < 0:
                return reject("nonnegativity", witness=("factor-col", fi, j),
                              detail=f"factor {fi} column entry {j} is negative")
    if fact.uniform is not None:
        if len(fact.uniform) != nrows:
            return reject("shape", witness="uniform", detail="uniform term has wrong length")
        for i, x in enumerate(fact.uniform):
            if x < 0:
                return reject("nonnegativity", witness=("uniform", i),
                              detail=f"uniform entry {i} is negative")
    for i in range(nrows):
        for j in range(ncols):
            got = fact.entry(i, j)
            if got != entries[i][j]:
                return reject("equality", witness=(i, j),
                              detail=f"entry ({i},{j}): factorization gives {got}, "
                                     f"matrix has {entries[i][j]}")
    return accept()


def rank_lower_bound(m) -> int:
    """Rational rank; nonnegative rank is at least this, LP rank at least this minus 1."""
    entries = _entries_of(m)
    return rank_exact([list(r) for r in entries])


def trivial_factorization(m) -> NonnegFactorization:
    """One factor per column; valid for any nonnegative matrix."""
    entries = _entries_of(m)
    nrows = len(entries)
    ncols = len(entries[0]) if nrows else 0
    factors = []
    for j in range(ncols):
        col = tuple(entries[i][j] for i in range(nrows))
        ind = tuple(Frac(1) if jj == j else Frac(0) for jj in range(ncols))
        factors.append((col, ind))
    return NonnegFactorization(tuple(factors), None)


@dataclass(frozen=True)
class NmfResult:
    residual: float
    w: tuple[tuple[float, ...], ...]
    h: tuple[tuple[float, ...], ...]
    certified: NonnegFactorization | None


def nmf_upper_bound(m, r: int, iters: int = 4000, seed: int = 0,
                    tol: float = 1e-6, max_denominator: int = 10 ** 6) -> NmfResult:
    """Multiplicative-update NMF from a seeded start, with exact recertification.

    The float factorization only counts as an upper-bound witness when its
    rounding to small-denominator rationals reproduces the matrix exactly;
    otherwise `certified` is None and only the residual is meaningful.
    """
    if r < 1:
        raise DomainError("rank parameter must be positive")
    entries = _entries_of(m)
    a = np.array([[float(x) for x in row] for row in entries], dtype=float)
    if (a < 0).any():
        raise DomainError("matrix must be nonnegative")
    nrows, ncols = a.shape
    eps = 1e-12

    def run(w, h):
        for _ in range(iters):
            wh = w @ h
            h *= (w.T @ a) / np.maximum(w.T @ wh, eps)
            wh = w @ h
            w *= (a @ h.T) / np.maximum(wh @ h.T, eps)
        return float(np.linalg.norm(a - w @ h)), w, h

    starts = []
    if r >= ncols:  # exact start W = [A | pad], H = [I; pad]
        w0 = np.hstack([a, np.full((nrows, r - ncols), 0.01)]) + eps
        h0 = np.vstack([np.eye(ncols), np.full((r - ncols, ncols), 0.01)]) + eps
        starts.append((w0, h0))
    elif r >= nrows:
        w0 = np.hstack([np.eye(nrows), np.full((nrows, r - nrows), 0.01)]) + eps
        h0 = np.vstack([a, np.full((r - nrows, ncols), 0.01)]) + eps
        starts.append((w0, h0))
    rng = np.random.default_rng(seed)
    scale = max(a.max(), 1.0)
    for _ in range(3):
        starts.append((rng.uniform(0.1, 1.0, size=(nrows, r)) * np.sqrt(scale),
                       rng.uniform(0.1, 1.0, size=(r, ncols)) * np.sqrt(scale)))
    residual, w, h = min((run(w0.copy(), h0.copy()) for w0, h0 in starts),
                         key=lambda t: t[0])
    certified = None
    if residual <= tol:
        certified = _certify_rounding(entries, w, h, max_denominator)
    return NmfResult(residual, tuple(map(tuple, w)), tuple(map(tuple, h)), certified)


def _certify_rounding(entries: Matrix, w, h, max_denominator: int) -> NonnegFactorization | None:
    """Round one float factor to rationals and recover the other by exact solves.

    Scale is normalized into the solved-for side first (rounding both sides
    rarely multiplies back exactly); both orientations are tried, then the
    naive both-sides rounding as a last resort.
    """
    from .linalg import solve_linear_system

    nrows = len(entries)
    ncols = len(entries[0]) if nrows else 0
    r = w.shape[1]

    def rat(x) -> Fraction:
        f = Fraction(float(x)).limit_denominator(max_denominator)
        return f if f > 0 else Fraction(0)

    def check(factors) -> NonnegFactorization | None:
        cand = NonnegFactorization(tuple(factors), None)
        return cand if verify_factorization(entries, cand).ok else None

    # orientation 1: round column-normalized W, solve W.H = M column by column
    wn, hn = w.copy(), h.copy()
    for k in range(r):
        mx = wn[:, k].max()
        if mx > 0:
            wn[:, k] /= mx
            hn[k, :] *= mx
    w_rat = [[rat(wn[i, k]) for k in range(r)] for i in range(nrows)]
    h_cols = []
    for j in range(ncols):
        res = solve_linear_system(w_rat, [entries[i][j] for i in range(nrows)])
        if res[0] == "inconsistent" or any(v < 0 for v in res[1]):
            h_cols = None
            break
        h_cols.append(res[1])
    if h_cols is not None:
        cand = check(((tuple(w_rat[i][k] for i in range(nrows)),
                       tuple(h_cols[j][k] for j in range(ncols))) for k in range(r)))
        if cand is not None:
            return cand
    # orientation 2: round row-normalized H, solve H^T.w_i = M[i,:] row by row
    wn, hn = w.copy(), h.copy()
    for k in range(r):
        mx = hn[k, :].max()
        if mx > 0:
            hn[k, :] /= mx
            wn[:, k] *= mx
    h_rat = [[rat(hn[k, j]) for k in range(r)] for j in range(ncols)]
    w_rows = []
    for i in range(nrows):
        res = solve_linear_system(h_rat, [entries[i][j] for j in range(ncols)])
        if res[0] == "inconsistent" or any(v < 0 for v in res[1]):
            w_rows = None
            break
        w_rows.append(res[1])
    if w_rows is not None:
        cand = check(((tuple(w_rows[i][k] for i in range(nrows)),
                       tuple(h_rat[j][k] for j in range(ncols))) for k in range(r)))
        if cand is not None:
            return cand
    return check(((tuple(rat(w[i, k]) for i in range(nrows)),
                   tuple(rat(h[k, j]) for j in range(ncols))) for k in range(r)))


def search_small_factorization(m, iters: int = 3000, seed: int = 0,
                               restarts: int = 3) -> NonnegFactorization:
    """Smallest exactly-certified factorization found by NMF, else the trivial one.

    Candidates are compared by (size, lexicographic encoding) so concurrent
    searches would reduce deterministically.
    """
    entries = _entries_of(m)
    best = trivial_factorization(entries)
    nrows = len(entries)
    ncols = len(entries[0]) if nrows else 0
    if nrows and any(any(x != 0 for x in row) for row in entries):
        for r in range(1, min(nrows, ncols, best.size)):
            got = None
            for attempt in range(restarts):
                res = nmf_upper_bound(entries, r, iters=iters, seed=seed + attempt)
                if res.certified is not None:
                    got = res.certified
                    break
            if got is not None:
                best = got
                break
    return best


# ---------------------------------------------------------------------------
# LP proofs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LpProof:
    """Nonnegativity proof: relaxation A x <= b, exact realizations, cone certificate.

    points realize the columns (solutions); each row of `instances` is an
    affine function (gradient, offset) realizing that slack-matrix row.
    """

    a_rows: Matrix
    b: tuple[Frac, ...]
    points: Matrix  # one point per solution column
    gradients: Matrix  # one gradient per instance row
    offsets: tuple[Frac, ...]

    @property
    def dimension(self) -> int:
        if self.points:
            return len(self.points[0])
        return len(self.a_rows[0]) if self.a_rows else 0

    @property
    def size(self) -> int:
        return len(self.a_rows)


class ProofInvalid(ValueError):
    """An LP proof violates one of its defining conditions."""


def check_lp_proof(proof: LpProof, entries: Matrix) -> None:
    """Containment, exactness, and nonnegativity-certificate checks; raises on failure."""
    dim = len(proof.points[0]) if proof.points else 0
    for j, x in enumerate(proof.points):
        for ri, row in enumerate(proof.a_rows):
            lhs = sum(a * xv for a, xv in zip(row, x))
            if lhs > proof.b[ri]:
                raise ProofInvalid(f"containment fails: point {j} violates row {ri}")
    for i, (g, off) in enumerate(zip(proof.gradients, proof.offsets)):
        for j, x in enumerate(proof.points):
            val = sum(a * xv for a, xv in zip(g, x)) + off
            if val != entries[i][j]:
                raise ProofInvalid(
                    f"exactness fails at ({i},{j}): {val} != {entries[i][j]}")
    # nonnegativity on the relaxation, certified by minimizing each w over it
    for i, (g, off) in enumerate(zip(proof.gradients, proof.offsets)):
        lp = StandardLp(tuple(g),
                        tuple((tuple(row), LE, bv) for row, bv in zip(proof.a_rows, proof.b)),
                        sense="min")
        res = simplex_exact(lp)
        if res.status != "optimal" or res.value + off < 0:
            raise ProofInvalid(f"nonnegativity fails for instance row {i}: {res.status}")


def lp_proof_from_factorization(fact: NonnegFactorization, slack: SlackMatrix) -> LpProof:
    """Proof over the nonnegative orthant in one coordinate per factor.

    Solution j is placed at the vector of its column-factor values; instance i
    keeps the row-factor values as its gradient and its uniform part as the
    offset.  All three proof conditions are machine-checked before returning.
    """
    verdict = verify_factorization(slack, fact)
    if not verdict.ok:
        raise ProofInvalid(f"factorization does not match the slack matrix: {verdict.detail}")
    nrows, ncols = slack.shape()
    r = fact.size
    a_rows = as_matrix([[-Frac(k == t) for k in range(r)] for t in range(r)])
    b = tuple(Frac(0) for _ in range(r))
    points = as_matrix([[cv[j] for (_, cv) in fact.factors] for j in range(ncols)])
    gradients = as_matrix([[rv[i] for (rv, _) in fact.factors] for i in range(nrows)])
    offsets = tuple((fact.uniform[i] if fact.uniform is not None else Frac(0))
                    for i in range(nrows))
    proof = LpProof(a_rows, b, points, gradients, offsets)
    check_lp_proof(proof, slack.entries)
    return proof


def factorization_from_lp_proof(proof: LpProof, entries) -> NonnegFactorization:
    """Exact dual multipliers per instance row turn a proof into a factorization.

    For each instance, minimizing its affine function over the relaxation
    yields multipliers u >= 0 with w(x) = u.(b - Ax) + gamma, gamma >= 0;
    substituting the solution points produces one rank-1 factor per LP row
    (zero factors dropped) plus the gammas as the uniform term.
    """
    entries = _entries_of(entries)
    check_lp_proof(proof, entries)
    cons = tuple((tuple(row), LE, bv) for row, bv in zip(proof.a_rows, proof.b))
    m = len(proof.a_rows)
    ncols = len(proof.points)
    row_factors = []  # per LP row: row-vector of multipliers
    gammas = []
    multipliers = []
    for g, off in zip(proof.gradients, proof.offsets):
        res = simplex_exact(StandardLp(tuple(g), cons, sense="min"))
        if res.status != "optimal":
            raise ProofInvalid(f"multiplier system infeasible: {res.status}")
        u = tuple(-d for d in res.duals)  # duals of a min LP are <= 0 on <= rows
        gamma = off + res.value
        if gamma < 0 or any(ui < 0 for ui in u):
            raise ProofInvalid("negative multiplier extracted")
        multipliers.append(u)
        gammas.append(gamma)
    slacks = []
    for x in proof.points:
        slacks.append(tuple(bv - sum(a * xv for a, xv in zip(row, x))
                            for row, bv in zip(proof.a_rows, proof.b)))
    factors = []
    for t in range(m):
        rv = tuple(multipliers[i][t] for i in range(len(proof.gradients)))
        cv = tuple(slacks[j][t] for j in range(ncols))
        if any(v != 0 for v in rv) and any(v != 0 for v in cv):
            factors.append((rv, cv))
    uniform = tuple(gammas)
    fact = NonnegFactorization(tuple(factors),
                               uniform if any(x != 0 for x in uniform) else None)
    verdict = verify_factorization(entries, fact)
    if not verdict.ok:
        raise ProofInvalid(f"extracted factorization failed verification: {verdict.detail}")
    return fact
