"""Distorted reductions between problems, their verifiers, and composition.

A reduction carries instance/solution maps plus nonnegative distortion
matrices tying the two guarantee gaps together multiplicatively (M1) and
additively (M2).  Verification is entrywise exact rational equality; there is
no tolerance anywhere in this module.  Composition pulls a factorization of
the target slack matrix back through the maps and Hadamard-multiplies it with
a factorization of M1, following the size bound
    size <= size(F_M2) + size(F_M1) + nonnegFactors(F_M1) * size(F_target).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .problems import (
    DomainError, Frac, FractionalProblem, OptimizationProblem,
    brute_force_opt, brute_force_opt_fractional,
)
from .slack import (
    Matrix, NonnegFactorization, SlackMatrix, as_matrix, build_slack_matrix,
    verify_factorization,
)
from .verdict import Verdict, accept, reject


def _fn(g) -> Callable:
    if callable(g):
        return g
    if isinstance(g, dict):
        return lambda inst: g[inst]
    return lambda inst: Frac(g)


@dataclass(frozen=True)
class ReductionRecord:
    """Guarantee-respecting reduction between two enumerated problems."""

    source: OptimizationProblem
    target: OptimizationProblem
    c1: dict
    s1: dict
    c2: dict
    s2: dict
    instance_map: dict
    solution_map: dict
    m1: Matrix  # source instances x source solutions
    m2: Matrix

    @staticmethod
    def build(source, target, c1, s1, c2, s2, instance_map, solution_map, m1, m2):
        c1f, s1f = _fn(c1), _fn(s1)
        images = {i: instance_map[i] for i in source.instances}
        c2f, s2f = _fn(c2), _fn(s2)
        return ReductionRecord(
            source, target,
            {i: Frac(c1f(i)) for i in source.instances},
            {i: Frac(s1f(i)) for i in source.instances},
            {img: Frac(c2f(img)) for img in images.values()},
            {img: Frac(s2f(img)) for img in images.values()},
            dict(instance_map), dict(solution_map), as_matrix(m1), as_matrix(m2))


def constant_matrix(value, nrows: int, ncols: int) -> Matrix:
    v = Frac(value)
    return tuple(tuple(v for _ in range(ncols)) for _ in range(nrows))


def verify_reduction(rec: ReductionRecord) -> Verdict:
    """Entrywise completeness, implication-style soundness, and nonnegativity."""
    src, tgt = rec.source, rec.target
    t1, t2 = src.tau, tgt.tau
    for name, m in (("M1", rec.m1), ("M2", rec.m2)):
        if len(m) != len(src.instances) or (m and len(m[0]) != len(src.solutions)):
            return reject("shape", witness=name, detail=f"{name} has wrong shape")
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                if x < 0:
                    return reject("nonnegativity", witness=(name, i, j),
                                  detail=f"{name}[{i}][{j}] = {x} is negative")
    for i, inst in enumerate(src.instances):
        img = rec.instance_map[inst]
        for j, sol in enumerate(src.solutions):
            sol_img = rec.solution_map[sol]
            lhs = t1 * (rec.c1[inst] - src.measure(inst, sol))
            gap2 = t2 * (rec.c2[img] - tgt.measure(img, sol_img))
            rhs = gap2 * rec.m1[i][j] + rec.m2[i][j]
            if lhs != rhs:
                return reject("completeness", witness=(i, j),
                              detail=f"instance {i}, solution {j}: {lhs} != {rhs}")
    for i, inst in enumerate(src.instances):
        opt1, _ = brute_force_opt(src, inst)
        if t1 * opt1 <= t1 * rec.s1[inst]:
            img = rec.instance_map[inst]
            opt2, _ = brute_force_opt(tgt, img)
            if not t2 * opt2 <= t2 * rec.s2[img]:
                return reject("soundness", witness=i,
                              detail=f"instance {i}: target optimum {opt2} violates "
                                     f"soundness guarantee {rec.s2[img]}")
    return accept()


@dataclass(frozen=True)
class FractionalReductionRecord:
    """Reduction between fractional problems; four distortion matrices."""

    source: FractionalProblem
    target: FractionalProblem
    c1: dict
    s1: dict
    c2: dict
    s2: dict
    instance_map: dict
    solution_map: dict
    m1n: Matrix
    m2n: Matrix
    m1d: Matrix
    m2d: Matrix

    @staticmethod
    def build(source, target, c1, s1, c2, s2, instance_map, solution_map,
              m1n, m2n, m1d, m2d):
        c1f, s1f, c2f, s2f = _fn(c1), _fn(s1), _fn(c2), _fn(s2)
        images = {i: instance_map[i] for i in source.instances}
        return FractionalReductionRecord(
            source, target,
            {i: Frac(c1f(i)) for i in source.instances},
            {i: Frac(s1f(i)) for i in source.instances},
            {img: Frac(c2f(img)) for img in images.values()},
            {img: Frac(s2f(img)) for img in images.values()},
            dict(instance_map), dict(solution_map),
            as_matrix(m1n), as_matrix(m2n), as_matrix(m1d), as_matrix(m2d))


def verify_fractional_reduction(rec: FractionalReductionRecord) -> Verdict:
    """Completeness, denominator, soundness, and nonnegativity clauses, all exact."""
    src, tgt = rec.source, rec.target
    t1, t2 = src.tau, tgt.tau
    for name, m in (("M1n", rec.m1n), ("M2n", rec.m2n), ("M1d", rec.m1d), ("M2d", rec.m2d)):
        if len(m) != len(src.instances) or (m and len(m[0]) != len(src.solutions)):
            return reject("shape", witness=name, detail=f"{name} has wrong shape")
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                if x < 0:
                    return reject("nonnegativity", witness=(name, i, j),
                                  detail=f"{name}[{i}][{j}] = {x} is negative")
    for i, inst in enumerate(src.instances):
        img = rec.instance_map[inst]
        for j, sol in enumerate(src.solutions):
            sol_img = rec.solution_map[sol]
            n1 = src.measure_num(inst, sol)
            d1 = src.measure_den(inst, sol)
            n2 = tgt.measure_num(img, sol_img)
            d2 = tgt.measure_den(img, sol_img)
            lhs = t1 * (rec.c1[inst] * d1 - n1)
            rhs = t2 * (rec.c2[img] * d2 - n2) * rec.m1n[i][j] + rec.m2n[i][j]
            if lhs != rhs:
                return reject("completeness", witness=(i, j),
                              detail=f"instance {i}, solution {j}: {lhs} != {rhs}")
            if d1 != d2 * rec.m1d[i][j] + rec.m2d[i][j]:
                return reject("denominator", witness=(i, j),
                              detail=f"instance {i}, solution {j}: denominator identity fails")
    for i, inst in enumerate(src.instances):
        opt1, _ = brute_force_opt_fractional(src, inst)
        if t1 * opt1 <= t1 * rec.s1[inst]:
            img = rec.instance_map[inst]
            opt2, _ = brute_force_opt_fractional(tgt, img)
            if not t2 * opt2 <= t2 * rec.s2[img]:
                return reject("soundness", witness=i,
                              detail=f"instance {i}: target optimum {opt2} violates "
                                     f"soundness guarantee {rec.s2[img]}")
    return accept()


# ---------------------------------------------------------------------------
# Composition
# ---------------------------------------------------------------------------


def _restrict_rows(fact: NonnegFactorization, keep: list[int]) -> NonnegFactorization:
    factors = tuple((tuple(rv[i] for i in keep), cv) for rv, cv in fact.factors)
    uniform = None if fact.uniform is None else tuple(fact.uniform[i] for i in keep)
    return NonnegFactorization(factors, uniform)


def compose_factorizations(rec: ReductionRecord,
                           f_target: NonnegFactorization,
                           f_m1: NonnegFactorization,
                           f_m2: NonnegFactorization) -> NonnegFactorization:
    """Factorize the source slack matrix from target/M1/M2 factorizations.

    The target factorization is pulled back through the instance and solution
    maps (the selector matrices are never materialized), Hadamard-paired with
    every nonnegative factor of M1, and the uniform part of the target is
    routed through M1 as well; M2 is added verbatim.  The output is verified
    against the source slack matrix before being returned.
    """
    src, tgt = rec.source, rec.target
    source_slack = build_slack_matrix(src, rec.c1, rec.s1)
    target_slack = build_slack_matrix(tgt, rec.c2, rec.s2)
    v = verify_factorization(target_slack, f_target)
    if not v.ok:
        raise DomainError(f"target factorization invalid: {v.detail}")
    row_idx = [src.instance_index(i) for i in source_slack.rows]  # into M1/M2 rows
    m1_rows = [rec.m1[i] for i in row_idx]
    m2_rows = [rec.m2[i] for i in row_idx]
    filtered = len(row_idx) != len(rec.m1)
    f_m1_r = _restrict_rows(f_m1, row_idx) if filtered else f_m1
    f_m2_r = _restrict_rows(f_m2, row_idx) if filtered else f_m2
    for name, mat, fac in (("M1", m1_rows, f_m1_r), ("M2", m2_rows, f_m2_r)):
        vv = verify_factorization(mat, fac)
        if not vv.ok:
            raise DomainError(f"{name} factorization invalid on filtered rows: {vv.detail}")

    tgt_row_of = {inst: target_slack.rows.index(rec.instance_map[inst])
                  for inst in source_slack.rows}
    tgt_col_of = {sol: target_slack.cols.index(rec.solution_map[sol])
                  for sol in source_slack.cols}
    nrows = len(source_slack.rows)
    ncols = len(source_slack.cols)
    pull_rows = [tgt_row_of[inst] for inst in source_slack.rows]
    pull_cols = [tgt_col_of[sol] for sol in source_slack.cols]

    m1_factors = list(f_m1_r.factors)
    if f_m1_r.uniform is not None and any(x != 0 for x in f_m1_r.uniform):
        m1_factors.append((f_m1_r.uniform, tuple(Fraction(1) for _ in range(ncols))))

    factors = []
    # pulled-back target factors, Hadamard-paired with each factor of M1
    for t_rv, t_cv in f_target.factors:
        p_rv = [t_rv[i] for i in pull_rows]
        p_cv = [t_cv[j] for j in pull_cols]
        for e_rv, e_cv in m1_factors:
            factors.append((tuple(a * b for a, b in zip(p_rv, e_rv)),
                            tuple(a * b for a, b in zip(p_cv, e_cv))))
    # uniform part of the target routed through M1: diag(a o maps) . M1
    uniform_out = [Fraction(0)] * nrows
    if f_target.uniform is not None and any(x != 0 for x in f_target.uniform):
        a_pull = [f_target.uniform[i] for i in pull_rows]
        for e_rv, e_cv in f_m1_r.factors:
            factors.append((tuple(a * b for a, b in zip(a_pull, e_rv)), e_cv))
        if f_m1_r.uniform is not None:
            uniform_out = [a * u for a, u in zip(a_pull, f_m1_r.uniform)]
    # plus M2
    factors.extend(f_m2_r.factors)
    if f_m2_r.uniform is not None:
        uniform_out = [x + u for x, u in zip(uniform_out, f_m2_r.uniform)]
    uniform = tuple(uniform_out) if any(x != 0 for x in uniform_out) else None
    out = NonnegFactorization(tuple(factors), uniform)
    vv = verify_factorization(source_slack, out)
    if not vv.ok:
        raise AssertionError(f"internal: composed factorization invalid: {vv.detail}")
    return out


def reduction_size_bound(rec: ReductionRecord, fc_target_bound: int,
                         f_m1: NonnegFactorization, f_m2: NonnegFactorization) -> int:
    """Witnessed right-hand side: size(M2) + size(M1) + nonnegFactors(M1) * target bound.

    Constant nonnegative distortion matrices are pure uniform terms, hence
    contribute 0 to the two size summands and 1 to the nonnegative factor
    count (reported as such even where prose arguments round it up to 1).
    """
    if f_m1 is None or f_m2 is None:
        raise DomainError("factorization witnesses are required")
    for name, mat, fac in (("M1", rec.m1, f_m1), ("M2", rec.m2, f_m2)):
        v = verify_factorization(mat, fac)
        if not v.ok:
            raise DomainError(f"witness for {name} fails verification: {v.detail}")
    return f_m2.size + f_m1.size + f_m1.nonneg_factor_count() * fc_target_bound
