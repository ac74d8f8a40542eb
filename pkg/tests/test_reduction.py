from fractions import Fraction as F

import pytest

from lpworkbench.problems import (
    Graph, ScInstance, brute_force_opt, matching_problem, maxcut_fraction_uniform,
    sparsest_cut_problem,
)
from lpworkbench.reduction import (
    FractionalReductionRecord, ReductionRecord, compose_factorizations,
    constant_matrix, reduction_size_bound, verify_fractional_reduction,
    verify_reduction,
)
from lpworkbench.slack import (
    NonnegFactorization, build_slack_matrix, search_small_factorization,
    trivial_factorization, verify_factorization,
)


def identity_record(problem, c, s):
    n, m = len(problem.instances), len(problem.solutions)
    return ReductionRecord.build(
        problem, problem, c, s, c, s,
        {i: i for i in problem.instances},
        {x: x for x in problem.solutions},
        constant_matrix(1, n, m), constant_matrix(0, n, m))


def opt_table(problem):
    return {i: brute_force_opt(problem, i)[0] for i in problem.instances}


def test_identity_reduction_accepts():
    p = matching_problem(Graph.complete(4))
    opt = opt_table(p)
    rec = identity_record(p, opt, opt)
    assert verify_reduction(rec).ok


def test_negative_entry_rejected():
    p = matching_problem(Graph.complete(4))
    opt = opt_table(p)
    rec = identity_record(p, opt, opt)
    m2 = [list(r) for r in rec.m2]
    m2[0][0] = F(-1)
    bad = ReductionRecord(rec.source, rec.target, rec.c1, rec.s1, rec.c2, rec.s2,
                          rec.instance_map, rec.solution_map, rec.m1,
                          tuple(tuple(r) for r in m2))
    v = verify_reduction(bad)
    assert not v.ok and v.clause == "nonnegativity"


def test_completeness_failure_names_entry():
    p = matching_problem(Graph.complete(4))
    opt = opt_table(p)
    rec = identity_record(p, opt, opt)
    m1 = [list(r) for r in rec.m1]
    m1[3][1] = F(7)
    bad = ReductionRecord(rec.source, rec.target, rec.c1, rec.s1, rec.c2, rec.s2,
                          rec.instance_map, rec.solution_map,
                          tuple(tuple(r) for r in m1), rec.m2)
    v = verify_reduction(bad)
    assert not v.ok and v.clause == "completeness"


def test_soundness_monotone_in_s1():
    # shrinking the set of sound source instances never flips accept to reject
    p = matching_problem(Graph.complete(4))
    opt = opt_table(p)
    rec = identity_record(p, opt, opt)
    assert verify_reduction(rec).ok
    weaker = {i: opt[i] - 1 for i in p.instances}  # max problem: fewer instances pass
    rec2 = ReductionRecord(rec.source, rec.target, rec.c1, weaker, rec.c2, rec.s2,
                           rec.instance_map, rec.solution_map, rec.m1, rec.m2)
    assert verify_reduction(rec2).ok


def test_compose_identity_keeps_size():
    p = matching_problem(Graph.complete(4))
    opt = opt_table(p)
    rec = identity_record(p, opt, opt)
    slack = build_slack_matrix(p, opt, opt)
    f_t = search_small_factorization(slack, iters=1500, seed=0)
    n, m = len(p.instances), len(p.solutions)
    f_m1 = NonnegFactorization((), tuple(F(1) for _ in range(n)))
    f_m2 = NonnegFactorization((), None)
    out = compose_factorizations(rec, f_t, f_m1, f_m2)
    assert out.size == f_t.size
    assert verify_factorization(slack, out).ok
    assert out.size <= reduction_size_bound(rec, f_t.size, f_m1, f_m2)


def test_compose_one_by_one_sanity():
    # source entry 6 = target entry 2 times distortion 3 plus 0
    from lpworkbench.problems import OptimizationProblem
    src = OptimizationProblem("src", "max", ("i",), ("s",), lambda i, s: F(0))
    tgt = OptimizationProblem("tgt", "max", ("i",), ("s",), lambda i, s: F(0))
    rec = ReductionRecord.build(src, tgt, {"i": F(6)}, {"i": F(0)},
                                {"i": F(2)}, {"i": F(0)},
                                {"i": "i"}, {"s": "s"},
                                ((F(3),),), ((F(0),),))
    assert verify_reduction(rec).ok
    f_t = NonnegFactorization((((F(2),), (F(1),)),), None)
    f_m1 = NonnegFactorization((((F(3),), (F(1),)),), None)
    f_m2 = NonnegFactorization((), None)
    out = compose_factorizations(rec, f_t, f_m1, f_m2)
    assert out.entry(0, 0) == 6


def test_size_bound_examples():
    p = matching_problem(Graph.complete(4))
    opt = opt_table(p)
    rec = identity_record(p, opt, opt)
    n = len(p.instances)
    f_m1 = NonnegFactorization((), tuple(F(1) for _ in range(n)))
    f_m2 = NonnegFactorization((), None)
    assert reduction_size_bound(rec, 7, f_m1, f_m2) == 7
    # rank-1 non-uniform M1 with zero M2: 1 + 0 + 1*7 = 8
    m1_rank1 = NonnegFactorization(
        (((F(1),) * n, tuple(F(1) for _ in p.solutions)),), None)
    assert reduction_size_bound(rec, 7, m1_rank1, f_m2) == 8


def sparsest_cut_fixture():
    g = Graph.build(2, [(1, 2)], [1, 2])
    src = maxcut_fraction_uniform(2, [g])
    cap = (((1, 3), F(1, 2)), ((1, 4), F(1, 2)), ((2, 3), F(1, 2)), ((2, 4), F(1, 2)))
    dem = (((1, 2), F(1)),)
    inst = ScInstance(4, 2, cap, dem)
    tgt = sparsest_cut_problem(4, 2, [inst])
    imap = {g: inst}
    smap = {s: frozenset(s | {3}) for s in src.solutions}  # u encoded as vertex 3
    nr, nc = 1, len(src.solutions)
    return src, tgt, g, inst, imap, smap, nr, nc


def test_fractional_reduction_trivial_denominator():
    src, tgt, g, inst, imap, smap, nr, nc = sparsest_cut_fixture()
    # denominator witness: M1d = 0, M2d = source denominator (identically 1)
    rec = FractionalReductionRecord.build(
        src, tgt, {g: F(1)}, {g: F(1)}, {inst: F(1)}, {inst: F(1)},
        imap, smap,
        constant_matrix(1, nr, nc), constant_matrix(0, nr, nc),
        constant_matrix(0, nr, nc), constant_matrix(1, nr, nc))
    v = verify_fractional_reduction(rec)
    assert v.ok, v.detail


def test_fractional_reduction_detects_completeness_break():
    src, tgt, g, inst, imap, smap, nr, nc = sparsest_cut_fixture()
    rec = FractionalReductionRecord.build(
        src, tgt, {g: F(1)}, {g: F(1)}, {inst: F(1)}, {inst: F(1)},
        imap, smap,
        constant_matrix(1, nr, nc), constant_matrix(1, nr, nc),
        constant_matrix(0, nr, nc), constant_matrix(1, nr, nc))
    v = verify_fractional_reduction(rec)
    assert not v.ok and v.clause == "completeness"
