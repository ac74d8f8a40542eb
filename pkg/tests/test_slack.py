import random
from fractions import Fraction as F

import pytest

from lpworkbench.problems import Graph, GuaranteeViolation, ScInstance, matching_problem
from lpworkbench.problems import brute_force_opt, sparsest_cut_problem
from lpworkbench.slack import (
    LpProof, NonnegFactorization, ProofInvalid, as_matrix, build_fractional_slack,
    build_slack_matrix, factorization_from_lp_proof, lp_proof_from_factorization,
    nmf_upper_bound, rank_lower_bound, search_small_factorization,
    trivial_factorization, verify_factorization,
)


def matching_k4():
    return matching_problem(Graph.complete(4))


def exact_guarantees(problem):
    cache = {inst: brute_force_opt(problem, inst)[0] for inst in problem.instances}
    return (lambda i: cache[i]), (lambda i: cache[i])


def test_exact_guarantee_slack_has_zero_per_row():
    p = matching_k4()
    c, s = exact_guarantees(p)
    m = build_slack_matrix(p, c, s)
    assert m.shape() == (64, 3)
    for row in m.entries:
        assert min(row) == 0
        assert all(x >= 0 for x in row)


def test_matching_guarantee_example():
    # floor(|V|/2) + (1-eps)/2 guarantee with eps = 1/2, evaluated at the full graph
    p = matching_k4()
    c = lambda h: F(len(h.vertices) // 2) + F(1, 4)
    s = lambda h: brute_force_opt(p, h)[0]
    m = build_slack_matrix(p, c, s)
    i = m.rows.index(Graph.complete(4))
    assert all(x == F(1, 4) for x in m.entries[i])


def test_minimization_flips_sign():
    from lpworkbench.problems import vertex_cover_uniform
    p = vertex_cover_uniform(2)
    c, s = exact_guarantees(p)
    m = build_slack_matrix(p, c, s)
    assert m.tau == -1
    g = Graph.build(2, [(1, 2)], [1, 2])
    i = m.rows.index(g)
    j = m.cols.index(frozenset({1, 2}))
    assert m.entries[i][j] == 1  # val - OPT = 2 - 1


def test_bad_guarantee_fails_loudly():
    p = matching_k4()
    with pytest.raises(GuaranteeViolation):
        build_slack_matrix(p, lambda h: F(0), lambda h: F(10))


def test_fractional_slack_k3():
    ones = tuple((e, F(1)) for e in [(1, 2), (1, 3), (2, 3)])
    inst = ScInstance(3, 2, ones, ones)
    p = sparsest_cut_problem(3, 2, [inst])
    m = build_fractional_slack(p, lambda i: F(1), lambda i: F(1))
    j = m.cols.index(frozenset({1}))
    assert m.den_block[0][j] == 2
    assert m.num_block[0][j] == 0  # tau=-1: -(1*2 - 2)
    j0 = m.cols.index(frozenset())
    assert m.den_block[0][j0] == 0
    # min problem: a completeness guarantee above an attainable ratio is invalid
    with pytest.raises(GuaranteeViolation):
        build_fractional_slack(p, lambda i: F(3, 2), lambda i: F(1))


def test_verify_factorization_examples():
    m = as_matrix([[F(1), F(2)], [F(2), F(4)]])
    ok = NonnegFactorization((((F(1), F(2)), (F(1), F(2))),))
    assert verify_factorization(m, ok).ok

    ones = as_matrix([[F(1), F(1)], [F(1), F(1)]])
    unif = NonnegFactorization((), (F(1), F(1)))
    v = verify_factorization(ones, unif)
    assert v.ok and unif.size == 0

    ident = as_matrix([[F(1), F(0)], [F(0), F(1)]])
    bad = NonnegFactorization((((F(1), F(1)), (F(1), F(1))),))
    v = verify_factorization(ident, bad)
    assert not v.ok and v.clause == "equality"


def test_rank_lower_bound_examples():
    assert rank_lower_bound([[F(0)]]) == 0
    assert rank_lower_bound([[F(1), F(2)], [F(2), F(4)]]) == 1
    assert rank_lower_bound([[F(1), F(0), F(0)], [F(0), F(1), F(0)], [F(0), F(0), F(1)]]) == 3


def test_rank_bounds_any_verified_factorization():
    rng = random.Random(2)
    for _ in range(10):
        nr, nc = rng.randint(1, 4), rng.randint(1, 4)
        m = [[F(rng.randint(0, 4)) for _ in range(nc)] for _ in range(nr)]
        f = trivial_factorization(m)
        assert verify_factorization(m, f).ok
        assert rank_lower_bound(m) <= f.size + 1


def test_nmf_rank_one():
    m = [[F(3), F(1)], [F(6), F(2)]]  # (1,2)^T (x) (3,1)
    res = nmf_upper_bound(m, 1, seed=0)
    assert res.residual <= 1e-6
    assert res.certified is not None
    assert verify_factorization(m, res.certified).ok


def test_nmf_identity_needs_rank_two():
    ident = [[F(1), F(0)], [F(0), F(1)]]
    res1 = nmf_upper_bound(ident, 1, seed=0)
    assert res1.residual > 1e-3
    res2 = nmf_upper_bound(ident, 2, seed=0)
    assert res2.residual <= 1e-6


def test_nmf_full_rank_parameter_reaches_zero():
    rng = random.Random(4)
    m = [[F(rng.randint(0, 5)) for _ in range(3)] for _ in range(4)]
    res = nmf_upper_bound(m, 3, seed=0)
    assert res.residual <= 1e-6


def test_nmf_deterministic():
    m = [[F(3), F(1)], [F(6), F(2)]]
    a = nmf_upper_bound(m, 1, iters=500, seed=9)
    b = nmf_upper_bound(m, 1, iters=500, seed=9)
    assert a.w == b.w and a.h == b.h and a.residual == b.residual


def test_proof_roundtrip_on_matching_slack():
    p = matching_k4()
    c, s = exact_guarantees(p)
    slack = build_slack_matrix(p, c, s)
    fact = search_small_factorization(slack, iters=1500, seed=0)
    assert verify_factorization(slack, fact).ok
    proof = lp_proof_from_factorization(fact, slack)
    back = factorization_from_lp_proof(proof, slack.entries)
    assert back.size <= fact.size
    assert verify_factorization(slack, back).ok


def test_proof_from_box_lp():
    # 0 <= x <= 1 with w(x) = 1 - x, realized on points {0, 1}
    proof = LpProof(
        a_rows=as_matrix([[F(-1)], [F(1)]]), b=(F(0), F(1)),
        points=as_matrix([[F(0)], [F(1)]]),
        gradients=as_matrix([[F(-1)]]), offsets=(F(1),))
    entries = as_matrix([[F(1), F(0)]])
    fact = factorization_from_lp_proof(proof, entries)
    assert fact.size <= 2
    assert verify_factorization(entries, fact).ok


def test_constant_instance_becomes_uniform_term():
    proof = LpProof(
        a_rows=as_matrix([[F(-1)]]), b=(F(0),),
        points=as_matrix([[F(0)], [F(2)]]),
        gradients=as_matrix([[F(0)]]), offsets=(F(3),))
    entries = as_matrix([[F(3), F(3)]])
    fact = factorization_from_lp_proof(proof, entries)
    assert fact.size == 0 and fact.uniform == (F(3),)


def test_uniform_only_proof_dimension_zero():
    p = matching_k4()
    ones = as_matrix([[F(2), F(2)], [F(2), F(2)]])
    fact = NonnegFactorization((), (F(2), F(2)))
    # hand-rolled slack-like container via verify + proof path on raw entries
    from lpworkbench.slack import SlackMatrix
    sm = SlackMatrix("toy", 1, ("a", "b"), ("x", "y"), ones, (F(2), F(2)), (F(2), F(2)))
    proof = lp_proof_from_factorization(fact, sm)
    assert proof.dimension == 0
    back = factorization_from_lp_proof(proof, ones)
    assert back.size == 0 and verify_factorization(ones, back).ok


def test_invalid_proof_rejected():
    proof = LpProof(
        a_rows=as_matrix([[F(-1)]]), b=(F(0),),
        points=as_matrix([[F(1)]]),
        gradients=as_matrix([[F(-1)]]), offsets=(F(0),))
    with pytest.raises(ProofInvalid):
        factorization_from_lp_proof(proof, as_matrix([[F(-1)]]))
