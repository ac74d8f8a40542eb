import random
from fractions import Fraction as F

from lpworkbench.simplex import GE, LE, EQ, SimplexResult, StandardLp, simplex_exact


def lp(obj, cons, sense="max"):
    return StandardLp(tuple(F(x) for x in obj),
                      tuple((tuple(F(c) for c in cs), rel, F(r)) for cs, rel, r in cons),
                      sense)


def test_box_single_variable():
    res = simplex_exact(lp([1], [([1], LE, 1), ([1], GE, 0)]))
    assert res.status == "optimal" and res.value == 1 and res.point == (1,)


def test_unbounded():
    res = simplex_exact(lp([1], [([1], GE, 0)]))
    assert res.status == "unbounded"


def test_capped_sum():
    res = simplex_exact(lp([1, 1], [([1, 1], LE, F(3, 2)),
                                    ([1, 0], GE, 0), ([0, 1], GE, 0),
                                    ([1, 0], LE, 1), ([0, 1], LE, 1)]))
    assert res.status == "optimal" and res.value == F(3, 2)


def test_infeasible():
    res = simplex_exact(lp([1], [([1], LE, 0), ([1], GE, 1)]))
    assert res.status == "infeasible"


def test_equality_rows_and_min():
    res = simplex_exact(lp([1, 2], [([1, 1], EQ, 1), ([1, 0], GE, 0), ([0, 1], GE, 0)],
                        sense="min"))
    assert res.status == "optimal" and res.value == 1 and res.point == (1, 0)


def test_beale_cycling_terminates():
    # classic degenerate instance that cycles without an anti-cycling rule
    res = simplex_exact(lp(
        [F(3, 4), -150, F(1, 50), -6],
        [([F(1, 4), -60, F(-1, 25), 9], LE, 0),
         ([F(1, 2), -90, F(-1, 50), 3], LE, 0),
         ([0, 0, 1, 0], LE, 1),
         ([1, 0, 0, 0], GE, 0), ([0, 1, 0, 0], GE, 0),
         ([0, 0, 1, 0], GE, 0), ([0, 0, 0, 1], GE, 0)]))
    assert res.status == "optimal" and res.value == F(1, 20)


def _check_certificates(problem: StandardLp, res: SimplexResult):
    assert res.status == "optimal"
    # primal feasibility
    for (coeffs, rel, rhs) in problem.constraints:
        lhs = sum(c * x for c, x in zip(coeffs, res.point))
        if rel == LE:
            assert lhs <= rhs
        elif rel == GE:
            assert lhs >= rhs
        else:
            assert lhs == rhs
    # strong duality and stationarity
    assert sum(u * rhs for u, (_, _, rhs) in zip(res.duals, problem.constraints)) == res.value
    for j, cj in enumerate(problem.objective):
        assert sum(u * cons[0][j] for u, cons in zip(res.duals, problem.constraints)) == cj


def test_duality_on_random_bounded_lps():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 3)
        cons = [([1 if j == i else 0 for j in range(n)], LE, rng.randint(1, 4)) for i in range(n)]
        cons += [([1 if j == i else 0 for j in range(n)], GE, -rng.randint(0, 3)) for i in range(n)]
        for _ in range(rng.randint(0, 3)):
            cons.append(([rng.randint(-2, 2) for _ in range(n)], LE, rng.randint(0, 6)))
        problem = lp([rng.randint(-3, 3) for _ in range(n)], cons,
                     sense=rng.choice(["max", "min"]))
        res = simplex_exact(problem)
        _check_certificates(problem, res)
