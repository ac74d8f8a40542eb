import random
from fractions import Fraction as F

import pytest

from lpworkbench.linalg import (
    affine_hull, rank_exact, solve_linear_system, symmetric_eigen_min,
)
from lpworkbench.problems import DomainError


def test_rank_examples():
    assert rank_exact([[F(0), F(0)], [F(0), F(0)]]) == 0
    assert rank_exact([[F(1), F(2)], [F(2), F(4)]]) == 1
    assert rank_exact([[F(1), F(0), F(0)], [F(0), F(1), F(0)], [F(0), F(0), F(1)]]) == 3


def test_solve_unique():
    kind, x = solve_linear_system([[F(1), F(0)], [F(0), F(1)]], [F(3), F(4)])
    assert kind == "unique" and x == (3, 4)


def test_solve_inconsistent():
    kind, _ = solve_linear_system([[F(0)]], [F(1)])
    assert kind == "inconsistent"


def test_solve_underdetermined():
    kind, part, kern = solve_linear_system([[F(1), F(1)], [F(2), F(2)]], [F(1), F(2)])
    assert kind == "underdetermined"
    assert part[0] + part[1] == 1
    assert len(kern) == 1
    assert kern[0][0] + kern[0][1] == 0


def test_affine_hull_trivial_and_line():
    basis, off = affine_hull([(F(5), F(7))])
    assert basis == () and off == (5, 7)
    basis, off = affine_hull([(F(0), F(0)), (F(1), F(1)), (F(2), F(2))])
    assert len(basis) == 1


def test_affine_hull_dim_equals_centered_rank():
    rng = random.Random(11)
    for _ in range(10):
        pts = [tuple(F(rng.randint(-3, 3)) for _ in range(4)) for _ in range(6)]
        basis, off = affine_hull(pts)
        centered = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
        assert len(basis) == rank_exact(centered)


def test_eigen_identity_and_diag():
    assert abs(symmetric_eigen_min([[1.0, 0, 0], [0, 1.0, 0], [0, 0, 1.0]]) - 1.0) < 1e-9
    assert abs(symmetric_eigen_min([[2.0, 0.0], [0.0, -1.0]]) + 1.0) < 1e-9


def test_eigen_random_psd_nonnegative():
    rng = random.Random(0)
    for _ in range(10):
        n = rng.randint(2, 6)
        g = [[rng.uniform(-1, 1) for _ in range(n)] for _ in range(n)]
        m = [[sum(g[k][i] * g[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        assert symmetric_eigen_min(m) >= -1e-9


def test_eigen_rejects_asymmetric():
    with pytest.raises(DomainError):
        symmetric_eigen_min([[0.0, 1.0], [0.5, 0.0]])
