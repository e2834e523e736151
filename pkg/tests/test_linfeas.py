"""Exact rational feasibility: equality elimination plus Fourier-Motzkin."""

import random
from fractions import Fraction

from stci.linfeas import feasible_point


def F(x):
    return Fraction(x)


def test_simple_feasible_box():
    point = feasible_point(
        equalities=[],
        inequalities=[([F(1), F(0)], F(1)), ([F(0), F(1)], F(1))],
        nvars=2,
    )
    assert point is not None
    assert point[0] >= 1 and point[1] >= 1


def test_equality_with_inequalities():
    # x = 2y, x >= 1, y >= 1, x + y >= 5
    point = feasible_point(
        equalities=[([F(1), F(-2)], F(0))],
        inequalities=[
            ([F(1), F(0)], F(1)),
            ([F(0), F(1)], F(1)),
            ([F(1), F(1)], F(5)),
        ],
        nvars=2,
    )
    assert point is not None
    assert point[0] == 2 * point[1]
    assert point[0] + point[1] >= 5


def test_infeasible_by_inequalities():
    # x >= 3 and -x >= -1 cannot hold together
    assert feasible_point(
        equalities=[],
        inequalities=[([F(1)], F(3)), ([F(-1)], F(-1))],
        nvars=1,
    ) is None


def test_infeasible_by_equalities():
    # x - x = 1 is contradictory
    assert feasible_point(
        equalities=[([F(0)], F(1))],
        inequalities=[],
        nvars=1,
    ) is None


def test_unconstrained_variables_default():
    point = feasible_point(equalities=[], inequalities=[], nvars=3)
    assert point == [F(0), F(0), F(0)]


def test_random_systems_agree_with_rejection_sampling():
    # on tiny boxes, compare feasibility against exhaustive grid search
    rng = random.Random(17)
    for _ in range(40):
        nvars = rng.randint(1, 3)
        ineqs = []
        for _ in range(rng.randint(1, 4)):
            coeffs = [F(rng.randint(-2, 2)) for _ in range(nvars)]
            ineqs.append((coeffs, F(rng.randint(-3, 1))))
        # bound the box so the grid check is finite: 0 <= x_i <= 3
        for j in range(nvars):
            e = [F(0)] * nvars
            e[j] = F(1)
            ineqs.append((list(e), F(0)))
            ineqs.append(([-c for c in e], F(-3)))
        point = feasible_point([], ineqs, nvars)
        grid_feasible = any(
            all(
                sum(c * v for c, v in zip(coeffs, candidate)) >= rhs
                for coeffs, rhs in ineqs
            )
            for candidate in _grid(nvars)
        )
        if point is not None:
            assert all(
                sum(c * v for c, v in zip(coeffs, point)) >= rhs
                for coeffs, rhs in ineqs
            )
        # soundness: a system with a grid-point solution is never rejected
        if grid_feasible:
            assert point is not None


def _grid(nvars):
    from itertools import product

    steps = [Fraction(k, 2) for k in range(0, 7)]
    return product(steps, repeat=nvars)
