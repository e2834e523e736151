"""Exact rank, simplicial homology, and the two Betti-number paths."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stci.core import FieldSpec, MonomialIdeal, ResourceLimitError, RingContext
from stci.homology import (
    SimplicialComplex,
    SparseMatrix,
    boundary_chain_complex,
    koszul_betti,
    koszul_betti_totals,
    lcm_lattice,
    local_cohomology_nonvanishing,
    rank,
    reduced_homology_ranks,
    stanley_reisner_complex,
    taylor_chain_complex,
    taylor_homology,
    upper_koszul_complex,
)

from oracles import brute_betti, dense_rank_fraction

Q = FieldSpec.rationals()
F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)

CTX1 = RingContext(("x",))
CTX2 = RingContext(("x", "y"))
CTX3 = RingContext(("x", "y", "z"))
CTX4 = RingContext(("x", "y", "z", "w"))


def ideal(ctx, *rows):
    return MonomialIdeal.from_exponents(ctx, rows)


def triangle():
    return ideal(CTX3, (1, 1, 0), (1, 0, 1), (0, 1, 1))


# ---------------------------------------------------------------------------
# rank


def test_rank_examples():
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank([[1, 2], [2, 4]]) == 1


def test_rank_with_fractions_and_prime_fields():
    m = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), Fraction(1, 1)]]
    assert rank(m) == dense_rank_fraction(m)
    # [[1,2],[2,4]] over F2 reduces to [[1,0],[0,0]]
    assert rank([[1, 2], [2, 4]], F2) == 1
    assert rank([[2, 0], [0, 2]], F2) == 0
    assert rank([[2, 0], [0, 2]], F3) == 2


def _dense_rank_mod(rows, q):
    m = [[v % q for v in row] for row in rows]
    nrows, ncols = len(m), len(m[0])
    r = 0
    row = 0
    for col in range(ncols):
        pivot = next((k for k in range(row, nrows) if m[k][col]), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = pow(m[row][col], q - 2, q)
        for k in range(nrows):
            if k != row and m[k][col]:
                f = m[k][col] * inv % q
                for c in range(col, ncols):
                    m[k][c] = (m[k][c] - f * m[row][c]) % q
        row += 1
        r += 1
        if row == nrows:
            break
    return r


def test_rank_against_dense_oracle_random():
    rng = random.Random(11)
    for _ in range(60):
        nrows, ncols = rng.randint(1, 6), rng.randint(1, 6)
        rows = [
            [rng.randint(-3, 3) for _ in range(ncols)] for _ in range(nrows)
        ]
        assert rank(rows) == dense_rank_fraction(rows)
        q = rng.choice([2, 3, 5])
        assert rank(rows, FieldSpec.prime(q)) == _dense_rank_mod(rows, q)


def test_sparse_matrix_matmul():
    a = SparseMatrix.from_rows([[1, 2], [0, 1]])
    b = SparseMatrix.from_rows([[1, 0], [3, 1]])
    c = a @ b
    assert (c[(0, 0)], c[(0, 1)], c[(1, 0)], c[(1, 1)]) == (7, 2, 3, 1)


# ---------------------------------------------------------------------------
# simplicial complexes and reduced homology


def test_void_and_irrelevant_conventions():
    void = SimplicialComplex.void()
    irrelevant = SimplicialComplex.irrelevant()
    assert void.is_void and not void.is_irrelevant
    assert irrelevant.is_irrelevant and not irrelevant.is_void
    assert reduced_homology_ranks(void) == {}
    assert reduced_homology_ranks(irrelevant) == {-1: 1}


def test_hollow_triangle_is_a_circle():
    k = SimplicialComplex.from_facets(3, [(0, 1), (1, 2), (0, 2)])
    h = reduced_homology_ranks(k)
    assert h == {-1: 0, 0: 0, 1: 1}


def test_two_isolated_vertices():
    k = SimplicialComplex.from_facets(2, [(0,), (1,)])
    assert reduced_homology_ranks(k) == {-1: 0, 0: 1}


def test_filled_triangle_is_contractible():
    k = SimplicialComplex.from_facets(3, [(0, 1, 2)])
    assert all(v == 0 for v in reduced_homology_ranks(k).values())


def test_link_and_downward_closure():
    k = SimplicialComplex.from_facets(4, [(0, 1, 2), (2, 3)])
    assert frozenset((0, 1)) in k.faces
    link = k.link([2])
    assert frozenset((0, 1)) in link.faces and frozenset((3,)) in link.faces


def random_complex(rng):
    n = rng.randint(1, 5)
    facets = [
        tuple(sorted(rng.sample(range(n), rng.randint(1, n))))
        for _ in range(rng.randint(1, 4))
    ]
    return SimplicialComplex.from_facets(n, facets)


def test_boundary_squared_zero_and_euler_characteristic():
    rng = random.Random(23)
    for _ in range(40):
        k = random_complex(rng)
        cc = boundary_chain_complex(k)
        cc.validate()
        h = reduced_homology_ranks(k)
        euler_faces = sum((-1) ** (len(f) - 1) for f in k.faces)
        euler_homology = sum((-1) ** i * r for i, r in h.items())
        assert euler_faces == euler_homology


# ---------------------------------------------------------------------------
# Taylor complex


def test_taylor_examples():
    assert taylor_homology(triangle()) == {0: 1, 1: 3, 2: 2}
    assert taylor_homology(ideal(CTX1, (1,))) == {0: 1, 1: 1}
    assert taylor_homology(ideal(CTX2, (1, 0), (0, 1))) == {0: 1, 1: 2, 2: 1}


def test_taylor_resource_bound():
    with pytest.raises(ResourceLimitError, match="koszul"):
        taylor_homology(triangle(), max_generators=2)


def test_chain_complex_rejects_bad_boundaries():
    from stci.homology import ChainComplex
    bad = ChainComplex(
        dims={0: 1, 1: 1, 2: 1},
        diffs={
            1: SparseMatrix.from_rows([[1]]),
            2: SparseMatrix.from_rows([[1]]),
        },
    )
    with pytest.raises(ValueError, match="boundary squared"):
        bad.validate()
    mismatched = ChainComplex(
        dims={0: 2, 1: 1, 2: 1},
        diffs={
            1: SparseMatrix.from_rows([[1], [0]]),
            2: SparseMatrix.from_rows([[0], [1]]),
        },
    )
    with pytest.raises(ValueError, match="compose"):
        mismatched.validate()


def test_taylor_chain_complex_composes_to_zero():
    for a in (triangle(), ideal(CTX2, (2, 0), (1, 1), (0, 3))):
        cc = taylor_chain_complex(a)
        cc.validate()
        h = cc.homology_ranks(Q)
        expected = taylor_homology(a)
        assert {i: r for i, r in h.items() if r} == expected


# ---------------------------------------------------------------------------
# lcm lattice and upper-Koszul path


def test_principal_ideal_upper_koszul_is_irrelevant():
    a = ideal(CTX1, (2,))
    assert lcm_lattice(a) == [(2,)]
    assert upper_koszul_complex(a, (2,)).is_irrelevant
    assert koszul_betti(a) == {(0, (0,)): 1, (1, (2,)): 1}


def test_unit_multidegree_has_beta_one():
    table = koszul_betti(triangle())
    assert table[(0, (0, 0, 0))] == 1


def test_koszul_totals_match_taylor_on_examples():
    for a in (
        triangle(),
        ideal(CTX2, (2, 0), (1, 1)),
        ideal(CTX4, (1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1)),
        triangle() ** 2,
    ):
        assert koszul_betti_totals(a) == taylor_homology(a)


def rows_strategy(n, max_exp, max_gens):
    row = st.tuples(*[st.integers(0, max_exp)] * n).filter(any)
    return st.lists(row, min_size=1, max_size=max_gens)


@given(rows_strategy(4, 3, 6))
def test_koszul_totals_match_taylor_random(rows):
    a = MonomialIdeal.from_exponents(CTX4, rows)
    assert koszul_betti_totals(a) == taylor_homology(a)


@given(rows_strategy(3, 2, 4))
def test_betti_paths_match_quotient_koszul_oracle(rows):
    a = MonomialIdeal.from_exponents(CTX3, rows)
    expected = brute_betti(a)
    assert taylor_homology(a) == expected
    assert koszul_betti_totals(a) == expected


@given(rows_strategy(4, 1, 5))
def test_betti_field_independent_for_small_squarefree(rows):
    a = MonomialIdeal.from_exponents(CTX4, rows)
    over_q = taylor_homology(a, Q)
    assert taylor_homology(a, F2) == over_q
    assert taylor_homology(a, F3) == over_q


# ---------------------------------------------------------------------------
# Stanley-Reisner complexes and local cohomology support


def test_stanley_reisner_of_triangle_is_three_points():
    delta = stanley_reisner_complex(triangle())
    assert delta.faces_of_dim(0) == [(0,), (1,), (2,)]
    assert delta.dim == 0


def test_local_cohomology_examples():
    assert local_cohomology_nonvanishing(triangle()) == frozenset({1})
    planes = ideal(
        RingContext(("x1", "x2", "x3", "x4")),
        (1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1),
    )
    assert local_cohomology_nonvanishing(planes) == frozenset({1, 2})
    assert local_cohomology_nonvanishing(ideal(CTX2, (1, 0))) == frozenset({1})
    assert local_cohomology_nonvanishing(
        ideal(CTX2, (1, 0), (0, 1))
    ) == frozenset({0})


def test_local_cohomology_rejects_non_squarefree():
    with pytest.raises(ValueError):
        local_cohomology_nonvanishing(ideal(CTX2, (2, 0)))


def squarefree_strategy(n, max_gens):
    row = st.tuples(*[st.integers(0, 1)] * n).filter(any)
    return st.lists(row, min_size=1, max_size=max_gens).filter(
        lambda rows: any(sum(r) < n for r in rows)
    )


@given(squarefree_strategy(6, 5))
def test_local_cohomology_consistent_with_betti(rows):
    ctx = RingContext(tuple("abcdef"))
    a = MonomialIdeal.from_exponents(ctx, rows)
    if a.is_unit:
        return
    table = koszul_betti_totals(a)
    pd = max(table)
    locoh = local_cohomology_nonvanishing(a)
    assert min(locoh) == 6 - pd  # depth via Auslander-Buchsbaum
