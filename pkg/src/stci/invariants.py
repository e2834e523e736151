"""Derived invariants of monomial ideals.

Everything here reduces to the decomposition and homology engines: depth
and projective dimension come from Betti numbers, cohomological dimension
from the radical's projective dimension, formal grade from the dimension
formula, analytic spread from the compact faces of the Newton polyhedron,
and the arithmetic-rank upper bound from a Schmitt-Vogel partition search.

Depth of high powers carries an explicit horizon and is never presented as
certified: no effective stabilization bound is assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

import numpy as np

from . import homology
from .core import FieldSpec, Monomial, MonomialIdeal, ResourceLimitError
from .decomposition import dim_quotient, height, minimal_primes
from .linfeas import feasible_point

TAYLOR_DISPATCH_BOUND = 8
NEWTON_SUBSET_BOUND = 14

_BETTI_CACHE: dict[tuple[MonomialIdeal, FieldSpec], tuple[int, ...]] = {}


def clear_caches() -> None:
    _BETTI_CACHE.clear()


def _require_proper_nonzero(a: MonomialIdeal) -> None:
    if a.is_zero or a.is_unit:
        raise ValueError("invariants require a proper, nonzero ideal")


# ---------------------------------------------------------------------------
# Betti numbers: dispatcher over Taylor / upper-Koszul with tensor splittings


def _support_components(a: MonomialIdeal) -> list[list[int]]:
    """Partition generator indices by connected variable support."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for g in a.generators:
        supp = sorted(g.support())
        for v in supp:
            parent.setdefault(v, v)
        for v in supp[1:]:
            union(supp[0], v)
    roots = sorted({find(v) for v in parent})
    groups: dict[int, list[int]] = {r: [] for r in roots}
    for k, g in enumerate(a.generators):
        groups[find(min(g.support()))].append(k)
    return [groups[r] for r in roots]


def _restrict(a: MonomialIdeal, variables: set[int]) -> MonomialIdeal:
    rows = []
    for g in a.generators:
        rows.append(
            tuple(e if j in variables else 0 for j, e in enumerate(g.exponents))
        )
    return MonomialIdeal.from_exponents(a.context, rows)


def _product_split(a: MonomialIdeal) -> list[MonomialIdeal] | None:
    """Factor ``a`` as a product of ideals in disjoint variables, if it is one.

    Candidate variable blocks come from the minimal primes of the radical;
    the factorization is verified by multiplying back, so a wrong candidate
    can only cost time, never correctness.
    """
    primes = minimal_primes(a.radical())
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in primes:
        supp = sorted(p.support())
        for v in supp:
            parent.setdefault(v, v)
        for v in supp[1:]:
            rx, ry = find(supp[0]), find(v)
            if rx != ry:
                parent[rx] = ry
    for v in a.support():
        parent.setdefault(v, v)
    blocks: dict[int, set[int]] = {}
    for v in parent:
        blocks.setdefault(find(v), set()).add(v)
    if len(blocks) <= 1:
        return None
    factors = [_restrict(a, block) for block in blocks.values()]
    if any(f.is_unit or f.is_zero for f in factors):
        return None
    factors.sort(key=lambda f: min(f.support()))
    product = factors[0]
    for f in factors[1:]:
        product = product * f
    if product != a:
        return None
    return factors


def _convolve_tensor(bs: list[tuple[int, ...]]) -> tuple[int, ...]:
    """Betti vector of a tensor product of quotients (disjoint-variable sum)."""
    out = bs[0]
    for b in bs[1:]:
        res = [0] * (len(out) + len(b) - 1)
        for p, x in enumerate(out):
            for q, y in enumerate(b):
                res[p + q] += x * y
        out = tuple(res)
    return out


def _convolve_intersection(bs: list[tuple[int, ...]]) -> tuple[int, ...]:
    """Betti vector of an intersection of ideals in pairwise disjoint variables.

    For disjoint supports the Mayer-Vietoris sequence splits, giving
    beta_i(R/(b ^ c)) = sum over p+q = i+1, p,q >= 1 of beta_p beta_q.
    """
    out = bs[0]
    for b in bs[1:]:
        res = [0] * (len(out) + len(b) - 1)
        res[0] = 1
        for p in range(1, len(out)):
            for q in range(1, len(b)):
                res[p + q - 1] += out[p] * b[q]
        while res and res[-1] == 0:
            res.pop()
        out = tuple(res)
    return out


def betti_numbers(a: MonomialIdeal, field: FieldSpec | None = None) -> tuple[int, ...]:
    """Total Betti numbers (beta_0, ..., beta_pd) of R/a.

    Splits off disjoint-variable summands and factors before falling back
    to the Taylor complex (small ideals) or the upper-Koszul path (large
    ones, in particular powers).
    """
    _require_proper_nonzero(a)
    if field is None:
        field = a.context.field
    key = (a, field)
    cached = _BETTI_CACHE.get(key)
    if cached is not None:
        return cached

    components = _support_components(a)
    if len(components) > 1:
        parts = [
            MonomialIdeal.from_generators(
                a.context, [a.generators[k] for k in comp]
            )
            for comp in components
        ]
        result = _convolve_tensor([betti_numbers(p, field) for p in parts])
    else:
        factors = _product_split(a) if a.mu >= 4 else None
        if factors is not None and len(factors) > 1:
            result = _convolve_intersection(
                [betti_numbers(f, field) for f in factors]
            )
        elif a.mu <= TAYLOR_DISPATCH_BOUND:
            table = homology.taylor_homology(a, field)
            result = tuple(table.get(i, 0) for i in range(max(table) + 1))
        else:
            table = homology.koszul_betti_totals(a, field)
            result = tuple(table.get(i, 0) for i in range(max(table) + 1))

    if len(_BETTI_CACHE) > 200_000:
        _BETTI_CACHE.clear()
    _BETTI_CACHE[key] = result
    return result


def proj_dim(a: MonomialIdeal, field: FieldSpec | None = None) -> int:
    """Projective dimension of R/a: the top nonvanishing Betti index."""
    b = betti_numbers(a, field)
    return len(b) - 1


def depth(a: MonomialIdeal, field: FieldSpec | None = None) -> int:
    """depth of R/a, by the Auslander-Buchsbaum formula n - pd."""
    return a.context.n - proj_dim(a, field)


def cohomological_dimension(a: MonomialIdeal, field: FieldSpec | None = None) -> int:
    """cd(a, R): the top nonvanishing local cohomology index with support in a.

    Local cohomology with support in ``a`` depends only on the radical, and
    for squarefree ideals cd equals the projective dimension of the
    quotient, so we compute pd(R / rad a).
    """
    _require_proper_nonzero(a)
    return proj_dim(a.radical(), field)


def formal_grade(a: MonomialIdeal, field: FieldSpec | None = None) -> int:
    """Least nonvanishing index of formal local cohomology, as n - cd."""
    _require_proper_nonzero(a)
    fg = a.context.n - cohomological_dimension(a, field)
    if a.is_squarefree:
        assert fg == depth(a, field), "squarefree formal grade must equal depth"
    return fg


# ---------------------------------------------------------------------------
# analytic spread via the Newton polyhedron


@dataclass(frozen=True)
class CompactFace:
    """A compact face: the argmin set of a strictly positive weight."""

    weight: tuple[Fraction, ...]
    points: tuple[tuple[int, ...], ...]
    dim: int


@dataclass(frozen=True)
class NewtonPolyhedron:
    """Generator exponent points with the compact faces of their polyhedron."""

    points: tuple[tuple[int, ...], ...]
    compact_faces: tuple[CompactFace, ...]


def _affine_dim(points: list[tuple[int, ...]]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [[p[j] - base[j] for j in range(len(base))] for p in points[1:]]
    return homology.rank(rows)


def _positive_weight(points, subset) -> list[Fraction] | None:
    """A weight vector w >= 1 constant on ``subset`` and minimal there."""
    n = len(points[0])
    base = points[subset[0]]
    eqs = []
    for k in subset[1:]:
        eqs.append(([Fraction(points[k][j] - base[j]) for j in range(n)], Fraction(0)))
    ineqs = []
    for q in range(len(points)):
        if q in subset:
            continue
        ineqs.append(([Fraction(points[q][j] - base[j]) for j in range(n)], Fraction(0)))
    for j in range(n):
        coeffs = [Fraction(0)] * n
        coeffs[j] = Fraction(1)
        ineqs.append((coeffs, Fraction(1)))
    return feasible_point(eqs, ineqs, n)


def _argmin_points(points, weight) -> tuple[int, ...]:
    values = [sum(w * x for w, x in zip(weight, p)) for p in points]
    best = min(values)
    return tuple(k for k, v in enumerate(values) if v == best)


def newton_polyhedron(a: MonomialIdeal, max_generators: int = 12) -> NewtonPolyhedron:
    """Exponent points and the full list of compact faces (small ideals only)."""
    _require_proper_nonzero(a)
    points = [g.exponents for g in a.generators]
    if len(points) > max_generators:
        raise ResourceLimitError(
            f"compact-face enumeration is bounded at {max_generators} generators"
        )
    faces: dict[tuple[int, ...], CompactFace] = {}
    indices = range(len(points))
    for size in range(1, len(points) + 1):
        for subset in combinations(indices, size):
            w = _positive_weight(points, subset)
            if w is None:
                continue
            argmin = _argmin_points(points, w)
            if argmin in faces:
                continue
            pts = tuple(points[k] for k in argmin)
            faces[argmin] = CompactFace(tuple(w), pts, _affine_dim(list(pts)))
    ordered = sorted(faces.values(), key=lambda f: (f.dim, f.points))
    return NewtonPolyhedron(tuple(points), tuple(ordered))


def analytic_spread(a: MonomialIdeal) -> int:
    """l(a): one plus the top dimension of a compact face of the Newton
    polyhedron; for ideals generated in one degree, the rank of the
    exponent matrix."""
    _require_proper_nonzero(a)
    points = [g.exponents for g in a.generators]
    degrees = {sum(p) for p in points}
    if len(degrees) == 1:
        return homology.rank(np.array(points, dtype=np.int64))
    if len(points) > NEWTON_SUBSET_BOUND:
        raise ResourceLimitError(
            f"analytic spread via compact faces is bounded at {NEWTON_SUBSET_BOUND} "
            "mixed-degree generators"
        )
    best = 0
    indices = range(len(points))
    for size in range(len(points), 0, -1):
        if size - 1 <= best:
            break
        for subset in combinations(indices, size):
            pts = [points[k] for k in subset]
            d = _affine_dim(pts)
            if d <= best:
                continue
            if _positive_weight(points, subset) is not None:
                best = d
    return best + 1


class GrowthEstimate(NamedTuple):
    value: int | None
    stabilized: bool
    generator_counts: tuple[int, ...]


def fiber_growth_oracle(a: MonomialIdeal, horizon: int) -> GrowthEstimate:
    """Estimate the fiber-cone dimension from the growth of mu(a^t).

    Finds the least d for which the d-th finite differences of mu(a^t),
    t <= horizon, vanish at the tail, so mu grows like a polynomial of
    degree d - 1.  Horizons below 4 never stabilize.  Used as a test
    oracle for :func:`analytic_spread`, not as the primary value.
    """
    _require_proper_nonzero(a)
    counts = [1]
    power = None
    for _ in range(horizon):
        power = a if power is None else power * a
        counts.append(power.mu)
    counts = tuple(counts)
    if horizon < 4:
        return GrowthEstimate(None, False, counts)
    seq = list(counts)
    for d in range(1, len(seq)):
        seq = [seq[i + 1] - seq[i] for i in range(len(seq) - 1)]
        if len(seq) >= 2 and seq[-1] == 0 and seq[-2] == 0:
            return GrowthEstimate(d, True, counts)
    return GrowthEstimate(None, False, counts)


# ---------------------------------------------------------------------------
# arithmetic rank upper bound (Schmitt-Vogel partitions)


@dataclass(frozen=True)
class AraBounds:
    """Bracketing of the arithmetic rank: cd(a) <= ara(a) <= upper."""

    lower: int
    upper: int
    certified: bool
    witness: tuple[tuple[Monomial, ...], ...]

    def witness_strings(self) -> list[list[str]]:
        return [[str(m) for m in level] for level in self.witness]


def is_valid_sv_partition(
    a: MonomialIdeal, partition: tuple[tuple[Monomial, ...], ...]
) -> bool:
    """Check the partition certificate behind the upper bound.

    Levels partition the minimal generators, the first level is a single
    monomial, and the product of any two distinct monomials in one level
    is divisible by a monomial of an earlier level.
    """
    flat = [m for level in partition for m in level]
    if sorted(str(m) for m in flat) != sorted(str(g) for g in a.generators):
        return False
    if not partition or len(partition[0]) != 1:
        return False
    earlier: list[Monomial] = []
    for level in partition:
        for p, q in combinations(level, 2):
            prod = p * q
            if not any(e.divides(prod) for e in earlier):
                return False
        earlier.extend(level)
    return True


def _sv_exact(gens: list[Monomial], pair_div: dict[tuple[int, int], int]) -> list[int]:
    """Breadth-first search over placed-generator masks; returns level masks."""
    mu = len(gens)
    full = (1 << mu) - 1
    parent: dict[int, tuple[int, int]] = {}
    frontier = []
    for i in range(mu):
        mask = 1 << i
        parent[mask] = (0, mask)
        frontier.append(mask)
    while frontier:
        nxt = []
        for placed in frontier:
            if placed == full:
                levels = []
                cur = placed
                while cur:
                    prev, block = parent[cur]
                    levels.append(block)
                    cur = prev
                return list(reversed(levels))
            comp = full ^ placed
            sub = comp
            while sub:
                ok = True
                members = [i for i in range(mu) if sub >> i & 1]
                for x in range(len(members)):
                    for y in range(x + 1, len(members)):
                        if not pair_div[(members[x], members[y])] & placed:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    new = placed | sub
                    if new not in parent:
                        parent[new] = (placed, sub)
                        nxt.append(new)
                sub = (sub - 1) & comp
        frontier = nxt
    raise AssertionError("singleton levels always reach the full mask")


def _sv_greedy(gens: list[Monomial], pair_div: dict[tuple[int, int], int]) -> list[int]:
    """Largest-compatible-level-first heuristic, best over all first picks."""
    mu = len(gens)
    best: list[int] | None = None
    for start in range(mu):
        placed = 1 << start
        levels = [placed]
        while placed != (1 << mu) - 1:
            block = 0
            chosen: list[int] = []
            for i in range(mu):
                if placed >> i & 1 or block >> i & 1:
                    continue
                if all(pair_div[(min(i, j), max(i, j))] & placed for j in chosen):
                    chosen.append(i)
                    block |= 1 << i
            levels.append(block)
            placed |= block
        if best is None or len(levels) < len(best):
            best = levels
    assert best is not None
    return best


def schmitt_vogel_upper(
    a: MonomialIdeal, field: FieldSpec | None = None, exact_bound: int = 9
) -> AraBounds:
    """Upper bound on the arithmetic rank from a Schmitt-Vogel partition.

    Searches partitions P_0, ..., P_r of the generators with |P_0| = 1 where
    every product of two distinct members of a level is divisible by an
    earlier member; then r + 1 elements (the level sums) generate ``a`` up
    to radical.  Exhaustive for mu <= ``exact_bound``, greedy beyond; the
    singleton partition is always valid, so upper <= mu.
    """
    _require_proper_nonzero(a)
    gens = list(a.generators)
    mu = len(gens)
    pair_div: dict[tuple[int, int], int] = {}
    for i in range(mu):
        for j in range(i + 1, mu):
            prod = gens[i] * gens[j]
            mask = 0
            for k, g in enumerate(gens):
                if g.divides(prod):
                    mask |= 1 << k
            pair_div[(i, j)] = mask
    if mu <= 1:
        level_masks = [1] if mu else []
    elif mu <= exact_bound:
        level_masks = _sv_exact(gens, pair_div)
    else:
        level_masks = _sv_greedy(gens, pair_div)
    witness = tuple(
        tuple(gens[i] for i in range(mu) if block >> i & 1)
        for block in level_masks
    )
    lower = cohomological_dimension(a, field)
    upper = len(level_masks)
    bounds = AraBounds(lower, upper, lower == upper, witness)
    assert is_valid_sv_partition(a, witness)
    return bounds


# ---------------------------------------------------------------------------
# depth of powers, dg, and the assembled report


class MinDepthResult(NamedTuple):
    value: int
    horizon: int
    certified: bool


class DgResult(NamedTuple):
    value: int
    horizon: int


def min_depth_powers(
    a: MonomialIdeal, horizon: int, field: FieldSpec | None = None
) -> MinDepthResult:
    """min over 1 <= t <= horizon of depth R/a^t; explicitly uncertified.

    Stabilization of depth of powers holds eventually, but no effective
    bound for the onset is used here; the horizon is reported alongside.
    Short-circuits once depth zero is reached.
    """
    _require_proper_nonzero(a)
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    best: int | None = None
    power = None
    for _ in range(horizon):
        power = a if power is None else power * a
        d = depth(power, field)
        if best is None or d < best:
            best = d
        if best == 0:
            break
    assert best is not None
    return MinDepthResult(best, horizon, False)


def dg(a: MonomialIdeal, horizon: int, field: FieldSpec | None = None) -> DgResult:
    """formal grade minus the observed minimum depth of powers."""
    value = formal_grade(a, field) - min_depth_powers(a, horizon, field).value
    assert value >= 0, "dg must be non-negative"
    return DgResult(value, horizon)


@dataclass(frozen=True)
class InvariantReport:
    """Every computed invariant of one ideal, with certification flags."""

    mu: int
    height: int
    dim_quotient: int
    depth: int
    proj_dim: int
    cd: int
    fgrade: int
    analytic_spread: int
    ara: AraBounds
    dg_value: int
    dg_horizon: int
    min_depth_value: int
    min_depth_horizon: int
    squarefree: bool
    cohen_macaulay: bool
    cohomologically_ci: bool
    stci_certified: bool
    field: FieldSpec

    def invariants_dict(self) -> dict:
        """The invariants/flags payload, in the published key order."""
        return {
            "invariants": {
                "mu": self.mu,
                "height": self.height,
                "dim_quotient": self.dim_quotient,
                "depth": self.depth,
                "proj_dim": self.proj_dim,
                "cd": self.cd,
                "fgrade": self.fgrade,
                "analytic_spread": self.analytic_spread,
                "ara": {
                    "lower": self.ara.lower,
                    "upper": self.ara.upper,
                    "certified": self.ara.certified,
                },
                "dg": {
                    "value": self.dg_value,
                    "horizon": self.dg_horizon,
                    "certified": False,
                },
                "min_depth_powers": {
                    "value": self.min_depth_value,
                    "horizon": self.min_depth_horizon,
                },
            },
            "flags": {
                "squarefree": self.squarefree,
                "cohen_macaulay": self.cohen_macaulay,
                "cohomologically_ci": self.cohomologically_ci,
                "stci_certified": self.stci_certified,
            },
        }


def report(
    a: MonomialIdeal,
    horizon: int = 3,
    field: FieldSpec | None = None,
) -> InvariantReport:
    """Assemble the full invariant report; internal inequalities asserted."""
    _require_proper_nonzero(a)
    if field is None:
        field = a.context.field
    n = a.context.n
    ht = height(a)
    dim_q = dim_quotient(a)
    pd = proj_dim(a, field)
    dep = n - pd
    cd = cohomological_dimension(a, field)
    fg = n - cd
    spread = analytic_spread(a)
    ara = schmitt_vogel_upper(a, field)
    md = min_depth_powers(a, horizon, field)
    dg_res = DgResult(fg - md.value, horizon)
    squarefree = a.is_squarefree
    rep = InvariantReport(
        mu=a.mu,
        height=ht,
        dim_quotient=dim_q,
        depth=dep,
        proj_dim=pd,
        cd=cd,
        fgrade=fg,
        analytic_spread=spread,
        ara=ara,
        dg_value=dg_res.value,
        dg_horizon=horizon,
        min_depth_value=md.value,
        min_depth_horizon=horizon,
        squarefree=squarefree,
        cohen_macaulay=dep == dim_q,
        cohomologically_ci=ht == cd,
        stci_certified=ara.certified and ara.upper == ht,
        field=field,
    )
    assert rep.height <= rep.cd
    assert rep.ara.lower == rep.cd <= rep.ara.upper <= rep.mu
    assert rep.cd <= rep.analytic_spread <= rep.mu
    assert rep.depth + rep.proj_dim == n
    assert rep.fgrade == n - rep.cd
    assert rep.dg_value >= 0
    return rep
