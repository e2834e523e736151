"""Exact linear algebra and simplicial homology over the rationals or F_q.

Provides the two independent Betti-number paths for quotients by monomial
ideals: the Taylor complex on the minimal generators, and upper-Koszul
simplicial complexes at the multidegrees of the lcm lattice.  Each serves
as the other's oracle.  Also computes the nonvanishing degrees of local
cohomology of squarefree quotients through links in the Stanley-Reisner
complex.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd

import numpy as np

from .core import FieldSpec, MonomialIdeal, ResourceLimitError

TAYLOR_GENERATOR_BOUND = 20
LATTICE_SIZE_BOUND = 200_000


# ---------------------------------------------------------------------------
# sparse matrices and exact rank


class SparseMatrix:
    """A sparse matrix stored as a triplet list, for exact rank computations."""

    def __init__(self, nrows: int, ncols: int, triplets=()):
        self.nrows = nrows
        self.ncols = ncols
        self.entries: dict[tuple[int, int], object] = {}
        for i, j, v in triplets:
            if v:
                self.entries[(i, j)] = v

    def __setitem__(self, key, value):
        if value:
            self.entries[key] = value
        else:
            self.entries.pop(key, None)

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        by_row: dict[int, dict[int, object]] = {}
        for (i, j), v in other.entries.items():
            by_row.setdefault(i, {})[j] = v
        out = SparseMatrix(self.nrows, other.ncols)
        for (i, k), v in self.entries.items():
            row = by_row.get(k)
            if not row:
                continue
            for j, w in row.items():
                out[(i, j)] = out[(i, j)] + v * w
        return out

    @classmethod
    def from_rows(cls, rows) -> "SparseMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        m = cls(nrows, ncols)
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                if v:
                    m[(i, j)] = v
        return m


def _integer_rows(matrix: SparseMatrix) -> dict[int, dict[int, int]]:
    """Rows with denominators cleared; row scaling does not change the rank."""
    rows: dict[int, dict[int, Fraction | int]] = {}
    for (i, j), v in matrix.entries.items():
        rows.setdefault(i, {})[j] = v
    out: dict[int, dict[int, int]] = {}
    for i, row in rows.items():
        denom = 1
        for v in row.values():
            if isinstance(v, Fraction):
                denom = denom * v.denominator // gcd(denom, v.denominator)
        cleaned = {}
        for j, v in row.items():
            w = v * denom
            w = int(w) if not isinstance(w, int) else w
            if w:
                cleaned[j] = w
        if cleaned:
            out[i] = cleaned
    return out


def _normalize_row(row: dict[int, int]) -> None:
    g = 0
    for v in row.values():
        g = gcd(g, abs(v))
        if g == 1:
            return
    if g > 1:
        for j in row:
            row[j] //= g


def _rank_rational(matrix: SparseMatrix) -> int:
    rows = _integer_rows(matrix)
    cols: dict[int, set[int]] = {}
    for i, row in rows.items():
        for j in row:
            cols.setdefault(j, set()).add(i)
    rank = 0
    while rows:
        # Markowitz-style pivot: minimize projected fill, break ties by index
        best = None
        for i in sorted(rows):
            rlen = len(rows[i])
            for j in sorted(rows[i]):
                cost = (rlen - 1) * (len(cols[j]) - 1)
                if best is None or cost < best[0]:
                    best = (cost, i, j)
            if best is not None and best[0] == 0:
                break
        _, pi, pj = best
        pivot_row = rows.pop(pi)
        pval = pivot_row[pj]
        for j in pivot_row:
            cols[j].discard(pi)
        for ri in sorted(cols.get(pj, ())):
            row = rows[ri]
            v = row[pj]
            new_row: dict[int, int] = {}
            for j in set(row) | set(pivot_row):
                w = row.get(j, 0) * pval - v * pivot_row.get(j, 0)
                if w:
                    new_row[j] = w
            _normalize_row(new_row)
            for j in row:
                cols[j].discard(ri)
            if new_row:
                rows[ri] = new_row
                for j in new_row:
                    cols.setdefault(j, set()).add(ri)
            else:
                del rows[ri]
        cols.pop(pj, None)
        rank += 1
    return rank


def _rank_prime(matrix: SparseMatrix, q: int) -> int:
    rows: dict[int, dict[int, int]] = {}
    for (i, j), v in matrix.entries.items():
        if isinstance(v, Fraction):
            num, den = v.numerator % q, v.denominator % q
            if den == 0:
                raise ZeroDivisionError("denominator divisible by the modulus")
            w = num * pow(den, q - 2, q) % q
        else:
            w = int(v) % q
        if w:
            rows.setdefault(i, {})[j] = w
    cols: dict[int, set[int]] = {}
    for i, row in rows.items():
        for j in row:
            cols.setdefault(j, set()).add(i)
    rank = 0
    while rows:
        best = None
        for i in sorted(rows):
            rlen = len(rows[i])
            for j in sorted(rows[i]):
                cost = (rlen - 1) * (len(cols[j]) - 1)
                if best is None or cost < best[0]:
                    best = (cost, i, j)
            if best is not None and best[0] == 0:
                break
        _, pi, pj = best
        pivot_row = rows.pop(pi)
        pinv = pow(pivot_row[pj], q - 2, q)
        for j in pivot_row:
            cols[j].discard(pi)
        for ri in sorted(cols.get(pj, ())):
            row = rows[ri]
            factor = row[pj] * pinv % q
            new_row: dict[int, int] = {}
            for j in set(row) | set(pivot_row):
                w = (row.get(j, 0) - factor * pivot_row.get(j, 0)) % q
                if w:
                    new_row[j] = w
            for j in row:
                cols[j].discard(ri)
            if new_row:
                rows[ri] = new_row
                for j in new_row:
                    cols.setdefault(j, set()).add(ri)
            else:
                del rows[ri]
        cols.pop(pj, None)
        rank += 1
    return rank


def rank(matrix, field: FieldSpec = FieldSpec.rationals()) -> int:
    """Exact rank of a matrix over the given field.

    Accepts a SparseMatrix, a sequence of rows, or a numpy array.  Over the
    rationals the elimination is fraction-free on integer-cleared rows; over
    a prime field it reduces entries modulo q first.
    """
    if not isinstance(matrix, SparseMatrix):
        if isinstance(matrix, np.ndarray):
            matrix = SparseMatrix.from_rows(matrix.tolist())
        else:
            matrix = SparseMatrix.from_rows(matrix)
    if matrix.is_zero():
        return 0
    if field.is_rationals:
        return _rank_rational(matrix)
    return _rank_prime(matrix, field.modulus)


# ---------------------------------------------------------------------------
# chain complexes


@dataclass
class ChainComplex:
    """Boundary maps D_i : C_i -> C_{i-1} with D_i . D_{i+1} = 0."""

    dims: dict[int, int]
    diffs: dict[int, SparseMatrix] = dc_field(default_factory=dict)

    def validate(self) -> None:
        for i, d in self.diffs.items():
            up = self.diffs.get(i + 1)
            if up is None:
                continue
            if d.ncols != up.nrows:
                raise ValueError(f"boundary shapes at degree {i} do not compose")
            if not (d @ up).is_zero():
                raise ValueError(f"boundary squared is nonzero at degree {i}")

    def homology_ranks(self, field: FieldSpec = FieldSpec.rationals()) -> dict[int, int]:
        out = {}
        for i, dim in sorted(self.dims.items()):
            r_out = rank(self.diffs[i], field) if i in self.diffs else 0
            r_in = rank(self.diffs[i + 1], field) if i + 1 in self.diffs else 0
            out[i] = dim - r_out - r_in
        return out


# ---------------------------------------------------------------------------
# simplicial complexes


class SimplicialComplex:
    """A finite simplicial complex given by its face set.

    The VOID complex (no faces, not even the empty one) and the IRRELEVANT
    complex (only the empty face) are distinct: the irrelevant complex has
    reduced homology of rank one in degree -1, the void complex has none.
    """

    def __init__(self, vertex_count: int, faces):
        self.vertex_count = vertex_count
        self.faces = frozenset(frozenset(f) for f in faces)
        for f in self.faces:
            for v in f:
                if not (0 <= v < vertex_count):
                    raise ValueError(f"vertex {v} out of range")

    @classmethod
    def void(cls, vertex_count: int = 0) -> "SimplicialComplex":
        return cls(vertex_count, [])

    @classmethod
    def irrelevant(cls, vertex_count: int = 0) -> "SimplicialComplex":
        return cls(vertex_count, [frozenset()])

    @classmethod
    def from_facets(cls, vertex_count: int, facets) -> "SimplicialComplex":
        faces = {frozenset()}
        for facet in facets:
            facet = tuple(sorted(set(facet)))
            k = len(facet)
            for mask in range(1 << k):
                faces.add(frozenset(facet[i] for i in range(k) if mask >> i & 1))
        return cls(vertex_count, faces)

    @property
    def is_void(self) -> bool:
        return not self.faces

    @property
    def is_irrelevant(self) -> bool:
        return self.faces == frozenset([frozenset()])

    @property
    def dim(self) -> int:
        """Dimension; -1 for the irrelevant complex, -2 for the void one."""
        if self.is_void:
            return -2
        return max(len(f) for f in self.faces) - 1

    def faces_of_dim(self, i: int) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(f)) for f in self.faces if len(f) == i + 1)

    def f_vector(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for f in self.faces:
            d = len(f) - 1
            out[d] = out.get(d, 0) + 1
        return out

    def link(self, sigma) -> "SimplicialComplex":
        sigma = frozenset(sigma)
        if sigma not in self.faces:
            raise ValueError("link of a non-face")
        faces = [f - sigma for f in self.faces if f >= sigma]
        return SimplicialComplex(self.vertex_count, faces)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimplicialComplex)
            and self.vertex_count == other.vertex_count
            and self.faces == other.faces
        )

    def __hash__(self):
        return hash((self.vertex_count, self.faces))

    def __repr__(self) -> str:
        if self.is_void:
            return "SimplicialComplex(VOID)"
        if self.is_irrelevant:
            return "SimplicialComplex(IRRELEVANT)"
        facets = sorted(
            (tuple(sorted(f)) for f in self.faces
             if not any(g > f for g in self.faces)),
        )
        return f"SimplicialComplex(facets={facets})"


def boundary_chain_complex(
    complex_: SimplicialComplex, field: FieldSpec = FieldSpec.rationals()
) -> ChainComplex:
    """The augmented (reduced) simplicial chain complex, C_{-1} included."""
    if complex_.is_void:
        return ChainComplex(dims={})
    dims = {}
    index: dict[int, dict[tuple[int, ...], int]] = {}
    for i in range(-1, complex_.dim + 1):
        faces = complex_.faces_of_dim(i)
        dims[i] = len(faces)
        index[i] = {f: k for k, f in enumerate(faces)}
    diffs = {}
    for i in range(0, complex_.dim + 1):
        m = SparseMatrix(dims[i - 1], dims[i])
        for f, col in index[i].items():
            for pos in range(len(f)):
                sub = f[:pos] + f[pos + 1:]
                m[(index[i - 1][sub], col)] = -1 if pos % 2 else 1
        diffs[i] = m
    return ChainComplex(dims=dims, diffs=diffs)


def reduced_homology_ranks(
    complex_: SimplicialComplex, field: FieldSpec = FieldSpec.rationals()
) -> dict[int, int]:
    """Ranks of reduced homology for degrees -1 .. dim.

    The void complex has no homology at all; the irrelevant complex has
    rank one in degree -1.
    """
    if complex_.is_void:
        return {}
    return boundary_chain_complex(complex_, field).homology_ranks(field)


# ---------------------------------------------------------------------------
# Taylor complex


def _subset_lcms(exponents: np.ndarray) -> np.ndarray:
    """lcm exponent vector for every subset mask of the generators."""
    m, n = exponents.shape
    table = np.zeros((1 << m, n), dtype=np.int64)
    for mask in range(1, 1 << m):
        low = mask & -mask
        table[mask] = np.maximum(table[mask ^ low], exponents[low.bit_length() - 1])
    return table


def taylor_chain_complex(
    a: MonomialIdeal,
    field: FieldSpec | None = None,
    max_generators: int = 12,
) -> ChainComplex:
    """The full Taylor complex of the minimal generators, tensored to the field.

    Exponential in mu; meant for small ideals and for validating the blocked
    computation in :func:`taylor_homology`.
    """
    if a.is_unit or a.is_zero:
        raise ValueError("taylor complex needs a proper, nonzero ideal")
    mu = a.mu
    if mu > max_generators:
        raise ResourceLimitError(
            f"mu(a) = {mu} exceeds the full-complex bound {max_generators}"
        )
    exps = a.exponent_matrix()
    lcms = _subset_lcms(exps)
    by_size: dict[int, list[int]] = {i: [] for i in range(mu + 1)}
    for mask in range(1 << mu):
        by_size[bin(mask).count("1")].append(mask)
    index = {
        i: {mask: k for k, mask in enumerate(sorted(masks))}
        for i, masks in by_size.items()
    }
    dims = {i: len(masks) for i, masks in by_size.items()}
    diffs = {}
    for i in range(1, mu + 1):
        m = SparseMatrix(dims[i - 1], dims[i])
        for mask, col in index[i].items():
            members = [b for b in range(mu) if mask >> b & 1]
            for pos, b in enumerate(members):
                sub = mask ^ (1 << b)
                if np.array_equal(lcms[sub], lcms[mask]):
                    m[(index[i - 1][sub], col)] = -1 if pos % 2 else 1
        diffs[i] = m
    return ChainComplex(dims=dims, diffs=diffs)


def taylor_homology(
    a: MonomialIdeal,
    field: FieldSpec | None = None,
    max_generators: int = TAYLOR_GENERATOR_BOUND,
) -> dict[int, int]:
    """Betti numbers of R/a from the Taylor complex on the minimal generators.

    The tensored differential only connects subsets with equal lcm, so the
    computation is blocked by lcm multidegree.  Raises ResourceLimitError
    when mu exceeds ``max_generators``; use :func:`koszul_betti` for larger
    ideals, in particular for powers.
    """
    if a.is_unit or a.is_zero:
        raise ValueError("betti numbers need a proper, nonzero ideal")
    if field is None:
        field = a.context.field
    mu = a.mu
    if mu > max_generators:
        raise ResourceLimitError(
            f"mu(a) = {mu} exceeds the Taylor bound {max_generators}; "
            "use koszul_betti instead"
        )
    exps = a.exponent_matrix()
    lcms = _subset_lcms(exps)
    classes: dict[bytes, list[int]] = {}
    for mask in range(1 << mu):
        classes.setdefault(lcms[mask].tobytes(), []).append(mask)
    betti: dict[int, int] = {}
    for members in classes.values():
        members_set = set(members)
        by_size: dict[int, list[int]] = {}
        for mask in members:
            by_size.setdefault(bin(mask).count("1"), []).append(mask)
        index = {
            i: {mask: k for k, mask in enumerate(sorted(masks))}
            for i, masks in by_size.items()
        }
        ranks: dict[int, int] = {}
        for i, masks in by_size.items():
            if i - 1 not in by_size:
                ranks[i] = 0
                continue
            m = SparseMatrix(len(by_size[i - 1]), len(masks))
            for mask in masks:
                col = index[i][mask]
                members_of = [b for b in range(mu) if mask >> b & 1]
                for pos, b in enumerate(members_of):
                    sub = mask ^ (1 << b)
                    if sub in members_set:
                        m[(index[i - 1][sub], col)] = -1 if pos % 2 else 1
            ranks[i] = rank(m, field)
        for i, masks in by_size.items():
            h = len(masks) - ranks.get(i, 0) - ranks.get(i + 1, 0)
            if h:
                betti[i] = betti.get(i, 0) + h
    return dict(sorted(betti.items()))


# ---------------------------------------------------------------------------
# lcm lattice and upper-Koszul complexes


def lcm_lattice(a: MonomialIdeal, max_size: int = LATTICE_SIZE_BOUND) -> list[tuple[int, ...]]:
    """All joins of nonempty generator subsets, sorted; excludes the bottom."""
    if a.is_zero:
        return []
    gens = a.exponent_matrix()
    n = gens.shape[1]
    known: set[tuple[int, ...]] = {tuple(int(x) for x in r) for r in gens}
    frontier = np.array(sorted(known), dtype=np.int64)
    chunk = max(1, 2_000_000 // (gens.shape[0] * max(n, 1)))
    while len(frontier):
        fresh: list[tuple[int, ...]] = []
        for start in range(0, len(frontier), chunk):
            block = frontier[start:start + chunk]
            joins = np.maximum(block[:, None, :], gens[None, :, :]).reshape(-1, n)
            joins = np.unique(joins, axis=0)
            fresh.extend(
                t for t in (tuple(int(x) for x in r) for r in joins) if t not in known
            )
        fresh = sorted(set(fresh))
        if not fresh:
            break
        known.update(fresh)
        if len(known) > max_size:
            raise ResourceLimitError(
                f"lcm lattice exceeds {max_size} elements"
            )
        frontier = np.array(fresh, dtype=np.int64)
    return sorted(known)


def upper_koszul_complex(a: MonomialIdeal, b) -> SimplicialComplex:
    """The upper-Koszul complex at multidegree b, on the support of b.

    Faces are the squarefree tau with x^(b - tau) in a.  Vertices are
    relabelled to 0..s-1 following the sorted support of b.
    """
    b = tuple(int(x) for x in b)
    supp = [j for j, e in enumerate(b) if e > 0]
    pos = {j: k for k, j in enumerate(supp)}
    s = len(supp)
    carriers: set[int] = set()
    for g in a.generators:
        e = g.exponents
        if not all(e[j] <= b[j] for j in range(len(b))):
            continue
        mask = 0
        for j in supp:
            if e[j] < b[j]:
                mask |= 1 << pos[j]
        carriers.add(mask)
    if not carriers:
        return SimplicialComplex.void(s)
    maximal = [c for c in carriers if not any(o != c and o & c == c for o in carriers)]
    faces: set[int] = set()
    for c in maximal:
        sub = c
        while True:
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & c
    return SimplicialComplex(
        s, [frozenset(k for k in range(s) if f >> k & 1) for f in faces]
    )


def koszul_betti(
    a: MonomialIdeal,
    field: FieldSpec | None = None,
    max_lattice: int = LATTICE_SIZE_BOUND,
) -> dict[tuple[int, tuple[int, ...]], int]:
    """Multigraded Betti numbers of R/a over the lcm lattice.

    beta_{i,b} is the rank of reduced homology in degree i-2 of the
    upper-Koszul complex at b; beta_{0,0} = 1 for a proper ideal.
    """
    if a.is_unit or a.is_zero:
        raise ValueError("betti numbers need a proper, nonzero ideal")
    if field is None:
        field = a.context.field
    zero = (0,) * a.context.n
    out: dict[tuple[int, tuple[int, ...]], int] = {(0, zero): 1}
    for b in lcm_lattice(a, max_size=max_lattice):
        k = upper_koszul_complex(a, b)
        if k.is_void:
            continue
        supp_size = sum(1 for e in b if e > 0)
        # a cone over the full support is contractible in every degree
        if k.dim == supp_size - 1 and len(k.faces) == (1 << supp_size):
            continue
        for j, h in reduced_homology_ranks(k, field).items():
            if h:
                out[(j + 2, b)] = h
    return out


def koszul_betti_totals(
    a: MonomialIdeal,
    field: FieldSpec | None = None,
    max_lattice: int = LATTICE_SIZE_BOUND,
) -> dict[int, int]:
    """Total Betti numbers, summing the multigraded ones per homological degree."""
    out: dict[int, int] = {}
    for (i, _), h in koszul_betti(a, field, max_lattice).items():
        out[i] = out.get(i, 0) + h
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# Stanley-Reisner complexes and local cohomology support


def stanley_reisner_complex(a: MonomialIdeal) -> SimplicialComplex:
    """The complex whose faces are the squarefree monomials outside ``a``."""
    if not a.is_squarefree:
        raise ValueError("Stanley-Reisner complexes need a squarefree ideal")
    n = a.context.n
    if n > 20:
        raise ResourceLimitError("Stanley-Reisner enumeration is bounded at 20 variables")
    gen_masks = []
    for g in a.generators:
        mask = 0
        for j in g.support():
            mask |= 1 << j
        gen_masks.append(mask)
    faces = []
    for sigma in range(1 << n):
        if any(gm & ~sigma == 0 for gm in gen_masks):
            continue
        faces.append(frozenset(j for j in range(n) if sigma >> j & 1))
    return SimplicialComplex(n, faces)


def local_cohomology_nonvanishing(
    a: MonomialIdeal, field: FieldSpec | None = None
) -> frozenset[int]:
    """Degrees j with nonvanishing local cohomology of R/a at the maximal ideal.

    For a squarefree ideal, j contributes exactly when some face of the
    Stanley-Reisner complex has a link with reduced homology in degree
    j - |face| - 1.  The minimum of the set is the depth of the quotient
    and the maximum is its dimension.
    """
    if a.is_unit or a.is_zero:
        raise ValueError("local cohomology support needs a proper, nonzero ideal")
    if not a.is_squarefree:
        raise ValueError("this computation requires a squarefree ideal")
    if field is None:
        field = a.context.field
    delta = stanley_reisner_complex(a)
    out: set[int] = set()
    for sigma in delta.faces:
        link = delta.link(sigma)
        for j, h in reduced_homology_ranks(link, field).items():
            if h:
                out.add(j + len(sigma) + 1)
    return frozenset(out)
