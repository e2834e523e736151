"""Exact arithmetic of monomials and monomial ideals.

Monomials are exponent tuples inside a fixed ring context (an ordered list
of variables over an exact coefficient field).  A monomial ideal is stored
in canonical form: the unique minimal monomial generating set, sorted in
decreasing lexicographic order.  All values are immutable; every operation
returns fresh objects and never mutates its inputs.

Conventions: the zero ideal is the empty generator set, the unit ideal is
generated by the monomial 1.  Both flow through all operations without
special-casing by callers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np


class ContextMismatchError(ValueError):
    """Raised when operands belong to different ring contexts."""


class ResourceLimitError(RuntimeError):
    """Raised when a computation would exceed a configured size bound."""


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals, or a prime field of order ``modulus``."""

    modulus: int | None = None  # None means the rationals

    def __post_init__(self):
        if self.modulus is not None and not _is_prime(self.modulus):
            raise ValueError(f"field modulus must be prime, got {self.modulus}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def prime(cls, q: int) -> "FieldSpec":
        return cls(q)

    @property
    def is_rationals(self) -> bool:
        return self.modulus is None

    @property
    def characteristic(self) -> int:
        return 0 if self.modulus is None else self.modulus

    def __str__(self) -> str:
        return "rational" if self.modulus is None else f"fp:{self.modulus}"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``rational`` or ``fp:<q>``."""
        if text == "rational":
            return cls.rationals()
        if text.startswith("fp:"):
            try:
                q = int(text[3:])
            except ValueError:
                raise ValueError(f"bad field spec {text!r}") from None
            return cls.prime(q)
        raise ValueError(f"bad field spec {text!r} (expected 'rational' or 'fp:<q>')")


@dataclass(frozen=True)
class RingContext:
    """A polynomial ring: ordered variable names over an exact field."""

    variables: tuple[str, ...]
    field: FieldSpec = FieldSpec.rationals()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(self.variables) < 1:
            raise ValueError("a ring context needs at least one variable")
        if any(not v for v in self.variables):
            raise ValueError("variable names must be nonempty")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")

    @property
    def n(self) -> int:
        return len(self.variables)

    def monomial(self, exponents: Iterable[int]) -> "Monomial":
        return Monomial(self, tuple(exponents))

    def unit_monomial(self) -> "Monomial":
        return Monomial(self, (0,) * self.n)

    def variable(self, name: str) -> "Monomial":
        i = self.variables.index(name)
        exps = [0] * self.n
        exps[i] = 1
        return Monomial(self, tuple(exps))

    def maximal_ideal(self) -> "MonomialIdeal":
        """The ideal generated by every variable."""
        gens = [self.variable(v) for v in self.variables]
        return MonomialIdeal.from_generators(self, gens)

    def zero_ideal(self) -> "MonomialIdeal":
        return MonomialIdeal.from_generators(self, [])

    def unit_ideal(self) -> "MonomialIdeal":
        return MonomialIdeal.from_generators(self, [self.unit_monomial()])

    def __str__(self) -> str:
        return f"ring {', '.join(self.variables)} over {self.field}"


def _check_same_context(a, b) -> None:
    if a.context != b.context:
        raise ContextMismatchError(
            f"operands live in different rings: {a.context} vs {b.context}"
        )


@dataclass(frozen=True, order=False)
class Monomial:
    """A monomial x^a, stored as the exponent tuple a."""

    context: RingContext
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if len(self.exponents) != self.context.n:
            raise ValueError(
                f"expected {self.context.n} exponents, got {len(self.exponents)}"
            )
        if any(e < 0 for e in self.exponents):
            raise ValueError("exponents must be non-negative")

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def is_unit(self) -> bool:
        return all(e == 0 for e in self.exponents)

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def support(self) -> frozenset[int]:
        """Indices of variables with positive exponent."""
        return frozenset(i for i, e in enumerate(self.exponents) if e > 0)

    def divides(self, other: "Monomial") -> bool:
        _check_same_context(self, other)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def lcm(self, other: "Monomial") -> "Monomial":
        _check_same_context(self, other)
        return Monomial(
            self.context,
            tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)),
        )

    def gcd(self, other: "Monomial") -> "Monomial":
        _check_same_context(self, other)
        return Monomial(
            self.context,
            tuple(min(a, b) for a, b in zip(self.exponents, other.exponents)),
        )

    def __mul__(self, other: "Monomial") -> "Monomial":
        _check_same_context(self, other)
        return Monomial(
            self.context,
            tuple(a + b for a, b in zip(self.exponents, other.exponents)),
        )

    def __pow__(self, k: int) -> "Monomial":
        if k < 0:
            raise ValueError("monomial powers must be non-negative")
        return Monomial(self.context, tuple(e * k for e in self.exponents))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        """Exact quotient; requires ``other`` to divide ``self``."""
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(
            self.context,
            tuple(a - b for a, b in zip(self.exponents, other.exponents)),
        )

    def radical(self) -> "Monomial":
        """The squarefree support monomial."""
        return Monomial(self.context, tuple(min(e, 1) for e in self.exponents))

    def __str__(self) -> str:
        if self.is_unit:
            return "1"
        parts = []
        for name, e in zip(self.context.variables, self.exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Monomial({self})"


def _minimal_exponent_rows(rows: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Drop rows componentwise-dominated by another row (duplicates collapse)."""
    uniq = sorted(set(rows))
    if len(uniq) <= 1:
        return uniq
    if len(uniq) > 64:
        arr = np.array(uniq, dtype=np.int64)
        order = np.argsort(arr.sum(axis=1), kind="stable")
        arr = arr[order]
        kept = np.empty_like(arr)
        count = 0
        for row in arr:
            # earlier rows have smaller or equal total degree, so any divisor
            # of `row` is already in `kept`
            if count and bool(np.any(np.all(kept[:count] <= row, axis=1))):
                continue
            kept[count] = row
            count += 1
        return sorted(tuple(int(x) for x in r) for r in kept[:count])
    out = []
    for r in uniq:
        if any(s != r and all(x <= y for x, y in zip(s, r)) for s in uniq):
            continue
        out.append(r)
    return out


def _sort_key(exps: tuple[int, ...]) -> tuple:
    # decreasing lexicographic term order: x before y before z
    return tuple(-e for e in exps)


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal in canonical form (minimal generators, sorted)."""

    context: RingContext
    generators: tuple[Monomial, ...]

    @classmethod
    def from_generators(
        cls, context: RingContext, gens: Iterable[Monomial]
    ) -> "MonomialIdeal":
        gens = list(gens)
        for g in gens:
            if g.context != context:
                raise ContextMismatchError(
                    f"generator {g} does not live in {context}"
                )
        rows = _minimal_exponent_rows([g.exponents for g in gens])
        rows.sort(key=_sort_key)
        return cls(context, tuple(Monomial(context, r) for r in rows))

    @classmethod
    def from_exponents(
        cls, context: RingContext, rows: Iterable[Iterable[int]]
    ) -> "MonomialIdeal":
        return cls.from_generators(
            context, [Monomial(context, tuple(r)) for r in rows]
        )

    # -- structure -------------------------------------------------------

    @property
    def mu(self) -> int:
        """Minimal number of generators (0 for the zero ideal)."""
        return len(self.generators)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_unit

    @property
    def is_proper(self) -> bool:
        return not self.is_unit

    @property
    def is_squarefree(self) -> bool:
        return all(g.is_squarefree for g in self.generators)

    def exponent_matrix(self) -> np.ndarray:
        """Generator exponents as a mu x n integer array."""
        if self.is_zero:
            return np.zeros((0, self.context.n), dtype=np.int64)
        return np.array([g.exponents for g in self.generators], dtype=np.int64)

    def support(self) -> frozenset[int]:
        """Variables occurring in some generator."""
        out: set[int] = set()
        for g in self.generators:
            out |= g.support()
        return frozenset(out)

    # -- membership ------------------------------------------------------

    def __contains__(self, m: Monomial) -> bool:
        _check_same_context(self, m)
        return any(g.divides(m) for g in self.generators)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        _check_same_context(self, other)
        return all(g in self for g in other.generators)

    def __le__(self, other: "MonomialIdeal") -> bool:
        return other.contains_ideal(self)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        _check_same_context(self, other)
        return MonomialIdeal.from_generators(
            self.context, self.generators + other.generators
        )

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        _check_same_context(self, other)
        if self.is_zero or other.is_zero:
            return self.context.zero_ideal()
        a = self.exponent_matrix()
        b = other.exponent_matrix()
        prods = (a[:, None, :] + b[None, :, :]).reshape(-1, self.context.n)
        return MonomialIdeal.from_exponents(self.context, prods)

    def __pow__(self, k: int) -> "MonomialIdeal":
        if k < 1:
            raise ValueError(
                "power() needs a positive exponent; ask for the unit ideal explicitly"
            )
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        assert result is not None
        return result

    def __and__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        """Ideal intersection, via pairwise lcms of generators."""
        _check_same_context(self, other)
        if self.is_zero or other.is_zero:
            return self.context.zero_ideal()
        a = self.exponent_matrix()
        b = other.exponent_matrix()
        lcms = np.maximum(a[:, None, :], b[None, :, :]).reshape(-1, self.context.n)
        return MonomialIdeal.from_exponents(self.context, lcms)

    def colon(self, m: Monomial) -> "MonomialIdeal":
        """(self : m) = { u : u*m in self }."""
        _check_same_context(self, m)
        gens = [g / g.gcd(m) for g in self.generators]
        return MonomialIdeal.from_generators(self.context, gens)

    def colon_ideal(self, other: "MonomialIdeal") -> "MonomialIdeal":
        """(self : other), the intersection of colons by each generator."""
        _check_same_context(self, other)
        if other.is_zero:
            return self.context.unit_ideal()
        result = self.colon(other.generators[0])
        for g in other.generators[1:]:
            result = result & self.colon(g)
        return result

    def saturate(self, other: "MonomialIdeal") -> "MonomialIdeal":
        """(self : other^infinity), by iterating the colon until stable."""
        _check_same_context(self, other)
        current = self
        while True:
            nxt = current.colon_ideal(other)
            if nxt == current:
                return current
            current = nxt

    def radical(self) -> "MonomialIdeal":
        return MonomialIdeal.from_generators(
            self.context, [g.radical() for g in self.generators]
        )

    def bracket_power(self, q: int) -> "MonomialIdeal":
        """The ideal of q-th powers of the minimal generators."""
        if q < 1:
            raise ValueError("bracket power needs q >= 1")
        return MonomialIdeal.from_generators(
            self.context, [g ** q for g in self.generators]
        )

    # -- presentation ----------------------------------------------------

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.generators)

    def generator_strings(self) -> list[str]:
        return [str(g) for g in self.generators]

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(self.generator_strings()) + ")"

    def __repr__(self) -> str:
        return f"MonomialIdeal{self}"


def minimalize(gens: Iterable[Monomial]) -> MonomialIdeal:
    """Build the canonical ideal from an arbitrary generator collection.

    All monomials must share one context; the context cannot be inferred
    from an empty collection, so pass at least one monomial or use
    ``RingContext.zero_ideal`` directly.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("cannot infer the ring from an empty generator set; "
                         "use RingContext.zero_ideal()")
    ctx = gens[0].context
    for g in gens[1:]:
        _check_same_context(gens[0], g)
    return MonomialIdeal.from_generators(ctx, gens)
