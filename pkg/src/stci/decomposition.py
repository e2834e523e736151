"""Irreducible decomposition of monomial ideals and derived invariants.

An irreducible monomial ideal is generated by pure powers of variables.
Every proper nonzero monomial ideal is the irredundant intersection of a
unique finite set of irreducible ones; we compute it by recursive generator
splitting.  Minimal primes, height, dimension of the quotient, symbolic
powers of squarefree ideals, and a saturation-based depth-zero test are
derived from the decomposition machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import Monomial, MonomialIdeal, RingContext


def _require_proper_nonzero(a: MonomialIdeal) -> None:
    if a.is_zero or a.is_unit:
        raise ValueError("operation requires a proper, nonzero ideal")


@dataclass(frozen=True)
class IrreducibleComponent:
    """An ideal (x_i^{e_i} : i in support), stored as the exponent map."""

    context: RingContext
    entries: tuple[tuple[int, int], ...]  # sorted (variable index, exponent > 0)

    @classmethod
    def from_ideal(cls, a: MonomialIdeal) -> "IrreducibleComponent":
        entries = []
        for g in a.generators:
            supp = sorted(g.support())
            if len(supp) != 1:
                raise ValueError(f"{a} is not irreducible")
            i = supp[0]
            entries.append((i, g.exponents[i]))
        if not entries:
            raise ValueError("an irreducible component needs nonempty support")
        return cls(a.context, tuple(sorted(entries)))

    def ideal(self) -> MonomialIdeal:
        rows = []
        for i, e in self.entries:
            row = [0] * self.context.n
            row[i] = e
            rows.append(row)
        return MonomialIdeal.from_exponents(self.context, rows)

    def support(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.entries)

    def radical_prime(self) -> MonomialIdeal:
        """The prime generated by the support variables."""
        return _variable_prime(self.context, self.support())

    def __str__(self) -> str:
        return str(self.ideal())


def _variable_prime(ctx: RingContext, variables: frozenset[int]) -> MonomialIdeal:
    rows = []
    for i in sorted(variables):
        row = [0] * ctx.n
        row[i] = 1
        rows.append(row)
    return MonomialIdeal.from_exponents(ctx, rows)


def irreducible_decomposition(a: MonomialIdeal) -> tuple[IrreducibleComponent, ...]:
    """Irredundant irreducible components whose intersection is ``a``.

    Splits a generator u*v with coprime u, v into the two ideals a+(u) and
    a+(v) until every generator is a pure power, then removes redundant
    components.  The irredundant decomposition of a monomial ideal is
    unique, so the result does not depend on splitting choices.
    """
    _require_proper_nonzero(a)
    ctx = a.context
    components: dict[MonomialIdeal, None] = {}
    seen: set[MonomialIdeal] = set()
    stack = [a]
    while stack:
        b = stack.pop()
        if b in seen:
            continue
        seen.add(b)
        split_gen = None
        for g in b.generators:
            if len(g.support()) > 1:
                split_gen = g
                break
        if split_gen is None:
            components[b] = None
            continue
        j = min(split_gen.support())
        u_row = [0] * ctx.n
        u_row[j] = split_gen.exponents[j]
        u = Monomial(ctx, tuple(u_row))
        v = split_gen / u
        stack.append(b + MonomialIdeal.from_generators(ctx, [u]))
        stack.append(b + MonomialIdeal.from_generators(ctx, [v]))

    comps = sorted(
        components,
        key=lambda c: [tuple(-e for e in g.exponents) for g in c.generators],
    )
    # drop components containing the intersection of the others
    kept = list(comps)
    changed = True
    while changed:
        changed = False
        for i in range(len(kept)):
            others = kept[:i] + kept[i + 1:]
            if not others:
                break
            inter = others[0]
            for o in others[1:]:
                inter = inter & o
            if kept[i].contains_ideal(inter):
                del kept[i]
                changed = True
                break
    return tuple(IrreducibleComponent.from_ideal(c) for c in kept)


def minimal_primes(a: MonomialIdeal) -> tuple[MonomialIdeal, ...]:
    """Inclusion-minimal primes over ``a``; each is generated by variables.

    A variable subset T yields a prime containing ``a`` exactly when every
    generator's support meets T, so the minimal primes are the minimal
    transversals of the generator supports.  For small rings we enumerate
    subsets directly; otherwise we fall back to the decomposition.
    """
    _require_proper_nonzero(a)
    ctx = a.context
    supports = [g.support() for g in a.generators]
    if ctx.n <= 16:
        covers: list[frozenset[int]] = []
        universe = sorted(a.support())
        for size in range(1, len(universe) + 1):
            for subset in combinations(universe, size):
                t = frozenset(subset)
                if any(c <= t for c in covers):
                    continue
                if all(s & t for s in supports):
                    covers.append(t)
        minimal = [t for t in covers if not any(c < t for c in covers)]
    else:
        minimal = sorted(
            {c.support() for c in irreducible_decomposition(a)}, key=sorted
        )
        minimal = [t for t in minimal if not any(c < t for c in minimal)]
    primes = [_variable_prime(ctx, t) for t in minimal]
    primes.sort(key=lambda p: [tuple(-e for e in g.exponents) for g in p.generators])
    return tuple(primes)


def height(a: MonomialIdeal) -> int:
    """Minimum number of variables generating a minimal prime of ``a``."""
    _require_proper_nonzero(a)
    return min(p.mu for p in minimal_primes(a))


def dim_quotient(a: MonomialIdeal) -> int:
    """Krull dimension of the quotient ring, n - height."""
    return a.context.n - height(a)


def symbolic_power(a: MonomialIdeal, t: int) -> MonomialIdeal:
    """t-th symbolic power of a squarefree ideal.

    For squarefree ideals this is the intersection of the t-th ordinary
    powers of the minimal primes.  General monomial ideals are rejected.
    """
    _require_proper_nonzero(a)
    if t < 1:
        raise ValueError("symbolic power needs t >= 1")
    if a.radical() != a:
        raise ValueError("symbolic powers are only defined here for squarefree ideals")
    if t == 1:
        return a
    primes = minimal_primes(a)
    result = primes[0] ** t
    for p in primes[1:]:
        result = result & (p ** t)
    return result


def has_depth_zero(a: MonomialIdeal) -> bool:
    """True iff the maximal ideal is associated to the quotient.

    Detected by saturation: depth zero means saturating by the maximal
    ideal changes ``a``.
    """
    _require_proper_nonzero(a)
    m = a.context.maximal_ideal()
    return a.saturate(m) != a
