"""Diagonal torus actions: weights, isotypic pieces, stabilizers, centers.

A rank-k torus acts diagonally on affine n-space through an integer k x n
weight matrix; column i is the character through which the i-th
coordinate transforms.  Subtori are saturated cocharacter sublattices,
stored as canonical Hermite-reduced row bases so equal subtori compare
equal.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import BudgetExceededError, PreconditionError
from .poly import Mono, Poly, Ring


@dataclass(frozen=True)
class WeightMatrix:
    """k x n integer weight matrix for a diagonal torus action."""

    rows: tuple[tuple[int, ...], ...]

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged weight matrix")
        object.__setattr__(self, "rows", rows)

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(row[i] for row in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(i) for i in range(self.n)]

    def drop_column(self, i: int) -> "WeightMatrix":
        return WeightMatrix(tuple(r[:i] + r[i + 1 :] for r in self.rows))

    def with_columns(self, cols: Sequence[Sequence[int]]) -> "WeightMatrix":
        cols = [tuple(int(x) for x in c) for c in cols]
        return WeightMatrix(
            tuple(tuple(c[a] for c in cols) for a in range(self.k))
        )


@dataclass(frozen=True)
class Subtorus:
    """A subtorus given by a saturated cocharacter sublattice.

    ``cochar`` holds d rows of length k in Hermite-canonical form; d is
    the dimension.  Construction rejects non-primitive bases, since a
    finite-index sublattice names a different group.
    """

    cochar: tuple[tuple[int, ...], ...]
    ambient_rank: int

    def __init__(self, cochar: Iterable[Iterable[int]], ambient_rank: int):
        raw = [list(int(x) for x in row) for row in cochar]
        for row in raw:
            if len(row) != ambient_rank:
                raise ValueError("cocharacter length does not match ambient rank")
        reduced = linalg.hermite_rows(raw) if raw else []
        if reduced:
            divisors = linalg.smith_diagonal(reduced)
            if any(d != 1 for d in divisors):
                raise PreconditionError(
                    "cocharacter rows generate a non-saturated sublattice"
                )
        object.__setattr__(self, "cochar", tuple(tuple(r) for r in reduced))
        object.__setattr__(self, "ambient_rank", int(ambient_rank))

    @classmethod
    def full(cls, k: int) -> "Subtorus":
        return cls([[1 if i == j else 0 for j in range(k)] for i in range(k)], k)

    @classmethod
    def trivial(cls, k: int) -> "Subtorus":
        return cls([], k)

    @property
    def dim(self) -> int:
        return len(self.cochar)

    def is_trivial(self) -> bool:
        return not self.cochar

    def is_full(self) -> bool:
        return self.dim == self.ambient_rank

    def restrict(self, weight: Sequence[int]) -> tuple[int, ...]:
        """Pair a character (weight column) with the cocharacter basis."""
        w = [int(x) for x in weight]
        return tuple(sum(row[a] * w[a] for a in range(self.ambient_rank)) for row in self.cochar)

    def sort_key(self):
        return (-self.dim, self.cochar)


@dataclass(frozen=True)
class GradedPiece:
    """One isotypic component: the restricted weight and the part."""

    weight: tuple[int, ...]
    part: Poly


def monomial_weight(m: Mono, weights: WeightMatrix) -> tuple[int, ...]:
    """Full-torus weight of a monomial: W times the exponent vector."""
    return tuple(
        sum(row[i] * e for i, e in enumerate(m) if e) for row in weights.rows
    )


def poly_weight(p: Poly, weights: WeightMatrix) -> tuple[int, ...] | None:
    """The common weight of a weight-homogeneous polynomial, else None.

    The zero polynomial is homogeneous of every weight; it reports the
    zero weight.
    """
    w = None
    for m in p.terms:
        mw = monomial_weight(m, weights)
        if w is None:
            w = mw
        elif mw != w:
            return None
    return w if w is not None else (0,) * weights.k


def isotypic_decompose(p: Poly, weights: WeightMatrix, torus: Subtorus) -> list[GradedPiece]:
    """Split p into isotypic parts under the subtorus, sorted by weight."""
    buckets: dict[tuple[int, ...], dict] = {}
    for m, c in p.terms.items():
        w = torus.restrict(monomial_weight(m, weights))
        buckets.setdefault(w, {})[m] = c
    return [
        GradedPiece(w, Poly(p.ring, terms)) for w, terms in sorted(buckets.items())
    ]


def reynolds(p: Poly, weights: WeightMatrix, torus: Subtorus) -> Poly:
    """Projection onto the weight-zero isotypic piece (Reynolds operator)."""
    zero = (0,) * torus.dim
    kept = {
        m: c
        for m, c in p.terms.items()
        if torus.restrict(monomial_weight(m, weights)) == zero
    }
    return Poly(p.ring, kept)


def is_invariant(p: Poly, weights: WeightMatrix, torus: Subtorus) -> bool:
    return reynolds(p, weights, torus) == p


def fixed_locus(weights: WeightMatrix, torus: Subtorus) -> tuple[int, ...]:
    """Indices of the moving coordinates; their common zero set is the
    fixed locus of the subtorus."""
    zero = (0,) * torus.dim
    return tuple(
        i for i in range(weights.n) if torus.restrict(weights.column(i)) != zero
    )


def stabilizer_subtorus(support: Iterable[int], weights: WeightMatrix) -> Subtorus:
    """Largest subtorus fixing every point with the given support.

    The kernel {lam : <lam, w_i> = 0 for all i in support} is computed as
    a saturated integer lattice, so the result is canonical.
    """
    support = sorted(set(int(i) for i in support))
    k = weights.k
    if not support:
        return Subtorus.full(k)
    cols = [[weights.rows[a][i] for i in support] for a in range(k)]
    basis = linalg.left_kernel_basis(cols)
    return Subtorus(basis, k)


def orbit_is_closed(support: Iterable[int], weights: WeightMatrix) -> bool:
    """Whether the torus orbit of a point with this support is closed.

    Criterion: 0 lies in the relative interior of the convex hull of the
    support's weight columns.  The empty support is a fixed point.
    """
    support = sorted(set(int(i) for i in support))
    if not support:
        return True
    if weights.k == 0:
        return True
    return linalg.zero_in_relative_interior([weights.column(i) for i in support])


def support_is_realized(
    support: Sequence[int],
    ideal,
    gb_cache: dict | None = None,
):
    """Saturated ideal of {points in V(I) with support exactly S}, or None.

    None means no point of V(I) has that exact support.  Imported lazily
    from the Groebner layer to keep the module graphs acyclic.
    """
    from . import groebner

    ring = ideal.ring
    support = sorted(set(support))
    off = [i for i in range(ring.n) if i not in support]
    gens = list(ideal.generators) + [ring.var(ring.names[i]) for i in off]
    J = groebner.Ideal(ring, gens)
    if support:
        prod = ring.one()
        for i in support:
            prod = prod * ring.var(ring.names[i])
        J = groebner.saturate(J, prod)
    gb = groebner.buchberger(J)
    if groebner.contains_one(gb):
        return None
    return J


def closed_orbit_stabilizers(weights: WeightMatrix, max_vars: int = 16) -> list[Subtorus]:
    """Nontrivial subtori stabilizing some closed-orbit point of the ambient space.

    A point's stabilizer depends only on its coordinate support, so a scan
    over supports is exhaustive.  Unlike ``enumerate_blowup_centers`` this
    keeps trivially-acting subtori and ignores any ideal: the list serves
    structural checks that quantify over all closed-orbit points.
    """
    n = weights.n
    if n > max_vars:
        raise BudgetExceededError(
            f"support scan over {n} coordinates exceeds the {max_vars}-variable cap"
        )
    found: dict = {}
    for size in range(n + 1):
        for support in itertools.combinations(range(n), size):
            if not orbit_is_closed(support, weights):
                continue
            R = stabilizer_subtorus(support, weights)
            if R.is_trivial() or R.cochar in found:
                continue
            found[R.cochar] = R
    return sorted(found.values(), key=lambda R: R.sort_key())


def enumerate_blowup_centers(
    weights: WeightMatrix,
    ideal,
    unstable=None,
    max_vars: int = 16,
) -> list[Subtorus]:
    """Nontrivial stabilizer subtori of closed-orbit points of V(I).

    Scans every coordinate support, keeps those realized by an actual
    point of V(I) (membership tested through saturated coordinate-slice
    ideals), requires the orbit closed and, when an unstable ideal is
    supplied, a realizing point outside its zero set.  Subtori acting
    trivially on the ambient space are excluded: blowing up along the
    whole space is the degenerate case handled by the caller.

    Results are deduplicated and sorted by decreasing dimension, ties
    broken by the canonical cocharacter rows.
    """
    from . import groebner

    ring = ideal.ring
    n = ring.n
    if n > max_vars:
        raise BudgetExceededError(
            f"support scan over {n} coordinates exceeds the {max_vars}-variable cap"
        )
    found: dict = {}
    for size in range(n + 1):
        for support in itertools.combinations(range(n), size):
            if not orbit_is_closed(support, weights):
                continue
            R = stabilizer_subtorus(support, weights)
            if R.is_trivial() or R.cochar in found:
                continue
            if not fixed_locus(weights, R):
                continue  # acts trivially on the ambient space
            slice_ideal = support_is_realized(support, ideal)
            if slice_ideal is None:
                continue
            if unstable is not None and unstable.generators:
                if all(
                    groebner.in_radical(g, slice_ideal) for g in unstable.generators
                ):
                    continue  # every realizing point is unstable
            found[R.cochar] = R
    return sorted(found.values(), key=lambda R: R.sort_key())
