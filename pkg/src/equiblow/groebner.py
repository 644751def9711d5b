"""Buchberger's algorithm with reduced bases, elimination and saturation.

The engine uses the sugar selection strategy together with both classic
pair-discard criteria (coprime leading terms, and the chain criterion).
Reduced bases are unique for a fixed ideal and monomial order, which is
what the ideal-equality test relies on.  Every entry point takes an
optional Budget; blowing past it raises a typed error rather than
silently truncating.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BudgetExceededError, PreconditionError, TheoremCheckError
from .poly import (
    DEGREVLEX,
    MonomialOrder,
    Mono,
    Poly,
    Ring,
    block_order,
    mono_coprime,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


@dataclass(frozen=True)
class Budget:
    """Caps for a single Groebner computation."""

    max_basis: int = 2000
    max_degree: int = 40


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class Ideal:
    """A finitely generated ideal; zero generators are dropped on entry."""

    ring: Ring
    generators: tuple[Poly, ...]

    def __init__(self, ring: Ring, generators: Iterable[Poly]):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator outside the ideal's ring")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))

    def is_zero_ideal(self) -> bool:
        return not self.generators


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic, interreduced, canonically sorted."""

    ring: Ring
    order: MonomialOrder
    basis: tuple[Poly, ...]

    def leading_monomials(self) -> list[Mono]:
        return [g.leading_monomial(self.order) for g in self.basis]

    def self_check(self) -> bool:
        """Re-verify the defining property: every S-polynomial reduces to 0."""
        n = len(self.basis)
        for i in range(n):
            for j in range(i + 1, n):
                s = _s_poly(self.basis[i], self.basis[j], self.order)
                if not normal_form(s, self).is_zero():
                    return False
        return True


def contains_one(gb: GroebnerBasis) -> bool:
    return len(gb.basis) == 1 and gb.basis[0].is_constant() and not gb.basis[0].is_zero()


# ---------------------------------------------------------------------------
# division


def divmod_multi(
    p: Poly, divisors: Sequence[Poly], order: MonomialOrder
) -> tuple[list[Poly], Poly]:
    """Multivariate division: p = sum(q_i * divisors_i) + r.

    No monomial of r is divisible by any divisor's leading monomial.
    The quotients make the identity exact, which lift certificates
    re-check by expansion.
    """
    ring = p.ring
    quotients = [ring.zero() for _ in divisors]
    lead = [(d.leading_monomial(order), d.leading_coefficient(order)) for d in divisors]
    r_terms: dict = {}
    work = p
    while not work.is_zero():
        m = work.leading_monomial(order)
        c = work.terms[m]
        for i, (lm, lc) in enumerate(lead):
            quot = mono_div(m, lm)
            if quot is not None:
                coeff = c / lc
                quotients[i] = quotients[i] + Poly(ring, {quot: coeff})
                work = work - divisors[i].term_mul(quot, coeff)
                break
        else:
            r_terms[m] = c
            work = work - Poly(ring, {m: c})
    return quotients, Poly(ring, r_terms)


def normal_form(p: Poly, gb: GroebnerBasis) -> Poly:
    """Fully reduced remainder of p modulo the basis (unique)."""
    if not gb.basis:
        return p
    _, r = divmod_multi(p, gb.basis, gb.order)
    return r


# ---------------------------------------------------------------------------
# Buchberger


def _s_poly(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = mono_lcm(lf, lg)
    uf = mono_div(lcm, lf)
    ug = mono_div(lcm, lg)
    return f.term_mul(uf, Fraction(1) / f.leading_coefficient(order)) - g.term_mul(
        ug, Fraction(1) / g.leading_coefficient(order)
    )


class _Tracked:
    """A polynomial plus its representation over the original generators."""

    __slots__ = ("poly", "rep", "sugar")

    def __init__(self, poly: Poly, rep: tuple[Poly, ...] | None, sugar: int):
        self.poly = poly
        self.rep = rep
        self.sugar = sugar

    def scaled(self, c: Fraction) -> "_Tracked":
        rep = None if self.rep is None else tuple(r * c for r in self.rep)
        return _Tracked(self.poly * c, rep, self.sugar)


def _reduce_tracked(
    item: _Tracked, basis: list[_Tracked], order: MonomialOrder, budget: Budget
) -> _Tracked:
    """Full reduction of a tracked polynomial against the working basis."""
    ring = item.poly.ring
    work = item.poly
    rep = item.rep
    sugar = item.sugar
    out_terms: dict = {}
    lead = [(b.poly.leading_monomial(order), b.poly.leading_coefficient(order)) for b in basis]
    while not work.is_zero():
        m = work.leading_monomial(order)
        c = work.terms[m]
        hit = None
        for i, (lm, lc) in enumerate(lead):
            quot = mono_div(m, lm)
            if quot is not None:
                hit = (i, quot, c / lc)
                break
        if hit is None:
            out_terms[m] = c
            work = work - Poly(ring, {m: c})
            continue
        i, quot, coeff = hit
        work = work - basis[i].poly.term_mul(quot, coeff)
        sugar = max(sugar, basis[i].sugar + mono_degree(quot))
        if rep is not None:
            brep = basis[i].rep
            rep = tuple(
                r - br.term_mul(quot, coeff) for r, br in zip(rep, brep)
            )
    reduced = Poly(ring, out_terms)
    if reduced.total_degree() > budget.max_degree:
        raise BudgetExceededError(
            f"reduction produced degree {reduced.total_degree()} "
            f"(cap {budget.max_degree})"
        )
    return _Tracked(reduced, rep, sugar)


def buchberger(
    ideal: Ideal,
    order: MonomialOrder = DEGREVLEX,
    budget: Budget | None = None,
    _tracked: bool = False,
):
    """Reduced Groebner basis of the ideal under the given order.

    With ``_tracked`` the return value also carries, for every basis
    element, exact quotients over the original generators (used by lift
    certificates).  Sugar-strategy pair selection with the coprime and
    chain criteria keeps the pair queue short; the budget caps basis
    size and the degree of any new basis element.
    """
    budget = budget or DEFAULT_BUDGET
    ring = ideal.ring
    gens = ideal.generators
    if not gens:
        gb = GroebnerBasis(ring, order, ())
        return (gb, {}) if _tracked else gb

    def unit_rep(i: int) -> tuple[Poly, ...] | None:
        if not _tracked:
            return None
        return tuple(ring.one() if j == i else ring.zero() for j in range(len(gens)))

    basis: list[_Tracked] = []
    for i, g in enumerate(gens):
        item = _reduce_tracked(
            _Tracked(g, unit_rep(i), g.total_degree()), basis, order, budget
        )
        if not item.poly.is_zero():
            basis.append(item)
        if len(basis) > budget.max_basis:
            raise BudgetExceededError(
                f"basis size exceeded the cap of {budget.max_basis}"
            )

    pairs: set[tuple[int, int]] = set()
    done: set[tuple[int, int]] = set()
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            pairs.add((i, j))

    def lm(i: int) -> Mono:
        return basis[i].poly.leading_monomial(order)

    def pair_key(ij: tuple[int, int]):
        i, j = ij
        lcm = mono_lcm(lm(i), lm(j))
        sugar = max(
            basis[i].sugar + mono_degree(lcm) - mono_degree(lm(i)),
            basis[j].sugar + mono_degree(lcm) - mono_degree(lm(j)),
        )
        return (sugar, order.key(lcm), i, j)

    while pairs:
        ij = min(pairs, key=pair_key)
        pairs.discard(ij)
        done.add(ij)
        i, j = ij
        li, lj = lm(i), lm(j)
        if mono_coprime(li, lj):
            continue
        lcm = mono_lcm(li, lj)
        skip = False
        for k in range(len(basis)):
            if k in ij:
                continue
            if not mono_divides(lm(k), lcm):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in done and b in done:
                skip = True
                break
        if skip:
            continue
        s = _s_poly(basis[i].poly, basis[j].poly, order)
        rep = None
        if _tracked:
            lcm_ij = mono_lcm(li, lj)
            ui = mono_div(lcm_ij, li)
            uj = mono_div(lcm_ij, lj)
            ci = Fraction(1) / basis[i].poly.leading_coefficient(order)
            cj = Fraction(1) / basis[j].poly.leading_coefficient(order)
            rep = tuple(
                ri.term_mul(ui, ci) - rj.term_mul(uj, cj)
                for ri, rj in zip(basis[i].rep, basis[j].rep)
            )
        sugar = max(
            basis[i].sugar + mono_degree(lcm) - mono_degree(li),
            basis[j].sugar + mono_degree(lcm) - mono_degree(lj),
        )
        item = _reduce_tracked(_Tracked(s, rep, sugar), basis, order, budget)
        if item.poly.is_zero():
            continue
        new_index = len(basis)
        basis.append(item)
        if len(basis) > budget.max_basis:
            raise BudgetExceededError(
                f"basis size exceeded the cap of {budget.max_basis}"
            )
        for t in range(new_index):
            pairs.add((t, new_index))

    return _finalize(ring, order, basis, _tracked)


def _finalize(ring: Ring, order: MonomialOrder, basis: list[_Tracked], tracked: bool):
    """Interreduce, tail-reduce, normalise to monic, sort canonically."""
    # drop elements whose leading monomial another one divides
    keep: list[_Tracked] = []
    lms = [b.poly.leading_monomial(order) for b in basis]
    for i, b in enumerate(basis):
        redundant = False
        for j in range(len(basis)):
            if i == j:
                continue
            if mono_divides(lms[j], lms[i]):
                if lms[j] != lms[i] or j < i:
                    redundant = True
                    break
        if not redundant:
            keep.append(b)

    # tail-reduce every survivor against the others
    final: list[_Tracked] = []
    for i, b in enumerate(keep):
        others = [keep[j] for j in range(len(keep)) if j != i]
        if others:
            b = _reduce_tracked(b, others, order, Budget(10**9, 10**9))
        lc = b.poly.leading_coefficient(order)
        final.append(b.scaled(Fraction(1) / lc))

    final.sort(key=lambda b: order.key(b.poly.leading_monomial(order)))
    gb = GroebnerBasis(ring, order, tuple(b.poly for b in final))
    if tracked:
        reps = {b.poly: b.rep for b in final}
        return gb, reps
    return gb


# ---------------------------------------------------------------------------
# derived operations


def ideal_equal(
    a: Ideal, b: Ideal, order: MonomialOrder = DEGREVLEX, budget: Budget | None = None
) -> bool:
    """Ideal equality through the uniqueness of reduced bases."""
    if a.ring != b.ring:
        raise ValueError("ideals live in different rings")
    ga = buchberger(a, order, budget)
    gb = buchberger(b, order, budget)
    return ga.basis == gb.basis


def ideal_member(p: Poly, ideal_or_gb, budget: Budget | None = None) -> bool:
    gb = (
        ideal_or_gb
        if isinstance(ideal_or_gb, GroebnerBasis)
        else buchberger(ideal_or_gb, DEGREVLEX, budget)
    )
    return normal_form(p, gb).is_zero()


def lift_certificate(
    p: Poly, ideal: Ideal, budget: Budget | None = None
) -> tuple[Poly, ...] | None:
    """Exact quotients expressing p over the ideal's generators.

    Returns q with p == sum(q_i * g_i), or None when p is not a member.
    The identity is re-checked by expansion before returning.
    """
    if p.is_zero():
        return tuple(ideal.ring.zero() for _ in ideal.generators)
    if not ideal.generators:
        return None
    gb, reps = buchberger(ideal, DEGREVLEX, budget, _tracked=True)
    quotients, r = divmod_multi(p, gb.basis, gb.order)
    if not r.is_zero():
        return None
    out = [ideal.ring.zero() for _ in ideal.generators]
    for q, b in zip(quotients, gb.basis):
        if q.is_zero():
            continue
        for t, rep_part in enumerate(reps[b]):
            out[t] = out[t] + q * rep_part
    total = ideal.ring.zero()
    for q, g in zip(out, ideal.generators):
        total = total + q * g
    if total != p:
        raise TheoremCheckError("lift certificate failed re-expansion")  # pragma: no cover
    return tuple(out)


def _transfer(p: Poly, target: Ring) -> Poly:
    return p.rename_ring(target)


def eliminate(
    ideal: Ideal,
    names: Iterable[str],
    budget: Budget | None = None,
) -> Ideal:
    """Intersection of the ideal with the subring omitting ``names``.

    Computed with a block order that makes the eliminated variables
    dominate, so basis elements free of them generate the intersection.
    """
    drop = [nm for nm in ideal.ring.names if nm in set(names)]
    missing = set(names) - set(ideal.ring.names)
    if missing:
        raise ValueError(f"cannot eliminate non-variables: {sorted(missing)}")
    if not drop:
        return ideal
    front = Ring(tuple(drop) + tuple(nm for nm in ideal.ring.names if nm not in set(drop)))
    moved = Ideal(front, [_transfer(g, front) for g in ideal.generators])
    gb = buchberger(moved, block_order(len(drop)), budget)
    sub = ideal.ring.without(drop)
    kept = []
    block = len(drop)
    for g in gb.basis:
        if all(all(m[i] == 0 for i in range(block)) for m in g.terms):
            kept.append(_transfer(g, sub))
    return Ideal(sub, kept)


def _fresh_name(ring: Ring, stem: str) -> str:
    nm = stem
    i = 0
    while nm in ring.index:
        i += 1
        nm = f"{stem}{i}"
    return nm


def saturate(ideal: Ideal, h: Poly, budget: Budget | None = None) -> Ideal:
    """Saturation I : h^infinity via an inverse variable and elimination."""
    if h.ring != ideal.ring:
        raise ValueError("saturating element outside the ideal's ring")
    if h.is_zero():
        raise PreconditionError("cannot saturate by zero")
    if h.is_constant():
        return ideal
    ring = ideal.ring
    t = _fresh_name(ring, "s_inv")
    big = ring.adjoin_front([t])
    gens = [_transfer(g, big) for g in ideal.generators]
    gens.append(big.var(t) * _transfer(h, big) - 1)
    return eliminate(Ideal(big, gens), [t], budget)


def intersect(a: Ideal, b: Ideal, budget: Budget | None = None) -> Ideal:
    """Ideal intersection via the single-variable graded trick."""
    if a.ring != b.ring:
        raise ValueError("ideals live in different rings")
    ring = a.ring
    t = _fresh_name(ring, "mix")
    big = ring.adjoin_front([t])
    tv = big.var(t)
    gens = [tv * _transfer(g, big) for g in a.generators]
    gens += [(big.one() - tv) * _transfer(g, big) for g in b.generators]
    return eliminate(Ideal(big, gens), [t], budget)


def in_radical(p: Poly, ideal: Ideal, budget: Budget | None = None) -> bool:
    """Radical membership via the inverse-variable trick."""
    if p.is_zero():
        return True
    ring = ideal.ring
    t = _fresh_name(ring, "rad")
    big = ring.adjoin_front([t])
    gens = [_transfer(g, big) for g in ideal.generators]
    gens.append(big.one() - big.var(t) * _transfer(p, big))
    gb = buchberger(Ideal(big, gens), DEGREVLEX, budget)
    return contains_one(gb)
