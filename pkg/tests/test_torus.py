"""Torus actions on coordinates: weights, isotypic pieces, stabilizers,
closed orbits, and the enumeration of blowup centers."""

import itertools
from fractions import Fraction

import pytest

from equiblow import (
    Ideal,
    Poly,
    PreconditionError,
    Ring,
    Subtorus,
    WeightMatrix,
    closed_orbit_stabilizers,
    enumerate_blowup_centers,
    isotypic_decompose,
    orbit_is_closed,
    parse_poly,
    poly_weight,
    reynolds,
    stabilizer_subtorus,
    support_is_realized,
)

R3 = Ring(["x", "y", "z"])
W1 = WeightMatrix([(1, -1, 0)])
T1 = Subtorus.full(1)


def test_poly_weight_detects_homogeneity():
    assert poly_weight(parse_poly("x*y + z^2", R3), W1) == (0,)
    assert poly_weight(parse_poly("x^2*y", R3), W1) == (1,)
    assert poly_weight(parse_poly("x + y", R3), W1) is None


def test_isotypic_pieces_sum_back_and_are_homogeneous():
    p = parse_poly("x*y + x^2*y + z + x - 3*y", R3)
    pieces = isotypic_decompose(p, W1, T1)
    total = R3.zero()
    for gp in pieces:
        assert poly_weight(gp.part, W1) == gp.weight
        total = total + gp.part
    assert total == p
    weights = [gp.weight for gp in pieces]
    assert len(weights) == len(set(weights))


def test_reynolds_is_the_weight_zero_piece_and_idempotent():
    p = parse_poly("x*y + x^2*y + z + x", R3)
    inv = reynolds(p, W1, T1)
    assert inv == parse_poly("x*y + z", R3)
    assert reynolds(inv, W1, T1) == inv
    assert poly_weight(inv, W1) == (0,)


def test_subtorus_rejects_non_saturated_lattice():
    with pytest.raises(PreconditionError):
        Subtorus([[2, 0]], 2)
    # a saturated sublattice of the same rank is accepted
    t = Subtorus([[1, 1]], 2)
    assert t.dim == 1


def test_subtorus_restrict_is_the_pairing():
    t = Subtorus([[1, 2]], 2)
    assert t.restrict((3, -1)) == (1,)
    full = Subtorus.full(2)
    assert full.restrict((3, -1)) == (3, -1)


def test_stabilizer_subtorus_kills_exactly_the_support_weights():
    W = WeightMatrix([(1, -1, 0), (0, 1, 0)])
    stab = stabilizer_subtorus((2,), W)
    assert stab.dim == 2
    stab_x = stabilizer_subtorus((0, 2), W)
    for row in stab_x.cochar:
        assert row[0] * 1 + row[1] * 0 == 0
    assert stab_x.dim == 1


def closedness_limit_oracle(support, W):
    """Exhaustive one-parameter limit analysis for k <= 2.

    The orbit fails to be closed exactly when some cochar s satisfies
    s.w >= 0 on the support with at least one strict value: then t^s
    sends those coordinates to 0 and the limit leaves the orbit.  For
    k <= 2 it is enough to scan rays orthogonal to a support weight
    together with the four axes: any destabilizing cone, if nonempty,
    contains one of them.
    """
    cols = sorted({tuple(W.column(i)) for i in support})
    if not cols:
        return True
    k = W.k
    if k == 1:
        cands = [(1,), (-1,)]
    else:
        cands = [(1, 0), (0, 1), (-1, 0), (0, -1)]
        for w in cols:
            cands.append((-w[1], w[0]))
            cands.append((w[1], -w[0]))
    for s in cands:
        dots = [sum(si * wi for si, wi in zip(s, w)) for w in cols]
        if all(d >= 0 for d in dots) and any(d > 0 for d in dots):
            return False
    return True


def test_closed_orbit_rule_on_worked_supports():
    assert not orbit_is_closed((0,), W1)
    assert orbit_is_closed((0, 1), W1)
    assert orbit_is_closed((2,), W1)
    assert orbit_is_closed((), W1)


def test_closed_orbit_rule_matches_limit_oracle_k1():
    for n in range(1, 5):
        for flat in itertools.product((-2, -1, 0, 1, 2), repeat=n):
            W = WeightMatrix([flat])
            for size in range(1, n + 1):
                for support in itertools.combinations(range(n), size):
                    assert orbit_is_closed(support, W) == closedness_limit_oracle(
                        support, W
                    )


def test_closed_orbit_rule_matches_limit_oracle_k2_sample():
    # distinct restricted weight sets decide the verdict, so sweep the
    # sign patterns on three coordinates exhaustively
    seen = set()
    for flat in itertools.product((-1, 0, 1), repeat=6):
        W = WeightMatrix([flat[:3], flat[3:]])
        for size in range(1, 4):
            for support in itertools.combinations(range(3), size):
                key = frozenset(tuple(W.column(i)) for i in support)
                if key in seen:
                    continue
                seen.add(key)
                assert orbit_is_closed(support, W) == closedness_limit_oracle(
                    support, W
                )


def test_support_is_realized_gives_the_slice():
    I = Ideal(R3, [parse_poly("y*z", R3), parse_poly("x*z", R3), parse_poly("x*y", R3)])
    sl = support_is_realized((2,), I)
    assert sl is not None
    assert sorted(str(g) for g in sl.generators) == ["x", "y"]
    # the support {x, y} forces x*y = 0, impossible with both nonzero
    assert support_is_realized((0, 1), I) is None


def test_enumerate_blowup_centers_on_three_axes():
    I = Ideal(R3, [parse_poly("y*z", R3), parse_poly("x*z", R3), parse_poly("x*y", R3)])
    centers = enumerate_blowup_centers(W1, I)
    assert centers
    assert centers[0].is_full()


def test_closed_orbit_stabilizers_lists_the_full_torus():
    subs = closed_orbit_stabilizers(W1)
    assert any(s.is_full() for s in subs)
    assert all(s.dim >= 1 for s in subs)
