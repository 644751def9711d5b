"""Families over a base parameter: specialization, flatness of the fixed
locus, and commutation of the blowup with passing to a fiber."""

from fractions import Fraction

import pytest

from equiblow import (
    PreconditionError,
    Ring,
    WeightMatrix,
    check_fixed_locus_flat,
    dcritical_chart,
    fiber_blowup_commutes,
    parse_poly,
    specialize,
)

R4 = Ring(["x", "y", "z", "t"])
W4 = WeightMatrix([(1, -1, 0, 0)])


def family_model():
    return dcritical_chart(parse_poly("x*y*z - x*y*t", R4), W4, base_param="t")


def test_specialize_drops_the_base_coordinate():
    fib = specialize(family_model(), 0)
    assert fib.ring.names == ("x", "y", "z")
    assert fib.weights.rows == ((1, -1, 0),)
    assert fib.base_param is None
    assert [str(s) for s in fib.section] == ["y*z", "x*z", "x*y"]


def test_specialize_at_a_nonzero_value_shifts_the_section():
    fib = specialize(family_model(), 2)
    assert [str(s) for s in fib.section] == [
        "y*z - 2*y",
        "x*z - 2*x",
        "x*y",
    ]


def test_specialize_requires_a_base_parameter():
    R2 = Ring(["x", "y"])
    plain = dcritical_chart(parse_poly("x*y", R2), WeightMatrix([(1, -1)]))
    with pytest.raises(PreconditionError):
        specialize(plain, 0)


def test_fixed_locus_is_flat_for_an_invariant_base():
    assert check_fixed_locus_flat(family_model())


def test_fiber_blowup_commutes_at_three_values():
    model = family_model()
    for c in (0, 1, -2):
        results = fiber_blowup_commutes(model, c)
        assert set(results) == {"chart_x", "chart_y"}
        assert all(results.values()), (c, results)


def test_fiber_blowup_commutes_with_fractional_value():
    results = fiber_blowup_commutes(family_model(), Fraction(1, 2))
    assert all(results.values())
