"""Blowup charts, intrinsic ideals, model transport, and the chart
coincidence and embedding-independence verifications."""

import pytest

from equiblow import (
    EquivariantBundle,
    Ideal,
    LocalModel,
    PreconditionError,
    Ring,
    Subtorus,
    WeightMatrix,
    action_pairing,
    blowup_local_model,
    blowup_section,
    check_weak_local_model,
    dcritical_chart,
    embedding_independence_check,
    ideal_equal,
    intrinsic_ideal,
    make_charts,
    parse_poly,
    verify_coinc,
)

R2 = Ring(["x", "y"])
R3 = Ring(["x", "y", "z"])
W2 = WeightMatrix([(1, -1)])
W3 = WeightMatrix([(1, -1, 0)])
FULL1 = Subtorus.full(1)


def test_chart_coordinates_and_weights():
    charts = make_charts(R3, W3, FULL1)
    assert [c.name for c in charts] == ["chart_x", "chart_y"]
    cx = charts[0]
    assert cx.ring.names == ("xi_x", "T_y", "z")
    assert cx.weights.rows == ((1, -2, 0),)
    cy = charts[1]
    assert cy.ring.names == ("T_x", "xi_y", "z")
    assert cy.weights.rows == ((2, -1, 0),)


def test_substitution_restores_parent_coordinates():
    charts = make_charts(R3, W3, FULL1)
    cx = charts[0]
    # x -> xi, y -> xi*T, z -> z
    images = [str(p) for p in cx.subst_images]
    assert images == ["xi_x", "xi_x*T_y", "z"]


def test_make_charts_requires_a_moving_coordinate():
    with pytest.raises(PreconditionError):
        make_charts(R2, WeightMatrix([(0, 0)]), FULL1)


def test_intrinsic_ideal_three_axes():
    I = Ideal(
        R3,
        [parse_poly("y*z", R3), parse_poly("x*z", R3), parse_poly("x*y", R3)],
    )
    charts = make_charts(R3, W3, FULL1)
    raw, gb = intrinsic_ideal(I, charts[0])
    assert sorted(str(p) for p in gb.basis) == ["xi_x^2*T_y", "z"]
    raw, gb = intrinsic_ideal(I, charts[1])
    assert sorted(str(p) for p in gb.basis) == ["T_x*xi_y^2", "z"]


def test_intrinsic_ideal_smooth_pair_empties_the_chart():
    I = Ideal(R2, [parse_poly("y", R2), parse_poly("x", R2)])
    for chart in make_charts(R2, W2, FULL1):
        raw, gb = intrinsic_ideal(I, chart)
        assert [str(p) for p in gb.basis] == ["1"]


def test_intrinsic_ideal_rejects_unstable_input():
    I = Ideal(R2, [parse_poly("x + 1", R2)])
    chart = make_charts(R2, W2, FULL1)[0]
    with pytest.raises(PreconditionError):
        intrinsic_ideal(I, chart)


def test_action_pairing_rows_scale_coordinates_by_weights():
    rows = action_pairing(R2, W2)
    assert [[str(e) for e in row] for row in rows] == [["x", "-y"]]


def test_dcritical_chart_shapes():
    model = dcritical_chart(parse_poly("1/2*x^2*y^2", R2), W2)
    assert model.bundle.labels == ("dx", "dy")
    assert model.bundle.weights == ((1,), (-1,))
    assert [str(s) for s in model.section] == ["x*y^2", "x^2*y"]
    assert model.potential is not None
    assert model.divisor == {}
    assert check_weak_local_model(model).passed


def test_dcritical_chart_rejects_non_invariant_potential():
    with pytest.raises(PreconditionError):
        dcritical_chart(parse_poly("x^2 + y", R2), W2)


def test_weak_model_check_flags_wrong_frame_weights():
    model = dcritical_chart(parse_poly("1/2*x^2*y^2", R2), W2)
    broken = LocalModel(
        R2,
        W2,
        EquivariantBundle(model.bundle.labels, ((0,), (0,)), model.bundle.twist),
        model.section,
        cofactor=model.cofactor,
        sigma_lift=model.sigma_lift,
        potential=model.potential,
    )
    rep = check_weak_local_model(broken)
    assert not rep.passed
    assert rep.witnesses


def test_transport_to_chart_carries_divisor_twist_and_frames():
    model = dcritical_chart(parse_poly("1/2*x^2*y^2", R2), W2)
    chart = make_charts(R2, W2, FULL1)[0]
    hat = blowup_local_model(model, FULL1, chart)
    assert hat.bundle.labels == ("xi*dx", "xi*dy")
    assert hat.bundle.weights == ((2,), (0,))
    assert hat.bundle.twist == 2
    assert hat.divisor == {"xi_x": 2}
    assert str(hat.divisor_equation()) == "xi_x^2"
    assert [str(s) for s in hat.section] == ["xi_x^2*T_y^2", "xi_x^2*T_y"]
    assert hat.weights.rows == ((1, -2),)
    assert check_weak_local_model(hat).passed


def test_blowup_section_divides_moving_components_once():
    model = dcritical_chart(parse_poly("x*y*z", R3), W3)
    charts = make_charts(R3, W3, FULL1)
    sec = blowup_section(model, charts[0])
    # section (yz, xz, xy): dx and dy frames moving, dz fixed
    assert [str(s) for s in sec] == ["T_y*z", "z", "xi_x^2*T_y"]


def test_verify_coinc_on_the_square_model():
    model = dcritical_chart(parse_poly("1/2*x^2*y^2", R2), W2)
    verdicts = verify_coinc(model, FULL1)
    assert verdicts == {"chart_x": True, "chart_y": True}


def test_embedding_independence_with_one_auxiliary_coordinate():
    wide = Ring(["x", "y", "u"])
    wideW = WeightMatrix([(1, -1, 0)])
    small = dcritical_chart(parse_poly("x*y", R2), W2)
    bundle = EquivariantBundle(["e0", "e1", "e2"], [(1,), (-1,), (0,)])
    big = LocalModel(
        wide,
        wideW,
        bundle,
        (parse_poly("y", wide), parse_poly("x", wide), parse_poly("u", wide)),
    )
    assert embedding_independence_check(small, big, ("u",))


def test_embedding_independence_detects_a_real_difference():
    wide = Ring(["x", "y", "u"])
    wideW = WeightMatrix([(1, -1, 0)])
    small = dcritical_chart(parse_poly("x*y", R2), W2)
    bundle = EquivariantBundle(["e0", "e1"], [(1,), (-1,)])
    # the big ideal does not even contain u, so elimination keeps more
    big = LocalModel(
        wide,
        wideW,
        bundle,
        (parse_poly("y*u", wide), parse_poly("x*u", wide)),
    )
    assert not embedding_independence_check(small, big, ("u",))


def test_intrinsic_ideal_equals_blowup_section_ideal_per_chart():
    # the coincidence statement unrolled by hand on one chart
    model = dcritical_chart(parse_poly("x*y*z", R3), W3)
    chart = make_charts(R3, W3, FULL1)[0]
    raw, gb = intrinsic_ideal(model.ideal, chart)
    sec = blowup_section(model, chart)
    assert ideal_equal(Ideal(chart.ring, list(sec)), raw)
