"""Families over an affine base line: specialization of local models at a
parameter value and the chart-by-chart check that the intrinsic blowup
commutes with taking fibers.

The base direction carries weight zero in every row, so the torus acts
fiberwise and isotypic decomposition never mixes the parameter in.
"""

from fractions import Fraction

from .blowup import LocalModel, blowup_section, intrinsic_ideal, make_charts
from .errors import PreconditionError
from .groebner import Budget, Ideal, ideal_equal
from .poly import DEGREVLEX, Poly, Ring
from .torus import Subtorus, WeightMatrix


def _base_index(model: LocalModel) -> int:
    if model.base_param is None:
        raise PreconditionError("model has no base parameter")
    ring = model.ring
    if model.base_param not in ring.index:
        raise PreconditionError(
            f"base parameter {model.base_param!r} is not a ring variable"
        )
    t = ring.index[model.base_param]
    for row in model.weights.rows:
        if row[t] != 0:
            raise PreconditionError(
                "base parameter must have weight zero in every row"
            )
    return t


def _drop_var(p: Poly, source: Ring, t: int, c: Fraction, target: Ring) -> Poly:
    images = []
    for i, nm in enumerate(source.names):
        if i == t:
            images.append(target.one() * c)
        else:
            images.append(target.var(nm))
    return p.subs(images, target)


def specialize(model: LocalModel, c) -> LocalModel:
    """Fiber of a family at a base value: substitute the parameter and drop
    its coordinate and weight column."""
    t = _base_index(model)
    c = Fraction(c)
    ring = model.ring
    target = ring.without((model.base_param,))
    rows = [row[:t] + row[t + 1 :] for row in model.weights.rows]
    weights = WeightMatrix(rows)
    if model.base_param in model.divisor:
        raise PreconditionError("base parameter cannot carry the divisor")

    def sub(p: Poly) -> Poly:
        return _drop_var(p, ring, t, c, target)

    section = tuple(sub(comp) for comp in model.section)
    cofactor = tuple(tuple(sub(e) for e in row) for row in model.cofactor)
    lift = None
    if model.sigma_lift is not None:
        lift = tuple(
            tuple(sub(e) for i, e in enumerate(row) if i != t)
            for row in model.sigma_lift
        )
    potential = sub(model.potential) if model.potential is not None else None
    return LocalModel(
        target,
        weights,
        model.bundle,
        section,
        divisor=dict(model.divisor),
        cofactor=cofactor,
        sigma_lift=lift,
        potential=potential,
        base_param=None,
    )


def check_fixed_locus_flat(model: LocalModel) -> bool:
    """The fixed locus of a valid family is the vanishing of the moving
    coordinates times the base line, hence flat over the base.

    The certificate is syntactic: coordinates are weight vectors, so the
    fixed locus is a coordinate subspace and the base direction is never
    among the cut coordinates.
    """
    t = _base_index(model)
    moving = [
        i
        for i in range(model.ring.n)
        if any(row[i] for row in model.weights.rows)
    ]
    return t not in moving


def _specialize_chart_poly(p: Poly, chart_ring: Ring, name: str, c) -> Poly:
    target = chart_ring.without((name,))
    t = chart_ring.index[name]
    return _drop_var(p, chart_ring, t, Fraction(c), target)


def fiber_blowup_commutes(
    model: LocalModel,
    c,
    center: Subtorus | None = None,
    budget: Budget | None = None,
) -> dict[str, bool]:
    """Chart-by-chart commutation of intrinsic blowup with specialization.

    Route one forms the intrinsic chart ideal of the family and then sets
    the parameter; route two specializes first and blows up the fiber.
    The verdict per chart also demands the blowup sections agree
    componentwise when the model carries a factorization witness.
    """
    t = _base_index(model)
    c = Fraction(c)
    if center is None:
        center = Subtorus.full(model.weights.k)
    fiber = specialize(model, c)
    family_charts = make_charts(model.ring, model.weights, center)
    fiber_charts = make_charts(fiber.ring, fiber.weights, center)
    by_pivot = {
        ch.parent_ring.names[ch.pivot]: ch for ch in fiber_charts
    }
    out: dict[str, bool] = {}
    for ch in family_charts:
        pivot_name = model.ring.names[ch.pivot]
        fch = by_pivot[pivot_name]
        raw_a, _ = intrinsic_ideal(model.ideal, ch, budget)
        gens_a = [
            _specialize_chart_poly(p, ch.ring, model.base_param, c)
            for p in raw_a.generators
        ]
        ideal_a = Ideal(fch.ring, gens_a)
        raw_b, _ = intrinsic_ideal(fiber.ideal, fch, budget)
        ok = ideal_equal(ideal_a, raw_b, DEGREVLEX, budget)
        if ok and model.sigma_lift is not None:
            sec_a = [
                _specialize_chart_poly(p, ch.ring, model.base_param, c)
                for p in blowup_section(model, ch)
            ]
            sec_b = list(blowup_section(fiber, fch))
            ok = sec_a == sec_b
        out[ch.name] = ok
    return out
