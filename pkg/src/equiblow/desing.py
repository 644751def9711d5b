"""Iterated Kirwan blowups: blow up the largest-dimensional stabilizer,
attach unstable ideals, and recurse chart by chart until every residual
stabilizer of a semistable point is trivial.

The driver never re-discovers a center it just blew up; that descent is a
theorem and its failure raises loudly.
"""

from .blowup import LocalModel, blowup_local_model, intrinsic_ideal, make_charts
from .errors import BudgetExceededError, TheoremCheckError
from .groebner import Budget, GroebnerBasis, Ideal, buchberger
from .poly import DEGREVLEX, Ring
from .stability import unstable_ideal
from .torus import Subtorus, WeightMatrix, enumerate_blowup_centers


class ChartOutcome:
    """One chart of one blowup stage: the intrinsic ideal (with its
    reduced basis), the transported model when the center is the full
    torus, the attached unstable ideal, and deeper stages."""

    __slots__ = ("chart", "ideal", "gb", "model", "unstable", "substages")

    def __init__(self, chart, ideal, gb, model, unstable, substages):
        self.chart = chart
        self.ideal = ideal
        self.gb = gb
        self.model = model
        self.unstable = unstable
        self.substages = tuple(substages)

    def __repr__(self):
        return f"ChartOutcome({self.chart.name})"


class Stage:
    """One blowup step: the center and the outcome on each chart."""

    __slots__ = ("center", "charts")

    def __init__(self, center, charts):
        self.center = center
        self.charts = tuple(charts)

    def __repr__(self):
        return (
            f"Stage(center_dim={self.center.dim}, "
            f"charts={[c.chart.name for c in self.charts]})"
        )


class Desingularization:
    """Stage tree of the iterated blowup, with the degenerate-density flag
    for a trivial action (the blowup of everything is empty)."""

    __slots__ = ("stages", "dense")

    def __init__(self, stages, dense):
        self.stages = tuple(stages)
        self.dense = bool(dense)

    def __repr__(self):
        return f"Desingularization(stages={len(self.stages)}, dense={self.dense})"


def _action_is_trivial(weights: WeightMatrix, n: int) -> bool:
    if weights.k == 0:
        return False
    return all(
        all(row[i] == 0 for row in weights.rows) for i in range(n)
    )


def partial_desingularization(
    model: LocalModel,
    budget: Budget | None = None,
    max_depth: int = 4,
    max_vars: int = 16,
) -> Desingularization:
    """Run the blowup loop on a local model until no semistable point has
    a nontrivial stabilizer, returning the full stage tree."""
    if _action_is_trivial(model.weights, model.ring.n):
        return Desingularization((), dense=True)
    stages = _descend(
        model.ring,
        model.weights,
        model.ideal,
        model,
        None,
        budget,
        max_depth,
        max_vars,
    )
    return Desingularization(stages, dense=False)


def _descend(
    ring: Ring,
    weights: WeightMatrix,
    ideal: Ideal,
    model: LocalModel | None,
    unstable,
    budget,
    depth_left: int,
    max_vars: int,
):
    centers = enumerate_blowup_centers(weights, ideal, unstable, max_vars)
    if not centers:
        return ()
    if depth_left <= 0:
        raise BudgetExceededError("blowup recursion depth exhausted")
    center = centers[0]
    charts = make_charts(ring, weights, center)
    outcomes = []
    for chart in charts:
        if model is not None and center.is_full():
            chart_model = blowup_local_model(model, center, chart, budget)
            raw = chart_model.ideal
            gb = buchberger(raw, DEGREVLEX, budget)
        else:
            chart_model = None
            raw, gb = intrinsic_ideal(ideal, chart, budget)
        chart_unstable = unstable_ideal(chart, budget) if center.dim == 1 else None
        next_centers = enumerate_blowup_centers(
            chart.weights, raw, chart_unstable, max_vars
        )
        for R in next_centers:
            if R.cochar == center.cochar:
                raise TheoremCheckError(
                    f"center re-discovered on chart {chart.name}: the "
                    "stabilizer set did not descend"
                )
        substages = _descend(
            chart.ring,
            chart.weights,
            raw,
            chart_model,
            chart_unstable,
            budget,
            depth_left - 1,
            max_vars,
        )
        outcomes.append(
            ChartOutcome(chart, raw, gb, chart_model, chart_unstable, substages)
        )
    return (Stage(center, outcomes),)
