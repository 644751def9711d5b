"""Blowup charts along torus-fixed centers and transport of local models.

The blowup of affine space along the fixed locus of a subtorus is covered
by one affine chart per moving coordinate.  Everything here is chart-wise:
substitution maps, induced weights, intrinsic ideals (pullbacks of fixed
pieces together with moving pieces divided by the exceptional coordinate),
equivariant bundles with their twisted sections, and the cofactor data
that make a weak local model.
"""

from .errors import PreconditionError, TheoremCheckError
from .groebner import (
    Budget,
    Ideal,
    buchberger,
    eliminate,
    ideal_equal,
    lift_certificate,
    normal_form,
    saturate,
)
from .poly import DEGREVLEX, Poly, Ring, divide_exact
from .torus import (
    Subtorus,
    WeightMatrix,
    closed_orbit_stabilizers,
    fixed_locus,
    isotypic_decompose,
    monomial_weight,
    poly_weight,
)


def action_pairing(ring: Ring, weights: WeightMatrix) -> tuple[tuple[Poly, ...], ...]:
    """Matrix of the pairing between torus directions and coordinate forms.

    Row a, column i holds w_{a,i}·x_i: the coefficient of dx_i on the
    vector field generated by the a-th torus factor.  A d-critical chart
    uses exactly this matrix as its cofactor.
    """
    rows = []
    for a in range(weights.k):
        rows.append(
            tuple(
                ring.const(weights.rows[a][i]) * ring.var(ring.names[i])
                for i in range(ring.n)
            )
        )
    return tuple(rows)


class EquivariantBundle:
    """Trivialized equivariant bundle: a labeled frame with one integer
    weight vector per frame element, plus the accumulated exceptional
    twist on the current chart (divisor bookkeeping)."""

    __slots__ = ("labels", "weights", "twist")

    def __init__(self, labels, weights, twist: int = 0):
        labels = tuple(str(s) for s in labels)
        weights = tuple(tuple(int(x) for x in w) for w in weights)
        if len(labels) != len(weights):
            raise ValueError("frame labels and weights must pair up")
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate frame labels")
        twist = int(twist)
        if twist < 0:
            raise ValueError("exceptional twist cannot be negative")
        self.labels = labels
        self.weights = weights
        self.twist = twist

    @property
    def rank(self) -> int:
        return len(self.labels)

    def __repr__(self):
        return f"EquivariantBundle({list(self.labels)}, twist={self.twist})"


class LocalModel:
    """Weak local-model data on an affine chart.

    An ambient polynomial ring with torus weights, an equivariant bundle
    carrying an invariant section whose zero scheme is the locus of
    interest, a record of the exceptional divisor accumulated so far, and
    the cofactor matrix through which the twisted action pairing factors.
    ``sigma_lift`` is the factorization witness: a bundle-valued matrix
    alpha with cofactor·alpha = h_D·(action pairing).
    """

    __slots__ = (
        "ring",
        "weights",
        "bundle",
        "section",
        "divisor",
        "cofactor",
        "sigma_lift",
        "potential",
        "base_param",
    )

    def __init__(
        self,
        ring: Ring,
        weights: WeightMatrix,
        bundle: EquivariantBundle,
        section,
        divisor=None,
        cofactor=None,
        sigma_lift=None,
        potential: Poly | None = None,
        base_param: str | None = None,
    ):
        if weights.k and weights.n != ring.n:
            raise ValueError("weight matrix width must match the ring")
        k = weights.k
        for v in bundle.weights:
            if len(v) != k:
                raise ValueError("frame weight length must match the torus rank")
        section = tuple(section)
        if len(section) != bundle.rank:
            raise ValueError("one section component per frame element")
        for c in section:
            if not isinstance(c, Poly) or c.ring != ring:
                raise ValueError("section components must live in the ambient ring")
        divisor = dict(divisor or {})
        for name, mult in divisor.items():
            if name not in ring.index:
                raise ValueError(f"divisor coordinate {name!r} is not a ring variable")
            if int(mult) <= 0:
                raise ValueError("divisor multiplicities must be positive")
        if cofactor is None:
            cofactor = tuple(tuple(ring.zero() for _ in range(bundle.rank)) for _ in range(k))
        cofactor = tuple(tuple(row) for row in cofactor)
        if len(cofactor) != k or any(len(row) != bundle.rank for row in cofactor):
            raise ValueError("cofactor must be a (torus rank) x (bundle rank) matrix")
        for row in cofactor:
            for e in row:
                if not isinstance(e, Poly) or e.ring != ring:
                    raise ValueError("cofactor entries must live in the ambient ring")
        if sigma_lift is not None:
            sigma_lift = tuple(tuple(row) for row in sigma_lift)
            if len(sigma_lift) != bundle.rank or any(
                len(row) != ring.n for row in sigma_lift
            ):
                raise ValueError("sigma_lift must be a (bundle rank) x n matrix")
        if base_param is not None and base_param not in ring.index:
            raise ValueError(f"base parameter {base_param!r} is not a ring variable")
        self.ring = ring
        self.weights = weights
        self.bundle = bundle
        self.section = section
        self.divisor = {name: int(m) for name, m in sorted(divisor.items())}
        self.cofactor = cofactor
        self.sigma_lift = sigma_lift
        self.potential = potential
        self.base_param = base_param

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.section)

    def divisor_equation(self) -> Poly:
        h = self.ring.one()
        for name, mult in self.divisor.items():
            h = h * self.ring.var(name) ** mult
        return h

    def __repr__(self):
        return (
            f"LocalModel(ring={self.ring!r}, rank={self.bundle.rank}, "
            f"divisor={self.divisor})"
        )


class BlowupChart:
    """One affine chart of the blowup along the fixed locus of a subtorus.

    The chart for pivot coordinate x_k keeps every variable position of
    the parent ring: x_k becomes the exceptional coordinate xi_k, every
    other moving x_i becomes the ratio coordinate T_i (so x_i = xi_k·T_i),
    fixed coordinates are untouched.  Induced weights: w(xi_k) = w_k,
    w(T_i) = w_i - w_k, fixed unchanged.
    """

    __slots__ = (
        "parent_ring",
        "parent_weights",
        "center",
        "pivot",
        "name",
        "ring",
        "weights",
        "subst_images",
        "exceptional",
        "moving",
    )

    def __init__(
        self,
        parent_ring: Ring,
        parent_weights: WeightMatrix,
        center: Subtorus,
        pivot: int,
    ):
        if parent_weights.k and parent_weights.n != parent_ring.n:
            raise ValueError("weight matrix width must match the ring")
        moving = fixed_locus(parent_weights, center)
        if pivot not in moving:
            raise PreconditionError(
                f"pivot coordinate {parent_ring.names[pivot]!r} is not moving "
                "under the center subtorus"
            )
        names = []
        for i, nm in enumerate(parent_ring.names):
            if i == pivot:
                names.append("xi_" + nm)
            elif i in moving:
                names.append("T_" + nm)
            else:
                names.append(nm)
        ring = Ring(names)
        pivot_w = parent_weights.column(pivot)
        cols = []
        for i in range(parent_ring.n):
            w = parent_weights.column(i)
            if i == pivot:
                cols.append(pivot_w)
            elif i in moving:
                cols.append(tuple(a - b for a, b in zip(w, pivot_w)))
            else:
                cols.append(w)
        xi = ring.var("xi_" + parent_ring.names[pivot])
        images = []
        for i, nm in enumerate(parent_ring.names):
            if i == pivot:
                images.append(xi)
            elif i in moving:
                images.append(xi * ring.var("T_" + nm))
            else:
                images.append(ring.var(nm))
        self.parent_ring = parent_ring
        self.parent_weights = parent_weights
        self.center = center
        self.pivot = pivot
        self.name = "chart_" + parent_ring.names[pivot]
        self.ring = ring
        self.weights = parent_weights.with_columns(cols)
        self.subst_images = tuple(images)
        self.exceptional = "xi_" + parent_ring.names[pivot]
        self.moving = moving

    @property
    def xi(self) -> Poly:
        return self.ring.var(self.exceptional)

    def pullback(self, p: Poly) -> Poly:
        if p.ring != self.parent_ring:
            raise ValueError("polynomial does not live in the parent ring")
        return p.subs(self.subst_images, self.ring)

    def __repr__(self):
        return f"BlowupChart({self.name}, vars={list(self.ring.names)})"


def make_charts(
    ring: Ring, weights: WeightMatrix, center: Subtorus
) -> list[BlowupChart]:
    """The chart atlas of the blowup along the center's fixed locus.

    One chart per moving coordinate, in coordinate order.
    """
    moving = fixed_locus(weights, center)
    if not moving:
        raise PreconditionError("center equals ambient; blowup empty")
    return [BlowupChart(ring, weights, center, i) for i in moving]


def exceptional_divide(p: Poly, chart: BlowupChart) -> Poly:
    """Pull a moving weight-homogeneous element back and divide by xi.

    The input must be homogeneous of nonzero weight for the center
    subtorus; its pullback then vanishes on the exceptional locus and the
    division is exact.  A division failure means the invariance
    assumptions were violated upstream, so it is raised as a theorem
    check, never returned.
    """
    restricted = set()
    for m in p.terms:
        restricted.add(chart.center.restrict(monomial_weight(m, chart.parent_weights)))
    if len(restricted) != 1:
        raise PreconditionError(
            f"not weight-homogeneous for the center subtorus: {p}"
        )
    (w,) = restricted
    if not any(w):
        raise PreconditionError(
            f"fixed element passed where a moving piece is required: {p}"
        )
    q = chart.pullback(p)
    quotient = divide_exact(q, chart.xi)
    if quotient is None:
        raise TheoremCheckError(
            "pullback of a moving piece is not divisible by the exceptional "
            f"coordinate {chart.exceptional}: {p}"
        )
    return quotient


def intrinsic_ideal(ideal: Ideal, chart: BlowupChart, budget: Budget | None = None):
    """Chart ideal of the intrinsic blowup: fixed pieces pulled back, moving
    pieces pulled back and divided by the exceptional coordinate.

    Requires the ideal invariant under the center subtorus, verified by
    reducing every isotypic piece of every generator to normal form.
    Returns the raw generators together with their reduced Groebner basis.
    """
    if ideal.ring != chart.parent_ring:
        raise PreconditionError("ideal does not live in the chart's parent ring")
    W, R = chart.parent_weights, chart.center
    parent_gb = None
    gens: list[Poly] = []
    seen = set()
    for g in ideal.generators:
        pieces = isotypic_decompose(g, W, R)
        if len(pieces) > 1:
            if parent_gb is None:
                parent_gb = buchberger(ideal, DEGREVLEX, budget)
            for gp in pieces:
                if not normal_form(gp.part, parent_gb).is_zero():
                    raise PreconditionError(
                        "ideal is not invariant under the center subtorus: "
                        f"piece {gp.part} of generator {g} falls outside the ideal"
                    )
        for gp in pieces:
            if any(gp.weight):
                image = exceptional_divide(gp.part, chart)
            else:
                image = chart.pullback(gp.part)
            if image.is_zero() or image in seen:
                continue
            seen.add(image)
            gens.append(image)
    out = Ideal(chart.ring, gens)
    return out, buchberger(out, DEGREVLEX, budget)


def blowup_bundle(bundle: EquivariantBundle, chart: BlowupChart) -> EquivariantBundle:
    """Bundle on the chart: fixed frame elements pulled back unchanged,
    moving ones replaced by xi·(pullback), weights shifted accordingly."""
    R = chart.center
    pivot_w = chart.parent_weights.column(chart.pivot)
    labels, weights = [], []
    for lab, v in zip(bundle.labels, bundle.weights):
        if any(R.restrict(v)):
            labels.append("xi*" + lab)
            weights.append(tuple(a + b for a, b in zip(v, pivot_w)))
        else:
            labels.append(lab)
            weights.append(v)
    return EquivariantBundle(labels, weights, bundle.twist)


def _frame_moving(bundle: EquivariantBundle, center: Subtorus) -> list[bool]:
    return [bool(any(center.restrict(v))) for v in bundle.weights]


def blowup_section(model: LocalModel, chart: BlowupChart) -> tuple[Poly, ...]:
    """Section of the blowup bundle: components on fixed frame elements
    pull back, components on moving ones pull back and divide by xi.

    Divisibility is guaranteed for an invariant section (a moving frame
    pairs with a moving component); failure is a theorem check.
    """
    xi = chart.xi
    comps = []
    for mov, comp in zip(_frame_moving(model.bundle, chart.center), model.section):
        q = chart.pullback(comp)
        if mov:
            divided = divide_exact(q, xi)
            if divided is None:
                raise TheoremCheckError(
                    "moving section component is not divisible by the "
                    f"exceptional coordinate {chart.exceptional}: {comp}"
                )
            comps.append(divided)
        else:
            comps.append(q)
    return tuple(comps)


def pullback_divisor(divisor: dict, chart: BlowupChart) -> dict:
    """Divisor record on the chart.  The divisor equation is a monomial in
    the parent coordinates, so its pullback factors coordinate-wise."""
    out: dict = {}

    def bump(name: str, m: int):
        out[name] = out.get(name, 0) + m

    for name, m in divisor.items():
        i = chart.parent_ring.index[name]
        if i == chart.pivot:
            bump(chart.exceptional, m)
        elif i in chart.moving:
            bump(chart.exceptional, m)
            bump("T_" + name, m)
        else:
            bump(name, m)
    return out


def _poly_mat_mul(A, B, ring: Ring):
    rows = len(A)
    inner = len(B)
    cols = len(B[0]) if inner else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = ring.zero()
            for t in range(inner):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _cleared_form_transform(chart: BlowupChart):
    """Parent-by-chart matrix carrying xi^2·(inverse transpose Jacobian) of
    the chart substitution.  All entries are polynomial: the substitution
    degenerates only along the exceptional locus, and clearing by xi^2
    absorbs the denominator together with one extra xi used by the
    sigma-lift transport."""
    ring = chart.ring
    n = chart.parent_ring.n
    xi = chart.xi
    rows = [[ring.zero() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        if i == chart.pivot:
            rows[i][i] = xi * xi
            for j in chart.moving:
                if j != chart.pivot:
                    rows[i][j] = -(xi * ring.var("T_" + chart.parent_ring.names[j]))
        elif i in chart.moving:
            rows[i][i] = xi
        else:
            rows[i][i] = xi * xi
    return tuple(tuple(r) for r in rows)


def _synthesize_sigma_lift(model: LocalModel, budget: Budget | None = None):
    """Factorization witness alpha with cofactor·alpha = h_D·pairing.

    The identity works for an untwisted model whose cofactor is the action
    pairing itself (a d-critical chart).  For a rank-one torus the columns
    are single ideal-membership lifts.  Returns None when no witness can
    be derived.
    """
    ring = model.ring
    k = model.weights.k
    r = model.bundle.rank
    n = ring.n
    sigma = action_pairing(ring, model.weights)
    if not model.divisor and r == n and model.cofactor == sigma:
        return tuple(
            tuple(ring.one() if i == b else ring.zero() for i in range(n))
            for b in range(r)
        )
    if k != 1:
        return None
    h = model.divisor_equation()
    row = model.cofactor[0]
    nonzero = [b for b in range(r) if not row[b].is_zero()]
    gens = Ideal(ring, [row[b] for b in nonzero])
    alpha = [[ring.zero() for _ in range(n)] for _ in range(r)]
    for i in range(n):
        target = h * sigma[0][i]
        if target.is_zero():
            continue
        if not nonzero:
            return None
        cert = lift_certificate(target, gens, budget)
        if cert is None:
            return None
        for pos, b in enumerate(nonzero):
            alpha[b][i] = cert[pos]
    return tuple(tuple(row) for row in alpha)


class WeakModelReport:
    """Outcome of the structural checks of a weak local model: the twisted
    action pairing factors through the cofactor, the cofactor kills the
    section, and restriction to any closed-orbit fixed locus projects to
    zero along the stabilizer directions."""

    __slots__ = ("factorization", "composite_zero", "fixed_projection", "witnesses")

    def __init__(self, factorization, composite_zero, fixed_projection, witnesses):
        self.factorization = bool(factorization)
        self.composite_zero = bool(composite_zero)
        self.fixed_projection = bool(fixed_projection)
        self.witnesses = tuple(witnesses)

    @property
    def passed(self) -> bool:
        return self.factorization and self.composite_zero and self.fixed_projection

    def __repr__(self):
        flags = (
            f"factorization={self.factorization}, "
            f"composite_zero={self.composite_zero}, "
            f"fixed_projection={self.fixed_projection}"
        )
        return f"WeakModelReport({flags})"


def check_weak_local_model(
    model: LocalModel, budget: Budget | None = None, max_vars: int = 16
) -> WeakModelReport:
    """Verify the weak local-model conditions symbolically.

    Returns a report, never raises on a failing condition; every failure
    carries a polynomial witness.
    """
    ring = model.ring
    W = model.weights
    k = W.k
    r = model.bundle.rank
    witnesses: list[str] = []

    # condition: the cofactor composed with the section vanishes, and the
    # section is invariant (component weight opposite to its frame weight)
    composite_zero = True
    for b in range(r):
        comp = model.section[b]
        if comp.is_zero():
            continue
        w = poly_weight(comp, W)
        expected = tuple(-x for x in model.bundle.weights[b])
        if w != expected:
            composite_zero = False
            witnesses.append(
                f"composite_zero: component on {model.bundle.labels[b]} has "
                f"weight {w}, expected {expected}: {comp}"
            )
    for a in range(k):
        acc = ring.zero()
        for b in range(r):
            acc = acc + model.cofactor[a][b] * model.section[b]
        if not acc.is_zero():
            composite_zero = False
            witnesses.append(
                f"composite_zero: cofactor row {a} pairs with the section to {acc}"
            )

    # condition: h_D divides the cofactor and the twisted pairing factors
    factorization = True
    h = model.divisor_equation()
    if not h.is_constant():
        for a in range(k):
            for b in range(r):
                e = model.cofactor[a][b]
                if not e.is_zero() and divide_exact(e, h) is None:
                    factorization = False
                    witnesses.append(
                        f"factorization: cofactor entry ({a},{b}) not divisible "
                        f"by the divisor equation {h}: {e}"
                    )
    alpha = model.sigma_lift
    if alpha is None:
        alpha = _synthesize_sigma_lift(model, budget)
    if alpha is None:
        factorization = False
        witnesses.append(
            "factorization: no witness available and none could be derived"
        )
    else:
        sigma = action_pairing(ring, W)
        prod = _poly_mat_mul(model.cofactor, alpha, ring) if r else tuple(
            tuple(ring.zero() for _ in range(ring.n)) for _ in range(k)
        )
        for a in range(k):
            for i in range(ring.n):
                lhs = prod[a][i] if r else ring.zero()
                rhs = h * sigma[a][i]
                if lhs != rhs:
                    factorization = False
                    witnesses.append(
                        f"factorization: row {a}, coordinate "
                        f"{ring.names[i]}: {lhs} != {rhs}"
                    )

    # condition: on each closed-orbit fixed locus, stabilizer directions
    # pair to zero
    fixed_projection = True
    for R in closed_orbit_stabilizers(W, max_vars):
        moving = fixed_locus(W, R)
        images = [
            ring.zero() if i in moving else ring.var(ring.names[i])
            for i in range(ring.n)
        ]
        for b in range(r):
            restricted = [model.cofactor[a][b].subs(images, ring) for a in range(k)]
            for c in R.cochar:
                acc = ring.zero()
                for a in range(k):
                    acc = acc + ring.const(c[a]) * restricted[a]
                if not acc.is_zero():
                    fixed_projection = False
                    witnesses.append(
                        f"fixed_projection: stabilizer {c} on frame "
                        f"{model.bundle.labels[b]} leaves {acc}"
                    )
    return WeakModelReport(factorization, composite_zero, fixed_projection, witnesses)


def blowup_local_model(
    model: LocalModel,
    center: Subtorus,
    chart: BlowupChart,
    budget: Budget | None = None,
) -> LocalModel:
    """Transport a weak local model to one blowup chart.

    The bundle gains a xi twist on moving frames, the section divides
    accordingly, the divisor picks up the exceptional locus twice, and the
    cofactor and its factorization witness are rebuilt so the transported
    model passes the structural checks again.  A torus of rank zero means
    no blowup: the model comes back unchanged.
    """
    if model.weights.k == 0 or center.dim == 0:
        return model
    if not center.is_full():
        raise PreconditionError(
            "local-model transport is implemented for the full torus as center; "
            "smaller centers are handled at the ideal level"
        )
    if chart.parent_ring != model.ring or chart.center != center:
        raise PreconditionError("chart does not belong to this model and center")
    alpha = model.sigma_lift
    if alpha is None:
        alpha = _synthesize_sigma_lift(model, budget)
    if alpha is None:
        raise PreconditionError(
            "no factorization witness for the action pairing; supply sigma_lift"
        )
    ring = chart.ring
    xi = chart.xi
    moving_frames = _frame_moving(model.bundle, center)

    bundle0 = blowup_bundle(model.bundle, chart)
    bundle = EquivariantBundle(bundle0.labels, bundle0.weights, bundle0.twist + 2)
    section = blowup_section(model, chart)
    divisor = pullback_divisor(model.divisor, chart)
    divisor[chart.exceptional] = divisor.get(chart.exceptional, 0) + 2

    cofactor = tuple(
        tuple(
            chart.pullback(e) * xi if moving_frames[b] else chart.pullback(e)
            for b, e in enumerate(row)
        )
        for row in model.cofactor
    )

    pulled_alpha = tuple(tuple(chart.pullback(e) for e in row) for row in alpha)
    cleared = _cleared_form_transform(chart)
    raw = _poly_mat_mul(pulled_alpha, cleared, ring)
    lift_rows = []
    for b in range(model.bundle.rank):
        if moving_frames[b]:
            row = []
            for e in raw[b]:
                q = divide_exact(e, xi) if not e.is_zero() else ring.zero()
                if q is None:
                    raise TheoremCheckError(
                        "transported factorization witness is not divisible by "
                        f"the exceptional coordinate: {e}"
                    )
                row.append(q)
            lift_rows.append(tuple(row))
        else:
            lift_rows.append(raw[b])
    out = LocalModel(
        ring,
        chart.weights,
        bundle,
        section,
        divisor,
        cofactor,
        sigma_lift=tuple(lift_rows),
        potential=None,
        base_param=model.base_param,
    )
    report = check_weak_local_model(out, budget)
    if not report.passed:
        raise TheoremCheckError(
            "transported local model failed its structural checks: "
            + "; ".join(report.witnesses)
        )
    return out


def verify_coinc(
    model: LocalModel, center: Subtorus, budget: Budget | None = None
) -> dict[str, bool]:
    """Per chart: does the blowup section cut exactly the intrinsic ideal?

    Both sides are compared through reduced Groebner bases.
    """
    charts = make_charts(model.ring, model.weights, center)
    out: dict[str, bool] = {}
    for chart in charts:
        intr, _ = intrinsic_ideal(model.ideal, chart, budget)
        sec = Ideal(chart.ring, blowup_section(model, chart))
        out[chart.name] = ideal_equal(sec, intr, DEGREVLEX, budget)
    return out


def embedding_independence_check(
    small: LocalModel,
    big: LocalModel,
    aux,
    center: Subtorus | None = None,
    budget: Budget | None = None,
) -> bool:
    """Intrinsic ideals do not depend on the equivariant embedding.

    The big model must present the same locus inside the small ambient
    extended by auxiliary coordinates fixed by the center.  Chart by
    chart, eliminating the auxiliary variables from the big intrinsic
    ideal must recover the small one exactly.
    """
    aux = tuple(str(a) for a in aux)
    small_names = set(small.ring.names)
    if set(big.ring.names) != small_names | set(aux) or small_names & set(aux):
        raise PreconditionError(
            "big ambient must be the small ambient plus the auxiliary coordinates"
        )
    if small.weights.k != big.weights.k:
        raise PreconditionError("torus ranks differ between the two models")
    for name in small.ring.names:
        wa = small.weights.column(small.ring.index[name])
        wb = big.weights.column(big.ring.index[name])
        if wa != wb:
            raise PreconditionError(f"weight of shared coordinate {name!r} differs")
    k = small.weights.k
    if center is None:
        center = Subtorus.full(k)
    for a in aux:
        if any(center.restrict(big.weights.column(big.ring.index[a]))):
            raise PreconditionError(
                f"auxiliary coordinate {a!r} must be fixed by the center"
            )
    charts_small = make_charts(small.ring, small.weights, center)
    charts_big = make_charts(big.ring, big.weights, center)
    by_pivot = {c.parent_ring.names[c.pivot]: c for c in charts_big}
    if set(by_pivot) != {c.parent_ring.names[c.pivot] for c in charts_small}:
        raise PreconditionError("chart atlases of the two models do not match")
    for cs in charts_small:
        cb = by_pivot[cs.parent_ring.names[cs.pivot]]
        ideal_small, _ = intrinsic_ideal(small.ideal, cs, budget)
        ideal_big, _ = intrinsic_ideal(big.ideal, cb, budget)
        dropped = eliminate(ideal_big, aux, budget)
        carried = Ideal(
            cs.ring, [g.rename_ring(cs.ring) for g in dropped.generators]
        )
        if not ideal_equal(carried, ideal_small, DEGREVLEX, budget):
            return False
    return True


def transition_substitute(p: Poly, source: BlowupChart, target: BlowupChart) -> Poly:
    """Rewrite a chart polynomial into an overlapping chart of one blowup.

    The transition inverts the source ratio coordinate of the target
    pivot, so the result is cleared by the smallest power of that
    coordinate; comparisons must saturate it away.
    """
    if (
        source.parent_ring != target.parent_ring
        or source.center != target.center
    ):
        raise PreconditionError("charts belong to different blowups")
    if p.ring != source.ring:
        raise ValueError("polynomial does not live in the source chart ring")
    if source.pivot == target.pivot:
        return p
    names = source.parent_ring.names
    tr = target.ring
    t_link = tr.var("T_" + names[source.pivot])
    numerators: list[Poly] = []
    denom_pow: list[int] = []
    for i in range(source.parent_ring.n):
        if i == source.pivot:
            numerators.append(tr.var(target.exceptional) * t_link)
            denom_pow.append(0)
        elif i == target.pivot:
            numerators.append(tr.one())
            denom_pow.append(1)
        elif i in source.moving:
            numerators.append(tr.var("T_" + names[i]))
            denom_pow.append(1)
        else:
            numerators.append(tr.var(names[i]))
            denom_pow.append(0)
    depth = 0
    for m in p.terms:
        depth = max(depth, sum(e * denom_pow[i] for i, e in enumerate(m)))
    total = tr.zero()
    for m, c in p.terms.items():
        term = tr.const(c)
        used = 0
        for i, e in enumerate(m):
            if e:
                term = term * numerators[i] ** e
                used += e * denom_pow[i]
        total = total + term * t_link ** (depth - used)
    return total


def charts_glue(
    ideal_a: Ideal,
    chart_a: BlowupChart,
    ideal_b: Ideal,
    chart_b: BlowupChart,
    budget: Budget | None = None,
) -> bool:
    """Two chart ideals agree on the chart overlap.

    The ideal of the second chart is carried over the transition and both
    sides are saturated by the transition coordinate before comparison.
    """
    names = chart_a.parent_ring.names
    t_link = chart_a.ring.var("T_" + names[chart_b.pivot])
    moved = Ideal(
        chart_a.ring,
        [transition_substitute(g, chart_b, chart_a) for g in ideal_b.generators],
    )
    return ideal_equal(
        saturate(moved, t_link, budget),
        saturate(ideal_a, t_link, budget),
        DEGREVLEX,
        budget,
    )
