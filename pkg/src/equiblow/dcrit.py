"""d-critical charts, pointwise four-term complexes, obstruction assignments
for small extensions, and equivalence of sections cutting the same locus.

Everything pointwise happens over exact rationals: matrices of the complex
are evaluated at rational points, ranks come from fraction-free elimination,
and obstruction classes live in explicit cokernel coordinates.
"""

import warnings
from fractions import Fraction

from .blowup import EquivariantBundle, LocalModel, action_pairing
from .errors import PreconditionError, TheoremCheckError
from .groebner import Budget, Ideal, buchberger, ideal_equal, lift_certificate, normal_form, saturate
from .linalg import coker_projection, mat_mul, rank, solve
from .poly import DEGREVLEX, Poly, Ring, divide_exact
from .torus import (
    Subtorus,
    WeightMatrix,
    isotypic_decompose,
    orbit_is_closed,
    poly_weight,
    reynolds,
    stabilizer_subtorus,
)


def dcritical_chart(
    f: Poly,
    weights: WeightMatrix,
    base_param: str | None = None,
) -> LocalModel:
    """Local model of the critical locus of an invariant potential.

    The bundle is the cotangent frame (minus the base direction for a
    family), the section collects the partial derivatives, the divisor is
    empty and the cofactor is the action pairing, with the identity as
    factorization witness.
    """
    ring = f.ring
    if weights.k and weights.n != ring.n:
        raise ValueError("weight matrix width must match the ring")
    if reynolds(f, weights, Subtorus.full(weights.k)) != f:
        raise PreconditionError(f"potential is not invariant: {f}")
    if base_param is not None and base_param not in ring.index:
        raise ValueError(f"base parameter {base_param!r} is not a ring variable")
    frame_idx = [i for i in range(ring.n) if ring.names[i] != base_param]
    labels = ["d" + ring.names[i] for i in frame_idx]
    frame_weights = [weights.column(i) for i in frame_idx]
    section = tuple(f.derivative(i) for i in frame_idx)
    pairing = action_pairing(ring, weights)
    cofactor = tuple(tuple(row[i] for i in frame_idx) for row in pairing)
    lift = tuple(
        tuple(ring.one() if i == frame_idx[b] else ring.zero() for i in range(ring.n))
        for b in range(len(frame_idx))
    )
    return LocalModel(
        ring,
        weights,
        EquivariantBundle(labels, frame_weights),
        section,
        divisor={},
        cofactor=cofactor,
        sigma_lift=lift,
        potential=f,
        base_param=base_param,
    )


def derivative_matrix(section, ring: Ring):
    """Jacobian of a section: one row per component, one column per
    coordinate."""
    return tuple(
        tuple(comp.derivative(i) for i in range(ring.n)) for comp in section
    )


class FourTermComplexAtPoint:
    """Evaluated complex (torus) -> (tangent) -> (bundle) -> (torus dual)
    at a rational point of the section's zero locus.

    The last map is the cofactor in the divisor-twisted frame, so its
    entries are the exact quotients by the divisor equation.
    """

    __slots__ = ("point", "m0", "m1", "m2", "k", "n", "r", "divisor")

    def __init__(self, point, m0, m1, m2, k, n, r, divisor):
        self.point = tuple(point)
        self.m0 = tuple(tuple(row) for row in m0)
        self.m1 = tuple(tuple(row) for row in m1)
        self.m2 = tuple(tuple(row) for row in m2)
        self.k = k
        self.n = n
        self.r = r
        self.divisor = dict(divisor)

    def __repr__(self):
        return f"FourTermComplexAtPoint(point={self.point})"


def _eval_matrix(rows, point):
    return [[e.evaluate(point) for e in row] for row in rows]


def _is_zero_matrix(M) -> bool:
    return all(all(x == 0 for x in row) for row in M)


def four_term_at(
    model: LocalModel, point, budget: Budget | None = None
) -> FourTermComplexAtPoint:
    """Evaluate the four-term complex of a local model at a point of its
    zero locus, verifying the two composition identities and, for a
    d-critical model, the symmetry of the middle map."""
    ring = model.ring
    k = model.weights.k
    n = ring.n
    r = model.bundle.rank
    point = tuple(Fraction(x) for x in point)
    if len(point) != n:
        raise ValueError("point length must match the ambient ring")
    for comp in model.section:
        if comp.evaluate(point) != 0:
            raise PreconditionError(
                f"point is not on the zero locus: component {comp} evaluates to "
                f"{comp.evaluate(point)}"
            )
    m0 = [
        [model.weights.rows[a][i] * point[i] for a in range(k)] for i in range(n)
    ]
    m1 = _eval_matrix(derivative_matrix(model.section, ring), point)
    h = model.divisor_equation()
    twisted = []
    for a in range(k):
        row = []
        for b in range(r):
            e = model.cofactor[a][b]
            if e.is_zero():
                row.append(ring.zero())
                continue
            q = divide_exact(e, h)
            if q is None:
                raise PreconditionError(
                    "cofactor entry is not divisible by the divisor equation: "
                    f"{e}"
                )
            row.append(q)
        twisted.append(row)
    m2 = _eval_matrix(twisted, point)

    if r and k and not _is_zero_matrix(mat_mul(m1, m0)):
        raise TheoremCheckError(
            f"middle map does not kill the action column at {point}"
        )
    if r and k and not _is_zero_matrix(mat_mul(m2, m1)):
        raise TheoremCheckError(
            f"twisted cofactor does not kill the middle map at {point}"
        )
    if model.potential is not None:
        cols = [i for i in range(n) if ring.names[i] != model.base_param]
        for bi, i in enumerate(cols):
            for bj, j in enumerate(cols):
                if m1[bi][j] != m1[bj][i]:
                    raise TheoremCheckError(
                        f"second-derivative matrix is not symmetric at {point}"
                    )
    return FourTermComplexAtPoint(point, m0, m1, m2, k, n, r, model.divisor)


def cohomology_dims(K: FourTermComplexAtPoint) -> tuple[int, int, int, int]:
    """Exact cohomology dimensions of the evaluated complex.

    Re-verifies the compositions and the Euler identity
    h0 - h1 + h2 - h3 = r - n before reporting.
    """
    if K.r and K.k:
        if not _is_zero_matrix(mat_mul(K.m1, K.m0)) or not _is_zero_matrix(
            mat_mul(K.m2, K.m1)
        ):
            raise TheoremCheckError(
                "composition identities fail; the complex data is corrupted"
            )
    r0 = rank([list(row) for row in K.m0]) if K.k else 0
    r1 = rank([list(row) for row in K.m1]) if K.r else 0
    r2 = rank([list(row) for row in K.m2]) if (K.k and K.r) else 0
    h0 = K.k - r0
    h1 = (K.n - r1) - r0
    h2 = (K.r - r2) - r1
    h3 = K.k - r2
    if h0 - h1 + h2 - h3 != K.r - K.n:
        raise TheoremCheckError("Euler characteristic identity violated")
    return (h0, h1, h2, h3)


def reduced_obstruction_dim(
    model: LocalModel, point, budget: Budget | None = None
) -> int:
    """Dimension of the reduced obstruction fiber at a finite-stabilizer
    point: the h2 of the four-term complex there.

    Points whose ambient orbit is not closed still get a formal answer,
    flagged with a warning; a positive-dimensional stabilizer is refused
    since the reduced theory does not see it.
    """
    point = tuple(Fraction(x) for x in point)
    W = model.weights
    if W.k:
        support = [i for i in range(len(point)) if point[i] != 0]
        stab = stabilizer_subtorus(support, W)
        if not stab.is_trivial():
            raise PreconditionError(
                "point has a positive-dimensional stabilizer; the reduced "
                "theory is defined only at finite-stabilizer points"
            )
        if not orbit_is_closed(support, W):
            warnings.warn(
                "ambient orbit of the point is not closed; reduced dimensions "
                "are formal here",
                stacklevel=2,
            )
    K = four_term_at(model, point, budget)
    return cohomology_dims(K)[2]


# ---------------------------------------------------------------------------
# small extensions and obstruction assignments


def _series_trim(c, order):
    c = tuple(Fraction(x) for x in c)
    if len(c) > order + 1:
        c = c[: order + 1]
    return c + (Fraction(0),) * (order + 1 - len(c))


def _series_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _series_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if i + j > order:
                break
            out[i + j] += x * y
    return tuple(out)


def _series_eval(p: Poly, series, order):
    one = (Fraction(1),) + (Fraction(0),) * order
    total = (Fraction(0),) * (order + 1)
    cache = [dict() for _ in series]

    def power(i, e):
        if e not in cache[i]:
            if e == 1:
                cache[i][e] = series[i]
            else:
                cache[i][e] = _series_mul(power(i, e - 1), series[i], order)
        return cache[i][e]

    for m, c in p.terms.items():
        term = tuple(c * x for x in one)
        for i, e in enumerate(m):
            if e:
                term = _series_mul(term, power(i, e), order)
        total = _series_add(total, term)
    return total


class SmallExtension:
    """A square-zero extension of the dual-number tower together with a
    map into the locus: coordinates given as truncated power series in
    one parameter, defined to order m - 1 inclusive."""

    __slots__ = ("m", "series")

    MAX_ORDER = 6

    def __init__(self, m: int, series):
        m = int(m)
        if m < 1 or m > self.MAX_ORDER:
            raise PreconditionError(
                f"extension order must lie between 1 and {self.MAX_ORDER}"
            )
        series = tuple(_series_trim(c, m - 1) for c in series)
        self.m = m
        self.series = series

    @property
    def basepoint(self):
        return tuple(c[0] for c in self.series)

    def __repr__(self):
        return f"SmallExtension(m={self.m}, series={self.series})"


class ObstructionAssignment:
    """Obstruction class of a small extension in cokernel coordinates,
    along with its dimension count and the liftability verdict."""

    __slots__ = ("vector", "coker_dim", "liftable", "order")

    def __init__(self, vector, coker_dim, liftable, order):
        self.vector = tuple(vector)
        self.coker_dim = int(coker_dim)
        self.liftable = bool(liftable)
        self.order = int(order)

    def __repr__(self):
        return (
            f"ObstructionAssignment(vector={self.vector}, "
            f"liftable={self.liftable})"
        )


def _extension_residual(model: LocalModel, ext: SmallExtension):
    """Coefficients of the section along the naive coordinate lift, to one
    order beyond the extension; validates that the map lands in the locus
    to the stated order."""
    ring = model.ring
    if len(ext.series) != ring.n:
        raise PreconditionError("series count must match the ambient ring")
    order = ext.m
    lifted = [_series_trim(c, order) for c in ext.series]
    values = [_series_eval(comp, lifted, order) for comp in model.section]
    for b, v in enumerate(values):
        for d in range(ext.m):
            if v[d] != 0:
                raise PreconditionError(
                    "map does not land in the locus to the stated order: "
                    f"component {b} has residue {v[d]} at degree {d}"
                )
    return [v[order] for v in values]


def obstruction_assignment(
    model: LocalModel, ext: SmallExtension, budget: Budget | None = None
) -> ObstructionAssignment:
    """Obstruction class of the lifting problem across one more order.

    The section is evaluated along the naive lift, the top coefficient is
    projected to the cokernel of the middle map at the basepoint, and the
    class vanishes exactly when a lift exists.
    """
    top = _extension_residual(model, ext)
    K = four_term_at(model, ext.basepoint, budget)
    dim, project = coker_projection([list(row) for row in K.m1], model.bundle.rank)
    vector = project(top)
    return ObstructionAssignment(vector, dim, all(x == 0 for x in vector), ext.m)


def find_lift(model: LocalModel, ext: SmallExtension):
    """Search for a lift of the extension map one order higher by solving
    the linear correction system; independent of the cokernel route.

    Returns the lifted extension, or None when no correction works.
    """
    top = _extension_residual(model, ext)
    K = four_term_at(model, ext.basepoint)
    # columns of the middle map multiply the unknown correction
    A = [list(row) for row in K.m1]
    delta = solve(A, [-x for x in top])
    if delta is None:
        return None
    series = [c + (delta[i],) for i, c in enumerate(ext.series)]
    return SmallExtension(ext.m + 1, series)


# ---------------------------------------------------------------------------
# equivalence of sections


class OmegaEquivalenceReport:
    """Per-condition outcome of a section-equivalence check: equality of
    the cut ideals after localization, both correction identities modulo
    the squared ideal, and equivariance of the correction matrices."""

    __slots__ = (
        "same_ideal",
        "identity_forward",
        "identity_backward",
        "equivariant",
        "witnesses",
    )

    def __init__(self, same_ideal, identity_forward, identity_backward, equivariant, witnesses):
        self.same_ideal = bool(same_ideal)
        self.identity_forward = bool(identity_forward)
        self.identity_backward = bool(identity_backward)
        self.equivariant = bool(equivariant)
        self.witnesses = tuple(witnesses)

    @property
    def passed(self) -> bool:
        return (
            self.same_ideal
            and self.identity_forward
            and self.identity_backward
            and self.equivariant
        )

    def __repr__(self):
        return (
            f"OmegaEquivalenceReport(same_ideal={self.same_ideal}, "
            f"forward={self.identity_forward}, backward={self.identity_backward}, "
            f"equivariant={self.equivariant})"
        )


def _zero_matrix(ring: Ring, rows: int, cols: int):
    return tuple(tuple(ring.zero() for _ in range(cols)) for _ in range(rows))


def _mat_vec_poly(M, v, ring: Ring):
    out = []
    for row in M:
        acc = ring.zero()
        for e, x in zip(row, v):
            acc = acc + e * x
        out.append(acc)
    return tuple(out)


def verify_omega_equivalence(
    model: LocalModel,
    omega_bar,
    A=None,
    B=None,
    hint: Poly | None = None,
    basepoint=None,
    budget: Budget | None = None,
) -> OmegaEquivalenceReport:
    """Check that two sections of one bundle cut the same locus and differ
    by tangent-valued corrections modulo the squared ideal.

    The ideal comparison happens after saturating by the hint polynomial,
    the algebraic stand-in for shrinking the chart around a basepoint
    where the hint does not vanish.
    """
    ring = model.ring
    r = model.bundle.rank
    n = ring.n
    omega = model.section
    omega_bar = tuple(omega_bar)
    if len(omega_bar) != r:
        raise PreconditionError("sections must share the bundle rank")
    for c in omega_bar:
        if c.ring != ring:
            raise PreconditionError("sections must live in one ring")
    if hint is None:
        hint = ring.one()
    if basepoint is not None:
        if hint.evaluate(tuple(Fraction(x) for x in basepoint)) == 0:
            raise PreconditionError("hint polynomial vanishes at the basepoint")
    if A is None:
        A = _zero_matrix(ring, n, r)
    if B is None:
        B = _zero_matrix(ring, n, r)
    A = tuple(tuple(row) for row in A)
    B = tuple(tuple(row) for row in B)
    if len(A) != n or any(len(row) != r for row in A):
        raise PreconditionError("correction matrices must be n x rank")
    if len(B) != n or any(len(row) != r for row in B):
        raise PreconditionError("correction matrices must be n x rank")
    witnesses: list[str] = []

    ideal_a = Ideal(ring, omega)
    ideal_b = Ideal(ring, omega_bar)
    if not hint.is_constant():
        ideal_a = saturate(ideal_a, hint, budget)
        ideal_b = saturate(ideal_b, hint, budget)
    same_ideal = ideal_equal(ideal_a, ideal_b, DEGREVLEX, budget)
    if not same_ideal:
        witnesses.append("same_ideal: the two sections cut different ideals")

    gb = buchberger(ideal_a, DEGREVLEX, budget)
    squares = []
    for i, p in enumerate(gb.basis):
        for q in gb.basis[i:]:
            squares.append(p * q)
    gb_sq = buchberger(Ideal(ring, squares), DEGREVLEX, budget)

    jac_bar = derivative_matrix(omega_bar, ring)
    corr_fwd = _mat_vec_poly(jac_bar, _mat_vec_poly(A, omega_bar, ring), ring)
    identity_forward = True
    for b in range(r):
        residual = omega[b] - omega_bar[b] - corr_fwd[b]
        if not normal_form(residual, gb_sq).is_zero():
            identity_forward = False
            witnesses.append(
                f"identity_forward: component {b} leaves residual {residual} "
                "modulo the squared ideal"
            )
    jac = derivative_matrix(omega, ring)
    corr_bwd = _mat_vec_poly(jac, _mat_vec_poly(B, omega, ring), ring)
    identity_backward = True
    for b in range(r):
        residual = omega_bar[b] - omega[b] - corr_bwd[b]
        if not normal_form(residual, gb_sq).is_zero():
            identity_backward = False
            witnesses.append(
                f"identity_backward: component {b} leaves residual {residual} "
                "modulo the squared ideal"
            )

    equivariant = True
    W = model.weights
    for label, M in (("A", A), ("B", B)):
        for i in range(n):
            for c in range(r):
                e = M[i][c]
                if e.is_zero():
                    continue
                expected = tuple(
                    model.bundle.weights[c][a] + W.rows[a][i] for a in range(W.k)
                )
                if poly_weight(e, W) != expected:
                    equivariant = False
                    witnesses.append(
                        f"equivariant: entry {label}[{i}][{c}] = {e} is not of "
                        f"weight {expected}"
                    )
    return OmegaEquivalenceReport(
        same_ideal, identity_forward, identity_backward, equivariant, witnesses
    )


def _detect_unit_cofactor(omega, omega_bar, ring: Ring):
    unit = None
    for f_i, g_i in zip(omega, omega_bar):
        if f_i.is_zero() and g_i.is_zero():
            continue
        if f_i.is_zero() or g_i.is_zero():
            return None
        q = divide_exact(g_i, f_i)
        if q is None:
            return None
        if unit is None:
            unit = q
        elif unit != q:
            return None
    if unit is None or unit.is_constant():
        return None
    if unit.constant_coefficient() == 0:
        return None
    return unit


def _assemble_correction(diff: Poly, partials, weights: WeightMatrix, budget):
    """Symmetric correction matrix from a certificate of the difference
    over the pairwise products of the partials, averaged onto the
    equivariant weight piece entry by entry."""
    ring = diff.ring
    n = len(partials)
    pairs = []
    products = []
    for i in range(n):
        for j in range(i, n):
            p = partials[i] * partials[j]
            if p.is_zero():
                continue
            pairs.append((i, j))
            products.append(p)
    if not products:
        return None
    cert = lift_certificate(diff, Ideal(ring, products), budget)
    if cert is None:
        return None
    M = [[ring.zero() for _ in range(n)] for _ in range(n)]
    for (i, j), c in zip(pairs, cert):
        if i == j:
            M[i][i] = M[i][i] + c + c
        else:
            M[i][j] = M[i][j] + c
            M[j][i] = M[j][i] + c
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            target = tuple(
                weights.rows[a][i] + weights.rows[a][j] for a in range(weights.k)
            )
            keep = ring.zero()
            for piece in _isotypic(M[i][j], weights):
                if piece[0] == target:
                    keep = keep + piece[1]
            row.append(keep)
        out.append(tuple(row))
    return tuple(out)


def _isotypic(p: Poly, weights: WeightMatrix):
    return [
        (gp.weight, gp.part)
        for gp in isotypic_decompose(p, weights, Subtorus.full(weights.k))
    ]


def construct_equivalence(
    f: Poly, g: Poly, weights: WeightMatrix, budget: Budget | None = None
):
    """Equivalence data for the critical sections of two potentials that
    differ by an element of the squared critical ideal.

    Returns correction matrices and a localization hint; the simplest
    candidates are tried first and the result always re-verifies.
    """
    ring = f.ring
    if g.ring != ring:
        raise PreconditionError("potentials must live in one ring")
    model = dcritical_chart(f, weights)
    if reynolds(g, weights, Subtorus.full(weights.k)) != g:
        raise PreconditionError(f"potential is not invariant: {g}")
    omega = model.section
    omega_bar = tuple(g.derivative(i) for i in range(ring.n))

    unit = _detect_unit_cofactor(omega, omega_bar, ring)
    hint = unit if unit is not None else ring.one()

    zero = _zero_matrix(ring, ring.n, ring.n)
    candidates = [(zero, zero)]
    fwd = _assemble_correction(f - g, omega_bar, weights, budget)
    bwd = _assemble_correction(g - f, omega, weights, budget)
    if bwd is not None:
        candidates.append((zero, bwd))
    if fwd is not None:
        candidates.append((fwd, zero))
    if fwd is not None and bwd is not None:
        candidates.append((fwd, bwd))
    for A, B in candidates:
        report = verify_omega_equivalence(
            model, omega_bar, A, B, hint, budget=budget
        )
        if report.passed:
            return A, B, hint
    raise PreconditionError(
        "no equivalence certificate found; if the sections only agree "
        "locally, supply a localization hint that does not vanish there"
    )


def lift_morphism_to_blowup(A, model: LocalModel, chart, budget: Budget | None = None):
    """Carry a tangent-valued correction matrix to a blowup chart.

    Columns over moving frames keep the exceptional twist; the tangent
    side transforms by the inverse Jacobian of the chart substitution,
    cleared by the exceptional coordinate.  Equivariance of the input is
    required and the output stays polynomial.
    """
    ring = model.ring
    n = ring.n
    r = model.bundle.rank
    A = tuple(tuple(row) for row in A)
    if len(A) != n or any(len(row) != r for row in A):
        raise PreconditionError("correction matrix must be n x rank")
    W = model.weights
    for i in range(n):
        for c in range(r):
            e = A[i][c]
            if e.is_zero():
                continue
            expected = tuple(
                model.bundle.weights[c][a] + W.rows[a][i] for a in range(W.k)
            )
            if poly_weight(e, W) != expected:
                raise PreconditionError(
                    f"correction entry ({i},{c}) = {e} is not equivariant"
                )
    cring = chart.ring
    xi = chart.xi
    moving_frames = [
        bool(any(chart.center.restrict(v))) for v in model.bundle.weights
    ]
    pulled = [[chart.pullback(A[i][c]) for c in range(r)] for i in range(n)]
    # rows of xi times the inverse Jacobian, indexed by chart coordinates
    out = [[cring.zero() for _ in range(r)] for _ in range(n)]
    names = chart.parent_ring.names
    for c in range(r):
        col = [pulled[i][c] for i in range(n)]
        transformed = [cring.zero()] * n
        for j in range(n):
            if j == chart.pivot:
                transformed[j] = xi * col[chart.pivot]
            elif j in chart.moving:
                transformed[j] = col[j] - cring.var("T_" + names[j]) * col[chart.pivot]
            else:
                transformed[j] = xi * col[j]
        # the frame twist contributes xi^{0 or 1}, the inverse Jacobian 1/xi
        if moving_frames[c]:
            out_col = transformed
        else:
            out_col = []
            for e in transformed:
                if e.is_zero():
                    out_col.append(e)
                    continue
                q = divide_exact(e, xi)
                if q is None:
                    raise TheoremCheckError(
                        "lifted correction is not divisible by the exceptional "
                        f"coordinate: {e}"
                    )
                out_col.append(q)
        for j in range(n):
            out[j][c] = out_col[j]
    return tuple(tuple(row) for row in out)


class CokernelComparison:
    """Comparison of obstruction cokernels along a coordinate inclusion:
    dimensions on both sides and whether dropping the auxiliary frame
    components induces a bijection."""

    __slots__ = ("compatible", "dim_small", "dim_big", "witnesses")

    def __init__(self, compatible, dim_small, dim_big, witnesses):
        self.compatible = bool(compatible)
        self.dim_small = int(dim_small)
        self.dim_big = int(dim_big)
        self.witnesses = tuple(witnesses)

    def __repr__(self):
        return (
            f"CokernelComparison(compatible={self.compatible}, "
            f"dims=({self.dim_big} -> {self.dim_small}))"
        )


def phi_ck_at_point(
    small: LocalModel, big: LocalModel, point, budget: Budget | None = None
) -> CokernelComparison:
    """Compare obstruction cokernels at a point along the inclusion of the
    small ambient into the big one (extra coordinates set to zero).

    The sections must agree on the shared frames after restriction; the
    verdict records both cokernel dimensions and whether the induced map
    is a bijection.
    """
    ring_s = small.ring
    ring_b = big.ring
    aux = [nm for nm in ring_b.names if nm not in ring_s.index]
    if set(ring_s.names) - set(ring_b.names):
        raise PreconditionError("small ambient must embed into the big one")
    shared_frames = []
    for lab in small.bundle.labels:
        if lab not in big.bundle.labels:
            raise PreconditionError(f"frame {lab!r} missing from the big bundle")
        shared_frames.append(big.bundle.labels.index(lab))
    point = tuple(Fraction(x) for x in point)
    if len(point) != ring_s.n:
        raise ValueError("point length must match the small ambient")
    big_point = tuple(
        point[ring_s.index[nm]] if nm in ring_s.index else Fraction(0)
        for nm in ring_b.names
    )
    zero_aux = [
        ring_b.var(nm) if nm in ring_s.index else ring_b.zero()
        for nm in ring_b.names
    ]
    restricted = []
    for pos in shared_frames:
        comp = big.section[pos].subs(zero_aux, ring_b).rename_ring(ring_s)
        restricted.append(comp)
    report = verify_omega_equivalence(small, restricted, budget=budget)
    if not report.passed:
        raise PreconditionError(
            "sections are incompatible along the inclusion: "
            + "; ".join(report.witnesses)
        )

    Ks = four_term_at(small, point, budget)
    Kb = four_term_at(big, big_point, budget)
    dim_s, project_s = coker_projection(
        [list(row) for row in Ks.m1], small.bundle.rank
    )
    dim_b, project_b = coker_projection(
        [list(row) for row in Kb.m1], big.bundle.rank
    )
    witnesses: list[str] = []
    compatible = True
    if dim_s != dim_b:
        compatible = False
        witnesses.append(
            f"cokernel dimensions differ: {dim_b} on the big side, {dim_s} on "
            "the small side"
        )

    def drop(vec):
        return [vec[pos] for pos in shared_frames]

    if compatible:
        rb = big.bundle.rank
        for j in range(len(Kb.m1[0]) if rb else 0):
            col = [Kb.m1[b][j] for b in range(rb)]
            image = project_s(drop(col))
            if any(x != 0 for x in image):
                compatible = False
                witnesses.append(
                    "induced map is not defined on cokernels: middle-map "
                    f"column {j} survives projection"
                )
                break
    if compatible and dim_s:
        # the induced map is onto iff the composite from the big bundle is;
        # with equal finite dimensions onto means bijective
        rb = big.bundle.rank
        columns = []
        for b in range(rb):
            e = [Fraction(1) if i == b else Fraction(0) for i in range(rb)]
            columns.append(project_s(drop(e)))
        matrix = [[columns[j][i] for j in range(rb)] for i in range(dim_s)]
        if rank(matrix) != dim_s:
            compatible = False
            witnesses.append("induced map on cokernels is not a bijection")
    return CokernelComparison(compatible, dim_s, dim_b, witnesses)
