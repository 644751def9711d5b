"""Command-line driver: parse a model file, run one pipeline stage, and
emit a deterministic report.

Exit codes: 0 success, 1 corpus criterion failed, 2 unreadable input,
3 precondition violated, 4 budget exceeded, 5 theorem-check failure.
"""

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import report as rpt
from .blowup import (
    EquivariantBundle,
    LocalModel,
    check_weak_local_model,
    embedding_independence_check,
    intrinsic_ideal,
    make_charts,
    verify_coinc,
)
from .dcrit import (
    SmallExtension,
    cohomology_dims,
    dcritical_chart,
    find_lift,
    four_term_at,
    obstruction_assignment,
    verify_omega_equivalence,
)
from .desing import partial_desingularization
from .errors import (
    BudgetExceededError,
    ModelFileError,
    PolyParseError,
    PreconditionError,
    TheoremCheckError,
)
from .family import fiber_blowup_commutes
from .groebner import Budget, Ideal, contains_one, eliminate
from .modelfile import BuiltModel, build_model, load_model_file, parse_hint
from .poly import Ring, parse_poly
from .stability import point_semistable, unstable_ideal
from .torus import Subtorus, WeightMatrix

CORPUS_DIR = Path(__file__).parent / "corpus"


def _parse_budget(args) -> Budget | None:
    value = args.budget
    if value is None:
        env = os.environ.get("EQUIBLOW_BUDGET")
        if env is not None:
            try:
                value = int(env)
            except ValueError:
                raise ModelFileError(
                    f"EQUIBLOW_BUDGET must be an integer, got {env!r}"
                ) from None
    if value is None:
        return None
    if value < 1:
        raise ModelFileError("budget must be a positive integer")
    return Budget(max_basis=value, max_degree=value)


def _parse_point(text: str, n: int):
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != n:
        raise ModelFileError(f"point needs {n} coordinates, got {len(parts)}")
    try:
        return tuple(Fraction(s) for s in parts)
    except (ValueError, ZeroDivisionError):
        raise ModelFileError(f"bad point {text!r}") from None


def _action_trivial(built: BuiltModel) -> bool:
    W = built.weights
    if W.k == 0:
        return False
    return all(all(row[i] == 0 for row in W.rows) for i in range(built.ring.n))


def _stage_dict(stage) -> dict:
    return {
        "center": [list(r) for r in stage.center.cochar],
        "charts": [
            {
                "name": co.chart.name,
                "ideal_gb": rpt.gb_strings(co.gb),
                "unstable_gb": (
                    rpt.ideal_strings(co.unstable) if co.unstable is not None else None
                ),
                "substages": [_stage_dict(s) for s in co.substages],
            }
            for co in stage.charts
        ],
    }


def cmd_blowup(args) -> tuple[dict, int]:
    built = build_model(load_model_file(args.file))
    budget = _parse_budget(args)
    ledger: dict = {}
    charts_out: list[dict] = []
    if _action_trivial(built):
        ledger["dense"] = True
        ledger["stages"] = []
        return rpt.assemble(Path(args.file).name, "blowup", charts_out, ledger), 0
    center = Subtorus.full(built.weights.k)
    charts = make_charts(built.ring, built.weights, center)
    if args.chart is not None:
        charts = [c for c in charts if c.name == args.chart]
        if not charts:
            raise ModelFileError(f"no chart named {args.chart!r}")
    coinc = None
    if built.model is not None:
        coinc = verify_coinc(built.model, center, budget)
    unit_charts = []
    for chart in charts:
        raw, gb = intrinsic_ideal(built.ideal, chart, budget)
        unstable = unstable_ideal(chart, budget) if center.dim == 1 else None
        checks = {"xi": True}
        if coinc is not None:
            checks["coinc"] = coinc[chart.name]
        if contains_one(gb):
            unit_charts.append(chart.name)
        charts_out.append(
            rpt.chart_entry(
                chart.name,
                chart.ring.names,
                chart.weights.rows,
                ideal_gb=rpt.gb_strings(gb),
                unstable_gb=(
                    rpt.ideal_strings(unstable) if unstable is not None else None
                ),
                checks=checks,
            )
        )
    ledger["u_hat_empty"] = len(unit_charts) == len(charts) and bool(charts)
    if coinc is not None:
        ledger["coinc_all"] = all(coinc.values())
    if args.full:
        if built.model is None:
            raise PreconditionError(
                "--full requires a model with a section (potential or "
                "section file)"
            )
        tree = partial_desingularization(built.model, budget)
        ledger["dense"] = tree.dense
        ledger["stages"] = [_stage_dict(s) for s in tree.stages]
    return rpt.assemble(Path(args.file).name, "blowup", charts_out, ledger), 0


def cmd_crit(args) -> tuple[dict, int]:
    built = build_model(load_model_file(args.file))
    budget = _parse_budget(args)
    if built.model is None:
        raise PreconditionError("crit requires a potential or section model")
    wm = check_weak_local_model(built.model, budget)
    ledger = {
        "factorization": wm.factorization,
        "composite_zero": wm.composite_zero,
        "fixed_projection": wm.fixed_projection,
        "passed": wm.passed,
        "witnesses": list(wm.witnesses),
    }
    if args.point is not None:
        point = _parse_point(args.point, built.ring.n)
        K = four_term_at(built.model, point, budget)
        h = cohomology_dims(K)
        ledger["point"] = rpt.point_str(point)
        ledger["cohomology_dims"] = list(h)
        ledger["reduced_obstruction_dim"] = h[2]
    return rpt.assemble(Path(args.file).name, "crit", [], ledger), 0


def cmd_semistable(args) -> tuple[dict, int]:
    built = build_model(load_model_file(args.file))
    center = Subtorus.full(built.weights.k)
    charts = make_charts(built.ring, built.weights, center)
    by_name = {c.name: c for c in charts}
    if args.chart is None:
        if len(charts) != 1:
            raise ModelFileError(
                "--chart is required when the atlas has several charts"
            )
        chart = charts[0]
    elif args.chart in by_name:
        chart = by_name[args.chart]
    else:
        raise ModelFileError(f"no chart named {args.chart!r}")
    if args.point is None:
        raise ModelFileError("--point is required")
    point = _parse_point(args.point, chart.ring.n)
    verdict = point_semistable(point, chart, charts)
    ledger = {
        "chart": chart.name,
        "point": rpt.point_str(point),
        "semistable": verdict.semistable,
    }
    if not verdict.semistable:
        ledger["direction"] = list(verdict.direction)
        if verdict.limit is not None:
            ledger["limit"] = rpt.point_str(verdict.limit)
            ledger["limit_chart"] = verdict.chart
    return rpt.assemble(Path(args.file).name, "semistable", [], ledger), 0


def cmd_obstruction(args) -> tuple[dict, int]:
    built = build_model(load_model_file(args.file))
    budget = _parse_budget(args)
    if built.model is None:
        raise PreconditionError("obstruction requires a potential model")
    n = built.ring.n
    if args.point is not None:
        point = _parse_point(args.point, n)
    elif built.source.basepoint is not None:
        point = built.source.basepoint
    else:
        raise ModelFileError("--point or a basepoint in the file is required")
    direction = (
        _parse_point(args.direction, n)
        if args.direction is not None
        else (Fraction(0),) * n
    )
    ext = SmallExtension(
        args.ext_order, [(point[i], direction[i]) for i in range(n)]
    )
    ob = obstruction_assignment(built.model, ext, budget)
    lifted = find_lift(built.model, ext)
    if ob.liftable != (lifted is not None):
        raise TheoremCheckError(
            "obstruction verdict disagrees with the lift search"
        )
    ledger = {
        "point": rpt.point_str(point),
        "order": ext.m,
        "vector": [rpt.frac_str(x) for x in ob.vector],
        "coker_dim": ob.coker_dim,
        "liftable": ob.liftable,
    }
    return rpt.assemble(Path(args.file).name, "obstruction", [], ledger), 0


def cmd_omega_verify(args) -> tuple[dict, int]:
    built = build_model(load_model_file(args.file))
    budget = _parse_budget(args)
    if built.model is None or built.against is None:
        raise ModelFileError(
            "omega-verify needs a potential file with a comparison 'section'"
        )
    hint = parse_hint(built)
    rep = verify_omega_equivalence(
        built.model,
        built.against,
        hint=hint,
        basepoint=built.source.basepoint,
        budget=budget,
    )
    ledger = {
        "same_ideal": rep.same_ideal,
        "identity_forward": rep.identity_forward,
        "identity_backward": rep.identity_backward,
        "equivariant": rep.equivariant,
        "passed": rep.passed,
        "witnesses": list(rep.witnesses),
        "corrections": "zero",
    }
    return rpt.assemble(Path(args.file).name, "omega-verify", [], ledger), 0


def cmd_fiber_check(args) -> tuple[dict, int]:
    built = build_model(load_model_file(args.file))
    budget = _parse_budget(args)
    if built.model is None:
        raise PreconditionError("fiber-check requires a potential model")
    try:
        c = Fraction(args.at)
    except (ValueError, ZeroDivisionError):
        raise ModelFileError(f"bad fiber value {args.at!r}") from None
    results = fiber_blowup_commutes(built.model, c, budget=budget)
    ledger = {
        "at": rpt.frac_str(c),
        "charts": {name: ok for name, ok in sorted(results.items())},
        "commutes": all(results.values()),
    }
    return rpt.assemble(Path(args.file).name, "fiber-check", [], ledger), 0


def _ideal_as_model(ring: Ring, weights: WeightMatrix, ideal: Ideal) -> LocalModel:
    """Wrap bare ideal data in the model shape expected by the
    embedding-independence verifier; the bundle is a placeholder."""
    gens = tuple(ideal.generators) or (ring.zero(),)
    labels = [f"e{i}" for i in range(len(gens))]
    frame_weights = [(0,) * weights.k for _ in gens]
    return LocalModel(
        ring, weights, EquivariantBundle(labels, frame_weights), gens
    )


def cmd_independence(args) -> tuple[dict, int]:
    built = build_model(load_model_file(args.file))
    budget = _parse_budget(args)
    aux = tuple(s.strip() for s in args.aux.split(",") if s.strip())
    if not aux:
        raise ModelFileError("--aux needs at least one variable name")
    for a in aux:
        if a not in built.ring.index:
            raise ModelFileError(f"auxiliary variable {a!r} is not in the model")
    small_ring = built.ring.without(aux)
    keep = [built.ring.index[nm] for nm in small_ring.names]
    small_weights = WeightMatrix(
        [tuple(row[i] for i in keep) for row in built.weights.rows]
    )
    dropped = eliminate(built.ideal, aux, budget)
    small_ideal = Ideal(
        small_ring, [g.rename_ring(small_ring) for g in dropped.generators]
    )
    small = _ideal_as_model(small_ring, small_weights, small_ideal)
    big = (
        built.model
        if built.model is not None
        else _ideal_as_model(built.ring, built.weights, built.ideal)
    )
    ok = embedding_independence_check(small, big, aux, budget=budget)
    ledger = {"aux": list(aux), "independent": ok}
    return rpt.assemble(Path(args.file).name, "independence", [], ledger), 0


# ---------------------------------------------------------------------------
# corpus runner


def _corpus_checks(budget) -> tuple[list[dict], list[dict]]:
    """All bundled models through their pipelines plus the deterministic
    worked examples; returns (chart entries, named checks)."""
    charts_out: list[dict] = []
    checks: list[dict] = []

    def check(name: str, passed: bool):
        checks.append({"name": name, "passed": bool(passed)})

    pipeline = ["e1.kb", "e2.kb", "conic.kb", "square.kb", "fat.kb"]
    for fname in pipeline:
        built = build_model(load_model_file(str(CORPUS_DIR / fname)))
        center = Subtorus.full(built.weights.k)
        chs = make_charts(built.ring, built.weights, center)
        coinc = (
            verify_coinc(built.model, center, budget)
            if built.model is not None
            else None
        )
        for chart in chs:
            raw, gb = intrinsic_ideal(built.ideal, chart, budget)
            unstable = unstable_ideal(chart, budget)
            entry_checks = {"xi": True}
            if coinc is not None:
                entry_checks["coinc"] = coinc[chart.name]
            charts_out.append(
                rpt.chart_entry(
                    f"{fname}:{chart.name}",
                    chart.ring.names,
                    chart.weights.rows,
                    ideal_gb=rpt.gb_strings(gb),
                    unstable_gb=rpt.ideal_strings(unstable),
                    checks=entry_checks,
                )
            )
        if coinc is not None:
            check(f"coinc:{fname}", all(coinc.values()))

    trivial = build_model(load_model_file(str(CORPUS_DIR / "trivial.kb")))
    check("dense:trivial.kb", _action_trivial(trivial))

    fam = build_model(load_model_file(str(CORPUS_DIR / "family.kb")))
    for c in (0, 1, -2):
        results = fiber_blowup_commutes(fam.model, c, budget=budget)
        check(f"fiber:family.kb:at={c}", all(results.values()))

    pair = build_model(load_model_file(str(CORPUS_DIR / "square_pair.kb")))
    rep = verify_omega_equivalence(
        pair.model,
        pair.against,
        hint=parse_hint(pair),
        basepoint=pair.source.basepoint,
        budget=budget,
    )
    check("omega:square_pair.kb", rep.passed)

    for fname, aux in (("e1aux.kb", ("u",)), ("e2aux.kb", ("u",))):
        built = build_model(load_model_file(str(CORPUS_DIR / fname)))
        small_ring = built.ring.without(aux)
        keep = [built.ring.index[nm] for nm in small_ring.names]
        small_weights = WeightMatrix(
            [tuple(row[i] for i in keep) for row in built.weights.rows]
        )
        dropped = eliminate(built.ideal, aux, budget)
        small_ideal = Ideal(
            small_ring, [g.rename_ring(small_ring) for g in dropped.generators]
        )
        small = _ideal_as_model(small_ring, small_weights, small_ideal)
        big = _ideal_as_model(built.ring, built.weights, built.ideal)
        check(
            f"independence:{fname}",
            embedding_independence_check(small, big, aux, budget=budget),
        )

    # worked cohomology dimensions, frozen
    ring2 = Ring(["x", "y"])
    w2 = WeightMatrix([(1, -1)])
    square = dcritical_chart(parse_poly("1/2*x^2*y^2", ring2), w2)
    dims_a = cohomology_dims(four_term_at(square, (1, 0), budget))
    dims_b = cohomology_dims(four_term_at(square, (0, 0), budget))
    ring3 = Ring(["x", "y", "z"])
    w3 = WeightMatrix([(1, -1, 0)])
    xyz = dcritical_chart(parse_poly("x*y*z", ring3), w3)
    dims_c = cohomology_dims(four_term_at(xyz, (1, 0, 0), budget))
    check("dims:square:(1,0)", dims_a == (0, 0, 0, 0))
    check("dims:square:origin", dims_b == (1, 2, 2, 1))
    check("dims:xyz:(1,0,0)", dims_c == (0, 0, 0, 0))

    # obstruction spot checks
    ring1 = Ring(["x"])
    w0 = WeightMatrix([])
    cubic = dcritical_chart(parse_poly("1/3*x^3", ring1), w0)
    ext = SmallExtension(2, [(0, 1)])
    ob = obstruction_assignment(cubic, ext, budget)
    check(
        "obstruction:cubic",
        (not ob.liftable) and find_lift(cubic, ext) is None,
    )
    quad = dcritical_chart(parse_poly("1/2*x^2", ring1), w0)
    ext0 = SmallExtension(2, [(0, 0)])
    ob0 = obstruction_assignment(quad, ext0, budget)
    check("obstruction:quadratic", ob0.liftable and find_lift(quad, ext0) is not None)

    # stability verdicts on the blown-up three-axes model
    e2 = build_model(load_model_file(str(CORPUS_DIR / "e2.kb")))
    center = Subtorus.full(1)
    chs = make_charts(e2.ring, e2.weights, center)
    chart_x = chs[0]
    unst = unstable_ideal(chart_x, budget)
    check("unstable:e2:chart_x", rpt.ideal_strings(unst) == ["T_y"])
    check(
        "semistable:e2:(0,1,0)",
        point_semistable((0, 1, 0), chart_x, chs).semistable,
    )
    check(
        "unstable-point:e2:(1,0,0)",
        not point_semistable((1, 0, 0), chart_x, chs).semistable,
    )
    check(
        "semistable:e2:(0,1,5)",
        point_semistable((0, 1, 5), chart_x, chs).semistable,
    )
    return charts_out, checks


def cmd_corpus(args) -> tuple[dict, int]:
    budget = _parse_budget(args)
    charts_out, checks = _corpus_checks(budget)
    failed = [c["name"] for c in checks if not c["passed"]]
    ledger = {"checks": checks, "failed": failed}
    code = 0 if not failed else 1
    return rpt.assemble("corpus", "corpus", charts_out, ledger), code


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="equiblow",
        description=(
            "Exact toolkit for torus-equivariant Kirwan blowups of affine "
            "models: intrinsic ideals, stability, obstruction data."
        ),
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", metavar="PATH", help="write the JSON report here")
        sp.add_argument(
            "--budget",
            type=int,
            metavar="N",
            help="cap Groebner basis size and degree at N",
        )

    sp = sub.add_parser("blowup", help="charts, intrinsic ideals, stability")
    sp.add_argument("file")
    sp.add_argument("--chart", metavar="NAME")
    sp.add_argument("--full", action="store_true", help="iterate to termination")
    common(sp)

    sp = sub.add_parser("crit", help="critical-locus model and its checks")
    sp.add_argument("file")
    sp.add_argument("--point", metavar="a,b,c")
    common(sp)

    sp = sub.add_parser("semistable", help="judge one point of a blowup chart")
    sp.add_argument("file")
    sp.add_argument("--chart", metavar="NAME")
    sp.add_argument("--point", metavar="a,b,c")
    common(sp)

    sp = sub.add_parser("obstruction", help="obstruction class of a small extension")
    sp.add_argument("file")
    sp.add_argument("--point", metavar="a,b,c")
    sp.add_argument("--direction", metavar="a,b,c")
    sp.add_argument("--ext-order", type=int, default=2, metavar="m")
    common(sp)

    sp = sub.add_parser("omega-verify", help="section equivalence report")
    sp.add_argument("file")
    common(sp)

    sp = sub.add_parser("fiber-check", help="blowup commutes with the fiber")
    sp.add_argument("file")
    sp.add_argument("--at", default="0", metavar="c")
    common(sp)

    sp = sub.add_parser("independence", help="embedding independence of charts")
    sp.add_argument("file")
    sp.add_argument("--aux", required=True, metavar="u,v")
    common(sp)

    sp = sub.add_parser("corpus", help="run every bundled example")
    common(sp)
    return p


_DISPATCH = {
    "blowup": cmd_blowup,
    "crit": cmd_crit,
    "semistable": cmd_semistable,
    "obstruction": cmd_obstruction,
    "omega-verify": cmd_omega_verify,
    "fiber-check": cmd_fiber_check,
    "independence": cmd_independence,
    "corpus": cmd_corpus,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = _DISPATCH[args.command](args)
    except (ModelFileError, PolyParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except PreconditionError as e:
        print(f"precondition: {e}", file=sys.stderr)
        return 3
    except BudgetExceededError as e:
        print(f"budget: {e}", file=sys.stderr)
        return 4
    except TheoremCheckError as e:
        print(f"THEOREM CHECK FAILED: {e}", file=sys.stderr)
        return 5
    text = rpt.render(report)
    if args.json:
        Path(args.json).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
