"""Flat key-value model files: one torus-equivariant model per file.

The format is deliberately primitive so fixtures stay diff-friendly:
`key = value` lines, arrays in brackets, polynomial strings in quotes,
`#` comments.  Example:

    variables = [x, y, z]
    weights = [[1, -1, 0]]
    potential = "x*y*z"
"""

from fractions import Fraction

from .blowup import EquivariantBundle, LocalModel
from .dcrit import dcritical_chart
from .errors import ModelFileError, PolyParseError
from .groebner import Ideal
from .poly import Poly, Ring, parse_poly
from .torus import Subtorus, WeightMatrix, reynolds

_KEYS = {
    "variables",
    "weights",
    "potential",
    "ideal",
    "section",
    "frame_weights",
    "frame_labels",
    "divisor",
    "twist",
    "base_parameter",
    "basepoint",
    "hint",
}


class ModelFile:
    """Parsed but unbuilt model data, shapes validated."""

    __slots__ = (
        "variables",
        "weights",
        "potential",
        "ideal",
        "section",
        "frame_weights",
        "frame_labels",
        "divisor",
        "twist",
        "base_parameter",
        "basepoint",
        "hint",
    )

    def __init__(self, entries: dict):
        for key in entries:
            if key not in _KEYS:
                raise ModelFileError(f"unknown key {key!r}")
        try:
            variables = entries["variables"]
            weights = entries["weights"]
        except KeyError as e:
            raise ModelFileError(f"missing required key {e.args[0]!r}") from None
        if not isinstance(variables, list) or not all(
            isinstance(v, str) for v in variables
        ):
            raise ModelFileError("variables must be a list of names")
        self.variables = tuple(variables)
        if not isinstance(weights, list) or not all(
            isinstance(row, list) for row in weights
        ):
            raise ModelFileError("weights must be a list of integer rows")
        rows = []
        for row in weights:
            out = []
            for x in row:
                if not isinstance(x, int):
                    raise ModelFileError("weights must be integers")
                out.append(x)
            if len(out) != len(self.variables):
                raise ModelFileError("weight row width must match variables")
            rows.append(tuple(out))
        self.weights = tuple(rows)

        has_potential = "potential" in entries
        has_ideal = "ideal" in entries
        if has_potential == has_ideal:
            raise ModelFileError(
                "exactly one of 'potential' or 'ideal' is required"
            )
        self.potential = entries.get("potential")
        if self.potential is not None and not isinstance(self.potential, str):
            raise ModelFileError("potential must be a quoted string")
        ideal = entries.get("ideal")
        if ideal is not None:
            if not isinstance(ideal, list) or not all(
                isinstance(g, str) for g in ideal
            ):
                raise ModelFileError("ideal must be a list of quoted strings")
            ideal = tuple(ideal)
        self.ideal = ideal

        section = entries.get("section")
        if section is not None:
            if not isinstance(section, list) or not all(
                isinstance(g, str) for g in section
            ):
                raise ModelFileError("section must be a list of quoted strings")
            section = tuple(section)
        self.section = section

        fw = entries.get("frame_weights")
        if fw is not None:
            if not isinstance(fw, list) or not all(
                isinstance(row, list) and all(isinstance(x, int) for x in row)
                for row in fw
            ):
                raise ModelFileError("frame_weights must be integer rows")
            fw = tuple(tuple(row) for row in fw)
        self.frame_weights = fw

        fl = entries.get("frame_labels")
        if fl is not None:
            if not isinstance(fl, list) or not all(isinstance(s, str) for s in fl):
                raise ModelFileError("frame_labels must be a list of names")
            fl = tuple(fl)
        self.frame_labels = fl

        divisor = entries.get("divisor", [])
        if not isinstance(divisor, list):
            raise ModelFileError("divisor must be a list of [name, multiplicity]")
        div = {}
        for item in divisor:
            if (
                not isinstance(item, list)
                or len(item) != 2
                or not isinstance(item[0], str)
                or not isinstance(item[1], int)
                or item[1] <= 0
            ):
                raise ModelFileError(
                    "divisor entries must be [name, positive multiplicity]"
                )
            div[item[0]] = item[1]
        self.divisor = div

        twist = entries.get("twist", 0)
        if not isinstance(twist, int) or twist < 0:
            raise ModelFileError("twist must be a nonnegative integer")
        self.twist = twist

        bp = entries.get("base_parameter")
        if bp is not None:
            if not isinstance(bp, str) or bp not in self.variables:
                raise ModelFileError("base_parameter must name a variable")
            t = self.variables.index(bp)
            for row in self.weights:
                if row[t] != 0:
                    raise ModelFileError(
                        "base parameter must have weight zero in every row"
                    )
        self.base_parameter = bp

        basepoint = entries.get("basepoint")
        if basepoint is not None:
            if not isinstance(basepoint, list) or len(basepoint) != len(
                self.variables
            ):
                raise ModelFileError(
                    "basepoint must list one rational per variable"
                )
            basepoint = tuple(
                x if isinstance(x, Fraction) else Fraction(x) for x in basepoint
            )
        self.basepoint = basepoint

        hint = entries.get("hint")
        if hint is not None and not isinstance(hint, str):
            raise ModelFileError("hint must be a quoted string")
        self.hint = hint


# ---------------------------------------------------------------------------
# text parsing


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self, newlines: bool):
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "#":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self.pos += 1
            elif ch in " \t\r" or (newlines and ch == "\n"):
                self.pos += 1
            else:
                break

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise ModelFileError(
                f"expected {ch!r} at offset {self.pos}, found {self.peek()!r}"
            )
        self.pos += 1


def _scan_value(sc: _Scanner):
    sc.skip_ws(newlines=True)
    ch = sc.peek()
    if ch == '"':
        sc.pos += 1
        start = sc.pos
        while sc.peek() not in ('"', ""):
            sc.pos += 1
        if sc.peek() != '"':
            raise ModelFileError("unterminated string")
        value = sc.text[start : sc.pos]
        sc.pos += 1
        return value
    if ch == "[":
        sc.pos += 1
        items = []
        sc.skip_ws(newlines=True)
        if sc.peek() == "]":
            sc.pos += 1
            return items
        while True:
            items.append(_scan_value(sc))
            sc.skip_ws(newlines=True)
            if sc.peek() == ",":
                sc.pos += 1
                sc.skip_ws(newlines=True)
                if sc.peek() == "]":  # trailing comma
                    sc.pos += 1
                    return items
                continue
            sc.expect("]")
            return items
    start = sc.pos
    while sc.peek() and sc.peek() not in ",]# \t\r\n":
        sc.pos += 1
    atom = sc.text[start : sc.pos]
    if not atom:
        raise ModelFileError(f"empty value at offset {start}")
    neg = atom[1:] if atom.startswith("-") else atom
    if neg.isdigit():
        return int(atom)
    if "/" in atom:
        num, _, den = atom.partition("/")
        numneg = num[1:] if num.startswith("-") else num
        if numneg.isdigit() and den.isdigit():
            return Fraction(int(num), int(den))
    return atom


def parse_model_text(text: str) -> ModelFile:
    sc = _Scanner(text)
    entries: dict = {}
    while True:
        sc.skip_ws(newlines=True)
        if not sc.peek():
            break
        start = sc.pos
        while sc.peek() and (sc.peek().isalnum() or sc.peek() == "_"):
            sc.pos += 1
        key = sc.text[start : sc.pos]
        if not key:
            raise ModelFileError(f"expected a key at offset {sc.pos}")
        if key in entries:
            raise ModelFileError(f"duplicate key {key!r}")
        sc.skip_ws(newlines=False)
        sc.expect("=")
        entries[key] = _scan_value(sc)
    return ModelFile(entries)


def load_model_file(path: str) -> ModelFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ModelFileError(f"cannot read model file: {e}") from None
    return parse_model_text(text)


# ---------------------------------------------------------------------------
# building


class BuiltModel:
    """A model file resolved into live objects.

    ``model`` is present for potential files and for explicit
    section-plus-frame files; ideal-only inputs work at the ideal level.
    ``against`` holds the file's section when it accompanies a potential,
    as the comparison section for equivalence checks.
    """

    __slots__ = ("ring", "weights", "ideal", "model", "against", "source")

    def __init__(self, ring, weights, ideal, model, against, source):
        self.ring = ring
        self.weights = weights
        self.ideal = ideal
        self.model = model
        self.against = against
        self.source = source


def build_model(mf: ModelFile) -> BuiltModel:
    ring = Ring(mf.variables)
    weights = WeightMatrix(mf.weights)
    try:
        if mf.potential is not None:
            f = parse_poly(mf.potential, ring)
            if reynolds(f, weights, Subtorus.full(weights.k)) != f:
                raise ModelFileError("potential is not invariant")
            model = dcritical_chart(f, weights, base_param=mf.base_parameter)
            against = None
            if mf.section is not None:
                if len(mf.section) != model.bundle.rank:
                    raise ModelFileError(
                        "comparison section must match the frame count"
                    )
                against = tuple(parse_poly(s, ring) for s in mf.section)
            return BuiltModel(ring, weights, model.ideal, model, against, mf)
        gens = tuple(parse_poly(s, ring) for s in mf.ideal)
        ideal = Ideal(ring, gens)
        model = None
        if mf.section is not None:
            if mf.frame_weights is None:
                raise ModelFileError("section requires frame_weights")
            section = tuple(parse_poly(s, ring) for s in mf.section)
            labels = mf.frame_labels
            if labels is None:
                labels = tuple(f"e{i}" for i in range(len(section)))
            if len(labels) != len(section) or len(mf.frame_weights) != len(section):
                raise ModelFileError("frame data must match the section length")
            bundle = EquivariantBundle(labels, mf.frame_weights, mf.twist)
            model = LocalModel(
                ring,
                weights,
                bundle,
                section,
                divisor=dict(mf.divisor),
                base_param=mf.base_parameter,
            )
            ideal = model.ideal
        return BuiltModel(ring, weights, ideal, model, None, mf)
    except PolyParseError as e:
        raise ModelFileError(f"bad polynomial: {e}") from None


def parse_hint(built: BuiltModel) -> Poly | None:
    if built.source.hint is None:
        return None
    try:
        return parse_poly(built.source.hint, built.ring)
    except PolyParseError as e:
        raise ModelFileError(f"bad hint polynomial: {e}") from None
