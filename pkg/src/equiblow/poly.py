"""Exact multivariate polynomial arithmetic over the rationals.

Polynomials are immutable values: a ring is an ordered tuple of variable
names, a monomial is a tuple of non-negative exponents (one per ring
variable), and a polynomial stores a map monomial -> nonzero Fraction.
All arithmetic is exact; nothing here ever touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Mono = tuple  # exponent vector, length == number of ring variables


# ---------------------------------------------------------------------------
# monomial helpers


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Mono, b: Mono) -> Mono | None:
    """a / b, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mono_divides(b: Mono, a: Mono) -> bool:
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Mono) -> int:
    return sum(a)


def mono_coprime(a: Mono, b: Mono) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """A total order on monomials, exposed as a sort key.

    Larger key means larger monomial.  The block order puts the first
    ``block`` variables in a dominating block, which is what ideal
    elimination needs: if the leading monomial of a polynomial avoids
    the block, the whole polynomial does.
    """

    __slots__ = ("name", "block")

    def __init__(self, name: str, block: int = 0):
        if name not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {name!r}")
        self.name = name
        self.block = block

    def key(self, m: Mono):
        if self.name == "degrevlex":
            return (sum(m),) + tuple(-e for e in reversed(m))
        if self.name == "lex":
            return m
        head, tail = m[: self.block], m[self.block :]
        return (
            (sum(head),)
            + tuple(-e for e in reversed(head))
            + (sum(tail),)
            + tuple(-e for e in reversed(tail))
        )

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.name == other.name
            and self.block == other.block
        )

    def __hash__(self):
        return hash((self.name, self.block))

    def __repr__(self):
        if self.name == "block":
            return f"MonomialOrder('block', {self.block})"
        return f"MonomialOrder({self.name!r})"


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def block_order(first: int) -> MonomialOrder:
    """Elimination order: the first ``first`` ring variables dominate."""
    if first < 0:
        raise ValueError("block size must be non-negative")
    return MonomialOrder("block", first)


# ---------------------------------------------------------------------------
# rings


class Ring:
    """An ordered tuple of variable names fixing the polynomial ring."""

    __slots__ = ("names", "index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        seen = set()
        for nm in names:
            if not nm or not (nm[0].isalpha() or nm[0] == "_"):
                raise ValueError(f"bad variable name {nm!r}")
            if nm in seen:
                raise ValueError(f"duplicate variable name {nm!r}")
            seen.add(nm)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "index", {nm: i for i, nm in enumerate(names)})

    def __setattr__(self, *a):
        raise AttributeError("Ring is immutable")

    @property
    def n(self) -> int:
        return len(self.names)

    def var(self, name: str) -> "Poly":
        i = self.index[name]
        mono = tuple(1 if j == i else 0 for j in range(self.n))
        return Poly(self, {mono: Fraction(1)})

    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.var(nm) for nm in self.names)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return Poly(self, {(0,) * self.n: c})

    def without(self, names: Iterable[str]) -> "Ring":
        drop = set(names)
        missing = drop - set(self.names)
        if missing:
            raise ValueError(f"not ring variables: {sorted(missing)}")
        return Ring(nm for nm in self.names if nm not in drop)

    def adjoin_front(self, names: Iterable[str]) -> "Ring":
        return Ring(tuple(names) + self.names)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Ring({', '.join(self.names)})"


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Mono, Fraction]):
        clean = {}
        for m, c in terms.items():
            c = Fraction(c)
            if c != 0:
                clean[m] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_coefficient(self) -> Fraction:
        return self.terms.get((0,) * self.ring.n, Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def variables_used(self) -> set:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    def coeff(self, m: Mono) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> Mono:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = DEGREVLEX) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "Poly":
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        return self * Fraction(1, 1) / lc

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, Fraction(0)) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero()
            return Poly(self.ring, {m: cc * c for m, cc in self.terms.items()})
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = Fraction(other)
        return self * Fraction(1, 1) * Fraction(c.denominator, c.numerator)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def term_mul(self, m: Mono, c: Fraction) -> "Poly":
        """Multiply by the single term c * x^m."""
        c = Fraction(c)
        if c == 0:
            return self.ring.zero()
        return Poly(self.ring, {mono_mul(mm, m): cc * c for mm, cc in self.terms.items()})

    # -- calculus and evaluation -------------------------------------------

    def derivative(self, var: int | str) -> "Poly":
        i = self.ring.index[var] if isinstance(var, str) else var
        out: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1 :]
                out[mm] = out.get(mm, Fraction(0)) + c * e
        return Poly(self.ring, out)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.ring.n:
            raise ValueError("point length does not match ring")
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for x, e in zip(pt, m):
                if e:
                    val *= x**e
            total += val
        return total

    def subs(self, images: Sequence["Poly"], target: Ring) -> "Poly":
        """Substitute images[i] for the i-th ring variable.

        All images must live in ``target``.  Powers are cached per
        variable so repeated exponents do not recompute products.
        """
        if len(images) != self.ring.n:
            raise ValueError("need one image per ring variable")
        for im in images:
            if im.ring != target:
                raise ValueError("image outside the target ring")
        pow_cache: list[dict[int, Poly]] = [dict() for _ in range(self.ring.n)]

        def power(i: int, e: int) -> Poly:
            cache = pow_cache[i]
            if e not in cache:
                cache[e] = images[i] ** e
            return cache[e]

        total = target.zero()
        for m, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    def rename_ring(self, target: Ring) -> "Poly":
        """Carry the polynomial into a ring with the same variable names.

        Variables may appear at new positions; names absent from the
        target must be unused.  Used to move between a ring and its
        sub- or super-rings.
        """
        if target == self.ring:
            return self
        pos = []
        for i, nm in enumerate(self.ring.names):
            pos.append(target.index.get(nm, -1))
        out: dict = {}
        for m, c in self.terms.items():
            mm = [0] * target.n
            for i, e in enumerate(m):
                if not e:
                    continue
                j = pos[i]
                if j < 0:
                    raise ValueError(
                        f"variable {self.ring.names[i]!r} used but absent from target ring"
                    )
                mm[j] = e
            out[tuple(mm)] = c
        return Poly(target, out)

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return (
            isinstance(other, Poly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.ring, tuple(sorted(self.terms.items()))))
            object.__setattr__(self, "_hash", h)
        return h

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX) -> list[tuple[Mono, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0]), reverse=True)

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return f"Poly({poly_str(self)})"


def divide_exact(p: Poly, d: Poly, order: MonomialOrder = DEGREVLEX) -> Poly | None:
    """Exact quotient p / d, or None when d does not divide p."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = p.ring
    lm = d.leading_monomial(order)
    lc = d.leading_coefficient(order)
    q = ring.zero()
    r = p
    while not r.is_zero():
        m = r.leading_monomial(order)
        quot = mono_div(m, lm)
        if quot is None:
            return None
        c = r.terms[m] / lc
        q = q + Poly(ring, {quot: c})
        r = r - d.term_mul(quot, c)
    return q


# ---------------------------------------------------------------------------
# parsing and printing
#
# Grammar (whitespace ignored):
#   expr    ::= ['+'|'-'] product (('+'|'-') product)*
#   product ::= factor ('*' factor)*
#   factor  ::= atom ['^' nonneg-int]
#   atom    ::= rational | name | '(' expr ')'
#   rational::= int ['/' positive-int]
# Multiplication is always explicit; 'xy' is a single name.

from .errors import PolyParseError


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.toks: list[tuple[str, str, int]] = []
        self._lex()
        self.i = 0

    def _lex(self):
        text, n = self.text, len(self.text)
        pos = 0
        while pos < n:
            ch = text[pos]
            if ch.isspace():
                pos += 1
                continue
            if ch.isdigit():
                start = pos
                while pos < n and text[pos].isdigit():
                    pos += 1
                self.toks.append(("int", text[start:pos], start))
                continue
            if ch.isalpha() or ch == "_":
                start = pos
                while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                    pos += 1
                self.toks.append(("name", text[start:pos], start))
                continue
            if ch in "+-*^()/":
                self.toks.append((ch, ch, pos))
                pos += 1
                continue
            raise PolyParseError(f"unexpected character {ch!r}", pos)
        self.toks.append(("end", "", n))

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str | None = None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise PolyParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok


def parse_poly(text: str, ring: Ring) -> Poly:
    """Parse polynomial text over the given ring's variables."""
    toks = _Tokens(text)

    def parse_rational(first: tuple) -> Fraction:
        num = int(first[1])
        if toks.peek()[0] == "/":
            toks.take("/")
            den_tok = toks.take("int")
            den = int(den_tok[1])
            if den == 0:
                raise PolyParseError("zero denominator", den_tok[2])
            return Fraction(num, den)
        return Fraction(num)

    def parse_atom() -> Poly:
        tok = toks.peek()
        if tok[0] == "int":
            toks.take()
            return ring.const(parse_rational(tok))
        if tok[0] == "name":
            toks.take()
            if tok[1] not in ring.index:
                raise PolyParseError(f"undeclared variable {tok[1]!r}", tok[2])
            return ring.var(tok[1])
        if tok[0] == "(":
            toks.take()
            inner = parse_expr()
            toks.take(")")
            return inner
        raise PolyParseError(f"expected a term, found {tok[1]!r}", tok[2])

    def parse_factor() -> Poly:
        base = parse_atom()
        if toks.peek()[0] == "^":
            toks.take()
            etok = toks.peek()
            if etok[0] == "-":
                raise PolyParseError("negative exponent", etok[2])
            etok = toks.take("int")
            return base ** int(etok[1])
        return base

    def parse_product() -> Poly:
        p = parse_factor()
        while toks.peek()[0] == "*":
            toks.take()
            p = p * parse_factor()
        return p

    def parse_expr() -> Poly:
        sign = 1
        if toks.peek()[0] in ("+", "-"):
            sign = -1 if toks.take()[0] == "-" else 1
        p = parse_product() * sign
        while toks.peek()[0] in ("+", "-"):
            op = toks.take()[0]
            q = parse_product()
            p = p + q if op == "+" else p - q
        return p

    result = parse_expr()
    end = toks.peek()
    if end[0] != "end":
        raise PolyParseError(f"trailing input {end[1]!r}", end[2])
    return result


def _mono_str(m: Mono, ring: Ring) -> str:
    parts = []
    for nm, e in zip(ring.names, m):
        if e == 1:
            parts.append(nm)
        elif e > 1:
            parts.append(f"{nm}^{e}")
    return "*".join(parts)


def poly_str(p: Poly) -> str:
    """Canonical text form; terms in descending degrevlex order.

    parse_poly(poly_str(p), p.ring) == p for every p.
    """
    if p.is_zero():
        return "0"
    chunks = []
    for i, (m, c) in enumerate(p.sorted_terms(DEGREVLEX)):
        mono = _mono_str(m, p.ring)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            chunks.append(f"-{body}" if c < 0 else body)
        else:
            chunks.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(chunks)
