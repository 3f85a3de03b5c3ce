"""Variety input model: chart parametrizations with exact coefficients.

A spec is a named affine chart map into projective space, given by
ambient+1 coordinate polynomials in the chart parameters.  Specs come
either from the generator functions below (rational normal curves,
Veronese and Segre embeddings, seeded linear projections, cones) or from
a JSON document:

    {"name": "twisted-cubic", "params": ["s"], "ambient": 3,
     "coords": ["1", "s", "s^2", "s^3"]}

Coordinate polynomials use this grammar (whitespace insignificant,
implicit multiplication not allowed):

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := rational | ident | '(' expr ')'
    rational := int ('/' uint)?
    ident    := letter (letter | digit | '_')*

Only exact rational literals are admitted; floats are rejected.  The
coordinates are used as an affine-cone lift directly, without dividing by
the chart unit: every downstream span is invariant under rescaling by a
function that does not vanish at the point, which keeps all arithmetic
polynomial.
"""

from __future__ import annotations

import hashlib
import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import PointError, SpecError
from .linalg import matrix_rank
from .polyjet import MultiPoly, index_sort_key, indices_up_to, unit_index

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


# ---------------------------------------------------------------------------
# Polynomial grammar
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # "num", "ident", "op", "end"
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("num", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append(_Token("op", ch, line, start_col))
            col += 1
            i += 1
            continue
        raise SpecError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", line, col))
    return tokens


class _PolyParser:
    """Recursive-descent parser for the polynomial grammar above."""

    def __init__(self, text: str, param_names: Sequence[str]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.vars = {name: i for i, name in enumerate(param_names)}
        self.nvars = len(param_names)

    def _peek(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _fail(self, message: str, tok: _Token):
        found = repr(tok.text) if tok.kind != "end" else "end of input"
        raise SpecError(f"{message} but found {found}", tok.line, tok.column)

    def _expect_uint(self, context: str) -> int:
        tok = self._peek()
        if tok.kind != "num":
            self._fail(f"expected digits {context}", tok)
        self._advance()
        return int(tok.text)

    def parse(self) -> MultiPoly:
        poly = self._expr()
        tok = self._peek()
        if tok.kind != "end":
            self._fail("expected end of expression", tok)
        return poly

    def _expr(self) -> MultiPoly:
        poly = self._term()
        while self._peek().kind == "op" and self._peek().text in "+-":
            op = self._advance().text
            rhs = self._term()
            poly = poly + rhs if op == "+" else poly - rhs
        return poly

    def _term(self) -> MultiPoly:
        poly = self._factor()
        while self._peek().kind == "op" and self._peek().text == "*":
            self._advance()
            poly = poly * self._factor()
        return poly

    def _factor(self) -> MultiPoly:
        base = self._base()
        if self._peek().kind == "op" and self._peek().text == "^":
            self._advance()
            exponent = self._expect_uint("after '^'")
            base = base**exponent
        return base

    def _rational(self, sign: int) -> MultiPoly:
        num = self._expect_uint("in a rational literal")
        den = 1
        if self._peek().kind == "op" and self._peek().text == "/":
            slash = self._advance()
            den = self._expect_uint("after '/'")
            if den == 0:
                raise SpecError("zero denominator", slash.line, slash.column)
        return MultiPoly.const(self.nvars, Fraction(sign * num, den))

    def _base(self) -> MultiPoly:
        tok = self._peek()
        if tok.kind == "op" and tok.text == "-":
            self._advance()
            after = self._peek()
            if after.kind != "num":
                self._fail("expected digits after '-'", after)
            return self._rational(-1)
        if tok.kind == "num":
            return self._rational(1)
        if tok.kind == "ident":
            self._advance()
            if tok.text not in self.vars:
                raise SpecError(f"unknown variable {tok.text!r}", tok.line, tok.column)
            return MultiPoly.variable(self.nvars, self.vars[tok.text])
        if tok.kind == "op" and tok.text == "(":
            self._advance()
            inner = self._expr()
            closing = self._peek()
            if closing.kind != "op" or closing.text != ")":
                self._fail("expected ')'", closing)
            self._advance()
            return inner
        self._fail("expected a number, a variable, or '('", tok)


def parse_polynomial(text: str, param_names: Sequence[str]) -> MultiPoly:
    return _PolyParser(text, param_names).parse()


def poly_to_string(f: MultiPoly, names: Sequence[str]) -> str:
    """Render a polynomial in the input grammar (round-trips through parse)."""
    if len(names) != f.nvars:
        raise ValueError("name count does not match variable count")
    if f.is_zero():
        return "0"
    pieces = []
    for p in sorted(f.terms, key=index_sort_key):
        c = f.terms[p]
        factors = []
        for name, e in zip(names, p):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mono = "*".join(factors)
        mag = abs(c)
        lit = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        if not mono:
            body = lit
        elif mag == 1:
            body = mono
        else:
            body = f"{lit}*{mono}"
        if not pieces:
            if c < 0:
                body = f"-{lit}*{mono}" if mono else f"-{lit}"
            pieces.append(body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces)


# ---------------------------------------------------------------------------
# Specs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VarietySpec:
    """A chart parametrization: ambient+1 coordinate polynomials in the
    chart parameters, used directly as the affine-cone lift."""

    name: str
    param_names: tuple
    ambient_dim: int
    coords: tuple

    def __post_init__(self):
        if len(self.param_names) < 1:
            raise SpecError("at least one chart parameter is required")
        for p in self.param_names:
            if not isinstance(p, str) or not _IDENT_RE.match(p):
                raise SpecError(f"invalid parameter name {p!r}")
        if len(set(self.param_names)) != len(self.param_names):
            raise SpecError("parameter names must be distinct")
        if self.ambient_dim < 1:
            raise SpecError("ambient dimension must be >= 1")
        if len(self.coords) != self.ambient_dim + 1:
            raise SpecError(
                f"expected {self.ambient_dim + 1} coordinate polynomials, "
                f"got {len(self.coords)}"
            )
        n = len(self.param_names)
        for c in self.coords:
            if not isinstance(c, MultiPoly) or c.nvars != n:
                raise SpecError("coordinate polynomial has the wrong variable count")
        if all(c.is_zero() for c in self.coords):
            raise SpecError("the coordinate map must not be identically zero")

    @property
    def nparams(self) -> int:
        return len(self.param_names)


@dataclass(frozen=True)
class ChartPoint:
    """A validated sample point: some coordinate is nonzero there and the
    order-1 jet has full rank (the chart is immersive at the point)."""

    coords: tuple
    chart_index: int


def spec_to_dict(spec: VarietySpec) -> dict:
    return {
        "name": spec.name,
        "params": list(spec.param_names),
        "ambient": spec.ambient_dim,
        "coords": [poly_to_string(c, spec.param_names) for c in spec.coords],
    }


def canonical_spec_json(spec: VarietySpec) -> str:
    return json.dumps(spec_to_dict(spec), indent=2) + "\n"


def spec_digest(spec: VarietySpec) -> str:
    return hashlib.sha256(canonical_spec_json(spec).encode("utf-8")).hexdigest()


_SCHEMA_KEYS = {"name", "params", "ambient", "coords"}


def parse_spec(text: str) -> VarietySpec:
    """Parse and fully validate a JSON spec document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    if not isinstance(doc, dict):
        raise SpecError("spec document must be a JSON object")
    unknown = sorted(set(doc) - _SCHEMA_KEYS)
    if unknown:
        raise SpecError(f"unknown spec keys: {', '.join(unknown)}")
    for key in ("params", "ambient", "coords"):
        if key not in doc:
            raise SpecError(f"missing spec key {key!r}")
    name = doc.get("name", "variety")
    if not isinstance(name, str):
        raise SpecError("spec name must be a string")
    params = doc["params"]
    if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
        raise SpecError("params must be a list of identifiers")
    ambient = doc["ambient"]
    if not isinstance(ambient, int) or isinstance(ambient, bool):
        raise SpecError("ambient must be an integer")
    raw_coords = doc["coords"]
    if not isinstance(raw_coords, list) or not all(isinstance(c, str) for c in raw_coords):
        raise SpecError("coords must be a list of polynomial strings")
    if ambient < 1:
        raise SpecError("ambient dimension must be >= 1")
    if len(raw_coords) != ambient + 1:
        raise SpecError(
            f"expected {ambient + 1} coordinate polynomials for ambient {ambient}, "
            f"got {len(raw_coords)}"
        )
    coords = []
    for i, raw in enumerate(raw_coords):
        try:
            coords.append(parse_polynomial(raw, params))
        except SpecError as exc:
            raise SpecError(f"coords[{i}]: {exc.args[0]}") from exc
    return VarietySpec(name, tuple(params), ambient, tuple(coords))


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def gen_veronese(n: int, d: int, name: str | None = None) -> VarietySpec:
    """Affine chart of the degree-d Veronese embedding of n-space: one
    coordinate per monomial of degree <= d, in the fixed graded order."""
    if n < 1 or d < 1:
        raise ValueError("gen_veronese needs n >= 1 and d >= 1")
    params = ("s",) if n == 1 else tuple(f"s{i + 1}" for i in range(n))
    coords = tuple(MultiPoly.monomial(p) for p in indices_up_to(n, d))
    return VarietySpec(name or f"veronese-{n}-{d}", params, len(coords) - 1, coords)


def gen_rnc(d: int, name: str | None = None) -> VarietySpec:
    """Rational normal curve of degree d: (1, s, s^2, ..., s^d)."""
    return gen_veronese(1, d, name=name or f"rnc{d}")


_SEGRE_LETTERS = "stuvwxyz"


def gen_segre(dims: Sequence[int], name: str | None = None) -> VarietySpec:
    """Affine chart of a Segre product: coordinates are all products of one
    affine coordinate (1 or a parameter) from each factor."""
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise ValueError("gen_segre needs a nonempty list of factor dimensions >= 1")
    params: list[str] = []
    factor_param_idx: list[list[int]] = []
    for i, d in enumerate(dims):
        letter = _SEGRE_LETTERS[i] if i < len(_SEGRE_LETTERS) else f"x{i}"
        names = [letter] if d == 1 else [f"{letter}{j + 1}" for j in range(d)]
        factor_param_idx.append(list(range(len(params), len(params) + d)))
        params.extend(names)
    n = len(params)
    one = MultiPoly.const(n, 1)
    option_lists = [
        [one] + [MultiPoly.variable(n, j) for j in idxs] for idxs in factor_param_idx
    ]
    coords = []
    # reversed() makes the first factor vary fastest: (1, s, t, s*t) for (1, 1)
    for combo in product(*reversed(option_lists)):
        c = one
        for f in combo:
            c = c * f
        coords.append(c)
    ambient = 1
    for d in dims:
        ambient *= d + 1
    ambient -= 1
    label = name or ("segre-" + "-".join(str(d) for d in dims))
    return VarietySpec(label, tuple(params), ambient, tuple(coords))


def gen_projection(
    src: VarietySpec, target_dim: int, seed: int, bound: int = 10, name: str | None = None
) -> VarietySpec:
    """Image of the chart under a seeded random integer linear projection.

    The (target_dim+1) x (ambient+1) matrix has entries drawn uniformly
    from [-bound, bound]; identical seeds reproduce identical specs.
    """
    if not 1 <= target_dim < src.ambient_dim:
        raise ValueError("target dimension must satisfy 1 <= target < source ambient")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    rng = random.Random(f"projection:{seed}")
    zero = MultiPoly.zero(src.nparams)
    coords = []
    for _ in range(target_dim + 1):
        acc = zero
        for c in src.coords:
            acc = acc + rng.randint(-bound, bound) * c
        coords.append(acc)
    label = name or f"{src.name}-to-p{target_dim}"
    return VarietySpec(label, src.param_names, target_dim, tuple(coords))


def gen_cone(base: VarietySpec, name: str | None = None) -> VarietySpec:
    """Cone over the base: one fresh parameter w, one fresh coordinate w."""
    w = "w"
    suffix = 0
    while w in base.param_names:
        suffix += 1
        w = f"w{suffix}"
    params = base.param_names + (w,)
    n = len(params)
    coords = tuple(c.with_vars_appended(1) for c in base.coords) + (
        MultiPoly.variable(n, n - 1),
    )
    return VarietySpec(name or f"cone-{base.name}", params, base.ambient_dim + 1, coords)


def plane_in_p4(name: str = "plane-in-p4") -> VarietySpec:
    """A 2-plane embedded linearly in P^4 with two dead coordinates; the
    standard degenerate member of the built-in corpus."""
    n = 2
    coords = (
        MultiPoly.const(n, 1),
        MultiPoly.variable(n, 0),
        MultiPoly.variable(n, 1),
        MultiPoly.zero(n),
        MultiPoly.zero(n),
    )
    return VarietySpec(name, ("s1", "s2"), 4, coords)


def builtin_corpus() -> dict[str, VarietySpec]:
    """The named standard examples used by tests and `audit`."""
    return {
        "twisted-cubic": gen_rnc(3, name="twisted-cubic"),
        "rnc4": gen_rnc(4),
        "quadric-surface": gen_segre((1, 1), name="quadric-surface"),
        "veronese-2-2": gen_veronese(2, 2),
        "segre-1-2": gen_segre((1, 2)),
        "plane-in-p4": plane_in_p4(),
    }


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------


def validate_point(spec: VarietySpec, x: Sequence, chart="auto") -> ChartPoint:
    """Check that x is a usable sample point and pick its chart index.

    Rejects base points (all coordinates vanish, or the requested chart
    coordinate vanishes) and non-immersive points (order-1 jet rank below
    nparams + 1).
    """
    if len(x) != spec.nparams:
        raise ValueError(f"expected {spec.nparams} coordinates, got {len(x)}")
    coords = tuple(Fraction(c) for c in x)
    values = [c.evaluate(coords) for c in spec.coords]
    if chart == "auto":
        chart_index = next((j for j, v in enumerate(values) if v), None)
        if chart_index is None:
            raise PointError(f"base point: every coordinate of {spec.name!r} vanishes there")
    else:
        chart_index = int(chart)
        if not 0 <= chart_index <= spec.ambient_dim:
            raise ValueError(f"chart index {chart_index} out of range")
        if not values[chart_index]:
            raise PointError(f"chart coordinate {chart_index} vanishes at the point")
    n = spec.nparams
    rows = [values]
    for i in range(n):
        e = unit_index(n, i)
        rows.append([c.hasse_derivative(e).evaluate(coords) for c in spec.coords])
    if matrix_rank(rows) != n + 1:
        raise PointError("non-immersive point: order-1 jet rank is below nparams + 1")
    return ChartPoint(coords, chart_index)
