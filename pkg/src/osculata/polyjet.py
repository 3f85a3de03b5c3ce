"""Exact multivariate polynomials with divided-power derivative operators.

Coefficients are `fractions.Fraction`: arbitrary precision, always reduced,
positive denominator, so no computation ever overflows or rounds.  A
polynomial in n variables is a sparse map from exponent tuples to nonzero
coefficients; the zero polynomial stores no terms.

Two derivative conventions coexist and must not be confused:

* ``hasse_derivative(f, p)`` applies the divided-power operator acting on
  a monomial by  s^q -> C(q1,p1)*...*C(qn,pn) * s^(q-p).  These operators
  extract the coefficients of the shifted expansion,

      f(x + h) = sum_p  hasse_derivative(f, p)(x) * h^p,

  which is also why no factorials appear downstream in jet rows.
* ``directional_derivative(f, u)`` is the ordinary first derivative
  sum_i u_i * df/ds_i, with no divided-power scaling.

The two interact through  d/ds_i (D_p f) == (p_i + 1) * D_{p+e_i} f.

Multi-indices are ordered by total degree first and by exponent tuple in
descending lexicographic order within a degree; for two variables this
gives (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...  The order is fixed
package-wide: jet-table rows and report output rely on it.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Sequence

Rational = Fraction
MultiIndex = tuple


def total_degree(p: MultiIndex) -> int:
    return sum(p)


def index_sort_key(p: MultiIndex):
    """Sort key realizing the package-wide multi-index order."""
    return (sum(p), tuple(-e for e in p))


def indices_of_degree(nvars: int, degree: int) -> list[MultiIndex]:
    """All exponent tuples of the given total degree, lex-descending."""
    if nvars < 1:
        raise ValueError("nvars must be >= 1")
    if degree < 0:
        return []
    if nvars == 1:
        return [(degree,)]
    out = []
    for head in range(degree, -1, -1):
        for tail in indices_of_degree(nvars - 1, degree - head):
            out.append((head,) + tail)
    return out


def indices_up_to(nvars: int, order: int) -> list[MultiIndex]:
    """All exponent tuples of total degree <= order, in the fixed order."""
    out = []
    for d in range(order + 1):
        out.extend(indices_of_degree(nvars, d))
    return out


def unit_index(nvars: int, i: int) -> MultiIndex:
    e = [0] * nvars
    e[i] = 1
    return tuple(e)


def add_index(p: MultiIndex, q: MultiIndex) -> MultiIndex:
    return tuple(a + b for a, b in zip(p, q))


class MultiPoly:
    """Sparse multivariate polynomial over the rationals.

    Instances are immutable by convention: no method mutates ``terms``
    after construction, so values are safe to share across threads.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[MultiIndex, Rational] | None = None):
        if nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        clean: dict[MultiIndex, Fraction] = {}
        for p, c in (terms or {}).items():
            key = tuple(int(e) for e in p)
            if len(key) != nvars or any(e < 0 for e in key):
                raise ValueError(f"bad exponent tuple {p!r} for {nvars} variable(s)")
            coeff = Fraction(c)
            if coeff:
                clean[key] = coeff
        self.nvars = nvars
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, value) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for {nvars} variable(s)")
        return cls(nvars, {unit_index(nvars, i): Fraction(1)})

    @classmethod
    def monomial(cls, exponents: MultiIndex, coeff=1) -> "MultiPoly":
        exponents = tuple(int(e) for e in exponents)
        return cls(len(exponents), {exponents: Fraction(coeff)})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(p) for p in self.terms), default=-1)

    def is_homogeneous(self, degree: int) -> bool:
        return all(sum(p) == degree for p in self.terms)

    def with_vars_appended(self, extra: int) -> "MultiPoly":
        """The same polynomial viewed in ``nvars + extra`` variables."""
        if extra < 0:
            raise ValueError("extra must be >= 0")
        pad = (0,) * extra
        return MultiPoly(self.nvars + extra, {p + pad: c for p, c in self.terms.items()})

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable-count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, Fraction(0)) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            scale = Fraction(other)
            return MultiPoly(self.nvars, {p: c * scale for p, c in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[MultiIndex, Fraction] = {}
        for p, a in self.terms.items():
            for q, b in other.terms.items():
                key = add_index(p, q)
                out[key] = out.get(key, Fraction(0)) + a * b
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial exponents must be non-negative integers")
        result = MultiPoly.const(self.nvars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        coerced = self._coerce(other) if isinstance(other, (int, Fraction)) else other
        if not isinstance(coerced, MultiPoly):
            return NotImplemented
        return self.nvars == coerced.nvars and self.terms == coerced.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"MultiPoly({self.nvars}, 0)"
        parts = [
            f"{c}*s^{p}" for p, c in sorted(self.terms.items(), key=lambda t: index_sort_key(t[0]))
        ]
        return f"MultiPoly({self.nvars}, {' + '.join(parts)})"

    # -- evaluation and derivatives ----------------------------------------

    def evaluate(self, xs: Sequence[Rational]) -> Fraction:
        if len(xs) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(xs)}")
        vals = [Fraction(x) for x in xs]
        total = Fraction(0)
        for p, c in self.terms.items():
            term = c
            for x, e in zip(vals, p):
                if e:
                    term *= x**e
            total += term
        return total

    def hasse_derivative(self, p: MultiIndex) -> "MultiPoly":
        p = tuple(int(e) for e in p)
        if len(p) != self.nvars or any(e < 0 for e in p):
            raise ValueError(f"bad derivative multi-index {p!r} for {self.nvars} variable(s)")
        out: dict[MultiIndex, Fraction] = {}
        for q, c in self.terms.items():
            if all(qi >= pi for qi, pi in zip(q, p)):
                coeff = c
                for qi, pi in zip(q, p):
                    if pi:
                        coeff *= math.comb(qi, pi)
                out[tuple(qi - pi for qi, pi in zip(q, p))] = coeff
        return MultiPoly(self.nvars, out)

    def partial(self, i: int) -> "MultiPoly":
        """Ordinary partial derivative with respect to variable i."""
        if not 0 <= i < self.nvars:
            raise ValueError(f"variable index {i} out of range")
        out: dict[MultiIndex, Fraction] = {}
        for q, c in self.terms.items():
            if q[i]:
                key = list(q)
                key[i] -= 1
                out[tuple(key)] = c * q[i]
        return MultiPoly(self.nvars, out)

    def directional_derivative(self, u: Sequence[Rational]) -> "MultiPoly":
        if len(u) != self.nvars:
            raise ValueError(f"expected {self.nvars} direction components, got {len(u)}")
        weights = [Fraction(x) for x in u]
        out: dict[MultiIndex, Fraction] = {}
        for q, c in self.terms.items():
            for i, w in enumerate(weights):
                if w and q[i]:
                    key = list(q)
                    key[i] -= 1
                    key = tuple(key)
                    out[key] = out.get(key, Fraction(0)) + c * q[i] * w
        return MultiPoly(self.nvars, out)

    def taylor_shift(self, xs: Sequence[Rational]) -> dict[MultiIndex, Fraction]:
        """Coefficients of f(x + h) as a polynomial in the offsets h.

        Computed by substituting s_i -> x_i + h_i and expanding with plain
        polynomial arithmetic; no binomial shortcut is used, which keeps it
        an independent cross-check for `hasse_derivative` (the entry at p
        equals the value of D_p(f) at x).
        """
        if len(xs) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(xs)}")
        shifts = [
            MultiPoly.const(self.nvars, x) + MultiPoly.variable(self.nvars, i)
            for i, x in enumerate(xs)
        ]
        expanded = MultiPoly.zero(self.nvars)
        for q, c in self.terms.items():
            term = MultiPoly.const(self.nvars, c)
            for i, e in enumerate(q):
                if e:
                    term = term * shifts[i] ** e
            expanded = expanded + term
        return dict(expanded.terms)


# Functional aliases for the operation surface.


def hasse_derivative(f: MultiPoly, p: MultiIndex) -> MultiPoly:
    return f.hasse_derivative(p)


def evaluate(f: MultiPoly, xs: Sequence[Rational]) -> Fraction:
    return f.evaluate(xs)


def taylor_shift(f: MultiPoly, xs: Sequence[Rational]) -> dict[MultiIndex, Fraction]:
    return f.taylor_shift(xs)


def directional_derivative(f: MultiPoly, u: Sequence[Rational]) -> MultiPoly:
    return f.directional_derivative(u)
