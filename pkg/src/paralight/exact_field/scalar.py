"""Exact rational functions over Q in chart coordinates and exponential generators.

Every :class:`ScalarExpr` is a reduced fraction ``num/den`` of sparse
polynomials with rational coefficients.  Reduction divides out the polynomial
GCD and makes the denominator monic under graded-lexicographic order, so two
expressions are mathematically equal iff their ``(num, den)`` pairs are equal.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring


class FieldError(ValueError):
    """Base class for errors raised by the exact field layer."""


class UndeclaredSymbol(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class PoleError(FieldError, ZeroDivisionError):
    """The denominator vanishes at the requested evaluation point."""


@dataclass(frozen=True)
class ExpGenerator:
    """Formal symbol standing for ``exp(rate * base)``."""

    name: str
    base: str
    rate: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rate", Fraction(self.rate))
        if self.rate == 0:
            raise FieldError(f"generator {self.name!r} has zero rate")


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


class ScalarField:
    """The field Q(symbols)[generators] shared by all expressions of one problem.

    ``symbols`` are the chart coordinates followed by any extra hypersurface
    parameters; generators come last in the monomial order.
    """

    def __init__(self, symbols: Sequence[str], generators: Sequence[ExpGenerator] = ()):
        symbols = tuple(symbols)
        generators = tuple(generators)
        names = symbols + tuple(g.name for g in generators)
        if len(set(names)) != len(names):
            raise FieldError(f"duplicate symbol names in {names}")
        pairs = [(g.base, g.rate) for g in generators]
        if len(set(pairs)) != len(pairs):
            raise FieldError("two generators share the same (base, rate) pair")
        for g in generators:
            if g.base not in symbols:
                raise FieldError(f"generator {g.name!r} has undeclared base {g.base!r}")
        self.symbols = symbols
        self.generators = generators
        self.names = names
        if not names:
            raise FieldError("a field needs at least one symbol")
        self.ring, *gens = ring(",".join(names), QQ, grlex)
        self._gens = dict(zip(names, gens))
        self._index = {n: i for i, n in enumerate(names)}
        self.zero = ScalarExpr(self, self.ring.zero, self.ring.one, _reduced=True)
        self.one = ScalarExpr(self, self.ring.one, self.ring.one, _reduced=True)

    def __repr__(self):
        return f"ScalarField({list(self.symbols)}, {list(self.generators)})"

    def __contains__(self, name: str) -> bool:
        return name in self._gens

    def generator(self, name: str) -> ExpGenerator:
        for g in self.generators:
            if g.name == name:
                return g
        raise UndeclaredSymbol(name)

    def symbol(self, name: str) -> "ScalarExpr":
        try:
            p = self._gens[name]
        except KeyError:
            raise UndeclaredSymbol(f"undeclared symbol {name!r}") from None
        return ScalarExpr(self, p, self.ring.one, _reduced=True)

    def const(self, value) -> "ScalarExpr":
        if isinstance(value, ScalarExpr):
            return value
        value = Fraction(value)
        return ScalarExpr(self, self.ring(QQ(value.numerator, value.denominator)), self.ring.one,
                          _reduced=True)

    def parse(self, text: str) -> "ScalarExpr":
        from .parser import parse_expression

        return parse_expression(text, self)

    def random_polynomial(self, rng: random.Random, symbols: Sequence[str] | None = None,
                          terms: int = 3, max_degree: int = 2, max_coeff: int = 3) -> "ScalarExpr":
        symbols = list(symbols if symbols is not None else self.symbols)
        out = self.zero
        for _ in range(terms):
            c = rng.randint(-max_coeff, max_coeff)
            if c == 0:
                continue
            mono = self.const(c)
            for s in symbols:
                e = rng.randint(0, max_degree)
                if e:
                    mono = mono * self.symbol(s) ** e
            out = out + mono
        return out


class ScalarExpr:
    """Immutable element of a :class:`ScalarField`."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: ScalarField, num: PolyElement, den: PolyElement, _reduced=False):
        if not den:
            raise DivisionByZero("denominator is the zero polynomial")
        if not _reduced:
            num, den = _reduce(num, den)
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "ScalarExpr":
        if isinstance(other, ScalarExpr):
            if other.field is not self.field:
                raise FieldError("expressions belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if self.den == 1:
                return ScalarExpr(self.field, self.num + other.num, self.den, _reduced=True)
            return ScalarExpr(self.field, self.num + other.num, self.den)
        return ScalarExpr(self.field, self.num * other.den + other.num * self.den,
                          self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return ScalarExpr(self.field, -self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return self.field.zero
        if self.den == 1 and other.den == 1:
            return ScalarExpr(self.field, self.num * other.num, self.den, _reduced=True)
        # cross-cancel keeps intermediate sizes down
        a, d = _cancel(self.num, other.den)
        c, b = _cancel(other.num, self.den)
        return ScalarExpr(self.field, *_monic(a * c, b * d), _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "ScalarExpr":
        if not self.num:
            raise DivisionByZero("division by the zero expression")
        return ScalarExpr(self.field, *_monic(self.den, self.num), _reduced=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return ScalarExpr(self.field, self.num ** n, self.den ** n, _reduced=True)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self.num.terms()), tuple(self.den.terms())))
        return self._hash

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return self.den == 1 and self.num.is_ground

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise FieldError(f"{self} is not a constant")
        return _to_fraction(self.num.LC) if self.num else Fraction(0)

    def symbols_used(self) -> tuple[str, ...]:
        used = set()
        for poly in (self.num, self.den):
            for mono in poly.monoms():
                used.update(i for i, e in enumerate(mono) if e)
        return tuple(self.field.names[i] for i in sorted(used))

    # -- calculus -----------------------------------------------------------
    def diff(self, var: str) -> "ScalarExpr":
        """Partial derivative; generators based on ``var`` obey d(e^{kv})/dv = k e^{kv}."""
        if var not in self.field.symbols:
            raise UndeclaredSymbol(f"cannot differentiate by undeclared coordinate {var!r}")
        dn = _poly_diff(self.field, self.num, var)
        if self.den == 1:
            return ScalarExpr(self.field, dn, self.den, _reduced=True)
        dd = _poly_diff(self.field, self.den, var)
        return ScalarExpr(self.field, dn * self.den - self.num * dd, self.den ** 2)

    def substitute(self, mapping: Mapping[str, "ScalarExpr"]) -> "ScalarExpr":
        """Simultaneously replace symbols by expressions of the same field."""
        if not mapping:
            return self
        items = [(self.field._gens[k], v) for k, v in mapping.items()]
        if all(v.den == 1 for _, v in items):
            comp = [(g, v.num) for g, v in items]
            return ScalarExpr(self.field, self.num.compose(comp), self.den.compose(comp))
        return _substitute_poly(self.field, self.num, mapping) / _substitute_poly(
            self.field, self.den, mapping)

    # -- evaluation ---------------------------------------------------------
    def evaluate_at(self, point: Mapping[str, object],
                    generator_values: Mapping[str, object] | None = None) -> Fraction:
        values = dict(point)
        if generator_values:
            values.update(generator_values)
        vals = []
        for name in self.field.names:
            if name in values:
                vals.append(Fraction(values[name]))
            else:
                vals.append(None)
        d = _eval_poly(self.den, vals, self.field.names)
        if d == 0:
            raise PoleError(f"denominator of {self} vanishes at {values}")
        return _eval_poly(self.num, vals, self.field.names) / d

    def evaluate_numeric(self, values: Mapping[str, float]) -> float:
        """Float evaluation; ``values`` must cover every symbol used, generators included."""
        vals = [values.get(name) for name in self.field.names]
        d = _eval_poly_float(self.den, vals, self.field.names)
        if d == 0:
            raise PoleError(f"denominator of {self} vanishes numerically")
        return _eval_poly_float(self.num, vals, self.field.names) / d

    # -- printing -----------------------------------------------------------
    def __str__(self):
        n = _poly_str(self.num, self.field.names)
        if self.den == 1:
            return n
        d = _poly_str(self.den, self.field.names)
        if len(self.num.terms()) > 1 or n.startswith("-"):
            n = f"({n})"
        return f"{n}/({d})"

    def __repr__(self):
        return f"ScalarExpr({self})"


# -- polynomial helpers ------------------------------------------------------

def _cancel(p: PolyElement, q: PolyElement):
    if q == 1 or p.is_ground or q.is_ground:
        return p, q
    g = p.gcd(q)
    if g.is_ground:
        return p, q
    return p.exquo(g), q.exquo(g)


def _reduce(num: PolyElement, den: PolyElement):
    if not num:
        return num.ring.zero, num.ring.one
    return _monic(*_cancel(num, den))


def _monic(num: PolyElement, den: PolyElement):
    lc = den.LC
    if lc != 1:
        num = num.quo_ground(lc)
        den = den.quo_ground(lc)
    return num, den


def _poly_diff(field: ScalarField, p: PolyElement, var: str) -> PolyElement:
    out = p.diff(field._gens[var])
    for g in field.generators:
        if g.base == var:
            gen = field._gens[g.name]
            rate = QQ(g.rate.numerator, g.rate.denominator)
            out = out + p.diff(gen) * gen * rate
    return out


def _substitute_poly(field: ScalarField, p: PolyElement, mapping) -> ScalarExpr:
    acc = field.zero
    for mono, coeff in p.terms():
        term = field.const(_to_fraction(coeff))
        for name, e in zip(field.names, mono):
            if e:
                base = mapping.get(name)
                term = term * (base if base is not None else field.symbol(name)) ** e
        acc = acc + term
    return acc


def _eval_poly(p: PolyElement, vals: list, names) -> Fraction:
    total = Fraction(0)
    for mono, coeff in p.terms():
        term = _to_fraction(coeff)
        for i, e in enumerate(mono):
            if e:
                if vals[i] is None:
                    raise FieldError(f"no value for symbol {names[i]!r}")
                term *= vals[i] ** e
        total += term
    return total


def _eval_poly_float(p: PolyElement, vals: list, names):
    total = 0.0
    for mono, coeff in p.terms():
        term = int(coeff.numerator) / int(coeff.denominator)
        for i, e in enumerate(mono):
            if e:
                if vals[i] is None:
                    raise FieldError(f"no value for symbol {names[i]!r}")
                term = term * vals[i] ** e
        total = total + term
    return total


def _coeff_str(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _poly_str(p: PolyElement, names) -> str:
    if not p:
        return "0"
    parts = []
    for mono, coeff in p.terms():
        c = _to_fraction(coeff)
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, mono) if e]
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if not factors:
            body = _coeff_str(c)
        elif c == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_coeff_str(c)] + factors)
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- witness search ----------------------------------------------------------

def find_witness(expr: ScalarExpr, seed: int = 0, random_tries: int = 200) -> dict[str, Fraction] | None:
    """A point where ``expr`` evaluates to a nonzero rational (and its denominator is nonzero).

    Searches the grid {-2,-1,1,2} over the symbols used first, then seeded random
    rationals.  Generators get positive values, as exponentials do.
    """
    if expr.is_zero():
        return None
    field = expr.field
    used = expr.symbols_used()
    gen_names = {g.name for g in field.generators}
    axes = [(1, 2) if n in gen_names else (-2, -1, 1, 2) for n in used]
    for combo in itertools.product(*axes):
        point = dict(zip(used, map(Fraction, combo)))
        try:
            if expr.evaluate_at(point) != 0:
                return point
        except PoleError:
            continue
    rng = random.Random(seed)
    for _ in range(random_tries):
        point = {}
        for n in used:
            v = Fraction(rng.randint(-50, 50), rng.randint(1, 17))
            if n in gen_names:
                v = abs(v) + 1
            point[n] = v
        try:
            if expr.evaluate_at(point) != 0:
                return point
        except PoleError:
            continue
    return None


def as_fraction_map(values: Iterable[tuple[str, object]]) -> dict[str, Fraction]:
    return {k: Fraction(v) for k, v in values}
