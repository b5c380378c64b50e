"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a dict mapping exponent tuples (one slot per ring variable) to
nonzero ``Fraction`` coefficients. Only nonzero terms are stored.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
import logging

import sympy as sp

from .exceptions import AlgebraError, ReservedVariableError

logger = logging.getLogger(__name__)

GREVLEX = 'grevlex'
GRLEX = 'grlex'
ORDER_KINDS = (GREVLEX, GRLEX)

# Formal variable used for homogenization and Hilbert series
HOMOGENIZING_NAME = 't'


@dataclass(frozen=True)
class MonomialOrder:
    """A graded monomial order on exponent tuples.

    With ``homogenizing`` set, slot 0 is the homogenization variable: after total
    degree, a larger exponent of slot 0 wins, and the remaining slots are
    compared with ``kind``.
    """
    kind: str = GREVLEX
    homogenizing: bool = False

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise AlgebraError(f"Unknown monomial order '{self.kind}'")

    def key(self, exps):
        if self.homogenizing:
            head, rest = (exps[0],), exps[1:]
        else:
            head, rest = (), exps
        if self.kind == GREVLEX:
            tail = tuple(-e for e in reversed(rest))
        else:
            tail = tuple(rest)
        return (sum(exps),) + head + tail


DEFAULT_ORDER = MonomialOrder()


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring over the rationals with an ordered tuple of variable names."""
    names: tuple
    homogenized: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'names', tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise AlgebraError(f"Duplicate variable names in {self.names}")
        user_names = self.names[1:] if self.homogenized else self.names
        if self.homogenized and (not self.names or self.names[0] != HOMOGENIZING_NAME):
            raise AlgebraError("A homogenized ring must start with the variable 't'")
        if HOMOGENIZING_NAME in user_names:
            raise ReservedVariableError("'t' is reserved and cannot name a variable")

    @property
    def ngens(self):
        return len(self.names)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise AlgebraError(f"Unknown variable '{name}'") from None

    def zero(self):
        return Polynomial(self)

    def one(self):
        return self.constant(1)

    def constant(self, value):
        return Polynomial(self, {(0,) * self.ngens: value})

    def gen(self, i):
        exps = [0] * self.ngens
        exps[i] = 1
        return Polynomial(self, {tuple(exps): 1})

    def gens(self):
        return [self.gen(i) for i in range(self.ngens)]

    def homogenization(self):
        if self.homogenized:
            raise AlgebraError("Ring is already homogenized")
        return PolyRing((HOMOGENIZING_NAME,) + self.names, homogenized=True)


def _fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, sp.Rational):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


class Polynomial:
    __slots__ = ('ring', 'terms')

    def __init__(self, ring, terms=None):
        self.ring = ring
        self.terms = {}
        if terms:
            for exps, coeff in terms.items():
                coeff = _fraction(coeff)
                if coeff != 0:
                    exps = tuple(exps)
                    if len(exps) != ring.ngens:
                        raise AlgebraError(f"Exponent {exps} does not match ring {ring.names}")
                    self.terms[exps] = coeff

    @classmethod
    def _raw(cls, ring, terms):
        poly = cls.__new__(cls)
        poly.ring = ring
        poly.terms = terms
        return poly

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise AlgebraError("Polynomials live in different rings")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        return Polynomial._raw(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            scalar = _fraction(other)
            if scalar == 0:
                return self.ring.zero()
            return Polynomial._raw(self.ring, {m: c * scalar for m, c in self.terms.items()})
        other = self._coerce(other)
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = res.get(m, 0) + c1 * c2
                if s:
                    res[m] = s
                else:
                    res.pop(m, None)
        return Polynomial._raw(self.ring, res)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise AlgebraError("Negative powers are not polynomials")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def mul_term(self, exps, coeff):
        return Polynomial._raw(
            self.ring,
            {tuple(a + b for a, b in zip(m, exps)): c * coeff for m, c in self.terms.items()},
        )

    # comparisons

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == self.ring.constant(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # inspection

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def low_degree(self):
        return min((sum(m) for m in self.terms), default=-1)

    def is_constant(self):
        return all(sum(m) == 0 for m in self.terms)

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.ngens, Fraction(0))

    def variables(self):
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return sorted(used)

    def sorted_terms(self, order=DEFAULT_ORDER):
        return sorted(self.terms.items(), key=lambda item: order.key(item[0]), reverse=True)

    def leading_term(self, order=DEFAULT_ORDER):
        if not self.terms:
            raise AlgebraError("The zero polynomial has no leading term")
        exps = max(self.terms, key=order.key)
        return exps, self.terms[exps]

    def leading_monomial(self, order=DEFAULT_ORDER):
        return self.leading_term(order)[0]

    def leading_coeff(self, order=DEFAULT_ORDER):
        return self.leading_term(order)[1]

    def homogeneous_components(self):
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(sum(m), {})[m] = c
        return {deg: Polynomial._raw(self.ring, terms) for deg, terms in sorted(parts.items())}

    def lowest_form(self):
        if not self.terms:
            return self
        low = self.low_degree()
        return Polynomial._raw(self.ring, {m: c for m, c in self.terms.items() if sum(m) == low})

    def is_homogeneous(self):
        return len({sum(m) for m in self.terms}) <= 1

    # evaluation and substitution

    def evaluate(self, values):
        values = [_fraction(v) for v in values]
        if len(values) != self.ring.ngens:
            raise AlgebraError("Point dimension does not match the ring")
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for v, e in zip(values, m):
                if e:
                    term *= v ** e
            total += term
        return total

    def translate(self, shift, ring=None):
        """Return g(y + shift), optionally relabelled into ``ring``."""
        shift = [_fraction(s) for s in shift]
        target = ring or self.ring
        if target.ngens != self.ring.ngens:
            raise AlgebraError("Translation target ring has a different number of variables")
        gens = target.gens()
        cache = {}

        def power(i, e):
            if (i, e) not in cache:
                cache[(i, e)] = (gens[i] + shift[i]) ** e
            return cache[(i, e)]

        result = target.zero()
        for m, c in self.terms.items():
            term = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def derivative(self, i):
        res = {}
        for m, c in self.terms.items():
            if m[i]:
                dm = m[:i] + (m[i] - 1,) + m[i + 1:]
                res[dm] = res.get(dm, 0) + c * m[i]
        return Polynomial(self.ring, res)

    def homogenize(self, hring):
        """Homogenize with the ring's slot-0 variable ``t``."""
        top = self.degree()
        return Polynomial._raw(hring, {(top - sum(m),) + m: c for m, c in self.terms.items()})

    def dehomogenize(self, ring):
        """Set the slot-0 variable to 1 and drop it."""
        res = {}
        for m, c in self.terms.items():
            s = res.get(m[1:], 0) + c
            if s:
                res[m[1:]] = s
            else:
                res.pop(m[1:], None)
        return Polynomial._raw(ring, res)

    # normalization

    def monic(self, order=DEFAULT_ORDER):
        lc = self.leading_coeff(order)
        return Polynomial._raw(self.ring, {m: c / lc for m, c in self.terms.items()})

    def normalized(self, order=DEFAULT_ORDER):
        """Primitive integer coefficients with a positive leading coefficient."""
        if not self.terms:
            return self
        coeffs = list(self.terms.values())
        den = reduce(lcm, (c.denominator for c in coeffs))
        num = reduce(gcd, (abs(c.numerator) * (den // c.denominator) for c in coeffs))
        factor = Fraction(den, num)
        if self.leading_coeff(order) < 0:
            factor = -factor
        return Polynomial._raw(self.ring, {m: c * factor for m, c in self.terms.items()})

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_rational(c):
    """Lowest terms "num/den", denominator dropped when 1, sign on the numerator."""
    c = _fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_rational(text):
    try:
        return _fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise AlgebraError(f"'{text}' is not a rational number") from None


def _format_monomial(names, exps):
    factors = []
    for name, e in zip(names, exps):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}**{e}")
    return '*'.join(factors)


def format_polynomial(poly, order=DEFAULT_ORDER):
    """Render in the canonical text format, terms descending under ``order``."""
    if poly.is_zero():
        return '0'
    pieces = []
    for i, (exps, c) in enumerate(poly.sorted_terms(order)):
        sign = '-' if c < 0 else '+'
        mag = abs(c)
        mono = _format_monomial(poly.ring.names, exps)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if i == 0:
            pieces.append(body if sign == '+' else f"-{body}")
        else:
            pieces.append(f"{sign} {body}")
    return ' '.join(pieces)


def parse_polynomial(text, ring):
    """Parse the canonical text format (or any sympy-readable expression)."""
    symbols = {name: sp.Symbol(name) for name in ring.names}
    try:
        expr = sp.parse_expr(text.replace('^', '**'), local_dict=symbols)
    except Exception as e:
        raise AlgebraError(f"Cannot parse polynomial '{text}': {e}") from e
    unknown = {str(s) for s in expr.free_symbols} - set(ring.names)
    if HOMOGENIZING_NAME in unknown:
        raise ReservedVariableError("'t' is reserved and cannot name a variable")
    if unknown:
        raise AlgebraError(f"Unknown variables {sorted(unknown)} in '{text}'")
    return polynomial_from_expr(expr, ring, label=text)


def polynomial_from_expr(expr, ring, label=None):
    """Convert a sympy expression in the ring's variable names to a Polynomial."""
    try:
        if not ring.names:
            return ring.constant(_fraction(sp.Rational(expr)))
        poly = sp.Poly(expr, *[sp.Symbol(name) for name in ring.names], domain='QQ')
    except Exception as e:
        raise AlgebraError(f"'{label or expr}' is not a polynomial over the rationals: {e}") from e
    return Polynomial(ring, {exps: _fraction(sp.Rational(c)) for exps, c in poly.terms()})


@dataclass(frozen=True)
class PolyIdeal:
    """A finitely generated ideal; a constant generator marks the unit ideal."""
    ring: PolyRing
    generators: tuple = field(default=())
    order: MonomialOrder = DEFAULT_ORDER

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero())
        for g in gens:
            if g.ring != self.ring:
                raise AlgebraError("Generator ring does not match ideal ring")
        object.__setattr__(self, 'generators', gens)

    @classmethod
    def unit(cls, ring, order=DEFAULT_ORDER):
        return cls(ring, (ring.one(),), order)

    @classmethod
    def zero(cls, ring, order=DEFAULT_ORDER):
        return cls(ring, (), order)

    @classmethod
    def from_text(cls, text, ring, order=DEFAULT_ORDER):
        lines = [line.strip() for line in text.splitlines()]
        return cls(ring, tuple(parse_polynomial(line, ring) for line in lines if line), order)

    def is_unit_marker(self):
        return any(g.is_constant() for g in self.generators)

    def is_zero_ideal(self):
        return not self.generators

    def is_homogeneous_generated(self):
        return all(g.is_homogeneous() for g in self.generators)

    def canonical(self):
        """Normalized, deduplicated generators in deterministic order."""
        if self.is_unit_marker():
            return PolyIdeal.unit(self.ring, self.order)
        gens = {g.normalized(self.order) for g in self.generators}
        ordered = sorted(gens, key=lambda g: (g.degree(), format_polynomial(g, self.order)))
        return PolyIdeal(self.ring, tuple(ordered), self.order)

    def __add__(self, other):
        if other.ring != self.ring:
            raise AlgebraError("Ideals live in different rings")
        return PolyIdeal(self.ring, self.generators + other.generators, self.order)

    def translated(self, shift, ring=None):
        target = ring or self.ring
        return PolyIdeal(target, tuple(g.translate(shift, target) for g in self.generators), self.order)

    def vanishes_at(self, values):
        return all(g.evaluate(values) == 0 for g in self.generators)

    def to_text(self):
        return '\n'.join(format_polynomial(g, self.order) for g in self.generators)

    def __str__(self):
        return self.to_text() or '0'
