"""
Exact arithmetic kernel.

Multivariate polynomials over Q (MPoly), power series truncated at t^K
(TruncSeries), arcs (vectors of truncated series), polynomial matrices with
their minors, and the text parser used by every input file format.
Coefficients are Fractions throughout; a truncated series may also carry
MPoly coefficients when an arc depends on symbolic parameters.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

import sympy

Rational = Fraction


# --- Errors ---

class ParseError(ValueError):
    """Malformed polynomial or input-file text."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class VariableMismatchError(ValueError):
    """Polynomials, arcs or maps disagree on their variables."""


class PreconditionError(ValueError):
    """An operation was called outside its domain."""


class CapTooSmallError(RuntimeError):
    """The truncation cap is too low to certify the requested result."""


def to_rational(value):
    """Convert int / Fraction / 'p' / 'p/q' text into a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not re.fullmatch(r'[-+]?\d+(/\d+)?', text):
            raise ParseError(f"'{value}' is not an integer or rational p/q")
        result = Fraction(text)
        return result
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


# --- Monomial orders ---

def _degrevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


ORDER_NAMES = ('lex', 'deglex', 'degrevlex', 'elim')


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given as a sort key on exponent tuples.

    'elim' is the block order that compares the exponents at `block` first
    (degrevlex) and the remaining exponents second (degrevlex).
    """
    name: str = 'degrevlex'
    block: tuple = ()

    def __post_init__(self):
        if self.name not in ORDER_NAMES:
            raise ValueError(f"Unknown monomial order '{self.name}'")
        if self.name == 'elim' and not self.block:
            raise ValueError("an elimination order needs a non-empty block")

    def key(self, exps):
        if self.name == 'degrevlex':
            return _degrevlex_key(exps)
        if self.name == 'lex':
            return exps
        if self.name == 'deglex':
            return (sum(exps), exps)
        first = tuple(exps[i] for i in self.block)
        rest = tuple(e for i, e in enumerate(exps) if i not in self.block)
        return (_degrevlex_key(first), _degrevlex_key(rest))

    @classmethod
    def elimination(cls, variables, removed):
        removed = set(removed)
        block = tuple(i for i, name in enumerate(variables) if name in removed)
        return cls('elim', block)

    def __str__(self):
        return self.name if self.name != 'elim' else f"elim{list(self.block)}"


DEGREVLEX = MonomialOrder()


# --- Multivariate polynomials ---

class MPoly:
    """Sparse polynomial over Q in an ordered tuple of named variables.

    `terms` maps exponent tuples to nonzero Fractions. Values are treated as
    immutable once built.
    """

    __slots__ = ('variables', 'terms')

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise VariableMismatchError(f"repeated variable in {self.variables}")
        width = len(self.variables)
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != width:
                raise VariableMismatchError(
                    f"exponent vector {exps} does not match variables {self.variables}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            coeff = to_rational(coeff)
            if coeff:
                clean[exps] = clean.get(exps, 0) + coeff
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    @classmethod
    def _make(cls, variables, terms):
        poly = cls.__new__(cls)
        poly.variables = variables
        poly.terms = terms
        return poly

    # constructors
    @classmethod
    def zero(cls, variables):
        return cls._make(tuple(variables), {})

    @classmethod
    def constant(cls, value, variables):
        variables = tuple(variables)
        value = to_rational(value)
        return cls._make(variables, {(0,) * len(variables): value} if value else {})

    @classmethod
    def one(cls, variables):
        return cls.constant(1, variables)

    @classmethod
    def var(cls, name, variables):
        variables = tuple(variables)
        if name not in variables:
            raise VariableMismatchError(f"'{name}' is not one of {variables}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls._make(variables, {exps: Fraction(1)})

    # inspection
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or list(self.terms) == [(0,) * len(self.variables)]

    def constant_value(self):
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def used_variables(self):
        return tuple(v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms))

    def leading_term(self, order=DEGREVLEX):
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        exps = max(self.terms, key=order.key)
        return exps, self.terms[exps]

    def leading_monomial(self, order=DEGREVLEX):
        return self.leading_term(order)[0]

    def monic(self, order=DEGREVLEX):
        if not self.terms:
            return self
        _, lc = self.leading_term(order)
        return self.scale(1 / lc)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.variables != self.variables:
                raise VariableMismatchError(
                    f"ring mismatch: {self.variables} vs {other.variables}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MPoly.constant(other, self.variables)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            total = terms.get(exps, 0) + coeff
            if total:
                terms[exps] = total
            else:
                terms.pop(exps, None)
        return MPoly._make(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._make(self.variables, {e: -c for e, c in self.terms.items()})

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

    def scale(self, factor):
        factor = to_rational(factor)
        if not factor:
            return MPoly.zero(self.variables)
        return MPoly._make(self.variables, {e: c * factor for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                total = terms.get(exps, 0) + c1 * c2
                if total:
                    terms[exps] = total
                else:
                    del terms[exps]
        return MPoly._make(self.variables, terms)

    __rmul__ = __mul__

    def mul_term(self, exps, coeff):
        """Multiply by the single term coeff * x^exps."""
        return MPoly._make(self.variables, {
            tuple(a + b for a, b in zip(e, exps)): c * coeff for e, c in self.terms.items()})

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = MPoly.one(self.variables)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.terms == MPoly.constant(other, self.variables).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MPoly({format_poly(self)!r}, vars={list(self.variables)})"

    def __str__(self):
        return format_poly(self)

    # calculus and substitution
    def diff(self, name):
        i = self.variables.index(name)
        terms = {}
        for exps, coeff in self.terms.items():
            if exps[i]:
                lowered = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
                terms[lowered] = coeff * exps[i]
        return MPoly._make(self.variables, terms)

    def substitute(self, values, zero=None):
        """Evaluate with `values[i]` in place of variable i.

        Values may be Fractions, MPolys of another ring or TruncSeries; any
        type with +, * and ** works. Powers are cached per variable.
        """
        if len(values) != len(self.variables):
            raise VariableMismatchError(
                f"{len(values)} values for {len(self.variables)} variables {self.variables}")
        cache = [{} for _ in values]

        def power(i, e):
            if e not in cache[i]:
                cache[i][e] = values[i] if e == 1 else values[i] ** e
            return cache[i][e]

        total = Fraction(0) if zero is None else zero
        for exps in sorted(self.terms, key=DEGREVLEX.key):
            product = None
            for i, e in enumerate(exps):
                if e:
                    factor = power(i, e)
                    product = factor if product is None else product * factor
            coeff = self.terms[exps]
            total = total + (coeff if product is None else product * coeff)
        return total

    def evaluate(self, point):
        """Value at a point given as a sequence or a {name: value} mapping."""
        if isinstance(point, dict):
            point = [point[name] for name in self.variables]
        return self.substitute([to_rational(v) if isinstance(v, (int, str)) else v for v in point])

    def extend(self, variables):
        """Embed into a ring whose variables contain ours (matched by name)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        try:
            positions = [variables.index(v) for v in self.variables]
        except ValueError:
            raise VariableMismatchError(f"{self.variables} is not contained in {variables}")
        terms = {}
        for exps, coeff in self.terms.items():
            wide = [0] * len(variables)
            for pos, e in zip(positions, exps):
                wide[pos] = e
            terms[tuple(wide)] = coeff
        return MPoly._make(variables, terms)

    def restrict(self, variables):
        """Drop variables that do not occur; inverse of extend."""
        variables = tuple(variables)
        positions = [self.variables.index(v) for v in variables]
        dropped = [i for i in range(len(self.variables)) if i not in positions]
        terms = {}
        for exps, coeff in self.terms.items():
            if any(exps[i] for i in dropped):
                raise VariableMismatchError(
                    f"{format_poly(self)} uses variables outside {variables}")
            terms[tuple(exps[i] for i in positions)] = coeff
        return MPoly._make(variables, terms)

    def exact_div(self, divisor, order=DEGREVLEX):
        """Quotient q with self == q * divisor; ValueError if not divisible."""
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        lead, lead_coeff = divisor.leading_term(order)
        remainder = self
        quotient = {}
        while remainder:
            exps, coeff = remainder.leading_term(order)
            shift = tuple(a - b for a, b in zip(exps, lead))
            if any(s < 0 for s in shift):
                raise ValueError(f"{format_poly(divisor)} does not divide {format_poly(self)}")
            factor = coeff / lead_coeff
            quotient[shift] = factor
            remainder = remainder - divisor.mul_term(shift, factor)
        return MPoly._make(self.variables, quotient)


# --- Polynomial text format ---

def _format_monomial(exps, variables):
    parts = []
    for name, e in zip(variables, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return '*'.join(parts)


def format_poly(poly):
    """Canonical text: terms in decreasing degrevlex order, parseable back."""
    if not poly.terms:
        return '0'
    pieces = []
    for exps in sorted(poly.terms, key=DEGREVLEX.key, reverse=True):
        coeff = poly.terms[exps]
        mono = _format_monomial(exps, poly.variables)
        if not mono:
            text = str(coeff)
        elif coeff == 1:
            text = mono
        elif coeff == -1:
            text = f"-{mono}"
        else:
            text = f"{coeff}*{mono}"
        if not pieces:
            pieces.append(text)
        elif text.startswith('-'):
            pieces.append(f" - {text[1:]}")
        else:
            pieces.append(f" + {text}")
    return ''.join(pieces)


_TOKEN_RE = re.compile(r'\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))')


def _tokenize(source):
    tokens = []
    pos = 0
    source = source.rstrip()
    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        if not match or match.end() == pos:
            bad = source[pos:].lstrip()[:1]
            raise ParseError(f"unexpected character '{bad}'", column=pos + 1)
        kind = match.lastgroup
        text = match.group(kind)
        if text == '**':
            text = '^'
        tokens.append((kind, text, match.start(kind) + 1))
        pos = match.end()
    return tokens


class _PolyParser:
    """Recursive-descent parser for sums of products of rationals and variables."""

    def __init__(self, source, variables):
        self.source = source
        self.variables = tuple(variables)
        self.tokens = _tokenize(source)
        self.index = 0

    def peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else (None, None, len(self.source) + 1)

    def take(self):
        token = self.peek()
        self.index += 1
        return token

    def parse(self):
        if not self.tokens:
            raise ParseError("empty polynomial")
        result = self.expr()
        kind, text, column = self.peek()
        if kind is not None:
            raise ParseError(f"unexpected '{text}'", column=column)
        return result

    def expr(self):
        result = self.term()
        while True:
            kind, text, _ = self.peek()
            if text == '+':
                self.take()
                result = result + self.term()
            elif text == '-':
                self.take()
                result = result - self.term()
            else:
                return result

    def term(self):
        result = self.factor()
        while True:
            kind, text, _ = self.peek()
            if text == '*':
                self.take()
                result = result * self.factor()
            elif kind == 'name' or text == '(':
                result = result * self.factor()
            else:
                return result

    def factor(self):
        kind, text, column = self.peek()
        if text in ('-', '+'):
            self.take()
            inner = self.factor()
            return -inner if text == '-' else inner
        base = self.atom()
        kind, text, _ = self.peek()
        if text == '^':
            self.take()
            kind, text, column = self.take()
            if kind != 'num':
                raise ParseError("exponent must be a nonnegative integer", column=column)
            return base ** int(text)
        return base

    def atom(self):
        kind, text, column = self.take()
        if kind == 'num':
            value = Fraction(int(text))
            if self.peek()[1] == '/':
                self.take()
                kind, text, column = self.take()
                if kind != 'num':
                    raise ParseError("denominator must be a positive integer", column=column)
                if int(text) == 0:
                    raise ParseError("zero denominator", column=column)
                value = value / int(text)
            return MPoly.constant(value, self.variables)
        if kind == 'name':
            if text not in self.variables:
                raise ParseError(f"unknown variable '{text}'", column=column)
            return MPoly.var(text, self.variables)
        if text == '(':
            inner = self.expr()
            closing = self.take()
            if closing[1] != ')':
                raise ParseError("missing ')'", column=closing[2])
            return inner
        if kind is None:
            raise ParseError("unexpected end of input", column=column)
        raise ParseError(f"unexpected '{text}'", column=column)


def parse_poly(source, variables):
    """Parse polynomial text over the given ordered variables into an MPoly."""
    return _PolyParser(source, variables).parse()


# --- Orders of truncated computations ---

@dataclass(frozen=True)
class Unresolved:
    """Order sentinel: every coefficient below `bound` vanishes.

    Deliberately not orderable against integers.
    """
    bound: int

    def __str__(self):
        return f"≥{self.bound}"


def min_order(orders):
    """Minimum of integer orders and Unresolved sentinels."""
    orders = list(orders)
    if not orders:
        raise ValueError("no orders to compare")
    exact = [o for o in orders if isinstance(o, int)]
    bounds = [o.bound for o in orders if isinstance(o, Unresolved)]
    if exact and (not bounds or min(exact) < min(bounds)):
        return min(exact)
    if exact:
        # an exact order at or beyond a sentinel's bound: only the bound is certain
        return Unresolved(min(min(bounds), min(exact)))
    return Unresolved(min(bounds))


# --- Truncated power series ---

def _ring_element(value):
    if isinstance(value, MPoly):
        return value
    return to_rational(value)


def _is_scalar(value):
    return isinstance(value, (int, Fraction, MPoly)) and not isinstance(value, bool)


class TruncSeries:
    """Power series in t known modulo t^cap (coefficients of degree < cap)."""

    __slots__ = ('cap', 'coeffs')

    def __init__(self, coeffs, cap=None):
        coeffs = [_ring_element(c) for c in coeffs]
        cap = len(coeffs) if cap is None else int(cap)
        if cap < 1:
            raise ValueError("a truncated series needs cap >= 1")
        coeffs = coeffs[:cap] + [Fraction(0)] * (cap - len(coeffs))
        self.cap = cap
        self.coeffs = tuple(coeffs)

    @classmethod
    def _make(cls, coeffs, cap):
        series = cls.__new__(cls)
        series.cap = cap
        series.coeffs = tuple(coeffs)
        return series

    @classmethod
    def zero(cls, cap):
        return cls._make([Fraction(0)] * cap, cap)

    @classmethod
    def constant(cls, value, cap):
        return cls([value], cap)

    @classmethod
    def monomial(cls, coeff, degree, cap):
        coeffs = [Fraction(0)] * cap
        if degree < cap:
            coeffs[degree] = _ring_element(coeff)
        return cls._make(coeffs, cap)

    @classmethod
    def from_poly(cls, poly, cap):
        """Series of a univariate MPoly in its only variable."""
        if len(poly.variables) != 1:
            raise VariableMismatchError(f"expected a univariate polynomial, got {poly.variables}")
        coeffs = [Fraction(0)] * cap
        for (degree,), coeff in poly.terms.items():
            if degree < cap:
                coeffs[degree] = coeff
        return cls._make(coeffs, cap)

    def __getitem__(self, degree):
        return self.coeffs[degree]

    def __len__(self):
        return self.cap

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self):
        return not any(self.coeffs)

    def order(self):
        """Lowest degree with a nonzero coefficient, or Unresolved(cap)."""
        for degree, coeff in enumerate(self.coeffs):
            if coeff:
                return degree
        return Unresolved(self.cap)

    def recap(self, cap):
        """Truncate to a lower cap, or pad with zeros reading self as a polynomial."""
        if cap <= self.cap:
            return TruncSeries._make(self.coeffs[:cap], cap)
        return TruncSeries._make(self.coeffs + (Fraction(0),) * (cap - self.cap), cap)

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            return other
        if _is_scalar(other):
            return TruncSeries.constant(other, self.cap)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        cap = min(self.cap, other.cap)
        return TruncSeries._make([self.coeffs[k] + other.coeffs[k] for k in range(cap)], cap)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._make([-c for c in self.coeffs], self.cap)

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
        if _is_scalar(other):
            return TruncSeries._make([c * other for c in self.coeffs], self.cap)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        cap = min(self.cap, other.cap)
        out = [Fraction(0)] * cap
        right = other.coeffs
        for i in range(cap):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(cap - i):
                b = right[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncSeries._make(out, cap)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("series powers need a nonnegative integer exponent")
        result = TruncSeries.constant(1, self.cap)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def shift_down(self, e):
        """Exact division by t^e; the result is known modulo t^(cap-e)."""
        if e >= self.cap:
            raise CapTooSmallError(f"cannot divide a series mod t^{self.cap} by t^{e}")
        if any(self.coeffs[:e]):
            raise PreconditionError(f"series is not divisible by t^{e}")
        return TruncSeries._make(self.coeffs[e:], self.cap - e)

    def inverse(self):
        """Inverse of a unit (nonzero constant coefficient)."""
        lead = self.coeffs[0]
        if isinstance(lead, MPoly):
            if not lead.is_constant():
                raise PreconditionError("cannot invert a series with a parametric constant term")
            lead = lead.constant_value()
        if not lead:
            raise PreconditionError("series with zero constant term is not invertible")
        inv_lead = 1 / lead
        out = [inv_lead]
        for k in range(1, self.cap):
            acc = Fraction(0)
            for i in range(1, k + 1):
                if self.coeffs[i]:
                    acc = acc + self.coeffs[i] * out[k - i]
            out.append(-acc * inv_lead)
        return TruncSeries._make(out, self.cap)

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self.cap == other.cap and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.cap, self.coeffs))

    def __str__(self):
        return f"{format_series(self)} mod t^{self.cap}"

    def __repr__(self):
        return f"TruncSeries({format_series(self)!r}, cap={self.cap})"


def format_series(series, var='t'):
    pieces = []
    for degree, coeff in enumerate(series.coeffs):
        if not coeff:
            continue
        mono = '' if degree == 0 else (var if degree == 1 else f"{var}^{degree}")
        if isinstance(coeff, MPoly) and not coeff.is_constant():
            ctext = format_poly(coeff)
            if len(coeff.terms) > 1:
                ctext = f"({ctext})"
            text = ctext if not mono else f"{ctext}*{mono}"
        else:
            value = coeff.constant_value() if isinstance(coeff, MPoly) else coeff
            if not mono:
                text = str(value)
            elif value == 1:
                text = mono
            elif value == -1:
                text = f"-{mono}"
            else:
                text = f"{value}*{mono}"
        if not pieces:
            pieces.append(text)
        elif text.startswith('-'):
            pieces.append(f" - {text[1:]}")
        else:
            pieces.append(f" + {text}")
    return ''.join(pieces) or '0'


class Arc:
    """A vector of truncated series sharing one cap: gamma modulo t^cap."""

    __slots__ = ('components',)

    def __init__(self, components):
        components = tuple(components)
        if not components:
            raise ValueError("an arc needs at least one component")
        caps = {c.cap for c in components}
        if len(caps) != 1:
            raise ValueError(f"arc components disagree on the cap: {sorted(caps)}")
        self.components = components

    @classmethod
    def from_coefficients(cls, rows, cap=None):
        rows = [list(r) for r in rows]
        cap = cap or max(len(r) for r in rows)
        return cls(TruncSeries(r, cap) for r in rows)

    @property
    def cap(self):
        return self.components[0].cap

    @property
    def level(self):
        """n such that this arc is an n-jet (cap = n + 1)."""
        return self.cap - 1

    def point(self):
        return tuple(c.coeffs[0] for c in self.components)

    def recap(self, cap):
        return Arc(c.recap(cap) for c in self.components)

    def coefficient_rows(self):
        return [list(c.coeffs) for c in self.components]

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, index):
        return self.components[index]

    def __add__(self, other):
        if not isinstance(other, Arc) or len(other) != len(self):
            return NotImplemented
        return Arc(a + b for a, b in zip(self.components, other.components))

    def __sub__(self, other):
        if not isinstance(other, Arc) or len(other) != len(self):
            return NotImplemented
        return Arc(a - b for a, b in zip(self.components, other.components))

    def __eq__(self, other):
        if isinstance(other, Arc):
            return self.components == other.components
        return NotImplemented

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        return f"({', '.join(format_series(c) for c in self.components)}) mod t^{self.cap}"

    def __repr__(self):
        return f"Arc({self})"


def substitute_series(poly, arc):
    """f(gamma(t)) modulo t^K, one arc component per variable of f."""
    if len(arc) != len(poly.variables):
        raise VariableMismatchError(
            f"arc has {len(arc)} components but {format_poly(poly)} has "
            f"{len(poly.variables)} variables {poly.variables}")
    result = poly.substitute(list(arc.components), zero=TruncSeries.zero(arc.cap))
    if not isinstance(result, TruncSeries):
        result = TruncSeries.constant(result, arc.cap)
    return result


# --- Matrices and minors ---

def determinant(rows):
    """Determinant by Laplace expansion, generic over the entry ring."""
    size = len(rows)
    if size == 0:
        return Fraction(1)
    if any(len(r) != size for r in rows):
        raise ValueError("determinant of a non-square matrix")
    memo = {}

    def expand(r, cols):
        if r == size - 1:
            return rows[r][cols[0]]
        if cols in memo:
            return memo[cols]
        total = rows[r][cols[0]] - rows[r][cols[0]]
        for pos, c in enumerate(cols):
            entry = rows[r][c]
            if not entry:
                continue
            term = entry * expand(r + 1, cols[:pos] + cols[pos + 1:])
            total = total + term if pos % 2 == 0 else total - term
        memo[cols] = total
        return total

    return expand(0, tuple(range(size)))


def submatrix(rows, row_set, col_set):
    return [[rows[i][j] for j in col_set] for i in row_set]


def matrix_minors(rows, size):
    """All size x size minors as ((row_set, col_set), det) in lexicographic order."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    if size < 1 or size > min(n_rows, n_cols):
        raise ValueError(f"minor size {size} out of range for a {n_rows}x{n_cols} matrix")
    return [((rs, cs), determinant(submatrix(rows, rs, cs)))
            for rs in itertools.combinations(range(n_rows), size)
            for cs in itertools.combinations(range(n_cols), size)]


class QMatrix:
    """Rectangular matrix of MPoly entries over one ring."""

    def __init__(self, rows):
        rows = [tuple(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("matrix rows have different lengths")
        variables = rows[0][0].variables
        if any(e.variables != variables for r in rows for e in r):
            raise VariableMismatchError("matrix entries live in different rings")
        self.rows = tuple(rows)
        self.variables = variables

    @classmethod
    def jacobian(cls, polys, variables=None):
        """(d f_i / d x_j): one row per polynomial, one column per variable."""
        polys = list(polys)
        variables = tuple(variables or polys[0].variables)
        return cls([[p.diff(v) for v in variables] for p in polys])

    def along(self, arc):
        """Entries evaluated along an arc: a matrix of TruncSeries."""
        return [[substitute_series(e, arc) for e in row] for row in self.rows]


def minors(matrix, size):
    """All size x size minors of a QMatrix in lexicographic (row-set, col-set) order."""
    return [det for _, det in matrix_minors(matrix.rows, size)]


# --- Exact linear algebra over Q ---

def _to_sympy(value):
    value = to_rational(value)
    return sympy.Rational(value.numerator, value.denominator)


def _from_sympy(value):
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def solve_affine(matrix, rhs, n_unknowns=None):
    """Solve A x = b over Q.

    Returns (particular, kernel): `particular` is None when the system is
    inconsistent; `kernel` is a basis of {x : A x = 0} as Fraction tuples.
    """
    n_rows = len(matrix)
    n_cols = n_unknowns if n_unknowns is not None else (len(matrix[0]) if matrix else 0)
    if n_rows == 0:
        identity = [tuple(Fraction(int(i == j)) for j in range(n_cols)) for i in range(n_cols)]
        return tuple(Fraction(0) for _ in range(n_cols)), identity
    A = sympy.Matrix(n_rows, n_cols, [_to_sympy(v) for row in matrix for v in row])
    b = sympy.Matrix(n_rows, 1, [_to_sympy(v) for v in rhs])
    kernel = [tuple(_from_sympy(v) for v in vec) for vec in A.nullspace()]
    reduced, pivots = A.row_join(b).rref()
    if n_cols in pivots:
        return None, kernel
    particular = [Fraction(0)] * n_cols
    for row, col in enumerate(pivots):
        particular[col] = _from_sympy(reduced[row, n_cols])
    return tuple(particular), kernel


def rational_rank(matrix):
    if not matrix or not matrix[0]:
        return 0
    A = sympy.Matrix(len(matrix), len(matrix[0]), [_to_sympy(v) for row in matrix for v in row])
    return int(A.rank())
