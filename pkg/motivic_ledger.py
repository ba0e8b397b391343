"""
Virtual Poincare polynomial bookkeeping over normal-crossing divisor data.

A stratum X_{j,n} of n-jets is indexed by a multi-index j of contact orders
with the divisors E_i. Its class is beta(E_J°) (u-1)^|J| u^(nd - sum (nu_i+1) j_i),
and comparing the sums of these classes for two maps sigma and
sigma~ = f o sigma forces nu_i = nu~_i through a degree argument.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from algebra_core import MPoly, PreconditionError, format_poly, parse_poly

logger = logging.getLogger(__name__)

SIGMA = 'sigma'
TILDE = 'tilde'


class VPP:
    """Polynomial in u with integer coefficients; coeffs[k] is the u^k coefficient."""

    __slots__ = ('coeffs',)

    def __init__(self, coeffs=()):
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def u(cls, power=1):
        return cls([0] * power + [1])

    @classmethod
    def constant(cls, value):
        return cls([value])

    @classmethod
    def parse(cls, text):
        poly = parse_poly(text, ('u',))
        coeffs = [0] * (poly.total_degree() + 1)
        for (degree,), c in poly.terms.items():
            if c.denominator != 1:
                raise ValueError(f"virtual Poincare polynomials have integer coefficients, got {c}")
            coeffs[degree] = c.numerator
        return cls(coeffs)

    @staticmethod
    def _lift(other):
        if isinstance(other, VPP):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return VPP([other])
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return VPP(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return VPP(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return VPP()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return VPP(out)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("VPP powers need a nonnegative integer exponent")
        result = VPP([1])
        for _ in range(exponent):
            result = result * self
        return result

    def shift(self, power):
        """Multiply by u^power."""
        if power < 0:
            raise ValueError(f"negative power of u: {power}")
        return VPP((0,) * power + self.coeffs) if self.coeffs else VPP()

    def __call__(self, value):
        total = 0
        for c in reversed(self.coeffs):
            total = total * value + c
        return total

    evaluate = __call__

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        return format_poly(MPoly(('u',), {(k,): c for k, c in enumerate(self.coeffs)}))

    def __repr__(self):
        return f"VPP({self})"


def convention_table():
    """beta of the model spaces used to fill divisor tables."""
    u = VPP.u()
    return {
        'point': VPP([1]),
        'R': u,
        'R*': u - 1,
        'P1': u + 1,
    }


def affine_space(n):
    return VPP.u(n)


def format_support(names):
    return '{' + ','.join(names) + '}'


@dataclass(frozen=True)
class DivisorData:
    """Normal-crossing divisor data: multiplicities per divisor and a beta table.

    `beta` maps frozensets of divisor names to beta(E_J°); absent supports are
    empty strata.
    """
    dim: int
    names: tuple
    nu: tuple
    lam: tuple
    beta: dict = field(hash=False)
    nutilde: tuple = None
    lamtilde: tuple = None

    def __post_init__(self):
        object.__setattr__(self, 'names', tuple(self.names))
        object.__setattr__(self, 'nu', tuple(self.nu))
        object.__setattr__(self, 'lam', tuple(self.lam))
        if self.nutilde is not None:
            object.__setattr__(self, 'nutilde', tuple(self.nutilde))
            lamtilde = self.lamtilde if self.lamtilde is not None else (0,) * len(self.names)
            object.__setattr__(self, 'lamtilde', tuple(lamtilde))
        object.__setattr__(self, 'beta', {frozenset(k): v for k, v in self.beta.items()})
        self.validate()

    def validate(self):
        if self.dim < 0:
            raise ValueError(f"dimension must be nonnegative, got {self.dim}")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"repeated divisor name in {list(self.names)}")
        size = len(self.names)
        families = [('nu', self.nu, 1), ('lambda', self.lam, 0)]
        if self.nutilde is not None:
            families += [('nutilde', self.nutilde, 1), ('lambdatilde', self.lamtilde, 0)]
        for label, values, floor in families:
            if len(values) != size:
                raise ValueError(f"{label} has {len(values)} entries for {size} divisors")
            for name, value in zip(self.names, values):
                if value < floor:
                    raise ValueError(f"{label} of {name} must be >= {floor}, got {value}")
        for support, value in self.beta.items():
            unknown = sorted(support - set(self.names))
            if unknown:
                raise ValueError(f"beta table mentions unknown divisors {unknown}")
            if not value:
                continue
            label = format_support(self.ordered(support))
            expected = self.dim - len(support)
            if value.degree != expected:
                raise ValueError(
                    f"beta {label} = {value} has degree {value.degree}, expected d - |J| = {expected}")
            if value.leading <= 0:
                raise ValueError(f"beta {label} = {value} must have a positive leading coefficient")

    @property
    def has_tilde(self):
        return self.nutilde is not None

    def ordered(self, support):
        return tuple(n for n in self.names if n in support)

    def multiplicities(self, which=SIGMA):
        if which == SIGMA:
            return self.nu, self.lam
        if which == TILDE:
            if not self.has_tilde:
                raise PreconditionError("divisor data has no nutilde/lambdatilde multiplicities")
            return self.nutilde, self.lamtilde
        raise ValueError(f"Unknown map '{which}'. Use '{SIGMA}' or '{TILDE}'")

    def beta_of(self, support):
        return self.beta.get(frozenset(support), VPP())

    def c_constant(self, which=SIGMA):
        """c = max(2 nu_max, lambda_max)."""
        nu, lam = self.multiplicities(which)
        return max([2 * v for v in nu] + list(lam) + [0])


@dataclass(frozen=True)
class MultiIndex:
    """Contact orders j_i aligned with the divisor order of its DivisorData."""
    names: tuple
    values: tuple

    @classmethod
    def zero(cls, data):
        return cls(data.names, (0,) * len(data.names))

    @classmethod
    def parse(cls, text, data):
        """'E1=1 E2=2', 'E1=1,E2=2' or '0'; unnamed divisors are 0."""
        text = text.strip()
        values = dict.fromkeys(data.names, 0)
        if text and text != '0':
            for item in text.replace(',', ' ').split():
                name, sep, raw = item.partition('=')
                if not sep or name not in values:
                    raise ValueError(f"bad multi-index entry '{item}' (divisors: {list(data.names)})")
                if not raw.isdigit():
                    raise ValueError(f"contact order of {name} must be a nonnegative integer, got '{raw}'")
                values[name] = int(raw)
        return cls(data.names, tuple(values[n] for n in data.names))

    @property
    def support(self):
        return frozenset(n for n, v in zip(self.names, self.values) if v)

    @property
    def s(self):
        return sum(self.values)

    def weighted(self, weights):
        return sum(w * v for w, v in zip(weights, self.values))

    def e(self, data, which=SIGMA):
        return self.weighted(data.multiplicities(which)[0])

    def eprime(self, data, which=SIGMA):
        return self.weighted(data.multiplicities(which)[1])

    def __str__(self):
        if not any(self.values):
            return '0'
        return ','.join(f"{n}={v}" for n, v in zip(self.names, self.values) if v)


def enumerate_An(data, level, which=SIGMA):
    """A_n: j with 2 e(j) <= n and e'(j) <= n, on supports with nonzero beta, graded-lex."""
    if level < 0:
        raise PreconditionError(f"level must be nonnegative, got {level}")
    nu, lam = data.multiplicities(which)
    bounds = [level // (2 * v) for v in nu]
    result = []
    for values in itertools.product(*(range(b + 1) for b in bounds)):
        j = MultiIndex(data.names, values)
        if 2 * j.weighted(nu) > level or j.weighted(lam) > level:
            continue
        if not data.beta_of(j.support):
            continue
        result.append(j)
    result.sort(key=lambda j: (j.s, j.values))
    return result


def beta_stratum(data, j, level, which=SIGMA):
    nu, _ = data.multiplicities(which)
    exponent = level * data.dim - sum((v + 1) * x for v, x in zip(nu, j.values))
    if exponent < 0:
        raise PreconditionError(f"j = {j} is too deep for level {level}: exponent {exponent} < 0")
    return (data.beta_of(j.support) * (VPP.u() - 1) ** len(j.support)).shift(exponent)


def dim_stratum(data, j, level, which=SIGMA):
    return data.dim * (level + 1) - j.s - j.e(data, which)


def stratum_sum(data, level, which=SIGMA):
    return sum((beta_stratum(data, j, level, which) for j in enumerate_An(data, level, which)), VPP())


def zn_degree_bound(data, level, which=SIGMA):
    """d(n+1) - n/c as an exact rational, c floored at 1."""
    c = max(data.c_constant(which), 1)
    return Fraction(data.dim * (level + 1)) - Fraction(level, c)


# --- Degree comparison of sigma and sigma~ ---

@dataclass(frozen=True)
class LevelRow:
    level: int
    k_values: tuple
    k_min: object
    q_degree: object
    threshold: Fraction
    stabilized: bool
    forced: bool


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple
    verdict: str
    forced_at: object
    c: int
    c_tilde: int
    window: int
    notes: tuple


def _k_set(data, level):
    both = set(j.values for j in enumerate_An(data, level, SIGMA)) & \
        set(j.values for j in enumerate_An(data, level, TILDE))
    k_values = set()
    for values in both:
        j = MultiIndex(data.names, values)
        if j.weighted(data.nu) - j.weighted(data.nutilde) > 0:
            k_values.add(j.s + j.weighted(data.nutilde))
    return tuple(sorted(k_values))


def compare_multiplicities(data, n_max):
    """Run the degree argument level by level up to n_max."""
    if not data.has_tilde:
        raise PreconditionError("compare_multiplicities needs nutilde for every divisor")
    c, c_tilde = data.c_constant(SIGMA), data.c_constant(TILDE)
    cbar = max(c, c_tilde, 1)
    window = max(c, c_tilde, 1)
    rows = []
    history = []
    forced_at = None
    for level in range(n_max + 1):
        k_values = _k_set(data, level)
        k_min = k_values[0] if k_values else None
        history.append(k_min)
        recent = history[-window:]
        stabilized = (k_min is not None and len(recent) == window
                      and all(k == k_min for k in recent))
        threshold = Fraction(data.dim * (level + 1)) - Fraction(level, cbar)
        forced = stabilized and Fraction(level, cbar) > k_min
        q_degree = data.dim * (level + 1) - k_min if k_min is not None else None
        rows.append(LevelRow(level, k_values, k_min, q_degree, threshold, stabilized, forced))
        if forced and forced_at is None:
            forced_at = level

    notes = ["positivity of the leading coefficient of Q_n is assumed, not computed"]
    if forced_at is not None:
        verdict = f"contradiction forced at n = {forced_at}"
    elif all(r.k_min is None for r in rows):
        verdict = "no discrepancy detected"
        if all(a <= b for a, b in zip(data.nu, data.nutilde)) and data.nu != data.nutilde:
            notes.append("nu <= nutilde on every divisor: only the one-sided inequality holds")
    else:
        verdict = f"undecided up to n = {n_max}"
    logger.info(f"multiplicity comparison up to n = {n_max}: {verdict}")
    return ComparisonReport(tuple(rows), verdict, forced_at, c, c_tilde, window, tuple(notes))


@dataclass(frozen=True)
class DifferenceTerms:
    level: int
    q: VPP
    r: VPP
    s: VPP
    r_bound: Fraction
    s_bound: Fraction

    @property
    def r_within_bound(self):
        return self.r.degree < self.r_bound

    @property
    def s_within_bound(self):
        return self.s.degree < self.s_bound

    @property
    def q_leading_sign(self):
        return (self.q.leading > 0) - (self.q.leading < 0)


def difference_terms(data, level):
    """Q_n, R_n and S_n: the parts of the comparison computable from divisor data."""
    if not data.has_tilde:
        raise PreconditionError("difference_terms needs nutilde for every divisor")
    sigma = {j.values: j for j in enumerate_An(data, level, SIGMA)}
    tilde = {j.values: j for j in enumerate_An(data, level, TILDE)}
    q = VPP()
    for key in sorted(set(sigma) & set(tilde)):
        j = sigma[key]
        q = q - (beta_stratum(data, j, level, SIGMA) - beta_stratum(data, j, level, TILDE))
    r = sum((beta_stratum(data, sigma[k], level, SIGMA) for k in sorted(set(sigma) - set(tilde))), VPP())
    s = -sum((beta_stratum(data, tilde[k], level, TILDE) for k in sorted(set(tilde) - set(sigma))), VPP())
    base = Fraction(data.dim * (level + 1))
    return DifferenceTerms(level, q, r, s,
                           base - Fraction(level, max(data.c_constant(TILDE), 1)),
                           base - Fraction(level, max(data.c_constant(SIGMA), 1)))
