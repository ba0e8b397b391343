"""
Jet spaces of affine algebraic sets.

An n-jet on X = V(I) is an arc modulo t^(n+1) along which every generator
vanishes modulo t^(n+1). Jet coordinates are named `x_k` for the t^k
coefficient of the ambient coordinate x.
"""

import logging
from dataclasses import dataclass

from algebra_core import (Arc, MPoly, PreconditionError, TruncSeries,
                          VariableMismatchError, rational_rank, solve_affine)
from groebner import Ideal, krull_dim
from settings import DEFAULT_LIMITS

logger = logging.getLogger(__name__)


def jet_variable(name, degree):
    return f"{name}_{degree}"


@dataclass(frozen=True)
class JetIdeal:
    base: Ideal
    level: int
    jet_vars: tuple
    equations: Ideal


@dataclass(frozen=True)
class AffineFiber:
    """An affine subspace of Q^m: empty, or basepoint + span(directions)."""
    feasible: bool
    basepoint: tuple
    directions: tuple

    @property
    def dimension(self):
        return len(self.directions) if self.feasible else None

    def contains(self, point):
        """Membership test for a rational vector (exact)."""
        if not self.feasible:
            return False
        offset = [p - b for p, b in zip(point, self.basepoint)]
        base_rank = rational_rank([list(d) for d in self.directions])
        return rational_rank([list(d) for d in self.directions] + [offset]) == base_rank


def _coefficient_variables(arc):
    names = []
    for series in arc:
        for c in series.coeffs:
            if isinstance(c, MPoly):
                for v in c.variables:
                    if v not in names:
                        names.append(v)
    return tuple(names)


def _has_parameters(arc):
    return bool(_coefficient_variables(arc))


def substitute_arc(f, arc, params=()):
    """f(gamma(t)) where the trailing variables `params` of f stay symbolic."""
    params = tuple(params)
    if len(arc) + len(params) != len(f.variables):
        raise VariableMismatchError(
            f"arc has {len(arc)} components but the ring {f.variables} has "
            f"{len(f.variables) - len(params)} ambient variables")
    values = list(arc.components)
    values += [TruncSeries.constant(MPoly.var(p, params), arc.cap) for p in params]
    result = f.substitute(values, zero=TruncSeries.zero(arc.cap))
    return result if isinstance(result, TruncSeries) else TruncSeries.constant(result, arc.cap)


def evaluate_generators(ideal, arc):
    """f(gamma(t)) for each generator; parameters become constant series."""
    if len(arc) != len(ideal.ambient):
        raise VariableMismatchError(
            f"arc has {len(arc)} components but the ideal has ambient variables {ideal.ambient}")
    return [substitute_arc(f, arc, ideal.params) for f in ideal.generators]


def generic_jet(ambient, level, params=()):
    """The generic n-jet: ring of jet variables (then params) and the arc over it."""
    if level < 0:
        raise PreconditionError(f"jet level must be nonnegative, got {level}")
    jet_vars = tuple(jet_variable(v, k) for v in ambient for k in range(level + 1))
    ring = jet_vars + tuple(params)
    if len(set(ring)) != len(ring):
        raise VariableMismatchError(f"jet variable names collide with the ring: {ring}")
    arc = Arc(TruncSeries([MPoly.var(jet_variable(v, k), ring) for k in range(level + 1)])
              for v in ambient)
    return ring, arc


def jet_ideal(ideal, level):
    """Equations of L_n(X): the t^0..t^n coefficients of each generator at the generic jet."""
    ring, arc = generic_jet(ideal.ambient, level, ideal.params)
    values = list(arc.components)
    for p in ideal.params:
        values.append(TruncSeries.constant(MPoly.var(p, ring), arc.cap))
    equations = []
    for f in ideal.generators:
        series = f.substitute(values, zero=TruncSeries.zero(arc.cap))
        equations.extend(c if isinstance(c, MPoly) else MPoly.constant(c, ring)
                         for c in series.coeffs if c)
    logger.info(f"jet ideal at level {level}: {len(ring)} variables, {len(equations)} equations")
    return JetIdeal(ideal, level, ring[:len(ring) - len(ideal.params)],
                    Ideal(ring, tuple(equations), ideal.params))


def jet_membership(arc, ideal):
    return all(s.is_zero() for s in evaluate_generators(ideal, arc))


def truncate_jet(arc, level):
    """pi^m_n: coefficientwise reduction of an m-jet to an n-jet (n < m)."""
    if level < 0 or level >= arc.level:
        raise PreconditionError(
            f"cannot truncate a {arc.level}-jet to level {level}: need 0 <= n < {arc.level}")
    return arc.recap(level + 1)


def _require_rational(arc, ideal, operation):
    if ideal.params or _has_parameters(arc):
        raise PreconditionError(f"{operation} needs rational input without parameters")


def gradient_at(ideal, point):
    """Rows of the Jacobian of the generators at a rational point."""
    return [[f.diff(v).evaluate(point) for v in ideal.ambient] for f in ideal.generators]


def fiber_next_level(arc, ideal):
    """Fiber of pi^(n+1)_n over an n-jet: alpha_i + grad f_i(gamma(0)) . eta = 0."""
    _require_rational(arc, ideal, "fiber_next_level")
    if not jet_membership(arc, ideal):
        raise PreconditionError(f"the jet {arc} is not in L_{arc.level}(X)")
    level = arc.level
    alphas = [s[level + 1] for s in evaluate_generators(ideal, arc.recap(level + 2))]
    point = arc.point()
    particular, kernel = solve_affine(gradient_at(ideal, point), [-a for a in alphas],
                                      n_unknowns=len(ideal.ambient))
    logger.debug(f"fiber over {arc}: alpha={[str(a) for a in alphas]}, "
                 f"feasible={particular is not None}")
    return AffineFiber(particular is not None, particular, tuple(kernel))


def obstruction_system(arc, ideal, extra, params=None):
    """Conditions at orders n+1..n+k on unknown higher coefficients `x_l`.

    The returned ideal lives in the unknowns followed by the parameters; it is
    the raw polynomial system, real solvability is not decided here.
    """
    if extra < 1:
        raise PreconditionError(f"obstruction_system needs at least one extra level, got {extra}")
    if not jet_membership(arc, ideal):
        raise PreconditionError(f"the jet {arc} is not in L_{arc.level}(X)")
    level = arc.level
    names = list(params) if params is not None else list(ideal.params)
    for v in _coefficient_variables(arc):
        if v not in names:
            names.append(v)
    params = tuple(names)
    unknowns = tuple(jet_variable(v, l) for v in ideal.ambient
                     for l in range(level + 1, level + extra + 1))
    ring = unknowns + params
    if len(set(ring)) != len(ring):
        raise VariableMismatchError(f"unknown names collide with parameters: {ring}")

    def lift(c):
        return c.extend(ring) if isinstance(c, MPoly) else c

    cap = level + extra + 1
    components = []
    for v, series in zip(ideal.ambient, arc):
        coeffs = [lift(c) for c in series.coeffs]
        coeffs += [MPoly.var(jet_variable(v, l), ring) for l in range(level + 1, cap)]
        components.append(TruncSeries(coeffs, cap))
    values = components + [TruncSeries.constant(MPoly.var(p, ring), cap) for p in ideal.params]

    conditions = []
    for f in ideal.generators:
        series = f.substitute(values, zero=TruncSeries.zero(cap))
        for order in range(level + 1, cap):
            c = series[order]
            if c:
                conditions.append(c if isinstance(c, MPoly) else MPoly.constant(c, ring))
    return Ideal(ring, tuple(conditions), params)


def jet_dim(ideal, level, limits=DEFAULT_LIMITS):
    if ideal.params:
        raise PreconditionError("jet_dim needs an ideal without parameters")
    return krull_dim(jet_ideal(ideal, level).equations, limits)
