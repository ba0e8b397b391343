"""
The singular-locus ideal H and arc orders along it.

H is the sum, over (N-d)-subsets S of the generators of I, of the ideal of
(N-d)-minors of the Jacobian of S times the colon ideal (S : I). Its zero set
is the complement of the points where X is nonsingular in dimension d.
"""

import itertools
import logging
from dataclasses import dataclass

from algebra_core import (CapTooSmallError, PreconditionError, QMatrix, Unresolved,
                          matrix_minors, min_order)
from groebner import Ideal, ideal_colon, ideal_product, ideal_sum, with_groebner
from jet_engine import substitute_arc
from settings import DEFAULT_LIMITS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Chart:
    """One piece h * delta of H: a minor of a generator subset and a colon multiplier."""
    subset: tuple
    rows: tuple
    cols: tuple
    minor: object
    multiplier: object

    @property
    def product(self):
        return self.minor * self.multiplier


def _check_codimension(ideal, dim):
    ambient = len(ideal.ambient)
    if not 0 <= dim < ambient:
        raise PreconditionError(f"dimension must satisfy 0 <= d < N = {ambient}, got {dim}")
    codim = ambient - dim
    if len(ideal.generators) < codim:
        raise PreconditionError(
            f"need at least N - d = {codim} generators, the ideal has {len(ideal.generators)}")
    return codim


def _subset_pieces(ideal, dim, limits):
    codim = _check_codimension(ideal, dim)
    for subset in itertools.combinations(range(len(ideal.generators)), codim):
        polys = [ideal.generators[i] for i in subset]
        jac = QMatrix.jacobian(polys, ideal.ambient)
        minors = [(index, det) for index, det in matrix_minors(jac.rows, codim) if det]
        if not minors:
            logger.debug(f"generator subset {subset}: all minors vanish, skipped")
            continue
        colon = ideal_colon(Ideal(ideal.ring, tuple(polys), ideal.params), ideal, limits)
        yield subset, minors, colon


def h_ideal(ideal, dim, limits=DEFAULT_LIMITS):
    """H restricted to (N-d)-subsets of the given generators, with a cached basis."""
    total = Ideal(ideal.ring, (), ideal.params)
    for subset, minors, colon in _subset_pieces(ideal, dim, limits):
        minor_ideal = Ideal(ideal.ring, tuple(det for _, det in minors), ideal.params)
        total = ideal_sum(total, ideal_product(minor_ideal, colon))
    result = with_groebner(total, limits=limits)
    logger.info(f"H in dimension {dim}: {len(total.generators)} generators, "
                f"{len(result.gb)} basis elements")
    return result


def ci_charts(ideal, dim, limits=DEFAULT_LIMITS):
    """The finite family (h, delta) whose products generate the restricted H."""
    charts = []
    for subset, minors, colon in _subset_pieces(ideal, dim, limits):
        for (rows, cols), det in minors:
            for h in colon.gb:
                charts.append(Chart(subset, rows, cols, det, h))
    return charts


def generator_subset_exact(ideal, dim):
    """True when the presentation has exactly N - d generators (the subset sum is the full H)."""
    return len(ideal.generators) == len(ideal.ambient) - dim


def h_order(arc, h):
    """min over the generators g of H of ord_t g(gamma(t)); Unresolved(K) when all vanish."""
    if not h.generators:
        return Unresolved(arc.cap)
    return min_order(substitute_arc(g, arc, h.params).order() for g in h.generators)


def in_filtration(arc, h, level):
    """gamma in L^(e)(X): some generator of H has order <= e along gamma."""
    order = h_order(arc, h)
    if isinstance(order, Unresolved):
        if order.bound > level:
            return False
        raise CapTooSmallError(f"cap {arc.cap} cannot decide membership in L^({level})")
    return order <= level


def chart_for_arc(arc, charts, level, params=()):
    """First chart with ord (h * delta)(gamma) <= e, or None."""
    for chart in charts:
        order = substitute_arc(chart.product, arc, params).order()
        if isinstance(order, int) and order <= level:
            return chart
    return None
