"""
Ideal-theoretic engine.

Buchberger's algorithm (sugar selection, product and chain criteria) with
configurable hard caps, and the operations built on top of it: normal forms,
elimination, intersection, colon ideals and Krull dimension.
"""

import dataclasses
import itertools
import logging
from dataclasses import dataclass, field

from algebra_core import (DEGREVLEX, MonomialOrder, MPoly, VariableMismatchError,
                          format_poly, parse_poly)
from settings import DEFAULT_LIMITS

logger = logging.getLogger(__name__)


class ResourceLimitError(RuntimeError):
    """A basis computation exceeded its configured caps."""


@dataclass(frozen=True)
class Ideal:
    """Generators over a ring, with an optional cached reduced basis.

    `params` are trailing ring variables standing for symbolic parameters.
    Zero generators are dropped. A cached basis is only ever attached to a
    new Ideal value (see `with_basis`).
    """
    ring: tuple
    generators: tuple = ()
    params: tuple = ()
    gb: tuple = field(default=None, compare=False, repr=False)
    gb_order: MonomialOrder = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'ring', tuple(self.ring))
        object.__setattr__(self, 'params', tuple(self.params))
        gens = tuple(g for g in self.generators if g)
        for g in gens:
            if g.variables != self.ring:
                raise VariableMismatchError(
                    f"generator {format_poly(g)} lives in {g.variables}, not in {self.ring}")
        object.__setattr__(self, 'generators', gens)
        if self.params and self.ring[len(self.ring) - len(self.params):] != self.params:
            raise VariableMismatchError(
                f"parameters {self.params} must be the trailing variables of {self.ring}")

    @classmethod
    def from_strings(cls, ring, texts, params=()):
        ring = tuple(ring) + tuple(p for p in params if p not in ring)
        return cls(ring, tuple(parse_poly(t, ring) for t in texts), tuple(params))

    @classmethod
    def unit(cls, ring, params=()):
        one = MPoly.one(ring)
        return cls(ring, (one,), params, gb=(one,), gb_order=DEGREVLEX)

    @classmethod
    def zero(cls, ring, params=()):
        return cls(ring, (), params, gb=(), gb_order=DEGREVLEX)

    @property
    def ambient(self):
        return self.ring[:len(self.ring) - len(self.params)]

    def is_zero(self):
        return not self.generators

    def with_basis(self, basis, order=DEGREVLEX):
        return dataclasses.replace(self, gb=tuple(basis), gb_order=order)

    def __str__(self):
        return format_ideal(self.generators)


def format_ideal(polys):
    return '(' + ', '.join(format_poly(p) for p in polys) + ')' if polys else '(0)'


# --- Division ---

def _divides(small, big):
    return all(a <= b for a, b in zip(small, big))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def reduce_poly(f, basis, order=DEGREVLEX):
    """Full reduction of f by a list of polynomials (remainder of division)."""
    leads = [(g.leading_term(order), g) for g in basis]
    remainder = {}
    current = f
    while current:
        exps, coeff = current.leading_term(order)
        for (lead, lead_coeff), g in leads:
            if _divides(lead, exps):
                shift = tuple(a - b for a, b in zip(exps, lead))
                current = current - g.mul_term(shift, coeff / lead_coeff)
                break
        else:
            remainder[exps] = coeff
            terms = dict(current.terms)
            del terms[exps]
            current = MPoly._make(current.variables, terms)
    return MPoly._make(f.variables, remainder)


# --- Buchberger ---

def _buchberger(generators, order, limits):
    basis = []
    sugar = []
    pending = {}
    processed = 0

    def add(poly, poly_sugar):
        if len(basis) >= limits.max_basis:
            raise ResourceLimitError(
                f"Groebner basis exceeded {limits.max_basis} elements (raise --max-basis)")
        if poly.total_degree() > limits.max_degree:
            raise ResourceLimitError(
                f"Groebner basis element of degree {poly.total_degree()} exceeds the cap "
                f"{limits.max_degree} (raise --max-degree)")
        index = len(basis)
        lead_new = poly.leading_monomial(order)
        basis.append(poly)
        sugar.append(poly_sugar)
        for i in range(index):
            lead_i = basis[i].leading_monomial(order)
            lcm = _lcm(lead_i, lead_new)
            pair_sugar = max(sugar[i] + sum(lcm) - sum(lead_i),
                             poly_sugar + sum(lcm) - sum(lead_new))
            pending[(i, index)] = (pair_sugar, lcm)

    for g in generators:
        reduced = reduce_poly(g, basis, order)
        if reduced:
            if reduced.is_constant():
                return [MPoly.one(g.variables)]
            add(reduced.monic(order), g.total_degree())

    while pending:
        (i, j), (pair_sugar, lcm) = min(
            pending.items(), key=lambda item: (item[1][0], order.key(item[1][1]), item[0]))
        del pending[(i, j)]
        processed += 1
        if processed > limits.max_pairs:
            raise ResourceLimitError(
                f"Groebner computation exceeded {limits.max_pairs} S-pairs")

        lead_i = basis[i].leading_monomial(order)
        lead_j = basis[j].leading_monomial(order)
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(lead_i, lead_j)):
            continue
        # chain criterion
        if any(k not in (i, j)
               and _divides(basis[k].leading_monomial(order), lcm)
               and (min(i, k), max(i, k)) not in pending
               and (min(j, k), max(j, k)) not in pending
               for k in range(len(basis))):
            continue

        s_poly = (basis[i].mul_term(tuple(a - b for a, b in zip(lcm, lead_i)), 1)
                  - basis[j].mul_term(tuple(a - b for a, b in zip(lcm, lead_j)), 1))
        reduced = reduce_poly(s_poly, basis, order)
        if reduced:
            if reduced.is_constant():
                logger.debug(f"unit ideal detected after {processed} pairs")
                return [MPoly.one(s_poly.variables)]
            add(reduced.monic(order), pair_sugar)

    logger.debug(f"Buchberger finished: {len(basis)} elements, {processed} pairs")
    return basis


def _interreduce(basis, order):
    minimal = []
    for k, g in enumerate(basis):
        lead = g.leading_monomial(order)
        dominated = False
        for m, h in enumerate(basis):
            if m == k:
                continue
            other = h.leading_monomial(order)
            if _divides(other, lead) and (other != lead or m < k):
                dominated = True
                break
        if not dominated:
            minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        reduced.append(reduce_poly(g, others, order).monic(order))
    return sorted(reduced, key=lambda p: order.key(p.leading_monomial(order)), reverse=True)


def groebner_basis(ideal, order=DEGREVLEX, limits=DEFAULT_LIMITS):
    """Reduced, monic Groebner basis, sorted by decreasing leading monomial."""
    if ideal.gb is not None and ideal.gb_order == order:
        return ideal.gb
    if not ideal.generators:
        return ()
    raw = _buchberger(list(ideal.generators), order, limits)
    basis = tuple(_interreduce(raw, order))
    logger.info(f"Groebner basis over {list(ideal.ring)} ({order}): "
                f"{len(ideal.generators)} generators -> {len(basis)} elements")
    return basis


def with_groebner(ideal, order=DEGREVLEX, limits=DEFAULT_LIMITS):
    """The same ideal with its reduced basis cached."""
    if ideal.gb is not None and ideal.gb_order == order:
        return ideal
    return ideal.with_basis(groebner_basis(ideal, order, limits), order)


def is_unit(ideal, limits=DEFAULT_LIMITS):
    basis = groebner_basis(ideal, DEGREVLEX, limits)
    return len(basis) == 1 and basis[0].is_constant()


def normal_form(f, ideal, order=DEGREVLEX, limits=DEFAULT_LIMITS):
    if f.variables != ideal.ring:
        raise VariableMismatchError(f"{format_poly(f)} is not in the ring {ideal.ring}")
    return reduce_poly(f, groebner_basis(ideal, order, limits), order)


def contains(ideal, f, limits=DEFAULT_LIMITS):
    return not normal_form(f, ideal, limits=limits)


def ideal_contains(big, small, limits=DEFAULT_LIMITS):
    """small ⊆ big, checked generator by generator."""
    return all(contains(big, g, limits) for g in small.generators)


def ideal_equal(first, second, limits=DEFAULT_LIMITS):
    """Equality by mutual normal-form reduction."""
    _same_ring(first, second)
    return ideal_contains(first, second, limits) and ideal_contains(second, first, limits)


def _same_ring(first, second):
    if first.ring != second.ring:
        raise VariableMismatchError(f"ideals live in different rings: {first.ring} vs {second.ring}")


def ideal_sum(first, second):
    _same_ring(first, second)
    return Ideal(first.ring, first.generators + second.generators, first.params)


def ideal_product(first, second):
    _same_ring(first, second)
    return Ideal(first.ring,
                 tuple(f * g for f in first.generators for g in second.generators),
                 first.params)


# --- Elimination and derived ideals ---

def _fresh_name(base, taken):
    name = base
    while name in taken:
        name = f"_{name}"
    return name


def eliminate(ideal, remove, limits=DEFAULT_LIMITS):
    """I ∩ Q[remaining variables], computed with a block order."""
    remove = tuple(remove)
    unknown = [v for v in remove if v not in ideal.ring]
    if unknown:
        raise VariableMismatchError(f"cannot eliminate {unknown}: not in {ideal.ring}")
    keep = tuple(v for v in ideal.ring if v not in remove)
    params = tuple(p for p in ideal.params if p not in remove)
    if not keep:
        raise ValueError("cannot eliminate every variable of the ring")
    order = MonomialOrder.elimination(ideal.ring, remove)
    basis = groebner_basis(ideal, order, limits)
    kept = [g.restrict(keep) for g in basis if not set(g.used_variables()) & set(remove)]
    kept.sort(key=lambda p: DEGREVLEX.key(p.leading_monomial()), reverse=True)
    logger.debug(f"eliminated {list(remove)}: {len(basis)} -> {len(kept)} polynomials")
    return Ideal(keep, tuple(kept), params, gb=tuple(kept), gb_order=DEGREVLEX)


def ideal_intersect(first, second, limits=DEFAULT_LIMITS):
    """I ∩ J by eliminating w from w·I + (1 − w)·J."""
    _same_ring(first, second)
    if first.is_zero() or second.is_zero():
        return Ideal.zero(first.ring, first.params)
    w = _fresh_name('w', first.ring)
    wide = (w,) + first.ring
    w_poly = MPoly.var(w, wide)
    gens = [w_poly * f.extend(wide) for f in first.generators]
    gens += [(1 - w_poly) * g.extend(wide) for g in second.generators]
    result = eliminate(Ideal(wide, tuple(gens), first.params), (w,), limits)
    return Ideal(first.ring, result.generators, first.params,
                 gb=result.gb, gb_order=result.gb_order)


def ideal_quotient(ideal, g, limits=DEFAULT_LIMITS):
    """(I : g) = (I ∩ (g)) / g for a single polynomial g."""
    if g.variables != ideal.ring:
        raise VariableMismatchError(f"{format_poly(g)} is not in the ring {ideal.ring}")
    if not g:
        return Ideal.unit(ideal.ring, ideal.params)
    if ideal.is_zero():
        return Ideal.zero(ideal.ring, ideal.params)
    meet = ideal_intersect(ideal, Ideal(ideal.ring, (g,), ideal.params), limits)
    return with_groebner(
        Ideal(ideal.ring, tuple(h.exact_div(g) for h in meet.generators), ideal.params),
        limits=limits)


def ideal_colon(ideal, other, limits=DEFAULT_LIMITS):
    """(I : J) as the intersection of (I : g) over the generators g of J."""
    _same_ring(ideal, other)
    if other.is_zero():
        return Ideal.unit(ideal.ring, ideal.params)
    result = None
    for g in other.generators:
        part = ideal_quotient(ideal, g, limits)
        result = part if result is None else ideal_intersect(result, part, limits)
    return with_groebner(result, limits=limits)


def krull_dim(ideal, limits=DEFAULT_LIMITS):
    """Dimension over the algebraic closure: the largest set of variables
    independent modulo the initial ideal. −1 for the unit ideal."""
    basis = groebner_basis(ideal, DEGREVLEX, limits)
    n = len(ideal.ring)
    if not basis:
        return n
    if len(basis) == 1 and basis[0].is_constant():
        return -1
    supports = {frozenset(i for i, e in enumerate(g.leading_monomial()) if e) for g in basis}
    for size in range(n, -1, -1):
        for chosen in itertools.combinations(range(n), size):
            chosen = frozenset(chosen)
            if not any(s <= chosen for s in supports):
                return size
    return 0
