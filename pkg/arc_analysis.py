"""
Arc-level analysis of a polynomial map sigma: M -> R^N (d source variables).

Orders of Jacobian minors and divisors along arcs, t-adic Smith invariants,
the change-of-variables fiber over a jet and Newton-Hensel lifting of a
target arc through sigma.
"""

import itertools
import logging
from dataclasses import dataclass

from algebra_core import (Arc, CapTooSmallError, MPoly, PreconditionError, QMatrix,
                          TruncSeries, Unresolved, VariableMismatchError, determinant,
                          matrix_minors, min_order, solve_affine, substitute_series,
                          submatrix)
from groebner import Ideal
from jet_engine import AffineFiber, evaluate_generators, substitute_arc
from singular_locus import h_order

logger = logging.getLogger(__name__)

LIFT_SCHEDULES = ('linear', 'quadratic')


class CriticalArcError(PreconditionError):
    """The arc lies in the critical locus: every maximal minor vanishes along it."""


class InfeasibleLiftError(ValueError):
    """The target arc is not the image of any arc near the seed."""


@dataclass(frozen=True)
class PolyMap:
    source: tuple
    target: tuple
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, 'source', tuple(self.source))
        object.__setattr__(self, 'target', tuple(self.target))
        object.__setattr__(self, 'components', tuple(self.components))
        if len(self.components) != len(self.target):
            raise VariableMismatchError(
                f"map has {len(self.components)} components for target {self.target}")
        for comp in self.components:
            if comp.variables != self.source:
                raise VariableMismatchError(
                    f"component {comp} is not a polynomial in {self.source}")

    @classmethod
    def identity(cls, variables):
        variables = tuple(variables)
        return cls(variables, variables, tuple(MPoly.var(v, variables) for v in variables))

    @property
    def source_dim(self):
        return len(self.source)

    @property
    def target_dim(self):
        return len(self.target)

    def jacobian(self):
        """N x d matrix of partial derivatives."""
        return QMatrix.jacobian(self.components, self.source)


@dataclass(frozen=True)
class DeltaClass:
    e: object
    eprime: object

    @property
    def resolved(self):
        return isinstance(self.e, int) and isinstance(self.eprime, int)


def _check_source_arc(sigma, arc):
    if len(arc) != sigma.source_dim:
        raise VariableMismatchError(
            f"arc has {len(arc)} components, the map's source is {sigma.source}")


def apply_map(sigma, arc):
    """sigma_*(gamma) at the arc's cap."""
    _check_source_arc(sigma, arc)
    return Arc(substitute_series(c, arc) for c in sigma.components)


def ord_series_ideal(arc, target):
    """ord_t along gamma of a polynomial, or the minimum over an ideal's generators."""
    if isinstance(target, Ideal):
        if not target.generators:
            return Unresolved(arc.cap)
        return min_order(s.order() for s in evaluate_generators(target, arc))
    return substitute_arc(target, arc).order()


def _jacobian_along(sigma, arc):
    return sigma.jacobian().along(arc)


def ord_jacobian(sigma, arc):
    """min over the m-minors (m = min(d, N)) of their orders along gamma."""
    _check_source_arc(sigma, arc)
    size = min(sigma.source_dim, sigma.target_dim)
    rows = _jacobian_along(sigma, arc)
    return min_order(det.order() for _, det in matrix_minors(rows, size))


def delta_class(sigma, arc, h):
    e = ord_jacobian(sigma, arc)
    eprime = h_order(apply_map(sigma, arc), h)
    if not isinstance(e, int) or not isinstance(eprime, int):
        logger.warning(f"unresolved order in delta class of {arc}: e={e}, e'={eprime}")
    return DeltaClass(e, eprime)


def t_smith_invariants(rows):
    """t-adic Smith invariants from determinantal divisors D_k = min ord of k x k minors."""
    rows = [list(r) for r in rows]
    caps = {s.cap for r in rows for s in r}
    if len(caps) != 1:
        raise ValueError(f"matrix entries disagree on the cap: {sorted(caps)}")
    cap = caps.pop()
    rank = min(len(rows), len(rows[0]))
    divisors = [0]
    for size in range(1, rank + 1):
        order = min_order(det.order() for _, det in matrix_minors(rows, size))
        if isinstance(order, Unresolved):
            logger.debug(f"{size}x{size} minors vanish modulo t^{cap}")
            return Unresolved(cap)
        divisors.append(order)
    return tuple(divisors[k] - divisors[k - 1] for k in range(1, rank + 1))


def choose_projection(sigma, arc):
    """d target coordinates whose d-minor along gamma has minimal order (lexicographic ties)."""
    _check_source_arc(sigma, arc)
    d, N = sigma.source_dim, sigma.target_dim
    if N < d:
        raise PreconditionError(f"need N >= d for a projection, got N = {N}, d = {d}")
    rows = _jacobian_along(sigma, arc)
    best, best_order = None, None
    for subset in itertools.combinations(range(N), d):
        order = determinant(submatrix(rows, subset, range(d))).order()
        if not isinstance(order, int):
            continue
        if best_order is None or order < best_order:
            best, best_order = subset, order
    if best is None:
        raise CriticalArcError(f"every {d}-minor of the Jacobian vanishes along {arc}")
    return best


def _reject_parameters(*arcs):
    for arc in arcs:
        if any(isinstance(c, MPoly) for s in arc for c in s.coeffs):
            raise PreconditionError("arc analysis needs rational arcs without parameters")


def _require_finite_e(sigma, arc):
    e = ord_jacobian(sigma, arc)
    if isinstance(e, Unresolved):
        raise CriticalArcError(
            f"the Jacobian of sigma vanishes along {arc} modulo t^{arc.cap}: "
            f"the arc is critical or the cap is too small")
    return e


def cov_fiber(sigma, arc, level, e):
    """n-jets with the same sigma-image jet as gamma.

    gamma + t^(n+1-e) u(t) mod t^(n+1) with Jac_{p o sigma}(gamma) u = 0 mod t^e.
    Coordinates are flattened component-major: index j*(n+1) + k.
    """
    _reject_parameters(arc)
    if arc.cap < level + 1:
        raise PreconditionError(f"arc cap {arc.cap} is below the level n + 1 = {level + 1}")
    jet = arc.recap(level + 1)
    actual = _require_finite_e(sigma, jet)
    if actual != e:
        raise PreconditionError(f"e = {e} does not match ord_t Jac along the arc ({actual})")
    if level < 2 * e:
        raise PreconditionError(f"cov_fiber needs n >= 2e, got n = {level}, e = {e}")
    projection = choose_projection(sigma, jet)
    d = sigma.source_dim
    jac = _jacobian_along(sigma, jet)
    rows = [jac[i] for i in projection]

    # unknown u_{j,k}, k < e, at index j*e + k
    system = []
    for i in range(d):
        for degree in range(e):
            system.append([rows[i][j][degree - k] if degree >= k else 0
                           for j in range(d) for k in range(e)])
    _, kernel = solve_affine(system, [0] * len(system), n_unknowns=d * e)

    width = level + 1
    basepoint = tuple(c for s in jet for c in s.coeffs)
    directions = []
    for vector in kernel:
        flat = [0] * (d * width)
        for j in range(d):
            for k in range(e):
                flat[j * width + (width - e + k)] = vector[j * e + k]
        directions.append(tuple(flat))
    logger.debug(f"cov fiber over {jet}: projection {projection}, dimension {len(directions)}")
    return AffineFiber(True, basepoint, tuple(directions))


def _adjugate(rows):
    size = len(rows)
    cap = rows[0][0].cap
    if size == 1:
        return [[TruncSeries.constant(1, cap)]]
    adj = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            others_r = [r for r in range(size) if r != j]
            others_c = [c for c in range(size) if c != i]
            cofactor = determinant(submatrix(rows, others_r, others_c))
            adj[i][j] = cofactor if (i + j) % 2 == 0 else -cofactor
    return adj


def _newton_operator(sigma, projection, arc, e):
    """(adj(J), w^-1) for J = Jac_{p o sigma}(arc), det J = t^e w."""
    jac = _jacobian_along(sigma, arc)
    rows = [jac[i] for i in projection]
    det = determinant(rows)
    if det.order() != e:
        raise CriticalArcError(f"projected Jacobian determinant has order {det.order()}, expected {e}")
    return _adjugate(rows), det.shift_down(e).inverse()


def hensel_lift(sigma, seed, target, level, cap=None, schedule='linear', target_ideal=None):
    """The unique eta with sigma(eta) = delta mod t^K and eta = gamma mod t^(n-e+1).

    The target is read as its exact polynomial representative. Newton steps
    either keep the Jacobian of the seed ('linear') or refresh it ('quadratic').
    """
    if schedule not in LIFT_SCHEDULES:
        raise ValueError(f"Unknown lift schedule '{schedule}'. Use one of: {', '.join(LIFT_SCHEDULES)}")
    _check_source_arc(sigma, seed)
    if len(target) != sigma.target_dim:
        raise VariableMismatchError(
            f"target arc has {len(target)} components, the map's target is {sigma.target}")
    _reject_parameters(seed, target)
    cap = cap or target.cap
    if seed.cap < level + 1 or cap < level + 1:
        raise PreconditionError(f"seed and target need cap >= n + 1 = {level + 1}")
    gamma = seed.recap(level + 1)
    e = _require_finite_e(sigma, gamma)
    if level < 2 * e:
        raise PreconditionError(f"hensel_lift needs n >= 2e, got n = {level}, e = {e}")
    if apply_map(sigma, gamma) != target.recap(level + 1):
        raise PreconditionError(f"sigma(seed) and the target differ modulo t^{level + 1}")
    if target_ideal is not None and not all(
            s.is_zero() for s in evaluate_generators(target_ideal, target.recap(cap))):
        raise PreconditionError("the target arc does not lie on the target variety")

    work = cap + e
    projection = choose_projection(sigma, gamma)
    delta = target.recap(work)
    eta = gamma.recap(work)
    adj, w_inv = _newton_operator(sigma, projection, eta, e)

    # corrections are certified modulo t^cap only; iterate until they vanish there
    for step in range(1, work + 2):
        image = apply_map(sigma, eta)
        residual = [image[i] - delta[i] for i in projection]
        if schedule == 'quadratic' and step > 1:
            adj, w_inv = _newton_operator(sigma, projection, eta, e)
        corrections = []
        for j in range(sigma.source_dim):
            acc = TruncSeries.zero(work)
            for i in range(len(projection)):
                acc = acc + adj[j][i] * residual[i]
            corrections.append(-(acc.shift_down(e) * w_inv))
        if all(c.is_zero() for c in corrections):
            break
        eta = Arc(a + b.recap(work) for a, b in zip(eta, corrections))
        logger.debug(f"lift step {step}: eta = {eta.recap(cap)}")
    else:
        raise CapTooSmallError(f"Newton iteration did not settle within {work + 1} steps")

    result = eta.recap(cap)
    if apply_map(sigma, result) != target.recap(cap):
        raise InfeasibleLiftError(
            f"no lift: sigma(eta) matches the target on coordinates {projection} only")
    if result.recap(level - e + 1) != seed.recap(level - e + 1):
        raise InfeasibleLiftError("the lift moved away from the seed")
    logger.info(f"lifted {target} through sigma (e={e}, {schedule} schedule)")
    return result
