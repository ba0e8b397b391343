#!/usr/bin/env python3
"""
Command-line front end.

Each subcommand loads its input files, runs one toolkit operation and prints
a result document as a text table or JSON. Exit codes: 0 on success
(including empty or infeasible mathematical results), 1 for usage and input
errors, 2 when a resource cap or the truncation cap is insufficient.
"""

import argparse
import logging
import sys

from algebra_core import CapTooSmallError, Unresolved, format_poly
from arc_analysis import (InfeasibleLiftError, LIFT_SCHEDULES, apply_map, choose_projection,
                          cov_fiber, delta_class, hensel_lift, ord_jacobian,
                          ord_series_ideal, t_smith_invariants)
from file_formats import (format_arc_rows, parse_divisor_text, parse_ideal_text,
                          parse_jet_text, parse_map_text, parse_matrix_text, read_text)
from groebner import ResourceLimitError, is_unit
from jet_engine import fiber_next_level, jet_dim, jet_ideal, obstruction_system
from motivic_ledger import (SIGMA, TILDE, MultiIndex, beta_stratum, compare_multiplicities,
                            difference_terms, dim_stratum, enumerate_An, format_support,
                            stratum_sum, zn_degree_bound)
from report_writer import render, write_workbook
from settings import (DEFAULT_CAP, DEFAULT_MAX_PAIRS, DEFAULT_LIMITS, GroebnerLimits,
                      OUTPUT_FORMATS, configure_logging, resolve_format)
from singular_locus import generator_subset_exact, h_ideal

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_LIMIT = 2


class UsageError(ValueError):
    """Bad command line."""


# --- Option helpers ---

def _int_option(options, name, required=True, default=None, minimum=0):
    value = options.get(name)
    if value is None:
        if required:
            raise UsageError(f"missing required option '{name}'")
        return default
    try:
        value = int(value)
    except (TypeError, ValueError):
        raise UsageError(f"option '{name}' must be an integer, got {value!r}") from None
    if value < minimum:
        raise UsageError(f"option '{name}' must be >= {minimum}, got {value}")
    return value


def _limits(options):
    return GroebnerLimits(
        max_degree=_int_option(options, 'max_degree', False, DEFAULT_LIMITS.max_degree, 1),
        max_basis=_int_option(options, 'max_basis', False, DEFAULT_LIMITS.max_basis, 1),
        max_pairs=DEFAULT_MAX_PAIRS)


def _input(inputs, role):
    if role not in inputs or inputs[role] is None:
        raise UsageError(f"missing input '{role}'")
    return inputs[role]


def _arc(inputs, role, options):
    """Arcs default to the configured cap when the file has no cap header."""
    cap = _int_option(options, 'cap', False, DEFAULT_CAP, 1)
    arc, _ = parse_jet_text(_input(inputs, role), cap)
    return arc


def _jet(inputs, options):
    """Jets take their level from the file; --cap only fills a missing header."""
    cap = _int_option(options, 'cap', False, None, 1)
    return parse_jet_text(_input(inputs, 'jet'), cap)[0]


def _order_text(order):
    return str(order)


def _vector(values):
    return [str(v) for v in values] if values is not None else None


# --- Jet engine ---

def cmd_jet_ideal(inputs, options):
    ideal = parse_ideal_text(_input(inputs, 'ideal'))
    level = _int_option(options, 'level')
    result = jet_ideal(ideal, level)
    return {
        'command': 'jet-ideal',
        'level': str(level),
        'variables': list(result.jet_vars),
        'params': list(ideal.params),
        'equation_count': str(len(result.equations.generators)),
        'equations': [format_poly(p) for p in result.equations.generators],
    }


def cmd_fiber(inputs, options):
    ideal = parse_ideal_text(_input(inputs, 'ideal'))
    jet = _jet(inputs, options)
    fiber = fiber_next_level(jet, ideal)
    return {
        'command': 'fiber',
        'jet': str(jet),
        'level': str(jet.level),
        'feasible': fiber.feasible,
        'dimension': str(fiber.dimension) if fiber.feasible else None,
        'basepoint': _vector(fiber.basepoint),
        'directions': [' '.join(str(v) for v in d) for d in fiber.directions],
    }


def cmd_obstruct(inputs, options):
    ideal = parse_ideal_text(_input(inputs, 'ideal'))
    jet = _jet(inputs, options)
    extra = _int_option(options, 'extra', minimum=1)
    system = obstruction_system(jet, ideal, extra)
    unknowns = system.ring[:len(system.ring) - len(system.params)]
    return {
        'command': 'obstruct',
        'jet': str(jet),
        'extra': str(extra),
        'unknowns': list(unknowns),
        'params': list(system.params),
        'inconsistent': any(g.is_constant() for g in system.generators),
        'conditions': [format_poly(g) for g in system.generators],
    }


def cmd_dim(inputs, options):
    ideal = parse_ideal_text(_input(inputs, 'ideal'))
    level = _int_option(options, 'level')
    dim = _int_option(options, 'dim', required=False)
    value = jet_dim(ideal, level, _limits(options))
    doc = {'command': 'dim', 'level': str(level), 'jet_dim': str(value)}
    if dim is not None:
        bound = (level + 1) * dim
        doc['lower_bound'] = str(bound)
        doc['bound_holds'] = value >= bound
    return doc


# --- Singular locus ---

def cmd_sing_ideal(inputs, options):
    ideal = parse_ideal_text(_input(inputs, 'ideal'))
    dim = _int_option(options, 'dim')
    limits = _limits(options)
    h = h_ideal(ideal, dim, limits)
    exact = generator_subset_exact(ideal, dim)
    doc = {
        'command': 'sing-ideal',
        'dim': str(dim),
        'generators': [format_poly(g) for g in h.gb],
        'singular_locus_empty': is_unit(h, limits),
        'generator_subset_exact': exact,
    }
    if not exact:
        doc['note'] = "H restricted to generator subsets; it may be smaller than the full ideal"
    return doc


def _target_h(inputs, options):
    ideal = parse_ideal_text(_input(inputs, 'ideal'))
    dim = _int_option(options, 'dim', required=False)
    if dim is None:
        return ideal
    return h_ideal(ideal, dim, _limits(options))


def cmd_h_order(inputs, options):
    h = _target_h(inputs, options)
    arc = _arc(inputs, 'arc', options)
    order = ord_series_ideal(arc, h)
    return {
        'command': 'h-order',
        'arc': str(arc),
        'h_generators': [format_poly(g) for g in (h.gb if h.gb is not None else h.generators)],
        'order': _order_text(order),
        'unresolved': isinstance(order, Unresolved),
    }


# --- Arc analysis ---

def cmd_ord(inputs, options):
    sigma = parse_map_text(_input(inputs, 'map'))
    arc = _arc(inputs, 'arc', options)
    e = ord_jacobian(sigma, arc)
    doc = {
        'command': 'ord',
        'arc': str(arc),
        'image': str(apply_map(sigma, arc)),
        'e': _order_text(e),
    }
    if inputs.get('ideal') is not None:
        delta = delta_class(sigma, arc, _target_h(inputs, options))
        doc['eprime'] = _order_text(delta.eprime)
    level = _int_option(options, 'level', required=False)
    if level is not None:
        if not isinstance(e, int):
            raise CapTooSmallError(f"ord_t Jac is unresolved at cap {arc.cap}")
        projection = choose_projection(sigma, arc)
        fiber = cov_fiber(sigma, arc, level, e)
        rows = sigma.jacobian().along(arc.recap(level + 1))
        smith = t_smith_invariants([rows[i] for i in projection])
        doc['projection'] = [sigma.target[i] for i in projection]
        doc['smith_invariants'] = _vector(smith) if isinstance(smith, tuple) else str(smith)
        doc['fiber_dimension'] = str(fiber.dimension)
    return doc


def cmd_smith(inputs, options):
    cap = _int_option(options, 'cap', False, None, 1)
    rows = parse_matrix_text(_input(inputs, 'matrix'), cap)
    invariants = t_smith_invariants(rows)
    if isinstance(invariants, Unresolved):
        return {'command': 'smith', 'cap': str(rows[0][0].cap),
                'invariants': str(invariants), 'certified': False}
    return {
        'command': 'smith',
        'cap': str(rows[0][0].cap),
        'invariants': _vector(invariants),
        'sum': str(sum(invariants)),
        'certified': True,
    }


def cmd_lift(inputs, options):
    sigma = parse_map_text(_input(inputs, 'map'))
    target = _arc(inputs, 'target', options)
    seed = _arc(inputs, 'seed', options)
    level = _int_option(options, 'level')
    cap = _int_option(options, 'cap', False, None, 1)
    schedule = options.get('schedule') or 'linear'
    doc = {'command': 'lift', 'target': str(target), 'seed': str(seed), 'level': str(level)}
    try:
        eta = hensel_lift(sigma, seed, target, level, cap=cap, schedule=schedule)
    except InfeasibleLiftError as exc:
        doc.update({'feasible': False, 'reason': str(exc)})
        return doc
    doc.update({
        'feasible': True,
        'e': str(ord_jacobian(sigma, seed.recap(level + 1))),
        'lift': str(eta),
        'rows': format_arc_rows(eta),
        'verified': apply_map(sigma, eta) == target.recap(eta.cap),
    })
    return doc


# --- Motivic ledger ---

def _which(options):
    which = options.get('which') or SIGMA
    if which not in (SIGMA, TILDE):
        raise UsageError(f"--which must be '{SIGMA}' or '{TILDE}', got '{which}'")
    return which


def cmd_strata(inputs, options):
    data = parse_divisor_text(_input(inputs, 'divisors'))
    level = _int_option(options, 'level')
    which = _which(options)
    rows = []
    for j in enumerate_An(data, level, which):
        beta = beta_stratum(data, j, level, which)
        rows.append({
            'j': str(j),
            'support': format_support(data.ordered(j.support)),
            's': str(j.s),
            'e': str(j.e(data, which)),
            'eprime': str(j.eprime(data, which)),
            'dim': str(dim_stratum(data, j, level, which)),
            'beta': str(beta),
        })
    return {
        'command': 'strata',
        'level': str(level),
        'map': which,
        'strata_count': str(len(rows)),
        'total': str(stratum_sum(data, level, which)),
        'zn_degree_bound': str(zn_degree_bound(data, level, which)),
        'tables': {'strata': rows},
    }


def cmd_beta(inputs, options):
    data = parse_divisor_text(_input(inputs, 'divisors'))
    level = _int_option(options, 'level')
    which = _which(options)
    if options.get('j') is None:
        raise UsageError("missing required option 'j'")
    j = MultiIndex.parse(options['j'], data)
    in_an = any(k.values == j.values for k in enumerate_An(data, level, which))
    beta = beta_stratum(data, j, level, which)
    return {
        'command': 'beta',
        'level': str(level),
        'map': which,
        'j': str(j),
        'in_An': in_an,
        'beta': str(beta),
        'degree': str(beta.degree),
        'dim': str(dim_stratum(data, j, level, which)),
    }


def cmd_compare_nu(inputs, options):
    data = parse_divisor_text(_input(inputs, 'divisors'))
    n_max = _int_option(options, 'nmax')
    report = compare_multiplicities(data, n_max)
    rows = []
    for row in report.rows:
        terms = difference_terms(data, row.level)
        rows.append({
            'n': str(row.level),
            'K_n': [str(k) for k in row.k_values],
            'k_n': str(row.k_min) if row.k_min is not None else None,
            'deg_Q': str(row.q_degree) if row.q_degree is not None else None,
            'threshold': str(row.threshold),
            'stabilized': row.stabilized,
            'forced': row.forced,
            'sign_Q': str(terms.q_leading_sign),
            'deg_R': str(terms.r.degree),
            'R_below_bound': terms.r_within_bound,
            'deg_S': str(terms.s.degree),
            'S_below_bound': terms.s_within_bound,
        })
    return {
        'command': 'compare-nu',
        'nmax': str(n_max),
        'c': str(report.c),
        'c_tilde': str(report.c_tilde),
        'window': str(report.window),
        'verdict': report.verdict,
        'forced_at': str(report.forced_at) if report.forced_at is not None else None,
        'notes': list(report.notes),
        'tables': {'levels': rows},
    }


COMMANDS = {
    'jet-ideal': cmd_jet_ideal,
    'fiber': cmd_fiber,
    'obstruct': cmd_obstruct,
    'dim': cmd_dim,
    'sing-ideal': cmd_sing_ideal,
    'h-order': cmd_h_order,
    'ord': cmd_ord,
    'smith': cmd_smith,
    'lift': cmd_lift,
    'strata': cmd_strata,
    'beta': cmd_beta,
    'compare-nu': cmd_compare_nu,
}

# input role -> argparse destination, per subcommand
COMMAND_INPUTS = {
    'jet-ideal': {'ideal': 'file'},
    'fiber': {'ideal': 'file', 'jet': 'jet'},
    'obstruct': {'ideal': 'file', 'jet': 'jet'},
    'dim': {'ideal': 'file'},
    'sing-ideal': {'ideal': 'file'},
    'h-order': {'ideal': 'file', 'arc': 'arc'},
    'ord': {'map': 'map', 'arc': 'arc', 'ideal': 'ideal'},
    'smith': {'matrix': 'matrix'},
    'lift': {'map': 'map', 'target': 'target', 'seed': 'seed'},
    'strata': {'divisors': 'file'},
    'beta': {'divisors': 'file'},
    'compare-nu': {'divisors': 'file'},
}

OPTION_NAMES = ('level', 'extra', 'dim', 'cap', 'max_degree', 'max_basis', 'nmax',
                'j', 'which', 'schedule')


def execute(command, inputs, options=None):
    """Run one subcommand on input texts; returns the result document."""
    if command not in COMMANDS:
        raise UsageError(f"Unknown command '{command}'. Use one of: {', '.join(COMMANDS)}")
    logger.info(f"running {command} with options {options or {}}")
    return COMMANDS[command](inputs, dict(options or {}))


# --- Argument parsing ---

class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = _ArgumentParser(add_help=False)
    common.add_argument('--format', choices=OUTPUT_FORMATS, default=None,
                        help='output format (default: JETKIT_FORMAT or text)')
    common.add_argument('--cap', type=int, default=None, help=f'truncation cap K (default {DEFAULT_CAP})')
    common.add_argument('--max-degree', type=int, default=None, help='Groebner total-degree cap')
    common.add_argument('--max-basis', type=int, default=None, help='Groebner basis-size cap')
    common.add_argument('-v', '--verbose', action='store_true', help='log progress to stderr')

    parser = _ArgumentParser(prog='jetkit', description='Exact arc and jet toolkit')
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    p = sub.add_parser('jet-ideal', parents=[common], help='equations of the n-jet space')
    p.add_argument('--level', type=int, required=True)
    p.add_argument('file')

    for name, text in (('fiber', 'fiber of the next truncation over a jet'),
                       ('obstruct', 'lifting conditions on higher coefficients')):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument('--jet', required=True)
        if name == 'obstruct':
            p.add_argument('--extra', type=int, required=True)
        p.add_argument('file')

    p = sub.add_parser('dim', parents=[common], help='dimension of the n-jet space')
    p.add_argument('--level', type=int, required=True)
    p.add_argument('--dim', type=int, default=None, help='d, to report the (n+1)d lower bound')
    p.add_argument('file')

    p = sub.add_parser('sing-ideal', parents=[common], help='singular-locus ideal H')
    p.add_argument('--dim', type=int, required=True)
    p.add_argument('file')

    p = sub.add_parser('h-order', parents=[common], help='order of an arc along H')
    p.add_argument('--arc', required=True)
    p.add_argument('--dim', type=int, default=None, help='compute H from the ideal of X in dimension d')
    p.add_argument('file')

    p = sub.add_parser('ord', parents=[common], help='Jacobian order of a map along an arc')
    p.add_argument('--map', required=True)
    p.add_argument('--arc', required=True)
    p.add_argument('--ideal', default=None, help='H on the target (or the ideal of X with --dim)')
    p.add_argument('--dim', type=int, default=None)
    p.add_argument('--level', type=int, default=None, help='also report the change-of-variables fiber')

    p = sub.add_parser('smith', parents=[common], help='t-adic Smith invariants of a matrix')
    p.add_argument('--matrix', required=True)

    p = sub.add_parser('lift', parents=[common], help='Hensel lift of a target arc')
    p.add_argument('--map', required=True)
    p.add_argument('--target', required=True)
    p.add_argument('--seed', required=True)
    p.add_argument('--level', type=int, required=True)
    p.add_argument('--schedule', choices=LIFT_SCHEDULES, default='linear')

    p = sub.add_parser('strata', parents=[common], help='strata census A_n with their classes')
    p.add_argument('--level', type=int, required=True)
    p.add_argument('--which', choices=(SIGMA, TILDE), default=SIGMA)
    p.add_argument('--xlsx', default=None, help='also write a workbook')
    p.add_argument('file')

    p = sub.add_parser('beta', parents=[common], help='class of a single stratum')
    p.add_argument('--level', type=int, required=True)
    p.add_argument('--j', required=True, help='multi-index, e.g. "E1=1 E2=2"')
    p.add_argument('--which', choices=(SIGMA, TILDE), default=SIGMA)
    p.add_argument('file')

    p = sub.add_parser('compare-nu', parents=[common], help='degree comparison of nu and nutilde')
    p.add_argument('--nmax', type=int, required=True)
    p.add_argument('--xlsx', default=None, help='also write a workbook')
    p.add_argument('file')
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        fmt = resolve_format(args.format)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    configure_logging('INFO' if args.verbose else None)

    try:
        inputs = {}
        for role, dest in COMMAND_INPUTS[args.command].items():
            path = getattr(args, dest, None)
            inputs[role] = read_text(path) if path else None
        options = {name: getattr(args, name) for name in OPTION_NAMES
                   if getattr(args, name, None) is not None}
        doc = execute(args.command, inputs, options)
        if getattr(args, 'xlsx', None):
            write_workbook(doc, args.xlsx)
    except (ResourceLimitError, CapTooSmallError) as exc:
        logger.error(f"{args.command}: {exc}")
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_LIMIT
    except (ValueError, OSError) as exc:
        logger.debug(f"{args.command} failed", exc_info=True)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE

    sys.stdout.write(render(doc, fmt))
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
