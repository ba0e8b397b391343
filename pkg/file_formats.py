"""
Loaders for the text input formats: ideals, jets/arcs, maps, series
matrices and divisor data. Parsers take the file text; the CLI reads files
with `read_text` and the API receives the text in its JSON body.
"""

import logging
import re
from pathlib import Path

from algebra_core import Arc, MPoly, ParseError, TruncSeries, parse_poly
from arc_analysis import PolyMap
from groebner import Ideal
from motivic_ledger import VPP, DivisorData

logger = logging.getLogger(__name__)

_HEADER_RE = re.compile(r'^([A-Za-z][A-Za-z_]*(?:\s*\{[^}]*\})?)\s*:\s*(.*)$')


def _lines(text):
    """(line number, key or None, rest) for every non-blank, non-comment line."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        match = _HEADER_RE.match(line)
        if match:
            yield number, match.group(1).strip(), match.group(2).strip()
        else:
            yield number, None, line


def _names(value, number):
    names = value.replace(',', ' ').split()
    for name in names:
        if not re.fullmatch(r'[A-Za-z_][A-Za-z0-9_]*', name):
            raise ParseError(f"invalid variable name '{name}'", line=number)
    if len(set(names)) != len(names):
        raise ParseError(f"repeated name in '{value}'", line=number)
    return tuple(names)


def _int(value, number, label):
    if not re.fullmatch(r'\d+', value.strip()):
        raise ParseError(f"{label} must be a nonnegative integer, got '{value}'", line=number)
    return int(value)


def _poly(text, variables, number):
    try:
        return parse_poly(text, variables)
    except ParseError as exc:
        raise ParseError(str(exc), line=number) from None


def read_text(path):
    return Path(path).read_text(encoding='utf-8')


# --- Ideals ---

def parse_ideal_text(text):
    variables, params, gens = None, (), []
    for number, key, value in _lines(text):
        if key == 'vars':
            variables = _names(value, number)
        elif key == 'params':
            params = _names(value, number)
        elif key == 'gen':
            gens.append((number, value))
        else:
            raise ParseError(f"unexpected line '{value if key is None else key}' in ideal file", line=number)
    if variables is None:
        raise ParseError("ideal file has no 'vars:' line")
    clash = set(variables) & set(params)
    if clash:
        raise ParseError(f"names used both as variables and parameters: {sorted(clash)}")
    ring = variables + params
    generators = tuple(_poly(value, ring, number) for number, value in gens)
    logger.debug(f"ideal over {list(ring)} with {len(generators)} generators")
    return Ideal(ring, generators, params)


# --- Jets and arcs ---

def parse_jet_text(text, default_cap=None):
    """An arc: optional 'cap: K' and 'params: a b', then one coefficient row per component."""
    cap, params, rows = None, (), []
    for number, key, value in _lines(text):
        if key == 'cap':
            cap = _int(value, number, 'cap')
            if cap < 1:
                raise ParseError("cap must be at least 1", line=number)
        elif key == 'params':
            params = _names(value, number)
        elif key is None:
            rows.append((number, value.split()))
        else:
            raise ParseError(f"unexpected header '{key}' in jet file", line=number)
    if not rows:
        raise ParseError("jet file has no coefficient rows")
    cap = cap or default_cap or max(len(tokens) for _, tokens in rows)
    components = []
    for number, tokens in rows:
        if len(tokens) > cap:
            raise ParseError(f"{len(tokens)} coefficients exceed the cap {cap}", line=number)
        coeffs = []
        for token in tokens:
            coeff = _poly(token, params, number)
            coeffs.append(coeff if not coeff.is_constant() else coeff.constant_value())
        components.append(TruncSeries(coeffs, cap))
    return Arc(components), params


# --- Maps ---

def parse_map_text(text):
    source, target, comps = None, None, []
    for number, key, value in _lines(text):
        if key == 'source':
            source = _names(value, number)
        elif key == 'target':
            target = _names(value, number)
        elif key == 'comp':
            comps.append((number, value))
        else:
            raise ParseError(f"unexpected line '{value if key is None else key}' in map file", line=number)
    if source is None or target is None:
        raise ParseError("map file needs 'source:' and 'target:' lines")
    if len(comps) != len(target):
        raise ParseError(f"map file has {len(comps)} components for {len(target)} target coordinates")
    return PolyMap(source, target, tuple(_poly(value, source, number) for number, value in comps))


# --- Series matrices ---

def parse_matrix_text(text, default_cap=None):
    """Rows 'row: p1, p2, ...' of polynomials in t, read modulo t^cap."""
    cap, rows = None, []
    for number, key, value in _lines(text):
        if key == 'cap':
            cap = _int(value, number, 'cap')
        elif key == 'row':
            rows.append([_poly(entry, ('t',), number) for entry in value.split(',')])
        else:
            raise ParseError(f"unexpected line '{value if key is None else key}' in matrix file", line=number)
    cap = cap or default_cap
    if not cap:
        raise ParseError("matrix file needs a cap (header 'cap: K' or --cap)")
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("matrix rows are missing or of different lengths")
    return [[TruncSeries.from_poly(p, cap) for p in row] for row in rows]


# --- Divisor data ---

_SUPPORT_RE = re.compile(r'^beta\s*\{([^}]*)\}$')


def _divisor_line(value, number):
    tokens = value.split()
    if not tokens:
        raise ParseError("empty divisor line", line=number)
    name, fields = tokens[0], {}
    for token in tokens[1:]:
        label, sep, raw = token.partition('=')
        if not sep or label not in ('nu', 'lambda', 'nutilde', 'lambdatilde'):
            raise ParseError(f"unexpected divisor field '{token}'", line=number)
        fields[label] = _int(raw, number, label)
    if 'nu' not in fields:
        raise ParseError(f"divisor {name} has no nu", line=number)
    return name, fields


def parse_divisor_text(text):
    dim, divisors, beta = None, [], {}
    for number, key, value in _lines(text):
        if key == 'd':
            dim = _int(value, number, 'd')
        elif key == 'div':
            divisors.append(_divisor_line(value, number))
        elif key is not None and _SUPPORT_RE.match(key):
            support = frozenset(_names(_SUPPORT_RE.match(key).group(1), number))
            try:
                beta[support] = VPP.parse(value)
            except (ParseError, ValueError) as exc:
                raise ParseError(f"bad beta polynomial: {exc}", line=number) from None
        else:
            raise ParseError(f"unexpected line '{value if key is None else key}' in divisor file", line=number)
    if dim is None:
        raise ParseError("divisor file has no 'd:' line")
    names = tuple(name for name, _ in divisors)
    with_tilde = [name for name, f in divisors if 'nutilde' in f]
    if with_tilde and len(with_tilde) != len(divisors):
        raise ParseError("nutilde must be given for every divisor or for none")
    nutilde = tuple(f['nutilde'] for _, f in divisors) if with_tilde else None
    lamtilde = tuple(f.get('lambdatilde', 0) for _, f in divisors) if with_tilde else None
    return DivisorData(dim, names,
                       tuple(f['nu'] for _, f in divisors),
                       tuple(f.get('lambda', 0) for _, f in divisors),
                       beta, nutilde, lamtilde)


def format_arc_rows(arc):
    """Inverse of the jet-file coefficient rows."""
    def text(c):
        return str(c).replace(' ', '') if isinstance(c, MPoly) else str(c)
    return [' '.join(text(c) for c in series.coeffs) for series in arc]
