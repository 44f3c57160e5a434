"""
Text formats
Polynomials, points, lines, hypersurface files and configuration files over
Q(zeta_n); see docs/format.md for the grammar
"""

import logging
import re
from math import lcm

from exceptions import (
    ConfigError, FieldMismatch, InhomogeneousInput, ParseError, StarPointError,
    UndeclaredVariable, WrongDegree,
)
from models import Hyperplane, Hypersurface, ProjLine, ProjPoint, SessionHeader
from services.configspace_service import config_space_service
from services.fields import CycloField
from services.polynomials import MultiPoly

logger = logging.getLogger(__name__)

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<var>X\d+)|(?P<zeta>z\d*)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


class _Token:
    __slots__ = ('kind', 'text', 'pos')

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos

    def __repr__(self):
        return f"<Token {self.kind} {self.text!r} @{self.pos}>"


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == '':
            break
        match = _TOKEN.match(text, pos)
        if not match:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[offset]!r}", offset)
        kind = match.lastgroup
        start = match.start(kind)
        if kind == 'name':
            raise UndeclaredVariable(f"unknown name {match.group(kind)!r}", start)
        tokens.append(_Token(kind, match.group(kind), start))
        pos = match.end()
    tokens.append(_Token('end', '', len(text)))
    return tokens


def infer_conductor(*texts):
    """lcm of every m in the z<m> literals; 1 when there are none"""
    conductor = 1
    for text in texts:
        for token in tokenize(text):
            if token.kind == 'zeta' and len(token.text) > 1:
                conductor = lcm(conductor, int(token.text[1:]))
    return conductor


def _max_variable(text):
    indices = [int(t.text[1:]) for t in tokenize(text) if t.kind == 'var']
    return max(indices, default=-1)


class _Parser:
    """Recursive descent over the token list"""

    def __init__(self, text, field, nvars, explicit_conductor):
        self.tokens = tokenize(text)
        self.index = 0
        self.field = field
        self.nvars = nvars
        self.explicit_conductor = explicit_conductor

    @property
    def current(self):
        return self.tokens[self.index]

    def _advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _expect(self, kind, text=None):
        token = self.current
        if token.kind != kind or (text is not None and token.text != text):
            wanted = text or kind
            raise ParseError(f"expected {wanted!r}, found {token.text or 'end of input'!r}", token.pos)
        return self._advance()

    def _starts_atom(self, token):
        return token.kind in ('num', 'var', 'zeta') or (token.kind == 'op' and token.text == '(')

    def parse(self):
        poly = self.expression()
        if self.current.kind != 'end':
            raise ParseError(f"unexpected {self.current.text!r}", self.current.pos)
        return poly

    def expression(self):
        sign = 1
        if self.current.kind == 'op' and self.current.text in '+-':
            sign = -1 if self._advance().text == '-' else 1
        total = self.term()
        if sign < 0:
            total = -total
        while self.current.kind == 'op' and self.current.text in '+-':
            op = self._advance().text
            term = self.term()
            total = total + term if op == '+' else total - term
        return total

    def term(self):
        product = self.power()
        while True:
            token = self.current
            if token.kind == 'op' and token.text == '*':
                self._advance()
                product = product * self.power()
            elif self._starts_atom(token):
                product = product * self.power()
            else:
                return product

    def power(self):
        base = self.atom()
        if self.current.kind == 'op' and self.current.text == '^':
            self._advance()
            exponent = self._expect('num')
            base = base ** int(exponent.text)
        return base

    def atom(self):
        token = self._advance()
        if token.kind == 'num':
            value = int(token.text)
            if self.current.kind == 'op' and self.current.text == '/':
                self._advance()
                denominator = self._expect('num')
                if int(denominator.text) == 0:
                    raise ParseError("zero denominator", denominator.pos)
                return MultiPoly.constant(self.field, self.nvars, self.field.from_rational(value) / int(denominator.text))
            return MultiPoly.constant(self.field, self.nvars, value)
        if token.kind == 'var':
            index = int(token.text[1:])
            if index >= self.nvars:
                raise UndeclaredVariable(f"{token.text} outside X0..X{self.nvars - 1}", token.pos)
            return MultiPoly.variable(self.field, self.nvars, index)
        if token.kind == 'zeta':
            return MultiPoly.constant(self.field, self.nvars, self._zeta(token))
        if token.kind == 'op' and token.text == '(':
            inner = self.expression()
            self._expect('op', ')')
            return inner
        raise ParseError(f"unexpected {token.text or 'end of input'!r}", token.pos)

    def _zeta(self, token):
        if len(token.text) == 1:
            if not self.explicit_conductor:
                raise ParseError("bare z needs a session conductor or --field", token.pos)
            return self.field.gen
        m = int(token.text[1:])
        if m == 0:
            raise ParseError("z0 is not a root of unity", token.pos)
        try:
            return self.field.zeta(m)
        except FieldMismatch as e:
            raise FieldMismatch(f"{e} (at position {token.pos})")


def _field_for(texts, conductor):
    if conductor is not None:
        return CycloField(conductor), True
    return CycloField(infer_conductor(*texts)), False


def parse_poly(text, nvars=None, field=None, conductor=None, homogeneous=False):
    """
    Parse a polynomial in X0..X_{nvars-1}

    Args:
        nvars: variable count; inferred from the largest index when None
        field: CycloField to parse into; otherwise Q(zeta_conductor) or the lcm of the literals
        homogeneous: raise InhomogeneousInput unless the result is a nonzero form

    Returns:
        MultiPoly
    """
    if field is not None:
        explicit = True
    else:
        field, explicit = _field_for([text], conductor)
    if nvars is None:
        nvars = _max_variable(text) + 1
    poly = _Parser(text, field, nvars, explicit).parse()
    if homogeneous and (poly.is_zero() or poly.homogeneous_degree() is None):
        raise InhomogeneousInput(f"{text.strip()!r} is not a nonzero homogeneous form")
    return poly


def parse_scalar(text, field, explicit=True):
    """One coordinate or coefficient: an expression without variables"""
    poly = _Parser(text, field, 0, explicit).parse()
    return poly.coefficient(())


def _strip_point_parens(text):
    text = text.strip()
    if not (text.startswith('(') and text.endswith(')')):
        return text
    depth = 0
    for k, ch in enumerate(text):
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
            if depth == 0 and k != len(text) - 1:
                return text
        elif ch == ':' and depth == 1:
            return text[1:-1]
    return text


def _split_top(text, separator):
    pieces, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        elif ch == separator and depth == 0:
            pieces.append(text[start:k])
            start = k + 1
    pieces.append(text[start:])
    return pieces


def parse_point(text, field=None, size=None, conductor=None):
    """'a:b:c' with field literals as coordinates"""
    if field is not None:
        explicit = True
    else:
        field, explicit = _field_for([text], conductor)
    body = _strip_point_parens(text)
    parts = _split_top(body, ':')
    if len(parts) < 2:
        raise ParseError(f"a point needs ':'-separated coordinates, got {text!r}", 0)
    if size is not None and len(parts) != size:
        raise WrongDegree(f"point {text!r} has {len(parts)} coordinates, expected {size}")
    return ProjPoint.of(field, [parse_scalar(p, field, explicit) for p in parts])


def parse_line(text, field=None, size=None, conductor=None):
    """Two points joined by ';'"""
    parts = _split_top(text, ';')
    if len(parts) != 2:
        raise ParseError(f"a line is two points joined by ';', got {text!r}", 0)
    if field is None:
        field = CycloField(conductor if conductor is not None else infer_conductor(text))
    return ProjLine(parse_point(parts[0], field, size), parse_point(parts[1], field, size))


def parse_plane(text, field, nvars):
    poly = parse_poly(text, nvars=nvars, field=field)
    return Hyperplane.from_form(poly)


# Files

def _strip_comments(text):
    lines = []
    for line in text.splitlines():
        line = line.split('#', 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def _parse_session(line):
    parts = line.split()
    if len(parts) != 4 or parts[0] != 'session':
        raise ParseError(f"expected 'session N d n', got {line!r}", 0)
    try:
        N, d, n = (int(p) for p in parts[1:])
    except ValueError:
        raise ParseError(f"session values must be integers: {line!r}", 0)
    return SessionHeader(ambient_dim=N, degree=d, conductor=n)


def _session_field(session, body, conductor):
    if conductor is not None:
        return CycloField(conductor)
    if session is not None:
        return CycloField(session.conductor)
    return CycloField(infer_conductor(body))


def parse_x_file(text, conductor=None):
    """
    A hypersurface file: optional 'session N d n' line, then the polynomial

    Args:
        conductor: --field override

    Returns:
        (Hypersurface, SessionHeader or None)
    """
    lines = _strip_comments(text)
    session = None
    if lines and lines[0].startswith('session'):
        session = _parse_session(lines.pop(0))
    body = ' '.join(lines)
    if not body:
        raise ParseError("no polynomial in the file", 0)
    field = _session_field(session, body, conductor)
    nvars = session.ambient_dim + 1 if session else None
    poly = parse_poly(body, nvars=nvars, field=field, homogeneous=True)
    if session and poly.homogeneous_degree() != session.degree:
        raise WrongDegree(f"polynomial has degree {poly.homogeneous_degree()}, session says {session.degree}")
    logger.info(f"parsed hypersurface of degree {poly.homogeneous_degree()} over Q(zeta_{field.conductor})")
    return Hypersurface(poly), session


def _split_triples(lines):
    blocks = []
    for line in lines:
        if line.startswith('triple:'):
            blocks.append(line[len('triple:'):])
        elif blocks:
            blocks[-1] += ' ' + line
        else:
            raise ParseError(f"expected 'triple:', got {line!r}", 0)
    return blocks


def _triple_fields(block, index):
    fields = {}
    for piece in block.split(';'):
        piece = piece.strip()
        if not piece:
            continue
        key, _, value = piece.partition(' ')
        if key not in ('plane', 'vertex', 'cone') or not value.strip():
            raise ConfigError(index, ParseError(f"expected 'plane', 'vertex' or 'cone', got {piece!r}", 0))
        fields[key] = value.strip()
    missing = [k for k in ('plane', 'vertex', 'cone') if k not in fields]
    if missing:
        raise ConfigError(index, ParseError(f"missing {', '.join(missing)}", 0))
    return fields


def parse_config(text, conductor=None, strict=True):
    """
    A configuration file: 'session N d n' then 'triple: plane ...; vertex ...; cone ...' blocks

    Returns:
        (Configuration, SessionHeader)

    Raises:
        ParseError, ConfigError (carrying the 1-based triple index)
    """
    lines = _strip_comments(text)
    if not lines or not lines[0].startswith('session'):
        raise ParseError("a configuration file starts with 'session N d n'", 0)
    session = _parse_session(lines.pop(0))
    field = _session_field(session, ' '.join(lines), conductor)
    nvars = session.ambient_dim + 1
    triples = []
    for index, block in enumerate(_split_triples(lines), start=1):
        fields = _triple_fields(block, index)
        try:
            plane = parse_plane(fields['plane'], field, nvars)
            vertex = parse_point(fields['vertex'], field, nvars)
            cone = parse_poly(fields['cone'], nvars=nvars, field=field, homogeneous=True)
            triples.append(config_space_service.validate_triple(plane, vertex, cone, session.degree, strict))
        except StarPointError as e:
            logger.error(f"triple {index} rejected: {e}")
            raise ConfigError(index, e)
    config = config_space_service.make_configuration(
        triples, ambient_dim=session.ambient_dim, degree=session.degree, field=field,
    )
    logger.info(f"parsed configuration of {config.size} triples")
    return config, session


# Writers

def format_point(point):
    return ':'.join(str(c) for c in point.coords)


def format_line(line):
    return f"{format_point(line.a)};{format_point(line.b)}"


def format_x_file(surface):
    header = f"session {surface.ambient_dim} {surface.degree} {surface.field.conductor}"
    return f"{header}\n{surface.equation}\n"


def format_config(config):
    """Text that parse_config reads back into the same configuration"""
    lines = [f"session {config.ambient_dim} {config.degree} {config.field.conductor}"]
    for triple in config.triples:
        lines.append(
            f"triple: plane {triple.plane}; vertex {format_point(triple.vertex)}; cone {triple.cone}"
        )
    return '\n'.join(lines) + '\n'
