"""
Text forms: polynomials / vectors and ordering spec strings.

Polynomials are read with sympy's expression parser and expanded with
``sympy.Poly``; ordering strings go through a small recursive-descent parser.
"""

import logging
import re
from typing import List, Tuple

from sympy import Dummy, Float, Integer, Poly, Rational
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import CoercionFailed, GeneratorsNeeded, PolynomialError

from tstd.errors import ParseError
from tstd.kernel.ordering import (Block, CompiledOrdering, DegLex, DegRevLex, ModuleExt,
                                  OrderingSpec, Priority, TInitialW, TLocalLex, WeightThen)
from tstd.kernel.polyring import ModuleMonomial, PolyVector, RingContext

logger = logging.getLogger(__name__)

TRANSFORMATIONS = standard_transformations + (convert_xor,)

_ALLOWED = re.compile(r"[\w\s+\-*^()/,.\[\]]")


def _check_characters(text: str) -> None:
    depth = 0
    for i, ch in enumerate(text, start=1):
        if not _ALLOWED.match(ch):
            raise ParseError(f"unexpected character '{ch}'", line=1, column=i)
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ')'", line=1, column=i)
    if depth:
        raise ParseError("missing ')'", line=1, column=len(text))


def _split_top_level(body: str) -> List[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        elif ch == ',' and depth == 0:
            parts.append(body[start:i])
            start = i + 1
    parts.append(body[start:])
    return parts


def parse_poly(text: str, ctx: RingContext, order: CompiledOrdering) -> PolyVector:
    """Parse ``c*t^a*x^b*gen(i) + ...`` or ``[p_1, ..., p_s]`` into a PolyVector."""
    stripped = text.strip()
    if stripped.startswith('['):
        if not stripped.endswith(']'):
            raise ParseError("vector is missing ']'", line=1, column=len(text))
        parts = _split_top_level(stripped[1:-1])
        if len(parts) != ctx.s:
            raise ParseError(f"vector has {len(parts)} entries, module rank is {ctx.s}", line=1, column=1)
        scalar_ctx, scalar_order = ctx.scalar(), order.scalar()
        components = [_parse_scalar_expr(part, scalar_ctx, scalar_order) for part in parts]
        return PolyVector.from_components(ctx, order, components)
    return _parse_scalar_expr(text, ctx, order)


def _parse_scalar_expr(text: str, ctx: RingContext, order: CompiledOrdering) -> PolyVector:
    if not text.strip():
        raise ParseError("empty polynomial", line=1, column=1)
    _check_characters(text)

    tsyms = [Dummy(name, positive=True) for name in ctx.tnames]
    xsyms = [Dummy(name) for name in ctx.xnames]
    esyms = [Dummy(f'e{j}') for j in range(1, ctx.s + 1)] if ctx.s > 1 else []

    def gen(i):
        if not isinstance(i, Integer) or not 1 <= int(i) <= ctx.s:
            raise ParseError(f"gen({i}) outside module rank {ctx.s}")
        return esyms[int(i) - 1] if esyms else Integer(1)

    local_dict = {'gen': gen}
    local_dict.update({name: sym ** ctx.denom for name, sym in zip(ctx.tnames, tsyms)})
    local_dict.update(dict(zip(ctx.xnames, xsyms)))

    try:
        expr = parse_expr(text, local_dict=local_dict, transformations=TRANSFORMATIONS)
    except ParseError:
        raise
    except SyntaxError as e:
        raise ParseError(f"syntax error in '{text.strip()}'", line=1, column=e.offset)
    except (AttributeError, TypeError, ValueError) as e:
        raise ParseError(f"cannot parse '{text.strip()}': {e}", line=1)

    if expr.atoms(Float):
        raise ParseError(f"floating-point coefficient in '{text.strip()}'", line=1)
    unknown = expr.free_symbols - set(tsyms) - set(xsyms) - set(esyms)
    if unknown:
        names = ', '.join(sorted(str(sym) for sym in unknown))
        raise ParseError(f"unknown variable {names}", line=1)

    gens = tsyms + xsyms + esyms
    try:
        poly = Poly(expr, *gens, domain=QQ)
    except (PolynomialError, CoercionFailed, GeneratorsNeeded) as e:
        raise ParseError(f"not a polynomial in the ring variables: '{text.strip()}' ({e})", line=1)

    m, n = ctx.m, ctx.n
    pairs = []
    for monom, coeff in poly.terms():
        if not coeff:
            continue
        comp = 1
        if esyms:
            epart = monom[m + n:]
            if sum(epart) != 1:
                raise ParseError(f"each term needs exactly one gen(i) in rank {ctx.s}", line=1)
            comp = epart.index(1) + 1
        pairs.append((ModuleMonomial(tuple(monom[:m]), tuple(monom[m:m + n]), comp),
                      ctx.field.convert(coeff)))
    return PolyVector.from_terms(ctx, order, pairs)


# Ordering spec strings

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<punct>[(),;|/+\-]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == '':
            break
        match = _TOKEN.match(text, pos)
        if not match:
            column = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character in ordering '{text[column - 1]}'", line=1, column=column)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind) + 1))
        pos = match.end()
    return tokens


class _OrderingParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else ('end', '', len(self.text) + 1)

    def take(self, value: str = None):
        kind, tok, column = self.peek()
        if kind == 'end' or (value is not None and tok != value):
            expected = f"'{value}'" if value else 'a token'
            raise ParseError(f"expected {expected} in ordering, got '{tok or 'end of input'}'",
                             line=1, column=column)
        self.pos += 1
        return tok

    def parse(self) -> OrderingSpec:
        spec = self.ordering()
        kind, tok, column = self.peek()
        if kind != 'end':
            raise ParseError(f"trailing input in ordering: '{tok}'", line=1, column=column)
        return spec

    def ordering(self) -> OrderingSpec:
        kind, tok, column = self.peek()
        if kind != 'name':
            raise ParseError(f"expected an ordering name, got '{tok or 'end of input'}'",
                             line=1, column=column)
        self.pos += 1
        if tok == 'lex':
            return TLocalLex()
        if tok == 'degrevlex':
            return DegRevLex()
        if tok == 'deglex':
            return DegLex()
        if tok == 'ws':
            self.take('(')
            weights = self.weights()
            self.take(')')
            return WeightThen(weights, self.ordering())
        if tok == 'block':
            self.take('(')
            names = [self.take()]
            while self.peek()[1] == ',':
                self.take(',')
                names.append(self.take())
            self.take('|')
            inner = self.ordering()
            self.take(')')
            return Block(tuple(names), inner)
        if tok == 'module':
            self.take('(')
            if self.peek()[1] == 'c':
                self.take('c')
                self.take(',')
                base, priority = self.ordering(), Priority.COMPONENT_FIRST
            else:
                base = self.ordering()
                self.take(',')
                self.take('c')
                priority = Priority.MONOMIAL_FIRST
            self.take(')')
            return ModuleExt(base, priority)
        if tok == 'tw':
            self.take('(')
            weights = self.weights()
            global_x = DegRevLex()
            if self.peek()[1] == ';':
                self.take(';')
                global_x = self.ordering()
            self.take(')')
            return TInitialW(weights, global_x)
        raise ParseError(f"unknown ordering '{tok}'", line=1, column=column)

    def weights(self) -> Tuple[Rational, ...]:
        values = [self.weight()]
        while self.peek()[1] == ',':
            self.take(',')
            values.append(self.weight())
        return tuple(values)

    def weight(self) -> Rational:
        sign = 1
        if self.peek()[1] in ('-', '+'):
            sign = -1 if self.take() == '-' else 1
        kind, tok, column = self.peek()
        if kind != 'num':
            raise ParseError(f"expected a rational weight, got '{tok or 'end of input'}'",
                             line=1, column=column)
        self.pos += 1
        value = Rational(int(tok))
        if self.peek()[1] == '/':
            self.take('/')
            kind, tok, column = self.peek()
            if kind != 'num' or int(tok) == 0:
                raise ParseError("invalid weight denominator", line=1, column=column)
            self.pos += 1
            value = value / int(tok)
        return sign * value


def parse_ordering(text: str) -> OrderingSpec:
    """Parse ``lex``, ``ws(-1,2) lex``, ``block(x | lex)``, ``module(c, lex)``, ``tw(-1,0 ; degrevlex)``."""
    return _OrderingParser(text).parse()


def _format_weights(weights) -> str:
    return ', '.join(str(Rational(w)) for w in weights)


def format_ordering(spec: OrderingSpec) -> str:
    if isinstance(spec, TLocalLex):
        return 'lex'
    if isinstance(spec, DegRevLex):
        return 'degrevlex'
    if isinstance(spec, DegLex):
        return 'deglex'
    if isinstance(spec, WeightThen):
        return f'ws({_format_weights(spec.weights)}) {format_ordering(spec.then)}'
    if isinstance(spec, Block):
        return f"block({', '.join(spec.outer_vars)} | {format_ordering(spec.inner)})"
    if isinstance(spec, ModuleExt):
        if spec.priority == Priority.COMPONENT_FIRST:
            return f'module(c, {format_ordering(spec.base)})'
        return f'module({format_ordering(spec.base)}, c)'
    if isinstance(spec, TInitialW):
        return f'tw({_format_weights(spec.w)} ; {format_ordering(spec.global_x)})'
    raise ParseError(f"ordering {type(spec).__name__} has no text form")
