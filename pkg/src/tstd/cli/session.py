"""
Session files: one JSON document holding the ring, the ordering and named ideals.

    {
      "ring": {"field": "QQ", "tvars": ["t"], "xvars": ["x", "y"], "rank": 1, "denom": 1},
      "order": "lex",
      "ideals": {"I": ["x - t", "y - t"]}
    }
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from tstd.errors import ContextError, FieldError, OrderingError, ParseError
from tstd.kernel.coeff import FieldSpec
from tstd.kernel.ordering import CompiledOrdering, OrderingSpec, compile_ordering
from tstd.kernel.parsing import format_ordering, parse_ordering, parse_poly
from tstd.kernel.polyring import PolyVector, RingContext
from tstd.stdbasis.standard_basis import GeneratorSet

logger = logging.getLogger(__name__)

SESSION_KEYS = ('ring', 'order', 'ideals')
RING_KEYS = ('field', 'tvars', 'xvars', 'rank', 'denom')


def _line_of(text: Optional[str], needle: str) -> Optional[int]:
    if not text:
        return None
    index = text.find(needle)
    if index < 0:
        return None
    return text.count('\n', 0, index) + 1


@dataclass
class Session:
    """A parsed session: ring context, compiled ordering and named generator lists."""

    ctx: RingContext
    order: CompiledOrdering
    ideals: Dict[str, List[PolyVector]] = field(default_factory=dict)
    path: Optional[str] = None

    @property
    def order_spec(self) -> OrderingSpec:
        return self.order.spec

    @classmethod
    def from_dict(cls, data: Dict[str, Any], path: Optional[str] = None,
                  text: Optional[str] = None) -> 'Session':
        """Validate a decoded session; ``text`` is only used to locate errors."""

        def fail(message: str, needle: Optional[str] = None) -> ParseError:
            line = _line_of(text, needle) if needle else None
            logger.error(f"Invalid session {path or '<text>'}: {message}")
            return ParseError(message, line=line, path=path)

        if not isinstance(data, dict):
            raise fail("session must be a JSON object")
        for key in data:
            if key not in SESSION_KEYS:
                raise fail(f"unknown key '{key}'", f'"{key}"')
        for key in SESSION_KEYS:
            if key not in data:
                raise fail(f"missing key '{key}'")

        ring = data['ring']
        if not isinstance(ring, dict):
            raise fail("'ring' must be an object", '"ring"')
        for key in ring:
            if key not in RING_KEYS:
                raise fail(f"unknown ring key '{key}'", f'"{key}"')
        tvars, xvars = ring.get('tvars', []), ring.get('xvars', [])
        if not all(isinstance(name, str) for name in list(tvars) + list(xvars)):
            raise fail("variable names must be strings", '"ring"')
        try:
            ctx = RingContext(len(tvars), len(xvars), int(ring.get('rank', 1)),
                              FieldSpec.from_text(str(ring.get('field', 'QQ'))),
                              int(ring.get('denom', 1)), tuple(tvars) + tuple(xvars))
        except (ValueError, TypeError, FieldError) as exc:
            raise fail(str(exc), '"ring"') from exc

        order_text = data['order']
        if not isinstance(order_text, str):
            raise fail("'order' must be a string", '"order"')
        try:
            order = compile_ordering(parse_ordering(order_text), ctx)
        except ParseError as exc:
            raise exc.at(path, _line_of(text, '"order"')) from exc
        except OrderingError as exc:
            raise fail(str(exc), '"order"') from exc

        ideals = data['ideals']
        if not isinstance(ideals, dict) or not ideals:
            raise fail("'ideals' must be a nonempty object", '"ideals"')
        parsed: Dict[str, List[PolyVector]] = {}
        for name, gens in ideals.items():
            if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
                raise fail(f"ideal '{name}' must be a list of strings", f'"{name}"')
            parsed[name] = []
            for g in gens:
                try:
                    parsed[name].append(parse_poly(g, ctx, order))
                except ParseError as exc:
                    raise exc.at(path, _line_of(text, json.dumps(g))) from exc
        logger.debug(f"Session {path or '<text>'} has ideals {list(parsed)}")
        return cls(ctx, order, parsed, path)

    def generators(self, name: Optional[str] = None) -> GeneratorSet:
        """The named ideal (the first one by default), zeros dropped."""
        name = name or next(iter(self.ideals))
        if name not in self.ideals:
            raise ContextError(f"no ideal named '{name}' in the session")
        return GeneratorSet.of(self.ideals[name], self.order)

    def poly(self, text: str) -> PolyVector:
        return parse_poly(text, self.ctx, self.order)

    def with_order(self, order_text: str) -> 'Session':
        """Same ring and ideals, re-sorted under another ordering."""
        order = compile_ordering(parse_ordering(order_text), self.ctx)
        ideals = {name: [g.reorder(order) for g in gens] for name, gens in self.ideals.items()}
        return Session(self.ctx, order, ideals, self.path)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'ring': {
                'field': str(self.ctx.field),
                'tvars': list(self.ctx.tnames),
                'xvars': list(self.ctx.xnames),
                'rank': self.ctx.s,
                'denom': self.ctx.denom,
            },
            'order': format_ordering(self.order_spec),
            'ideals': {name: [g.to_text() for g in gens] for name, gens in self.ideals.items()},
        }

    def to_text(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + '\n'


def parse_session(text: str, path: Optional[str] = None) -> Session:
    """Decode and validate a session document.

    Raises:
        ParseError: with path and line for JSON syntax errors, unknown keys,
            bad polynomials and rejected orderings.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno, path=path) from exc
    return Session.from_dict(data, path=path, text=text)


def load_session(path: str) -> Session:
    with open(path, encoding='utf-8') as handle:
        return parse_session(handle.read(), path=path)
