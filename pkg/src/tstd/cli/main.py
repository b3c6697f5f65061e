#!/usr/bin/env python3
"""
tstd command line: standard bases, divisions and ideal operations on a session file.

Exit codes: 0 success or true, 1 false, 2 usage or session error, 3 math error.
"""

import argparse
import logging
import sys
from typing import Callable, List, Optional, Sequence

from tstd.cli.session import Session, load_session
from tstd.config import current_config
from tstd.division.hddwr import Folded, Truncated, hddwr
from tstd.division.mora import dwr, dwr_strong
from tstd.errors import ContextError, OrderingError, ParseError, TstdError
from tstd.idealops.ideal_ops import EliminationSpec, eliminate, intersect, quotient, saturate
from tstd.kernel.parsing import parse_ordering
from tstd.kernel.polyring import PolyVector
from tstd.stdbasis.standard_basis import GeneratorSet, is_standard_basis, membership, minimalize, std
from tstd.stdbasis.syzygy import syz
from tstd.tropical.initial_forms import PuiseuxIdeal, WeightVectorW, rescale_ideal, tinitial_ideal

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_MATH = 3


def _poly_list(polys: Sequence[PolyVector]) -> str:
    return '[' + ', '.join(p.to_text() for p in polys) + ']'


class CommandRunner:
    """Runs one subcommand against a loaded session and prints canonical text."""

    def __init__(self, args: argparse.Namespace, out=None):
        self.args = args
        self.out = out or sys.stdout
        self.session: Optional[Session] = None

    def emit(self, line: str = '') -> None:
        print(line, file=self.out)

    def emit_generators(self, gens: Sequence[PolyVector]) -> None:
        """One monic generator per line; the zero ideal prints as 0."""
        if not gens:
            self.emit('0')
        for g in gens:
            self.emit(g.monic().to_text())

    def load(self) -> Session:
        session = load_session(self.args.session)
        if self.args.order:
            session = session.with_order(self.args.order)
        return session

    def inner_spec(self):
        """Ordering spec for the non-eliminated variables (--inner or the session's)."""
        if getattr(self.args, 'inner', None):
            return parse_ordering(self.args.inner)
        return self.session.order_spec

    def ideal(self) -> GeneratorSet:
        return self.session.generators(self.args.ideal)

    # Subcommands

    def cmd_std(self) -> int:
        basis = std(self.ideal())
        if self.args.reduce:
            basis = minimalize(basis)
        self.emit_generators(basis.gens)
        return EXIT_OK

    def cmd_check(self) -> int:
        verified = is_standard_basis(self.ideal())
        self.emit('true' if verified else 'false')
        return EXIT_OK if verified else EXIT_FALSE

    def cmd_nf(self) -> int:
        G = self.ideal()
        f = self.session.poly(self.args.poly)
        divide = dwr_strong if self.args.mode == 'strong' else dwr
        result = divide(f, G.gens, G.order)
        self.emit(f'u = {result.u.to_text()}')
        self.emit(f'q = {_poly_list(result.q)}')
        self.emit(f'r = {result.r.to_text()}')
        return EXIT_OK

    def cmd_hddwr(self) -> int:
        G = self.ideal()
        f = self.session.poly(self.args.poly)
        mode = Truncated(self.args.prec) if self.args.prec is not None else Folded()
        result = hddwr(f, G.gens, G.order, mode)
        self.emit(f'q = {_poly_list(result.q)}')
        self.emit(f'r = {result.r.to_text()}')
        if isinstance(mode, Truncated):
            self.emit(f'residual = {result.residual.to_text()}')
        return EXIT_OK

    def cmd_member(self) -> int:
        contained = membership(self.session.poly(self.args.poly), self.ideal())
        self.emit('true' if contained else 'false')
        return EXIT_OK if contained else EXIT_FALSE

    def cmd_syz(self) -> int:
        syzygies = syz(self.ideal())
        if not syzygies:
            self.emit('0')
        for s in syzygies:
            self.emit(s.vector.to_text(vector_form=True))
        return EXIT_OK

    def cmd_eliminate(self) -> int:
        names = tuple(name.strip() for name in self.args.vars.split(',') if name.strip())
        result = eliminate(self.ideal(), EliminationSpec(names), self.inner_spec())
        self.emit_generators(result.gens)
        return EXIT_OK

    def cmd_intersect(self) -> int:
        other = self.session.generators(self.args.other)
        result = intersect(self.ideal(), other, self.inner_spec())
        self.emit_generators(result.gens)
        return EXIT_OK

    def cmd_quotient(self) -> int:
        result = quotient(self.ideal(), self.session.poly(self.args.by), self.inner_spec())
        self.emit_generators(result.gens)
        return EXIT_OK

    def cmd_saturate(self) -> int:
        result = saturate(self.ideal(), self.session.poly(self.args.by), self.inner_spec())
        self.emit_generators(result.gens)
        return EXIT_OK

    def cmd_tinitial(self) -> int:
        ideal = PuiseuxIdeal(list(self.ideal().gens))
        if self.args.denom is not None:
            if self.args.denom % ideal.denom:
                raise ContextError(f"--denom {self.args.denom} is not a multiple of "
                                   f"the session denominator {ideal.denom}")
            ideal = rescale_ideal(ideal, self.args.denom // ideal.denom)
        w = WeightVectorW.parse(self.args.w)
        self.emit_generators(tinitial_ideal(ideal, w, parse_ordering(self.args.global_order)))
        return EXIT_OK

    def run(self) -> int:
        handler: Callable[[], int] = getattr(self, f'cmd_{self.args.command}')
        try:
            self.session = self.load()
            logger.debug(f"Running {self.args.command} on {self.args.session}")
            return handler()
        except (ParseError, ContextError, OrderingError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except TstdError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_MATH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='tstd',
                                     description="Standard bases over K[[t]][x] from a session file.")
    sub = parser.add_subparsers(dest='command', required=True)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument('session', help="Session file (JSON)")
        p.add_argument('--ideal', help="Ideal name in the session (default: the first)")
        p.add_argument('--order', help="Override the session ordering")
        return p

    p = command('std', "Standard basis of the ideal")
    p.add_argument('--reduce', action='store_true', help="Keep generators with minimal leads only")
    command('check', "Buchberger check of the generators as given")
    p = command('nf', "Weak division of --poly by the generators")
    p.add_argument('--poly', required=True)
    p.add_argument('--mode', choices=('weak', 'strong'), default='weak')
    p = command('hddwr', "Homogeneous determinate division of --poly")
    p.add_argument('--poly', required=True)
    p.add_argument('--prec', type=int, help="Truncate once the residual lies in <t>^prec")
    p = command('member', "Membership of --poly in the ideal")
    p.add_argument('--poly', required=True)
    command('syz', "Schreyer syzygies of a standard basis of the ideal")
    p = command('eliminate', "Eliminate x-variables")
    p.add_argument('--vars', required=True, help="Comma separated x-variables")
    p.add_argument('--inner', help="Ordering on the remaining variables")
    p = command('intersect', "Intersection with another ideal of the session")
    p.add_argument('--other', required=True, help="Name of the other ideal")
    p.add_argument('--inner', help="Ordering of the result")
    p = command('quotient', "Ideal quotient by --by")
    p.add_argument('--by', required=True)
    p.add_argument('--inner', help="Ordering of the result")
    p = command('saturate', "Saturation by --by")
    p.add_argument('--by', required=True)
    p.add_argument('--inner', help="Ordering of the result")
    p = command('tinitial', "t-initial ideal for a weight vector")
    p.add_argument('--w', required=True, help="Weights w_0,...,w_n with w_0 < 0, e.g. --w=-1,0,0")
    p.add_argument('--denom', type=int, help="Work over t^(1/denom)")
    p.add_argument('--global', dest='global_order', default='degrevlex',
                   help="Global tiebreak ordering on x")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=current_config.LOG_LEVEL, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    args = build_parser().parse_args(argv)
    return CommandRunner(args).run()


if __name__ == '__main__':
    sys.exit(main())
