"""
Command line interface.

Every command prints JSON on standard output; ``--pretty`` switches to a
human-readable rendering. Exit status is 0 on success, 1 when a domain
precondition fails (the message names it) and 2 when the command line,
a ring expression or a JSON document cannot be parsed.
"""
import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence

from . import __about__
from .config import DEFAULT_SAMPLES, DEFAULT_SEED, configure_logging
from .exactalg import CoefficientField, QuotientRing, euler_characteristic, hilbert_function, macaulay_rank
from .exceptions import (
    ArityError,
    ExpressionSyntaxError,
    FlavorMismatchError,
    LabelError,
    ModuliError,
    OutOfScopeError,
)
from .labels import Partition2
from .operads import IDENTITIES, BicoloredElement, full_compose, partial_compose, sweep
from .parsing import parse_ring_expression, parse_strata, parse_tree, strata_to_dict, tree_to_dict
from .presentations import (
    keel_presentation,
    krasnov_presentation,
    omega_class,
    pullback_boundary,
    real_strata_class,
    strata_class,
)
from .trees import ComplexStableTree, RealStableTree, glue_complex, glue_real_complex, glue_real_real

logger = logging.getLogger(__name__)

SPACES = ("keel", "krasnov", "conjugate")
FIELDS = tuple(f.value for f in CoefficientField)
SPLITS = {"ab": 1, "ab|cd": 1, "ac": 2, "ac|bd": 2, "ad": 3, "ad|bc": 3}


class _Parser(argparse.ArgumentParser):
    """Argument parser that raises instead of exiting, so ``run`` owns the exit status."""

    def error(self, message):
        raise ExpressionSyntaxError("{}: {}".format(self.prog, message))


# INPUT HELPERS
def _read(value: str) -> str:
    """Inline text, ``@path`` for a file or ``-`` for standard input."""
    if value == "-":
        return sys.stdin.read()
    if value.startswith("@"):
        try:
            with open(value[1:], "r") as handle:
                return handle.read()
        except OSError as err:
            raise LabelError("cannot read {}: {}".format(value[1:], err.strerror)) from None
    return value


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer, got {!r}".format(text)) from None
    if value < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer, got {}".format(value))
    return value


def _labels(text: str, count: int) -> List[int]:
    try:
        labels = [int(item) for item in text.split(",")]
    except ValueError:
        raise ExpressionSyntaxError("expected {} comma separated labels, got {!r}".format(count, text)) from None
    if len(labels) != count:
        raise ExpressionSyntaxError("expected {} comma separated labels, got {!r}".format(count, text))
    return labels


def _ring(args) -> QuotientRing:
    if args.space == "conjugate":
        raise OutOfScopeError("no presentation of the conjugate space is available")
    if args.space == "krasnov":
        if args.field == CoefficientField.RATIONAL.value:
            raise OutOfScopeError("the Krasnov presentation is only available over gf2")
        return krasnov_presentation(args.n)
    return keel_presentation(args.n, CoefficientField(args.field or CoefficientField.RATIONAL.value))


def _emit(args, payload, pretty: Optional[str] = None) -> None:
    if args.pretty and pretty is not None:
        print(pretty)
    else:
        print(json.dumps(payload, indent=2 if args.pretty else None))


# COMMANDS
def cmd_betti(args) -> int:
    ring = _ring(args)
    entries = hilbert_function(ring, args.dmax)
    rows = ["{:>6}  {:>9}".format("degree", "dimension")]
    rows.extend("{:>6}  {:>9}".format(e.degree, e.dimension) for e in entries)
    rows.append("euler characteristic: {}".format(euler_characteristic(entries)))
    _emit(args, [e._asdict() for e in entries], "\n".join(rows))
    return 0


def cmd_oracle(args) -> int:
    ring = _ring(args)
    dimension = macaulay_rank(ring, args.degree)
    logger.info("macaulay rank of %s in degree %d: %d", ring.name, args.degree, dimension)
    _emit(args, {"degree": args.degree, "dimension": dimension}, "degree {}: {}".format(args.degree, dimension))
    return 0


def cmd_nf(args) -> int:
    ring = _ring(args)
    element = parse_ring_expression(_read(args.expression), ring)
    result = ring.normal_form(element)
    _emit(args, {"expression": str(element), "normalForm": str(result)}, str(result))
    return 0


def cmd_equal(args) -> int:
    ring = _ring(args)
    first = parse_ring_expression(_read(args.first), ring)
    second = parse_ring_expression(_read(args.second), ring)
    verdict = "equal" if ring.equal(first, second) else "different"
    _emit(args, {"verdict": verdict}, verdict)
    return 0


def cmd_pullback(args) -> int:
    a, b, c, d = _labels(args.s, 4)
    other = (a, b, c, d)[SPLITS[args.split]]
    rest = [v for v in (b, c, d) if v != other]
    target = Partition2.from_blocks((a, other), rest)
    field = CoefficientField(args.field or CoefficientField.RATIONAL.value)
    element = pullback_boundary(args.n, (a, b, c, d), target, field)
    _emit(args, {"target": str(target), "element": str(element)}, str(element))
    return 0


def cmd_omega(args) -> int:
    element = omega_class(args.k, *_labels(args.s, 4))
    _emit(args, {"element": str(element)}, str(element))
    return 0


def cmd_strata_class(args) -> int:
    tree = parse_tree(_read(args.tree))
    if isinstance(tree, ComplexStableTree):
        ring = keel_presentation(tree.n_labels)
        element = strata_class(tree, ring)
    else:
        ring = krasnov_presentation(tree.n_real)
        element = real_strata_class(tree, ring)
    payload = {"element": str(element)}
    if args.reduce:
        payload["normalForm"] = str(ring.normal_form(element))
    _emit(args, payload, payload.get("normalForm", payload["element"]))
    return 0


def cmd_glue(args) -> int:
    first = parse_tree(_read(args.first))
    second = parse_tree(_read(args.second))
    if isinstance(first, ComplexStableTree) and isinstance(second, ComplexStableTree):
        result = glue_complex(first, args.slot, second)
    elif isinstance(first, RealStableTree) and isinstance(second, RealStableTree):
        result = glue_real_real(first, args.slot, second)
    elif isinstance(first, RealStableTree):
        result = glue_real_complex(first, args.slot, second)
    else:
        raise FlavorMismatchError("a real tree cannot be glued into a complex tree")
    _emit(args, tree_to_dict(result), repr(result))
    return 0


def cmd_compose(args) -> int:
    x = parse_strata(_read(args.x))
    ys = [parse_strata(_read(y)) for y in args.ys]
    if args.slot is not None:
        if len(ys) != 1:
            raise ExpressionSyntaxError("partial composition takes exactly one inner element")
        result = partial_compose(x, args.slot, ys[0])
    else:
        result = full_compose(x, ys)
    _emit(args, strata_to_dict(result), repr(result))
    return 0


def _element_json(value):
    if value is None:
        return None
    if isinstance(value, BicoloredElement):
        return strata_to_dict(value.strata)
    return [_element_json(v) for v in value]


def cmd_axioms(args) -> int:
    if args.max_arity < 2:
        raise ArityError("--max-arity must be at least 2, not {}".format(args.max_arity))
    report = sweep(args.identity, args.samples, args.seed, args.max_arity, progress=args.progress)
    payload = {
        "identity": report.identity,
        "samples": report.samples,
        "seed": report.seed,
        "undefined": report.undefined,
        "failures": [
            {"x": _element_json(f.x), "y": _element_json(f.y), "z": _element_json(f.z), "i": f.i, "j": f.j}
            for f in report.failures
        ],
    }
    pretty = "{}: {} samples, seed {}, {} failures, {} undefined".format(
        report.identity, report.samples, report.seed, len(report.failures), report.undefined
    )
    _emit(args, payload, pretty)
    return 1 if report.failures else 0


def cmd_torsion(args) -> int:
    raise OutOfScopeError("integral torsion is not computed; the groups are known to have only 2-torsion")


# PARSER
def _space_options(parser: argparse.ArgumentParser, n_required: bool = True) -> None:
    parser.add_argument("--space", choices=SPACES, default="keel", help="presented space")
    parser.add_argument("--n", type=int, required=n_required, help="number of marked points")
    parser.add_argument("--field", choices=FIELDS, default=None, help="coefficient field (default q, gf2 for krasnov)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="moduli", description=__about__.__description__)
    parser.add_argument("--version", action="version", version="%(prog)s {}".format(__about__.__version__))
    parser.add_argument("--pretty", action="store_true", help="human-readable output")
    parser.add_argument("--verbose", action="store_true", help="log at INFO level")
    parser.add_argument("--debug", action="store_true", help="log at DEBUG level")
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)
    commands.required = True

    p = commands.add_parser("betti", help="Hilbert function of a presented ring")
    _space_options(p)
    p.add_argument("--dmax", type=_non_negative, default=None, help="highest degree (default: socle degree)")
    p.set_defaults(func=cmd_betti)

    p = commands.add_parser("oracle", help="graded dimension by Macaulay matrix rank")
    _space_options(p)
    p.add_argument("--degree", type=_non_negative, required=True)
    p.set_defaults(func=cmd_oracle)

    p = commands.add_parser("nf", help="normal form of a ring expression")
    p.add_argument("expression")
    _space_options(p)
    p.set_defaults(func=cmd_nf)

    p = commands.add_parser("equal", help="decide equality of two ring expressions")
    p.add_argument("first")
    p.add_argument("second")
    _space_options(p)
    p.set_defaults(func=cmd_equal)

    p = commands.add_parser("pullback", help="pull back a point of the 4-point space")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", required=True, help="the four kept labels a,b,c,d")
    p.add_argument("--split", choices=sorted(SPLITS), default="ab|cd")
    p.add_argument("--field", choices=FIELDS, default=None)
    p.set_defaults(func=cmd_pullback)

    p = commands.add_parser("omega", help="mod 2 omega class of the real moduli space")
    p.add_argument("--k", type=int, required=True, help="number of real points")
    p.add_argument("--s", required=True, help="the four labels a,b,c,d")
    p.set_defaults(func=cmd_omega)

    p = commands.add_parser("strata-class", help="class of a stratum tree")
    p.add_argument("tree", help="tree JSON, @file or - for stdin")
    p.add_argument("--reduce", action="store_true", help="also print the normal form")
    p.set_defaults(func=cmd_strata_class)

    p = commands.add_parser("glue", help="glue two trees")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--slot", type=int, required=True)
    p.set_defaults(func=cmd_glue)

    p = commands.add_parser("compose", help="partial or full composition of strata sums")
    p.add_argument("x")
    p.add_argument("ys", nargs="+")
    p.add_argument("--slot", type=int, default=None, help="partial composition slot; omit for full composition")
    p.set_defaults(func=cmd_compose)

    p = commands.add_parser("axioms", help="seeded sweep of an operad identity")
    p.add_argument("--identity", choices=IDENTITIES, required=True)
    p.add_argument("--samples", type=_non_negative, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=_non_negative, default=DEFAULT_SEED)
    p.add_argument("--max-arity", type=_non_negative, default=5)
    p.add_argument("--progress", action="store_true", help="show a progress bar")
    p.set_defaults(func=cmd_axioms)

    p = commands.add_parser("torsion", help="not supported")
    _space_options(p, n_required=False)
    p.set_defaults(func=cmd_torsion)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit status."""
    try:
        args = build_parser().parse_args(argv)
        configure_logging(args.verbose, args.debug)
        return args.func(args)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else 0
    except ExpressionSyntaxError as err:
        print("parse error: {}".format(err), file=sys.stderr)
        return 2
    except ModuliError as err:
        print("error: {}".format(err), file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
