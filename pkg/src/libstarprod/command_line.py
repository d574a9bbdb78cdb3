"""Command line program ``starprod``.

Exit status is 0 on success or when every check passes, 1 when a check fails
and 2 on usage, parse or precondition errors.
"""

import argparse
from dataclasses import dataclass, field
import json
import logging
import re
import sys

from sympy.polys.domains import QQ

from libstarprod import logging as starprod_logging
from libstarprod.data.settings import Settings
from libstarprod.expr import ExpressionError, parse_polynomial
from libstarprod.fuzzy import (
    DescentFailure,
    InvalidSpin,
    NotScalar,
    build_irrep,
    format_matrix,
    level_radius,
)
from libstarprod.glue.gluing import (
    BUILTIN_INSTANCES,
    MissingTransition,
    PartitionError,
    UnknownChart,
)
from libstarprod.glue.operators import NotInvertible, NotNilpotent
from libstarprod.liealg import InvalidAlgebra, UnknownAlgebra, kirillov_bracket
from libstarprod.loader import LoaderError, load_gluing, resolve_algebra
from libstarprod.orbit.harmonic import HarmonicSolveError, harmonic_decompose
from libstarprod.orbit.su2 import (
    RADIUS,
    InvalidOrbit,
    Level,
    OrbitData,
    quotient_class,
)
from libstarprod.poly import (
    ContextMismatch,
    DuplicateVariable,
    NotConstant,
    NotMonic,
    PolyContext,
    VariableNotInContext,
    format_polynomial,
    format_scalar,
)
from libstarprod.star import (
    DimensionMismatch,
    NotAntisymmetric,
    NotPrincipal,
    PoissonMatrix,
    check_tangential,
)
from libstarprod.suites import SUITES, fuzzy_reports, glue_reports, run_suite
from libstarprod.uea import (
    NotCentral,
    Strategy,
    UnknownGenerator,
    UnsupportedIdeal,
    pbw_normalize,
)
from libstarprod.util import UnknownProduct, get_product
from libstarprod.weyl import NotADerivation, WeylContext, weyl_inv, weyl_sym

parent_logger = logging.getLogger(__name__)

PRODUCT_TAGS = {
    "weyl": "weyl_S",
    "moyal-heis": "moyal_heis",
    "moyal-r2n": "moyal_r2n",
    "psi-p": "psi_P",
    "quotient": "quotient",
    "glued": "glued",
}
ORBIT_PRODUCTS = ("psi-p", "quotient")

USAGE_ERRORS = (
    ExpressionError,
    LoaderError,
    InvalidAlgebra,
    UnknownAlgebra,
    ContextMismatch,
    DuplicateVariable,
    NotConstant,
    NotMonic,
    VariableNotInContext,
    NotCentral,
    UnsupportedIdeal,
    UnknownGenerator,
    NotADerivation,
    NotAntisymmetric,
    DimensionMismatch,
    NotPrincipal,
    InvalidOrbit,
    HarmonicSolveError,
    InvalidSpin,
    NotScalar,
    DescentFailure,
    PartitionError,
    NotInvertible,
    NotNilpotent,
    MissingTransition,
    UnknownChart,
    UnknownProduct,
)

RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


@dataclass
class Outcome:
    """Rendered result of one command."""

    command: str
    status: str = "ok"
    result: object = None
    lines: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    @classmethod
    def of_text(cls, command: str, text: str) -> "Outcome":
        return cls(command, result=text, lines=text.splitlines() or [text])

    @classmethod
    def of_reports(cls, command: str, reports, lines=None, result=None):
        outcome = cls(command, "pass", lines=list(lines or []))
        outcome.result = {"reports": [r.to_dict() for r in reports]}
        if result:
            outcome.result.update(result)
        for report in reports:
            outcome.lines.extend(report.lines())
            outcome.witnesses.extend(
                dict(witness, check=report.name) for witness in report.witnesses
            )
            if not report.passed:
                outcome.status = "fail"
        return outcome

    @property
    def exit_code(self) -> int:
        return {"ok": 0, "pass": 0, "fail": 1}.get(self.status, 2)

    def render(self, output_format: str) -> str:
        if output_format == "json":
            return json.dumps(
                {
                    "command": self.command,
                    "status": self.status,
                    "result": self.result,
                    "witnesses": self.witnesses,
                },
                indent=2,
            )
        return "\n".join(self.lines)


def _rational(text: str):
    if not RATIONAL.match(text):
        raise argparse.ArgumentTypeError(f"{text} is not an exact rational")
    numerator, _, denominator = text.partition("/")
    if denominator and not int(denominator):
        raise argparse.ArgumentTypeError(f"{text} has a zero denominator")
    return QQ(int(numerator), int(denominator or 1))


def _params(args, extra=()) -> tuple:
    names = [name for name in (args.params or "").split(",") if name]
    for name in extra:
        if name not in names:
            names.append(name)
    return tuple(names)


def _settings(args) -> Settings:
    return Settings().updated(
        jet_order=args.order,
        degree=args.degree,
        h_order=args.h_order,
        workers=args.workers,
        level=getattr(args, "level", None),
        output_format=args.format,
        degree_cap=getattr(args, "degree_cap", None),
    )


def _orbit(args, settings: Settings) -> OrbitData:
    algebra = resolve_algebra(args.algebra)
    radius = getattr(args, "radius", None)
    extra = () if radius is not None else (RADIUS,)
    weyl = WeylContext(algebra, _params(args, extra))
    return OrbitData.su2(weyl, radius, Level(settings.level))


def build_product(args, settings: Settings, extra=()):
    """The StarProduct selected by ``--product`` and the flags it depends on.

    ``extra`` names parameters declared on top of ``--params``.
    """
    tag = args.product
    cls = get_product(PRODUCT_TAGS[tag])
    if tag in ORBIT_PRODUCTS:
        return cls(_orbit(args, settings))
    if tag == "glued":
        instance = _instance(args, settings)
        return cls(instance, args.chart or instance.charts[0])
    if tag == "moyal-r2n":
        variables = tuple(args.variables.split(","))
        context = PolyContext(variables, _params(args, extra))
        return cls(context, PoissonMatrix.canonical(variables), args.order)
    algebra = resolve_algebra(args.algebra)
    weyl = WeylContext(algebra, _params(args, extra))
    if tag == "moyal-heis":
        return cls(weyl.context, args.order)
    return cls(weyl)


def _instance(args, settings: Settings):
    source = args.instance
    if source in BUILTIN_INSTANCES:
        return BUILTIN_INSTANCES[source](settings.jet_order)
    return load_gluing(source, args.order)


def _bracket(args, settings):
    algebra = resolve_algebra(args.algebra)
    context = WeylContext(algebra, _params(args)).context
    f, g = (parse_polynomial(text, context) for text in (args.f, args.g))
    bracket = kirillov_bracket(algebra, f, g)
    return Outcome.of_text("bracket", format_polynomial(bracket))


def _star(args, settings):
    product = build_product(args, settings)
    f, g = (parse_polynomial(text, product.context) for text in (args.f, args.g))
    return Outcome.of_text("star", format_polynomial(product(f, g)))


def _weyl(args, settings):
    weyl = WeylContext(resolve_algebra(args.algebra), _params(args))
    f = parse_polynomial(args.f, weyl.context)
    return Outcome.of_text("weyl", str(weyl_sym(f, weyl)))


def _unweyl(args, settings):
    weyl = WeylContext(resolve_algebra(args.algebra), _params(args))
    word = weyl.enveloping.parse_word(args.word)
    return Outcome.of_text("unweyl", format_polynomial(weyl_inv(word, weyl)))


def _normalize(args, settings):
    weyl = WeylContext(resolve_algebra(args.algebra), _params(args))
    word = weyl.enveloping.parse_word(args.word)
    normal = pbw_normalize(word, Strategy(args.strategy))
    return Outcome.of_text("normalize", str(normal))


def _reduce(args, settings):
    orbit = _orbit(args, settings)
    word = orbit.enveloping.parse_word(args.word)
    return Outcome.of_text("reduce", str(quotient_class(word, orbit)))


def _harm(args, settings):
    weyl = WeylContext(resolve_algebra(args.algebra), _params(args))
    f = parse_polynomial(args.f, weyl.context)
    parts = harmonic_decompose(f, weyl.context)
    outcome = Outcome("harm", result=[])
    for power, part in parts:
        text = format_polynomial(part)
        outcome.result.append({"power": power, "harmonic": text})
        outcome.lines.append(f"p^{power} * ({text})")
    outcome.lines = outcome.lines or ["0"]
    return outcome


def _tangential(args, settings):
    ideals = args.ideal
    if not ideals:
        algebra = resolve_algebra(args.algebra)
        if algebra.invariant is None:
            raise MissingIdeal(algebra.name)
        level = f"{RADIUS}^2" if args.radius is None else format_scalar(args.radius**2)
        ideals = [f"{algebra.invariant} - ({level})"]
    product = build_product(args, settings, () if args.ideal else (RADIUS,))
    generators = [parse_polynomial(text, product.context) for text in ideals]
    report = check_tangential(
        product, generators, settings.degree, settings.h_order, settings.workers
    )
    return Outcome.of_reports("tangential", [report])


def _fuzzy(args, settings):
    rep = build_irrep(args.spin, args.h)
    lines, result = [], {"spin": format_scalar(rep.j), "h": format_scalar(rep.h)}
    for name, matrix in zip("XYZ", rep.matrices):
        text = format_matrix(matrix)
        lines.append(f"rho({name}) =")
        lines.extend(text.splitlines())
        result[f"rho_{name}"] = text.splitlines()
    reports = fuzzy_reports(args.spin, args.h, settings)
    convention, roots = level_radius(rep)
    result["level_radius"] = {
        "convention": convention,
        "roots": [format_scalar(r) for r in roots],
    }
    radii = ", ".join(map(format_scalar, roots))
    lines.append(f"level radius: {convention or 'none'} {radii}")
    return Outcome.of_reports("fuzzy", reports, lines, result)


def _glue_demo(args, settings):
    instance = _instance(args, settings)
    return Outcome.of_reports("glue-demo", glue_reports(instance, settings))


def _check(args, settings):
    algebra = resolve_algebra(args.algebra)
    reports = run_suite(args.suite, algebra, settings, _params(args))
    return Outcome.of_reports(f"check {args.suite}", reports)


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default="su2", help="builtin name or .alg file")
    common.add_argument("--params", default="", help="comma separated parameters")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--degree", type=int)
    common.add_argument("--order", type=int, help="jet order K")
    common.add_argument("--h-order", dest="h_order", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("-v", "--verbose", action="count", default=0)
    return common


def _product_flags(parser, default="weyl"):
    parser.add_argument("--product", choices=sorted(PRODUCT_TAGS), default=default)
    parser.add_argument("--level", choices=[level.value for level in Level])
    parser.add_argument("--radius", type=_rational)
    parser.add_argument("--instance", default="two-chart")
    parser.add_argument("--chart")
    parser.add_argument("--variables", default="q,p")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="starprod", description="Exact star products on duals of Lie algebras."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("bracket", parents=[common], help="Kirillov bracket")
    sub.add_argument("f")
    sub.add_argument("g")
    sub.set_defaults(handler=_bracket)

    sub = commands.add_parser("star", parents=[common], help="star product of f and g")
    sub.add_argument("f")
    sub.add_argument("g")
    _product_flags(sub)
    sub.set_defaults(handler=_star)

    sub = commands.add_parser("weyl", parents=[common], help="symmetrization of f")
    sub.add_argument("f")
    sub.set_defaults(handler=_weyl)

    sub = commands.add_parser("unweyl", parents=[common], help="inverse symmetrization")
    sub.add_argument("word")
    sub.set_defaults(handler=_unweyl)

    sub = commands.add_parser("normalize", parents=[common], help="PBW normal form")
    sub.add_argument("word")
    sub.add_argument(
        "--strategy", choices=[s.value for s in Strategy], default="leftmost"
    )
    sub.set_defaults(handler=_normalize)

    sub = commands.add_parser("reduce", parents=[common], help="reduce modulo P - c(h)")
    sub.add_argument("word")
    sub.add_argument("--level", choices=[level.value for level in Level])
    sub.add_argument("--radius", type=_rational)
    sub.set_defaults(handler=_reduce)

    sub = commands.add_parser("harm", parents=[common], help="harmonic decomposition")
    sub.add_argument("f")
    sub.set_defaults(handler=_harm)

    sub = commands.add_parser("tangential", parents=[common], help="ideal preservation")
    _product_flags(sub)
    sub.add_argument("--ideal", action="append")
    sub.set_defaults(handler=_tangential)

    sub = commands.add_parser("fuzzy", parents=[common], help="spin-j representation")
    sub.add_argument("--spin", type=_rational, required=True)
    sub.add_argument("--h", type=_rational, default=QQ(1))
    sub.add_argument("--degree-cap", dest="degree_cap", type=int)
    sub.set_defaults(handler=_fuzzy)

    sub = commands.add_parser("glue-demo", parents=[common], help="gluing identities")
    sub.add_argument("--instance", default="two-chart")
    sub.set_defaults(handler=_glue_demo)

    sub = commands.add_parser("check", parents=[common], help="run a property suite")
    sub.add_argument("suite", choices=sorted(SUITES))
    sub.set_defaults(handler=_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    starprod_logging.configure(starprod_logging.level_for(args.verbose))
    settings = _settings(args)
    parent_logger.info("dispatching %s", args.command)
    try:
        outcome = args.handler(args, settings)
    except (*USAGE_ERRORS, MissingIdeal) as e:
        message = getattr(e, "message", str(e))
        print(message, file=sys.stderr)
        if settings.output_format == "json":
            error = Outcome(args.command, "error", result=message)
            print(error.render("json"))
        return 2
    print(outcome.render(settings.output_format))
    return outcome.exit_code


def run():
    sys.exit(main())


class MissingIdeal(Exception):
    """Raise when no ideal is given and the algebra declares no invariant."""

    def __init__(self, algebra: str = ""):
        self.algebra = algebra
        self.message = f"{algebra} declares no invariant; pass --ideal"
        super().__init__(self.message)
