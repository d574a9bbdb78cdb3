"""Lie algebras given by structure constants and the Kirillov bracket on their duals."""

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
import logging

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from libstarprod.poly import format_polynomial, generator, monomials, partial
from libstarprod.report import CheckReport, collect

parent_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LieAlgebra:
    """Basis, dual coordinates and sparse structure constants.

    ``structure[(i, j)]`` maps ``k`` to ``c_ij^k``, the coefficient of ``X_k``
    in ``[X_i, X_j]``. Missing entries are zero. Construction does not
    validate; call :func:`validate`.
    """

    name: str
    basis: tuple
    coordinates: tuple
    structure: dict = field(default_factory=dict)
    invariant: str | None = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def constant(self, i: int, j: int, k: int):
        return self.structure.get((i, j), {}).get(k, QQ.zero)

    def bracket_terms(self, i: int, j: int) -> dict:
        """Nonzero ``{k: c_ij^k}``."""
        return self.structure.get((i, j), {})

    def bracket_vector(self, u, v) -> list:
        """Bracket of two coefficient vectors in the basis."""
        result = [QQ.zero] * self.dimension
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in self.bracket_terms(i, j).items():
                    result[k] += a * b * c
        return result

    def index(self, name: str) -> int:
        if name in self.basis:
            return self.basis.index(name)
        if name in self.coordinates:
            return self.coordinates.index(name)
        raise UnknownAlgebra(name)


def structure_from_brackets(basis, brackets: dict) -> dict:
    """Build an antisymmetric structure tensor from ``{(A, B): {C: coefficient}}``.

    Only one ordering of each pair needs to be given; the mirrored entry is
    filled with the negated coefficients unless it was given as well.
    """
    structure = {}
    for (a, b), image in brackets.items():
        i, j = basis.index(a), basis.index(b)
        terms = {basis.index(c): QQ.convert(v) for c, v in image.items() if v}
        if terms:
            structure[(i, j)] = terms
    for (i, j), terms in list(structure.items()):
        if (j, i) not in structure and i != j:
            structure[(j, i)] = {k: -v for k, v in terms.items()}
    return structure


def heisenberg() -> LieAlgebra:
    """Heisenberg algebra with [Q,P]=E and E central."""
    basis = ("Q", "P", "E")
    return LieAlgebra(
        "heisenberg",
        basis,
        ("q", "p", "e"),
        structure_from_brackets(basis, {("Q", "P"): {"E": 1}}),
        invariant="e",
    )


def su2() -> LieAlgebra:
    """su(2) in the basis [X,Y]=Z and cyclic permutations."""
    basis = ("X", "Y", "Z")
    brackets = {("X", "Y"): {"Z": 1}, ("Y", "Z"): {"X": 1}, ("Z", "X"): {"Y": 1}}
    return LieAlgebra(
        "su2",
        basis,
        ("x", "y", "z"),
        structure_from_brackets(basis, brackets),
        invariant="x^2 + y^2 + z^2",
    )


def sl2() -> LieAlgebra:
    """sl(2) with [H,E]=2E, [H,F]=-2F, [E,F]=H."""
    basis = ("H", "E", "F")
    brackets = {("H", "E"): {"E": 2}, ("H", "F"): {"F": -2}, ("E", "F"): {"H": 1}}
    return LieAlgebra(
        "sl2",
        basis,
        ("s", "e", "f"),
        structure_from_brackets(basis, brackets),
        invariant="s^2 + 4*e*f",
    )


BUILTINS = {"heisenberg": heisenberg, "su2": su2, "sl2": sl2}


def builtin(name: str) -> LieAlgebra:
    """Return a builtin algebra by name."""
    try:
        return BUILTINS[name]()
    except KeyError as e:
        raise UnknownAlgebra(name) from e


def validate(algebra: LieAlgebra) -> CheckReport:
    """Check antisymmetry and the Jacobi identity exactly.

    The first violated index tuple is reported as witness.
    """
    report = CheckReport(f"validate {algebra.name}")
    n = algebra.dimension
    names = algebra.basis
    for i, j, k in product(range(n), repeat=3):
        report.checked += 1
        if algebra.constant(i, j, k) != -algebra.constant(j, i, k):
            report.fail(
                property="antisymmetry",
                indices=f"({names[i]}, {names[j]}, {names[k]})",
                value=algebra.constant(i, j, k),
            )
            return report
    for i, j, k, l in product(range(n), repeat=4):
        report.checked += 1
        total = QQ.zero
        for m in range(n):
            total += algebra.constant(i, j, m) * algebra.constant(m, k, l)
            total += algebra.constant(j, k, m) * algebra.constant(m, i, l)
            total += algebra.constant(k, i, m) * algebra.constant(m, j, l)
        if total:
            report.fail(
                property="jacobi",
                indices=f"({names[i]}, {names[j]}, {names[k]}, {names[l]})",
                value=total,
            )
            return report
    return report


def kirillov_bracket(algebra: LieAlgebra, f, g):
    """Return sum c_ij^k xi_k df/dxi_i dg/dxi_j."""
    ring = f.ring
    coordinates = algebra.coordinates
    df = [partial(f, v) for v in coordinates]
    dg = [partial(g, v) for v in coordinates]
    gens = [generator(ring, v) for v in coordinates]
    result = ring.zero
    for (i, j), terms in algebra.structure.items():
        if not df[i] or not dg[j]:
            continue
        linear = ring.zero
        for k, c in terms.items():
            linear += gens[k] * c
        result += linear * df[i] * dg[j]
    return result


def poisson_properties(algebra: LieAlgebra, degree: int, context, workers=1):
    """Check antisymmetry, Leibniz and Jacobi of the Kirillov bracket.

    Runs over coordinate monomials of degree 1..``degree``; Leibniz and Jacobi
    use unordered pairs and triples.
    """
    basis = monomials(context, degree, min_degree=1)

    def bracket(f, g):
        return kirillov_bracket(algebra, f, g)

    def antisymmetry(pair):
        f, g = pair
        if bracket(f, g) + bracket(g, f):
            return {"property": "antisymmetry", "f": format_polynomial(f),
                    "g": format_polynomial(g)}
        return None

    def leibniz(triple):
        f, g, k = triple
        if bracket(f, g * k) != bracket(f, g) * k + g * bracket(f, k):
            return {"property": "leibniz", "f": format_polynomial(f),
                    "g": format_polynomial(g), "k": format_polynomial(k)}
        return None

    def jacobi(triple):
        f, g, k = triple
        total = bracket(f, bracket(g, k)) + bracket(g, bracket(k, f))
        total += bracket(k, bracket(f, g))
        if total:
            return {"property": "jacobi", "f": format_polynomial(f),
                    "g": format_polynomial(g), "k": format_polynomial(k),
                    "value": format_polynomial(total)}
        return None

    pairs = list(combinations_with_replacement(basis, 2))
    triples = list(combinations_with_replacement(basis, 3))
    leibniz_cases = [(f, g, k) for f in basis for g, k in pairs]
    report = CheckReport(f"poisson {algebra.name}")
    for sub in (
        collect("antisymmetry", antisymmetry, pairs, workers),
        collect("leibniz", leibniz, leibniz_cases, workers),
        collect("jacobi", jacobi, triples, workers),
    ):
        report.checked += sub.checked
        if not sub.passed:
            report.passed = False
            report.witnesses.extend(sub.witnesses)
            break
    return report


@dataclass(frozen=True)
class HeisenbergElement:
    """Group element (a, b, c) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')."""

    a: object = QQ.zero
    b: object = QQ.zero
    c: object = QQ.zero

    def __mul__(self, other: "HeisenbergElement") -> "HeisenbergElement":
        return HeisenbergElement(
            self.a + other.a, self.b + other.b, self.c + other.c + self.a * other.b
        )

    def inverse(self) -> "HeisenbergElement":
        return HeisenbergElement(-self.a, -self.b, -self.c + self.a * self.b)

    @classmethod
    def identity(cls) -> "HeisenbergElement":
        return cls(QQ.zero, QQ.zero, QQ.zero)

    @classmethod
    def of(cls, a, b, c) -> "HeisenbergElement":
        return cls(QQ.convert(a), QQ.convert(b), QQ.convert(c))


def _matrix(rows) -> DomainMatrix:
    return DomainMatrix([[QQ.convert(v) for v in row] for row in rows], (3, 3), QQ)


def heisenberg_adjoint(g: HeisenbergElement) -> DomainMatrix:
    """Ad_g on the basis (Q, P, E), columns are images."""
    return _matrix([[1, 0, 0], [0, 1, 0], [-g.b, g.a, 1]])


def heisenberg_coadjoint(g: HeisenbergElement) -> DomainMatrix:
    """Ad*_g on covectors (q, p, e): rows (1,0,b), (0,1,-a), (0,0,1)."""
    return _matrix([[1, 0, g.b], [0, 1, -g.a], [0, 0, 1]])


def coadjoint_action(g: HeisenbergElement, covector) -> tuple:
    """Apply Ad*_g to a covector (q, p, e)."""
    column = DomainMatrix([[QQ.convert(v)] for v in covector], (3, 1), QQ)
    return tuple((heisenberg_coadjoint(g) * column).flat())


def heisenberg_orbit(covector) -> str:
    """Describe the coadjoint orbit through (q, p, e)."""
    q, p, e = covector
    if e:
        return f"plane e = {e}"
    return f"point ({q}, {p}, 0)"


class InvalidAlgebra(Exception):
    """Raise when structure constants violate antisymmetry or Jacobi."""

    def __init__(self, report: CheckReport | None = None):
        self.report = report
        witness = report.witnesses[0] if report and report.witnesses else {}
        self.message = f"Invalid Lie algebra: {witness}"
        super().__init__(self.message)


class UnknownAlgebra(Exception):
    """Raise when an algebra or basis name is not known."""

    def __init__(self, name: str = ""):
        self.name = name
        self.message = f"Unknown algebra or basis element {name}"
        super().__init__(self.message)
