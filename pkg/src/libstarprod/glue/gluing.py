"""Gluing chart-local star products with a partition of unity.

Every chart shares one polynomial coordinate space. A transition ``T[s, r]``
carries chart-``r`` functions to chart ``s`` and intertwines the two local
products. With weights ``phi_r`` summing to one, ``A_r = phi_r Id + sum_s
phi_s T[s, r]`` and the glued product read in chart ``r`` is
``A_r(A_r^-1 f *_r A_r^-1 g)``. All identities hold modulo h^(K+1).
"""

import logging

from libstarprod.glue.operators import DifferentialOperator, FormalOperator
from libstarprod.poly import PolyContext, format_polynomial, monomial_tuples, monomials
from libstarprod.report import CheckReport, collect
from libstarprod.star import MoyalR2n, PoissonMatrix, StarProduct, check_associativity

parent_logger = logging.getLogger(__name__)


class TransportedStar(StarProduct):
    """f *_s g = T(T^-1 f *_r T^-1 g) for a transition T = T[s, r]."""

    name = "transported"

    def __init__(self, base: StarProduct, transition: FormalOperator):
        super().__init__(base.context)
        self.base = base
        self.transition = transition
        self.inverse = transition.inverse()

    def multiply(self, f, g):
        return self.transition(self.base(self.inverse(f), self.inverse(g)))


class GluingInstance:
    """Charts, weights, transitions and local products at jet order K.

    ``transitions`` maps ``(s, r)`` to ``T[s, r]``; missing entries are
    derived as ``T[r, r] = Id``, ``T[r, s] = T[s, r]^-1`` and
    ``T[t, s] = T[t, first] T[first, s]``. Charts without an explicit product
    get the transport of the first chart's product.
    """

    def __init__(
        self,
        name: str,
        context: PolyContext,
        charts,
        order: int,
        weights: dict,
        transitions: dict,
        products=None,
    ):
        self.logger = parent_logger.getChild(self.__class__.__name__)
        self.name = name
        self.context = context
        self.charts = tuple(charts)
        self.order = order
        for key in list(weights) + [c for pair in transitions for c in pair]:
            if key not in self.charts:
                raise UnknownChart(key, self.charts)
        self.weights = {
            r: w if context.owns(w) else context.constant(w) for r, w in weights.items()
        }
        total = context.zero
        for r in self.charts:
            total += self.weights.setdefault(r, context.zero)
        if total != context.one:
            raise PartitionError(format_polynomial(total))
        self.transitions = self._complete(dict(transitions))
        products = dict(products or {})
        first = self.charts[0]
        if first not in products:
            poisson = PoissonMatrix.canonical(context.coordinates)
            products[first] = MoyalR2n(context, poisson, order)
        for s in self.charts:
            if s not in products:
                transition = self.transitions[s, first]
                products[s] = TransportedStar(products[first], transition)
        self.products = products

    def _complete(self, transitions: dict) -> dict:
        identity = FormalOperator.identity(self.context, self.order)
        for r in self.charts:
            transitions.setdefault((r, r), identity)
        for (s, r), operator in list(transitions.items()):
            if (r, s) not in transitions:
                transitions[r, s] = operator.inverse()
                self.logger.debug("derived T[%s, %s] by inversion", r, s)
        first = self.charts[0]
        for t in self.charts:
            for s in self.charts:
                if (t, s) in transitions:
                    continue
                if (t, first) not in transitions or (first, s) not in transitions:
                    raise MissingTransition(t, s)
                transitions[t, s] = transitions[t, first] * transitions[first, s]
                self.logger.debug("derived T[%s, %s] through chart %s", t, s, first)
        return transitions

    def chart(self, r):
        if r not in self.charts:
            raise UnknownChart(r, self.charts)
        return r

    def with_weights(self, weights: dict, name=None) -> "GluingInstance":
        """Same transitions and products with another partition of unity."""
        return GluingInstance(
            name or f"{self.name}'",
            self.context,
            self.charts,
            self.order,
            weights,
            self.transitions,
            self.products,
        )

    def test_basis(self, degree: int) -> list:
        return monomials(self.context, degree)


def build_A(instance: GluingInstance, r) -> FormalOperator:
    """A_r = phi_r Id + sum_{s != r} phi_s T[s, r]."""
    r = instance.chart(r)
    context, order = instance.context, instance.order
    result = FormalOperator.multiplication(context, instance.weights[r], order)
    for s in instance.charts:
        if s != r and instance.weights[s]:
            result = result + instance.transitions[s, r].scale(instance.weights[s])
    return result


def glued_star(instance: GluingInstance, r, f, g):
    """A_r(A_r^-1 f *_r A_r^-1 g) modulo h^(K+1)."""
    a = build_A(instance, r)
    inverse = a.inverse()
    return a(instance.products[r](inverse(f), inverse(g)))


class GluedStar(StarProduct):
    """The glued product read in one chart."""

    name = "glued"

    def __init__(self, instance: GluingInstance, chart):
        super().__init__(instance.context)
        self.instance = instance
        self.chart = instance.chart(chart)
        self.a = build_A(instance, chart)
        self.inverse = self.a.inverse()

    def multiply(self, f, g):
        product = self.instance.products[self.chart]
        return self.a(product(self.inverse(f), self.inverse(g)))


def check_cocycle(instance: GluingInstance, degree: int, workers=1) -> CheckReport:
    """T[t, s] T[s, r] = T[t, r] on monomials for every triple of charts."""
    charts = instance.charts
    cases = [(t, s, r) for t in charts for s in charts for r in charts]
    basis = instance.test_basis(degree)
    transitions = instance.transitions

    def cocycle(case):
        t, s, r = case
        composed = transitions[t, s] * transitions[s, r]
        witness = composed.agrees_on(transitions[t, r], basis)
        if witness is not None:
            return {
                "triple": f"({t}, {s}, {r})",
                "monomial": format_polynomial(witness),
            }
        return None

    return collect(f"cocycle {instance.name}", cocycle, cases, workers)


def check_intertwiner(instance: GluingInstance, degree: int, workers=1) -> CheckReport:
    """T[s, r](f) *_s T[s, r](g) = T[s, r](f *_r g) on monomial pairs."""
    charts = instance.charts
    pairs = monomial_tuples(instance.context, 2, degree)
    cases = [(s, r, f, g) for s in charts for r in charts if s != r for f, g in pairs]

    def intertwines(case):
        s, r, f, g = case
        t = instance.transitions[s, r]
        if instance.products[s](t(f), t(g)) != t(instance.products[r](f, g)):
            return {
                "transition": f"({s}, {r})",
                "f": format_polynomial(f),
                "g": format_polynomial(g),
            }
        return None

    return collect(f"intertwiner {instance.name}", intertwines, cases, workers)


def check_compatibility(
    instance: GluingInstance, degree: int, workers=1
) -> CheckReport:
    """A_r T[r, t] = A_t on monomials for every pair of charts."""
    charts = instance.charts
    a = {r: build_A(instance, r) for r in charts}
    basis = instance.test_basis(degree)
    cases = [(r, t) for r in charts for t in charts]

    def compatible(case):
        r, t = case
        witness = (a[r] * instance.transitions[r, t]).agrees_on(a[t], basis)
        if witness is not None:
            return {"charts": f"({r}, {t})", "monomial": format_polynomial(witness)}
        return None

    return collect(f"compatibility {instance.name}", compatible, cases, workers)


def check_chart_agreement(
    instance: GluingInstance, degree: int, workers=1
) -> CheckReport:
    """The glued product computed in every chart gives the same result."""
    products = [GluedStar(instance, r) for r in instance.charts]
    pairs = monomial_tuples(instance.context, 2, degree)

    def agree(pair):
        f, g = pair
        values = [product(f, g) for product in products]
        for chart, value in zip(instance.charts[1:], values[1:]):
            if value != values[0]:
                return {
                    "chart": chart,
                    "f": format_polynomial(f),
                    "g": format_polynomial(g),
                    "difference": format_polynomial(value - values[0]),
                }
        return None

    return collect(f"chart agreement {instance.name}", agree, pairs, workers)


def check_glued_associativity(instance: GluingInstance, degree: int, workers=1):
    return check_associativity(
        GluedStar(instance, instance.charts[0]), degree, instance.order, workers
    )


def check_restriction(instance: GluingInstance, degree: int, workers=1) -> CheckReport:
    """Conjugating the glued product by A_r^-1 recovers *_r."""
    pairs = monomial_tuples(instance.context, 2, degree)
    cases = [(r, f, g) for r in instance.charts for f, g in pairs]
    glued = {r: GluedStar(instance, r) for r in instance.charts}

    def restricts(case):
        r, f, g = case
        star = glued[r]
        local = star.inverse(star(star.a(f), star.a(g)))
        if local != instance.products[r](f, g):
            return {"chart": r, "f": format_polynomial(f), "g": format_polynomial(g)}
        return None

    return collect(f"restriction {instance.name}", restricts, cases, workers)


def partition_equivalence(instance: GluingInstance, other: GluingInstance, r=None):
    """E = A'_r A_r^-1 relating the glued products of two partitions of unity."""
    r = instance.charts[0] if r is None else r
    return build_A(other, r) * build_A(instance, r).inverse()


def check_partition_equivalence(
    instance: GluingInstance, other: GluingInstance, degree: int, workers=1
) -> CheckReport:
    """glued'(f, g) = E(glued(E^-1 f, E^-1 g)) on monomial pairs."""
    chart = instance.charts[0]
    e = partition_equivalence(instance, other, chart)
    e_inverse = e.inverse()
    first, second = GluedStar(instance, chart), GluedStar(other, chart)
    pairs = monomial_tuples(instance.context, 2, degree)

    def equivalent(pair):
        f, g = pair
        if second(f, g) != e(first(e_inverse(f), e_inverse(g))):
            return {"f": format_polynomial(f), "g": format_polynomial(g)}
        return None

    name = f"partition equivalence {instance.name} -> {other.name}"
    report = collect(name, equivalent, pairs, workers)
    report.details["equivalence"] = str(e)
    return report


def moyal_two_chart(order: int = 3) -> GluingInstance:
    """Charts 1 and 2 on (q, p) with phi_1 = q^2, T[2, 1] = exp(h/2 d/dq d/dp)."""
    context = PolyContext(("q", "p"))
    q = context.var("q")
    mixed = DifferentialOperator.partial(context, "q") * DifferentialOperator.partial(
        context, "p"
    )
    zero = DifferentialOperator.zero(context)
    generator = FormalOperator.of([zero, mixed.scale(context.scalar((1, 2)))], order)
    return GluingInstance(
        "two-chart",
        context,
        ("1", "2"),
        order,
        {"1": q * q, "2": 1 - q * q},
        {("2", "1"): FormalOperator.exp(generator)},
    )


def identity_instance(order: int = 3) -> GluingInstance:
    """Two charts with identity transitions and weights q^2, 1 - q^2."""
    context = PolyContext(("q", "p"))
    q = context.var("q")
    return GluingInstance(
        "identity",
        context,
        ("1", "2"),
        order,
        {"1": q * q, "2": 1 - q * q},
        {("2", "1"): FormalOperator.identity(context, order)},
    )


BUILTIN_INSTANCES = {"two-chart": moyal_two_chart, "identity": identity_instance}


class PartitionError(Exception):
    """Raise when the weights do not sum to one."""

    def __init__(self, total: str = ""):
        self.total = total
        self.message = f"Partition of unity sums to {total}, not 1"
        super().__init__(self.message)


class MissingTransition(Exception):
    """Raise when a transition can be neither given nor derived."""

    def __init__(self, target=None, source=None):
        self.pair = (target, source)
        self.message = f"No transition T[{target}, {source}] given or derivable"
        super().__init__(self.message)


class UnknownChart(Exception):
    """Raise when a chart name is not part of the instance."""

    def __init__(self, chart=None, charts=()):
        self.chart = chart
        known = ", ".join(map(str, charts))
        self.message = f"Unknown chart {chart}; charts are {known}"
        super().__init__(self.message)
