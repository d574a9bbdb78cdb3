"""Utility functions."""

from libstarprod import star
from libstarprod.glue import gluing  # noqa: F401  registers GluedStar
from libstarprod.orbit import su2  # noqa: F401  registers HarmonicStar, QuotientStar


def _get_subclasses(cls):
    for subclass in cls.__subclasses__():
        yield from _get_subclasses(subclass)
        yield subclass


def product_classes() -> dict:
    """Every star product implementation keyed by its name tag."""
    return {product.name: product for product in _get_subclasses(star.StarProduct)}


def get_product(name: str):
    try:
        return product_classes()[name]
    except KeyError as e:
        raise UnknownProduct(name, sorted(product_classes())) from e


class UnknownProduct(Exception):
    """Raise when no star product carries the requested name."""

    def __init__(self, name: str = "", known=()):
        self.name = name
        self.message = f"Unknown product {name}; known products are {', '.join(known)}"
        super().__init__(self.message)
