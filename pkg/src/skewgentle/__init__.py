"""Skew-gentle algebras from dissected orbifold surfaces.

Pipeline: a dissected marked orbifold surface produces a skew-gentle
triple and a branched double cover with a gentle algebra and an order-2
action; graded curves become string/band complexes of projectives over
the cover algebra, which push down to complexes over the skew-gentle
algebra, where indecomposability and the five-set bookkeeping can be
checked exactly over the rationals.
"""

from importlib import resources


def data_text(name: str) -> str:
    """Contents of a bundled corpus file from ``skewgentle/data``."""
    return resources.files("skewgentle.data").joinpath(name).read_text()


__all__ = ["data_text"]
__version__ = "0.1.0"
