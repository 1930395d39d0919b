"""Exact verification of lattice complex hyperbolic triangle groups.

The package constructs the two families of lattice triangle groups acting
on the complex hyperbolic plane from their exact cyclotomic parameters,
verifies their defining relations, and reproduces the mirror-stabilizer
data bank (generators, cone orders, Fuchsian signatures, Euler
characteristics, areas, trace fields, arithmeticity) as machine-checked
reports.
"""

from . import catalog, classify, cyclo, forms, report, stabilizer, tracefield, words

__version__ = "0.1.0"

__all__ = [
    "catalog",
    "classify",
    "cyclo",
    "forms",
    "report",
    "stabilizer",
    "tracefield",
    "words",
    "__version__",
]
