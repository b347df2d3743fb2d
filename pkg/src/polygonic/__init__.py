"""Exact-arithmetic computational algebra toolkit.

Modules: rings (exact coefficients and integer linear algebra), truncation
(divisor-closed index sets), cyclic (paths and cut sets of subdivided
circles), operad (coloured operations and envelopes), qfin (quasifinite
Z-sets and spans), mackey (windowed Mackey modules), witt (big Witt
vectors), hochschild (bar complexes of labelled cycles), cli.
"""

__version__ = "0.1.0"
