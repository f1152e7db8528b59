"""Verification toolkit for the mutually-touching-cylinders bound.

Subpackages cover: graph values with canonical labeling (`graphs`,
`catalog`), forbidden induced-subgraph detection in 2-colorings
(`forbidden`), the level-by-level feasible-coloring search (`search`),
exact and floating-point matrix inertia (`signature`), and equidistant
line configurations (`geometry`).  `cli` ties them together.
"""

__version__ = "0.1.0"
