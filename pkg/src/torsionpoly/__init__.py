"""Non-abelian Reidemeister torsion polynomials of one-cusped knot exteriors.

Exact resultant elimination produces the torsion-trace polynomial relations,
number-field arithmetic verifies that torsion values at the discrete faithful
representation lie in the trace field, and a numeric Fox-calculus chain
complex engine cross-checks the symbolic pipeline.
"""

__version__ = "0.1.0"
