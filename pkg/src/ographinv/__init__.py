"""Exact invariants of framed 3-manifolds presented by weighted o-graphs.

The package computes the scalar invariant Z(diagram; H) for a
finite-dimensional Hopf monoid H given by structure constants, entirely
in exact arithmetic (rationals and cyclotomic fields), together with
the algebraic machinery it rests on: graded tensor networks, Hopf axiom
checking, integral theory, diagram moves, and the Heisenberg-double
cross-check.
"""

from .scalars import zeta, render_scalar, parse_scalar, embed_complex

__all__ = ["zeta", "render_scalar", "parse_scalar", "embed_complex"]
