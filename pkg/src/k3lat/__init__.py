"""Exact-arithmetic toolkit for isometry groups of the K3 lattice.

The package computes coinvariant lattices, realizability verdicts, the
prime-order Nikulin/Coxeter dichotomy, signature-defect arithmetic for
cyclic quotient singularities, and the one-lattice-per-prime family of
fixed-point-free examples, all over Z and Q with no floating point.
"""

__version__ = "0.1.0"
