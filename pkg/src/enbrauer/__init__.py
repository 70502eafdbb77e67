"""Exact computations with the Hopf algebras E(n): R-matrices, lazy cocycles,
Clifford module algebras and Brauer group invariants."""

from .fields import QQ, PrimeField, parse_field
from .linalg import matrix
from .en import build_en
from .rmatrix import build_R, build_r
from .twisting import build_omega, build_sigma

__all__ = ["QQ", "PrimeField", "parse_field", "matrix", "build_en", "build_R", "build_r",
           "build_omega", "build_sigma"]
__version__ = "0.1.0"
