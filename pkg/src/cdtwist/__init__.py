"""cdtwist: exact arithmetic for iterated-doubling algebras.

The 2**n-dimensional algebras obtained by repeatedly doubling the reals
(complex numbers, quaternions, octonions, sedenions, ... and their split
variants) have multiplication tables of the form

    e_A * e_B = (-1)**t(A, B) * e_{A XOR B}

for a Z2-valued twist exponent t. This package evaluates the exponent in
closed form directly from the binary digits of A and B, cross-validates it
against the doubling recursion, and builds exact element arithmetic, table
generation, structural verification, and benchmarks on top.
"""

from .algebra import (
    AlgebraSignature,
    Element,
    InvariantViolation,
    SignedIndex,
    basis_element,
    basis_from_generators,
    basis_mul,
    conjugate,
    mul_doubling,
    mul_twist,
    norm,
    trace,
    unit,
    zero,
)
from .analysis import (
    MultiplicationTable,
    PropertyReport,
    ZeroDivisorPair,
    benchmark_engines,
    build_table,
    find_zero_divisors,
    verify_algebra_laws,
    verify_twist_laws,
)
from .twist import (
    degree,
    ell,
    phi,
    split_twist,
    split_twist_recursive,
    twist,
    twist_batch,
    twist_recursive,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraSignature",
    "Element",
    "InvariantViolation",
    "MultiplicationTable",
    "PropertyReport",
    "SignedIndex",
    "ZeroDivisorPair",
    "basis_element",
    "basis_from_generators",
    "basis_mul",
    "benchmark_engines",
    "build_table",
    "conjugate",
    "degree",
    "ell",
    "find_zero_divisors",
    "mul_doubling",
    "mul_twist",
    "norm",
    "phi",
    "split_twist",
    "split_twist_recursive",
    "trace",
    "twist",
    "twist_batch",
    "twist_recursive",
    "unit",
    "verify_algebra_laws",
    "verify_twist_laws",
    "zero",
    "__version__",
]
