"""Galois module.

Arithmetic in GF(2^64), the extension field used to certify ranks by random
evaluation. Elements are Python ints in ``range(2**64)`` read as polynomials
over GF(2) in the generator ``g``, reduced modulo the irreducible polynomial
``g^64 + g^4 + g^3 + g + 1``.

This module provides the following functions:

- gf_add
- gf_mul
- gf_pow
- gf_inv
- random_element
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from twistkh import exceptions

if TYPE_CHECKING:
    import numpy as np

DEGREE = 64
MODULUS = (1 << DEGREE) | 0b11011
ORDER = 1 << DEGREE
_TOP = 1 << DEGREE


def gf_add(a: int, b: int) -> int:
    """Add two field elements."""
    return a ^ b


def gf_mul(a: int, b: int) -> int:
    """Multiply two field elements (carry-less product, then reduction)."""
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a & _TOP:
            a ^= MODULUS
    return result


def gf_pow(a: int, exponent: int) -> int:
    """Raise a field element to a non-negative integer power.

    Args:
        a: The base.
        exponent: A non-negative integer.

    Returns:
        ``a`` to the power ``exponent``; ``gf_pow(0, 0)`` is 1.
    """
    result = 1
    while exponent:
        if exponent & 1:
            result = gf_mul(result, a)
        exponent >>= 1
        if exponent:
            a = gf_mul(a, a)
    return result


def gf_inv(a: int) -> int:
    """Invert a nonzero field element as ``a^(2^64 - 2)``.

    Raises:
        DivisionByZero: If ``a`` is zero.
    """
    if a == 0:
        msg = "zero has no inverse in GF(2^64)"
        raise exceptions.DivisionByZero(msg)
    return gf_pow(a, ORDER - 2)


def random_element(rng: np.random.Generator) -> int:
    """Draw a uniformly random field element from a numpy generator."""
    high = int(rng.integers(0, 1 << 32, dtype="uint64"))
    low = int(rng.integers(0, 1 << 32, dtype="uint64"))
    return (high << 32) | low
