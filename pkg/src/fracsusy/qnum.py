"""Roots of unity and q-deformed numbers.

All deformed arithmetic in the package funnels through this module.  Powers
of a root of unity are evaluated from the reduced angle 2*pi*(m mod k)/k
instead of repeated complex multiplication, so q**m stays on the unit circle
for arbitrarily large exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class RootOfUnity:
    """Primitive k-th root of unity q = exp(2*pi*i/k), k >= 2."""

    k: int

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 2:
            raise ValueError(f"order must be an integer >= 2, got {self.k!r}")

    @property
    def value(self) -> complex:
        return self.power(1)

    @property
    def conjugate(self) -> complex:
        return self.power(-1)

    def power(self, m: float) -> complex:
        """q**m from the reduced angle; m may be any real number."""
        angle = 2.0 * math.pi * (m % self.k) / self.k
        return complex(math.cos(angle), math.sin(angle))


def root_of_unity(k: int) -> RootOfUnity:
    return RootOfUnity(k)


def box_q(x: float, q: RootOfUnity) -> float:
    """Symmetric bracket (q**x - q**-x)/(q - 1/q) as a real sine quotient.

    Evaluating sin(2*pi*x/k)/sin(2*pi/k) avoids the cancellation the complex
    quotient suffers near roots of unity.  For k = 2 the quotient is 0/0 and
    the analytic limit x*(-1)**(x+1) is used; it only exists at integer x.
    """
    if q.k == 2:
        xi = round(x)
        if abs(x - xi) > 1e-12:
            raise ValueError(f"bracket at k=2 diverges for non-integer argument {x}")
        return float(xi) * (-1.0) ** (xi + 1)
    return math.sin(2.0 * math.pi * x / q.k) / math.sin(2.0 * math.pi / q.k)


def box_q_complex(x: float, q: RootOfUnity) -> complex:
    """Cross-check form of the symmetric bracket, (q**x - q**-x)/(q - 1/q).

    Kept only for validation against :func:`box_q`; requires k >= 3.
    """
    if q.k == 2:
        raise ValueError("complex quotient form is singular at k=2")
    return (q.power(x) - q.power(-x)) / (q.value - q.conjugate)


def dbox_q(x: int, q: RootOfUnity) -> complex:
    """One-sided bracket (1 - q**x)/(1 - q) for integer x.

    Multiples of k are short-circuited to an exact 0 rather than computed by
    division, so nilpotency checks see clean zeros.
    """
    if x % q.k == 0:
        return 0j
    return (1.0 - q.power(x)) / (1.0 - q.value)


def dbox_factorial(n: int, q: RootOfUnity) -> complex:
    """Product of one-sided brackets 1..n; empty product is 1, exact 0 for n >= k."""
    if n < 0:
        raise ValueError(f"factorial argument must be >= 0, got {n}")
    if n >= q.k:
        return 0j
    out = 1.0 + 0j
    for j in range(1, n + 1):
        out *= dbox_q(j, q)
    return out


def dbox(x: int, big_q: complex) -> complex:
    """Generic-parameter one-sided bracket (1 - Q**x)/(1 - Q), integer x >= 0.

    At Q = 1 the geometric-sum value x is returned (the bracket's limit).
    """
    if big_q == 0:
        raise ValueError("deformation parameter must be nonzero")
    if big_q == 1:
        return complex(x)
    return (1.0 - big_q**x) / (1.0 - big_q)


def dbox_factorial_generic(n: int, big_q: complex) -> complex:
    """Product of generic one-sided brackets 1..n with the empty product 1."""
    out = 1.0 + 0j
    for j in range(1, n + 1):
        out *= dbox(j, big_q)
    return out
