"""Scalar and 2x2 linear-fractional (Moebius) matrix primitives.

Scalars live in one of two modes that travel through every computation:

* exact mode: ``fractions.Fraction`` (plain ``int`` is accepted and
  promoted).  All arithmetic stays exact and results are kept in lowest
  terms with a positive denominator automatically.
* approximate mode: ``float``.  Any operation that touches a float yields
  a float; exact values never degrade silently because Fraction/Fraction
  arithmetic cannot produce a float.

A matrix ((a, b), (c, d)) acts on the line by z -> (a*z + b)/(c*z + d),
which is invariant under scaling the matrix by any positive constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import PoleError, ZeroMatrixError

Scalar = Union[int, Fraction, float]

#: Relative denominator threshold below which a float evaluation is
#: treated as sitting on a pole.  Admissible systems keep denominators
#: strictly positive on [0, 1], so a near-zero denominator means the
#: input is numerically unusable, not that the request is valid.
POLE_RTOL = 1e-15

#: Approximate-mode word products are rescaled after this many
#: multiplications; entries otherwise grow or shrink geometrically.
RENORM_EVERY = 16


def is_exact(x: Scalar) -> bool:
    """True for int/Fraction scalars, False for floats."""
    return not isinstance(x, float)


def as_float(x: Scalar) -> float:
    return float(x)


def _coerce(x: Scalar) -> Scalar:
    """Promote exact scalars to Fraction so division stays exact."""
    if isinstance(x, float):
        return x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"unsupported scalar type {type(x).__name__!r}")


@dataclass(frozen=True)
class MoebiusMatrix:
    """A real 2x2 matrix ((a, b), (c, d)) acting by z -> (a*z+b)/(c*z+d)."""

    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, _coerce(getattr(self, name)))

    @property
    def entries(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.a, self.b, self.c, self.d)

    @property
    def exact(self) -> bool:
        return all(is_exact(e) for e in self.entries)

    def det(self) -> Scalar:
        return self.a * self.d - self.b * self.c

    def scaled(self, k: Scalar) -> "MoebiusMatrix":
        k = _coerce(k)
        return MoebiusMatrix(k * self.a, k * self.b, k * self.c, k * self.d)

    def __matmul__(self, other: "MoebiusMatrix") -> "MoebiusMatrix":
        return mat_mul(self, other)

    def __call__(self, z: Scalar) -> Scalar:
        return apply_mobius(self, z)


IDENTITY = MoebiusMatrix(1, 0, 0, 1)


def identity_matrix(exact: bool = True) -> MoebiusMatrix:
    """Identity matrix typed for the requested scalar mode."""
    if exact:
        return IDENTITY
    return MoebiusMatrix(1.0, 0.0, 0.0, 1.0)


def _check_pole(den: Scalar, c: Scalar, d: Scalar) -> None:
    if is_exact(den):
        if den == 0:
            raise PoleError("exact denominator c*z + d is zero")
    else:
        scale = max(abs(as_float(c)), abs(as_float(d)), 1.0)
        if abs(den) <= POLE_RTOL * scale:
            raise PoleError(
                f"denominator {den!r} within pole tolerance {POLE_RTOL * scale!r}"
            )


def apply_mobius(m: MoebiusMatrix, z: Scalar) -> Scalar:
    """Evaluate (a*z + b)/(c*z + d).

    Raises PoleError when the denominator vanishes (exactly in exact
    mode, within POLE_RTOL relative to max(|c|, |d|, 1) in float mode).
    """
    z = _coerce(z)
    den = m.c * z + m.d
    _check_pole(den, m.c, m.d)
    return (m.a * z + m.b) / den


def mobius_derivative(m: MoebiusMatrix, z: Scalar) -> Scalar:
    """Derivative of the map at z: (a*d - b*c)/(c*z + d)^2."""
    z = _coerce(z)
    den = m.c * z + m.d
    _check_pole(den, m.c, m.d)
    return m.det() / (den * den)


def mat_mul(x: MoebiusMatrix, y: MoebiusMatrix) -> MoebiusMatrix:
    """Standard 2x2 product; composes the maps: (x@y)(z) = x(y(z))."""
    return MoebiusMatrix(
        x.a * y.a + x.b * y.c,
        x.a * y.b + x.b * y.d,
        x.c * y.a + x.d * y.c,
        x.c * y.b + x.d * y.d,
    )


def transpose(m: MoebiusMatrix) -> MoebiusMatrix:
    return MoebiusMatrix(m.a, m.c, m.b, m.d)


def renormalize(m: MoebiusMatrix) -> MoebiusMatrix:
    """Rescale by a positive constant to a canonical representative.

    Exact mode: clear denominators and divide out the gcd, giving integer
    entries with no common factor.  Float mode: divide by the largest
    absolute entry so the maximum magnitude is 1.  The induced map is
    unchanged either way.
    """
    if m.exact:
        fracs = [Fraction(e) for e in m.entries]
        if all(f == 0 for f in fracs):
            raise ZeroMatrixError("cannot renormalize the zero matrix")
        lcm = math.lcm(*(f.denominator for f in fracs))
        ints = [f.numerator * (lcm // f.denominator) for f in fracs]
        g = math.gcd(*ints)
        return MoebiusMatrix(*(Fraction(i // g) for i in ints))
    mags = [abs(as_float(e)) for e in m.entries]
    top = max(mags)
    if top == 0.0:
        raise ZeroMatrixError("cannot renormalize the zero matrix")
    if not math.isfinite(top):
        raise ZeroMatrixError("cannot renormalize a non-finite matrix")
    return MoebiusMatrix(*(as_float(e) / top for e in m.entries))


def maybe_renormalize(m: MoebiusMatrix, n_products: int) -> MoebiusMatrix:
    """Apply the approximate-mode rescaling cadence to a word product."""
    if not m.exact and n_products > 0 and n_products % RENORM_EVERY == 0:
        return renormalize(m)
    return m
