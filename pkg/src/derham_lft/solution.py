"""Evaluation of the solution f, its inverse, and the closed form.

f is the unique continuous strictly increasing solution of the
two-branch equation; it maps the dyadic interval named by a bit string
(i1, ..., in) onto the value interval [W(0), W(1)] for the word product
W = A_{i1} @ ... @ A_{in}.  Everything here works off that enclosure.

Conventions: dyadic intervals are half open, digits use the terminating
expansion (digit n of x is floor(2^n x) - 2*floor(2^(n-1) x)), and x = 1
is the special point with f(1) = 1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, NamedTuple

from .errors import (
    DomainError,
    FormMismatchError,
    NonConvergenceError,
    NotAbsolutelyContinuousError,
)
from .numerics import (
    MoebiusMatrix,
    Scalar,
    apply_mobius,
    as_float,
    identity_matrix,
    is_exact,
    mat_mul,
    maybe_renormalize,
)
from .system import DeRhamSystem, ac_conditions

Bits = tuple[int, ...]

#: Adaptive evaluation refuses to descend further than this.  The
#: contraction margin guarantees geometric enclosure shrinkage, so
#: hitting the cap signals an unusable float-mode system (or tol = 0 at
#: a point with a non-terminating expansion).
MAX_DEPTH = 4096


class ValueEnclosure(NamedTuple):
    """Certified bracket [lower, upper] for f over a dyadic interval."""

    lower: Scalar
    upper: Scalar

    @property
    def width(self) -> Scalar:
        return self.upper - self.lower

    def midpoint(self) -> Scalar:
        return (self.lower + self.upper) / 2


def check_bits(bits: Bits) -> None:
    if any(b not in (0, 1) for b in bits):
        raise DomainError(f"address digits must be 0 or 1, got {bits!r}")


def address_interval(bits: Bits) -> tuple[Fraction, Fraction]:
    """The half-open dyadic interval named by the address."""
    check_bits(bits)
    lo = Fraction(0)
    for j, b in enumerate(bits, start=1):
        if b:
            lo += Fraction(1, 2**j)
    return lo, lo + Fraction(1, 2 ** len(bits))


def digits_of(x: Scalar, depth: int) -> Bits:
    """First `depth` binary digits of x in [0, 1).

    Exact input is expanded exactly; float input is expanded by exact
    doubling of its binary representation, which is also exact.
    """
    if not 0 <= x < 1:
        raise DomainError(f"x = {x} outside [0, 1)")
    y = x
    bits = []
    for _ in range(depth):
        y = y * 2
        if y >= 1:
            bits.append(1)
            y = y - 1
        else:
            bits.append(0)
    return tuple(bits)


def dyadic_digits(x: Scalar) -> Bits:
    """Terminating expansion of a dyadic rational in [0, 1)."""
    f = Fraction(x)
    if not 0 <= f < 1:
        raise DomainError(f"x = {x} outside [0, 1)")
    den = f.denominator
    if den & (den - 1):
        raise DomainError(f"x = {x} is not a dyadic rational")
    depth = den.bit_length() - 1
    return digits_of(f, depth)


def word_matrix(sys: DeRhamSystem, bits: Bits) -> MoebiusMatrix:
    """Left-to-right product of the matrices named by the address."""
    check_bits(bits)
    word = identity_matrix(sys.exact)
    for n, b in enumerate(bits, start=1):
        word = maybe_renormalize(mat_mul(word, sys.matrix(b)), n)
    return word


def dyadic_enclosure(sys: DeRhamSystem, bits: Bits) -> ValueEnclosure:
    """Enclosure [W(0), W(1)] of f over the address's interval.

    The empty address yields [0, 1].  Upper endpoints are consistent:
    the upper value of an address equals the lower value of its dyadic
    successor, exactly so in exact mode.
    """
    word = word_matrix(sys, bits)
    return ValueEnclosure(apply_mobius(word, 0), apply_mobius(word, 1))


def value_at_dyadic(sys: DeRhamSystem, x: Scalar) -> Scalar:
    """f at a dyadic rational in [0, 1], via the terminating address."""
    if x == 1:
        return sys.one()
    if x == 0:
        return sys.zero()
    bits = dyadic_digits(x)
    return apply_mobius(word_matrix(sys, bits), 0)


def dyadic_value_table(sys: DeRhamSystem, depth: int) -> list[Scalar]:
    """f(j / 2**depth) for j = 0 .. 2**depth, sharing word prefixes."""
    if depth < 0:
        raise DomainError("depth must be >= 0")
    out: list[Scalar] = []

    def descend(word: MoebiusMatrix, level: int) -> None:
        if level == depth:
            out.append(apply_mobius(word, 0))
            return
        for digit in (0, 1):
            child = maybe_renormalize(mat_mul(word, sys.matrix(digit)), level + 1)
            descend(child, level + 1)

    descend(identity_matrix(sys.exact), 0)
    out.append(sys.one())
    return out


def evaluate(
    sys: DeRhamSystem,
    x: Scalar,
    tol: float,
    max_depth: int = MAX_DEPTH,
) -> Scalar:
    """Value v with |v - f(x)| <= tol.

    Deepens the dyadic address of x until the enclosure width is at most
    2*tol and returns the midpoint.  Exact-mode dyadic rationals take the
    terminating address and return f(x) exactly (so tol = 0 is allowed
    there); x = 0 and x = 1 return exact endpoint values in both modes.
    """
    if not 0 <= x <= 1:
        raise DomainError(f"x = {x} outside [0, 1]")
    if tol < 0:
        raise DomainError("tol must be >= 0")
    if x == 0:
        return sys.zero()
    if x == 1:
        return sys.one()

    y: Scalar
    if sys.exact:
        f = Fraction(x)
        if f.denominator & (f.denominator - 1) == 0:
            return value_at_dyadic(sys, f)
        y = f
    else:
        y = as_float(x)

    word = identity_matrix(sys.exact)
    depth = 0
    while depth < max_depth:
        y = y * 2
        if y >= 1:
            digit = 1
            y = y - 1
        else:
            digit = 0
        depth += 1
        word = maybe_renormalize(mat_mul(word, sys.matrix(digit)), depth)
        lower = apply_mobius(word, 0)
        upper = apply_mobius(word, 1)
        if upper - lower <= 2 * tol:
            return (lower + upper) / 2
    raise NonConvergenceError(
        f"enclosure width above 2*tol = {2 * tol} after {max_depth} digits"
    )


def functional_equation_residual(sys: DeRhamSystem, x: Scalar) -> Scalar:
    """Residual of the two-branch equation at a dyadic rational x.

    Returns |f(x) - A0(f(2x))| for x <= 1/2 and |f(x) - A1(f(2x-1))| for
    x >= 1/2; at x = 1/2 both branches are computed and the larger
    residual is returned (both vanish for admissible systems).
    """
    fx = Fraction(x)
    if not 0 <= fx <= 1:
        raise DomainError(f"x = {x} outside [0, 1]")
    if fx.denominator & (fx.denominator - 1):
        raise DomainError(f"x = {x} is not a dyadic rational")
    residuals = []
    v = value_at_dyadic(sys, fx)
    if fx <= Fraction(1, 2):
        inner = value_at_dyadic(sys, 2 * fx)
        residuals.append(abs(v - apply_mobius(sys.A0, inner)))
    if fx >= Fraction(1, 2):
        inner = value_at_dyadic(sys, 2 * fx - 1)
        residuals.append(abs(v - apply_mobius(sys.A1, inner)))
    return max(residuals)


def inverse_evaluate(
    sys: DeRhamSystem,
    y: Scalar,
    tol: float,
    max_depth: int = MAX_DEPTH,
) -> Scalar:
    """Point x with |x - g(y)| <= tol, g the inverse of f.

    Descends the dyadic tree, at each node entering the child whose value
    enclosure contains y (f is strictly increasing, so the children split
    the parent's value range at f of the interval midpoint).  In exact
    mode a y that hits a dyadic image exactly returns g(y) exactly.
    """
    if not 0 <= y <= 1:
        raise DomainError(f"y = {y} outside [0, 1]")
    if tol < 0:
        raise DomainError("tol must be >= 0")
    if y == 0:
        return sys.zero()
    if y == 1:
        return sys.one()

    word = identity_matrix(sys.exact)
    x_lo: Scalar = sys.zero()
    half: Scalar = Fraction(1, 2) if sys.exact else 0.5
    depth = 0
    while depth < max_depth:
        mid_value = apply_mobius(word, sys.split_value)
        if sys.exact and y == mid_value:
            return x_lo + half
        if y < mid_value:
            digit = 0
        else:
            digit = 1
            x_lo = x_lo + half
        depth += 1
        word = maybe_renormalize(mat_mul(word, sys.matrix(digit)), depth)
        half = half / 2
        if half <= tol:  # x is pinned to an interval of width 2*half
            return x_lo + half
    raise NonConvergenceError(f"no convergence to tol = {tol} in {max_depth} steps")


def normal_form(sys: DeRhamSystem) -> tuple[MoebiusMatrix, MoebiusMatrix]:
    """Scale A0 by 1/d0 and A1 by 1/b1 and match the forced family.

    When both absolute-continuity identities hold, the normalized pair
    must equal ((1/2, 0), (c0, 1)) and ((4*c0+1, 1), (2*c0, 2*(1+c0)))
    for c0 the normalized lower-left entry of A0.  Raises
    NotAbsolutelyContinuousError when the identities fail, and
    FormMismatchError when the family match fails afterwards (which is
    impossible for exact input).
    """
    cond0, cond1 = ac_conditions(sys)
    if not (cond0 and cond1):
        raise NotAbsolutelyContinuousError(
            "closed form requires both absolute-continuity identities; "
            f"digit-0 identity holds: {cond0}, digit-1 identity holds: {cond1}"
        )
    d0 = sys.A0.d
    b1 = sys.A1.b
    n0 = sys.A0.scaled(1 / Fraction(d0) if is_exact(d0) else 1.0 / d0)
    n1 = sys.A1.scaled(1 / Fraction(b1) if is_exact(b1) else 1.0 / b1)
    c0 = n0.c
    half: Scalar = Fraction(1, 2) if sys.exact else 0.5
    expected0 = (half, sys.zero(), c0, sys.one())
    expected1 = (4 * c0 + 1, sys.one(), 2 * c0, 2 * (1 + c0))

    def matches(got, want) -> bool:
        if sys.exact:
            return all(g == w for g, w in zip(got, want))
        return all(abs(as_float(g) - as_float(w)) <= 1e-9 for g, w in zip(got, want))

    if not (matches(n0.entries, expected0) and matches(n1.entries, expected1)):
        raise FormMismatchError(
            f"normalized pair {n0.entries}, {n1.entries} does not match the "
            f"family forced by the identities at c0 = {c0}"
        )
    return n0, n1


def closed_form_solution(sys: DeRhamSystem) -> tuple[Scalar, Callable[[Scalar], Scalar]]:
    """Closed form of f in the absolutely continuous case.

    Returns (c0, f) with c0 the normalized lower-left entry of A0 and
    f(x) = x / (-2*c0*x + 1 + 2*c0).
    """
    n0, _ = normal_form(sys)
    c0 = n0.c

    def f(x: Scalar) -> Scalar:
        if is_exact(x) and is_exact(c0):
            x = Fraction(x)
        return x / (-2 * c0 * x + 1 + 2 * c0)

    return c0, f


def ac_density(c0: Scalar) -> Callable[[Scalar], Scalar]:
    """Density (1 + 2*c0) / (-2*c0*x + 1 + 2*c0)**2 of the solution
    measure in the absolutely continuous case."""

    def density(x: Scalar) -> Scalar:
        if is_exact(x) and is_exact(c0):
            x = Fraction(x)
        den = -2 * c0 * x + 1 + 2 * c0
        return (1 + 2 * c0) / (den * den)

    return density
