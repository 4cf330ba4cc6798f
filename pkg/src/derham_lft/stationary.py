"""Stationary-measure structure of the inverse distribution.

Let g be the inverse of the solution f and mu_g the measure with
distribution function g.  For the random action that applies A0 or A1
with probability 1/2 each, mu_g is the unique stationary measure; on the
algebra generated by the f-images of dyadic intervals it satisfies

    mu_g(f(I_k(x))) = mu_g(f(I_{k-1}(2x mod 1))) / 2 = 2**(-k).

Both identities are verified here to a requested tolerance (exactly, in
exact mode).  The final check is the change-of-measure identity for the
doubling map T(x) = 2x mod 1:

    mu_f(T^{-1} A) = integral over A of (A0'(f(y)) + A1'(f(y))) dmu_f(y)

tested on dyadic intervals with a midpoint rule that uses exact cell
masses, so the only error is the integrand's variation within a cell.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import ABSOLUTELY_CONTINUOUS, classify
from .errors import DomainError
from .measure import mass_from_word
from .numerics import (
    MoebiusMatrix,
    Scalar,
    apply_mobius,
    identity_matrix,
    mat_mul,
    maybe_renormalize,
    mobius_derivative,
)
from .solution import dyadic_value_table, inverse_evaluate, word_matrix
from .system import DeRhamSystem


@dataclass(frozen=True)
class StationarityReport:
    """Maximum residuals of the halving recursion and the mass identity,
    plus the structural transfer of the classification verdict."""

    depth: int
    max_residual_recursion: Scalar
    max_residual_mass: Scalar
    verdict_transfer: bool


def inverse_measure_interval(
    sys: DeRhamSystem, a: Scalar, b: Scalar, tol: float
) -> Scalar:
    """mu_g([a, b]) = g(b) - g(a), each endpoint to tolerance tol/2."""
    if not 0 <= a <= b <= 1:
        raise DomainError(f"need 0 <= a <= b <= 1, got a = {a}, b = {b}")
    half = tol / 2
    return inverse_evaluate(sys, b, half) - inverse_evaluate(sys, a, half)


def stationarity_check(sys: DeRhamSystem, depth: int, tol: float) -> StationarityReport:
    """Exhaustive residuals over every address down to `depth`.

    For each address, compares mu_g of its value interval with 2**-k and
    with half the mu_g-mass of the digit-shifted parent interval.  In
    exact mode the inverse terminates on the dyadic value grid and both
    residuals are exactly zero.
    """
    if not 1 <= depth <= 20:
        raise DomainError("depth must be in [1, 20]")
    values = dyadic_value_table(sys, depth)
    half_tol = tol / 2
    g_at = [inverse_evaluate(sys, v, half_tol) for v in values]

    def mass(k: int, j: int) -> Scalar:
        # mu_g of the value interval of address j at depth k.
        stride = 1 << (depth - k)
        return g_at[(j + 1) * stride] - g_at[j * stride]

    zero = sys.zero()
    max_mass = zero
    max_rec = zero
    for k in range(1, depth + 1):
        cell = sys.one() / (2**k if sys.exact else float(2**k))
        for j in range(1 << k):
            m = mass(k, j)
            max_mass = max(max_mass, abs(m - cell))
            # Drop the leading digit: the image interval halves in mass.
            j_shift = j - (1 << (k - 1)) if j >= 1 << (k - 1) else j
            parent = (
                mass(k - 1, j_shift)
                if k > 1
                else g_at[-1] - g_at[0]  # depth-0 interval is all of [0, 1]
            )
            max_rec = max(max_rec, abs(m - parent / 2))

    report = classify(sys)
    transfer = (report.verdict != ABSOLUTELY_CONTINUOUS) == (
        not (report.ac_condition_0 and report.ac_condition_1)
    )
    return StationarityReport(
        depth=depth,
        max_residual_recursion=max_rec,
        max_residual_mass=max_mass,
        verdict_transfer=transfer,
    )


def doubling_map_change_of_measure(
    sys: DeRhamSystem, depth: int, quad_depth: int
) -> Scalar:
    """Max residual of the doubling-map change-of-measure identity over
    all dyadic intervals A at `depth`.

    The left side mu_f(T^{-1} A) is the exact mass of the two preimage
    intervals (prepend digit 0 or 1 to A's address).  The right side sums
    (A0' + A1') at f(cell midpoint) times the exact cell mass over the
    cells of A at `quad_depth`; the residual is pure quadrature error,
    shrinking like 2**-quad_depth.
    """
    if depth < 1:
        raise DomainError("depth must be >= 1")
    if quad_depth <= depth:
        raise DomainError("quad_depth must exceed depth")

    n_intervals = 1 << depth
    zero = sys.zero()
    rhs = [zero] * n_intervals
    split = sys.split_value  # f at the midpoint of any cell = word(split)

    def descend(word: MoebiusMatrix, level: int, index: int) -> None:
        if level == quad_depth:
            z = apply_mobius(word, split)
            weight = mobius_derivative(sys.A0, z) + mobius_derivative(sys.A1, z)
            rhs[index >> (quad_depth - depth)] += weight * mass_from_word(word)
            return
        for digit in (0, 1):
            child = maybe_renormalize(mat_mul(word, sys.matrix(digit)), level + 1)
            descend(child, level + 1, (index << 1) | digit)

    descend(identity_matrix(sys.exact), 0, 0)

    residual = zero
    for j in range(n_intervals):
        bits = tuple((j >> (depth - 1 - i)) & 1 for i in range(depth))
        lhs = zero
        for lead in (0, 1):
            lhs += mass_from_word(word_matrix(sys, (lead,) + bits))
        residual = max(residual, abs(lhs - rhs[j]))
    return residual
