"""Shared test utilities: random admissible systems and independent oracles."""

from __future__ import annotations

from fractions import Fraction

from derham_lft import (
    DeRhamSystem,
    MoebiusMatrix,
    ac_conditions,
    apply_mobius,
    validate,
)


def fraction_between(rng, lo: Fraction, hi: Fraction) -> Fraction:
    """A random rational strictly inside (lo, hi)."""
    den = rng.choice([7, 11, 16, 23, 32, 51, 64])
    num = rng.randint(1, den - 1)
    return lo + (hi - lo) * Fraction(num, den)


def random_valid_system(rng, require_digit0_fails: bool = False, scaled: bool = False) -> DeRhamSystem:
    """Sample an exact admissible pair.

    Parameterization: pick the common boundary value v = A0(1) in (0, 1),
    then c0 in (v-1, 1/v-1) and c1 in (-v, v/(1-v)); with d0 = d1 = 1,
    a0 = v*(c0+1), b1 = v, a1 = c1+1-v every admissibility condition
    holds by construction (checked by validate anyway).
    """
    while True:
        den = rng.choice([5, 7, 9, 12, 17, 24, 31])
        v = Fraction(rng.randint(1, den - 1), den)
        c0 = fraction_between(rng, v - 1, 1 / v - 1)
        c1 = fraction_between(rng, -v, v / (1 - v))
        a0 = MoebiusMatrix(v * (c0 + 1), 0, c0, 1)
        a1 = MoebiusMatrix(c1 + 1 - v, v, c1, 1)
        if scaled:
            a0 = a0.scaled(Fraction(rng.randint(1, 9), rng.randint(1, 9)))
            a1 = a1.scaled(Fraction(rng.randint(1, 9), rng.randint(1, 9)))
        system = validate(a0, a1)
        if require_digit0_fails and ac_conditions(system)[0]:
            continue
        return system


def coin_distribution(p: Fraction, k: int, depth: int) -> Fraction:
    """Independent oracle for the lebesgue family: the solution at k/2**depth
    is the probability that a biased-coin binary expansion is below it,
    i.e. the sum over j < k of p**(zeros of j) * (1-p)**(ones of j)."""
    total = Fraction(0)
    for j in range(k):
        ones = bin(j).count("1")
        total += (1 - p) ** ones * p ** (depth - ones)
    return total


def iterate_functional_equation(system: DeRhamSystem, depth: int, sweeps: int = 60):
    """Independent fixed-point oracle on the grid j/2**depth.

    Starts from the identity and repeatedly applies the two-branch
    operator; both branch maps are strict contractions on [0, 1], so the
    iterates converge geometrically to the unique solution.  Doubling
    maps the grid onto itself, so no interpolation is involved.
    """
    n = 1 << depth
    h = [j / n for j in range(n + 1)]
    a0 = MoebiusMatrix(*(float(e) for e in system.A0.entries))
    a1 = MoebiusMatrix(*(float(e) for e in system.A1.entries))
    for _ in range(sweeps):
        nxt = [0.0] * (n + 1)
        for j in range(n + 1):
            if 2 * j <= n:
                nxt[j] = apply_mobius(a0, h[2 * j])
            else:
                nxt[j] = apply_mobius(a1, h[2 * j - n])
        h = nxt
    return h
