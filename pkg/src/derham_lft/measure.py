"""Dyadic interval masses, ratio states, and Monte Carlo sampling.

The measure mu whose distribution function solves the equation assigns
to the dyadic interval of an address the mass

    R = (p*s - q*r) / (s * (r + s))

computed from the word product ((p, q), (r, s)) of that address.  The
bottom-row ratio t = r/s is the orbit of 0 under the transposed maps,
stays inside [alpha, beta], and drives the digit law: the next digit is
0 with probability (t + 1)/(t + gamma).  Sampling therefore only needs
the scalar recursion t -> tAi(t), one float (or Fraction) per step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import fsum
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import DomainError
from .numerics import (
    MoebiusMatrix,
    Scalar,
    as_float,
    identity_matrix,
    is_exact,
    mat_mul,
    maybe_renormalize,
)
from .solution import Bits, check_bits, word_matrix
from .system import DeRhamSystem, binary_entropy, prob_digit0

#: Containment of ratio states in [alpha, beta] is exact in exact mode;
#: float orbits are allowed to spill by this much.
STATE_ATOL = 1e-10

DEFAULT_SEED = 99991


@dataclass(frozen=True)
class MeasureNode:
    """Per-address state: word product, interval mass, ratio state."""

    bits: Bits
    word: MoebiusMatrix
    mass: Scalar
    state: Scalar


def mass_from_word(word: MoebiusMatrix) -> Scalar:
    """Interval mass (p*s - q*r)/(s*(r + s)) of a word ((p, q), (r, s))."""
    p, q, r, s = word.entries
    num = p * s - q * r
    den = s * (r + s)
    if is_exact(num) and is_exact(den):
        return Fraction(num) / Fraction(den)
    return num / den


def interval_measure(sys: DeRhamSystem, bits: Bits) -> Scalar:
    """Mass of the dyadic interval named by the address. In (0, 1], equal
    to the width of the value enclosure of the same address."""
    return mass_from_word(word_matrix(sys, bits))


def transposed_step(sys: DeRhamSystem, t: Scalar, digit: int) -> Scalar:
    """One ratio-state update t -> (a*t + c)/(b*t + d) for the digit's matrix."""
    m = sys.matrix(digit)
    a, b, c, d = m.entries
    if is_exact(t) and m.exact:
        t = Fraction(t)
        return (a * t + c) / (b * t + d)
    t = as_float(t)
    return (as_float(a) * t + as_float(c)) / (as_float(b) * t + as_float(d))


def ratio_state(sys: DeRhamSystem, bits: Bits) -> Scalar:
    """Bottom-row ratio r/s of the address word, computed incrementally
    from t = 0; guaranteed inside [alpha, beta]."""
    check_bits(bits)
    t = sys.zero()
    for b in bits:
        t = transposed_step(sys, t, b)
    return t


def in_state_interval(sys: DeRhamSystem, t: Scalar) -> bool:
    if sys.exact and is_exact(t):
        return sys.alpha <= t <= sys.beta
    t = as_float(t)
    return as_float(sys.alpha) - STATE_ATOL <= t <= as_float(sys.beta) + STATE_ATOL


def digit_probability(sys: DeRhamSystem, t: Scalar, digit: int) -> Scalar:
    """Conditional probability of the given next digit at ratio state t.

    Equals the mass ratio R(child)/R(parent) for the corresponding child
    interval.
    """
    if digit not in (0, 1):
        raise DomainError(f"digit must be 0 or 1, got {digit!r}")
    if not in_state_interval(sys, t):
        raise DomainError(f"ratio state {t} outside [{sys.alpha}, {sys.beta}]")
    p0 = prob_digit0(sys, t)
    return p0 if digit == 0 else 1 - p0


def walk_tree(sys: DeRhamSystem, depth: int) -> Iterator[MeasureNode]:
    """Every node of the dyadic tree down to the given depth, pre-order.

    Word products share prefixes, so the full exhaustive sweep costs one
    matrix multiplication per node.
    """
    if depth < 0:
        raise DomainError("depth must be >= 0")

    def descend(bits: Bits, word: MoebiusMatrix, t: Scalar) -> Iterator[MeasureNode]:
        yield MeasureNode(bits, word, mass_from_word(word), t)
        if len(bits) == depth:
            return
        for digit in (0, 1):
            child = maybe_renormalize(mat_mul(word, sys.matrix(digit)), len(bits) + 1)
            yield from descend(bits + (digit,), child, transposed_step(sys, t, digit))

    return descend((), identity_matrix(sys.exact), sys.zero())


@dataclass(frozen=True)
class SamplePath:
    """A sampled digit string with the ratio states that produced it.

    states[n] is the state before digit n+1 was drawn (states[0] = 0);
    exact systems keep Fraction states, float systems a float64 array.
    """

    digits: np.ndarray
    states: Sequence[Scalar]
    seed: int

    def __len__(self) -> int:
        return int(self.digits.shape[0])


def _uniforms(seed: int, n: int) -> np.ndarray:
    # Philox is counter-based and splittable: one stream per (seed, call).
    return np.random.Generator(np.random.Philox(seed)).random(n)


def _float_params(sys: DeRhamSystem) -> tuple[float, ...]:
    a0, b0, c0, d0 = (as_float(e) for e in sys.A0.entries)
    a1, b1, c1, d1 = (as_float(e) for e in sys.A1.entries)
    return a0, b0, c0, d0, a1, b1, c1, d1, as_float(sys.gamma)


def sample_path(sys: DeRhamSystem, n: int, seed: int = DEFAULT_SEED) -> SamplePath:
    """Draw n digits with the exact conditional law, deterministically in
    the seed.  Exact systems iterate Fraction states and convert the
    digit probability to float only for the uniform comparison; state
    denominators grow with the path length, so long paths over systems
    with a non-degenerate state interval belong in approximate mode."""
    if n < 1:
        raise DomainError("n must be >= 1")
    u = _uniforms(seed, n)
    digits = np.empty(n, dtype=np.uint8)
    if not sys.exact:
        states = np.empty(n, dtype=np.float64)
        _kernels.path_arrays(*_float_params(sys), u, digits, states)
        return SamplePath(digits, states, seed)
    states_list: list[Scalar] = []
    t: Scalar = sys.zero()
    gamma = sys.gamma
    for i in range(n):
        states_list.append(t)
        p0 = (t + 1) / (t + gamma)
        digit = 0 if u[i] < as_float(p0) else 1
        digits[i] = digit
        t = transposed_step(sys, t, digit)
    return SamplePath(digits, states_list, seed)


def entropy_rate_estimate(sys: DeRhamSystem, n: int, seed: int = DEFAULT_SEED) -> float:
    """Average binary entropy of the digit law along a sampled path.

    Estimates the growth rate of -log(R_n)/n; every summand lies in
    [entropy_min, entropy_max] of the dimension bounds, hence so does the
    estimate.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if not sys.exact:
        u = _uniforms(seed, n)
        entropy_sum, _, _, _ = _kernels.path_sums(*_float_params(sys), u)
        return entropy_sum / n
    path = sample_path(sys, n, seed)
    return fsum(binary_entropy(prob_digit0(sys, t)) for t in path.states) / n
