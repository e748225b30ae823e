"""Independent correctness oracles, all in exact rational arithmetic.

Every check here works by a route different from the construction it
verifies: cofactor cancellation is checked coefficient by coefficient,
conservation of the sum is checked by expanding the full quadratic
polynomial sum_i x_i K_i, the reciprocal-product multiplier identity is
evaluated through the generic product and quotient rules (letting the
cancellation emerge rather than assuming it), and gradient independence is
an exact rank computation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .darboux import IntegralBasis, MonomialIntegral
from .errors import (
    DimensionMismatch,
    DomainViolation,
    EmptySampleSet,
    ZeroCoordinate,
)
from .model import CyclicLVSystem, as_fraction, cofactor, _row_quadratic

__all__ = [
    "VerificationReport",
    "check_xh_zero",
    "check_linear_integral",
    "check_jacobi_multiplier",
    "check_independence",
    "cofactor_combination",
    "jacobi_divergence",
    "field_divergence",
    "independence_rank",
    "random_rational_state",
]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one check; witness holds the first failure, if any."""

    subject: str
    passed: bool
    witness: Optional[str] = None

    def __post_init__(self):
        if self.passed and self.witness is not None:
            raise ValueError("a passing report carries no witness")


def cofactor_combination(
    sys: CyclicLVSystem, exponents: Sequence[Fraction]
) -> tuple[Fraction, ...]:
    """Coefficients of the linear form sum_i lambda_i K_i."""
    if len(exponents) != sys.n:
        raise DimensionMismatch("exponent vector length does not match the system")
    total = [Fraction(0)] * sys.n
    for i in range(sys.n):
        lam = Fraction(exponents[i])
        if lam == 0:
            continue
        for j, c in enumerate(cofactor(sys, i + 1).coeffs):
            total[j] += lam * c
    return tuple(total)


def check_xh_zero(sys: CyclicLVSystem, integral: MonomialIntegral) -> VerificationReport:
    """Does the vector field annihilate the monomial integral?

    The derivative of prod x_i^(lambda_i) along the field equals the
    product itself times sum lambda_i K_i, so the integral is conserved iff
    that linear form has all coefficients exactly zero.
    """
    combo = cofactor_combination(sys, integral.exponents)
    for j, c in enumerate(combo):
        if c != 0:
            return VerificationReport(
                subject="cofactor-cancellation",
                passed=False,
                witness=f"coefficient of x{j + 1} is {c}",
            )
    return VerificationReport(subject="cofactor-cancellation", passed=True)


def check_linear_integral(sys: CyclicLVSystem) -> VerificationReport:
    """Expand sum_i x_i K_i and require every quadratic coefficient to cancel.

    Each product k_i x_i x_{i+1} appears once with sign + (row i) and once
    with sign - (row i+1), so the expansion is identically zero for every
    valid system; a sign slip anywhere in the index conventions shows up as
    a surviving monomial.
    """
    total: dict[tuple[int, int], Fraction] = {}
    for i0 in range(sys.n):
        for key, c in _row_quadratic(sys, i0).items():
            total[key] = total.get(key, Fraction(0)) + c
    for key in sorted(total):
        if total[key] != 0:
            a, b = key
            return VerificationReport(
                subject="linear-integral",
                passed=False,
                witness=f"coefficient of x{a + 1}*x{b + 1} is {total[key]}",
            )
    return VerificationReport(subject="linear-integral", passed=True)


def _rational_point(state: Sequence) -> list[Fraction]:
    return [as_fraction(x) for x in state]


def field_divergence(sys: CyclicLVSystem, state: Sequence) -> Fraction:
    """Exact divergence sum_i dP_i/dx_i of the raw field at a rational point.

    Serves as the multiplier-equals-one control: generically nonzero, which
    is what makes the reciprocal-product multiplier informative.
    """
    x = _rational_point(state)
    if len(x) != sys.n:
        raise DimensionMismatch("state length does not match the system")
    total = Fraction(0)
    for i0 in range(sys.n):
        form = cofactor(sys, i0 + 1)
        # d/dx_i [x_i * K_i] = K_i + x_i * dK_i/dx_i  (product rule)
        total += form.evaluate(x) + x[i0] * form.coeffs[i0]
    return total


def jacobi_divergence(sys: CyclicLVSystem, state: Sequence) -> Fraction:
    """Exact value of sum_i d(M P_i)/dx_i with M = 1/(x1*...*xn).

    Each term is computed by the generic product rule
    M * dP_i/dx_i + P_i * dM/dx_i with dM/dx_i = -M/x_i; the identity
    emerges from the cancellation rather than being assumed.
    """
    x = _rational_point(state)
    if len(x) != sys.n:
        raise DimensionMismatch("state length does not match the system")
    for i0, v in enumerate(x):
        if v == 0:
            raise ZeroCoordinate(f"coordinate x{i0 + 1} is zero")
    prod = Fraction(1)
    for v in x:
        prod *= v
    multiplier = 1 / prod
    total = Fraction(0)
    for i0 in range(sys.n):
        form = cofactor(sys, i0 + 1)
        p_i = x[i0] * form.evaluate(x)
        dp_i = form.evaluate(x) + x[i0] * form.coeffs[i0]
        total += multiplier * dp_i + p_i * (-multiplier / x[i0])
    return total


def check_jacobi_multiplier(
    sys: CyclicLVSystem, samples: Sequence[Sequence]
) -> VerificationReport:
    """Verify the reciprocal-product multiplier identity at rational samples.

    Passes iff the divergence of the multiplied field is exactly zero at
    every sample; all coordinates must be nonzero rationals.
    """
    if not samples:
        raise EmptySampleSet("at least one sample point is required")
    for idx, sample in enumerate(samples):
        residual = jacobi_divergence(sys, sample)
        if residual != 0:
            return VerificationReport(
                subject="jacobi-multiplier",
                passed=False,
                witness=f"sample {idx}: residual {residual}",
            )
    return VerificationReport(subject="jacobi-multiplier", passed=True)


def independence_rank(
    sys: CyclicLVSystem, basis: IntegralBasis, state: Sequence
) -> int:
    """Exact rank of the scaled gradient matrix at a positive rational point.

    Rows are (1,...,1) for the linear integral and (lambda_i / x_i)_i for
    each monomial integral. The monomial row is its gradient divided by the
    integral's (nonzero) value, and scaling a row by a nonzero scalar
    preserves rank, so this restates gradient independence exactly.
    """
    x = _rational_point(state)
    if len(x) != sys.n:
        raise DimensionMismatch("state length does not match the system")
    if any(v <= 0 for v in x):
        raise DomainViolation("independence samples must be strictly positive")
    rows: list[list[Fraction]] = [[Fraction(1)] * sys.n]
    for mono in basis.monomials:
        rows.append([lam / v for lam, v in zip(mono.exponents, x)])
    return linalg.rank(rows)


def check_independence(
    sys: CyclicLVSystem, basis: IntegralBasis, samples: Sequence[Sequence]
) -> VerificationReport:
    """Require full rank 1 + #monomials at every sample point."""
    if not samples:
        raise EmptySampleSet("at least one sample point is required")
    required = 1 + len(basis.monomials)
    for idx, sample in enumerate(samples):
        got = independence_rank(sys, basis, sample)
        if got != required:
            return VerificationReport(
                subject="independence",
                passed=False,
                witness=f"sample {idx}: rank {got}, expected {required}",
            )
    return VerificationReport(subject="independence", passed=True)


def random_rational_state(
    rng: random.Random, n: int, *, positive: bool = True, max_part: int = 99
) -> tuple[Fraction, ...]:
    """Random exact-rational point with nonzero (optionally positive) parts."""
    out = []
    for _ in range(n):
        q = Fraction(rng.randint(1, max_part), rng.randint(1, max_part))
        if not positive and rng.random() < 0.5:
            q = -q
        out.append(q)
    return tuple(out)
