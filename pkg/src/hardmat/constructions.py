"""Explicit hard-matrix constructions.

All constructions are exponent-driven: a Sidon grid supplies exponents
e[i][j], and the matrix entries are either powers alpha^e of the generator of
an explicit extension field, powers 2^e of two, or (for the small
depth-2-hard instance) doubly-exponential powers 2^(2^k).  Everything is
deterministic and rebuildable from the recorded parameters alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, log2

from .budgets import (
    IRREDUCIBLE_SCAN_BUDGET,
    MAX_EXPONENT_BITS,
    SIDON_PRIME_BUDGET,
    TRIVIAL_HARD_CAP,
    BudgetExceeded,
)
from .fields import INTEGER_RING, extension_field, find_irreducible
from .matrices import ExactMatrix, identity, kronecker
from .sidon import SidonSet, construct_sidon

__all__ = [
    "ExponentMatrix",
    "HardMatrixBundle",
    "univariate_hard",
    "hard_over_finite",
    "hard_over_integers",
    "trivial_hard",
    "amplify_direct_sum",
    "quasipoly_hard",
    "rebuild",
]


@dataclass(frozen=True)
class ExponentMatrix:
    """Exponent grid e[i][j] of the univariate construction y^e[i][j]."""

    n: int
    t: int
    exponents: tuple[tuple[int, ...], ...]
    max_degree: int
    source: SidonSet


@dataclass(frozen=True)
class HardMatrixBundle:
    matrix: ExactMatrix
    provenance: str  # finite-field | integer | trivial | quasipoly
    parameters: dict


def univariate_hard(
    n: int, t: int, prime_budget: int = SIDON_PRIME_BUDGET
) -> ExponentMatrix:
    """Exponent grid from the (n, t) Sidon construction; records max degree."""
    s = construct_sidon(n, t, prime_budget=prime_budget)
    delta = max(x for row in s.grid for x in row)
    return ExponentMatrix(n, t, s.grid, delta, s)


def hard_over_finite(
    p: int,
    n: int,
    t: int,
    prime_budget: int = SIDON_PRIME_BUDGET,
    scan_budget: int = IRREDUCIBLE_SCAN_BUDGET,
) -> HardMatrixBundle:
    """Matrix over F_p[z]/(g) with entries alpha^e[i][j], deg g = 10*t*Delta + 1.

    Every exponent is below the extension degree, so each entry's coefficient
    list is a single 1 at index e[i][j]; t-wise products of entries then land
    on distinct powers of alpha and stay linearly independent over F_p.
    """
    exp = univariate_hard(n, t, prime_budget=prime_budget)
    big_d = 10 * t * exp.max_degree
    modulus = find_irreducible(p, big_d + 1, scan_budget=scan_budget)
    field = extension_field(p, modulus)
    degree = field.degree
    flat = []
    for row in exp.exponents:
        for e in row:
            entry = [0] * degree
            entry[e] = 1
            flat.append(tuple(entry))
    matrix = ExactMatrix(field, n, n, tuple(flat))
    return HardMatrixBundle(
        matrix, "finite-field", {"p": p, "n": n, "t": t, "D": big_d}
    )


def hard_over_integers(
    n: int,
    t: int,
    prime_budget: int = SIDON_PRIME_BUDGET,
    max_exponent_bits: int = MAX_EXPONENT_BITS,
) -> HardMatrixBundle:
    """Integer matrix with entries 2^e[i][j] (the univariate grid at y = 2)."""
    exp = univariate_hard(n, t, prime_budget=prime_budget)
    if exp.max_degree > max_exponent_bits:
        raise BudgetExceeded(
            f"entry exponent {exp.max_degree} exceeds the bignum cap "
            f"{max_exponent_bits}"
        )
    flat = tuple(1 << e for row in exp.exponents for e in row)
    matrix = ExactMatrix(INTEGER_RING, n, n, flat)
    return HardMatrixBundle(matrix, "integer", {"n": n, "t": t})


def _trivial_entries(n: int) -> tuple:
    return tuple(
        1 << (1 << ((n + 1) * (i - 1) + j))
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    )


def trivial_hard(n: int, cap: int = TRIVIAL_HARD_CAP) -> HardMatrixBundle:
    """The doubly-exponential matrix with entries 2^(2^((n+1)(i-1)+j))."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > cap:
        raise BudgetExceeded(
            f"n={n} exceeds the cap {cap}; entries would have "
            f"2^{(n + 1) * (n - 1) + n} bits"
        )
    matrix = ExactMatrix(INTEGER_RING, n, n, _trivial_entries(n))
    return HardMatrixBundle(matrix, "trivial", {"n": n})


def amplify_direct_sum(A: ExactMatrix, m: int) -> ExactMatrix:
    """Block-diagonal matrix with m copies of A on the diagonal (I_m (x) A)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return kronecker(identity(A.field, m), A)


def quasipoly_hard(n: int, c: float, cap: int = TRIVIAL_HARD_CAP) -> HardMatrixBundle:
    """Block-diagonal amplification of a polylog-size doubly-exponential block.

    The block side k is the smallest divisor of n with
    ceil(log2(n)^c) <= k <= 2*ceil(log2(n)^c); the result is I_(n/k) (x) M_k
    where (M_k)[i][j] = 2^(2^((k+1)(i-1)+j)).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if c <= 0:
        raise ValueError("c must be positive")
    target = ceil(log2(n) ** c)
    k = next(
        (d for d in range(target, 2 * target + 1) if d <= n and n % d == 0), None
    )
    if k is None:
        raise ValueError(
            f"no divisor of {n} lies in [{target}, {2 * target}]"
        )
    block = trivial_hard(k, cap=cap).matrix
    matrix = amplify_direct_sum(block, n // k)
    return HardMatrixBundle(matrix, "quasipoly", {"n": n, "c": c, "k": k})


def rebuild(bundle: HardMatrixBundle) -> HardMatrixBundle:
    """Reconstruct a bundle from its recorded parameters alone."""
    params = bundle.parameters
    if bundle.provenance == "finite-field":
        return hard_over_finite(params["p"], params["n"], params["t"])
    if bundle.provenance == "integer":
        return hard_over_integers(params["n"], params["t"])
    if bundle.provenance == "trivial":
        return trivial_hard(params["n"])
    if bundle.provenance == "quasipoly":
        return quasipoly_hard(params["n"], params["c"])
    raise ValueError(f"unknown provenance {bundle.provenance!r}")
