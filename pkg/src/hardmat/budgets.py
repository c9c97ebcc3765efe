"""Enumeration and size caps shared across the toolkit.

Every brute-force surface (subset enumeration, prime search, candidate
polynomial scan, ...) is guarded by an explicit budget.  Hitting a budget
raises :class:`BudgetExceeded`, which callers must treat as "unknown", never
as a negative answer.  The generic enumeration cap can be overridden with the
``HARDMAT_BUDGET`` environment variable.
"""

from __future__ import annotations

import os

__all__ = [
    "BudgetExceeded",
    "DEFAULT_ENUMERATION_BUDGET",
    "SIDON_PRIME_BUDGET",
    "SIDON_SUM_CAP",
    "IRREDUCIBLE_SCAN_BUDGET",
    "SIGMA_VALUE_CAP",
    "TRIVIAL_HARD_CAP",
    "PSD_MAX_N",
    "PRIMALITY_BOUND",
    "MAX_EXPONENT_BITS",
    "enumeration_budget",
]


class BudgetExceeded(Exception):
    """An enumeration or size cap was hit; the question was not decided."""


#: Cap on generic subset / kernel enumerations (pi_t subsets, q^dim kernel
#: vectors, search nodes).  Overridable via HARDMAT_BUDGET.
DEFAULT_ENUMERATION_BUDGET = 1_000_000

#: Largest prime tried when searching for a Sidon-set modulus.
SIDON_PRIME_BUDGET = 1_000_000

#: Cap on the number of t-subset sums materialised by the Sidon verifier.
SIDON_SUM_CAP = 5_000_000

#: Cap on candidate polynomials scanned by the irreducible search.
IRREDUCIBLE_SCAN_BUDGET = 1_000_000

#: Max number of distinct t-wise products fed to the subset-sum enumeration
#: (2**cap subsets are walked).
SIGMA_VALUE_CAP = 22

#: Side cap for the doubly-exponential construction; entries of the n-th
#: instance have 2**((n+1)(n-1)+n) bits.
TRIVIAL_HARD_CAP = 4

#: Largest side for which the exact PSD instance is built.
PSD_MAX_N = 64

#: Trial division refuses inputs above this bound rather than guessing.
PRIMALITY_BOUND = 10**12

#: Cap on a single exponent (in bits) for integer hard-matrix entries.
MAX_EXPONENT_BITS = 10**7


def enumeration_budget(override: int | None = None) -> int:
    """Resolve the generic enumeration budget.

    Priority: explicit ``override`` argument, then the HARDMAT_BUDGET
    environment variable, then the built-in default.
    """
    if override is not None:
        if override < 1:
            raise ValueError("budget must be positive")
        return override
    raw = os.environ.get("HARDMAT_BUDGET")
    if raw is None:
        return DEFAULT_ENUMERATION_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"HARDMAT_BUDGET is not an integer: {raw!r}") from exc
    if value < 1:
        raise ValueError(f"HARDMAT_BUDGET must be positive, got {value}")
    return value
