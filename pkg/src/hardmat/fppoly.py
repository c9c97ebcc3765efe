"""Dense univariate polynomial arithmetic over prime fields.

Polynomials over F_p are tuples of residues, low-degree-first, with no
trailing zeros; the zero polynomial is the empty tuple.  This module is the
engine behind extension-field arithmetic and the deterministic irreducible
search.  Binary polynomials get a bitmask fast path (bit i = coefficient of
z^i) so that the search stays usable at degrees in the thousands.
"""

from __future__ import annotations

from .budgets import IRREDUCIBLE_SCAN_BUDGET, BudgetExceeded

Poly = tuple  # tuple[int, ...], low-degree-first, trimmed

__all__ = [
    "Poly",
    "trim",
    "degree",
    "add",
    "sub",
    "neg",
    "mul",
    "mod_monic",
    "gcd",
    "inverse_mod",
    "eval_at",
    "is_irreducible",
    "find_irreducible_coeffs",
]


def trim(coeffs) -> Poly:
    """Drop trailing zeros and return a canonical tuple."""
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def degree(a: Poly) -> int:
    """Degree of a; the zero polynomial has degree -1."""
    return len(a) - 1


def add(a: Poly, b: Poly, p: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def neg(a: Poly, p: int) -> Poly:
    return tuple((-c) % p for c in a)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    return add(a, neg(b, p), p)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    """Schoolbook product, skipping zero coefficients of the sparser factor."""
    if not a or not b:
        return ()
    if len(a) > len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return trim([c % p for c in out])


def mod_monic(a: Poly, g: Poly, p: int) -> Poly:
    """Remainder of a modulo a monic g."""
    dg = len(g) - 1
    if len(a) <= dg:
        return trim(a)
    work = list(a)
    for i in range(len(work) - 1, dg - 1, -1):
        c = work[i]
        if c:
            work[i] = 0
            off = i - dg
            for j in range(dg):
                gj = g[j]
                if gj:
                    work[off + j] = (work[off + j] - c * gj) % p
    return trim(work)


def _mod_general(a: Poly, b: Poly, p: int) -> Poly:
    """Remainder of a modulo an arbitrary nonzero b."""
    inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    work = list(a)
    for i in range(len(work) - 1, db - 1, -1):
        c = work[i] * inv % p
        if c:
            work[i] = 0
            off = i - db
            for j in range(db):
                bj = b[j]
                if bj:
                    work[off + j] = (work[off + j] - c * bj) % p
    return trim(work)


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    """Monic greatest common divisor."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, _mod_general(a, b, p)
    if a and a[-1] != 1:
        inv = pow(a[-1], p - 2, p)
        a = tuple(c * inv % p for c in a)
    return a


def inverse_mod(a: Poly, g: Poly, p: int) -> Poly:
    """Inverse of a modulo g (g monic irreducible) via extended Euclid."""
    a = mod_monic(trim(a), g, p)
    if not a:
        raise ZeroDivisionError("inverse of zero in extension field")
    r0, r1 = trim(g), a
    s0, s1 = (), (1,)
    while r1:
        inv = pow(r1[-1], p - 2, p)
        d0, d1 = len(r0) - 1, len(r1) - 1
        if d0 < d1:
            r0, r1, s0, s1 = r1, r0, s1, s0
            continue
        c = r0[-1] * inv % p
        shift = d0 - d1
        shifted = (0,) * shift + tuple(x * c % p for x in r1)
        r0 = sub(r0, shifted, p)
        s_shift = (0,) * shift + tuple(x * c % p for x in s1)
        s0 = sub(s0, s_shift, p)
        if len(r0) - 1 < d1 or not r0:
            r0, r1, s0, s1 = r1, r0, s1, s0
    # r0 is now gcd(a, g) = nonzero constant since g is irreducible
    c_inv = pow(r0[0], p - 2, p)
    return mod_monic(tuple(x * c_inv % p for x in s0), g, p)


def eval_at(a: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def _pow_mod(base: Poly, e: int, g: Poly, p: int) -> Poly:
    out: Poly = (1,)
    while e:
        if e & 1:
            out = mod_monic(mul(out, base, p), g, p)
        e >>= 1
        if e:
            base = mod_monic(mul(base, base, p), g, p)
    return out


# ---------------------------------------------------------------------------
# F_2 fast path: polynomials as int bitmasks.

_SPREAD = tuple(
    sum(1 << (2 * i) for i in range(8) if b >> i & 1) for b in range(256)
)


def _f2_square(a: int) -> int:
    # h(z)^2 = h(z^2) over F_2: interleave a zero bit after every bit
    out = 0
    shift = 0
    while a:
        out |= _SPREAD[a & 0xFF] << shift
        a >>= 8
        shift += 16
    return out


def _f2_mod(a: int, g: int, dg: int) -> int:
    da = a.bit_length() - 1
    while da >= dg:
        a ^= g << (da - dg)
        da = a.bit_length() - 1
    return a


def _f2_gcd(a: int, b: int) -> int:
    while b:
        da, db = a.bit_length(), b.bit_length()
        if da < db:
            a, b = b, a
            da, db = db, da
        a ^= b << (da - db)
    return a


def _f2_is_irreducible(g: int, d: int) -> bool:
    if d == 1:
        return True
    if not g & 1:  # z divides g
        return False
    if bin(g).count("1") % 2 == 0:  # g(1) == 0
        return False
    h = 2  # the polynomial z
    for _ in range(d // 2):
        h = _f2_mod(_f2_square(h), g, d)
        if _f2_gcd(g, h ^ 2) != 1:
            return False
    return True


def _f2_pack(a: Poly) -> int:
    v = 0
    for i, c in enumerate(a):
        if c:
            v |= 1 << i
    return v


# ---------------------------------------------------------------------------


def is_irreducible(g: Poly, p: int) -> bool:
    """Exact irreducibility test for a monic g over F_p.

    g of degree d is irreducible iff it has no irreducible factor of degree
    at most d/2, i.e. gcd(g, z^(p^i) - z) = 1 for every 1 <= i <= d/2.
    """
    g = trim(g)
    d = len(g) - 1
    if d < 1:
        return False
    if g[-1] != 1:
        raise ValueError("irreducibility test expects a monic polynomial")
    if p == 2:
        return _f2_is_irreducible(_f2_pack(g), d)
    if d == 1:
        return True
    if g[0] == 0:
        return False
    if p <= 64:
        for x in range(p):  # cheap linear-factor filter
            if eval_at(g, x, p) == 0:
                return False
    h: Poly = (0, 1)
    z: Poly = (0, 1)
    for _ in range(d // 2):
        h = _pow_mod(h, p, g, p)
        if degree(gcd(sub(h, z, p), g, p)) != 0:
            return False
    return True


def find_irreducible_coeffs(
    p: int, d: int, scan_budget: int = IRREDUCIBLE_SCAN_BUDGET
) -> Poly:
    """First monic irreducible of degree d over F_p in counting order.

    Candidates are z^d + c_{d-1} z^{d-1} + ... + c_0 enumerated with the
    constant term varying fastest (the low part read as a base-p counter),
    so the result is the lexicographically-first coefficient tuple in that
    order.  Deterministic; raises BudgetExceeded after ``scan_budget``
    candidates.
    """
    if d < 1:
        raise ValueError("degree must be at least 1")
    if p == 2:
        for k in range(min(scan_budget, 1 << d)):
            g = (1 << d) | k
            if _f2_is_irreducible(g, d):
                return tuple((g >> i) & 1 for i in range(d + 1))
        raise BudgetExceeded(
            f"no irreducible of degree {d} over F_2 within {scan_budget} candidates"
        )
    total = p**d
    for k in range(min(scan_budget, total)):
        low = []
        kk = k
        for _ in range(d):
            low.append(kk % p)
            kk //= p
        g = tuple(low) + (1,)
        if is_irreducible(g, p):
            return g
    raise BudgetExceeded(
        f"no irreducible of degree {d} over F_{p} within {scan_budget} candidates"
    )
