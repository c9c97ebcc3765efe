"""Exact dense linear algebra over any coefficient domain.

Matrices are immutable, row-major, and always dense: sparsity is a measured
property, never a storage format.  Rank and solve use ordinary Gaussian
elimination with exact division and a deterministic pivot rule (first nonzero
entry in column order), so traces are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import (
    KIND_INTEGER,
    KIND_PRIME,
    RATIONAL_FIELD,
    FieldDescriptor,
    decode_element,
    descriptor_from_json,
    descriptor_to_json,
    encode_element,
    ops_for,
)

__all__ = [
    "ExactMatrix",
    "SparsityReport",
    "from_rows",
    "identity",
    "zeros",
    "matmul",
    "transpose",
    "rank",
    "solve",
    "inverse",
    "kronecker",
    "sparsity",
    "vandermonde",
    "lift_to_rational",
    "matrix_to_json",
    "matrix_from_json",
]


@dataclass(frozen=True)
class ExactMatrix:
    field: FieldDescriptor
    rows: int
    cols: int
    entries: tuple  # row-major

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if not isinstance(self.entries, tuple):
            object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )
        ops = ops_for(self.field)
        for idx, x in enumerate(self.entries):
            if not ops.conforms(x):
                raise ValueError(
                    f"entry {idx} does not conform to {self.field!r}: {x!r}"
                )

    def at(self, i: int, j: int):
        """Entry in row i, column j (0-based)."""
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j :: self.cols]

    def row_lists(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]


@dataclass(frozen=True)
class SparsityReport:
    total: int
    row_counts: tuple[int, ...]
    col_counts: tuple[int, ...]


def from_rows(field: FieldDescriptor, rows, coerce: bool = True) -> ExactMatrix:
    """Build a matrix from nested sequences; ints are coerced into the field."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        raise ValueError("matrix needs at least one row and one column")
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged rows")
    ops = ops_for(field)
    flat = []
    for r in rows:
        for x in r:
            if coerce and isinstance(x, int) and not isinstance(x, bool):
                x = ops.from_int(x)
            flat.append(x)
    return ExactMatrix(field, len(rows), ncols, tuple(flat))


def identity(field: FieldDescriptor, n: int) -> ExactMatrix:
    ops = ops_for(field)
    flat = [ops.zero] * (n * n)
    for i in range(n):
        flat[i * n + i] = ops.one
    return ExactMatrix(field, n, n, tuple(flat))


def zeros(field: FieldDescriptor, rows: int, cols: int) -> ExactMatrix:
    ops = ops_for(field)
    return ExactMatrix(field, rows, cols, (ops.zero,) * (rows * cols))


def _require_same_field(A: ExactMatrix, B: ExactMatrix):
    if A.field != B.field:
        raise ValueError(f"field mismatch: {A.field!r} vs {B.field!r}")


def matmul(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    _require_same_field(A, B)
    if A.cols != B.rows:
        raise ValueError(f"dimension mismatch: {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    ops = ops_for(A.field)
    add, mul, is_zero, zero = ops.add, ops.mul, ops.is_zero, ops.zero
    b_rows = [B.row(k) for k in range(B.rows)]
    out = []
    for i in range(A.rows):
        a_row = A.row(i)
        acc = [zero] * B.cols
        for k, a in enumerate(a_row):
            if is_zero(a):
                continue
            b_row = b_rows[k]
            for j in range(B.cols):
                b = b_row[j]
                if not is_zero(b):
                    acc[j] = add(acc[j], mul(a, b))
        out.extend(acc)
    return ExactMatrix(A.field, A.rows, B.cols, tuple(out))


def transpose(A: ExactMatrix) -> ExactMatrix:
    flat = []
    for j in range(A.cols):
        flat.extend(A.col(j))
    return ExactMatrix(A.field, A.cols, A.rows, tuple(flat))


def _require_division(field: FieldDescriptor):
    if not ops_for(field).has_division:
        raise ValueError(
            "elimination needs exact division; lift integer-ring matrices to rationals"
        )


def _rank_rows(field: FieldDescriptor, rows: list) -> int:
    """Rank of a list of row lists; consumed destructively."""
    _require_division(field)
    if not rows:
        return 0
    ncols = len(rows[0])
    if field.kind == KIND_PRIME:
        return _rank_rows_mod_p(rows, ncols, field.p)
    ops = ops_for(field)
    sub, mul, div, is_zero = ops.sub, ops.mul, ops.div, ops.is_zero
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pivot_row = rows[r]
        pv = pivot_row[c]
        for i in range(r + 1, len(rows)):
            x = rows[i][c]
            if is_zero(x):
                continue
            f = div(x, pv)
            row = rows[i]
            for j in range(c, ncols):
                row[j] = sub(row[j], mul(f, pivot_row[j]))
        r += 1
        if r == len(rows):
            break
    return r


def _rank_rows_mod_p(rows: list, ncols: int, p: int) -> int:
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pivot_row = rows[r]
        inv = pow(pivot_row[c], p - 2, p)
        for i in range(r + 1, len(rows)):
            x = rows[i][c]
            if x:
                f = x * inv % p
                row = rows[i]
                for j in range(c, ncols):
                    row[j] = (row[j] - f * pivot_row[j]) % p
        r += 1
        if r == len(rows):
            break
    return r


def rank(A: ExactMatrix) -> int:
    return _rank_rows(A.field, A.row_lists())


def solve(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """Exact X with A X = B for square invertible A (Gauss-Jordan)."""
    _require_same_field(A, B)
    _require_division(A.field)
    if A.rows != A.cols:
        raise ValueError("solve needs a square coefficient matrix")
    if A.rows != B.rows:
        raise ValueError("right-hand side has the wrong number of rows")
    ops = ops_for(A.field)
    sub, mul, div, is_zero = ops.sub, ops.mul, ops.div, ops.is_zero
    n, m = A.rows, B.cols
    aug = [list(A.row(i)) + list(B.row(i)) for i in range(n)]
    width = n + m
    for c in range(n):
        piv = next((i for i in range(c, n) if not is_zero(aug[i][c])), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        pivot_row = aug[c]
        pv = pivot_row[c]
        for j in range(c, width):
            pivot_row[j] = div(pivot_row[j], pv)
        for i in range(n):
            if i == c:
                continue
            x = aug[i][c]
            if is_zero(x):
                continue
            row = aug[i]
            for j in range(c, width):
                row[j] = sub(row[j], mul(x, pivot_row[j]))
    flat = []
    for i in range(n):
        flat.extend(aug[i][n:])
    return ExactMatrix(A.field, n, m, tuple(flat))


def inverse(A: ExactMatrix) -> ExactMatrix:
    return solve(A, identity(A.field, A.rows))


def kronecker(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    _require_same_field(A, B)
    ops = ops_for(A.field)
    mul = ops.mul
    rows, cols = A.rows * B.rows, A.cols * B.cols
    flat = [ops.zero] * (rows * cols)
    for i in range(A.rows):
        for j in range(A.cols):
            a = A.at(i, j)
            if ops.is_zero(a):
                continue
            base = (i * B.rows) * cols + j * B.cols
            for k in range(B.rows):
                off = base + k * cols
                for l in range(B.cols):
                    flat[off + l] = mul(a, B.at(k, l))
    return ExactMatrix(A.field, rows, cols, tuple(flat))


def sparsity(A: ExactMatrix) -> SparsityReport:
    ops = ops_for(A.field)
    row_counts = [0] * A.rows
    col_counts = [0] * A.cols
    for i in range(A.rows):
        base = i * A.cols
        for j in range(A.cols):
            if not ops.is_zero(A.entries[base + j]):
                row_counts[i] += 1
                col_counts[j] += 1
    return SparsityReport(sum(row_counts), tuple(row_counts), tuple(col_counts))


def vandermonde(field: FieldDescriptor, nodes, k: int) -> ExactMatrix:
    """len(nodes) x k matrix whose row i is (1, x_i, x_i^2, ..., x_i^(k-1))."""
    nodes = list(nodes)
    if not nodes:
        raise ValueError("vandermonde needs at least one node")
    if k < 1:
        raise ValueError("vandermonde needs k >= 1")
    ops = ops_for(field)
    flat = []
    for x in nodes:
        acc = ops.one
        flat.append(acc)
        for _ in range(k - 1):
            acc = ops.mul(acc, x)
            flat.append(acc)
    return ExactMatrix(field, len(nodes), k, tuple(flat))


def lift_to_rational(A: ExactMatrix) -> ExactMatrix:
    """Explicitly view an integer-ring matrix over the rationals."""
    if A.field.kind != KIND_INTEGER:
        raise ValueError("lift_to_rational applies to integer-ring matrices")
    return ExactMatrix(RATIONAL_FIELD, A.rows, A.cols, A.entries)


# ---------------------------------------------------------------------------
# Wire format: {"field": <descriptor>, "rows": R, "cols": C,
#               "entries": [<element encodings, row-major>]}.
# Unknown keys are ignored so provenance can ride along.


def matrix_to_json(A: ExactMatrix) -> dict:
    return {
        "field": descriptor_to_json(A.field),
        "rows": A.rows,
        "cols": A.cols,
        "entries": [encode_element(A.field, x) for x in A.entries],
    }


def matrix_from_json(obj, check_irreducible: bool = True) -> ExactMatrix:
    if not isinstance(obj, dict):
        raise ValueError("matrix JSON must be an object")
    for key in ("field", "rows", "cols", "entries"):
        if key not in obj:
            raise ValueError(f"matrix JSON is missing {key!r}")
    field = descriptor_from_json(obj["field"], check_irreducible=check_irreducible)
    rows, cols = obj["rows"], obj["cols"]
    for name, v in (("rows", rows), ("cols", cols)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise ValueError(f"{name} must be a positive integer")
    raw_entries = obj["entries"]
    if not isinstance(raw_entries, list):
        raise ValueError("entries must be an array")
    if len(raw_entries) != rows * cols:
        raise ValueError(
            f"expected {rows * cols} entries, got {len(raw_entries)}"
        )
    entries = []
    for idx, raw in enumerate(raw_entries):
        try:
            entries.append(decode_element(field, raw))
        except ValueError as exc:
            raise ValueError(f"entry {idx}: {exc}") from exc
    return ExactMatrix(field, rows, cols, tuple(entries))
