"""Exact sparse linear algebra over the rationals and prime fields.

Rows are sparse: dicts column -> coefficient internally, SparseVec at the
API boundary. Reduction is incremental with the pivot set kept fully
interreduced, so the result is the (unique) reduced row echelon basis of the
row space and therefore independent of input row order. Input rows are
deduplicated by hashed support+coefficients and sorted sparsest-first before
elimination; that ordering is the main fill-in control at large arity.

There is no floating point in any exact path. The numpy fast path for prime
fields stores residues in float64 but every product and every dot-product
partial sum stays below 2**53, so those floats are exact integers and the
result is identical to the pure-Python path.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FieldError

#: Widest matrix the dense prime-field engine will accept. Keeps the pivot
#: matrix under ~140 MB and every float64 dot product exactly representable.
DENSE_COLUMN_LIMIT = 4096

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for the word-sized moduli used here."""
    if n < 2:
        return False
    for small in _MR_WITNESSES:
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# Field adapters. Values are Fractions over the rationals, ints mod p.

class RationalOps:
    name = "rational"

    @staticmethod
    def convert(x):
        return Fraction(x)

    @staticmethod
    def inv(x):
        return Fraction(1) / x

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def sub(a, b):
        return a - b


class PrimeOps:
    def __init__(self, p: int):
        if not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"prime:{p}"

    def convert(self, x):
        x = Fraction(x)
        den = x.denominator % self.p
        if den == 0:
            raise FieldError(
                f"denominator of {x} is divisible by {self.p}; choose a different prime"
            )
        return x.numerator % self.p * pow(den, self.p - 2, self.p) % self.p

    def inv(self, x):
        return pow(x, self.p - 2, self.p)

    def mul(self, a, b):
        return a * b % self.p

    def sub(self, a, b):
        return (a - b) % self.p


def field_ops(field) -> RationalOps | PrimeOps:
    """Resolve a field spec: "rational" (or None) for Q, an int for GF(p)."""
    if field in (None, "rational", "rationals"):
        return RationalOps()
    if isinstance(field, int):
        return PrimeOps(field)
    if isinstance(field, (RationalOps, PrimeOps)):
        return field
    raise ValueError(f"unrecognized field spec: {field!r}")


# ---------------------------------------------------------------------------
# Public value types.

@dataclass(frozen=True)
class SparseVec:
    """Sparse vector: sorted (column, coefficient) pairs, no zeros stored."""

    dimension: int
    entries: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        cols = [c for c, _ in self.entries]
        if cols != sorted(set(cols)):
            raise ValueError("entry columns must be strictly increasing")
        if any(not 0 <= c < self.dimension for c in cols):
            raise ValueError("entry column out of range")
        if any(v == 0 for _, v in self.entries):
            raise ValueError("zero coefficients must not be stored")

    @classmethod
    def from_dict(cls, dimension: int, data: dict) -> "SparseVec":
        entries = tuple(
            (c, Fraction(v)) for c, v in sorted(data.items()) if v != 0
        )
        return cls(dimension, entries)

    def to_dict(self) -> dict[int, Fraction]:
        return dict(self.entries)

    @property
    def is_zero(self) -> bool:
        return not self.entries


@dataclass(frozen=True)
class SparseMat:
    ncols: int
    rows: tuple[SparseVec, ...]

    def __post_init__(self):
        if any(r.dimension != self.ncols for r in self.rows):
            raise ValueError("row dimension does not match ncols")

    @classmethod
    def from_dicts(cls, ncols: int, dicts: Iterable[dict]) -> "SparseMat":
        return cls(ncols, tuple(SparseVec.from_dict(ncols, d) for d in dicts))

    @property
    def nrows(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class RrefBasis:
    """Rows in reduced row echelon form; unique for a given row space."""

    ncols: int
    rows: tuple[SparseVec, ...]
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class Membership:
    in_span: bool
    coordinates: tuple[Fraction, ...] | None
    residual: SparseVec


# ---------------------------------------------------------------------------
# Core elimination on dict rows.

def dedup_rows(rows: Iterable[dict]) -> list[dict]:
    """Drop empty rows and exact duplicates (hashed support+coefficients)."""
    seen = set()
    out = []
    for row in rows:
        if not row:
            continue
        key = tuple(sorted(row.items()))
        if key not in seen:
            seen.add(key)
            out.append(row)
    return out


def _sorted_for_elimination(rows: list[dict]) -> list[dict]:
    # Sparsest-first keeps pivot rows short; the tuple tie-break makes the
    # processing order, and hence intermediate state, deterministic.
    return sorted(rows, key=lambda r: (len(r), tuple(sorted(r.items()))))


def eliminate(rows: Iterable[dict], ncols: int, field="rational") -> tuple[int, dict[int, dict]]:
    """Reduce rows to a fully interreduced pivot set.

    Returns (rank, pivots) where pivots maps each pivot column to its row
    (leading coefficient 1, zero in every other pivot column).
    """
    ops = field_ops(field)
    rows = [
        {c: ops.convert(v) for c, v in row.items()}
        for row in dedup_rows(rows)
    ]
    rows = [{c: v for c, v in row.items() if v != 0} for row in rows]
    rows = _sorted_for_elimination([r for r in rows if r])

    if (
        isinstance(ops, PrimeOps)
        and ncols <= DENSE_COLUMN_LIMIT
        and len(rows) * ncols > 200_000
    ):
        return _eliminate_dense_modp(rows, ncols, ops.p)

    pivots: dict[int, dict] = {}
    for row in rows:
        row = dict(row)
        while True:
            hit = sorted(c for c in row if c in pivots)
            for c in hit:
                f = row.pop(c)
                for cc, vv in pivots[c].items():
                    if cc == c:
                        continue
                    new = ops.sub(row.get(cc, 0), ops.mul(f, vv))
                    if new:
                        row[cc] = new
                    else:
                        row.pop(cc, None)
            if not row:
                break
            lead = min(row)
            if lead in pivots:
                continue  # subtractions surfaced a fresh pivot-column hit
            inv = ops.inv(row[lead])
            row = {cc: ops.mul(vv, inv) for cc, vv in row.items()}
            for prow in pivots.values():
                f = prow.pop(lead, 0)
                if f:
                    for cc, vv in row.items():
                        if cc == lead:
                            continue
                        new = ops.sub(prow.get(cc, 0), ops.mul(f, vv))
                        if new:
                            prow[cc] = new
                        else:
                            prow.pop(cc, None)
            pivots[lead] = row
            break
    return len(pivots), pivots


def _eliminate_dense_modp(rows: list[dict], ncols: int, p: int) -> tuple[int, dict[int, dict]]:
    import numpy as np

    # Products and dot-product partial sums must stay exact in float64.
    assert ncols * (p - 1) ** 2 < 2**53, "modulus too large for the dense engine"

    piv = np.zeros((ncols, ncols), dtype=np.float64)
    has = np.zeros(ncols, dtype=bool)
    block = 1024
    for start in range(0, len(rows), block):
        chunk = rows[start : start + block]
        B = np.zeros((len(chunk), ncols), dtype=np.float64)
        for i, row in enumerate(chunk):
            cols = np.fromiter(row.keys(), dtype=np.int64, count=len(row))
            vals = np.fromiter(row.values(), dtype=np.float64, count=len(row))
            B[i, cols] = vals
        pcols = np.flatnonzero(has)
        if pcols.size:
            B -= B[:, pcols] @ piv[pcols]
            np.mod(B, p, out=B)
        new_cols: list[int] = []
        for i in range(B.shape[0]):
            row = B[i]
            if new_cols:
                nc = np.array(new_cols, dtype=np.int64)
                coef = row[nc]
                live = coef != 0
                if live.any():
                    row -= coef[live] @ piv[nc[live]]
                    np.mod(row, p, out=row)
            nz = np.flatnonzero(row)
            if nz.size == 0:
                continue
            c = int(nz[0])
            row *= pow(int(row[c]), p - 2, p)
            np.mod(row, p, out=row)
            colvals = piv[:, c]
            mask = colvals != 0
            if mask.any():
                piv[mask] = np.mod(piv[mask] - np.outer(colvals[mask], row), p)
            piv[c] = row
            has[c] = True
            new_cols.append(c)

    pivots = {}
    for c in np.flatnonzero(has):
        row = piv[c]
        nz = np.flatnonzero(row)
        pivots[int(c)] = {int(j): int(row[j]) for j in nz}
    return len(pivots), pivots


def _basis_from_pivots(ncols: int, pivots: dict[int, dict]) -> RrefBasis:
    cols = sorted(pivots)
    rows = tuple(SparseVec.from_dict(ncols, pivots[c]) for c in cols)
    return RrefBasis(ncols, rows, tuple(cols))


# ---------------------------------------------------------------------------
# Public operations.

def rref(mat: SparseMat, field="rational") -> RrefBasis:
    """Reduced row echelon basis of the row space over the requested field."""
    _, pivots = eliminate((r.to_dict() for r in mat.rows), mat.ncols, field)
    return _basis_from_pivots(mat.ncols, pivots)


def rank(mat: SparseMat, field="rational") -> int:
    r, _ = eliminate((r.to_dict() for r in mat.rows), mat.ncols, field)
    return r


def member(v: SparseVec, basis: RrefBasis) -> Membership:
    """Decide span membership; returns coordinates over the basis rows or the residual."""
    if v.dimension != basis.ncols:
        raise ValueError(
            f"dimension mismatch: vector has {v.dimension}, basis has {basis.ncols}"
        )
    residual = v.to_dict()
    coords = []
    for pcol, row in zip(basis.pivots, basis.rows):
        f = residual.get(pcol, Fraction(0))
        coords.append(f)
        if f:
            for cc, vv in row.entries:
                new = residual.get(cc, Fraction(0)) - f * vv
                if new:
                    residual[cc] = new
                else:
                    residual.pop(cc, None)
    res = SparseVec.from_dict(basis.ncols, residual)
    if res.is_zero:
        return Membership(True, tuple(coords), res)
    return Membership(False, None, res)


def annihilator(sub: RrefBasis, form: Sequence[Sequence]) -> RrefBasis:
    """All y with <r, y> = 0 for r in the subspace, under the bilinear form."""
    n = sub.ncols
    if len(form) != n or any(len(row) != n for row in form):
        raise ValueError(f"form must be {n}x{n}")
    form_mat = SparseMat.from_dicts(
        n, ({j: Fraction(v) for j, v in enumerate(row) if v != 0} for row in form)
    )
    if rank(form_mat) != n:
        raise ValueError("the bilinear form is singular")

    constraints = []
    for r in sub.rows:
        row = {}
        for k, coeff in r.entries:
            for j, fv in enumerate(form[k]):
                if fv:
                    row[j] = row.get(j, Fraction(0)) + coeff * Fraction(fv)
        constraints.append({c: v for c, v in row.items() if v})
    _, pivots = eliminate(constraints, n)
    pcols = sorted(pivots)
    free = [c for c in range(n) if c not in pivots]
    null_rows = []
    for f in free:
        row = {f: Fraction(1)}
        for p in pcols:
            coeff = pivots[p].get(f)
            if coeff:
                row[p] = -coeff
        null_rows.append(row)
    _, npiv = eliminate(null_rows, n)
    return _basis_from_pivots(n, npiv)
