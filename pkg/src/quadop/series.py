"""Truncated signed exponential generating series and the Koszulity test.

The series attached to a dimension table is H(t) = sum (-1)^n a_n t^n / n!
with a_n the arity-n dimension; the constant term is identically zero. For a
Koszul operad H_P(H_{P!}(t)) = t, so any nonzero coefficient of the
composition beyond t^1 certifies non-Koszulity. The converse fails, so a
clean composition is only ever reported as inconclusive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .ideal import DimTable, dims
from .identities import RelationSpace
from .pairing import koszul_dual


@dataclass(frozen=True)
class TruncSeries:
    """Coefficients of t^1 .. t^N, exact rationals, zero constant term."""

    coeffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def coefficient(self, n: int) -> Fraction:
        if not 1 <= n <= self.order:
            raise ValueError(f"coefficient t^{n} not computed (order {self.order})")
        return self.coeffs[n - 1]

    def __str__(self) -> str:
        parts = []
        for n, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            mag = abs(c)
            term = f"t^{n}" if n > 1 else "t"
            if mag != 1:
                term = f"{mag}*{term}"
            parts.append(f"- {term}" if c < 0 else (f"+ {term}" if parts else term))
        return " ".join(parts) if parts else "0"


def hilbert_series(table: DimTable) -> TruncSeries:
    """Signed exponential generating series of a contiguous dimension table."""
    arities = [e.arity for e in table.entries]
    if arities != list(range(1, len(arities) + 1)):
        raise ValueError(f"dimension table has gaps: arities {arities}")
    coeffs = tuple(
        Fraction((-1) ** e.arity * e.dim, math.factorial(e.arity))
        for e in table.entries
    )
    return TruncSeries(coeffs)


def _multiply(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * order
    for i, ai in enumerate(a, start=1):
        if ai == 0 or i > order:
            continue
        for j, bj in enumerate(b, start=1):
            if i + j > order:
                break
            out[i + j - 1] += ai * bj
    return out


def compose(f: TruncSeries, g: TruncSeries, order: int | None = None) -> TruncSeries:
    """Coefficients of f(g(t)) through the requested order, exact."""
    if order is None:
        order = min(f.order, g.order)
    if f.order < order or g.order < order:
        raise ValueError(
            f"need both series to order {order}, have {f.order} and {g.order}"
        )
    g_coeffs = list(g.coeffs[:order])
    power = g_coeffs[:]  # g^k, truncated
    out = [Fraction(0)] * order
    for k in range(1, order + 1):
        fk = f.coeffs[k - 1]
        if fk:
            for n in range(order):
                out[n] += fk * power[n]
        if k < order:
            power = _multiply(power, g_coeffs, order)
    return TruncSeries(tuple(out))


@dataclass(frozen=True)
class KoszulVerdict:
    """Outcome of the series obstruction test.

    ``obstructed`` means the composition H_P(H_{P!}(t)) differs from t at or
    below the checked order, which rules Koszulity out. A clean run proves
    nothing and is reported as inconclusive, never as Koszul.
    """

    obstructed: bool
    order_checked: int
    obstruction_order: int | None
    obstruction_coefficient: Fraction | None
    table: DimTable
    dual_table: DimTable

    @property
    def verdict(self) -> str:
        return "not-koszul" if self.obstructed else "inconclusive"


def koszul_obstruction(
    space: RelationSpace,
    order: int = 5,
    method: str = "recursive",
    field="auto",
    name: str = "operad",
    arity_cap: int | None = None,
) -> KoszulVerdict:
    """Compose the series of an operad with its dual's and look for a defect."""
    table = dims(space, order, method=method, field=field, name=name, arity_cap=arity_cap)
    dual_table = dims(
        koszul_dual(space),
        order,
        method=method,
        field=field,
        name=f"dual({name})",
        arity_cap=arity_cap,
    )
    composition = compose(hilbert_series(table), hilbert_series(dual_table), order)
    defect = list(composition.coeffs)
    defect[0] -= 1
    for n, c in enumerate(defect, start=1):
        if c != 0:
            return KoszulVerdict(True, order, n, c, table, dual_table)
    return KoszulVerdict(False, order, None, None, table, dual_table)
