"""The signed Ginzburg-Kapranov pairing and Koszul duals as annihilators.

The pairing is diagonal in the canonical degree-3 basis: a left-comb word
(x*y)*z pairs with itself to the sign of its leaf permutation, a right-comb
word x*(y*z) to minus that sign, and distinct words pair to zero. The sign
split between the two shapes is a convention; this one is validated by two
calibration facts the test suite pins down, self-duality of the associative
relations and the exchange of the two Novikov chiralities.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import trees
from .identities import DEGREE3_DIMENSION, LinComb, RelationSpace, s3_closure
from .linalg import SparseVec, annihilator


@dataclass(frozen=True)
class PairingForm:
    """Nonsingular diagonal form on the 12 degree-3 monomials."""

    diagonal: tuple[Fraction, ...]

    def matrix(self) -> list[list[Fraction]]:
        n = len(self.diagonal)
        return [
            [self.diagonal[i] if i == j else Fraction(0) for j in range(n)]
            for i in range(n)
        ]

    def pair(self, v: LinComb | SparseVec, w: LinComb | SparseVec) -> Fraction:
        dv = v.to_dict()
        dw = w.to_dict()
        return sum(
            (self.diagonal[k] * c * dw[k] for k, c in dv.items() if k in dw),
            Fraction(0),
        )


def _leaf_parity(node) -> int:
    seq = trees._leaves(node)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@lru_cache(maxsize=1)
def gk_pairing() -> PairingForm:
    """The signed diagonal pairing in canonical coordinates."""
    diag = []
    for node in trees._nodes(3):
        left_comb = isinstance(node[0], tuple)
        sign = _leaf_parity(node)
        diag.append(Fraction(sign if left_comb else -sign))
    return PairingForm(tuple(diag))


def koszul_dual(space: RelationSpace) -> RelationSpace:
    """Relations of the Koszul dual: the annihilator under the pairing."""
    ann = annihilator(space.basis, gk_pairing().matrix())
    rows = [dict(r.entries) for r in ann.rows]
    dual = s3_closure(rows, generator_names=("pairing-annihilator",))
    assert dual.dim == DEGREE3_DIMENSION - space.dim
    return dual
