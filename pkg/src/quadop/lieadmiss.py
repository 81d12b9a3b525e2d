"""Koszul duals by the Lie-admissibility route.

For a quadratic operad with relations R, put the free algebra A = F/R on one
side of a tensor product A (x) U and the commutator-style bracket

    [x (x) p, y (x) q] = (x*y) (x) (p.q) - (y*x) (x) (q.p)

on it. Expanding the Jacobi identity on three generators a(x)u, b(x)v, c(x)w
in the cyclic order (a,u) -> (b,v) -> (c,w) gives twelve signed tensor terms.
Reducing every first-tensor-factor word to its normal form modulo R and
collecting, per surviving quotient basis element, the signed second-factor
words yields the identities U must satisfy; their S3-closed span is the dual
relation space. This route shares no code with the pairing annihilator in
quadop.pairing, which is what makes agreement of the two a real cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import trees
from .identities import DEGREE3_DIMENSION, LinComb, RelationSpace, parse_expression, s3_closure
from .linalg import SparseVec


@dataclass(frozen=True)
class QuotientBasis:
    """Monomial representatives of the degree-3 component modulo a relation space.

    The representatives are the non-pivot columns of the relation RREF under
    the canonical column order; every monomial then has a unique normal form
    over them.
    """

    space: RelationSpace
    representatives: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.representatives)


def quotient_basis(space: RelationSpace) -> QuotientBasis:
    reps = tuple(
        c for c in range(DEGREE3_DIMENSION) if c not in space.basis.pivots
    )
    return QuotientBasis(space=space, representatives=reps)


def normal_form(combo: LinComb | SparseVec, space: RelationSpace) -> LinComb:
    """Unique representative of the class of ``combo`` modulo the relations."""
    data = dict(combo.to_dict() if isinstance(combo, SparseVec) else combo.to_dict())
    for pcol, row in zip(space.basis.pivots, space.basis.rows):
        f = data.get(pcol, Fraction(0))
        if f:
            for cc, vv in row.entries:
                new = data.get(cc, Fraction(0)) - f * vv
                if new:
                    data[cc] = new
                else:
                    data.pop(cc, None)
    return LinComb.from_dict(3, data)


@dataclass(frozen=True)
class Jacobiator:
    """Signed expansion of [[a(x)u, b(x)v], c(x)w] + cyclic.

    Each triple is (first-factor monomial index, sign, second-factor monomial
    index); the tensor structure of the bracket forces the two indices to
    agree, and the test fixtures assert the full expansion verbatim.
    """

    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if len(self.triples) != 12:
            raise ValueError("the degree-3 expansion has exactly 12 terms")


def _bracket(left, right):
    """Bracket two sums of signed tensor pairs of tree nodes."""
    out = []
    for sa, (xa, pa) in left:
        for sb, (xb, pb) in right:
            s = sa * sb
            out.append((s, ((xa, xb), (pa, pb))))
            out.append((-s, ((xb, xa), (pb, pa))))
    return out


@lru_cache(maxsize=1)
def jacobiator() -> Jacobiator:
    """Expand the double brackets programmatically; never hand-transcribed."""
    generators = [[(1, (i, i))] for i in (1, 2, 3)]
    triples = []
    for shift in range(3):
        x, y, z = (generators[(i + shift) % 3] for i in range(3))
        for sign, (a_node, u_node) in _bracket(_bracket(x, y), z):
            triples.append(
                (
                    trees._index_of_node(a_node, 3),
                    sign,
                    trees._index_of_node(u_node, 3),
                )
            )
    return Jacobiator(tuple(triples))


def jacobiator_conditions(space: RelationSpace) -> RelationSpace:
    """Dual relations extracted from the vanishing of the Jacobi expansion."""
    qb = quotient_basis(space)
    rep_pos = {rep: i for i, rep in enumerate(qb.representatives)}

    collected: dict[int, dict[int, Fraction]] = {rep: {} for rep in qb.representatives}
    for a_idx, sign, u_idx in jacobiator().triples:
        nf = normal_form(LinComb.from_dict(3, {a_idx: Fraction(1)}), space)
        for rep, coeff in nf.terms:
            bucket = collected[rep]
            bucket[u_idx] = bucket.get(u_idx, Fraction(0)) + sign * coeff

    rows = [row for row in collected.values() if any(row.values())]
    return s3_closure(rows, generator_names=("jacobi-conditions",))


# -- Novikov fixtures --------------------------------------------------------
# The six identities the second tensor factor must satisfy when the first is
# a free right-Novikov algebra, and the six degree-3 normal-form equations of
# that algebra. Both lists are exercised by the acceptance suite as
# basis-independent membership facts.

NOVIKOV_DUAL_CONDITIONS = (
    "(u*v)*w - (u*w)*v = 0",
    "- (v*w)*u - u*(v*w) + v*(u*w) + (u*w)*v = 0",
    "- w*(u*v) + (w*v)*u + u*(w*v) - (u*w)*v = 0",
    "- (v*u)*w + (v*w)*u = 0",
    "w*(v*u) + (v*w)*u - (w*v)*u - v*(w*u) = 0",
    "- (w*v)*u + (w*u)*v = 0",
)

NOVIKOV_REWRITES = (
    "b*(a*c) = a*(b*c)",
    "c*(a*b) = a*(c*b)",
    "c*(b*a) = b*(c*a)",
    "(a*c)*b = (a*b)*c + a*(c*b) - a*(b*c)",
    "(b*c)*a = - a*(b*c) + b*(c*a) + (b*a)*c",
    "(c*b)*a = (c*a)*b - a*(c*b) + b*(c*a)",
)


@dataclass(frozen=True)
class ConditionCheck:
    condition: str
    in_span: bool


@dataclass(frozen=True)
class ConditionReport:
    checks: tuple[ConditionCheck, ...]
    extracted_matches_dual: bool

    @property
    def passed(self) -> bool:
        return self.extracted_matches_dual and all(c.in_span for c in self.checks)

    def failures(self) -> tuple[str, ...]:
        return tuple(c.condition for c in self.checks if not c.in_span)


def check_novikov_conditions(
    space: RelationSpace, expected_dual: RelationSpace
) -> ConditionReport:
    """Verify the six classical dual conditions against an expected dual span."""
    checks = []
    for cond in NOVIKOV_DUAL_CONDITIONS:
        vec, _ = parse_expression(cond)
        checks.append(ConditionCheck(cond, expected_dual.contains(vec)))
    extracted = jacobiator_conditions(space)
    return ConditionReport(
        checks=tuple(checks),
        extracted_matches_dual=extracted == expected_dual,
    )
