"""Planar binary tree monomials with multilinear leaf labels.

A monomial of arity n is a planar binary tree whose n leaves carry the labels
1..n, each exactly once; every internal node is one application of the single
non-symmetric binary operation, written ``*``. Trees are stored as nested
pairs: a leaf is a plain int label, an internal node is a 2-tuple
``(left, right)``.

Canonical order. The n! * Catalan(n-1) monomials of a given arity are indexed
shape-major: shapes sort by left-subtree leaf count descending, ties broken
recursively on the left subtree then the right; within a shape, monomials
follow the lexicographic rank of their leaf-label sequence read left to
right. For arity 3 this puts the six ((x*y)*z) words at indices 0..5 and the
six (x*(y*z)) words at 6..11.

Grafting convention. ``graft(outer, i, inner)`` replaces the leaf labeled i
of ``outer`` by ``inner`` and renumbers so the result is again multilinear:
inner labels keep their relative order and occupy the contiguous block
i .. i+arity(inner)-1, outer labels below i are unchanged, outer labels above
i shift up by arity(inner)-1. This is the unique order-preserving renumbering
of the sequence "outer labels below i, inner labels, outer labels above i"
and is relied on by the ideal generation code, so it must not change.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Sequence

from .errors import CapacityError

#: Largest arity the enumeration and indexing tables will serve by default.
DEFAULT_MAX_ARITY = 7

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def monomial_count(arity: int) -> int:
    """How many multilinear monomials exist at the given arity."""
    return math.factorial(arity) * catalan(arity - 1)


def check_arity(arity: int, max_arity: int | None = None) -> None:
    """Reject non-positive arities and arities beyond the configured cap."""
    cap = DEFAULT_MAX_ARITY if max_arity is None else max_arity
    if arity < 1:
        raise ValueError(f"arity must be positive, got {arity}")
    if arity > cap:
        raise CapacityError(
            f"arity {arity} exceeds the configured maximum {cap} "
            f"({monomial_count(cap)} monomials at the cap); "
            "pass a larger max_arity to go higher",
            limit=cap,
        )


# ---------------------------------------------------------------------------
# Raw node helpers. A node is an int leaf label or a (left, right) pair.
# These assume well-formed input; TreeMonomial validates at the boundary.

def _validate(node) -> None:
    if isinstance(node, int):
        return
    if not (isinstance(node, tuple) and len(node) == 2):
        raise ValueError(f"malformed tree node: {node!r}")
    _validate(node[0])
    _validate(node[1])


def _leaves(node) -> tuple[int, ...]:
    if isinstance(node, int):
        return (node,)
    return _leaves(node[0]) + _leaves(node[1])


def _shape(node):
    if isinstance(node, int):
        return None
    return (_shape(node[0]), _shape(node[1]))


def _relabel(node, image: dict[int, int]):
    if isinstance(node, int):
        return image[node]
    return (_relabel(node[0], image), _relabel(node[1], image))


def _mirror(node):
    if isinstance(node, int):
        return node
    return (_mirror(node[1]), _mirror(node[0]))


def _shift(node, offset: int):
    if isinstance(node, int):
        return node + offset
    return (_shift(node[0], offset), _shift(node[1], offset))


def _graft(node, slot: int, inner, gap: int):
    if isinstance(node, int):
        if node == slot:
            return _shift(inner, slot - 1)
        return node if node < slot else node + gap
    return (_graft(node[0], slot, inner, gap), _graft(node[1], slot, inner, gap))


def _attach(shape, labels: Iterator[int]):
    if shape is None:
        return next(labels)
    return (_attach(shape[0], labels), _attach(shape[1], labels))


def _render(node) -> str:
    if isinstance(node, int):
        return _LETTERS[node - 1]
    return f"({_render(node[0])}*{_render(node[1])})"


@lru_cache(maxsize=None)
def shapes(arity: int) -> tuple:
    """All tree shapes of the given arity in canonical order; a leaf is None."""
    if arity == 1:
        return (None,)
    out = []
    for left_size in range(arity - 1, 0, -1):
        for left in shapes(left_size):
            for right in shapes(arity - left_size):
                out.append((left, right))
    return tuple(out)


@lru_cache(maxsize=None)
def _shape_ranks(arity: int) -> dict:
    return {shape: rank for rank, shape in enumerate(shapes(arity))}


def _perm_rank(seq: Sequence[int]) -> int:
    rank = 0
    remaining = sorted(seq)
    for position, value in enumerate(seq):
        i = remaining.index(value)
        rank += i * math.factorial(len(seq) - position - 1)
        remaining.pop(i)
    return rank


def _perm_unrank(arity: int, rank: int) -> tuple[int, ...]:
    remaining = list(range(1, arity + 1))
    out = []
    for position in range(arity):
        f = math.factorial(arity - position - 1)
        i, rank = divmod(rank, f)
        out.append(remaining.pop(i))
    return tuple(out)


def _index_of_node(node, arity: int) -> int:
    return _shape_ranks(arity)[_shape(node)] * math.factorial(arity) + _perm_rank(
        _leaves(node)
    )


def _node_at_index(arity: int, total: int) -> tuple | int:
    shape_rank, label_rank = divmod(total, math.factorial(arity))
    labels = iter(_perm_unrank(arity, label_rank))
    return _attach(shapes(arity)[shape_rank], labels)


@lru_cache(maxsize=8)
def _nodes(arity: int) -> tuple:
    """All arity-n nodes in canonical index order (internal cache)."""
    out = []
    for shape in shapes(arity):
        for labels in permutations(range(1, arity + 1)):
            out.append(_attach(shape, iter(labels)))
    return tuple(out)


# ---------------------------------------------------------------------------
# Public surface.

@dataclass(frozen=True)
class TreeMonomial:
    """A multilinear magma word; immutable and hashable."""

    node: int | tuple

    def __post_init__(self):
        _validate(self.node)
        labels = _leaves(self.node)
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise ValueError(
                f"leaf labels must be exactly 1..{len(labels)}, got {labels}"
            )

    @property
    def arity(self) -> int:
        return len(_leaves(self.node))

    @property
    def leaf_labels(self) -> tuple[int, ...]:
        return _leaves(self.node)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class MonomialIndex:
    """Shape-major position of a monomial within its arity block."""

    arity: int
    shape_rank: int
    label_rank: int

    @property
    def total(self) -> int:
        return self.shape_rank * math.factorial(self.arity) + self.label_rank

    @classmethod
    def from_total(cls, arity: int, total: int) -> "MonomialIndex":
        if not 0 <= total < monomial_count(arity):
            raise ValueError(f"index {total} out of range for arity {arity}")
        shape_rank, label_rank = divmod(total, math.factorial(arity))
        return cls(arity, shape_rank, label_rank)


def enumerate_multilinear(
    arity: int, max_arity: int | None = None
) -> list[TreeMonomial]:
    """All multilinear monomials of the given arity, in canonical index order."""
    check_arity(arity, max_arity)
    return [TreeMonomial(node) for node in _nodes(arity)]


def iter_multilinear(arity: int, max_arity: int | None = None) -> Iterator[TreeMonomial]:
    """Streaming variant of enumerate_multilinear, same order."""
    check_arity(arity, max_arity)
    for shape in shapes(arity):
        for labels in permutations(range(1, arity + 1)):
            yield TreeMonomial(_attach(shape, iter(labels)))


def index_of(monomial: TreeMonomial, max_arity: int | None = None) -> MonomialIndex:
    """Canonical index of a monomial; ``index_of(m).total`` is the column number."""
    arity = monomial.arity
    check_arity(arity, max_arity)
    return MonomialIndex(
        arity,
        _shape_ranks(arity)[_shape(monomial.node)],
        _perm_rank(monomial.leaf_labels),
    )


def monomial_at(arity: int, total: int, max_arity: int | None = None) -> TreeMonomial:
    """Inverse of index_of: the monomial whose total index is ``total``."""
    check_arity(arity, max_arity)
    MonomialIndex.from_total(arity, total)
    return TreeMonomial(_node_at_index(arity, total))


def graft(outer: TreeMonomial, slot: int, inner: TreeMonomial) -> TreeMonomial:
    """Operadic partial composition: plug ``inner`` into leaf ``slot`` of ``outer``."""
    if not 1 <= slot <= outer.arity:
        raise ValueError(f"slot {slot} is not a leaf label of an arity-{outer.arity} monomial")
    gap = inner.arity - 1
    return TreeMonomial(_graft(outer.node, slot, inner.node, gap))


def relabel(monomial: TreeMonomial, sigma: Sequence[int]) -> TreeMonomial:
    """Apply a permutation to the leaf labels: label i becomes sigma[i-1]."""
    arity = monomial.arity
    if len(sigma) != arity or sorted(sigma) != list(range(1, arity + 1)):
        raise ValueError(
            f"sigma must be a permutation of 1..{arity}, got {tuple(sigma)}"
        )
    image = {i + 1: s for i, s in enumerate(sigma)}
    return TreeMonomial(_relabel(monomial.node, image))


def mirror(monomial: TreeMonomial) -> TreeMonomial:
    """Swap left and right subtrees at every internal node; an involution."""
    return TreeMonomial(_mirror(monomial.node))


def render(monomial: TreeMonomial) -> str:
    """Fully parenthesized text form, labels as letters: ((a*b)*c)."""
    return _render(monomial.node)
