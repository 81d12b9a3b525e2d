"""Arity-n components of the operadic ideal generated by degree-3 relations.

Two generation methods are provided. The recursive method (the default)
builds each component from the reduced bases of the lower ones: every row is
a single graft of an ideal basis element with an arbitrary monomial, with the
inserted block's label values sent to every possible subset of 1..n by an
order-preserving shuffle. Within-block label orders come from enumerating all
labeled monomials on the free side, and label orders inside the basis element
are absorbed by the symmetric-group stability of the lower component, so this
enumeration spans the full component without post-hoc relabel closure.

The direct method wraps a relation row in an explicit context (outer shape,
marked slot, three argument shapes) and then applies every bijective labeling
of the composite. It generates many more redundant rows and exists as the
easily audited cross-check of the recursive method.

Dimensions of the quotient operad follow as dim P(n) = count(n) - rank I(n).
The field strategy "auto" uses rational arithmetic through arity 4 and
double-prime rank agreement from arity 5 on; a disagreement aborts rather
than report an uncertified number.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from . import trees
from .errors import CapacityError, CrossCheckError
from .identities import RelationSpace
from .linalg import SparseMat, dedup_rows, eliminate, field_ops

#: dims() refuses to go past this arity unless explicitly overridden.
DEFAULT_DIMS_CAP = 6

#: Primes used by the "auto" field strategy at arity >= 5. Both exceed 10**6
#: so a denominator collision would require a coefficient explosion the
#: rational stages cannot produce.
AUTO_PRIMES = (1_000_003, 1_000_033)

AUTO_RATIONAL_LIMIT = 4


@dataclass(frozen=True)
class DimEntry:
    arity: int
    dim: int
    method: str
    field: str


@dataclass(frozen=True)
class DimTable:
    """Per-arity dimensions of an operad's multilinear components."""

    name: str
    entries: tuple[DimEntry, ...]

    @property
    def dims(self) -> list[int]:
        return [e.dim for e in self.entries]

    def dim(self, arity: int) -> int:
        for e in self.entries:
            if e.arity == arity:
                return e.dim
        raise KeyError(f"no dimension recorded for arity {arity}")


# ---------------------------------------------------------------------------
# Row assembly helpers. Rows are dicts column -> coefficient; coefficients
# are copied unchanged from the source basis rows, so the same code serves
# rational and prime-field chains.

def _shuffle_image(n: int, block_start: int, block_len: int, target: tuple[int, ...]) -> dict[int, int]:
    """Order-preserving relabeling sending the block onto the target subset."""
    image = {}
    rest_targets = iter(sorted(set(range(1, n + 1)) - set(target)))
    for v in range(1, n + 1):
        if block_start <= v < block_start + block_len:
            image[v] = target[v - block_start]
        else:
            image[v] = next(rest_targets)
    return image


def _recursive_rows(bases: dict[int, dict[int, dict]], n: int) -> list[dict]:
    """One-graft spanning rows for I(n) from stored lower bases."""
    rows: list[dict] = []
    fact = __import__("math").factorial
    index_of = trees._index_of_node
    for m, basis in sorted(bases.items()):
        k = n - m + 1
        if k < 2:
            continue
        free_nodes = trees._nodes(k)
        ideal_nodes = trees._nodes(m)
        basis_rows = [basis[c] for c in sorted(basis)]

        # ideal element outer, arbitrary monomial inner
        subsets_k = list(combinations(range(1, n + 1), k))
        for brow in basis_rows:
            cols = sorted(brow)
            for slot in range(1, m + 1):
                for y in free_nodes:
                    grafted = [
                        (trees._graft(ideal_nodes[c], slot, y, k - 1), brow[c])
                        for c in cols
                    ]
                    for target in subsets_k:
                        image = _shuffle_image(n, slot, k, target)
                        rows.append(
                            {
                                index_of(trees._relabel(node, image), n): coeff
                                for node, coeff in grafted
                            }
                        )

        # arbitrary monomial outer, ideal element inner
        subsets_m = list(combinations(range(1, n + 1), m))
        for brow in basis_rows:
            cols = sorted(brow)
            for y in free_nodes:
                for slot in range(1, k + 1):
                    grafted = [
                        (trees._graft(y, slot, ideal_nodes[c], m - 1), brow[c])
                        for c in cols
                    ]
                    for target in subsets_m:
                        image = _shuffle_image(n, slot, m, target)
                        rows.append(
                            {
                                index_of(trees._relabel(node, image), n): coeff
                                for node, coeff in grafted
                            }
                        )
    return dedup_rows(rows)


def _compositions3(total: int):
    for a in range(1, total - 1):
        for b in range(1, total - a):
            yield a, b, total - a - b


def _direct_rows(relation_rows: list[dict], n: int) -> list[dict]:
    """Context-wrapped relation instances under every bijective labeling."""
    index_of = trees._index_of_node
    rel_nodes = trees._nodes(3)
    rows: list[dict] = []
    for k in range(1, n - 1):
        inner_total = n - k + 1
        for w_shape in trees.shapes(k):
            w_node = trees._attach(w_shape, iter(range(1, k + 1)))
            for slot in range(1, k + 1):
                for m1, m2, m3 in _compositions3(inner_total):
                    for s1 in trees.shapes(m1):
                        t1 = trees._attach(s1, iter(range(1, m1 + 1)))
                        for s2 in trees.shapes(m2):
                            t2 = trees._attach(s2, iter(range(1, m2 + 1)))
                            for s3 in trees.shapes(m3):
                                t3 = trees._attach(s3, iter(range(1, m3 + 1)))
                                for rrow in relation_rows:
                                    assembled = []
                                    for c in sorted(rrow):
                                        node = rel_nodes[c]
                                        node = trees._graft(node, 3, t3, m3 - 1)
                                        node = trees._graft(node, 2, t2, m2 - 1)
                                        node = trees._graft(node, 1, t1, m1 - 1)
                                        node = trees._graft(
                                            w_node, slot, node, inner_total - 1
                                        )
                                        assembled.append((node, rrow[c]))
                                    for sigma in permutations(range(1, n + 1)):
                                        image = dict(zip(range(1, n + 1), sigma))
                                        rows.append(
                                            {
                                                index_of(
                                                    trees._relabel(node, image), n
                                                ): coeff
                                                for node, coeff in assembled
                                            }
                                        )
    return dedup_rows(rows)


# ---------------------------------------------------------------------------
# Ideal chains: per-field stacks of reduced bases, extended on demand.

class _IdealChain:
    def __init__(self, space: RelationSpace, field):
        self.field = field
        ops = field_ops(field)
        base3 = {}
        for pcol, row in zip(space.basis.pivots, space.basis.rows):
            base3[pcol] = {c: ops.convert(v) for c, v in row.entries}
        self.bases: dict[int, dict[int, dict]] = {3: base3}
        self.ranks: dict[int, int] = {3: len(base3)}

    def extend(self, arity: int) -> None:
        for m in range(4, arity + 1):
            if m in self.bases:
                continue
            rows = _recursive_rows(self.bases, m)
            rank, pivots = eliminate(rows, trees.monomial_count(m), self.field)
            self.bases[m] = pivots
            self.ranks[m] = rank

    def rank(self, arity: int) -> int:
        self.extend(arity)
        return self.ranks[arity]


def consequences(
    space: RelationSpace, arity: int, method: str = "recursive"
) -> SparseMat:
    """Spanning rows of I(arity) over the rationals, deduplicated, unreduced."""
    if arity < 3:
        raise ValueError("the ideal starts at arity 3")
    if method == "direct":
        trees.check_arity(arity)
        rel = [dict(row.entries) for row in space.basis.rows]
        rows = _direct_rows(rel, arity) if rel else []
    elif method == "recursive":
        # Rational lower bases are only kept through arity 4; past arity 5
        # use dims(), which runs prime chains with their own bases.
        if arity > AUTO_RATIONAL_LIMIT + 1:
            raise CapacityError(
                f"recursive consequences over the rationals stop at arity "
                f"{AUTO_RATIONAL_LIMIT + 1}; use dims() for higher arities",
                limit=AUTO_RATIONAL_LIMIT + 1,
            )
        if space.dim == 0:
            rows = []
        else:
            chain = _IdealChain(space, "rational")
            chain.extend(min(arity - 1, AUTO_RATIONAL_LIMIT))
            if arity == 3:
                rows = [dict(row.entries) for row in space.basis.rows]
            else:
                rows = _recursive_rows(chain.bases, arity)
    else:
        raise ValueError(f"unknown method {method!r}")
    return SparseMat.from_dicts(trees.monomial_count(arity), rows)


def _rank_direct(space: RelationSpace, arity: int, field) -> int:
    mat = consequences(space, arity, "direct")
    r, _ = eliminate((row.to_dict() for row in mat.rows), mat.ncols, field)
    return r


def _resolve_fields(field, arity: int):
    """Fields to compute with at this arity; more than one means cross-check."""
    if field == "auto":
        if arity <= AUTO_RATIONAL_LIMIT:
            return ["rational"]
        return list(AUTO_PRIMES)
    if field in ("rational", None):
        return ["rational"]
    if isinstance(field, int):
        return [field]
    raise ValueError(f"unrecognized field spec: {field!r}")


def _field_label(fields, ranks=None) -> str:
    if len(fields) == 1:
        f = fields[0]
        return "rational" if f == "rational" else f"prime:{f}"
    return "+".join(f"prime:{f}" for f in fields) + " (agree)"


def dims(
    space: RelationSpace,
    max_arity: int = 5,
    method: str = "recursive",
    field="auto",
    name: str = "operad",
    arity_cap: int | None = None,
) -> DimTable:
    """Dimensions of the quotient operad's components through max_arity."""
    cap = DEFAULT_DIMS_CAP if arity_cap is None else arity_cap
    if max_arity > cap:
        raise CapacityError(
            f"max arity {max_arity} exceeds the dims cap {cap}; "
            "raise the cap explicitly for an experimental run",
            limit=cap,
        )
    if max_arity < 1:
        raise ValueError("max_arity must be at least 1")
    if method not in ("recursive", "direct"):
        raise ValueError(f"unknown method {method!r}")

    entries = [DimEntry(1, 1, "generators", "-"), DimEntry(2, 2, "generators", "-")]
    entries = entries[:max_arity]

    chains: dict = {}

    def chain_for(fld) -> _IdealChain:
        if fld not in chains:
            chains[fld] = _IdealChain(space, fld)
        return chains[fld]

    for k in range(3, max_arity + 1):
        total = trees.monomial_count(k)
        if space.dim == 0:
            entries.append(DimEntry(k, total, method, "-"))
            continue
        fields = _resolve_fields(field, k)
        ranks = []
        for fld in fields:
            if method == "direct":
                ranks.append(_rank_direct(space, k, fld))
            else:
                ranks.append(chain_for(fld).rank(k))
        if len(set(ranks)) != 1:
            detail = ", ".join(
                f"{_field_label([f])}: rank {r}" for f, r in zip(fields, ranks)
            )
            raise CrossCheckError(
                f"rank disagreement at arity {k} for {name} ({detail}); "
                "rerun with --field prime:P for a fresh modulus"
            )
        entries.append(DimEntry(k, total - ranks[0], method, _field_label(fields)))

    return DimTable(name=name, entries=tuple(entries))
