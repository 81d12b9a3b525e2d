"""Brute-force reference computations, written before the engine.

Everything here favors the dumbest correct formulation over speed: trees over
a label set are generated by splitting the set every possible way, matrices
are dense lists of Fractions, elimination is textbook Gauss-Jordan, and the
operadic ideal is spanned by literal substitution into contexts. Nothing in
this module imports the package under test; its numbers are what the engine
has to reproduce at small arity.

Trees are nested tuples: a leaf is an int label, an internal node is a pair
(left, right). Identity generators are lists of (coefficient, tree) terms
over the labels 1, 2, 3.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product

HOLE = 0  # placeholder leaf marking the insertion point of a context tree


def trees_over(labels):
    """Every planar binary tree whose leaves carry the given labels once each."""
    labels = tuple(labels)
    if len(labels) == 1:
        return [labels[0]]
    out = []
    for size in range(1, len(labels)):
        for left_labels in combinations(labels, size):
            rest = tuple(x for x in labels if x not in left_labels)
            for left in trees_over(left_labels):
                for right in trees_over(rest):
                    out.append((left, right))
    return out


def tree_key(t):
    if isinstance(t, int):
        return (0, t)
    return (1, tree_key(t[0]), tree_key(t[1]))


def columns_for(n):
    """A fixed (but arbitrary) ordering of the arity-n tree monomials."""
    return sorted(trees_over(range(1, n + 1)), key=tree_key)


def leaf_sequence(t):
    if isinstance(t, int):
        return (t,)
    return leaf_sequence(t[0]) + leaf_sequence(t[1])


def substitute(t, mapping):
    """Replace leaf labels by trees (or new labels) per the mapping."""
    if isinstance(t, int):
        return mapping.get(t, t)
    return (substitute(t[0], mapping), substitute(t[1], mapping))


def perm_parity(seq):
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def vector(combo, cols):
    index = {t: i for i, t in enumerate(cols)}
    v = [Fraction(0)] * len(cols)
    for coeff, tree in combo:
        v[index[tree]] += Fraction(coeff)
    return v


def rref(rows):
    """Full Gauss-Jordan reduction; returns (canonical rows, pivot columns)."""
    rows = [list(map(Fraction, r)) for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        hit = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if hit is None:
            continue
        rows[r], rows[hit] = rows[hit], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows):
    """Forward elimination only; cheaper than rref when only the rank matters."""
    rows = [list(r) for r in {tuple(r) for r in rows} if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rk = 0
    for c in range(ncols):
        hit = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if hit is None:
            continue
        rows[rk], rows[hit] = rows[hit], rows[rk]
        base = rows[rk]
        fbase = base[c]
        for i in range(rk + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / fbase
                rows[i] = [a - f * b for a, b in zip(rows[i], base)]
        rk += 1
        if rk == len(rows):
            break
    return rk


def span_equal(rows_a, rows_b):
    return rref(rows_a)[0] == rref(rows_b)[0]


def member(vec, rows):
    """Is vec in the span of rows? Reduces against the rref of the rows."""
    basis, pivots = rref(rows)
    v = list(map(Fraction, vec))
    for row, p in zip(basis, pivots):
        f = v[p]
        if f:
            v = [a - f * b for a, b in zip(v, row)]
    return not any(v)


def s3_span(gens):
    """Canonical basis of the S3-closed span of arity-3 generators."""
    cols = columns_for(3)
    rows = []
    for g in gens:
        for sigma in permutations((1, 2, 3)):
            image = {1: sigma[0], 2: sigma[1], 3: sigma[2]}
            rows.append(vector([(c, substitute(t, image)) for c, t in g], cols))
    return rref(rows)[0]


def pairing_diagonal():
    """Signed diagonal of the degree-3 pairing, aligned with columns_for(3)."""
    diag = []
    for t in columns_for(3):
        left_comb = isinstance(t[0], tuple)
        s = perm_parity(leaf_sequence(t))
        diag.append(Fraction(s if left_comb else -s))
    return diag


def annihilator(rows):
    """Orthogonal complement of the span under the signed diagonal pairing."""
    diag = pairing_diagonal()
    constraints = [[r[k] * diag[k] for k in range(12)] for r in rows]
    basis, pivots = rref(constraints)
    free = [c for c in range(12) if c not in pivots]
    null = []
    for f in free:
        v = [Fraction(0)] * 12
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -basis[i][f]
        null.append(v)
    return rref(null)[0]


def ideal_rows(gens, n):
    """Arity-n span of the operadic ideal, by literal substitution.

    Every element with one relation occurrence is a context tree W (with a
    HOLE leaf) wrapped around g(T1, T2, T3), where the Ti are trees over
    disjoint label sets. Enumerating ordered set partitions of the labels
    covers all relabelings, so no symmetric-group closure is needed here.
    """
    cols = columns_for(n)
    rows = set()
    for assign in product(range(4), repeat=n):
        parts = ([], [], [], [])
        for label, a in zip(range(1, n + 1), assign):
            parts[a].append(label)
        if not (parts[0] and parts[1] and parts[2]):
            continue
        context_labels = tuple(sorted(parts[3] + [HOLE]))
        arg_trees = [trees_over(tuple(p)) for p in parts[:3]]
        for context in trees_over(context_labels):
            for t1, t2, t3 in product(*arg_trees):
                plug = {1: t1, 2: t2, 3: t3}
                for g in gens:
                    combo = [
                        (c, substitute(context, {HOLE: substitute(m, plug)}))
                        for c, m in g
                    ]
                    rows.add(tuple(vector(combo, cols)))
    return [list(r) for r in rows]


def ideal_rank(gens, n):
    if not gens:
        return 0
    return rank(ideal_rows(gens, n))


def dims(gens, max_arity):
    out = [1, 2][:max_arity]
    for k in range(3, max_arity + 1):
        out.append(len(columns_for(k)) - ideal_rank(gens, k))
    return out


# -- identity generators over the labels 1, 2, 3 ----------------------------

RIGHT_SYMMETRIC = [
    (1, (1, (2, 3))), (-1, ((1, 2), 3)), (-1, (1, (3, 2))), (1, ((1, 3), 2)),
]
LEFT_SYMMETRIC = [
    (1, (1, (2, 3))), (-1, ((1, 2), 3)), (-1, (2, (1, 3))), (1, ((2, 1), 3)),
]
LEFT_COMMUTATIVE = [(1, (1, (2, 3))), (-1, (2, (1, 3)))]
RIGHT_COMMUTATIVE = [(1, ((1, 2), 3)), (-1, ((1, 3), 2))]
ASSOCIATIVE = [(1, ((1, 2), 3)), (-1, (1, (2, 3)))]

# Leibniz / Zinbiel candidates, one per chirality; the pairing calibration
# decides which chiralities form a dual pair with the conventions above.
LEIBNIZ_RIGHT = [(1, ((1, 2), 3)), (-1, ((1, 3), 2)), (-1, (1, (2, 3)))]
LEIBNIZ_LEFT = [(1, (1, (2, 3))), (-1, ((1, 2), 3)), (-1, (2, (1, 3)))]
ZINBIEL_RIGHT = [(1, ((1, 2), 3)), (-1, (1, (2, 3))), (-1, (1, (3, 2)))]
ZINBIEL_LEFT = [(1, (1, (2, 3))), (-1, ((1, 2), 3)), (-1, ((2, 1), 3))]

NOVIKOV_RIGHT = [RIGHT_SYMMETRIC, LEFT_COMMUTATIVE]
NOVIKOV_LEFT = [LEFT_SYMMETRIC, RIGHT_COMMUTATIVE]
PERM_RIGHT = [ASSOCIATIVE, RIGHT_COMMUTATIVE]
PERM_LEFT = [ASSOCIATIVE, LEFT_COMMUTATIVE]
