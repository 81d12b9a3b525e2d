"""The degree-3 identity DSL and S3-stable relation spaces.

Grammar (whitespace between tokens is free):

    identity := expr ( '=' expr )? END
    expr     := sign? term ( sign term )*        sign := '+' | '-'
    term     := number? monomial                 number := INT ( '/' INT )?
    monomial := primary ( '*' primary )?
    primary  := LETTER | '(' monomial ')'

Identifiers are single lowercase letters. Products are binary; every product
except the outermost must be parenthesized (redundant parentheses are
accepted). A number prefixes its monomial by juxtaposition, as in
``2 a*(b*c)`` or ``1/2 (a*b)*c``. When ``= RHS`` is present the right side is
moved to the left, so every identity denotes LHS - RHS.

Each term must be multilinear in the same three distinct letters. Letters map
to leaf labels in alphabetical order of the letters occurring in the
identity, so in ``a*(b*c) - b*(a*c) = 0`` the letter a is leaf 1, b is leaf 2
and c is leaf 3, and ``b*(a*c)`` denotes the word with leaf 2 at the root.
This mapping makes rendering and parsing mutually inverse on canonical forms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from . import trees
from .errors import ParseError
from .linalg import RrefBasis, SparseMat, SparseVec, eliminate, member, rank

DEGREE3_DIMENSION = 12

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class IdentitySource:
    text: str
    name: str | None = None


@dataclass(frozen=True)
class LinComb:
    """Sparse rational combination of same-arity monomials, by canonical index."""

    arity: int
    terms: tuple[tuple[int, Fraction], ...]

    @classmethod
    def from_dict(cls, arity: int, data: dict) -> "LinComb":
        return cls(
            arity, tuple((i, Fraction(c)) for i, c in sorted(data.items()) if c != 0)
        )

    def to_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def vector(self) -> SparseVec:
        return SparseVec(trees.monomial_count(self.arity), self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, coeff in self.terms:
            mono = trees.render(trees.monomial_at(self.arity, i))
            mag = abs(coeff)
            body = mono if mag == 1 else f"{mag} {mono}"
            if not parts:
                parts.append(body if coeff > 0 else f"- {body}")
            else:
                parts.append(f"{'+' if coeff > 0 else '-'} {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render()


# ---------------------------------------------------------------------------
# Lexer / parser.

_TOKEN_CHARS = {"*", "+", "-", "(", ")", "=", "/"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_CHARS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha() and ch.islower():
            tokens.append(("LETTER", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", position=i)
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self):
        lhs = self.expr()
        is_equation = self.peek()[0] == "="
        if is_equation:
            self.take("=")
            for coeff, tree in self.expr():
                lhs.append((-coeff, tree))
        self.take("END")
        return lhs, is_equation

    def expr(self):
        terms = [self.term(self.sign(required=False))]
        while self.peek()[0] in ("+", "-"):
            terms.append(self.term(self.sign(required=True)))
        return terms

    def sign(self, required: bool) -> int:
        kind = self.peek()[0]
        if kind in ("+", "-"):
            self.take(kind)
            return -1 if kind == "-" else 1
        if required:
            raise ParseError("expected + or -", self.peek()[2])
        return 1

    def term(self, sign: int):
        coeff = Fraction(sign)
        if self.peek()[0] == "INT":
            num = int(self.take("INT")[1])
            if self.peek()[0] == "/":
                self.take("/")
                tok = self.take("INT")
                den = int(tok[1])
                if den == 0:
                    raise ParseError("zero denominator", tok[2])
                coeff *= Fraction(num, den)
            else:
                coeff *= num
        return coeff, self.monomial()

    def monomial(self):
        left = self.primary()
        if self.peek()[0] == "*":
            self.take("*")
            return (left, self.primary())
        return left

    def primary(self):
        kind, value, pos = self.peek()
        if kind == "LETTER":
            self.take("LETTER")
            return value
        if kind == "(":
            self.take("(")
            inner = self.monomial()
            self.take(")")
            return inner
        raise ParseError(f"expected a letter or '(', found {value or 'end of input'!r}", pos)


def _letters_of(tree) -> tuple[str, ...]:
    if isinstance(tree, str):
        return (tree,)
    return _letters_of(tree[0]) + _letters_of(tree[1])


def _to_node(tree, labels: dict[str, int]):
    if isinstance(tree, str):
        return labels[tree]
    return (_to_node(tree[0], labels), _to_node(tree[1], labels))


def parse_expression(text: str) -> tuple[LinComb, bool]:
    """Parse a degree-3 expression or equation into a LinComb.

    Returns (LHS - RHS as a combination over the 12 canonical monomials,
    whether an '=' was present).
    """
    if not text or not text.strip():
        raise ParseError("empty input")
    terms, is_equation = _Parser(text).parse()

    letter_sets = []
    for _, tree in terms:
        seq = _letters_of(tree)
        if len(set(seq)) != len(seq):
            raise ParseError(
                f"term is not multilinear: letter repeated in {''.join(sorted(seq))}"
            )
        letter_sets.append(frozenset(seq))
    if any(s != letter_sets[0] for s in letter_sets):
        raise ParseError("all terms must use the same variable set")
    letters = sorted(letter_sets[0])
    if len(letters) != 3:
        raise ParseError(
            f"identities must be multilinear of degree 3, got {len(letters)} variables"
        )
    labels = {letter: i + 1 for i, letter in enumerate(letters)}

    data: dict[int, Fraction] = {}
    for coeff, tree in terms:
        idx = trees._index_of_node(_to_node(tree, labels), 3)
        data[idx] = data.get(idx, Fraction(0)) + coeff
    return LinComb.from_dict(3, data), is_equation


def parse_identity(source: IdentitySource | str) -> LinComb:
    """Parse one defining identity; the result is LHS - RHS."""
    text = source.text if isinstance(source, IdentitySource) else source
    combo, _ = parse_expression(text)
    return combo


# ---------------------------------------------------------------------------
# S3-stable relation spaces on the 12-dimensional degree-3 component.

@lru_cache(maxsize=None)
def _s3_index_maps() -> tuple[tuple[int, ...], ...]:
    maps = []
    nodes = trees._nodes(3)
    for sigma in permutations((1, 2, 3)):
        image = {1: sigma[0], 2: sigma[1], 3: sigma[2]}
        maps.append(
            tuple(trees._index_of_node(trees._relabel(n, image), 3) for n in nodes)
        )
    return tuple(maps)


@lru_cache(maxsize=None)
def _mirror_index_map() -> tuple[int, ...]:
    return tuple(
        trees._index_of_node(trees._mirror(n), 3) for n in trees._nodes(3)
    )


@dataclass(frozen=True, eq=False)
class RelationSpace:
    """An S3-stable subspace of the degree-3 component, in RREF.

    Equality is span equality: two spaces compare equal when their reduced
    bases match, regardless of how they were presented.
    """

    basis: RrefBasis
    generator_names: tuple[str, ...] = ()
    closure_enlarged: bool = False

    def __post_init__(self):
        if self.basis.ncols != DEGREE3_DIMENSION:
            raise ValueError("relation spaces live on the 12 degree-3 monomials")

    @property
    def arity(self) -> int:
        return 3

    @property
    def dim(self) -> int:
        return self.basis.rank

    def contains(self, combo: LinComb | SparseVec) -> bool:
        vec = combo.vector() if isinstance(combo, LinComb) else combo
        return member(vec, self.basis).in_span

    def basis_combos(self) -> tuple[LinComb, ...]:
        return tuple(LinComb(3, row.entries) for row in self.basis.rows)

    def generators_dsl(self) -> tuple[str, ...]:
        return tuple(c.render() for c in self.basis_combos())

    def __eq__(self, other) -> bool:
        if not isinstance(other, RelationSpace):
            return NotImplemented
        return self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)


def s3_closure(gens, generator_names: tuple[str, ...] = ()) -> RelationSpace:
    """Smallest S3-stable subspace containing the generators, as a RelationSpace."""
    gen_dicts = []
    for g in gens:
        if isinstance(g, LinComb):
            if g.arity != 3:
                raise ValueError("relation generators must have arity 3")
            gen_dicts.append(g.to_dict())
        elif isinstance(g, SparseVec):
            gen_dicts.append(g.to_dict())
        else:
            gen_dicts.append(dict(g))

    raw_rank, _ = eliminate(gen_dicts, DEGREE3_DIMENSION)
    closed = []
    for d in gen_dicts:
        for index_map in _s3_index_maps():
            closed.append({index_map[i]: c for i, c in d.items()})
    closed_rank, pivots = eliminate(closed, DEGREE3_DIMENSION)
    cols = sorted(pivots)
    basis = RrefBasis(
        DEGREE3_DIMENSION,
        tuple(SparseVec.from_dict(DEGREE3_DIMENSION, pivots[c]) for c in cols),
        tuple(cols),
    )
    return RelationSpace(
        basis=basis,
        generator_names=tuple(generator_names),
        closure_enlarged=closed_rank > raw_rank,
    )


def opposite_relations(space: RelationSpace) -> RelationSpace:
    """Image of the space under the opposite multiplication (mirror); involutive."""
    mmap = _mirror_index_map()
    rows = [
        {mmap[i]: c for i, c in row.entries} for row in space.basis.rows
    ]
    return s3_closure(
        rows, generator_names=tuple(f"opposite({n})" for n in space.generator_names)
    )
