"""Built-in operad presets and relations-file loading.

A relations file is JSON of the form {"name": str, "relations": [str, ...]}
with each string in the identity DSL; presets behave exactly as if they were
such files. The leibniz/zinbiel/perm presets use the chirality that makes
the standard dual pairs (prelie-right, perm) and (leibniz, zinbiel) come out
of the pairing annihilator; the test suite locks those facts.
"""
from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path

from .errors import ParseError
from .identities import IdentitySource, RelationSpace, parse_identity, s3_closure

PRESET_RELATIONS: dict[str, tuple[str, ...]] = {
    "novikov-right": (
        "a*(b*c) - (a*b)*c - a*(c*b) + (a*c)*b = 0",
        "a*(b*c) - b*(a*c) = 0",
    ),
    "novikov-left": (
        "a*(b*c) - (a*b)*c - b*(a*c) + (b*a)*c = 0",
        "(a*b)*c - (a*c)*b = 0",
    ),
    "assoc": ("(a*b)*c - a*(b*c) = 0",),
    "prelie-right": ("a*(b*c) - (a*b)*c - a*(c*b) + (a*c)*b = 0",),
    "perm": (
        "(a*b)*c - a*(b*c) = 0",
        "(a*b)*c - (a*c)*b = 0",
    ),
    "leibniz": ("(a*b)*c - (a*c)*b - a*(b*c) = 0",),
    "zinbiel": ("(a*b)*c - a*(b*c) - a*(c*b) = 0",),
    "magma": (),
}

PRESET_NAMES = tuple(PRESET_RELATIONS)


def build_space(name: str, relation_texts) -> RelationSpace:
    gens = [
        parse_identity(IdentitySource(text=t, name=f"{name}[{i}]"))
        for i, t in enumerate(relation_texts)
    ]
    return s3_closure(gens, generator_names=tuple(relation_texts))


@lru_cache(maxsize=None)
def preset_space(name: str) -> RelationSpace:
    if name not in PRESET_RELATIONS:
        known = ", ".join(PRESET_NAMES)
        raise ParseError(f"unknown preset {name!r}; known presets: {known}")
    return build_space(name, PRESET_RELATIONS[name])


def registry() -> dict[str, RelationSpace]:
    """All presets, parsed and closed; building this validates every one."""
    return {name: preset_space(name) for name in PRESET_NAMES}


def load_relations_file(path: str | Path) -> tuple[str, RelationSpace]:
    path = Path(path)
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"relations file {path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "relations" not in payload:
        raise ParseError(
            f'relations file {path} must be {{"name": ..., "relations": [...]}}'
        )
    relations = payload["relations"]
    if not isinstance(relations, list) or not all(isinstance(r, str) for r in relations):
        raise ParseError(f"relations in {path} must be a list of identity strings")
    name = payload.get("name") or path.stem
    return name, build_space(name, relations)
