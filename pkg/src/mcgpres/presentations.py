"""Finitely presented groups and the generic ways of assembling them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .words import (
    Generator,
    Kind,
    Word,
    WordError,
    AlphabetError,
    substitute,
)


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Relation:
    tag: str
    lhs: Word
    rhs: Word = Word()
    # Delta expansions used to build this relation: dicts with keys
    # family, rank, m, exponent (consumed by the homogeneity audit).
    deltas: tuple = ()

    def relator(self) -> Word:
        """The relator lhs * rhs^-1, exactly as written (not reduced)."""
        return self.lhs * self.rhs.inverse()

    def generators(self) -> set:
        return self.lhs.generators() | self.rhs.generators()

    def to_json(self) -> dict:
        out = {"tag": self.tag, "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json()}
        if self.deltas:
            out["deltas"] = [dict(d) for d in self.deltas]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Relation":
        deltas = tuple(dict(d) for d in data.get("deltas", ()))
        return cls(data["tag"], Word.from_json(data["lhs"]),
                   Word.from_json(data.get("rhs", [])), deltas)

    def __str__(self) -> str:
        return f"{self.tag}: {self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relations: tuple = ()
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        gens = tuple(sorted(set(self.generators), key=Generator.sort_key))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relations", tuple(self.relations))

    # -- views -------------------------------------------------------------
    def relators(self, reduced: bool = True) -> list:
        out = []
        for rel in self.relations:
            w = rel.relator()
            out.append(w.reduce() if reduced else w)
        return out

    def relation(self, tag: str) -> Relation:
        for rel in self.relations:
            if rel.tag == tag:
                return rel
        raise KeyError(tag)

    def tags(self) -> list:
        return [rel.tag for rel in self.relations]

    def by_kind(self, kind: Kind) -> list:
        return [g for g in self.generators if g.kind is Kind(kind)]

    def check_alphabet(self) -> None:
        alphabet = set(self.generators)
        foreign = set()
        for rel in self.relations:
            foreign |= rel.generators() - alphabet
        if foreign:
            raise AlphabetError(foreign)

    def with_relations(self, extra: Iterable[Relation], **meta) -> "Presentation":
        return Presentation(self.generators, self.relations + tuple(extra),
                            {**self.meta, **meta})

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "meta": self.meta,
            "generators": [str(g) for g in self.generators],
            "relations": [rel.to_json() for rel in self.relations],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        try:
            gens = [Generator.parse(s) for s in data["generators"]]
            rels = [Relation.from_json(r) for r in data["relations"]]
        except (KeyError, TypeError, WordError) as exc:
            raise PresentationError(f"malformed presentation: {exc}") from exc
        return cls(tuple(gens), tuple(rels), dict(data.get("meta", {})))

    @classmethod
    def loads(cls, text: str) -> "Presentation":
        return cls.from_json(json.loads(text))


def relation(tag: str, lhs: Word, rhs: Word | None = None, deltas: Sequence[dict] = ()) -> Relation:
    return Relation(tag, lhs, rhs if rhs is not None else Word(), tuple(deltas))


# ---------------------------------------------------------------------------
# Short exact sequences


def compose_extension(
    K: Presentation,
    H: Presentation,
    lift: Mapping[str, Word],
    conj: Mapping[tuple, Word],
    meta: dict | None = None,
) -> Presentation:
    """Presentation of G from 1 -> K -> G -> H -> 1.

    ``lift[tag]`` is w_r, a word over K equal in G to the lifted H-relator r.
    ``conj[(x, y)]`` is v(x, y), the K-word equal to x y x^-1 for x in H, y in K.
    Generators of H are reused as names for their chosen lifts.
    """
    clash = set(K.generators) & set(H.generators)
    if clash:
        raise PresentationError(
            "kernel and quotient alphabets overlap: " + ", ".join(sorted(map(str, clash))))
    missing_lift = [rel.tag for rel in H.relations if rel.tag not in lift]
    if missing_lift:
        raise PresentationError(f"no lift given for relations: {missing_lift}")
    missing_conj = [(str(x), str(y)) for x in H.generators for y in K.generators
                    if (x, y) not in conj]
    if missing_conj:
        raise PresentationError(f"no conjugation word for pairs: {missing_conj}")

    kernel = set(K.generators)
    rels = list(K.relations)
    for rel in H.relations:
        w = lift[rel.tag]
        if not w.generators() <= kernel:
            raise AlphabetError(w.generators() - kernel)
        # r~ w_r^-1: lift and kernel word on the same side
        rels.append(Relation(f"{rel.tag}.lift", rel.relator() * w.inverse(),
                             deltas=rel.deltas))
    for x in H.generators:
        for y in K.generators:
            v = conj[(x, y)]
            if not v.generators() <= kernel:
                raise AlphabetError(v.generators() - kernel)
            lhs = Word.of(x, y, (x, -1))
            rels.append(Relation(f"conj.{x}.{y}", lhs, v))
    return Presentation(K.generators + H.generators, tuple(rels), dict(meta or {}))


# ---------------------------------------------------------------------------
# Graphs of groups


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    generators: tuple
    image0: Mapping[Generator, Word]
    image1: Mapping[Generator, Word]
    name: str = ""


@dataclass(frozen=True)
class GraphOfGroups:
    vertices: tuple
    edges: tuple
    spanning_tree: frozenset  # indices into edges

    def validate(self) -> None:
        nv = len(self.vertices)
        for k, e in enumerate(self.edges):
            for end in (e.source, e.target):
                if not 0 <= end < nv:
                    raise PresentationError(f"edge {k} has dangling endpoint {end}")
            for side, image, v in ((0, e.image0, e.source), (1, e.image1, e.target)):
                alphabet = set(self.vertices[v].generators)
                for x in e.generators:
                    if x not in image:
                        raise PresentationError(f"edge {k}: image{side} undefined on {x}")
                    foreign = image[x].generators() - alphabet
                    if foreign:
                        raise PresentationError(
                            f"edge {k}: image{side}({x}) leaves vertex {v}: "
                            + ", ".join(sorted(map(str, foreign))))
        tree = sorted(self.spanning_tree)
        for k in tree:
            if not 0 <= k < len(self.edges):
                raise PresentationError(f"tree edge {k} does not exist")
        if len(tree) != nv - 1:
            raise PresentationError("spanning tree must have exactly |V|-1 edges")
        parent = list(range(nv))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for k in tree:
            a, b = find(self.edges[k].source), find(self.edges[k].target)
            if a == b:
                raise PresentationError("spanning tree contains a cycle")
            parent[a] = b


def _edge_label(e: Edge, k: int) -> str:
    return e.name or f"e{k}"


def graph_of_groups_pi1(G: GraphOfGroups, meta: dict | None = None) -> Presentation:
    """Fundamental group with tree stable letters already set to 1."""
    G.validate()
    gens: list = []
    rels: list = []
    for h, v in enumerate(G.vertices):
        gens.extend(v.generators)
        for rel in v.relations:
            rels.append(Relation(f"V{h}.{rel.tag}", rel.lhs, rel.rhs, rel.deltas))
    for k, e in enumerate(G.edges):
        label = _edge_label(e, k)
        letter = None
        if k not in G.spanning_tree:
            letter = Generator(Kind.STABLE, label.replace(".", "") or f"e{k}")
            gens.append(letter)
        for x in e.generators:
            lhs = e.image0[x]
            if letter is not None:
                lhs = Word.of(letter) * lhs * Word.of((letter, -1))
            rels.append(Relation(f"{label}.{x}", lhs, e.image1[x]))
    return Presentation(tuple(gens), tuple(rels), dict(meta or {}))


def brown_quotient(p: Presentation) -> Presentation:
    """Kill every stable letter."""
    stable_letters = [g for g in p.generators if g.kind is Kind.STABLE]
    if not stable_letters:
        return p
    kill = {g: Word() for g in stable_letters}
    keep = {g: Word.of(g) for g in p.generators if g.kind is not Kind.STABLE}
    mapping = {**keep, **kill}
    rels = tuple(
        Relation(r.tag, substitute(r.lhs, mapping), substitute(r.rhs, mapping), r.deltas)
        for r in p.relations
    )
    gens = tuple(keep)
    return Presentation(gens, rels, {**p.meta, "brown_quotient": True})


def tietze_add_consequence(p: Presentation, w: Word, proof_hint: str | None = None) -> Presentation:
    """Append ``w = 1`` as a relation tagged ``tietze``; derivability is the caller's claim."""
    foreign = w.generators() - set(p.generators)
    if foreign:
        raise AlphabetError(foreign)
    tag = "tietze"
    taken = set(p.tags())
    k = 1
    while tag in taken:
        k += 1
        tag = f"tietze{k}"
    meta = dict(p.meta)
    if proof_hint:
        meta.setdefault("tietze_hints", [])
        meta["tietze_hints"] = list(meta["tietze_hints"]) + [proof_hint]
    return Presentation(p.generators, p.relations + (Relation(tag, w),), meta)


def relabel(p: Presentation, prefix: str) -> list:
    """Relations of ``p`` with tags prefixed, used when gluing blocks."""
    return [Relation(f"{prefix}{r.tag}", r.lhs, r.rhs, r.deltas) for r in p.relations]
