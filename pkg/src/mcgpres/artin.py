"""Artin groups from labeled graphs and words for powers of the fundamental element."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from .presentations import Presentation, Relation
from .words import Generator, Word, abstract, alternating, product


class ArtinError(ValueError):
    pass


class UnrecognizedShapeError(ArtinError):
    pass


class InexpressibleError(ArtinError):
    pass


class Mode(str, Enum):
    PAPER = "paper_literal"
    CORRECTED = "homogeneity_corrected"

    @classmethod
    def coerce(cls, value) -> "Mode":
        if isinstance(value, Mode):
            return value
        aliases = {"paper": cls.PAPER, "corrected": cls.CORRECTED}
        return aliases.get(value) or cls(value)


FAMILIES = ("A", "B", "D", "E6", "E7")


def positive_root_count(family: str, rank: int) -> int:
    if family == "A":
        return rank * (rank + 1) // 2
    if family == "B":
        return rank * rank
    if family == "D":
        return rank * (rank - 1)
    if family == "E6":
        return 36
    if family == "E7":
        return 63
    raise ArtinError(f"unknown family {family!r}")


def type_name(family: str, rank: int) -> str:
    return family if family.startswith("E") else f"{family}{rank}"


def parse_type(text: str) -> tuple:
    m = re.fullmatch(r"\s*([ABD])(\d+)\s*|\s*(E6|E7)\s*", text)
    if not m:
        raise ArtinError(f"unknown type {text!r}")
    if m.group(3):
        return m.group(3), int(m.group(3)[1])
    return m.group(1), int(m.group(2))


@dataclass(frozen=True)
class ArtinGraph:
    vertices: tuple
    edges: tuple = ()  # (a, b, m) with m >= 3

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(set(verts)) != len(verts):
            raise ArtinError("duplicate vertices")
        seen = set()
        edges = []
        for a, b, m in self.edges:
            if a == b:
                raise ArtinError(f"loop at {a}")
            if a not in verts or b not in verts:
                raise ArtinError(f"edge {a}-{b} leaves the vertex set")
            if m < 3:
                raise ArtinError(f"edge label {m} < 3 on {a}-{b}")
            key = frozenset((a, b))
            if key in seen:
                raise ArtinError(f"multiple edges on {a}-{b}")
            seen.add(key)
            edges.append((a, b, int(m)))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(edges))

    def label(self, a: Generator, b: Generator) -> int:
        for x, y, m in self.edges:
            if {x, y} == {a, b}:
                return m
        return 2

    def labels(self) -> dict:
        return {frozenset((a, b)): m for a, b, m in self.edges}

    def to_json(self) -> dict:
        return {"vertices": [str(v) for v in self.vertices],
                "edges": [[str(a), str(b), m] for a, b, m in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "ArtinGraph":
        return cls(tuple(Generator.parse(v) for v in data["vertices"]),
                   tuple((Generator.parse(a), Generator.parse(b), m)
                         for a, b, m in data["edges"]))


def standard_generators(rank: int, series: str = "x") -> list:
    return [abstract(series, i) for i in range(1, rank + 1)]


def diagram(family: str, rank: int, gens: Sequence[Generator] | None = None) -> ArtinGraph:
    """The Dynkin-type diagram with generators x_1..x_l in the usual labeling."""
    x = list(gens) if gens is not None else standard_generators(rank)
    if len(x) != rank:
        raise ArtinError("generator count does not match rank")
    edges = []
    if family == "A" and rank >= 1:
        edges = [(x[i], x[i + 1], 3) for i in range(rank - 1)]
    elif family == "B" and rank >= 2:
        edges = [(x[0], x[1], 4)] + [(x[i], x[i + 1], 3) for i in range(1, rank - 1)]
    elif family == "D" and rank >= 4:
        edges = [(x[0], x[2], 3), (x[1], x[2], 3)]
        edges += [(x[i], x[i + 1], 3) for i in range(2, rank - 1)]
    elif family == "E6" and rank == 6:
        edges = [(x[i], x[i + 1], 3) for i in range(4)] + [(x[2], x[5], 3)]
    elif family == "E7" and rank == 7:
        edges = [(x[i], x[i + 1], 3) for i in range(5)] + [(x[3], x[6], 3)]
    else:
        raise ArtinError(f"no diagram {family}{rank}")
    return ArtinGraph(tuple(x), tuple(edges))


def builtin_graph(name: str) -> ArtinGraph:
    """``A5``, ``B3``, ``D4``, ``E6``, ``E7``, ``Psi(g,n)`` or ``Gamma(g,n)``."""
    m = re.fullmatch(r"\s*(Psi|Gamma)\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*", name)
    if m:
        from . import mcg

        params = mcg.MapoParams(int(m.group(2)), int(m.group(3)))
        return mcg.psi_graph(params) if m.group(1) == "Psi" else mcg.gamma_graph(params)
    return diagram(*parse_type(name))


def artin_presentation(g: ArtinGraph, meta: dict | None = None) -> Presentation:
    rels = []
    for a, b in combinations(g.vertices, 2):
        m = g.label(a, b)
        rels.append(Relation(f"A_{{{a},{b}}}", alternating(a, b, m), alternating(b, a, m)))
    return Presentation(g.vertices, tuple(rels), dict(meta or {}))


def coxeter_presentation(g: ArtinGraph) -> Presentation:
    """Artin presentation plus squares of all generators."""
    p = artin_presentation(g)
    squares = [Relation(f"sq_{{{v}}}", Word.of((v, 2))) for v in g.vertices]
    return p.with_relations(squares)


# ---------------------------------------------------------------------------
# Classification


@dataclass(frozen=True)
class ParabolicType:
    family: str
    rank: int
    ordered_generators: tuple  # x_1..x_l of the family diagram
    written: tuple = field(default=(), compare=False)  # argument order as given

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ArtinError(f"unknown family {self.family!r}")
        object.__setattr__(self, "ordered_generators", tuple(self.ordered_generators))
        if not self.written:
            object.__setattr__(self, "written", self.ordered_generators)
        if len(self.ordered_generators) != self.rank or len(self.written) != self.rank:
            raise ArtinError("rank does not match generator count")

    @property
    def name(self) -> str:
        return type_name(self.family, self.rank)

    def n_plus(self) -> int:
        return positive_root_count(self.family, self.rank)


def _path_order(nodes: list, adj: dict) -> list | None:
    ends = [v for v in nodes if len(adj[v]) <= 1]
    if len(nodes) == 1:
        return list(nodes)
    if len(ends) != 2 or any(len(adj[v]) > 2 for v in nodes):
        return None
    order = [ends[0]]
    prev = None
    while len(order) < len(nodes):
        nxt = [w for w in adj[order[-1]] if w != prev]
        if len(nxt) != 1:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return order


def classify_chain(g: ArtinGraph, subset: Sequence[Generator]) -> ParabolicType:
    """Recognize the induced subgraph on ``subset`` as A, B, D, E6 or E7."""
    written = tuple(subset)
    nodes = list(dict.fromkeys(written))
    if len(nodes) != len(written):
        raise ArtinError("repeated generator in chain")
    missing = [v for v in nodes if v not in g.vertices]
    if missing:
        raise ArtinError("not in the graph: " + ", ".join(map(str, missing)))
    if not nodes:
        raise UnrecognizedShapeError("empty subset")
    labels = g.labels()
    adj = {v: [] for v in nodes}
    heavy = []
    for a, b in combinations(nodes, 2):
        m = labels.get(frozenset((a, b)), 2)
        if m == 2:
            continue
        if m > 4:
            raise UnrecognizedShapeError(f"label {m} on {a}-{b}")
        adj[a].append(b)
        adj[b].append(a)
        if m == 4:
            heavy.append((a, b))
    n = len(nodes)
    n_edges = sum(len(v) for v in adj.values()) // 2
    if n_edges != n - 1 or not _connected(nodes, adj):
        raise UnrecognizedShapeError("induced subgraph is not a tree")

    path = _path_order(nodes, adj)
    if heavy:
        if len(heavy) > 1 or path is None or n < 2:
            raise UnrecognizedShapeError("unsupported label-4 pattern")
        a, b = heavy[0]
        if path[0] in (a, b) and path[1] in (a, b):
            order = path
        elif path[-1] in (a, b) and path[-2] in (a, b):
            order = path[::-1]
        else:
            raise UnrecognizedShapeError("label-4 edge is not at an end of the chain")
        return ParabolicType("B", n, tuple(order), written)
    if path is not None:
        # keep the written direction when the written list already runs along the path
        if list(written) == path[::-1]:
            path = path[::-1]
        elif path[0] != written[0] and path[-1] == written[0]:
            path = path[::-1]
        return ParabolicType("A", n, tuple(path), written)

    branch = [v for v in nodes if len(adj[v]) == 3]
    if len(branch) != 1 or any(len(adj[v]) > 3 for v in nodes):
        raise UnrecognizedShapeError("not a spherical tree shape")
    c = branch[0]
    arms = []
    for start in adj[c]:
        arm = [start]
        prev = c
        while True:
            nxt = [w for w in adj[arm[-1]] if w != prev]
            if not nxt:
                break
            prev = arm[-1]
            arm.append(nxt[0])
        arms.append(arm)
    arms.sort(key=len)
    lengths = [len(a) for a in arms]
    if lengths[0] == 1 and lengths[1] == 1:
        # D_l: the two short arms are x1, x2 and the chain runs from c outward
        short = [arms[0][0], arms[1][0]]
        short.sort(key=written.index)
        order = short + [c] + arms[2]
        return ParabolicType("D", n, tuple(order), written)
    if lengths == [1, 2, 2]:
        order = arms[1][::-1] + [c] + arms[2] + arms[0]
        if written.index(arms[2][-1]) < written.index(arms[1][-1]):
            order = arms[2][::-1] + [c] + arms[1] + arms[0]
        return ParabolicType("E6", 6, tuple(order), written)
    if lengths == [1, 2, 3]:
        # x1..x6 chain with x7 on x4: the long arm comes first
        order = arms[2][::-1] + [c] + arms[1] + arms[0]
        return ParabolicType("E7", 7, tuple(order), written)
    raise UnrecognizedShapeError(f"tree with arms {lengths} is not A/B/D/E6/E7")


def _connected(nodes: list, adj: dict) -> bool:
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(nodes)


# ---------------------------------------------------------------------------
# Fundamental element words

# Exponents carried verbatim from the printed formulas where they disagree with
# the length count: (family, rank, m) -> k in (x_1...x_l)^k.
LITERAL_OVERRIDES = {("A", 2, 4): 8, ("E7", 7, 1): 15}


def a_product_word(gens: Sequence[Generator]) -> Word:
    """Delta of an A-chain written in path order: (x1..xl)(x1..x_{l-1})...(x1)."""
    letters = []
    for k in range(len(gens), 0, -1):
        letters.extend(gens[:k])
    return product(letters)


def power_exponent(family: str, rank: int, m: int, mode: Mode = Mode.PAPER) -> int:
    """k such that Delta^m = (x_1...x_l)^k, or InexpressibleError."""
    mode = Mode.coerce(mode)
    if m < 1:
        raise InexpressibleError(f"m must be positive, got {m}")
    if mode is Mode.PAPER and (family, rank, m) in LITERAL_OVERRIDES:
        return LITERAL_OVERRIDES[(family, rank, m)]
    if family == "A":
        if m % 2:
            raise InexpressibleError("A-type powers need even m (m=1 uses the product formula)")
        return (rank + 1) * m // 2
    if family == "B":
        return rank * m
    if family == "D":
        if rank % 2 == 0:
            return (rank - 1) * m
        if m % 2:
            raise InexpressibleError(f"D{rank} needs even m")
        return (rank - 1) * m
    if family == "E6":
        if m % 2:
            raise InexpressibleError("E6 needs even m")
        return 6 * m
    if family == "E7":
        return (15 if mode is Mode.PAPER else 9) * m
    raise InexpressibleError(f"unknown family {family!r}")


def _is_path_in_order(gens: Sequence[Generator], t: ParabolicType) -> bool:
    canon = list(t.ordered_generators)
    return list(gens) == canon or list(gens) == canon[::-1]


def delta_power_word(t: ParabolicType, m: int, mode: Mode | str = Mode.PAPER) -> Word:
    """A positive word for Delta^m over the written generator order of ``t``."""
    mode = Mode.coerce(mode)
    if t.family == "A" and m == 1 and (t.family, t.rank, m) not in LITERAL_OVERRIDES:
        gens = t.written if _is_path_in_order(t.written, t) else t.ordered_generators
        return a_product_word(gens)
    k = power_exponent(t.family, t.rank, m, mode)
    return product(t.written) ** k


def delta_record(t: ParabolicType, m: int, word: Word,
                 classified: ParabolicType | None = None) -> dict:
    """Metadata consumed by the homogeneity audit.

    ``t`` is the type the word was expanded with; ``classified`` is the type
    found in the ambient graph when that differs.
    """
    rec = {"family": t.family, "rank": t.rank, "m": m, "length": len(word),
           "chain": [str(g) for g in t.written]}
    if len(word) % t.rank == 0 and word == product(t.written) ** (len(word) // t.rank):
        rec["exponent"] = len(word) // t.rank
    if classified is not None and (classified.family, classified.rank) != (t.family, t.rank):
        rec["classified"] = classified.name
    return rec
