"""Presentations of boundary-permuting mapping class groups of S_{g,n}.

The builder reproduces the Artin-quotient presentation on the graph Psi(g, n):
generators x0, x1, y_1..y_{2g-1}, z (g >= 2), swaps b_1..b_{n-1} and boundary
twists u_1..u_n.  A ``vertex`` argument attaches a height index to every
generator so the same code builds the vertex blocks of larger presentations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .artin import (
    ArtinGraph,
    Mode,
    ParabolicType,
    artin_presentation,
    classify_chain,
    delta_power_word,
    delta_record,
)
from .presentations import Presentation, Relation
from .words import Generator, Kind, Word, swap, twist


class ParamError(ValueError):
    pass


@dataclass(frozen=True)
class MapoParams:
    g: int
    n: int

    def __post_init__(self):
        if self.g < 1:
            raise ParamError(f"genus must be >= 1, got {self.g}")
        if self.n < 2:
            raise ParamError(f"need at least two boundary components, got n={self.n}")


@dataclass(frozen=True)
class Alphabet:
    """Generator names for one surface, optionally carrying a vertex index."""

    vertex: int | None = None
    halftwists: bool = False  # h_i in place of b_i (punctured reference variant)

    @property
    def x0(self) -> Generator:
        return twist("x0", self.vertex)

    @property
    def x1(self) -> Generator:
        return twist("x1", self.vertex)

    @property
    def z(self) -> Generator:
        return twist("z", self.vertex)

    def y(self, j: int) -> Generator:
        return twist("y", self.vertex, j)

    def u(self, j: int) -> Generator:
        return twist("u", self.vertex, j)

    def b(self, j: int) -> Generator:
        if self.halftwists:
            return twist("h", self.vertex, j)
        return swap(self.vertex, j)

    def w(self, k: int) -> Generator:
        return twist(f"w{k}", self.vertex)


def _graph(p: MapoParams, a: Alphabet, with_u: bool) -> ArtinGraph:
    g, n = p.g, p.n
    ys = [a.y(j) for j in range(1, 2 * g)]
    bs = [a.b(j) for j in range(1, n)]
    verts = [a.x0, a.x1] + ys + ([a.z] if g >= 2 else []) + bs
    edges = [(a.x0, ys[0], 3), (a.x1, ys[0], 3)]
    edges += [(ys[k], ys[k + 1], 3) for k in range(len(ys) - 1)]
    if g >= 2:
        edges.append((a.z, a.y(3), 3))
    edges.append((a.x1, bs[0], 4))
    edges += [(bs[k], bs[k + 1], 3) for k in range(len(bs) - 1)]
    if with_u:
        us = [a.u(j) for j in range(1, n + 1)]
        verts += us
        for j in range(1, n):
            edges.append((a.u(j), a.b(j), 4))
            edges.append((a.u(j + 1), a.b(j), 4))
    return ArtinGraph(tuple(verts), tuple(edges))


def psi_graph(p: MapoParams, vertex: int | None = None) -> ArtinGraph:
    return _graph(p, Alphabet(vertex), with_u=True)


def gamma_graph(p: MapoParams, vertex: int | None = None) -> ArtinGraph:
    """The graph for the capped surface: half twists h_i and no boundary twists."""
    return _graph(p, Alphabet(vertex, halftwists=True), with_u=False)


class _Expander:
    """Expands Delta^m over a written chain and keeps the audit records."""

    def __init__(self, graph: ArtinGraph, mode: Mode):
        self.graph = graph
        self.mode = mode

    def __call__(self, chain: Sequence[Generator], m: int, records: list,
                 declared: tuple | None = None) -> Word:
        t = classify_chain(self.graph, chain)
        used = t
        if declared is not None and self.mode is Mode.PAPER:
            family, rank = declared
            used = ParabolicType(family, rank, tuple(chain), tuple(chain))
        w = delta_power_word(used, m, self.mode)
        records.append(delta_record(used, m, w, classified=t))
        return w


def mapo_presentation(
    p: MapoParams,
    mode: Mode | str = Mode.PAPER,
    vertex: int | None = None,
    variant: str = "mapo",
) -> Presentation:
    """Artin relations of Psi(g, n) plus the guarded extra relations.

    ``variant="punctured"`` gives the reference presentation of the capped
    surface (Gamma graph, h_i, no u_i, no C/D family).
    """
    mode = Mode.coerce(mode)
    if variant not in ("mapo", "punctured"):
        raise ParamError(f"unknown variant {variant!r}")
    full = variant == "mapo"
    a = Alphabet(vertex, halftwists=not full)
    graph = _graph(p, a, with_u=full)
    base = artin_presentation(graph)
    delta = _Expander(graph, mode)
    g, n = p.g, p.n
    x0, x1, z = a.x0, a.x1, a.z
    y = a.y
    bs = [a.b(j) for j in range(1, n)]
    rels: list = []
    guards: dict = {}

    def emit(tag, lhs, rhs, recs):
        rels.append(Relation(tag, lhs, rhs, tuple(recs)))
        guards[tag] = "emitted"

    if g >= 2:
        recs: list = []
        lhs = delta([y(1), y(2), y(3), z], 4, recs)
        rhs = delta([x0, y(1), y(2), y(3), z], 2, recs)
        emit("R1", lhs, rhs, recs)
    else:
        guards["R1"] = "skipped: needs g >= 2"

    if g >= 3:
        recs = []
        lhs = delta([y(1), y(2), y(3), y(4), y(5), z], 2, recs)
        rhs = delta([x0, y(1), y(2), y(3), y(4), y(5), z], 1, recs)
        emit("R2", lhs, rhs, recs)
    else:
        guards["R2"] = "skipped: needs g >= 3"

    recs = []
    lhs = delta([x0, x1, y(1), bs[0]], 1, recs)
    rhs = delta([x1, y(1), bs[0]], 2, recs)
    emit("R3", lhs, rhs, recs)

    if g >= 2:
        recs = []
        lhs = delta([x0, x1, y(1), y(2), y(3), z], 1, recs)
        if full:
            lhs = Word.of(a.u(1)) * lhs
        # printed as a D5 power; the chain itself is a path
        rhs = delta([x1, y(1), y(2), y(3), z], 2, recs, declared=("D", 5))
        emit("R4", lhs, rhs, recs)
    else:
        guards["R4"] = "skipped: needs g >= 2"

    if g >= 2:
        recs = []
        lhs = Word.of((x0, 2 * g - n - 2)) * delta([x1] + bs, 1, recs)
        rhs = delta([z] + [y(j) for j in range(2, 2 * g)], 2, recs)
        emit("R5a", lhs, rhs, recs)
    else:
        guards["R5a"] = "skipped: needs g >= 2"

    if g == 1:
        recs = []
        emit("R5b", Word.of((x0, n)), delta([x1] + bs, 1, recs), recs)
        recs = []
        lhs = delta([x0, y(1)], 4, recs)
        rhs = delta(bs, 2, recs)
        emit("R5c", lhs, rhs, recs)
    else:
        guards["R5b"] = guards["R5c"] = "skipped: needs g = 1"

    if full:
        for i in range(1, n):
            b, ui, uj = a.b(i), a.u(i), a.u(i + 1)
            rels.append(Relation(f"C{i}", Word.of(b, ui), Word.of(uj, b)))
            rels.append(Relation(f"D{i}", Word.of(ui, b), Word.of(b, uj)))

    meta = {
        "family": "mapo" if full else "punctured",
        "g": g,
        "n": n,
        "mode": mode.value,
        "delta_tagged": True,
        "guards": guards,
    }
    if vertex is not None:
        meta["vertex"] = vertex
    return Presentation(base.generators, base.relations + tuple(rels), meta)


def type_mismatches(p: Presentation) -> list:
    """Delta expansions whose written type differs from the classified one."""
    out = []
    for rel in p.relations:
        for rec in rel.deltas:
            if "classified" in rec:
                out.append({"tag": rel.tag, "declared": f"{rec['family']}{rec['rank']}",
                            "classified": rec["classified"]})
    return out


def generator_catalogs(p: MapoParams, vertex: int | None = None) -> dict:
    """Named generator lists: the full group and the two boundary-fixing variants."""
    a = Alphabet(vertex)
    g, n = p.g, p.n
    ys = [a.y(j) for j in range(1, 2 * g)]
    zs = [a.z] if g >= 2 else []
    us = [a.u(j) for j in range(1, n + 1)]
    bs = [a.b(j) for j in range(1, n)]
    return {
        "full": [a.x0, a.x1] + zs + ys + us + bs,
        "A1": [a.x0, a.x1] + zs + ys + us + bs,
        "A2": [a.w(0), a.w(1), a.w(2)] + zs + ys + us + bs,
    }


def count_kinds(gens: Sequence[Generator]) -> dict:
    out = {k.value: 0 for k in Kind}
    for g in gens:
        out[g.kind.value] += 1
    return out

