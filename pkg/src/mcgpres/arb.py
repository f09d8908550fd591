"""Presentations of the asymptotically rigid groups B_{1,r} and B_{2,1}.

Both are glued from vertex blocks (boundary-permuting mapping class groups
with height-indexed generators), identifications along edges between
consecutive heights, and one rotation relation for each edge of height
difference two.
"""

from __future__ import annotations

from typing import Sequence

from .artin import Mode, ParabolicType, a_product_word, classify_chain, delta_power_word, delta_record
from .mcg import Alphabet, MapoParams, ParamError, mapo_presentation, psi_graph
from .presentations import Presentation, Relation, relabel
from .words import Generator, Word, abstract, product, substitute

P1 = "P1"
P2 = "P2"

P2_HEIGHTS = range(1, 7)
P1_HEIGHTS = range(0, 4)


def _v(h: int) -> Alphabet:
    return Alphabet(h)


def humphries_m(i: int) -> Word:
    """The 16-letter multitwist word m_i over y_{i,1..5} and z_i."""
    if i < 2:
        raise ParamError(f"m_i needs y_(i,5), so i >= 2; got {i}")
    a = _v(i)
    y, z = a.y, a.z
    return product([y(5), y(4), y(3), z, y(2), y(1), y(3), y(2),
                    y(4), y(3), y(5), y(4), z, y(3), y(2), y(1)])


def _n_word(i: int, middle: Generator) -> Word:
    """16-letter word over y_{i,2i-3..2i+1} with ``middle`` in the two slots."""
    y = _v(i).y
    k = 2 * i
    return product([y(k + 1), y(k), y(k - 1), middle, y(k - 2), y(k - 3), y(k - 1), y(k - 2),
                    y(k), y(k - 1), y(k + 1), y(k), middle, y(k - 1), y(k - 2), y(k - 3)])


def _conjugate(c: Word, w: Word) -> Word:
    return c * w * c.inverse()


def _placeholder(k: int) -> Generator:
    return abstract("t", k)


def t_word(i: int, family: str = P2) -> Word:
    """The twist t_i as a reduced word in the vertex generators."""
    if family == P1:
        if i in (1, 2):
            # the chains of phi_1 and phi_2 end with z_1 itself
            return Word.of(_v(1).z)
        if i == 3:
            n3 = _n_word(3, _placeholder(1))
            n3 = substitute(n3, {_placeholder(1): Word.of(_v(1).z)}, partial=True)
            return _conjugate(n3, Word.of(_v(3).z)).reduce()
        raise ParamError(f"t_{i} is not defined for {family}")
    if family != P2:
        raise ParamError(f"unknown family {family!r}")
    if i not in range(0, 7):
        raise ParamError(f"t_{i} is out of range 0..6")
    if i == 0:
        return Word.of(_v(1).z)
    if i % 2:
        return t_word(i - 1, P2)
    if i == 2:
        return _conjugate(humphries_m(2), Word.of(_v(2).x0)).reduce()
    # even i >= 4: n_i t_{i-4} n_i^-1, with t_{i-2} inside n_i
    inner = _placeholder(i - 2)
    outer = _placeholder(i - 4)
    w = _conjugate(_n_word(i, inner), Word.of(outer))
    return substitute(w, {inner: t_word(i - 2, P2), outer: t_word(i - 4, P2)}, partial=True)


def _chain(family: str, i: int) -> list:
    """Generators of the A-chain in phi_i; the last entry may be a placeholder."""
    a = _v(i)
    if family == P1 and i == 0:
        return [a.x0, a.y(1)]
    last_index = 2 * i + 1
    if family == P1 and i in (1, 2):
        last = _v(1).z
    else:
        last = _placeholder(i)
    return [a.x0] + [a.y(j) for j in range(1, last_index + 1)] + [last]


def phi_word(family: str, i: int, r: int | None = None, records: list | None = None) -> Word:
    """Rotation word: inverse of a chain Delta times the Delta of the swap chain."""
    a = _v(i)
    if family == P1:
        if r is None or r < 3:
            raise ParamError("P1 rotation words need r >= 3")
        if i not in P1_HEIGHTS:
            raise ParamError(f"phi_{i} is out of range for {family}")
        swaps = [a.b(j) for j in range(1, r)]
    elif family == P2:
        if i not in P2_HEIGHTS:
            raise ParamError(f"phi_{i} is out of range for {family}")
        swaps = [a.b(j) for j in range(1, i + 1)]
    else:
        raise ParamError(f"unknown family {family!r}")
    recs = records if records is not None else []
    chain = _chain(family, i)
    if family == P1 and i == 0:
        t = ParabolicType("A", 2, tuple(chain))
        block = delta_power_word(t, 2)
        recs.append(delta_record(t, 2, block))
    else:
        block = a_product_word(chain)
        recs.append(delta_record(ParabolicType("A", len(chain), tuple(chain)), 1, block))
    swap_block = a_product_word(swaps)
    recs.append(delta_record(ParabolicType("A", len(swaps), tuple(swaps)), 1, swap_block))
    w = block.inverse() * swap_block
    holes = {g for g in w.generators() if g.series == "t"}
    if holes:
        (hole,) = holes
        w = substitute(w, {hole: t_word(i, family)}, partial=True)
    return w.reduce()


def _eq(tag: str, a: Generator, b: Generator) -> Relation:
    return Relation(tag, Word.of(a), Word.of(b))


def _vertex_blocks(params: dict, mode: Mode) -> tuple:
    gens: list = []
    rels: list = []
    guards: dict = {}
    for h, p in params.items():
        block = mapo_presentation(p, mode, vertex=h)
        gens.extend(block.generators)
        rels.extend(relabel(block, f"V{h}."))
        guards[f"V{h}"] = block.meta["guards"]
    return gens, rels, guards


def b1r_presentation(r: int, mode: Mode | str = Mode.PAPER) -> Presentation:
    if r < 3:
        raise ParamError(f"r must be >= 3, got {r}")
    mode = Mode.coerce(mode)
    params = {h: MapoParams(h + 1, r) for h in P1_HEIGHTS}
    gens, rels, guards = _vertex_blocks(params, mode)
    V = [_v(h) for h in P1_HEIGHTS]

    s = [
        _eq("S1", V[0].x0, V[1].x0),
        _eq("S2", V[0].x1, V[1].x1),
        _eq("S3", V[0].y(1), V[1].y(1)),
    ]
    s += [_eq(f"S4.{j}", V[0].u(j), V[1].u(j)) for j in range(1, r)]
    s += [_eq(f"S5.{j}", V[0].b(j), V[1].b(j)) for j in range(1, r - 1)]
    s += [
        _eq("S6", V[2].x0, V[3].z),
        _eq("S7", V[2].y(1), V[3].y(3)),
        _eq("S8", V[2].y(2), V[3].y(4)),
        _eq("S9", V[2].y(3), V[3].y(5)),
    ]
    s += [_eq(f"S10.{j}", V[1].u(j), V[2].u(j)) for j in range(2, r + 1)]
    s += [_eq(f"S11.{j}", V[1].b(j), V[2].b(j)) for j in range(2, r)]

    chain = [V[2].x1, V[2].x0, V[2].y(1), V[2].y(2)]
    d4 = classify_chain(psi_graph(params[2], vertex=2), chain)
    lhs = delta_power_word(d4, 1, mode)
    s.append(Relation("S12", lhs, Word.of(V[2].u(1), V[1].x1, V[2].z),
                      (delta_record(d4, 1, lhs),)))
    m2 = humphries_m(2)
    s.append(Relation("S13", Word.of(V[1].z), _conjugate(m2, Word.of(V[2].x0))))
    s += [_eq("S14", V[2].x0, V[3].x0), _eq("S15", V[2].x1, V[3].x1)]
    s += [_eq(f"S{15 + k}", V[2].y(k), V[3].y(k)) for k in range(1, 6)]
    s.append(_eq("S21", V[2].z, V[3].z))
    s += [_eq(f"S22.{j}", V[2].u(j), V[3].u(j)) for j in range(1, r)]
    s += [_eq(f"S23.{j}", V[2].b(j), V[3].b(j)) for j in range(1, r - 1)]

    t = []
    for tag, (lo, hi) in (("T1", (0, 2)), ("T2", (1, 3))):
        recs: list = []
        lhs = phi_word(P1, lo, r, recs) * Word.of(V[lo].u(1))
        rhs = phi_word(P1, hi, r, recs) * Word.of(V[hi].u(1))
        t.append(Relation(tag, lhs, rhs, tuple(recs)))

    meta = {
        "family": "b1r",
        "r": r,
        "mode": mode.value,
        "delta_tagged": True,
        "guards": guards,
        "notes": [
            "V1.R2 not emitted: y_(1,4), y_(1,5) do not exist at genus 2",
            "phi_1 and phi_3 swap blocks use b_(i,1..r-1)",
        ],
    }
    return Presentation(tuple(gens), tuple(rels + s + t), meta)


def _s16_shape(tag: str, h: int, prev: int, mode: Mode) -> Relation:
    """((x_{h,1} b_{h,1})^2 x_{h,0}^-1 x_{h,0} y_{h,1} y_{h,2})^3 = b_{h,1}^2 u_{h,1} u_{h,2} x_{prev,1} z_h."""
    a = _v(h)
    graph = psi_graph(MapoParams(h + 1, h + 1), vertex=h)
    b2 = classify_chain(graph, [a.x1, a.b(1)])
    inner = delta_power_word(b2, 1, mode)
    first = inner * Word.of((a.x0, -1))
    c = first * Word.of(a.x0, a.y(1), a.y(2))
    lhs = c ** 3
    d4 = {"family": "D", "rank": 4, "m": 1, "exponent": 3,
          "chain": ["(" + str(first) + ")", str(a.x0), str(a.y(1)), str(a.y(2))]}
    rhs = Word.of((a.b(1), 2), a.u(1), a.u(2), _v(prev).x1, a.z)
    return Relation(tag, lhs, rhs, (delta_record(b2, 1, inner), d4))


def b21_presentation(mode: Mode | str = Mode.PAPER) -> Presentation:
    mode = Mode.coerce(mode)
    params = {h: MapoParams(h + 1, h + 1) for h in P2_HEIGHTS}
    gens, rels, guards = _vertex_blocks(params, mode)
    V = {h: _v(h) for h in P2_HEIGHTS}

    s = [
        _eq("S1", V[1].x0, V[2].x0),
        _eq("S2", V[1].x1, V[2].x1),
    ]
    s += [_eq(f"S{2 + k}", V[1].y(k), V[2].y(k)) for k in range(1, 4)]
    s.append(_eq("S6", V[1].z, V[2].z))
    s.append(_eq("S7", V[2].x0, V[3].z))
    s += [_eq(f"S{7 + k}", V[2].y(k), V[3].y(k + 2)) for k in range(1, 6)]
    s += [
        _eq("S13", V[2].b(2), V[3].b(3)),
        _eq("S14", V[2].u(2), V[3].u(3)),
        _eq("S15", V[2].u(3), V[3].u(4)),
    ]
    s.append(_s16_shape("S16", 3, 2, mode))
    s.append(Relation("S17", Word.of(V[2].z), _conjugate(humphries_m(3), Word.of(V[3].x0))))
    s += [_eq("S18", V[3].x0, V[4].x0), _eq("S19", V[3].x1, V[4].x1)]
    s += [_eq(f"S{19 + k}", V[3].y(k), V[4].y(k)) for k in range(1, 8)]
    s.append(_eq("S27", V[3].z, V[4].z))
    s += [_eq(f"S{27 + k}", V[3].b(k), V[4].b(k)) for k in range(1, 3)]
    s += [_eq(f"S{29 + k}", V[3].u(k), V[4].u(k)) for k in range(1, 4)]
    s.append(_eq("S33", V[4].x0, V[5].z))
    s += [_eq(f"S{33 + k}", V[4].y(k), V[5].y(k + 2)) for k in range(1, 10)]
    s += [_eq(f"S{41 + k}", V[4].b(k), V[5].b(k + 1)) for k in range(2, 5)]
    s += [_eq(f"S{44 + k}", V[4].u(k), V[5].u(k + 1)) for k in range(2, 6)]
    s.append(_s16_shape("S50", 5, 4, mode))
    s.append(Relation("S51", Word.of(V[4].z), _conjugate(humphries_m(5), Word.of(V[5].x0))))
    s += [_eq("S52", V[5].x0, V[6].x0), _eq("S53", V[5].x1, V[6].x1)]
    s += [_eq(f"S{53 + k}", V[5].y(k), V[6].y(k)) for k in range(1, 12)]
    s.append(_eq("S65", V[5].z, V[6].z))
    s += [_eq(f"S{65 + k}", V[5].b(k), V[6].b(k)) for k in range(1, 5)]
    s += [_eq(f"S{69 + k}", V[5].u(k), V[6].u(k)) for k in range(1, 6)]

    t = []
    for i in range(1, 5):
        recs: list = []
        j = i + 2
        lhs = phi_word(P2, j, records=recs) * Word.of(V[j].u(1), V[j].u(2))
        rhs = phi_word(P2, i, records=recs) * Word.of(V[i].u(1))
        t.append(Relation(f"T{i}", lhs, rhs, tuple(recs)))

    meta = {
        "family": "b21",
        "mode": mode.value,
        "delta_tagged": True,
        "guards": guards,
        "notes": [
            "V1.R2 not emitted: y_(1,4), y_(1,5) do not exist at genus 2",
            "S16 and S50 keep the cancelling pair x^-1 x as printed",
            "T relations emitted for i = 1..4",
        ],
    }
    return Presentation(tuple(gens), tuple(rels + s + t), meta)
