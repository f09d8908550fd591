import pytest

from mcgpres.presentations import (
    Edge,
    GraphOfGroups,
    Presentation,
    PresentationError,
    Relation,
    brown_quotient,
    compose_extension,
    graph_of_groups_pi1,
    relation,
    tietze_add_consequence,
)
from mcgpres.verify import abelianization, structural_check, todd_coxeter
from mcgpres.words import AlphabetError, Kind, Word, abstract, alternating

a, h, t = abstract("a"), abstract("k"), abstract("t")


def cyclic(g, k, tag):
    return Presentation((g,), (relation(tag, Word.of((g, k))),))


def free(*gens):
    return Presentation(tuple(gens), ())


def test_extension_cyclic_of_order_six():
    K, H = cyclic(a, 2, "a2"), cyclic(h, 3, "h3")
    G = compose_extension(K, H, {"h3": Word()}, {(h, a): Word.of(a)})
    assert G.tags() == ["a2", "h3.lift", "conj.k.a"]
    assert todd_coxeter(G) == 6
    assert abelianization(G) == {"free_rank": 0, "torsion": [6]}


def test_extension_with_trivial_kernel():
    H = cyclic(h, 3, "h3")
    G = compose_extension(free(), H, {"h3": Word()}, {})
    assert G.generators == H.generators
    assert G.tags() == ["h3.lift"]
    assert G.relators() == H.relators()


@pytest.fixture
def swap_extension():
    p1, p2 = abstract("p", 1), abstract("p", 2)
    K = Presentation((p1, p2), (relation("comm", Word.of(p1, p2), Word.of(p2, p1)),))
    G = compose_extension(K, free(h), {}, {(h, p1): Word.of(p2), (h, p2): Word.of(p1)})
    return G, p1, p2


def test_extension_conjugation_relators(swap_extension):
    G, p1, p2 = swap_extension
    rels = set(G.relators())
    assert Word.of(h, p1, (h, -1), (p2, -1)) in rels
    assert Word.of(h, p2, (h, -1), (p1, -1)) in rels
    assert structural_check(G)["ok"]


def test_extension_rejects_bad_input():
    K, H = cyclic(a, 2, "a2"), cyclic(h, 3, "h3")
    with pytest.raises(PresentationError):
        compose_extension(K, H, {}, {(h, a): Word.of(a)})
    with pytest.raises(PresentationError):
        compose_extension(K, H, {"h3": Word()}, {})
    with pytest.raises(PresentationError):
        compose_extension(K, K, {"a2": Word()}, {(a, a): Word()})
    with pytest.raises(AlphabetError):
        compose_extension(K, H, {"h3": Word.of(h)}, {(h, a): Word.of(a)})


def trefoil_graph():
    e = Edge(0, 1, (t,), {t: Word.of((a, 2))}, {t: Word.of((h, 3))})
    return GraphOfGroups((free(a), free(h)), (e,), frozenset({0}))


def test_trefoil():
    p = graph_of_groups_pi1(trefoil_graph())
    assert p.generators == (a, h)
    assert p.relators() == [Word.of(a, a, (h, -1), (h, -1), (h, -1))]
    assert abelianization(p) == {"free_rank": 1, "torsion": []}
    assert brown_quotient(p) is p


def test_single_vertex_unchanged():
    G = GraphOfGroups((free(a),), (), frozenset())
    p = graph_of_groups_pi1(G)
    assert p.generators == (a,) and p.relations == ()


def bs_graph():
    e = Edge(0, 0, (t,), {t: Word.of(a)}, {t: Word.of(a, a)}, name="y")
    return GraphOfGroups((free(a),), (e,), frozenset())


def test_baumslag_solitar_shape():
    p = graph_of_groups_pi1(bs_graph())
    y = [g for g in p.generators if g.kind is Kind.STABLE]
    assert len(y) == 1
    assert p.relation("y.t").lhs == Word.of(y[0], a, (y[0], -1))
    assert abelianization(p) == {"free_rank": 1, "torsion": []}
    q = brown_quotient(p)
    assert q.generators == (a,)
    assert q.relators() == [Word.of((a, -1))]
    assert q.meta["brown_quotient"]


def snake_graph(order=(0, 1, 2)):
    ai = [abstract("a", i) for i in range(3)]
    pairs = [(0, 1), (1, 2), (0, 2)]
    edges = []
    for i, j in pairs:
        edges.append(Edge(i, j, (t,), {t: Word.of(ai[i])}, {t: Word.of(ai[j])}, name=f"e{i}{j}"))
    edges = [edges[k] for k in order]
    tree = frozenset(k for k, e in enumerate(edges) if (e.source, e.target) != (0, 2))
    return GraphOfGroups(tuple(free(g) for g in ai), tuple(edges), tree)


def test_snake_quotient():
    q = brown_quotient(graph_of_groups_pi1(snake_graph()))
    assert len(q.generators) == 3
    assert abelianization(q) == {"free_rank": 1, "torsion": []}
    assert structural_check(q)["alphabet_closure"]


def test_edge_order_independence():
    p1 = graph_of_groups_pi1(snake_graph((0, 1, 2)))
    p2 = graph_of_groups_pi1(snake_graph((2, 0, 1)))
    assert sorted(map(str, p1.relators())) == sorted(map(str, p2.relators()))


def test_graph_validation():
    e = Edge(0, 3, (t,), {t: Word.of(a)}, {t: Word.of(a)})
    with pytest.raises(PresentationError):
        graph_of_groups_pi1(GraphOfGroups((free(a),), (e,), frozenset()))
    e = Edge(0, 1, (t,), {t: Word.of(h)}, {t: Word.of(h)})
    with pytest.raises(PresentationError):
        graph_of_groups_pi1(GraphOfGroups((free(a), free(h)), (e,), frozenset({0})))
    with pytest.raises(PresentationError):
        graph_of_groups_pi1(GraphOfGroups((free(a), free(h)), (), frozenset()))


def braid_group():
    b1, b2 = abstract("s", 1), abstract("s", 2)
    return Presentation((b1, b2), (relation("br", alternating(b1, b2, 3), alternating(b2, b1, 3)),
                                   relation("sq", Word.of(b1, b1))))


def test_tietze_consequences_keep_abelianization():
    p = braid_group()
    base = abelianization(p)
    r = p.relators()[0]
    g = Word.of(p.generators[1])
    for w in (r * r, g * r * g.inverse(), Word(r.letters[2:] + r.letters[:2])):
        q = tietze_add_consequence(p, w, proof_hint="consequence")
        assert abelianization(q) == base
    q = tietze_add_consequence(tietze_add_consequence(p, r * r), r)
    assert q.tags()[-2:] == ["tietze", "tietze2"]
    with pytest.raises(AlphabetError):
        tietze_add_consequence(p, Word.of(a))


def test_json_round_trip():
    p = braid_group()
    text = p.dumps()
    q = Presentation.loads(text)
    assert q == p
    assert q.dumps() == text


def test_relator_keeps_unreduced_form():
    r = Relation("x", Word.of(a, (a, -1)), Word.of(h))
    assert len(r.relator()) == 3
    assert Presentation((a, h), (r,)).relators() == [Word.of((h, -1))]
