import pytest

from mcgpres.artin import Mode
from mcgpres.mcg import (
    Alphabet,
    MapoParams,
    ParamError,
    count_kinds,
    gamma_graph,
    generator_catalogs,
    mapo_presentation,
    psi_graph,
    type_mismatches,
)
from mcgpres.verify import perm_eval, structural_check
from mcgpres.words import Kind, Word, exponent_sums, product

A = Alphabet()


def test_params():
    for g, n in [(0, 2), (1, 1), (1, 0)]:
        with pytest.raises(ParamError):
            MapoParams(g, n)


def test_psi_small():
    g = psi_graph(MapoParams(1, 3))
    assert len(g.vertices) == 8 and A.z not in g.vertices
    g = psi_graph(MapoParams(2, 2))
    assert set(g.vertices) == {A.x0, A.x1, A.y(1), A.y(2), A.y(3), A.z, A.b(1), A.u(1), A.u(2)}


def test_psi_heavy_edges():
    g = psi_graph(MapoParams(1, 2))
    heavy = {frozenset((a, b)) for a, b, m in g.edges if m == 4}
    assert heavy == {frozenset((A.x1, A.b(1))), frozenset((A.u(1), A.b(1))), frozenset((A.u(2), A.b(1)))}


@pytest.mark.parametrize("g,n", [(1, 2), (2, 3), (3, 5)])
def test_psi_edge_rules(g, n):
    graph = psi_graph(MapoParams(g, n))
    heavy = {frozenset((a, b)) for a, b, m in graph.edges if m == 4}
    expected = {frozenset((A.x1, A.b(1)))}
    for j in range(1, n):
        expected |= {frozenset((A.u(j), A.b(j))), frozenset((A.u(j + 1), A.b(j)))}
    assert heavy == expected
    assert all(m in (3, 4) for _, _, m in graph.edges)
    if g >= 2:
        assert graph.label(A.z, A.y(3)) == 3


def test_gamma_drops_boundary_twists():
    g = gamma_graph(MapoParams(2, 3))
    assert not any(v.series == "u" for v in g.vertices)


def test_r5b_for_genus_one():
    p = mapo_presentation(MapoParams(1, 3))
    r = p.relation("R5b")
    assert r.lhs == Word.of((A.x0, 3))
    assert r.rhs == product([A.x1, A.b(1), A.b(2)]) ** 3


def test_r4_genus_two():
    p = mapo_presentation(MapoParams(2, 2))
    r = p.relation("R4")
    chain = [A.x0, A.x1, A.y(1), A.y(2), A.y(3), A.z]
    assert r.lhs == Word.of(A.u(1)) * product(chain) ** 5
    assert r.rhs == product(chain[1:]) ** 8
    assert "R2" not in p.tags()
    assert type_mismatches(p) == [{"tag": "R4", "declared": "D5", "classified": "A5"}]
    c = mapo_presentation(MapoParams(2, 2), Mode.CORRECTED).relation("R4")
    assert c.rhs == product(chain[1:]) ** 6


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_guards(g):
    p = mapo_presentation(MapoParams(g, 3))
    tags = set(p.tags())
    assert ("R5b" in tags) == (g == 1) and ("R5c" in tags) == (g == 1)
    assert ("R5a" in tags) == (g >= 2)
    assert ("R1" in tags) == (g >= 2) and ("R4" in tags) == (g >= 2)
    assert ("R2" in tags) == (g >= 3)
    assert "R3" in tags
    assert {f"C{i}" for i in (1, 2)} <= tags and {f"D{i}" for i in (1, 2)} <= tags
    assert p.meta["guards"]["R3"] == "emitted"


def test_r5c_modes():
    lit = mapo_presentation(MapoParams(1, 2), "paper").relation("R5c")
    cor = mapo_presentation(MapoParams(1, 2), "corrected").relation("R5c")
    assert lit.lhs == product([A.x0, A.y(1)]) ** 8
    assert cor.lhs == product([A.x0, A.y(1)]) ** 6


def test_ci_relation_abelianizes_to_boundary_difference():
    p = mapo_presentation(MapoParams(1, 3))
    gens = [A.b(1), A.u(1), A.u(2)]
    assert exponent_sums(p.relation("C1").relator(), gens) == [0, 1, -1]


@pytest.mark.parametrize("g", [1, 2, 3])
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_permutation_check_and_closure(g, n):
    p = mapo_presentation(MapoParams(g, n))
    assert perm_eval(p) == []
    s = structural_check(p)
    assert s["ok"], s


def test_counts_per_kind():
    p = mapo_presentation(MapoParams(3, 4))
    assert count_kinds(p.generators) == {"twist": 2 + 5 + 1 + 4, "swap": 3, "stable": 0, "abstract": 0}


@pytest.mark.parametrize("g,n", [(1, 2), (1, 4), (2, 2), (3, 5)])
def test_catalogs(g, n):
    cat = generator_catalogs(MapoParams(g, n))
    size = 2 * g + 2 * n + 1 if g >= 2 else 2 * n + 2
    assert len(cat["full"]) == size
    assert sum(1 for x in cat["A1"] if x.kind is Kind.SWAP) == n - 1
    assert A.x0 not in cat["A2"] and A.x1 not in cat["A2"]
    assert {A.w(0), A.w(1), A.w(2)} <= set(cat["A2"])


def test_vertex_indexed_alphabet():
    p = mapo_presentation(MapoParams(2, 3), vertex=1)
    assert all(gen.vertex == 1 for gen in p.generators)
    assert p.meta["vertex"] == 1


def test_punctured_variant():
    p = mapo_presentation(MapoParams(2, 3), variant="punctured")
    assert not any(x.series == "u" for x in p.generators)
    assert not any(t.startswith(("C", "D")) for t in p.tags())
    assert A.u(1) not in p.relation("R4").lhs.generators()
    with pytest.raises(ParamError):
        mapo_presentation(MapoParams(2, 3), variant="other")
