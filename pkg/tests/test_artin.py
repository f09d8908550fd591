import pytest

from mcgpres.artin import (
    ArtinError,
    ArtinGraph,
    InexpressibleError,
    Mode,
    ParabolicType,
    UnrecognizedShapeError,
    artin_presentation,
    builtin_graph,
    classify_chain,
    coxeter_presentation,
    delta_power_word,
    diagram,
    parse_type,
    positive_root_count,
    power_exponent,
    standard_generators,
)
from mcgpres.garside import equal, longest_word, build_root_system
from mcgpres.mcg import Alphabet, MapoParams, psi_graph
from mcgpres.words import Word, abstract, alternating, product

x = standard_generators(7)


def test_single_vertex_is_free():
    p = artin_presentation(ArtinGraph((x[0],)))
    assert p.generators == (x[0],) and p.relations == ()


@pytest.mark.parametrize("m", [3, 4, 6])
def test_edge_relation(m):
    a, b = x[0], x[1]
    p = artin_presentation(ArtinGraph((a, b), ((a, b, m),)))
    (rel,) = p.relations
    assert rel.lhs == alternating(a, b, m) and rel.rhs == alternating(b, a, m)
    assert len(rel.lhs) == m


def test_non_edges_commute():
    g = diagram("A", 3)
    p = artin_presentation(g)
    assert len(p.relations) == 3
    far = [r for r in p.relations if r.generators() == {x[0], x[2]}]
    assert far[0].lhs == Word.of(x[0], x[2])


def test_graph_validation():
    with pytest.raises(ArtinError):
        ArtinGraph((x[0], x[1]), ((x[0], x[1], 2),))
    with pytest.raises(ArtinError):
        ArtinGraph((x[0],), ((x[0], x[1], 3),))
    with pytest.raises(ArtinError):
        ArtinGraph((x[0], x[0]))
    with pytest.raises(ArtinError):
        ArtinGraph((x[0], x[1]), ((x[0], x[1], 3), (x[1], x[0], 4)))


def test_graph_json_round_trip():
    g = builtin_graph("Psi(2,3)")
    assert ArtinGraph.from_json(g.to_json()) == g


def test_parse_type():
    assert parse_type("A5") == ("A", 5)
    assert parse_type("E7") == ("E7", 7)
    with pytest.raises(ArtinError):
        parse_type("F4")


@pytest.mark.parametrize("name,order", [("A2", 6), ("A3", 24), ("B2", 8), ("B3", 48), ("D4", 192)])
def test_builtin_diagrams_give_the_right_coxeter_groups(name, order):
    from mcgpres.verify import todd_coxeter

    assert todd_coxeter(coxeter_presentation(builtin_graph(name))) == order


def psi(g=3, n=3):
    return psi_graph(MapoParams(g, n)), Alphabet()


def test_classify_a4_path():
    g, a = psi()
    t = classify_chain(g, [a.y(1), a.y(2), a.y(3), a.z])
    assert (t.family, t.rank) == ("A", 4)
    assert t.written == (a.y(1), a.y(2), a.y(3), a.z)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_classify_b_chain(n):
    g, a = psi(2, n)
    t = classify_chain(g, [a.x1] + [a.b(j) for j in range(1, n)])
    assert (t.family, t.rank) == ("B", n)
    assert t.ordered_generators[0] == a.x1


def test_classify_e6_and_e7():
    g, a = psi()
    t = classify_chain(g, [a.y(j) for j in range(1, 6)] + [a.z])
    assert t.name == "E6"
    t = classify_chain(g, [a.x0] + [a.y(j) for j in range(1, 6)] + [a.z])
    assert t.name == "E7"


def test_classify_d5_chain_is_really_a_path():
    # {x1, y1, y2, y3, z} is a path in Psi, hence A5
    g, a = psi()
    assert classify_chain(g, [a.x1, a.y(1), a.y(2), a.y(3), a.z]).name == "A5"


def test_classify_rejects():
    g, a = psi()
    with pytest.raises(UnrecognizedShapeError):
        classify_chain(g, [a.y(1), a.y(3)])  # disconnected


def test_positive_root_counts():
    assert [positive_root_count("A", l) for l in (1, 2, 3)] == [1, 3, 6]
    assert positive_root_count("B", 3) == 9
    assert positive_root_count("D", 4) == 12
    assert positive_root_count("E6", 6) == 36 and positive_root_count("E7", 7) == 63


def ptype(family, rank):
    name = family if family.startswith("E") else f"{family}{rank}"
    t = classify_chain(builtin_graph(name), standard_generators(rank))
    assert t.family == family
    return t


def test_delta_words_examples():
    assert delta_power_word(ptype("B", 2), 1) == Word.of(x[0], x[1], x[0], x[1])
    assert delta_power_word(ptype("A", 2), 1) == Word.of(x[0], x[1], x[0])
    e7 = ptype("E7", 7)
    assert delta_power_word(e7, 1, Mode.CORRECTED) == product(e7.written) ** 9
    assert delta_power_word(e7, 1, "paper") == product(e7.written) ** 15


def test_power_exponent_modes():
    assert power_exponent("A", 2, 4, Mode.PAPER) == 8
    assert power_exponent("A", 2, 4, Mode.CORRECTED) == 6
    assert power_exponent("A", 4, 2) == 5
    assert power_exponent("D", 4, 1) == 3
    assert power_exponent("D", 5, 2) == 8
    assert power_exponent("E6", 6, 2) == 12
    with pytest.raises(InexpressibleError):
        power_exponent("A", 3, 3)
    with pytest.raises(InexpressibleError):
        power_exponent("D", 5, 1)
    with pytest.raises(InexpressibleError):
        power_exponent("E6", 6, 1)


@pytest.mark.parametrize("family,rank", [("A", 3), ("A", 4), ("B", 3), ("D", 4), ("D", 5), ("E6", 6)])
def test_corrected_delta_words_have_root_count_length(family, rank):
    t = ptype(family, rank)
    for m in (2, 4):
        w = delta_power_word(t, m, Mode.CORRECTED)
        assert w.is_positive() and len(w) == m * positive_root_count(family, rank)


@pytest.mark.parametrize("family,rank", [("A", 4), ("B", 3), ("D", 4)])
def test_delta_word_equals_longest_element(family, rank):
    t = ptype(family, rank)
    rs = build_root_system(family, rank)
    w2 = delta_power_word(t, 2, Mode.CORRECTED)
    assert equal(w2, longest_word(rs) ** 2, rs)


def test_written_order_is_kept():
    g, a = psi()
    chain = [a.z, a.y(3), a.y(2), a.y(1)]
    t = classify_chain(g, chain)
    assert delta_power_word(t, 2).letters[:4] == tuple((v, 1) for v in chain)
