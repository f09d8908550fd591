from mcgpres.presentations import Edge, GraphOfGroups, Presentation, graph_of_groups_pi1
from mcgpres.words import Word, abstract


def bs_presentation():
    a, t = abstract("a"), abstract("t")
    e = Edge(0, 0, (t,), {t: Word.of(a)}, {t: Word.of(a, a)}, name="y")
    return graph_of_groups_pi1(GraphOfGroups((Presentation((a,), ()),), (e,), frozenset()))
