"""Independent consistency checks for generated presentations."""

from __future__ import annotations

from collections import Counter
from typing import Mapping, Sequence

from .artin import positive_root_count
from .coset import EnumerationExhausted, todd_coxeter
from .presentations import Presentation
from .snf import invariants, smith_normal_form
from .words import Generator, Kind, Word, exponent_sums

__all__ = [
    "EnumerationExhausted",
    "abelianization",
    "boundary_assignment",
    "count_check",
    "delta_homogeneity_audit",
    "perm_eval",
    "perm_scope_summary",
    "relation_matrix",
    "smith_normal_form",
    "structural_check",
    "todd_coxeter",
]


class VerificationError(ValueError):
    pass


class MissingTagsError(VerificationError):
    pass


class PartialAssignmentError(VerificationError):
    pass


# ---------------------------------------------------------------------------
# Abelianization


def relation_matrix(p: Presentation) -> list:
    gens = list(p.generators)
    return [exponent_sums(r.relator(), gens) for r in p.relations]


def abelianization(p: Presentation) -> dict:
    p.check_alphabet()
    rows = [row for row in relation_matrix(p) if any(row)]
    n = len(p.generators)
    if not rows:
        return {"free_rank": n, "torsion": []}
    return invariants(smith_normal_form(rows), n)


# ---------------------------------------------------------------------------
# Permutation representation

Permutation = tuple  # images of 0..n-1


def perm_identity(n: int) -> Permutation:
    return tuple(range(n))


def transposition(n: int, i: int, j: int) -> Permutation:
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


def perm_compose(a: Permutation, b: Permutation) -> Permutation:
    """Apply a, then b."""
    return tuple(b[k] for k in a)


def perm_inverse(a: Permutation) -> Permutation:
    inv = [0] * len(a)
    for k, v in enumerate(a):
        inv[v] = k
    return tuple(inv)


def evaluate(w: Word, assignment: Mapping[Generator, Permutation], n: int) -> Permutation:
    out = perm_identity(n)
    for g, e in w.letters:
        img = assignment[g]
        out = perm_compose(out, img if e == 1 else perm_inverse(img))
    return out


def boundary_assignment(gens: Sequence[Generator]) -> tuple:
    """b_{*,j} -> (j, j+1), everything else -> identity, in Sym(max j + 1)."""
    swaps = [g for g in gens if g.kind is Kind.SWAP]
    n = max((g.position for g in swaps), default=0) + 1
    n = max(n, 1)
    out = {}
    for g in gens:
        if g.kind is Kind.SWAP:
            out[g] = transposition(n, g.position - 1, g.position)
        else:
            out[g] = perm_identity(n)
    return out, n


def _check(relations, assignment, n) -> list:
    bad = []
    for rel in relations:
        left = evaluate(rel.lhs, assignment, n)
        right = evaluate(rel.rhs, assignment, n)
        if left != right:
            bad.append({"tag": rel.tag, "lhs": [k + 1 for k in left],
                        "rhs": [k + 1 for k in right]})
    return bad


def perm_eval(
    p: Presentation,
    assignment: Mapping[Generator, Permutation] | None = None,
    scope: str = "all",
) -> list:
    """Relations whose two sides differ in the boundary permutation image.

    ``scope="all"`` uses one labeling for every generator.  ``"per-vertex"``
    labels each vertex separately and checks the relations living inside a
    single vertex; relations that mix vertices are not in that scope.
    """
    if scope == "all":
        if assignment is None:
            assignment, n = boundary_assignment(p.generators)
        else:
            missing = [g for g in p.generators if g not in assignment]
            if missing:
                raise PartialAssignmentError(
                    "no permutation for: " + ", ".join(map(str, missing)))
            n = len(next(iter(assignment.values()))) if assignment else 0
        return _check(p.relations, assignment, n)
    if scope != "per-vertex":
        raise VerificationError(f"unknown scope {scope!r}")
    if assignment is not None:
        raise VerificationError("per-vertex scope uses the built-in labeling")
    groups: dict = {}
    for rel in p.relations:
        verts = {g.vertex for g in rel.generators()}
        if len(verts) == 1:
            groups.setdefault(verts.pop(), []).append(rel)
    bad = []
    for v in sorted(groups, key=lambda x: (x is None, x)):
        gens = [g for g in p.generators if g.vertex == v]
        local, n = boundary_assignment(gens)
        bad += _check(groups[v], local, n)
    return bad


def perm_scope_summary(p: Presentation, scope: str) -> dict:
    if scope == "all":
        return {"checked": len(p.relations), "out_of_scope": 0}
    single = sum(1 for r in p.relations if len({g.vertex for g in r.generators()}) == 1)
    return {"checked": single, "out_of_scope": len(p.relations) - single}


# ---------------------------------------------------------------------------
# Delta homogeneity


def delta_homogeneity_audit(p: Presentation) -> list:
    """Delta expansions whose letter count disagrees with m times N+."""
    if not p.meta.get("delta_tagged"):
        raise MissingTagsError("presentation carries no Delta expansion records")
    out = []
    for rel in p.relations:
        for rec in rel.deltas:
            family, rank, m = rec["family"], rec["rank"], rec["m"]
            expected = m * positive_root_count(family, rank)
            if "exponent" in rec:
                emitted = rec["exponent"] * rank
            else:
                emitted = rec["length"]
            if emitted != expected:
                entry = {"tag": rel.tag, "family": family, "rank": rank, "m": m,
                         "emitted_length": emitted, "expected_length": expected}
                if "exponent" in rec:
                    entry["exponent"] = rec["exponent"]
                    entry["forced_exponent"] = expected / rank
                out.append(entry)
    return out


# ---------------------------------------------------------------------------
# Structure and counts


def structural_check(p: Presentation) -> dict:
    alphabet = set(p.generators)
    foreign = []
    used: set = set()
    for rel in p.relations:
        gens = rel.generators()
        used |= gens
        for g in sorted(gens - alphabet, key=Generator.sort_key):
            foreign.append({"tag": rel.tag, "letter": str(g)})
    dup = sorted(t for t, c in Counter(p.tags()).items() if c > 1)
    unused = [str(g) for g in p.generators if g not in used]
    return {
        "ok": not foreign and not dup and not unused,
        "alphabet_closure": not foreign,
        "foreign_letters": foreign,
        "duplicate_tags": dup,
        "unused_generators": unused,
        "generators": len(p.generators),
        "relations": len(p.relations),
    }


def expected_counts(meta: dict) -> dict | None:
    family = meta.get("family")
    if family == "b1r":
        r = meta["r"]
        return {"twist": 27 + 4 * r, "swap": 4 * r - 4}
    if family == "b21":
        return {"twist": 93, "swap": 21}
    if family == "mapo":
        g, n = meta["g"], meta["n"]
        return {"twist": 2 + (2 * g - 1) + (1 if g >= 2 else 0) + n, "swap": n - 1}
    return None


def count_check(p: Presentation) -> dict:
    found = Counter(g.kind.value for g in p.generators)
    counts = {"twist": found.get("twist", 0), "swap": found.get("swap", 0),
              "stable": found.get("stable", 0), "abstract": found.get("abstract", 0)}
    expected = expected_counts(p.meta)
    ok = expected is not None and all(counts[k] == v for k, v in expected.items())
    return {"ok": ok, "counts": counts, "expected": expected}
