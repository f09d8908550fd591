"""Word problem for spherical Artin groups via left-greedy normal forms.

Coxeter group elements are stored as permutations of the root indices of an
explicit integral root system.  Simple roots follow the x_1..x_l labeling of
:func:`mcgpres.artin.diagram`, so simple reflection ``j`` is generator
``x.(j+1)``.
"""

from __future__ import annotations

import json
import os
import threading
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .artin import ArtinError, parse_type, positive_root_count, standard_generators, type_name
from .words import Generator, Word, WordError

CACHE_ENV = "MCGPRES_CACHE_DIR"

MAX_RANK = {"A": 8, "B": 8, "D": 8}


class UnsupportedTypeError(ArtinError):
    pass


class ForeignLetterError(WordError):
    pass


def _unit(n: int, i: int) -> list:
    v = [0] * n
    v[i] = 1
    return v


def _e8_simple_scaled() -> list:
    """E8 simple roots (Bourbaki numbering alpha_1..alpha_8), doubled."""
    a1 = [1, -1, -1, -1, -1, -1, -1, 1]
    a2 = [2, 2, 0, 0, 0, 0, 0, 0]
    rest = []
    for k in range(6):  # alpha_{k+3} = e_{k+2} - e_{k+1}
        v = [0] * 8
        v[k + 1] = 2
        v[k] = -2
        rest.append(v)
    return [a1, a2] + rest


def simple_roots(family: str, rank: int) -> list:
    """Integral simple roots in the x_1..x_l labeling of the family diagram."""
    if family in MAX_RANK and not (1 <= rank <= MAX_RANK[family]):
        raise UnsupportedTypeError(f"{family}{rank} is outside the supported range")
    if family == "A":
        out = []
        for i in range(rank):
            v = [0] * (rank + 1)
            v[i], v[i + 1] = 1, -1
            out.append(v)
        return out
    if family == "B":
        if rank < 2:
            raise UnsupportedTypeError("B needs rank >= 2")
        out = [_unit(rank, 0)]
        for k in range(1, rank):
            v = _unit(rank, k)
            v[k - 1] = -1
            out.append(v)
        return out
    if family == "D":
        if rank < 4:
            raise UnsupportedTypeError("D needs rank >= 4")
        x1 = [-1, 1] + [0] * (rank - 2)
        x2 = [1, 1] + [0] * (rank - 2)
        out = [x1, x2]
        for k in range(2, rank):
            v = _unit(rank, k)
            v[k - 1] = -1
            out.append(v)
        return out
    a = _e8_simple_scaled()
    if family == "E6" and rank == 6:
        # paper chain x1..x5 with x6 on x3 <- Bourbaki 1,3,4,5,6 and 2
        return [a[i - 1] for i in (1, 3, 4, 5, 6, 2)]
    if family == "E7" and rank == 7:
        # chain x1..x6 with x7 on x4 <- Bourbaki 7,6,5,4,3,1 and 2
        return [a[i - 1] for i in (7, 6, 5, 4, 3, 1, 2)]
    raise UnsupportedTypeError(f"unsupported type {family}{rank}")


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _generate(simple: list) -> tuple:
    """Orbit closure of the simple roots; returns (vectors, coefficient vectors)."""
    rank = len(simple)
    norms = [_dot(a, a) for a in simple]
    start = [(tuple(a), tuple(_unit(rank, i))) for i, a in enumerate(simple)]
    seen = {v: c for v, c in start}
    queue = deque(v for v, _ in start)
    while queue:
        v = queue.popleft()
        c = seen[v]
        for j, a in enumerate(simple):
            num = 2 * _dot(v, a)
            if num % norms[j]:
                raise ArtinError("root system is not crystallographic")
            k = num // norms[j]
            if k == 0:
                continue
            w = tuple(x - k * y for x, y in zip(v, a))
            if w not in seen:
                cw = list(c)
                cw[j] -= k
                seen[w] = tuple(cw)
                queue.append(w)
    return seen


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    roots: tuple  # integer vectors; positives first, then their negatives
    coefficients: tuple  # coordinates in the simple-root basis
    simple: tuple  # root index of x_1..x_l (0..rank-1)
    n_positive: int
    reflections: tuple  # reflections[j][k] = index of s_j(root k)

    @property
    def name(self) -> str:
        return type_name(self.family, self.rank)

    @property
    def positive_roots(self) -> range:
        return range(self.n_positive)

    def is_positive(self, k: int) -> bool:
        return k < self.n_positive

    def negate(self, k: int) -> int:
        return k + self.n_positive if k < self.n_positive else k - self.n_positive

    # -- group elements ----------------------------------------------------
    @property
    def identity(self) -> tuple:
        return tuple(range(len(self.roots)))

    def compose(self, a: tuple, b: tuple) -> tuple:
        """The element a*b (apply b first)."""
        return tuple(a[k] for k in b)

    def inverse(self, a: tuple) -> tuple:
        inv = [0] * len(a)
        for k, v in enumerate(a):
            inv[v] = k
        return tuple(inv)

    def length(self, w: tuple) -> int:
        npos = self.n_positive
        return sum(1 for k in range(npos) if w[k] >= npos)

    def right_descents(self, w: tuple) -> list:
        return [j for j in range(self.rank) if w[j] >= self.n_positive]

    def left_descents(self, w: tuple) -> list:
        inv = self.inverse(w)
        return [j for j in range(self.rank) if inv[j] >= self.n_positive]

    def times_simple(self, w: tuple, j: int) -> tuple:
        return tuple(w[k] for k in self.reflections[j])

    def simple_times(self, j: int, w: tuple) -> tuple:
        r = self.reflections[j]
        return tuple(r[k] for k in w)

    @property
    def w0(self) -> tuple:
        cached = _W0.get(self.name)
        if cached is None:
            w = self.identity
            while True:
                asc = [j for j in range(self.rank) if w[j] < self.n_positive]
                if not asc:
                    break
                w = self.times_simple(w, asc[0])
            _W0[self.name] = cached = w
        return cached

    def tau(self, w: tuple) -> tuple:
        w0 = self.w0
        return self.compose(w0, self.compose(w, w0))

    def reduced_word(self, w: tuple) -> list:
        """A reduced expression as 0-based simple indices, built from left descents."""
        out = []
        while True:
            desc = self.left_descents(w)
            if not desc:
                return out
            j = desc[0]
            out.append(j)
            w = self.simple_times(j, w)

    def to_json(self) -> dict:
        return {"family": self.family, "rank": self.rank,
                "roots": [list(r) for r in self.roots],
                "coefficients": [list(c) for c in self.coefficients]}


_W0: dict = {}
_CACHE: dict = {}
_LOCK = threading.Lock()


def _assemble(family: str, rank: int, found: dict) -> RootSystem:
    positives = [(v, c) for v, c in found.items() if all(x >= 0 for x in c)]
    if len(positives) * 2 != len(found):
        raise ArtinError("roots are not split evenly by sign")
    positives.sort(key=lambda vc: (sum(vc[1]), tuple(-x for x in vc[1])))
    vectors = [v for v, _ in positives] + [tuple(-x for x in v) for v, _ in positives]
    coeffs = [c for _, c in positives] + [tuple(-x for x in c) for _, c in positives]
    index = {v: k for k, v in enumerate(vectors)}
    simple = simple_roots(family, rank)
    norms = [_dot(a, a) for a in simple]
    refl = []
    for j, a in enumerate(simple):
        perm = []
        for v in vectors:
            k = 2 * _dot(v, a) // norms[j]
            perm.append(index[tuple(x - k * y for x, y in zip(v, a))])
        refl.append(tuple(perm))
    simple_idx = tuple(index[tuple(a)] for a in simple)
    if simple_idx != tuple(range(rank)):
        raise ArtinError("simple roots did not sort first")
    rs = RootSystem(family, rank, tuple(vectors), tuple(coeffs), simple_idx,
                    len(positives), tuple(refl))
    if rs.n_positive != positive_root_count(family, rank):
        raise ArtinError(f"{rs.name}: found {rs.n_positive} positive roots")
    return rs


def _disk_path(family: str, rank: int) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return Path(root) / f"roots-{type_name(family, rank)}.json"


def build_root_system(family: str, rank: int | None = None) -> RootSystem:
    """Root system of ``family`` (``"A"``, ``"B"``, ``"D"``, ``"E6"``, ``"E7"``) and rank.

    Results are memoized per process; with ``MCGPRES_CACHE_DIR`` set the root
    list is also kept on disk.
    """
    if rank is None:
        family, rank = parse_type(family)
    key = (family, rank)
    rs = _CACHE.get(key)
    if rs is not None:
        return rs
    with _LOCK:
        rs = _CACHE.get(key)
        if rs is not None:
            return rs
        simple_roots(family, rank)  # validates the type
        found = None
        path = _disk_path(family, rank)
        if path is not None and path.exists():
            try:
                data = json.loads(path.read_text())
                found = {tuple(v): tuple(c) for v, c in zip(data["roots"], data["coefficients"])}
            except (OSError, ValueError, KeyError):
                found = None
        if found is None:
            found = _generate(simple_roots(family, rank))
        rs = _assemble(family, rank, found)
        if path is not None and not path.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(f".{os.getpid()}.tmp")
            tmp.write_text(json.dumps(rs.to_json()))
            os.replace(tmp, path)
        _CACHE[key] = rs
        return rs


def coxeter_order_bfs(rs: RootSystem) -> int:
    """|W| by breadth-first search over root permutations."""
    start = rs.identity
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for j in range(rs.rank):
            v = rs.times_simple(w, j)
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen)


# ---------------------------------------------------------------------------
# Words and normal forms


def _alphabet(rs: RootSystem, alphabet: Sequence[Generator] | None) -> dict:
    gens = list(alphabet) if alphabet is not None else standard_generators(rs.rank)
    if len(gens) != rs.rank:
        raise ArtinError("alphabet size does not match the rank")
    return {g: j for j, g in enumerate(gens)}


def word_to_element(w: Word, rs: RootSystem, alphabet: Sequence[Generator] | None = None) -> tuple:
    index = _alphabet(rs, alphabet)
    el = rs.identity
    for g, e in w.letters:
        if g not in index:
            raise ForeignLetterError(f"{g} is not a generator of {rs.name}")
        if e != 1:
            raise WordError("word_to_element expects a positive word")
        el = rs.times_simple(el, index[g])
    return el


@dataclass(frozen=True)
class GarsideForm:
    delta_power: int
    factors: tuple  # root-index permutations, none trivial or equal to w0

    def words(self, rs: RootSystem) -> list:
        return [[j + 1 for j in rs.reduced_word(f)] for f in self.factors]

    def to_json(self, rs: RootSystem) -> dict:
        return {"type": rs.name, "delta_power": self.delta_power,
                "factors": [" ".join(f"x{j}" for j in word) for word in self.words(rs)]}


def _normalize_pair(rs: RootSystem, s: tuple, t: tuple) -> tuple:
    """Move left descents of t into s while that keeps s simple."""
    npos = rs.n_positive
    moved = False
    while True:
        inv = rs.inverse(t)
        for j in range(rs.rank):
            if inv[j] >= npos and s[j] < npos:
                s = rs.times_simple(s, j)
                t = rs.simple_times(j, t)
                moved = True
                break
        else:
            return s, t, moved


def _append_simple(rs: RootSystem, factors: list, a: tuple) -> None:
    factors.append(a)
    k = len(factors) - 1
    while k > 0:
        s, t, moved = _normalize_pair(rs, factors[k - 1], factors[k])
        if not moved:
            break
        factors[k - 1], factors[k] = s, t
        k -= 1


class _Builder:
    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.power = 0
        self.factors: list = []

    def push(self, j: int, e: int) -> None:
        rs = self.rs
        if e == 1:
            simple = rs.reflections[j]
        else:
            # x^-1 = Delta^-1 (Delta x^-1); Delta passes left through tau
            self.power -= 1
            self.factors = [rs.tau(f) for f in self.factors]
            simple = rs.compose(rs.w0, rs.reflections[j])
        _append_simple(rs, self.factors, simple)
        self._tidy()

    def _tidy(self) -> None:
        rs = self.rs
        w0, ident = rs.w0, rs.identity
        while self.factors and self.factors[0] == w0:
            self.factors.pop(0)
            self.power += 1
        self.factors = [f for f in self.factors if f != ident]

    def form(self) -> GarsideForm:
        return GarsideForm(self.power, tuple(self.factors))


def normal_form(w: Word, rs: RootSystem | str, alphabet: Sequence[Generator] | None = None) -> GarsideForm:
    if isinstance(rs, str):
        rs = build_root_system(rs)
    index = _alphabet(rs, alphabet)
    b = _Builder(rs)
    for g, e in w.letters:
        if g not in index:
            raise ForeignLetterError(f"{g} is not a generator of {rs.name}")
        b.push(index[g], e)
    return b.form()


def equal(w1: Word, w2: Word, rs: RootSystem | str, alphabet: Sequence[Generator] | None = None) -> bool:
    if isinstance(rs, str):
        rs = build_root_system(rs)
    return normal_form(w1, rs, alphabet) == normal_form(w2, rs, alphabet)


def is_left_weighted(rs: RootSystem, form: GarsideForm) -> bool:
    for s, t in zip(form.factors, form.factors[1:]):
        for j in range(rs.rank):
            if s[j] < rs.n_positive and rs.inverse(t)[j] >= rs.n_positive:
                return False
    return True


def longest_word(rs: RootSystem, alphabet: Sequence[Generator] | None = None) -> Word:
    gens = list(alphabet) if alphabet is not None else standard_generators(rs.rank)
    return Word([(gens[j], 1) for j in rs.reduced_word(rs.w0)])


# ---------------------------------------------------------------------------
# Text input for the nf command


def parse_word_expr(text: str, rank: int | None = None) -> Word:
    """Parse juxtaposed tokens ``x1``..``xl`` with ``^k`` and parenthesized powers."""
    tokens = _tokenize(text)
    pos = 0

    def parse_seq(depth):
        nonlocal pos
        out = Word()
        while pos < len(tokens):
            tok = tokens[pos]
            if tok == ")":
                if depth == 0:
                    raise WordError("unbalanced ')'")
                return out
            if tok == "(":
                pos += 1
                inner = parse_seq(depth + 1)
                if pos >= len(tokens) or tokens[pos] != ")":
                    raise WordError("missing ')'")
                pos += 1
                atom = inner
            elif tok[0] == "x":
                j = int(tok[1:])
                if j < 1 or (rank is not None and j > rank):
                    raise ForeignLetterError(f"{tok} is out of range")
                atom = Word.of(Generator.parse(f"x.{j}"))
                pos += 1
            else:
                raise WordError(f"unexpected token {tok!r}")
            if pos < len(tokens) and tokens[pos] == "^":
                pos += 1
                if pos >= len(tokens):
                    raise WordError("missing exponent")
                try:
                    k = int(tokens[pos])
                except ValueError:
                    raise WordError(f"bad exponent {tokens[pos]!r}") from None
                pos += 1
                atom = atom ** k
            out = out * atom
        if depth:
            raise WordError("missing ')'")
        return out

    return parse_seq(0)


def _tokenize(text: str) -> list:
    import re

    tokens = []
    for m in re.finditer(r"\s*(?:(x\d+)|(-?\d+)|([()^])|(\S))", text):
        if m.group(4):
            raise WordError(f"unexpected character {m.group(4)!r}")
        tokens.append(m.group(1) or m.group(2) or m.group(3))
    return tokens
