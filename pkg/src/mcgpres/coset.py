"""Todd-Coxeter enumeration of the cosets of the trivial subgroup.

Felsch strategy: cosets are defined in table order, and after every
definition all consequences are derived by scanning cyclic conjugates of the
relators through the new entry.  Coincidences are resolved with a
union-find queue.  The processing order is fixed, so runs are reproducible.
"""

from __future__ import annotations

from typing import Sequence

from .presentations import Presentation


class EnumerationExhausted(RuntimeError):
    def __init__(self, max_cosets: int):
        self.max_cosets = max_cosets
        super().__init__(f"coset enumeration exceeded {max_cosets} cosets")


def _cyclic_reduce(letters: list) -> list:
    while len(letters) >= 2 and letters[0] == letters[-1] ^ 1:
        letters = letters[1:-1]
    return letters


class CosetTable:
    def __init__(self, n_gens: int, relators: Sequence[Sequence[int]], max_cosets: int):
        self.ncols = 2 * n_gens
        self.relators = [list(r) for r in relators if r]
        self.max_cosets = max_cosets
        self.table: list = [[-1] * self.ncols]
        self.parent: list = [0]
        self.live = 1
        self.deductions: list = []
        # cyclic conjugates of each relator and its inverse, bucketed by first letter
        self.by_first: list = [[] for _ in range(self.ncols)]
        seen = set()
        for r in self.relators:
            inv = [c ^ 1 for c in reversed(r)]
            for word in (r, inv):
                for k in range(len(word)):
                    conj = tuple(word[k:] + word[:k])
                    if conj not in seen:
                        seen.add(conj)
                        self.by_first[conj[0]].append(conj)

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def define(self, coset: int, col: int) -> None:
        if len(self.table) >= self.max_cosets:
            raise EnumerationExhausted(self.max_cosets)
        new = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(new)
        self.live += 1
        self.table[coset][col] = new
        self.table[new][col ^ 1] = coset
        self.deductions.append((coset, col))

    def scan(self, start: int, word: Sequence[int]) -> None:
        t = self.table
        f, i = start, 0
        b, j = start, len(word) - 1
        while i <= j and t[f][word[i]] >= 0:
            f = t[f][word[i]]
            i += 1
        if i > j:
            if f != start:
                self.coincidence(f, start)
            return
        while j >= i and t[b][word[j] ^ 1] >= 0:
            b = t[b][word[j] ^ 1]
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif j == i:
            t[f][word[i]] = b
            t[b][word[i] ^ 1] = f
            self.deductions.append((f, word[i]))

    def process_deductions(self) -> None:
        while self.deductions:
            coset, col = self.deductions.pop()
            if self.find(coset) != coset:
                continue
            for conj in self.by_first[col]:
                if self.find(coset) != coset:
                    break
                self.scan(coset, conj)
            target = self.table[coset][col]
            if target >= 0 and self.find(target) == target:
                for conj in self.by_first[col ^ 1]:
                    if self.find(target) != target:
                        break
                    self.scan(target, conj)

    def coincidence(self, a: int, b: int) -> None:
        queue: list = []
        t = self.table

        def merge(k, l):
            k, l = self.find(k), self.find(l)
            if k == l:
                return
            if k > l:
                k, l = l, k
            self.parent[l] = k
            self.live -= 1
            queue.append(l)

        merge(a, b)
        q = 0
        while q < len(queue):
            g = queue[q]
            q += 1
            for x in range(self.ncols):
                d = t[g][x]
                if d < 0:
                    continue
                if t[d][x ^ 1] == g:
                    t[d][x ^ 1] = -1
                mu, nu = self.find(g), self.find(d)
                if t[mu][x] >= 0:
                    merge(nu, t[mu][x])
                elif t[nu][x ^ 1] >= 0:
                    merge(mu, t[nu][x ^ 1])
                else:
                    t[mu][x] = nu
                    t[nu][x ^ 1] = mu
                    self.deductions.append((mu, x))

    def run(self) -> int:
        coset = 0
        while coset < len(self.table):
            if self.find(coset) == coset:
                for col in range(self.ncols):
                    if self.find(coset) != coset:
                        break
                    if self.table[coset][col] < 0:
                        self.define(coset, col)
                        self.process_deductions()
            coset += 1
        self._verify()
        return self.live

    def _verify(self) -> None:
        # full scan of every relator at every live coset; repairs if needed
        changed = True
        while changed:
            changed = False
            for c in range(len(self.table)):
                if self.find(c) != c:
                    continue
                for r in self.relators:
                    f = c
                    for x in r:
                        nxt = self.table[f][x]
                        if nxt < 0:
                            raise RuntimeError("coset table left incomplete")
                        f = self.find(nxt)
                    if f != c:
                        self.coincidence(f, c)
                        self.process_deductions()
                        changed = True
                        break


def encode_relators(p: Presentation) -> tuple:
    index = {g: k for k, g in enumerate(p.generators)}
    out = []
    for w in p.relators(reduced=True):
        letters = [2 * index[g] + (0 if e == 1 else 1) for g, e in w.letters]
        letters = _cyclic_reduce(letters)
        if letters:
            out.append(letters)
    return len(p.generators), out


def todd_coxeter(p: Presentation, max_cosets: int = 100_000) -> int:
    """Order of the group presented by ``p``; EnumerationExhausted if too large."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    n, rels = encode_relators(p)
    if n == 0:
        return 1
    return CosetTable(n, rels, max_cosets).run()
