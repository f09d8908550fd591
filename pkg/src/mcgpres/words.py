"""Free-group words over structured generator names.

A :class:`Generator` names a Dehn twist, a boundary swap, a stable letter of a
graph of groups, or an abstract symbol.  Its canonical text form is
``series.vertex.position`` with absent fields omitted, e.g. ``y.3.5`` for
y_{3,5}, ``x0.1`` for x_{1,0}, ``b.2`` for b_2 and ``z`` for z.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence


class Kind(str, Enum):
    TWIST = "twist"
    SWAP = "swap"
    STABLE = "stable"
    ABSTRACT = "abstract"


# Series whose single number is a vertex index (x_{i,0}, x_{i,1}, z_i, w_{i,k}).
VERTEX_SERIES = frozenset({"x0", "x1", "z", "w0", "w1", "w2"})
# Series whose single number is a position (y_j, u_j, h_j, b_j).
POSITION_SERIES = frozenset({"y", "u", "h"})
TWIST_SERIES = VERTEX_SERIES | POSITION_SERIES
SWAP_SERIES = frozenset({"b"})
RESERVED_SERIES = TWIST_SERIES | SWAP_SERIES

_ABSTRACT_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")
_STABLE_PREFIX = "~"


class WordError(ValueError):
    pass


class UndefinedGeneratorError(WordError):
    def __init__(self, missing: Iterable["Generator"]):
        self.missing = sorted(set(missing), key=Generator.sort_key)
        names = ", ".join(str(g) for g in self.missing)
        super().__init__(f"no image defined for: {names}")


class AlphabetError(WordError):
    def __init__(self, foreign: Iterable["Generator"]):
        self.foreign = sorted(set(foreign), key=Generator.sort_key)
        names = ", ".join(str(g) for g in self.foreign)
        super().__init__(f"letters outside the alphabet: {names}")


@dataclass(frozen=True)
class Generator:
    kind: Kind
    series: str
    vertex: int | None = None
    position: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        s = self.series
        if self.kind is Kind.SWAP and s != "b":
            raise WordError(f"swap generators use series 'b', got {s!r}")
        if self.kind is Kind.TWIST and s not in TWIST_SERIES:
            raise WordError(f"unknown twist series {s!r}")
        if self.kind in (Kind.ABSTRACT, Kind.STABLE):
            if not _ABSTRACT_RE.match(s):
                raise WordError(f"invalid symbol name {s!r}")
            if self.kind is Kind.ABSTRACT and s in RESERVED_SERIES:
                raise WordError(f"series {s!r} is reserved for twists and swaps")
        # One free slot is read as vertex or position depending on the series,
        # which keeps the rendering injective.
        if s in VERTEX_SERIES:
            if self.position is not None:
                raise WordError(f"series {s!r} carries no position index")
        elif self.vertex is not None and self.position is None:
            raise WordError(f"series {s!r} needs a position when a vertex is given")

    def __str__(self) -> str:
        parts = [self.series]
        if self.vertex is not None:
            parts.append(str(self.vertex))
        if self.position is not None:
            parts.append(str(self.position))
        text = ".".join(parts)
        return _STABLE_PREFIX + text if self.kind is Kind.STABLE else text

    def __repr__(self) -> str:
        return f"Generator({str(self)!r})"

    def sort_key(self) -> tuple:
        return _natural_key(str(self))

    @classmethod
    def parse(cls, text: str) -> "Generator":
        kind = None
        if text.startswith(_STABLE_PREFIX):
            kind, text = Kind.STABLE, text[len(_STABLE_PREFIX):]
        series, *nums = text.split(".")
        try:
            values = [int(n) for n in nums]
        except ValueError:
            raise WordError(f"malformed generator {text!r}") from None
        if len(values) > 2:
            raise WordError(f"malformed generator {text!r}")
        if kind is None:
            if series in SWAP_SERIES:
                kind = Kind.SWAP
            elif series in TWIST_SERIES:
                kind = Kind.TWIST
            else:
                kind = Kind.ABSTRACT
        vertex = position = None
        if len(values) == 2:
            vertex, position = values
        elif len(values) == 1:
            if series in VERTEX_SERIES:
                vertex = values[0]
            else:
                position = values[0]
        return cls(kind, series, vertex, position)


def _natural_key(text: str) -> tuple:
    return tuple(
        (0, int(chunk), "") if chunk.isdigit() else (1, 0, chunk)
        for chunk in re.findall(r"\d+|\D+", text)
    )


def twist(series: str, vertex: int | None = None, position: int | None = None) -> Generator:
    return Generator(Kind.TWIST, series, vertex, position)


def swap(vertex: int | None = None, position: int | None = None) -> Generator:
    return Generator(Kind.SWAP, "b", vertex, position)


def abstract(series: str, position: int | None = None) -> Generator:
    return Generator(Kind.ABSTRACT, series, None, position)


def stable(tag: str, vertex: int | None = None, position: int | None = None) -> Generator:
    return Generator(Kind.STABLE, tag, vertex, position)


def gen(text: str) -> Generator:
    return Generator.parse(text)


Letter = tuple  # (Generator, +1 | -1)


def _free_reduce(letters: Sequence[Letter]) -> tuple:
    out: list = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


class Word:
    """An immutable free-group word.

    ``letters`` keeps the sequence exactly as built (possibly unreduced, so
    printed relations survive verbatim); equality and hashing use the freely
    reduced form.
    """

    __slots__ = ("letters", "_reduced")

    def __init__(self, letters: Iterable[Letter] = ()):
        checked = []
        for g, e in letters:
            if not isinstance(g, Generator):
                raise WordError(f"not a Generator: {g!r}")
            if e not in (1, -1):
                raise WordError(f"exponent must be +1 or -1, got {e!r}")
            checked.append((g, e))
        object.__setattr__(self, "letters", tuple(checked))
        object.__setattr__(self, "_reduced", None)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def _raw(cls, letters: tuple) -> "Word":
        w = cls.__new__(cls)
        object.__setattr__(w, "letters", letters)
        object.__setattr__(w, "_reduced", None)
        return w

    @classmethod
    def of(cls, *items) -> "Word":
        """Build from generators, ``(generator, exponent)`` pairs or words.

        Integer exponents other than +-1 are expanded, so ``Word.of((a, 3))``
        is ``a a a``.
        """
        letters: list = []
        for item in items:
            if isinstance(item, Word):
                letters.extend(item.letters)
            elif isinstance(item, Generator):
                letters.append((item, 1))
            else:
                g, e = item
                if isinstance(g, str):
                    g = Generator.parse(g)
                letters.extend([(g, 1 if e > 0 else -1)] * abs(e))
        return cls(letters)

    @property
    def reduced_letters(self) -> tuple:
        if self._reduced is None:
            object.__setattr__(self, "_reduced", _free_reduce(self.letters))
        return self._reduced

    def reduce(self) -> "Word":
        return Word._raw(self.reduced_letters)

    def is_reduced(self) -> bool:
        return len(self.reduced_letters) == len(self.letters)

    def inverse(self) -> "Word":
        return Word._raw(tuple((g, -e) for g, e in reversed(self.letters)))

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word._raw(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** -n
        return Word._raw(self.letters * n)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.reduced_letters == other.reduced_letters

    def __hash__(self) -> int:
        return hash(self.reduced_letters)

    def generators(self) -> set:
        return {g for g, _ in self.letters}

    def is_positive(self) -> bool:
        return all(e == 1 for _, e in self.letters)

    def runs(self) -> list:
        """Run-length form: consecutive equal letters merged, signs never mixed."""
        out: list = []
        for g, e in self.letters:
            if out and out[-1][0] == g and (out[-1][1] > 0) == (e > 0):
                out[-1][1] += e
            else:
                out.append([g, e])
        return [(g, e) for g, e in out]

    def to_json(self) -> list:
        return [[str(g), e] for g, e in self.runs()]

    @classmethod
    def from_json(cls, data) -> "Word":
        letters = []
        for name, e in data:
            if not isinstance(e, int) or e == 0:
                raise WordError(f"bad exponent {e!r} for {name!r}")
            letters.extend([(Generator.parse(name), 1 if e > 0 else -1)] * abs(e))
        return cls(letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(str(g) if e == 1 else f"{g}^{e}" for g, e in self.runs())

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


IDENTITY = Word()


def reduce(w: Word) -> Word:
    return w.reduce()


def substitute(w: Word, mapping: Mapping[Generator, Word], *, partial: bool = False) -> Word:
    """Homomorphic image of ``w``; result is freely reduced.

    With ``partial=True`` letters missing from ``mapping`` are kept as they are.
    """
    if not partial:
        missing = {g for g, _ in w.letters if g not in mapping}
        if missing:
            raise UndefinedGeneratorError(missing)
    out: list = []
    for g, e in w.letters:
        image = mapping.get(g)
        if image is None:
            out.append((g, e))
        elif e == 1:
            out.extend(image.letters)
        else:
            out.extend(image.inverse().letters)
    return Word._raw(_free_reduce(out))


def exponent_sums(w: Word, gens: Sequence[Generator]) -> list:
    index = {g: k for k, g in enumerate(gens)}
    foreign = {g for g, _ in w.letters if g not in index}
    if foreign:
        raise AlphabetError(foreign)
    sums = [0] * len(gens)
    for g, e in w.letters:
        sums[index[g]] += e
    return sums


def alternating(a: Generator, b: Generator, m: int) -> Word:
    """The positive word a b a b ... of length m."""
    return Word([((a, b)[k % 2], 1) for k in range(m)])


def product(gens: Iterable[Generator]) -> Word:
    return Word([(g, 1) for g in gens])
