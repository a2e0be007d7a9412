"""Group presentations for branched cyclic covers of two-bridge knots.

Generators are non-negative integers.  A :class:`Word` stores each letter
as a single integer code ``2*g + s`` where ``s`` is 0 for ``x_g`` and 1 for
``x_g^-1``, so inverting a letter is ``code ^ 1``.  The public view
``Word.letters`` gives ``(g, +1/-1)`` pairs.

Serialized words look like ``"x3 X1 x0"``: lowercase is the generator,
uppercase its inverse, and ``"1"`` is the empty word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cfrac import MultiplierFunction
from .errors import MalformedInput

__all__ = [
    "Word",
    "FinitePresentation",
    "CyclicPresentation",
    "shift",
    "branched_cover_relators",
    "eliminate_to_cyclic",
    "fibonacci_presentation",
    "sieradski_presentation",
    "triangle_presentation",
]


def _free_reduce(codes: Iterable[int]) -> list[int]:
    out: list[int] = []
    for c in codes:
        if out and out[-1] == c ^ 1:
            out.pop()
        else:
            out.append(c)
    return out


@dataclass(frozen=True)
class Word:
    codes: tuple[int, ...] = ()

    @classmethod
    def from_letters(cls, letters: Iterable[tuple[int, int]]) -> "Word":
        codes = []
        for g, e in letters:
            if g < 0 or e not in (1, -1):
                raise ValueError(f"bad letter {(g, e)!r}")
            codes.append(2 * g + (e == -1))
        return cls(tuple(codes))

    @classmethod
    def gen(cls, g: int, e: int = 1) -> "Word":
        return cls.from_letters([(g, e)])

    @classmethod
    def parse(cls, text: str) -> "Word":
        text = text.strip()
        if text in ("", "1"):
            return cls()
        letters = []
        for tok in text.split():
            m = re.fullmatch(r"([xX])(\d+)", tok)
            if not m:
                raise ValueError(f"bad letter {tok!r} in word {text!r}")
            letters.append((int(m.group(2)), 1 if m.group(1) == "x" else -1))
        return cls.from_letters(letters)

    @property
    def letters(self) -> tuple[tuple[int, int], ...]:
        return tuple((c >> 1, -1 if c & 1 else 1) for c in self.codes)

    def generators(self) -> set[int]:
        return {c >> 1 for c in self.codes}

    def __len__(self):
        return len(self.codes)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.codes + other.codes)

    def inverse(self) -> "Word":
        return Word(tuple(c ^ 1 for c in reversed(self.codes)))

    def __pow__(self, e: int) -> "Word":
        base = self if e >= 0 else self.inverse()
        return Word(base.codes * abs(e))

    def reduced(self) -> "Word":
        return Word(tuple(_free_reduce(self.codes)))

    def cyclically_reduced(self) -> "Word":
        codes = _free_reduce(self.codes)
        i, j = 0, len(codes) - 1
        while i < j and codes[i] == codes[j] ^ 1:
            i += 1
            j -= 1
        return Word(tuple(codes[i : j + 1]))

    def exponent_sums(self) -> dict[int, int]:
        acc: dict[int, int] = {}
        for c in self.codes:
            acc[c >> 1] = acc.get(c >> 1, 0) + (-1 if c & 1 else 1)
        return {g: e for g, e in acc.items() if e}

    def __str__(self):
        if not self.codes:
            return "1"
        return " ".join(("X" if c & 1 else "x") + str(c >> 1) for c in self.codes)


def shift(w: Word, n: int, j: int) -> Word:
    """Replace every generator ``g`` by ``(g + j) mod n``."""
    if not w.codes:
        return w
    table = [2 * (((c >> 1) + j) % n) + (c & 1) for c in range(2 * max(n, max(w.codes) // 2 + 1))]
    return Word(tuple(map(table.__getitem__, w.codes)))


@dataclass(frozen=True)
class FinitePresentation:
    generator_count: int
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        if self.generator_count < 1:
            raise ValueError("a presentation needs at least one generator")
        object.__setattr__(self, "relators", tuple(self.relators))
        limit = 2 * self.generator_count
        for w in self.relators:
            if w.codes and max(w.codes) >= limit:
                raise ValueError(f"relator {w} uses a generator >= {self.generator_count}")


@dataclass(frozen=True)
class CyclicPresentation:
    """``<x_0..x_{n-1} | W, phi(W), ..., phi^{n-1}(W)>`` with ``phi: x_g -> x_{g+1 mod n}``."""

    n: int
    defining_word: Word

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if any((c >> 1) >= self.n for c in self.defining_word.codes):
            raise ValueError("defining word uses a generator outside 0..n-1")

    def relators(self) -> list[Word]:
        return [shift(self.defining_word, self.n, j) for j in range(self.n)]

    def to_presentation(self) -> FinitePresentation:
        return FinitePresentation(self.n, tuple(self.relators()))


def fibonacci_presentation(r: int) -> CyclicPresentation:
    """``F(r)``: defining word ``x0 x1 x2^-1`` on ``r`` generators."""
    if r < 1:
        raise ValueError("r must be positive")
    return CyclicPresentation(r, Word.from_letters([(0, 1), (1 % r, 1), (2 % r, -1)]))


def sieradski_presentation(n: int) -> CyclicPresentation:
    """Sieradski group: relators ``x_i^-1 x_{i-1} x_{i+1}``."""
    if n < 1:
        raise ValueError("n must be positive")
    return CyclicPresentation(n, Word.from_letters([(0, -1), ((n - 1) % n, 1), (1 % n, 1)]))


def triangle_presentation(p: int, q: int, r: int) -> FinitePresentation:
    """``<a, b, c | a^p, b^q, c^r, abc>``: the orientation-preserving triangle group."""
    a, b, c = Word.gen(0), Word.gen(1), Word.gen(2)
    return FinitePresentation(3, (a**p, b**q, c**r, a * b * c))


def branched_cover_relators(mf: MultiplierFunction, n: int) -> FinitePresentation:
    """Face-pairing presentation of the ``n``-fold branched cyclic cover.

    Generator ``x(i, j)`` (row ``i = 0..k``, column ``j = 1..n``) has id
    ``i*n + (j-1)``; column arithmetic is mod ``n``.  Relators are listed row
    by row.  Blocks ``[u v^-1]^e`` are expanded literally, so the words are
    not freely reduced.
    """
    if n < 1:
        raise ValueError("n must be positive")
    k, lat, lon = mf.k, mf.lat, mf.lon

    def x(i: int, j: int) -> int:
        return 2 * (i * n + j % n)

    def block(u: int, v: int, e: int) -> list[int]:
        # [u v^-1]^e on letter codes
        if e >= 0:
            return [u, v ^ 1] * e
        return [v, u ^ 1] * (-e)

    relators = []
    for i in range(k + 1):
        for j in range(n):
            me = x(i, j)
            if i == 0:
                codes = [me] if lat[0] == 1 else [me ^ 1]
            else:
                codes = block(me, x(i - 1, j), lat[i])
            codes += block(me, x(i, j + 1), lon[i])
            if i < k:
                codes += block(me, x(i + 1, j), lat[i + 1])
            codes += block(me, x(i, j - 1), lon[i])
            relators.append(Word(tuple(codes)))
    return FinitePresentation((k + 1) * n, tuple(relators))


def _row_shift_table(size: int, n: int, j: int) -> list[int]:
    # code -> code with the column index advanced by j inside its row
    table = []
    for g in range(size):
        row, col = divmod(g, n)
        h = 2 * (row * n + (col + j) % n)
        table += [h, h + 1]
    return table


def eliminate_to_cyclic(pres: FinitePresentation, mf: MultiplierFunction, n: int) -> CyclicPresentation:
    """Tietze-eliminate rows ``1..k`` of generators, leaving a cyclic presentation on row 0.

    Relator ``R(i-1, j)`` contains ``x(i, j)`` exactly once, with exponent
    +-1, so it can be solved for that generator.  Rows are solved top-down
    and substituted into later relators (freely reduced, never cyclically).
    The defining word is the fully substituted ``R(k, 1)``, cyclically
    reduced at the end.

    Because the presentation is invariant under the column shift, only
    ``x(i, 1)`` is solved explicitly; the rest are its shifts.  That
    invariance is checked first.
    """
    k = mf.k
    size = (k + 1) * n
    if pres.generator_count != size or len(pres.relators) != size:
        raise MalformedInput(
            f"expected {size} generators and relators for k={k}, n={n}; "
            f"got {pres.generator_count} and {len(pres.relators)}"
        )
    for j in range(1, n):
        table = _row_shift_table(size, n, j)
        for i in range(k + 1):
            if pres.relators[i * n + j].codes != tuple(map(table.__getitem__, pres.relators[i * n].codes)):
                raise MalformedInput(f"relator R({i},{j + 1}) is not a shift of R({i},1)")

    # images[code] = solved word (row-0 codes) for a letter of rows >= 1; a
    # row-i relator only touches columns 0 and +-1, so only those are built
    images: dict[int, tuple[int, ...]] = {}

    def substitute(codes: Sequence[int]) -> list[int]:
        out = [-2]  # sentinel: never the inverse of a real code
        push, pop, get = out.append, out.pop, images.get
        for c in codes:
            img = get(c)
            if img is None:
                if out[-1] == c ^ 1:
                    pop()
                else:
                    push(c)
                continue
            # images are freely reduced, so cancellation only happens at the seam
            i, size = 0, len(img)
            while i < size and out[-1] == img[i] ^ 1:
                pop()
                i += 1
            out.extend(img[i:] if i else img)
        return out[1:]

    for i in range(1, k + 1):
        rel = substitute(pres.relators[(i - 1) * n].codes)
        target = i * n
        hits = [pos for pos, c in enumerate(rel) if (c >> 1) == target]
        strays = [c for c in rel if (c >> 1) >= n and (c >> 1) != target]
        if len(hits) != 1 or strays:
            raise MalformedInput(
                f"x({i},1) must occur exactly once in R({i - 1},1) after substitution"
            )
        pos = hits[0]
        before, after = rel[:pos], rel[pos + 1 :]
        if rel[pos] & 1:
            # before * x^-1 * after = 1  =>  x = after * before
            sol = _free_reduce(after + before)
        else:
            # before * x * after = 1  =>  x = before^-1 * after^-1
            sol = _free_reduce([d ^ 1 for d in reversed(before)] + [d ^ 1 for d in reversed(after)])
        for j in {0, 1 % n, (n - 1) % n}:
            img = tuple(2 * (((d >> 1) + j) % n) + (d & 1) for d in sol)
            images[2 * (i * n + j)] = img
            images[2 * (i * n + j) + 1] = tuple(d ^ 1 for d in reversed(img))

    final = substitute(pres.relators[k * n].codes)
    if any((c >> 1) >= n for c in final):
        raise MalformedInput("defining word still contains eliminated generators")
    return CyclicPresentation(n, Word(tuple(final)).cyclically_reduced())
