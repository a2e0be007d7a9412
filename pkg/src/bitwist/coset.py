"""Bounded Todd-Coxeter coset enumeration over the trivial subgroup.

HLT strategy: every relator is scanned from every live coset in order,
defining new cosets to fill gaps.  Coincidences are processed at once
with a union-find forest.  Columns are letter codes (``2*g`` for ``x_g``,
``2*g + 1`` for its inverse), matching :class:`bitwist.presentation.Word`.

A run that needs more than ``max_cosets`` rows stops with ``exceeded``.
That only means the bound was too small; it says nothing about whether
the group is infinite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .presentation import FinitePresentation

__all__ = [
    "CosetTable",
    "EnumerationResult",
    "enumerate_cosets",
    "OrderClaim",
    "ClaimReport",
    "verify_order_claims",
]


class _Exceeded(Exception):
    pass


@dataclass(frozen=True)
class CosetTable:
    """Closed coset table: ``rows[c][code]`` is the coset reached from ``c`` by that letter."""

    generator_count: int
    rows: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.rows)

    def check(self, relators: Sequence) -> bool:
        """Every entry defined, each generator acts as a permutation, every relator fixes every coset."""
        n = len(self.rows)
        for code in range(2 * self.generator_count):
            image = [row[code] for row in self.rows]
            if any(c < 0 or c >= n for c in image) or len(set(image)) != n:
                return False
            if any(self.rows[image[c]][code ^ 1] != c for c in range(n)):
                return False
        for w in relators:
            for start in range(n):
                c = start
                for code in w.codes:
                    c = self.rows[c][code]
                if c != start:
                    return False
        return True


@dataclass(frozen=True)
class EnumerationResult:
    order: int | None
    cosets_defined: int
    table: CosetTable | None = field(default=None, repr=False)

    @property
    def exceeded(self) -> bool:
        return self.order is None


def enumerate_cosets(pres: FinitePresentation, max_cosets: int = 100_000) -> EnumerationResult:
    """Order of the group presented by ``pres``, or ``exceeded`` past ``max_cosets`` rows."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    ncols = 2 * pres.generator_count
    rels = [w.cyclically_reduced().codes for w in pres.relators]
    rels = [r for r in rels if r]

    table: list[list[int]] = [[-1] * ncols]
    parent = [0]

    def rep(c: int) -> int:
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c: int, x: int) -> None:
        if len(table) >= max_cosets:
            raise _Exceeded
        d = len(table)
        table.append([-1] * ncols)
        parent.append(d)
        table[c][x] = d
        table[d][x ^ 1] = c

    def merge(a: int, b: int, queue: list[int]) -> None:
        a, b = rep(a), rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            parent[hi] = lo
            queue.append(hi)

    def coincidence(a: int, b: int) -> None:
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            dead = queue[i]
            i += 1
            row = table[dead]
            for x in range(ncols):
                d = row[x]
                if d < 0:
                    continue
                table[d][x ^ 1] = -1
                mu, nu = rep(dead), rep(d)
                if table[mu][x] >= 0:
                    merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] >= 0:
                    merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan_and_fill(c: int, w: tuple[int, ...]) -> None:
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1] >= 0:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                # deduction closes the cycle
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            define(f, w[i])

    try:
        c = 0
        while c < len(table):
            if parent[c] == c:
                for w in rels:
                    scan_and_fill(c, w)
                    if parent[c] != c:
                        break
                else:
                    for x in range(ncols):
                        if parent[c] != c:
                            break
                        if table[c][x] < 0:
                            define(c, x)
            c += 1
    except _Exceeded:
        return EnumerationResult(None, len(table))

    live = [c for c in range(len(table)) if parent[c] == c]
    index = {c: i for i, c in enumerate(live)}
    rows = tuple(tuple(index[rep(d)] for d in table[c]) for c in live)
    closed = CosetTable(pres.generator_count, rows)
    if not closed.check(pres.relators):
        raise AssertionError("coset enumeration produced an inconsistent table")
    return EnumerationResult(len(live), len(table), closed)


@dataclass(frozen=True)
class OrderClaim:
    label: str
    presentation: FinitePresentation
    expected: int


@dataclass(frozen=True)
class ClaimReport:
    label: str
    expected: int
    observed: int | None
    status: str  # "pass", "fail" or "exceeded"


def verify_order_claims(claims: Sequence[OrderClaim], max_cosets: int = 100_000) -> list[ClaimReport]:
    out = []
    for claim in claims:
        res = enumerate_cosets(claim.presentation, max_cosets)
        if res.exceeded:
            status = "exceeded"
        else:
            status = "pass" if res.order == claim.expected else "fail"
        out.append(ClaimReport(claim.label, claim.expected, res.order, status))
    return out
