"""Exact integer linear algebra for first homology of branched cyclic covers.

Two independent routes produce the exponent-sum polynomial of a cover's
cyclic presentation:

* :func:`exponent_polynomial_from_word` reads it off an explicit defining
  word (built by :mod:`bitwist.presentation`);
* :func:`exponent_polynomial_via_Q` runs a continued-fraction recurrence
  over Laurent polynomials directly on the multipliers.

Either polynomial, folded mod ``n`` into a circulant matrix, gives
``H_1`` through the Smith normal form.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Sequence

from .cfrac import MultiplierFunction
from .laurent import LaurentPolynomial
from .presentation import (
    CyclicPresentation,
    FinitePresentation,
    branched_cover_relators,
    eliminate_to_cyclic,
)

__all__ = [
    "IntMatrix",
    "AbelianInvariants",
    "exponent_polynomial_from_word",
    "exponent_polynomial_via_Q",
    "fold_mod_n",
    "circulant",
    "smith_decomposition",
    "smith_normal_form",
    "cyclic_homology",
    "homology",
    "homology_via_presentation",
    "fibonacci",
    "fibonacci_order",
    "detect_period",
    "relator_matrix",
    "abelianization",
]


@dataclass(frozen=True)
class IntMatrix:
    """Rectangular integer matrix; ``rows`` may be 0 (no relators)."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols is required for a matrix without rows")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(rows))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries],
            other.cols,
        )


@dataclass(frozen=True)
class AbelianInvariants:
    """``Z^free_rank + Z/d1 + ... + Z/dr`` with ``d1 | d2 | ... | dr``, all ``di >= 2``."""

    torsion: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        if any(d < 2 for d in t):
            raise ValueError(f"torsion factors must be >= 2, got {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion factors must form a divisibility chain, got {t}")
        object.__setattr__(self, "torsion", t)

    @property
    def order(self) -> int:
        """Group order; 0 encodes an infinite group."""
        if self.free_rank:
            return 0
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return not self.torsion and not self.free_rank

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def exponent_polynomial_from_word(cp: CyclicPresentation) -> LaurentPolynomial:
    """Net exponent of generator ``g`` in the defining word, as the coefficient of ``t^g``."""
    acc: dict[int, int] = {}
    for g, e in cp.defining_word.letters:
        acc[g % cp.n] = acc.get(g % cp.n, 0) + e
    return LaurentPolynomial(acc)


def _q_terms(mf: MultiplierFunction) -> list[LaurentPolynomial]:
    k, lat, lon = mf.k, mf.lat, mf.lon
    out = []
    for i in range(k + 1):
        mid = lat[i] + (lat[i + 1] if i < k else 0) + 2 * lon[i]
        out.append(LaurentPolynomial({1: lon[i], 0: -mid, -1: lon[i]}))
    return out


def exponent_polynomial_via_Q(mf: MultiplierFunction) -> LaurentPolynomial:
    """Numerator of ``Q_0 - 1/(Q_1 - 1/(... - 1/Q_k))``, normalized up to units.

    ``Q_i = m_i t - (l_i + l_{i+1} + 2 m_i) + m_i/t`` (no ``l_{k+1}`` term
    for the last level).  The numerator satisfies ``N_i = Q_i N_{i+1} - N_{i+2}``
    with ``N_{k+1} = 1``, ``N_{k+2} = 0``.
    """
    qs = _q_terms(mf)
    n_next, n_next2 = LaurentPolynomial.monomial(1), LaurentPolynomial()
    for q in reversed(qs):
        n_next, n_next2 = q * n_next - n_next2, n_next
    return n_next.normalized()


def fold_mod_n(p: LaurentPolynomial, n: int) -> LaurentPolynomial:
    return p.fold(n)


def circulant(p: LaurentPolynomial, n: int) -> IntMatrix:
    """Row ``j`` holds the coefficients of ``t^j * p`` folded mod ``n``."""
    base = p.fold(n)
    rows = []
    for j in range(n):
        row = [0] * n
        for e, c in base.coeffs.items():
            row[(e + j) % n] += c
        rows.append(row)
    return IntMatrix.from_rows(rows, n)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_decomposition(mat: IntMatrix, transforms: bool = True):
    """Smith normal form ``S`` with unimodular ``U``, ``V`` such that ``U @ mat @ V == S``.

    Elementary row/column reduction; the pivot is always the entry of least
    absolute value in the current row and column.  Returns ``(S, U, V)``
    as nested lists (``U`` and ``V`` are ``None`` when ``transforms`` is
    false).
    """
    A = [list(r) for r in mat.entries]
    m, n = mat.rows, mat.cols
    U = _identity(m) if transforms else None
    V = _identity(n) if transforms else None

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            if U is not None:
                U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            if V is not None:
                for row in V:
                    row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        if V is not None:
            for row in V:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            # move a smaller remainder into the pivot, if any
            small = None
            for i in range(t + 1, m):
                if A[i][t] and (small is None or abs(A[i][t]) < abs(small[2])):
                    small = ("r", i, A[i][t])
            for j in range(t + 1, n):
                if A[t][j] and (small is None or abs(A[t][j]) < abs(small[2])):
                    small = ("c", j, A[t][j])
            if small is not None:
                if small[0] == "r":
                    swap_rows(t, small[1])
                else:
                    swap_cols(t, small[1])
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            if U is not None:
                U[t] = [-a for a in U[t]]
    return A, U, V


def smith_normal_form(mat: IntMatrix) -> AbelianInvariants:
    """Invariants of ``Z^cols / rowspace(mat)``."""
    S, _, _ = smith_decomposition(mat, transforms=False)
    diag = [S[i][i] for i in range(min(mat.rows, mat.cols))]
    rank = sum(1 for d in diag if d)
    return AbelianInvariants(tuple(d for d in diag if d > 1), mat.cols - rank)


@lru_cache(maxsize=1 << 16)
def _circulant_invariants(folded: tuple[tuple[int, int], ...], n: int) -> AbelianInvariants:
    return smith_normal_form(circulant(LaurentPolynomial(folded), n))


def cyclic_homology(p: LaurentPolynomial, n: int) -> AbelianInvariants:
    """Cokernel of the ``n x n`` circulant of ``p``."""
    return _circulant_invariants(tuple(p.fold(n).coeffs.items()), n)


def homology(mf: MultiplierFunction, n: int) -> AbelianInvariants:
    """``H_1`` of the ``n``-fold branched cyclic cover, via the Q-polynomial route."""
    return cyclic_homology(exponent_polynomial_via_Q(mf), n)


def homology_via_presentation(mf: MultiplierFunction, n: int) -> AbelianInvariants:
    """``H_1`` of the ``n``-fold cover through the eliminated cyclic presentation.

    Abelianizes the relators directly, sharing nothing with :func:`homology`
    beyond the Smith normal form routine.
    """
    cp = eliminate_to_cyclic(branched_cover_relators(mf, n), mf, n)
    return abelianization(cp.to_presentation())


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fibonacci_order(n: int) -> int:
    """Order of the abelianized Fibonacci group ``F(n)``: ``f(n-1) + f(n+1)``, less 2 for even ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    lucas = fibonacci(n - 1) + fibonacci(n + 1)
    return lucas if n % 2 else lucas - 2


def _divides_t_m_minus_1(p: list[int], m: int) -> bool:
    # exact long division of t^m - 1 by p (dense, low to high) over Z
    d = len(p) - 1
    if m < d:
        return False
    rem = [0] * (m + 1)
    rem[0], rem[m] = -1, 1
    lead = p[-1]
    for top in range(m, d - 1, -1):
        c = rem[top]
        if c == 0:
            continue
        if c % lead:
            return False
        q = c // lead
        for i, a in enumerate(p):
            rem[top - d + i] -= q * a
    return not any(rem)


def detect_period(p: LaurentPolynomial, max_m: int = 200) -> tuple[int, int] | None:
    """Least ``m <= max_m`` with ``p0 | t^m - 1``, where ``p = content * p0``.

    ``content`` carries the sign that makes the leading coefficient of
    ``p0`` positive.  Returns ``(content, m)`` or ``None``.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no period")
    coeffs = p.to_list()
    content = 0
    for c in coeffs:
        content = gcd(content, c)
    if coeffs[-1] < 0:
        content = -content
    p0 = [c // content for c in coeffs]
    for m in range(1, max_m + 1):
        if _divides_t_m_minus_1(p0, m):
            return content, m
    return None


def relator_matrix(pres: FinitePresentation) -> IntMatrix:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    rows = []
    for w in pres.relators:
        counts = Counter(w.codes)
        # code 2g is x_g, code 2g + 1 its inverse
        rows.append([counts[2 * g] - counts[2 * g + 1] for g in range(pres.generator_count)])
    return IntMatrix.from_rows(rows, pres.generator_count)


def abelianization(pres: FinitePresentation) -> AbelianInvariants:
    return smith_normal_form(relator_matrix(pres))
