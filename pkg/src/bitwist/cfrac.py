"""Continued fractions and two-bridge knot invariants of multiplier functions.

A multiplier function is the pair of integer sequences ``lat`` (each entry
``+1`` or ``-1``) and ``lon`` (arbitrary integers).  Its knot is the
numerator closure of the rational tangle with continued fraction
``[2*lat[0], 2*lon[0], 2*lat[1], 2*lon[1], ...]``.

All arithmetic is exact and projective, so ``1/0`` is the point at
infinity and zero terms are legal anywhere in a continued fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import NotAKnot, NotExpandable

__all__ = [
    "ProjectiveFraction",
    "MultiplierFunction",
    "eval_cf",
    "invariant_of_multipliers",
    "is_normalized",
    "mirror",
    "even_cf_expansion",
    "realize_knot",
    "knots_equivalent",
]


@dataclass(frozen=True, slots=True)
class ProjectiveFraction:
    """A reduced fraction ``num/den`` in Q u {inf}.

    Stored canonically: ``gcd(|num|, |den|) == 1``, ``den >= 0`` and
    infinity is ``1/0``.
    """

    num: int
    den: int = 1

    def __post_init__(self):
        a, b = int(self.num), int(self.den)
        if a == 0 and b == 0:
            raise ValueError("0/0 is not a projective fraction")
        g = gcd(a, b)
        a, b = a // g, b // g
        if b < 0 or (b == 0 and a < 0):
            a, b = -a, -b
        object.__setattr__(self, "num", a)
        object.__setattr__(self, "den", b)

    @classmethod
    def _reduced(cls, num: int, den: int) -> "ProjectiveFraction":
        # caller guarantees canonical form; skips the gcd
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    @classmethod
    def parse(cls, text: str) -> "ProjectiveFraction":
        text = text.strip()
        if text.lower() in ("inf", "infinity", "oo"):
            return cls(1, 0)
        if "/" in text:
            a, b = text.split("/", 1)
            return cls(int(a), int(b))
        return cls(int(text), 1)

    @classmethod
    def from_fraction(cls, x: Fraction | int) -> "ProjectiveFraction":
        x = Fraction(x)
        return cls(x.numerator, x.denominator)

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    def to_fraction(self) -> Fraction:
        if self.is_infinite:
            raise ZeroDivisionError("infinity has no rational value")
        return Fraction(self.num, self.den)

    def reciprocal(self) -> "ProjectiveFraction":
        return ProjectiveFraction(self.den, self.num)

    def __neg__(self) -> "ProjectiveFraction":
        if self.is_infinite:
            return self
        return ProjectiveFraction(-self.num, self.den)

    def add_int(self, c: int) -> "ProjectiveFraction":
        if self.den == 0:
            return self
        # gcd(p + c*q, q) = gcd(p, q) = 1, so the result is already reduced
        return ProjectiveFraction._reduced(self.num + c * self.den, self.den)

    def __str__(self) -> str:
        if self.is_infinite:
            return "inf"
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"


@dataclass(frozen=True)
class MultiplierFunction:
    """Bi-twist multipliers: latitudinal ``lat`` (each +-1) and longitudinal ``lon``."""

    lat: tuple[int, ...]
    lon: tuple[int, ...]

    def __post_init__(self):
        lat = tuple(int(x) for x in self.lat)
        lon = tuple(int(x) for x in self.lon)
        if not lat:
            raise ValueError("a multiplier function needs at least one level")
        if len(lat) != len(lon):
            raise ValueError(f"lat and lon differ in length ({len(lat)} != {len(lon)})")
        bad = [x for x in lat if x not in (1, -1)]
        if bad:
            raise ValueError(f"latitudinal multipliers must be +1 or -1, got {bad[0]}")
        object.__setattr__(self, "lat", lat)
        object.__setattr__(self, "lon", lon)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "MultiplierFunction":
        pairs = list(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    @classmethod
    def parse(cls, text: str) -> "MultiplierFunction":
        """Parse ``"l0,m0;l1,m1;..."``."""
        pairs = []
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            parts = [p.strip() for p in chunk.split(",")]
            if len(parts) != 2:
                raise ValueError(f"expected 'l,m' pair, got {chunk!r}")
            pairs.append((int(parts[0]), int(parts[1])))
        return cls.from_pairs(pairs)

    @property
    def k(self) -> int:
        return len(self.lat) - 1

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.lat, self.lon))

    def cf_terms(self) -> list[int]:
        terms = []
        for l, m in zip(self.lat, self.lon):
            terms += [2 * l, 2 * m]
        return terms

    def __str__(self) -> str:
        return ";".join(f"{l},{m}" for l, m in zip(self.lat, self.lon))


def eval_cf(terms: Sequence[int]) -> ProjectiveFraction:
    """Evaluate ``a0 + 1/(a1 + 1/(... + 1/an))`` in Q u {inf}.

    Uses the convergent recurrence ``p_i = a_i p_{i-1} + p_{i-2}`` (same for
    ``q``), which never divides and so handles zero terms and infinity.
    """
    if len(terms) == 0:
        raise ValueError("continued fraction needs at least one term")
    p_prev, p = 1, int(terms[0])
    q_prev, q = 0, 1
    for a in terms[1:]:
        a = int(a)
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return ProjectiveFraction(p, q)


def invariant_of_multipliers(mf: MultiplierFunction) -> ProjectiveFraction:
    return eval_cf(mf.cf_terms())


def is_normalized(mf: MultiplierFunction) -> bool:
    """Last longitudinal multiplier nonzero, and a zero ``lon[i]`` only
    between equal latitudinal neighbours ``lat[i] == lat[i+1]``."""
    if mf.lon[-1] == 0:
        return False
    return all(mf.lat[i] == mf.lat[i + 1] for i in range(mf.k) if mf.lon[i] == 0)


def mirror(mf: MultiplierFunction) -> MultiplierFunction:
    return MultiplierFunction(tuple(-x for x in mf.lat), tuple(-x for x in mf.lon))


def _nearest_even(p: int, q: int) -> int:
    """Even integer nearest ``p/q``; ties go to the larger one."""
    lo = 2 * (p // (2 * q))
    # p/q >= lo + 1 means the upper neighbour lo + 2 is at least as close
    above = p >= (lo + 1) * q if q > 0 else p <= (lo + 1) * q
    return lo + 2 if above else lo


def even_cf_expansion(x: ProjectiveFraction) -> list[int]:
    """All-even continued fraction of even length for ``p/q``, ``p`` odd, ``q`` even.

    A Euclidean algorithm whose quotients are forced to be even: each step
    takes the even integer nearest the current value.  The values
    alternate between odd/even and even/odd, denominators strictly
    decrease, and the expansion stops when an even/odd value is itself an
    even integer.
    """
    if x.is_infinite or x.num % 2 == 0 or x.den % 2 == 1:
        raise NotExpandable(f"{x} has no all-even expansion of even length")
    p, q = x.num, x.den
    terms: list[int] = []
    while True:
        # odd/even step: never an integer, remainder is nonzero
        c = _nearest_even(p, q)
        terms.append(c)
        p, q = q, p - c * q
        # even/odd step
        if q in (1, -1):
            terms.append(p * q)
            return terms
        c = _nearest_even(p, q)
        terms.append(c)
        p, q = q, p - c * q


def _terms_to_multipliers(terms: Sequence[int]) -> MultiplierFunction:
    # split 2a at a latitudinal slot into |a| copies of 2*sign(a) joined by zero
    # longitudinal terms; x + 1/(0 + 1/y) = x + y keeps the value unchanged
    lat: list[int] = []
    lon: list[int] = []
    for i in range(0, len(terms), 2):
        a, m = terms[i] // 2, terms[i + 1] // 2
        if a == 0:
            raise NotExpandable("zero latitudinal term cannot be realized")
        s = 1 if a > 0 else -1
        for _ in range(abs(a) - 1):
            lat.append(s)
            lon.append(0)
        lat.append(s)
        lon.append(m)
    return MultiplierFunction(tuple(lat), tuple(lon))


def _even_representative(b: int, a: int) -> int:
    r = b % a
    return r if r % 2 == 0 else r - a


def realize_knot(x: ProjectiveFraction) -> frozenset[MultiplierFunction]:
    """Normalized multiplier functions whose knot is the closure of ``T(x)``.

    Uses the two denominators ``b`` and ``b^-1 mod a``; the result has one
    element exactly when ``b^2 = 1 (mod a)``.
    """
    if x.is_infinite:
        raise NotAKnot("the closure of the infinity tangle is the unknot")
    a, b = x.num, x.den
    if a % 2 == 0:
        raise NotAKnot(f"{x}: even numerator gives a two-component link")
    if abs(a) < 3:
        raise NotAKnot(f"{x}: numerator closure is the unknot")
    abs_a = abs(a)
    sign = 1 if a > 0 else -1
    # put the sign on the denominator so residues are taken mod |a|
    b_signed = sign * b
    reps = {b_signed % abs_a, pow(b_signed, -1, abs_a)}
    out = set()
    for r in reps:
        rep = _even_representative(r, abs_a)
        terms = even_cf_expansion(ProjectiveFraction(abs_a, rep))
        out.add(_terms_to_multipliers(terms))
    return frozenset(out)


def _positive_form(x: ProjectiveFraction) -> tuple[int, int]:
    if x.num < 0:
        return -x.num, -x.den
    return x.num, x.den


def knots_equivalent(
    x: ProjectiveFraction, y: ProjectiveFraction, include_mirror: bool = False
) -> bool:
    """Schubert equivalence of the numerator closures of ``T(x)`` and ``T(y)``."""
    ax, bx = _positive_form(x)
    ay, by = _positive_form(y)
    if ax != ay:
        return False
    a = ax
    if a == 1:
        return True
    signs = (1, -1) if include_mirror else (1,)
    by %= a
    candidates = {bx % a}
    if gcd(bx, a) == 1:
        candidates.add(pow(bx, -1, a))
    return any((eps * c) % a == by for eps in signs for c in candidates)
