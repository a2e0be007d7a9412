"""Rolfsen-twist reduction of the chain surgery diagram of a multiplier function.

The diagram has, for each level ``j = 0..k``, three unknotted surgery
curves: ``O_j`` (coefficient 0), ``L_j`` (coefficient ``1/lat[j]``) and
``M_j`` (coefficient ``1/lon[j]``, infinite when ``lon[j] == 0``).  ``L_j``
links ``O_j`` and ``O_{j-1}``; ``M_j`` only encircles two strands of the
knot axis.

Curves are removed top-down in the order ``M_k, L_k, O_k, M_{k-1}, ...``.
Each twist turns the twisted curve's coefficient into infinity, updates
the coefficients and mutual linking of the curves threaded through it, and
may add twists to the axis.  The axis twists accumulate as a rational
tangle continued fraction; when the diagram is empty the axis is the
denominator closure of that tangle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, NamedTuple

from .cfrac import MultiplierFunction, ProjectiveFraction, eval_cf
from .errors import DivisionUndefined, MalformedState

__all__ = [
    "TangleCF",
    "Level",
    "ChainDiagram",
    "Move",
    "ReductionTrace",
    "build_chain",
    "rolfsen_twist",
    "reduce",
    "replay",
    "closure_fraction",
]

INF = ProjectiveFraction(1, 0)


@dataclass
class TangleCF:
    """Axis twist counts in build order: the first twist made comes first."""

    terms: list[int] = field(default_factory=list)

    def evaluation_order(self) -> list[int]:
        return list(reversed(self.terms))

    def value(self) -> ProjectiveFraction:
        if not self.terms:
            raise DivisionUndefined("the empty tangle has no continued fraction value")
        return eval_cf(self.evaluation_order())


@dataclass(frozen=True)
class Level:
    j: int
    O_coeff: ProjectiveFraction
    L_coeff: ProjectiveFraction
    M_coeff: ProjectiveFraction
    O_present: bool = True
    L_present: bool = True
    M_present: bool = True


class ChainDiagram:
    """Surgery curves ``O_j``, ``L_j``, ``M_j`` with coefficients, pairwise linking and the axis tangle.

    Curves are named ``"O3"``, ``"L0"`` and so on.  ``links[a][b]`` is the
    nonzero linking number of two present curves (absent means unlinked).
    ``started`` records whether the axis has been twisted yet; before that,
    removing curves leaves the axis trivial.
    """

    __slots__ = ("k", "coeffs", "links", "tangle", "started")

    def __init__(self, k: int, coeffs: dict[str, ProjectiveFraction], links: dict[str, dict[str, int]]):
        self.k = k
        self.coeffs = coeffs
        self.links = links
        self.tangle = TangleCF()
        self.started = False

    def copy(self) -> "ChainDiagram":
        out = ChainDiagram(self.k, dict(self.coeffs), {a: dict(nb) for a, nb in self.links.items()})
        out.tangle = TangleCF(list(self.tangle.terms))
        out.started = self.started
        return out

    @property
    def levels(self) -> list[Level]:
        """One record per level, from ``j = k`` down to ``0``; removed curves show coefficient infinity."""
        out = []
        for j in range(self.k, -1, -1):
            names = [f"{kind}{j}" for kind in "OLM"]
            co = [self.coeffs.get(n, INF) for n in names]
            pr = [n in self.coeffs for n in names]
            out.append(Level(j, *co, *pr))
        return out

    def level(self, j: int) -> Level:
        return self.levels[self.k - j]

    def coeff(self, name: str) -> ProjectiveFraction:
        if name not in self.coeffs:
            raise MalformedState(f"curve {name} is not in the diagram")
        return self.coeffs[name]

    def present(self, name: str) -> bool:
        return name in self.coeffs

    def remove(self, name: str) -> None:
        del self.coeffs[name]
        for other in self.links.pop(name, {}):
            del self.links[other][name]

    def curves(self) -> list[str]:
        order = {"M": 0, "L": 1, "O": 2}
        return sorted(self.coeffs, key=lambda c: (-int(c[1:]), order[c[0]]))

    def is_empty(self) -> bool:
        return not self.coeffs

    def neighbours(self, name: str) -> dict[str, int]:
        return dict(self.links.get(name, {}))

    def link(self, a: str, b: str, delta: int) -> None:
        # only nonzero linking numbers are stored
        lk = self.links.setdefault(a, {}).get(b, 0) + delta
        if lk:
            self.links[a][b] = lk
            self.links.setdefault(b, {})[a] = lk
        else:
            self.links[a].pop(b, None)
            self.links.setdefault(b, {}).pop(a, None)

    def snapshot(self) -> dict[str, Any]:
        pairs = {tuple(sorted((a, b))): lk for a, nb in self.links.items() for b, lk in nb.items() if lk}
        return {
            "curves": {c: str(self.coeffs[c]) for c in self.curves()},
            "links": [[list(p), lk] for p, lk in sorted(pairs.items())],
            "tangle": list(self.tangle.terms),
        }


def build_chain(mf: MultiplierFunction) -> ChainDiagram:
    """Initial diagram: ``O_j = 0``, ``L_j = 1/lat[j]``, ``M_j = 1/lon[j]``; ``L_j`` links ``O_j`` and ``O_{j-1}``."""
    coeffs: dict[str, ProjectiveFraction] = {}
    for j in range(mf.k, -1, -1):
        m, l, o = _level_names(j)
        coeffs[m] = _unit_fraction(mf.lon[j])
        coeffs[l] = _unit_fraction(mf.lat[j])
        coeffs[o] = _ZERO
    links = {a: dict(nb) for a, nb in _chain_links(mf.k)}
    return ChainDiagram(mf.k, coeffs, links)


_ZERO = ProjectiveFraction(0, 1)


@lru_cache(maxsize=None)
def _level_names(j: int) -> tuple[str, str, str]:
    return f"M{j}", f"L{j}", f"O{j}"


@lru_cache(maxsize=64)
def _chain_links(k: int) -> tuple[tuple[str, tuple[tuple[str, int], ...]], ...]:
    links: dict[str, dict[str, int]] = {}
    for j in range(k, -1, -1):
        _, l, o = _level_names(j)
        links.setdefault(l, {})[o] = 1
        links.setdefault(o, {})[l] = 1
        if j > 0:
            below = f"O{j - 1}"
            links[l][below] = 1
            links.setdefault(below, {})[l] = 1
    return tuple((a, tuple(nb.items())) for a, nb in links.items())


@lru_cache(maxsize=256)
def _unit_fraction(m: int) -> ProjectiveFraction:
    return ProjectiveFraction(1, m)


def rolfsen_twist(coeff: ProjectiveFraction, n: int) -> ProjectiveFraction:
    """Coefficient ``p/q`` of the twisted curve becomes ``p/(q + n*p)``."""
    return ProjectiveFraction(coeff.num, coeff.den + n * coeff.num)


class Move(NamedTuple):
    """One step of the reduction.

    ``twist`` is ``None`` when the curve already has coefficient infinity
    and is simply deleted.  ``coefficient_updates`` lists the new
    coefficients of the other curves threaded through the twisted one.
    """

    curve: str
    twist: int | None
    coefficient_updates: tuple[tuple[str, ProjectiveFraction], ...] = ()
    tangle_delta: int | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "curve": self.curve,
            "twist": self.twist,
            "coefficient_updates": [[c, str(v)] for c, v in self.coefficient_updates],
            "tangle_delta": self.tangle_delta,
        }


@dataclass
class ReductionTrace:
    moves: list[Move] = field(default_factory=list)

    @property
    def twist_count(self) -> int:
        return sum(1 for m in self.moves if m.twist is not None)

    def to_dict(self) -> dict[str, Any]:
        return {"moves": [m.to_dict() for m in self.moves]}


def _apply(d: ChainDiagram, name: str, twist: int | None) -> Move:
    coeffs = d.coeffs
    coeff = coeffs.get(name)
    if coeff is None:
        raise MalformedState(f"move on absent curve {name}")
    links = d.links
    nbrs = links.pop(name, None) or {}
    updates: tuple = ()
    if twist is not None:
        if coeff.den + twist * coeff.num != 0:
            raise MalformedState(f"twist {twist} on {name} with coefficient {coeff} does not reach infinity")
        if nbrs:
            names = sorted(nbrs) if len(nbrs) > 1 else list(nbrs)
            ups = []
            for other in names:
                # a curve threaded lk times through the twisted one gains twist * lk^2
                lk = nbrs[other]
                new = coeffs[other].add_int(twist * lk * lk)
                coeffs[other] = new
                ups.append((other, new))
            updates = tuple(ups)
            for a in range(len(names) - 1):
                na = names[a]
                for nb in names[a + 1 :]:
                    d.link(na, nb, twist * nbrs[na] * nbrs[nb])
    elif coeff.den != 0:
        raise MalformedState(f"cannot delete {name} with finite coefficient {coeff}")
    del coeffs[name]
    for other in nbrs:
        del links[other][name]

    # axis effect: M twists add horizontal half twists, O twists vertical ones;
    # an infinite M inside the tangle is a zero horizontal term
    kind = name[0]
    delta = None
    if kind == "M":
        if twist is not None:
            delta = 2 * twist
        elif d.started:
            delta = 0
    elif kind == "O" and d.started:
        delta = -2 * twist
    if delta is not None:
        d.tangle.terms.append(delta)
        d.started = True
    return Move(name, twist, updates, delta)


def _choose_twist(name: str, c: ProjectiveFraction) -> int | None:
    if c.den == 0:
        return None
    if c.num != 1 and c.num != -1:
        raise MalformedState(f"{name} has coefficient {c}; no integer twist reaches infinity")
    # p/(q + n p) = inf  <=>  n = -q/p
    return -c.den * c.num


def reduce(diagram: ChainDiagram) -> tuple[TangleCF, ReductionTrace]:
    """Reduce a freshly built chain diagram to the empty diagram.

    The input is not modified.
    """
    if diagram.started or diagram.tangle.terms:
        raise MalformedState("reduce expects a freshly built diagram")
    d = diagram.copy()
    trace = ReductionTrace()
    moves = trace.moves
    for j in range(d.k, -1, -1):
        for name in _level_names(j):
            moves.append(_apply(d, name, _choose_twist(name, d.coeffs[name])))
    if not d.is_empty():
        raise MalformedState(f"curves left after reduction: {d.curves()}")
    return d.tangle, trace


def replay(mf: MultiplierFunction, trace: ReductionTrace) -> ChainDiagram:
    """Re-run the recorded moves on a fresh diagram, checking every recorded effect."""
    d = build_chain(mf)
    for move in trace.moves:
        got = _apply(d, move.curve, move.twist)
        if got != move:
            raise MalformedState(f"replay of {move.curve} diverged: recorded {move}, got {got}")
    return d


def closure_fraction(t: TangleCF) -> ProjectiveFraction:
    """Invariant ``a/b = -d/c`` of the knot whose denominator closure tangle is ``t``.

    ``c/d`` is one over the continued fraction value, because the first
    evaluated term is a vertical twist.  ``c == 0`` means the axis is the
    unknot, which has no fraction; that raises :class:`DivisionUndefined`.
    """
    if not t.terms:
        raise DivisionUndefined("empty tangle: the axis is the unknot")
    x = t.value()
    c, d = x.den, x.num
    if c == 0:
        raise DivisionUndefined("denominator closure fraction has c = 0")
    return ProjectiveFraction(-d, c)
