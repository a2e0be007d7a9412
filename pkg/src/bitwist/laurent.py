"""Integer Laurent polynomials in one variable ``t``."""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPolynomial:
    """Finite sum of ``c * t**e`` with integer ``c`` and ``e``; no zero coefficients stored."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._coeffs = {e: c for e, c in sorted(acc.items()) if c != 0}

    @classmethod
    def from_list(cls, coeffs: Iterable[int], low: int = 0) -> "LaurentPolynomial":
        """``from_list([1, -1, 1])`` is ``1 - t + t^2``."""
        return cls((low + i, c) for i, c in enumerate(coeffs))

    @classmethod
    def monomial(cls, c: int = 1, e: int = 0) -> "LaurentPolynomial":
        return cls({e: c})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def low(self) -> int:
        return min(self._coeffs) if self._coeffs else 0

    def high(self) -> int:
        return max(self._coeffs) if self._coeffs else 0

    def __getitem__(self, e: int) -> int:
        return self._coeffs.get(e, 0)

    def to_list(self) -> list[int]:
        """Dense coefficients from ``low()`` to ``high()``."""
        if not self._coeffs:
            return []
        lo = self.low()
        return [self[e] for e in range(lo, self.high() + 1)]

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.monomial(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.monomial(other)
        return LaurentPolynomial(list(self._coeffs.items()) + list(other._coeffs.items()))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.monomial(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial({e: c * other for e, c in self._coeffs.items()})
        acc: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def shift(self, s: int) -> "LaurentPolynomial":
        """Multiply by ``t**s``."""
        return LaurentPolynomial({e + s: c for e, c in self._coeffs.items()})

    def normalized(self) -> "LaurentPolynomial":
        """Canonical representative up to units ``+-t^s``: lowest exponent 0, positive constant term."""
        if not self._coeffs:
            return self
        p = self.shift(-self.low())
        return -p if p[0] < 0 else p

    def fold(self, n: int) -> "LaurentPolynomial":
        """Reduce exponents mod ``n`` (into ``0..n-1``) and sum coefficients."""
        if n < 1:
            raise ValueError("n must be positive")
        return LaurentPolynomial((e % n, c) for e, c in self._coeffs.items())

    def __repr__(self):
        return f"LaurentPolynomial({self._coeffs!r})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in self._coeffs.items():
            if e == 0:
                mono = str(abs(c))
            else:
                var = "t" if e == 1 else f"t^{e}"
                mono = var if abs(c) == 1 else f"{abs(c)}*{var}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out
