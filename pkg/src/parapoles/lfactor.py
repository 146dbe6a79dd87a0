"""Formal products of local L-factors.

A product ``prod L(lam*s + c, chi^lam)^e`` is stored as a map
``(lam, c) -> e`` with ``lam`` a positive integer, ``c`` a ``Fraction`` and
``e`` a nonzero integer.  Nothing is ever evaluated numerically: ``q`` stays
symbolic, poles are described by the real part of ``s`` together with the
character order that makes the relevant factors unramified.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

__all__ = [
    "LFactorProduct",
    "PoleEntry",
    "PoleLocus",
    "PERIODICITY_NOTE",
    "cancel",
    "div",
    "frac_str",
    "is_product_of_L",
    "mul",
    "parse_frac",
    "pole_locus",
    "specialize",
]

PERIODICITY_NOTE = "real parts are modulo the 2*pi*sqrt(-1)/log(q) lattice of imaginary translates"


def frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(text) -> Fraction:
    return Fraction(text)


class LFactorProduct(Mapping):
    """Immutable canonical product of L-factors keyed by ``(lam, c)``."""

    __slots__ = ("_exp", "_hash")

    def __init__(self, exponents: Mapping | Iterable = ()):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        acc: dict[tuple[int, Fraction], int] = {}
        for (lam, c), e in items:
            lam = int(lam)
            if lam < 1:
                raise ValueError(f"character exponent must be positive, got {lam}")
            key = (lam, Fraction(c))
            acc[key] = acc.get(key, 0) + int(e)
        self._exp = {k: acc[k] for k in sorted(acc) if acc[k] != 0}
        self._hash = None

    @classmethod
    def factor(cls, lam: int, c, e: int = 1) -> "LFactorProduct":
        return cls({(lam, c): e})

    def __getitem__(self, key):
        lam, c = key
        return self._exp[(lam, Fraction(c))]

    def __iter__(self):
        return iter(self._exp)

    def __len__(self):
        return len(self._exp)

    def __eq__(self, other):
        if isinstance(other, LFactorProduct):
            return self._exp == other._exp
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._exp.items()))
        return self._hash

    def exponent(self, lam: int, c) -> int:
        return self._exp.get((lam, Fraction(c)), 0)

    def __mul__(self, other: "LFactorProduct") -> "LFactorProduct":
        acc = dict(self._exp)
        for k, e in other._exp.items():
            acc[k] = acc.get(k, 0) + e
        return LFactorProduct(acc)

    def inverse(self) -> "LFactorProduct":
        return LFactorProduct({k: -e for k, e in self._exp.items()})

    def __truediv__(self, other: "LFactorProduct") -> "LFactorProduct":
        return self * other.inverse()

    def __pow__(self, n: int) -> "LFactorProduct":
        return LFactorProduct({k: n * e for k, e in self._exp.items()})

    @property
    def numerator(self) -> "LFactorProduct":
        return LFactorProduct({k: e for k, e in self._exp.items() if e > 0})

    @property
    def denominator(self) -> "LFactorProduct":
        """Factors with negative exponent, returned with positive exponents."""
        return LFactorProduct({k: -e for k, e in self._exp.items() if e < 0})

    def is_product_of_L(self) -> bool:
        return all(e > 0 for e in self._exp.values())

    def dominates(self, other: "LFactorProduct") -> bool:
        """Key-by-key ``self >= other``."""
        keys = set(self._exp) | set(other._exp)
        return all(self._exp.get(k, 0) >= other._exp.get(k, 0) for k in keys)

    def __repr__(self):
        return f"LFactorProduct({{{', '.join(f'({l}, {frac_str(c)!r}): {e}' for (l, c), e in self._exp.items())}}})"

    def __str__(self):
        if not self._exp:
            return "1"
        parts = []
        for (lam, c), e in self._exp.items():
            s = "s" if lam == 1 else f"{lam}s"
            chi = "chi" if lam == 1 else f"chi^{lam}"
            if c > 0:
                arg = f"{s} + {frac_str(c)}"
            elif c < 0:
                arg = f"{s} - {frac_str(-c)}"
            else:
                arg = s
            f = f"L({arg}, {chi})"
            parts.append(f if e == 1 else f"{f}^{e}")
        return " * ".join(parts)

    def to_json(self) -> list:
        return [{"lambda": lam, "c": frac_str(c), "exponent": e} for (lam, c), e in self._exp.items()]

    @classmethod
    def from_json(cls, data) -> "LFactorProduct":
        return cls({(d["lambda"], Fraction(d["c"])): d["exponent"] for d in data})


def mul(p: LFactorProduct, q: LFactorProduct) -> LFactorProduct:
    return p * q


def div(p: LFactorProduct, q: LFactorProduct) -> LFactorProduct:
    return p / q


def cancel(p: LFactorProduct, q: LFactorProduct) -> LFactorProduct:
    """``p / q`` with common factors removed (the canonical form does this already)."""
    return p / q


def is_product_of_L(p: LFactorProduct) -> bool:
    return p.is_product_of_L()


def specialize(p: LFactorProduct, character_order: int) -> LFactorProduct:
    """Drop factors ``L(., chi^lam)`` that are identically 1 for ``chi`` of the given order.

    ``chi^lam`` is unramified exactly when ``character_order`` divides ``lam``.
    """
    if character_order < 1:
        raise ValueError("character order must be positive")
    return LFactorProduct({k: e for k, e in p.items() if k[0] % character_order == 0})


@dataclass(frozen=True, order=True)
class PoleEntry:
    real_part: Fraction
    character_order: int
    max_order: int

    def to_json(self) -> dict:
        return {"real_part": frac_str(self.real_part),
                "character_order": self.character_order,
                "max_order": self.max_order}


@dataclass(frozen=True)
class PoleLocus:
    entries: tuple[PoleEntry, ...]
    note: str = PERIODICITY_NOTE

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def to_json(self) -> dict:
        return {"entries": [e.to_json() for e in self.entries], "note": self.note}


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def pole_locus(p: LFactorProduct, character_order: int = 1) -> PoleLocus:
    """Real parts of the poles of ``p`` at characters of the given order.

    ``L(lam*s + c)`` has poles at ``s = -c/lam + (k/lam) * 2*pi*i/log q``.
    A point with real part ``x`` and imaginary offset ``k/m`` (reduced) meets
    exactly the factors with ``lam*x + c = 0`` and ``m | lam``; its net order is
    the signed sum of their exponents.  The reported order is the maximum over
    ``m`` (``m = 1`` is the real axis), omitted when not positive.
    """
    sp = specialize(p, character_order)
    by_x: dict[Fraction, list[tuple[int, int]]] = {}
    for (lam, c), e in sp.items():
        by_x.setdefault(-c / lam, []).append((lam, e))
    if not by_x:
        return PoleLocus(())
    period = lcm(*(lam for lam, _ in sp))
    out = []
    for x in sorted(by_x):
        keys = by_x[x]
        if not any(e > 0 for _, e in keys):
            continue
        best = max(sum(e for lam, e in keys if lam % m == 0) for m in _divisors(period))
        if best > 0:
            out.append(PoleEntry(x, character_order, best))
    return PoleLocus(tuple(out))
