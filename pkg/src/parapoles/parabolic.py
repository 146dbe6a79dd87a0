"""Combinatorial data of a maximal parabolic ``P_l``.

For a node ``l`` the nilradical coroots are the positive coroots with a
nonzero ``l``-coordinate.  From them we read off

* ``kappa = <2 rho_P, alpha_l^vee>`` and ``s_k = kappa/2 - 1``;
* the profile ``m(h, lam)`` of all nilradical coroots by height and
  ``lam``-value;
* the multiset ``Lambda = {(s_i, lam_i)}``: every right drop
  ``m(h, lam) > m(h+1, lam)`` contributes ``m(h, lam) - m(h+1, lam)`` copies of
  ``(h - lam (s_k + 1), lam)``;
* the level sets ``L(d)`` and the normalizers ``a_{P|P}``, ``a_{P|P^op}``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lfactor import LFactorProduct, frac_str
from .rootsystem import CartanType, RootDatum, UsageError, build_root_datum

__all__ = [
    "DerivationError",
    "LambdaEntry",
    "LevelSet",
    "ParabolicDatum",
    "derive_lambda",
    "derive_s_k",
    "level_sets",
    "level_sums",
    "normalizers",
    "parabolic_datum",
    "profile",
]


class DerivationError(AssertionError):
    """An internal consistency check on derived data failed.

    Carries the derivation trace so the offending root datum can be inspected.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or {}


@dataclass(frozen=True, order=True)
class LambdaEntry:
    s: Fraction
    lam: int
    multiplicity: int = 1

    def to_json(self):
        return {"s": frac_str(self.s), "lambda": self.lam, "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class LevelSet:
    d: int
    # (real part, number of imaginary cosets) with repetition, real part decreasing
    entries: tuple[tuple[Fraction, int], ...]

    @property
    def real_parts(self) -> tuple[Fraction, ...]:
        return tuple(r for r, _ in self.entries)

    def __len__(self):
        return len(self.entries)


def _check_node(r: RootDatum, node: int):
    if not isinstance(node, int) or not 1 <= node <= r.rank:
        raise UsageError(f"node {node!r} out of range for {r.cartan} (1..{r.rank})")


def profile(coroots, node: int) -> Counter:
    """``m(h, lam)`` over the given coroot vectors."""
    return Counter((sum(v), v[node - 1]) for v in coroots)


def _kappa(r: RootDatum, node: int) -> int:
    row = r.pairing[node - 1]
    two_rho = [0] * r.rank
    for b in r.roots:
        if b[node - 1] >= 1:
            for j, x in enumerate(b):
                two_rho[j] += x
    return sum(c * a for c, a in zip(two_rho, row))


def derive_s_k(r: RootDatum, node: int) -> Fraction:
    """``s_k`` from ``delta_P = |omega_P|^(2(s_k+1))``, i.e. ``kappa = 2(s_k + 1)``."""
    _check_node(r, node)
    kappa = _kappa(r, node)
    hmax1 = max(sum(v) for v in r.coroots if v[node - 1] == 1)
    if kappa != hmax1 + 1:
        raise DerivationError(
            f"{r.cartan} node {node}: kappa={kappa} but max height at lambda=1 is {hmax1}",
            {"kappa": kappa, "hmax1": hmax1, "pairing_row": r.pairing[node - 1]},
        )
    return Fraction(kappa, 2) - 1


def derive_lambda(r: RootDatum, node: int, s_k: Fraction | None = None) -> tuple[LambdaEntry, ...]:
    """The multiset ``Lambda`` read off the right drops of the full profile.

    Raises ``DerivationError`` if the result violates ``s_i >= 0`` or the
    uniqueness of the top entry (``lam_k = 1`` and ``s_k > s_i / lam_i``).
    """
    _check_node(r, node)
    if s_k is None:
        s_k = derive_s_k(r, node)
    m = profile((v for v in r.coroots if v[node - 1] >= 1), node)
    acc: Counter = Counter()
    for (h, lam), count in m.items():
        drop = count - m.get((h + 1, lam), 0)
        if drop > 0:
            acc[(h - lam * (s_k + 1), lam)] += drop
    entries = tuple(sorted(
        (LambdaEntry(s, lam, k) for (s, lam), k in acc.items()),
        key=lambda e: (e.s / e.lam, e.lam),
    ))
    _validate_lambda(r, node, s_k, entries)
    return entries


def _validate_lambda(r, node, s_k, entries):
    trace = {"s_k": s_k, "lambda": [e.to_json() for e in entries]}
    if any(e.s < 0 for e in entries):
        raise DerivationError(f"{r.cartan} node {node}: negative s in Lambda", trace)
    # the maximum of s_i / lam_i is attained once, at lam = 1
    top = [e for e in entries if e.s / e.lam == s_k]
    if len(top) != 1 or top[0].lam != 1 or top[0].multiplicity != 1:
        raise DerivationError(f"{r.cartan} node {node}: top entry of Lambda is not unique with lambda=1", trace)
    for e in entries:
        if e is not top[0] and not e.s / e.lam < s_k:
            raise DerivationError(f"{r.cartan} node {node}: s_i/lambda_i >= s_k for {e}", trace)


def level_sets(p: "ParabolicDatum") -> dict[int, LevelSet]:
    """``L(d)``: real parts ``(s_i + 1)/d - (s_k + 1)`` over entries with ``lam_i = d``."""
    out: dict[int, list] = {}
    for e in p.lambda_entries:
        x = (e.s + 1) / e.lam - (p.s_k + 1)
        out.setdefault(e.lam, []).extend([(x, e.lam)] * e.multiplicity)
    return {d: LevelSet(d, tuple(sorted(v, key=lambda t: -t[0]))) for d, v in sorted(out.items())}


def level_sums(p: "ParabolicDatum") -> dict[int, LevelSet]:
    """``L_d = sum over multiples lam of d of L(lam)`` (multiset sum)."""
    ls = level_sets(p)
    out = {}
    for d in range(1, p.d0 + 1):
        entries = [t for lam, s in ls.items() if lam % d == 0 for t in s.entries]
        if entries:
            out[d] = LevelSet(d, tuple(sorted(entries, key=lambda t: -t[0])))
    return out


def normalizers(p: "ParabolicDatum") -> tuple[LFactorProduct, LFactorProduct]:
    """``(a_{P|P}, a_{P|P^op})`` as ``prod L(lam s + s_i + 1)`` and ``prod L(lam s - s_i)``."""
    a_pp: Counter = Counter()
    a_op: Counter = Counter()
    for e in p.lambda_entries:
        a_pp[(e.lam, e.s + 1)] += e.multiplicity
        a_op[(e.lam, -e.s)] += e.multiplicity
    return LFactorProduct(a_pp), LFactorProduct(a_op)


@dataclass(frozen=True)
class ParabolicDatum:
    root_datum: RootDatum
    node: int
    levi: tuple[int, ...]          # indices into root_datum.coroots with lam = 0
    nilradical: tuple[int, ...]    # indices with lam >= 1
    kappa: int
    s_k: Fraction
    lambda_entries: tuple[LambdaEntry, ...]

    @property
    def cartan(self) -> CartanType:
        return self.root_datum.cartan

    @property
    def shift(self) -> Fraction:
        """``s_k + 1``."""
        return self.s_k + 1

    @property
    def k(self) -> int:
        return sum(e.multiplicity for e in self.lambda_entries)

    @property
    def d0(self) -> int:
        return max(e.lam for e in self.lambda_entries)

    def nilradical_coroots(self):
        return [self.root_datum.coroots[i] for i in self.nilradical]

    def full_profile(self) -> Counter:
        return profile(self.nilradical_coroots(), self.node)

    @property
    def max_height(self) -> int:
        return max(sum(v) for v in self.nilradical_coroots())

    @property
    def max_lambda(self) -> int:
        return max(v[self.node - 1] for v in self.nilradical_coroots())


@lru_cache(maxsize=None)
def _cached_datum(series: str, rank: int) -> RootDatum:
    return build_root_datum(CartanType(series, rank))


def root_datum(c: CartanType) -> RootDatum:
    """Shared, cached root datum (immutable)."""
    return _cached_datum(c.series, c.rank)


@lru_cache(maxsize=None)
def _cached_parabolic(series: str, rank: int, node: int) -> ParabolicDatum:
    r = _cached_datum(series, rank)
    _check_node(r, node)
    s_k = derive_s_k(r, node)
    lam = derive_lambda(r, node, s_k)
    levi = tuple(i for i, v in enumerate(r.coroots) if v[node - 1] == 0)
    nil = tuple(i for i, v in enumerate(r.coroots) if v[node - 1] >= 1)
    return ParabolicDatum(r, node, levi, nil, int(2 * (s_k + 1)), s_k, lam)


def parabolic_datum(c: CartanType | str, node: int) -> ParabolicDatum:
    if not isinstance(c, CartanType):
        c = CartanType.parse(c)
    if not isinstance(node, int) or not 1 <= node <= c.rank:
        raise UsageError(f"node {node!r} out of range for {c} (1..{c.rank})")
    return _cached_parabolic(c.series, c.rank, node)
