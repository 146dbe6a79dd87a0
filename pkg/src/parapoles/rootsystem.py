"""Root and coroot systems of the split simple types, in Bourbaki numbering.

Everything is expressed in simple-(co)root coordinates.  The pairing matrix
follows one convention throughout the package::

    A[i][j] = <alpha_j, alpha_i^vee>

so row ``i`` of ``A`` evaluates a root against the simple coroot
``alpha_i^vee``.  Transposing ``A`` swaps the roles of roots and coroots (and
hence B and C); code that needs ``<alpha_i, alpha_j^vee>`` reads ``A[j][i]``.

Dynkin diagrams (node numbers are Bourbaki's, ``<`` / ``>`` point at the
short root)::

    A_n   1 - 2 - ... - n
    B_n   1 - 2 - ... - (n-1) => n
    C_n   1 - 2 - ... - (n-1) <= n
    D_n   1 - 2 - ... - (n-2) - (n-1)
                          |
                          n
    E_n   1 - 3 - 4 - 5 - ... - n
                  |
                  2
    F_4   1 - 2 => 3 - 4
    G_2   1 <= 2        (alpha_1 short)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

__all__ = [
    "CartanType",
    "RootDatum",
    "UsageError",
    "build_root_datum",
    "height",
    "lambda_value",
    "reflect_coroot",
    "weyl_group_order",
]


class UsageError(ValueError):
    """Invalid type, rank or node supplied by a caller."""


_EXCEPTIONAL_ORDERS = {
    ("E", 6): 51840,
    ("E", 7): 2903040,
    ("E", 8): 696729600,
    ("F", 4): 1152,
    ("G", 2): 12,
}


@dataclass(frozen=True, order=True)
class CartanType:
    series: str
    rank: int

    def __post_init__(self):
        s, n = self.series, self.rank
        if s not in "ABCDEFG" or len(s) != 1:
            raise UsageError(f"unknown series {s!r}")
        if not isinstance(n, int) or n < 1:
            raise UsageError(f"rank must be a positive integer, got {n!r}")
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[s]
        if not ok:
            raise UsageError(f"no simple type {s}_{n}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        """``"E8"``, ``"e8"`` or ``"E_8"`` -> ``CartanType("E", 8)``."""
        t = text.strip().replace("_", "")
        if len(t) < 2 or not t[1:].isdigit():
            raise UsageError(f"cannot parse Cartan type {text!r}")
        return cls(t[0].upper(), int(t[1:]))

    def __str__(self):
        return f"{self.series}{self.rank}"

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)


def weyl_group_order(c: CartanType) -> int:
    n = c.rank
    if c.series == "A":
        return factorial(n + 1)
    if c.series in "BC":
        return 2**n * factorial(n)
    if c.series == "D":
        return 2 ** (n - 1) * factorial(n)
    return _EXCEPTIONAL_ORDERS[(c.series, n)]


def _diagram(c: CartanType) -> tuple[list[tuple[int, int]], list[int]]:
    """Edges (0-based) and squared root lengths per node."""
    s, n = c.series, c.rank
    lengths = [2] * n
    if s in "ABC":
        edges = [(i, i + 1) for i in range(n - 1)]
        if s == "B":
            lengths[n - 1] = 1
        elif s == "C":
            lengths = [1] * n
            lengths[n - 1] = 2
    elif s == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif s == "E":
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
    elif s == "F":
        edges = [(0, 1), (1, 2), (2, 3)]
        lengths = [2, 2, 1, 1]
    else:
        edges = [(0, 1)]
        lengths = [1, 3]
    return edges, lengths


def cartan_matrix(c: CartanType) -> tuple[tuple[int, ...], ...]:
    """Pairing matrix with ``A[i][j] = <alpha_j, alpha_i^vee>``."""
    edges, lengths = _diagram(c)
    n = c.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        # (alpha_i, alpha_j) = -max(|alpha_i|^2, |alpha_j|^2) / 2
        m = max(lengths[i], lengths[j])
        a[i][j] = -(m // lengths[i])
        a[j][i] = -(m // lengths[j])
    return tuple(tuple(r) for r in a)


def _positive_closure(a) -> list[tuple[int, ...]]:
    """Positive roots of the system whose pairing matrix is ``a``."""
    n = len(a)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for b in frontier:
            for i in range(n):
                p = sum(b[j] * a[i][j] for j in range(n))
                if p == 0:
                    continue
                c = list(b)
                c[i] -= p
                c = tuple(c)
                if min(c) >= 0 and c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(seen, key=lambda v: (sum(v), v))


@dataclass(frozen=True)
class RootDatum:
    """Positive roots and coroots of one simple type.

    ``roots[k]`` and ``coroots[k]`` are both sorted by (height, coordinates);
    ``root_to_coroot[k]`` gives the index of ``roots[k]^vee`` in ``coroots``
    and ``coroot_to_root`` is its inverse.
    """

    cartan: CartanType
    pairing: tuple[tuple[int, ...], ...]
    lengths: tuple[int, ...]
    roots: tuple[tuple[int, ...], ...]
    coroots: tuple[tuple[int, ...], ...]
    root_to_coroot: tuple[int, ...]
    coroot_to_root: tuple[int, ...]
    _coroot_index: dict = field(repr=False, compare=False, default_factory=dict)

    @property
    def rank(self) -> int:
        return self.cartan.rank

    def coroot_index(self, v) -> int:
        """Index of a positive coroot; ``KeyError`` if ``v`` is not one."""
        return self._coroot_index[tuple(v)]

    def is_coroot(self, v) -> bool:
        t = tuple(v)
        return t in self._coroot_index or tuple(-x for x in t) in self._coroot_index

    @property
    def highest_coroot(self) -> tuple[int, ...]:
        return self.coroots[-1]

    @property
    def highest_root(self) -> tuple[int, ...]:
        return self.roots[-1]

    def pair_root_coroot(self, root, coroot) -> int:
        """``<root, coroot>`` for vectors in simple-root / simple-coroot coordinates."""
        a = self.pairing
        n = self.rank
        return sum(coroot[i] * root[j] * a[i][j] for i in range(n) for j in range(n))


def build_root_datum(c: CartanType) -> RootDatum:
    if not isinstance(c, CartanType):
        c = CartanType.parse(str(c))
    a = cartan_matrix(c)
    _, lengths = _diagram(c)
    n = c.rank
    at = tuple(tuple(a[j][i] for j in range(n)) for i in range(n))
    roots = _positive_closure(a)
    coroots = _positive_closure(at)
    index = {v: k for k, v in enumerate(coroots)}

    r2c = []
    for b in roots:
        # beta^vee = sum_j 2 b_j |alpha_j|^2 / (2 |beta|^2) alpha_j^vee
        norm = _norm(b, a, lengths)
        v = []
        for j in range(n):
            num = b[j] * lengths[j]
            if (num * 2) % norm:
                raise AssertionError(f"non-integral coroot for {b} in {c}")
            v.append(num * 2 // norm)
        r2c.append(index[tuple(v)])
    c2r = [0] * len(r2c)
    for k, j in enumerate(r2c):
        c2r[j] = k
    if sorted(r2c) != list(range(len(roots))):
        raise AssertionError(f"root/coroot correspondence is not bijective in {c}")
    return RootDatum(c, a, tuple(lengths), tuple(roots), tuple(coroots),
                     tuple(r2c), tuple(c2r), index)


def _norm(b, a, lengths) -> int:
    """``2 (beta, beta)`` where ``(alpha_i, alpha_i) = lengths[i]``."""
    # (alpha_i, alpha_j) = A[i][j] |alpha_i|^2 / 2
    n = len(b)
    return sum(b[i] * b[j] * a[i][j] * lengths[i] for i in range(n) for j in range(n))


def reflect_coroot(r: RootDatum, i: int, v) -> tuple[int, ...]:
    """Apply the simple reflection ``s_i`` (1-based ``i``) to a coroot vector.

    ``s_i(v) = v - <alpha_i, v> alpha_i^vee`` with
    ``<alpha_i, v> = sum_j v_j <alpha_i, alpha_j^vee> = sum_j v_j A[j][i]``.

    >>> g2 = build_root_datum(CartanType("G", 2))
    >>> reflect_coroot(g2, 2, (1, 0))
    (1, 3)
    """
    k = i - 1
    a = r.pairing
    p = sum(v[j] * a[j][k] for j in range(r.rank))
    out = list(v)
    out[k] -= p
    return tuple(out)


def height(v) -> int:
    """Sum of simple-coroot coordinates, i.e. ``sum_alpha <omega_alpha, v>``."""
    return sum(v)


def lambda_value(v, node: int) -> int:
    """``<omega_P, v>``: the coordinate of ``v`` at the (1-based) parabolic node."""
    return v[node - 1]
