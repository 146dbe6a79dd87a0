"""Minimal coset representatives of ``W / W_M`` and their L-factor data.

A representative ``w`` is stored through its inversion set

    Phi_w = {beta^vee > 0 : w beta^vee < 0},

which lies inside the nilradical coroots (those with ``lam >= 1``) and
determines ``w``.  Enumeration is a layered breadth-first search: from ``w``
and a simple index ``i`` the candidate new coroot is ``gamma = w^{-1} alpha_i^vee``;
when ``gamma`` is a nilradical coroot, ``s_i w`` is again minimal, one longer,
and ``Phi_{s_i w} = Phi_w + {gamma}``.

Each layer is held as numpy arrays: the action ``w^{-1}`` on simple coroots
(``cols[k, j] = w^{-1} alpha_j^vee``), the inversion set as a bitset over the
nilradical, and the profile ``m_w`` over the cells ``(h, lam)`` that occur in
the nilradical.  Children are deduplicated on the bitset and each layer is
sorted on it, so the numbering of representatives is canonical.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .lfactor import LFactorProduct
from .parabolic import ParabolicDatum, parabolic_datum
from .rootsystem import CartanType, RootDatum, _positive_closure, weyl_group_order

__all__ = [
    "CosetRep",
    "CoveringEdge",
    "Quotient",
    "QuotientError",
    "VerificationError",
    "a_w",
    "c_w",
    "c_w_closed_form",
    "c_w_factorwise",
    "d_product",
    "clear_cache",
    "enumerate_quotient",
    "levi_weyl_order",
    "quotient_stats",
]

_OFFSET = 7
_BASE = 15


class QuotientError(RuntimeError):
    """The enumeration produced an impossible shape (action-matrix bug)."""


class VerificationError(AssertionError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class CosetRep:
    index: int
    length: int
    inversion: tuple[int, ...]          # indices into RootDatum.coroots
    profile: dict                       # (h, lam) -> count
    action: tuple[tuple[int, ...], ...]  # row j = w^{-1} alpha_j^vee


@dataclass(frozen=True)
class CoveringEdge:
    parent: int
    simple: int                         # 1-based
    child: int
    gamma: tuple[int, ...]
    h: int
    lam: int


def _simple_levi_order(a) -> int:
    """Weyl group order of an irreducible Cartan matrix (root count oracle)."""
    m = len(a)
    n_pos = len(_positive_closure(a))
    laced = all(a[i][j] in (0, -1) for i in range(m) for j in range(m) if i != j)
    fact = 1
    for t in range(2, m + 1):
        fact *= t
    if laced:
        if n_pos == m * (m + 1) // 2:
            return fact * (m + 1)
        if n_pos == m * (m - 1):
            return 2 ** (m - 1) * fact
        return {36: 51840, 63: 2903040, 120: 696729600}[n_pos]
    if m == 2 and n_pos == 6:
        return 12
    if m == 4 and n_pos == 24:
        return 1152
    return 2**m * fact


def levi_weyl_order(r: RootDatum, node: int) -> int:
    """``|W_M|`` from the connected components of the diagram minus ``node``."""
    rest = [i for i in range(r.rank) if i != node - 1]
    seen: set[int] = set()
    order = 1
    for start in rest:
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in rest:
                if v not in seen and r.pairing[u][v] != 0:
                    seen.add(v)
                    stack.append(v)
        comp.sort()
        sub = [[r.pairing[i][j] for j in comp] for i in comp]
        order *= _simple_levi_order(sub)
    return order


class Quotient:
    """The full set of minimal representatives with the covering graph.

    Attributes are numpy arrays indexed by representative number (layer by
    layer, canonical order inside a layer) or by edge number.
    """

    def __init__(self, p: ParabolicDatum):
        self.parabolic = p
        r = p.root_datum
        self.rank = r.rank
        self.nil = np.array(p.nilradical, dtype=np.int64)
        nil_vecs = np.array(p.nilradical_coroots(), dtype=np.int64)
        self.nil_h = nil_vecs.sum(axis=1)
        self.nil_lam = nil_vecs[:, p.node - 1]
        cells = sorted({(int(lam), int(h)) for h, lam in zip(self.nil_h, self.nil_lam)})
        self.cells = [(h, lam) for lam, h in cells]
        cell_index = {c: k for k, c in enumerate(self.cells)}
        self.cell_h = np.array([c[0] for c in self.cells], dtype=np.int64)
        self.cell_lam = np.array([c[1] for c in self.cells], dtype=np.int64)
        self.nil_cell = np.array([cell_index[(int(h), int(l))] for h, l in zip(self.nil_h, self.nil_lam)],
                                 dtype=np.int64)
        # neighbours (h-1, lam), (h+1, lam); -1 means "outside", i.e. a zero entry
        self.cell_prev = np.array([cell_index.get((h - 1, l), -1) for h, l in self.cells], dtype=np.int64)
        self.cell_next = np.array([cell_index.get((h + 1, l), -1) for h, l in self.cells], dtype=np.int64)
        self._enumerate(r, nil_vecs)

    # -- enumeration ------------------------------------------------------

    def _enumerate(self, r: RootDatum, nil_vecs):
        n = r.rank
        n_nil = len(nil_vecs)
        nw = (n_nil + 63) // 64
        pow_ = _BASE ** np.arange(n, dtype=np.int64)
        keys = (nil_vecs + _OFFSET) @ pow_
        key_order = np.argsort(keys)
        sorted_keys = keys[key_order]
        a = np.array(r.pairing, dtype=np.int64)
        ncell = len(self.cells)

        cols = np.eye(n, dtype=np.int8)[None]
        inv = np.zeros((1, nw), dtype=np.uint64)
        prof = np.zeros((1, ncell), dtype=np.int8)
        all_cols, all_inv, all_prof = [cols], [inv], [prof]
        layer_start = [0, 1]
        e_par, e_simple, e_child, e_pos = [], [], [], []
        offset = 0
        while True:
            m = len(cols)
            k = (cols.astype(np.int64) + _OFFSET) @ pow_          # (m, n): key of w^{-1} alpha_i
            slot = np.searchsorted(sorted_keys, k)
            slot = np.minimum(slot, n_nil - 1)
            hit = sorted_keys[slot] == k
            par, simple = np.nonzero(hit)
            if len(par) == 0:
                break
            pos = key_order[slot[par, simple]]
            cinv = inv[par].copy()
            word = pos // 64
            bit = (np.uint64(1) << (pos % 64).astype(np.uint64))
            cinv[np.arange(len(par)), word] |= bit
            order = np.lexsort(cinv.T[::-1])
            cinv_s = cinv[order]
            new = np.ones(len(order), dtype=bool)
            new[1:] = np.any(cinv_s[1:] != cinv_s[:-1], axis=1)
            child_of_sorted = np.cumsum(new) - 1
            child = np.empty(len(order), dtype=np.int64)
            child[order] = child_of_sorted
            first = order[new]
            u = len(first)

            fp, fi = par[first], simple[first]
            cp = cols[fp].astype(np.int64)
            gam = cp[np.arange(u), fi]
            coef = a[:, fi].T                                   # A[j][i]
            ncols = (cp - coef[:, :, None] * gam[:, None, :]).astype(np.int8)
            nprof = prof[fp].copy()
            nprof[np.arange(u), self.nil_cell[pos[first]]] += 1

            nxt = offset + m
            e_par.append(offset + par)
            e_simple.append(simple)
            e_child.append(nxt + child)
            e_pos.append(pos)
            cols, inv, prof = ncols, cinv_s[new], nprof
            all_cols.append(cols)
            all_inv.append(inv)
            all_prof.append(prof)
            offset = nxt
            layer_start.append(offset + u)

        self.cols = np.concatenate(all_cols)
        self.inv = np.concatenate(all_inv)
        self.profile = np.concatenate(all_prof)
        self.layer_start = np.array(layer_start, dtype=np.int64)
        self.length = np.repeat(np.arange(len(layer_start) - 1), np.diff(self.layer_start)).astype(np.int64)
        cat = (lambda xs, dt: np.concatenate(xs).astype(dt) if xs else np.zeros(0, dt))
        self.edge_parent = cat(e_par, np.int64)
        self.edge_simple = cat(e_simple, np.int64)
        self.edge_child = cat(e_child, np.int64)
        self.edge_pos = cat(e_pos, np.int64)
        self.edge_cell = self.nil_cell[self.edge_pos]

        top = self.layer_start[-1] - self.layer_start[-2]
        if top != 1 or self.length[-1] != n_nil:
            raise QuotientError(
                f"{self.parabolic.cartan} node {self.parabolic.node}: top layer has {top} elements "
                f"of length {self.length[-1]}, expected one of length {n_nil}")
        expect = np.array([self.parabolic.full_profile()[c] for c in self.cells])
        if not np.array_equal(self.profile[-1].astype(np.int64), expect):
            raise QuotientError("profile of the top element differs from the full nilradical profile")

    # -- access -----------------------------------------------------------

    def __len__(self):
        return len(self.length)

    @property
    def n_edges(self) -> int:
        return len(self.edge_parent)

    @property
    def top(self) -> int:
        return len(self) - 1

    @property
    def max_length(self) -> int:
        return int(self.length[-1])

    def layers(self):
        """Yield ``(length, start, stop)`` index ranges, shortest first."""
        for j in range(len(self.layer_start) - 1):
            yield j, int(self.layer_start[j]), int(self.layer_start[j + 1])

    def inversion_positions(self, idx) -> np.ndarray:
        """Boolean matrix ``(len(idx), n_nil)`` of inversion-set membership."""
        idx = np.atleast_1d(idx)
        words = self.inv[idx]
        n_nil = len(self.nil)
        out = np.zeros((len(idx), n_nil), dtype=bool)
        for j in range(n_nil):
            out[:, j] = (words[:, j // 64] >> np.uint64(j % 64)) & np.uint64(1)
        return out

    def profile_dict(self, i: int) -> dict:
        row = self.profile[i]
        return {self.cells[k]: int(row[k]) for k in np.nonzero(row)[0]}

    def rep(self, i: int) -> CosetRep:
        mask = self.inversion_positions(i)[0]
        inversion = tuple(int(x) for x in self.nil[mask])
        action = tuple(tuple(int(x) for x in row) for row in self.cols[i])
        return CosetRep(int(i), int(self.length[i]), inversion, self.profile_dict(i), action)

    def edge(self, e: int) -> CoveringEdge:
        pos = int(self.edge_pos[e])
        gamma = self.parabolic.root_datum.coroots[int(self.nil[pos])]
        return CoveringEdge(int(self.edge_parent[e]), int(self.edge_simple[e]) + 1, int(self.edge_child[e]),
                            gamma, int(self.nil_h[pos]), int(self.nil_lam[pos]))

    def top_profile(self) -> np.ndarray:
        return self.profile[-1].astype(np.int64)


_CACHE: dict[tuple[str, int, int], Quotient] = {}


def enumerate_quotient(c: CartanType | RootDatum | ParabolicDatum | str, node: int | None = None) -> Quotient:
    """Enumerate ``W / W_M`` for the maximal parabolic at ``node`` (cached)."""
    if isinstance(c, ParabolicDatum):
        p = c
    else:
        if isinstance(c, RootDatum):
            c = c.cartan
        p = parabolic_datum(c, node)
    key = (p.cartan.series, p.cartan.rank, p.node)
    q = _CACHE.get(key)
    if q is None:
        q = Quotient(p)
        _CACHE[key] = q
    return q


def clear_cache():
    _CACHE.clear()


def quotient_stats(c, node: int | None = None) -> dict:
    q = enumerate_quotient(c, node)
    p = q.parabolic
    hist = np.diff(q.layer_start).tolist()
    return {
        "type": str(p.cartan),
        "node": p.node,
        "count": len(q),
        "expected_count": weyl_group_order(p.cartan) // levi_weyl_order(p.root_datum, p.node),
        "histogram": hist,
        "palindromic": hist == hist[::-1],
        "max_length": q.max_length,
        "edges": q.n_edges,
    }


# -- L-factor products ------------------------------------------------------

def _key(p: ParabolicDatum, lam: int, k: int) -> tuple[int, Fraction]:
    """``L(-k, chi_{s+s_k+1}^lam) = L(lam s + lam (s_k+1) - k, chi^lam)``."""
    return lam, lam * p.shift - k


def c_w_factorwise(p: ParabolicDatum, coroots) -> LFactorProduct:
    """``prod L(-h)/L(1-h)`` over the given coroots, one factor pair each."""
    acc: Counter = Counter()
    for v in coroots:
        h, lam = sum(v), v[p.node - 1]
        acc[_key(p, lam, h)] += 1
        acc[_key(p, lam, h - 1)] -= 1
    return LFactorProduct(acc)


def c_w_closed_form(p: ParabolicDatum, profile: dict) -> LFactorProduct:
    """The telescoped form with ``max(0, m(h) - m(h+1))`` over ``max(0, m(h) - m(h-1))``."""
    acc: Counter = Counter()
    for (h, lam), m in profile.items():
        if m <= 0:
            continue
        up = max(0, m - profile.get((h + 1, lam), 0))
        down = max(0, m - profile.get((h - 1, lam), 0))
        if up:
            acc[_key(p, lam, h)] += up
        if down:
            acc[_key(p, lam, h - 1)] -= down
    return LFactorProduct(acc)


def c_w(p: ParabolicDatum, rep: CosetRep) -> LFactorProduct:
    """``c_w`` computed factor by factor and in closed form; the two must agree."""
    coroots = [p.root_datum.coroots[i] for i in rep.inversion]
    direct = c_w_factorwise(p, coroots)
    closed = c_w_closed_form(p, rep.profile)
    if direct != closed:
        raise VerificationError(
            f"c_w mismatch for {p.cartan} node {p.node}, inversion set {rep.inversion}: {direct} vs {closed}")
    return closed


def a_w(p: ParabolicDatum, profile: dict) -> LFactorProduct:
    """``prod L(-h)^{max(0, m(h) - m(h+1))}`` (right drops)."""
    acc: Counter = Counter()
    for (h, lam), m in profile.items():
        up = max(0, m - profile.get((h + 1, lam), 0))
        if up:
            acc[_key(p, lam, h)] += up
    return LFactorProduct(acc)


def d_product(p: ParabolicDatum) -> LFactorProduct:
    """``prod L(1-h)^{max(0, m_{w0}(h) - m_{w0}(h-1))}`` (left drops of the full profile)."""
    m0 = p.full_profile()
    acc: Counter = Counter()
    for (h, lam), m in m0.items():
        down = max(0, m - m0.get((h - 1, lam), 0))
        if down:
            acc[_key(p, lam, h - 1)] += down
    return LFactorProduct(acc)
