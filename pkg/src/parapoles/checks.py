"""Exhaustive checks over a parabolic quotient.

Every check returns a ``CheckReport``; failures carry a counterexample that
names the representative by its inversion set (as coroot vectors), so it can
be replayed without knowing our internal numbering.

Edge checks read the parent and child profiles row by row from the
``Quotient`` arrays in fixed-size chunks.  Profiles are small integer
vectors over the cells ``(h, lam)``; a neighbour index of ``-1`` points at an
appended zero column.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .lfactor import LFactorProduct, frac_str, pole_locus
from .parabolic import ParabolicDatum, normalizers, parabolic_datum
from .quotient import Quotient, a_w, c_w, d_product, enumerate_quotient
from .rootsystem import CartanType

__all__ = [
    "CHECKS",
    "CheckReport",
    "check_cd_prime",
    "check_comb1",
    "check_comb_minus",
    "check_comb_plus",
    "check_d0",
    "check_direct",
    "check_product_of_L",
    "check_profile_symmetry",
    "check_strip",
    "run_checks",
]

CHUNK = 1 << 16


@dataclass
class CheckReport:
    check: str
    type: str
    node: int
    status: str                     # "verified" | "failed" | "skipped"
    counterexample: dict | None = None
    reason: str | None = None
    detail: dict = field(default_factory=dict)
    millis: int | None = None

    @property
    def ok(self) -> bool:
        return self.status != "failed"

    def to_json(self, timings: bool = False) -> dict:
        out = {"check": self.check, "type": self.type, "node": self.node, "status": self.status,
               "millis": self.millis if timings else None}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.reason is not None:
            out["reason"] = self.reason
        if self.detail:
            out["detail"] = self.detail
        return out


def _report(name, q: Quotient, failure=None, **detail) -> CheckReport:
    p = q.parabolic
    if failure is None:
        return CheckReport(name, str(p.cartan), p.node, "verified", detail=detail)
    return CheckReport(name, str(p.cartan), p.node, "failed", counterexample=failure, detail=detail)


def _rep_payload(q: Quotient, i: int) -> list:
    return [list(q.parabolic.root_datum.coroots[j]) for j in q.rep(i).inversion]


def _edge_payload(q: Quotient, e: int) -> dict:
    ed = q.edge(e)
    return {"inversion_set": _rep_payload(q, ed.parent), "simple": ed.simple,
            "gamma": list(ed.gamma), "h": ed.h, "lambda": ed.lam}


def _ext(m: np.ndarray) -> np.ndarray:
    """Append the zero column addressed by neighbour index -1."""
    return np.concatenate([m.astype(np.int32), np.zeros((len(m), 1), np.int32)], axis=1)


def _left_drops(q: Quotient, m: np.ndarray) -> np.ndarray:
    """``max(0, m(h) - m(h-1))`` per cell."""
    e = _ext(m)
    return np.maximum(0, e[:, :-1] - e[:, q.cell_prev])


def _edge_chunks(q: Quotient):
    for lo in range(0, q.n_edges, CHUNK):
        hi = min(lo + CHUNK, q.n_edges)
        yield lo, q.profile[q.edge_parent[lo:hi]], q.profile[q.edge_child[lo:hi]]


# -- edge checks --------------------------------------------------------------

def check_comb_minus(q: Quotient) -> CheckReport:
    """Left drops never shrink along a covering edge, at any cell."""
    first, failing = None, 0
    for lo, mp, mc in _edge_chunks(q):
        bad = _left_drops(q, mp) > _left_drops(q, mc)
        rows = bad.any(axis=1)
        failing += int(np.count_nonzero(rows))
        if first is None and rows.any():
            e, c = np.argwhere(bad)[0]
            h, lam = q.cells[c]
            first = {"edge": _edge_payload(q, lo + int(e)), "at": {"h": h, "lambda": lam}}
    return _report("comb-", q, first, edges=q.n_edges, failing_edges=failing)


def check_comb_plus(q: Quotient) -> CheckReport:
    """``m_w(h, lam) >= m_w(h+1, lam)`` at the new coroot of each edge.

    Also counts the edges where ``m_w(h, lam) >= m_w(h-1, lam)`` fails, i.e.
    where holomorphy has to come from the invariance alternative instead.
    """
    first, failing, needs_ii = None, 0, 0
    for lo, mp, _ in _edge_chunks(q):
        cell = q.edge_cell[lo:lo + len(mp)]
        e = _ext(mp)
        rows = np.arange(len(mp))
        here = e[rows, cell]
        bad = here < e[rows, q.cell_next[cell]]
        failing += int(np.count_nonzero(bad))
        if first is None and bad.any():
            first = {"edge": _edge_payload(q, lo + int(np.argmax(bad)))}
        needs_ii += int(np.count_nonzero(here < e[rows, q.cell_prev[cell]]))
    return _report("comb+", q, first, edges=q.n_edges, failing_edges=failing,
                   edges_needing_invariance=needs_ii)


def check_comb1(q: Quotient) -> CheckReport:
    """At every cell whose left drop grows by one, ``lam'(h-1) - lam h' < lam``
    for all cells ``(h', lam')`` not yet exhausted by the parent."""
    top = q.top_profile()
    qualifying, failing, first = 0, 0, None
    lam_all = q.cell_lam
    h_all = q.cell_h
    for lo, mp, mc in _edge_chunks(q):
        grow = _left_drops(q, mc) == _left_drops(q, mp) + 1
        e_idx, c_idx = np.nonzero(grow)
        qualifying += len(e_idx)
        if not len(e_idx):
            continue
        deficit = top[None, :] > mp[e_idx].astype(np.int64)
        h, lam = h_all[c_idx], lam_all[c_idx]
        # lam' (h-1) / lam - h' < 1  <=>  lam' (h-1) - lam (h'+1) < 0
        val = lam_all[None, :] * (h - 1)[:, None] - lam[:, None] * (h_all[None, :] + 1)
        bad = deficit & (val >= 0)
        rows = bad.any(axis=1)
        failing += len(np.unique(e_idx[rows]))
        if first is None and rows.any():
            j, c2 = np.argwhere(bad)[0]
            first = {
                "edge": _edge_payload(q, lo + int(e_idx[j])),
                "at": {"h": int(h[j]), "lambda": int(lam[j])},
                "against": {"h": int(h_all[c2]), "lambda": int(lam_all[c2])},
            }
    lams = sorted({int(x) for x in lam_all})
    detail = {"qualifying": qualifying, "failing": failing, "lambda_values": lams}
    if lams == [1]:
        detail["lambda_ge_2_vacuous"] = True
    return _report("comb1", q, first, **detail)


# -- L-factor checks -----------------------------------------------------------

class _KeyGrid:
    """Dense index for keys ``(lam, k)`` with ``c = lam (s_k + 1) - k``."""

    def __init__(self, q: Quotient):
        self.q = q
        self.lmax = int(q.cell_lam.max())
        self.width = int(q.cell_h.max()) + 2        # k = 0 .. hmax + 1
        self.size = self.lmax * self.width
        self.lam = np.repeat(np.arange(1, self.lmax + 1), self.width)
        self.k = np.tile(np.arange(self.width), self.lmax)
        # dense profile columns: cell -> (lam, h)
        self.cell_slot = (q.cell_lam - 1) * self.width + q.cell_h

    def index(self, lam: int, k: int) -> int:
        return (lam - 1) * self.width + k

    def dense(self, p: LFactorProduct) -> np.ndarray:
        out = np.zeros(self.size, dtype=np.int64)
        shift = self.q.parabolic.shift
        for (lam, c), e in p.items():
            k = lam * shift - c
            if k.denominator != 1 or not 0 <= k < self.width or lam > self.lmax:
                raise ValueError(f"key ({lam}, {c}) outside the grid")
            out[self.index(lam, int(k))] = e
        return out

    def product(self, row: np.ndarray) -> LFactorProduct:
        shift = self.q.parabolic.shift
        return LFactorProduct({(int(self.lam[j]), int(self.lam[j]) * shift - int(self.k[j])): int(row[j])
                               for j in np.nonzero(row)[0]})

    def profile_dense(self, m: np.ndarray) -> np.ndarray:
        out = np.zeros((len(m), self.size + 1), dtype=np.int64)    # last slot stays zero
        out[:, self.cell_slot] = m
        return out

    def cw_closed(self, m: np.ndarray) -> np.ndarray:
        """Exponent rows of ``c_w`` from the telescoped max-formula."""
        g = self.profile_dense(m)[:, :-1].reshape(len(m), self.lmax, self.width)
        nxt = np.zeros_like(g)
        nxt[:, :, :-1] = g[:, :, 1:]
        prv = np.zeros_like(g)
        prv[:, :, 1:] = g[:, :, :-1]
        num = np.maximum(0, g - nxt)                 # at key k = h
        den = np.maximum(0, g - prv)                 # at key k = h - 1
        out = num.copy()
        out[:, :, :-1] -= den[:, :, 1:]
        return out.reshape(len(m), self.size)

    def incidence(self) -> np.ndarray:
        """Per nilradical coroot: +1 at key ``h``, -1 at key ``h - 1``."""
        q = self.q
        inc = np.zeros((len(q.nil), self.size), dtype=np.float64)
        for j, (h, lam) in enumerate(zip(q.nil_h, q.nil_lam)):
            inc[j, self.index(int(lam), int(h))] += 1
            inc[j, self.index(int(lam), int(h) - 1)] -= 1
        return inc


def check_direct(q: Quotient) -> CheckReport:
    p = q.parabolic
    a_pp, a_op = normalizers(p)
    a0 = a_w(p, q.profile_dict(q.top))
    d = d_product(p)
    if a0 != a_op:
        return _report("direct", q, {"a_w0": str(a0), "a_P|Pop": str(a_op)})
    if d != a_pp:
        return _report("direct", q, {"d": str(d), "a_P|P": str(a_pp)})
    return _report("direct", q)


def check_cd_prime(q: Quotient) -> CheckReport:
    p = q.parabolic
    _, a_op = normalizers(p)
    lhs = d_product(p) * c_w(p, q.rep(q.top))
    if lhs != a_op:
        return _report("cdprime", q, {"d*c_w0": str(lhs), "a_P|Pop": str(a_op)})
    return _report("cdprime", q)


def check_product_of_L(q: Quotient) -> CheckReport:
    """For every representative: ``d c_w`` has no negative exponent and the
    denominator of ``c_w`` is dominated by ``d``.

    ``c_w`` is formed twice: from the inversion set one coroot at a time, and
    from the profile by the telescoped formula; the rows must agree.
    """
    grid = _KeyGrid(q)
    dvec = grid.dense(d_product(q.parabolic))
    inc = grid.incidence()
    for lo in range(0, len(q), CHUNK):
        idx = np.arange(lo, min(lo + CHUNK, len(q)))
        bits = q.inversion_positions(idx).astype(np.float64)
        direct = np.rint(bits @ inc).astype(np.int64)
        closed = grid.cw_closed(q.profile[idx])
        diff = np.any(direct != closed, axis=1)
        if diff.any():
            i = int(idx[np.argmax(diff)])
            return _report("productL", q, {"inversion_set": _rep_payload(q, i), "reason": "c_w routes disagree"})
        neg = np.any(dvec[None, :] + closed < 0, axis=1)
        dom = np.any(np.maximum(0, -closed) > dvec[None, :], axis=1)
        bad = neg | dom
        if bad.any():
            i = int(idx[np.argmax(bad)])
            row = closed[i - lo]
            return _report("productL", q, {
                "inversion_set": _rep_payload(q, i),
                "c_w": str(grid.product(row)),
                "d": str(grid.product(dvec)),
                "reason": "negative exponent in d*c_w" if neg[i - lo] else "denominator not dominated by d",
            })
    return _report("productL", q, reps=len(q))


def _unique_products(q: Quotient, grid: _KeyGrid):
    """Distinct exponent rows of ``d c_w`` with one representative index each."""
    dvec = grid.dense(d_product(q.parabolic))
    rows, first = [], []
    for lo in range(0, len(q), CHUNK):
        idx = np.arange(lo, min(lo + CHUNK, len(q)))
        f = dvec[None, :] + grid.cw_closed(q.profile[idx])
        u, k = np.unique(f, axis=0, return_index=True)
        rows.append(u)
        first.append(idx[k])
    f = np.concatenate(rows)
    at = np.concatenate(first)
    u, k = np.unique(f, axis=0, return_index=True)
    return u, at[k]


def check_profile_symmetry(q: Quotient) -> CheckReport:
    p = q.parabolic
    m0 = p.full_profile()
    for (h, lam), m in sorted(m0.items(), key=lambda t: (t[0][1], t[0][0])):
        mirror = 2 * lam * p.shift - h
        other = m0.get((int(mirror), lam), 0) if mirror.denominator == 1 else 0
        if other != m:
            return _report("symmetry", q, {"h": h, "lambda": lam, "mirror_h": frac_str(mirror),
                                           "m": m, "m_mirror": other})
    return _report("symmetry", q)


def check_strip(q: Quotient) -> CheckReport:
    """Every pole of every ``d c_w``, at every character order up to ``d_0``,
    has real part in ``[-(s_k+1), s_k+1]``; also ``h <= lam (2 s_k + 1)`` for each
    nilradical coroot."""
    p = q.parabolic
    bound = 2 * p.s_k + 1
    for h, lam in zip(q.nil_h, q.nil_lam):
        if h > lam * bound:
            return _report("strip", q, {"coroot_bound": {"h": int(h), "lambda": int(lam),
                                                         "limit": frac_str(lam * bound)}})
    grid = _KeyGrid(q)
    rows, at = _unique_products(q, grid)
    x = Fraction(0)
    # x = k / lam - (s_k + 1); |x| <= s_k + 1  <=>  0 <= k <= 2 lam (s_k + 1)
    inside = (grid.k >= 0) & (2 * grid.lam * p.shift.numerator >= grid.k * p.shift.denominator)
    for row, i in zip(rows, at):
        if (row >= 0).all():
            for dp in range(1, p.d0 + 1):
                sel = (grid.lam % dp == 0) & (row > 0)
                if (sel & ~inside).any():
                    j = int(np.argmax(sel & ~inside))
                    x = Fraction(int(grid.k[j]), int(grid.lam[j])) - p.shift
                    return _report("strip", q, {"inversion_set": _rep_payload(q, int(i)),
                                                "character_order": dp, "real_part": frac_str(x)})
        else:
            prod = grid.product(row)
            for dp in range(1, p.d0 + 1):
                for e in pole_locus(prod, dp):
                    if abs(e.real_part) > p.shift:
                        return _report("strip", q, {"inversion_set": _rep_payload(q, int(i)),
                                                    "character_order": dp, "real_part": frac_str(e.real_part)})
    return _report("strip", q, distinct_products=len(rows), bound=frac_str(p.shift))


def check_d0(q: Quotient) -> CheckReport:
    p = q.parabolic
    mark = p.root_datum.highest_coroot[p.node - 1]
    if p.d0 != mark or p.d0 > 6:
        return _report("d0", q, {"d0": p.d0, "highest_coroot_mark": mark})
    return _report("d0", q, d0=p.d0)


CHECKS = {
    "comb-": check_comb_minus,
    "comb+": check_comb_plus,
    "comb1": check_comb1,
    "direct": check_direct,
    "cdprime": check_cd_prime,
    "productL": check_product_of_L,
    "symmetry": check_profile_symmetry,
    "strip": check_strip,
    "d0": check_d0,
}


def run_checks(c: CartanType | str, node: int, names=None, budget: float | None = None) -> list[CheckReport]:
    """Run the named checks (default: all) for one parabolic.

    ``budget`` is in seconds and covers enumeration plus checks; once spent,
    the remaining checks are reported as skipped.
    """
    names = list(CHECKS) if names is None else list(names)
    p: ParabolicDatum = parabolic_datum(c, node)
    start = time.perf_counter()
    q = enumerate_quotient(p)
    out = []
    for name in names:
        elapsed = time.perf_counter() - start
        if budget is not None and elapsed > budget:
            out.append(CheckReport(name, str(p.cartan), p.node, "skipped",
                                   reason=f"time budget of {budget:g}s exhausted"))
            continue
        t0 = time.perf_counter()
        rep = CHECKS[name](q)
        rep.millis = int(1000 * (time.perf_counter() - t0))
        out.append(rep)
    return out
