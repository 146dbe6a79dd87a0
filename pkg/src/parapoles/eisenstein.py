"""Candidate poles of degenerate Eisenstein series.

The candidate set is the union, over all ``w`` in ``W/W_M`` and character
orders ``d' <= d_0``, of the poles of ``d c_w``.  Orders are those of each
product on its own; no cancellation across ``w`` is attempted, so ``N`` is an
upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .checks import _KeyGrid, _unique_products
from .lfactor import PERIODICITY_NOTE, LFactorProduct, PoleEntry, frac_str, specialize
from .parabolic import parabolic_datum
from .quotient import d_product, enumerate_quotient
from .rootsystem import CartanType

__all__ = ["PoleReport", "basic_function_numerator", "eisenstein_poles"]


@dataclass
class PoleReport:
    type: str
    node: int
    d0: int
    s_k: Fraction
    poles: tuple[PoleEntry, ...]
    n_max: int
    invariants: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    distinct_products: int = 0

    @property
    def strip_bound(self) -> Fraction:
        return self.s_k + 1

    @property
    def status(self) -> str:
        return "failed" if self.violations else "verified"

    def to_json(self) -> dict:
        return {
            "type": self.type,
            "node": self.node,
            "d0": self.d0,
            "s_k": frac_str(self.s_k),
            "strip_bound": frac_str(self.strip_bound),
            "poles": [e.to_json() for e in self.poles],
            "N": self.n_max,
            "invariants": self.invariants,
            "violations": self.violations,
            "distinct_products": self.distinct_products,
            "status": self.status,
            "note": PERIODICITY_NOTE,
        }


def _in_lattice(x: Fraction, d0: int) -> bool:
    return any((x * d).denominator == 1 for d in range(1, d0 + 1))


def _max_orders(grid: _KeyGrid, rows: np.ndarray, dp: int) -> dict[Fraction, int]:
    """Largest positive pole order per real part over all ``rows`` at order ``dp``.

    Vectorised form of ``pole_locus``: for each real part ``x`` and each
    ``m <= lmax`` sum the exponents with ``m | lam``; an ``m`` selecting no
    factor contributes 0, which is never reported.
    """
    shift = grid.q.parabolic.shift
    cols: dict[Fraction, list[int]] = {}
    for j in np.nonzero((grid.lam % dp == 0) & rows.any(axis=0))[0]:
        cols.setdefault(Fraction(int(grid.k[j]), int(grid.lam[j])) - shift, []).append(j)
    out = {}
    for x, js in cols.items():
        js = np.array(js)
        best = max(int(rows[:, js[grid.lam[js] % m == 0]].sum(axis=1).max(initial=0))
                   for m in range(1, grid.lmax + 1))
        if best > 0:
            out[x] = best
    return out


def eisenstein_poles(c: CartanType | str, node: int) -> PoleReport:
    p = parabolic_datum(c, node)
    q = enumerate_quotient(p)
    grid = _KeyGrid(q)
    rows, _ = _unique_products(q, grid)
    # factors with chi^lam ramified are identically 1 and are skipped per order
    best = {(x, dp): o for dp in range(1, p.d0 + 1) for x, o in _max_orders(grid, rows, dp).items()}
    poles = tuple(PoleEntry(x, dp, o) for (x, dp), o in sorted(best.items()))
    bound = p.shift
    strip = all(abs(e.real_part) <= bound for e in poles)
    lattice = all(_in_lattice(e.real_part, p.d0) for e in poles)
    shifted = all(_in_lattice(e.real_part + bound, p.d0) for e in poles)
    violations = []
    for e in poles:
        if abs(e.real_part) > bound:
            violations.append({"invariant": "strip", "pole": e.to_json()})
    for e in poles:
        if not _in_lattice(e.real_part, p.d0):
            violations.append({"invariant": "lattice", "pole": e.to_json()})
    return PoleReport(
        type=str(p.cartan),
        node=p.node,
        d0=p.d0,
        s_k=p.s_k,
        poles=poles,
        n_max=max((e.max_order for e in poles), default=0),
        invariants={"strip": strip, "lattice": lattice, "lattice_shifted": shifted},
        violations=violations,
        distinct_products=len(rows),
    )


def basic_function_numerator(c: CartanType | str, node: int) -> LFactorProduct:
    """``d`` at the trivial character."""
    return specialize(d_product(parabolic_datum(c, node)), 1)
