"""Reduced words for the longest minimal representative ``w0`` of ``W / W_M``.

A word is written left to right as ``w = w_m ... w_2 w_1`` and acts right to
left, so ``w_1`` is the last letter.  Its coroot sequence is

    alpha~_(i) = w_1 w_2 ... w_{i-1} alpha_(i)^vee,   i = 1 .. m,

and for a reduced word of a minimal representative this lists the inversion
set, one new coroot per letter.

Braid moves are addressed by the application index ``i`` of the rightmost
letter they touch.  A commuting swap exchanges coroots ``i`` and ``i+1``; a
length-3 move exchanges ``i`` and ``i+2`` (the middle coroot is the sum of
the two); the length-4 and length-6 moves reverse their block.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

import numpy as np

from .checks import CheckReport
from .parabolic import parabolic_datum
from .quotient import enumerate_quotient
from .rootsystem import CartanType, RootDatum, UsageError

__all__ = [
    "BraidError",
    "NonReducedWord",
    "ReducedWord",
    "braid_move",
    "braid_moves_at",
    "canonical_w0_word",
    "certify_swap_rules",
    "coroot_sequence",
    "epsilon_label",
    "random_rewrites",
    "swap_rule",
    "table_layout",
]


class NonReducedWord(ValueError):
    def __init__(self, message, position):
        super().__init__(message)
        self.position = position


class BraidError(ValueError):
    """The requested braid relation does not match the letters."""


@dataclass(frozen=True)
class ReducedWord:
    cartan: CartanType
    node: int
    letters: tuple[int, ...]        # written order, 1-based simple indices
    canonical: bool = True

    def __len__(self):
        return len(self.letters)

    @property
    def applied(self) -> tuple[int, ...]:
        """Letters in application order ``w_1, w_2, ...``."""
        return self.letters[::-1]

    def __str__(self):
        return " ".join(f"s{i}" for i in self.letters)

    def with_letters(self, letters) -> "ReducedWord":
        return ReducedWord(self.cartan, self.node, tuple(letters), self.canonical)


def _reflect(a, i, v):
    p = sum(v[j] * a[j][i] for j in range(len(v)))
    out = list(v)
    out[i] -= p
    return out


def coroot_sequence(word: ReducedWord, r: RootDatum | None = None) -> list[tuple[int, ...]]:
    """``alpha~_(i)`` for ``i = 1 .. m``.

    Raises ``NonReducedWord`` at the first coroot that is negative, repeated,
    or (for a quotient word) has ``lam = 0``.
    """
    if r is None:
        r = parabolic_datum(word.cartan, word.node).root_datum
    a = r.pairing
    n = r.rank
    applied = word.applied
    for x in applied:
        if not 1 <= x <= n:
            raise UsageError(f"letter s{x} out of range for {r.cartan}")
    out: list[tuple[int, ...]] = []
    seen = set()
    for i, x in enumerate(applied):
        v = [0] * n
        v[x - 1] = 1
        for j in range(i - 1, -1, -1):
            v = _reflect(a, applied[j] - 1, v)
        t = tuple(v)
        if min(t) < 0 or t in seen or t[word.node - 1] < 1:
            raise NonReducedWord(f"word {word} is not a reduced quotient word at position {i + 1}: {t}", i + 1)
        seen.add(t)
        out.append(t)
    return out


# -- canonical words ------------------------------------------------------

def _rng(a, b):
    return list(range(a, b + 1))


def _word_a(n, l):
    out = []
    for r in range(n, l - 1, -1):
        out += _rng(r - l + 1, r)
    return out


def _word_bc(n, l):
    if l == n:
        out = []
        for r in range(n, 0, -1):
            out += _rng(r, n)
        return out
    out = []
    for r in range(1, l + 1):
        out += _rng(l - r + 1, n - r) + _rng(n - r + 1, n)
    for r in range(n - 1, l - 1, -1):
        out += _rng(r - l + 1, r)
    return out


def _d_tail(n, j):
    return n if j % 2 else n - 1


def _word_d(n, l):
    if l >= n - 1:
        out = []
        for j in range(n - 1, 0, -1):
            out += _rng(j, n - 2) + [_d_tail(n, j)]
        if l == n - 1:
            out = [n - 1 if x == n else n if x == n - 1 else x for x in out]
        return out
    out = _rng(l, n - 2) + [_d_tail(n, l)]
    for j in range(l - 1, 0, -1):
        out += _rng(j, n - l + j - 1) + _rng(n - l + j, n - 2) + [_d_tail(n, j)]
    for r in range(n - 1, l - 1, -1):
        out += _rng(r - l + 1, r)
    return out


def _greedy_word(c: CartanType, node: int) -> list[int]:
    """Smallest ascending letter at each step of the covering graph."""
    q = enumerate_quotient(c, node)
    cur, applied = 0, []
    while cur != q.top:
        lo = np.searchsorted(q.edge_parent, cur, side="left")
        hi = np.searchsorted(q.edge_parent, cur, side="right")
        e = lo + int(np.argmin(q.edge_simple[lo:hi]))
        applied.append(int(q.edge_simple[e]) + 1)
        cur = int(q.edge_child[e])
    return applied[::-1]


def canonical_w0_word(c: CartanType | str, node: int) -> ReducedWord:
    """The explicit word for classical types and G2; E and F get a greedy word
    from the covering graph, flagged ``canonical=False``."""
    if not isinstance(c, CartanType):
        c = CartanType.parse(c)
    parabolic_datum(c, node)
    s, n = c.series, c.rank
    if s == "A":
        return ReducedWord(c, node, tuple(_word_a(n, node)))
    if s in "BC":
        return ReducedWord(c, node, tuple(_word_bc(n, node)))
    if s == "D":
        return ReducedWord(c, node, tuple(_word_d(n, node)))
    if s == "G":
        return ReducedWord(c, node, (1, 2, 1, 2, 1) if node == 1 else (2, 1, 2, 1, 2))
    return ReducedWord(c, node, tuple(_greedy_word(c, node)), canonical=False)


# -- table layouts --------------------------------------------------------
#
# The coroot tables list alpha~_(1), alpha~_(2), ... row by row.  They are
# written here from the row patterns directly (sums of consecutive simple
# coroots), independently of the words above.

_G2_TABLE = {
    1: [(1, 0), (1, 1), (2, 3), (1, 2), (1, 3)],
    2: [(0, 1), (1, 3), (1, 2), (2, 3), (1, 1)],
}


def _sum(n, *parts):
    v = [0] * n
    for a, b, k in parts:
        for j in range(a, b + 1):
            v[j - 1] += k
    return tuple(v)


def table_layout(c: CartanType | str, node: int) -> list[tuple[int, ...]] | None:
    """Expected coroot sequence of the canonical word, or ``None`` if no
    layout is encoded (types E, F and D with ``node >= n - 1``)."""
    if not isinstance(c, CartanType):
        c = CartanType.parse(c)
    s, n, l = c.series, c.rank, node
    if s == "G":
        return list(_G2_TABLE[l])
    if s in "EF" or (s == "D" and l >= n - 1):
        return None
    out = []
    if s == "A":
        top = n
    elif (s in "BC" and l == n):
        top = l - 1
    else:
        top = n - 1
    for r in range(l, top + 1):
        out.extend(_sum(n, (t, r, 1)) for t in range(l, 0, -1))
    for r in range(l, 0, -1) if s != "A" else ():
        if s == "B":
            out.extend(_sum(n, (n, n, 1), (r, n - 1, 2), (t, r - 1, 1)) for t in range(r, 0, -1))
            out.extend(_sum(n, (n, n, 1), (m, n - 1, 2), (r, m - 1, 1)) for m in range(n, l, -1))
        elif s == "C":
            out.append(_sum(n, (r, n, 1)))
            out.extend(_sum(n, (r, n, 2), (t, r - 1, 1)) for t in range(r - 1, 0, -1))
            out.extend(_sum(n, (m, n, 2), (r, m - 1, 1)) for m in range(n, l, -1))
        else:
            out.extend(_sum(n, (n - 1, n, 1), (r, n - 2, 2), (t, r - 1, 1)) for t in range(r - 1, 0, -1))
            out.append(_sum(n, (n, n, 1), (r, n - 2, 1)))
            out.extend(_sum(n, (m, n, 1), (r, n - 2, 1)) for m in range(n - 1, l, -1))
    return out


# -- braid moves ----------------------------------------------------------

_BRAID_LEN = {"a": 2, "b": 3, "c": 4, "d": 6}
_BOND = {0: "a", 1: "b", 2: "c", 3: "d"}


def _bond(r: RootDatum, x: int, y: int) -> int:
    return r.pairing[x - 1][y - 1] * r.pairing[y - 1][x - 1]


def _rewrite(word: ReducedWord, r: RootDatum, i: int, rel: str) -> ReducedWord:
    applied = list(word.applied)
    k = _BRAID_LEN.get(rel)
    if k is None:
        raise BraidError(f"unknown relation {rel!r}")
    if i < 1 or i + k - 1 > len(applied):
        raise BraidError(f"relation {rel} does not fit at position {i}")
    block = applied[i - 1:i - 1 + k]
    x, y = block[0], block[1]
    if x == y or _BOND[_bond(r, x, y)] != rel:
        raise BraidError(f"s{x}, s{y} do not satisfy relation {rel}")
    if any(block[j] != (x if j % 2 == 0 else y) for j in range(k)):
        raise BraidError(f"letters at {i} do not alternate for relation {rel}")
    applied[i - 1:i - 1 + k] = [y if j % 2 == 0 else x for j in range(k)]
    return word.with_letters(applied[::-1])


def braid_move(word: ReducedWord, position: int, relation: str, r: RootDatum | None = None) -> ReducedWord:
    """Apply braid relation ``a``-``d`` at application index ``position``.

    Checks the documented effect on the coroot sequence and raises
    ``AssertionError`` if it does not hold.
    """
    if r is None:
        r = parabolic_datum(word.cartan, word.node).root_datum
    before = coroot_sequence(word, r)
    out = _rewrite(word, r, position, relation)
    after = coroot_sequence(out, r)
    _assert_effect(before, after, position, relation)
    return out


def _assert_effect(before, after, i, rel):
    k = _BRAID_LEN[rel]
    lo, hi = i - 1, i - 1 + k
    if before[:lo] != after[:lo] or before[hi:] != after[hi:]:
        raise AssertionError(f"move {rel} at {i} changed coroots outside its block")
    blk, new = before[lo:hi], after[lo:hi]
    if rel == "a":
        ok = new == blk[::-1]
    elif rel == "b":
        mid = tuple(p + q for p, q in zip(blk[0], blk[2]))
        ok = new == [blk[2], blk[1], blk[0]] and blk[1] == mid
    else:
        ok = new == blk[::-1]
    if not ok:
        raise AssertionError(f"move {rel} at {i}: coroots {blk} became {new}")


def braid_moves_at(word: ReducedWord, r: RootDatum) -> list[tuple[int, str]]:
    """All ``(position, relation)`` pairs applicable to ``word``."""
    applied = word.applied
    m = len(applied)
    out = []
    for i in range(m - 1):
        x, y = applied[i], applied[i + 1]
        if x == y:
            continue
        rel = _BOND[_bond(r, x, y)]
        k = _BRAID_LEN[rel]
        if i + k > m:
            continue
        if all(applied[i + j] == (x if j % 2 == 0 else y) for j in range(k)):
            out.append((i + 1, rel))
    return out


def random_rewrites(word: ReducedWord, steps: int = 10_000, seed: int = 0) -> dict:
    """Random walk of braid moves; every step re-derives the coroot sequence.

    Returns counts of moves by relation.  Any effect violation or repeated
    coroot raises.
    """
    r = parabolic_datum(word.cartan, word.node).root_datum
    rng = random.Random(seed)
    seq = coroot_sequence(word, r)
    target = set(seq)
    counts = {k: 0 for k in _BRAID_LEN}
    for _ in range(steps):
        moves = braid_moves_at(word, r)
        if not moves:
            break
        pos, rel = moves[rng.randrange(len(moves))]
        nxt = _rewrite(word, r, pos, rel)
        after = coroot_sequence(nxt, r)
        _assert_effect(seq, after, pos, rel)
        if set(after) != target:
            raise AssertionError("braid move changed the coroot set")
        word, seq = nxt, after
        counts[rel] += 1
    return counts


# -- swap rules -----------------------------------------------------------

def _epsilon_basis(c: CartanType) -> list[list[int]]:
    """Simple coroots in epsilon coordinates (A uses n+1 coordinates)."""
    s, n = c.series, c.rank
    dim = n + 1 if s == "A" else n
    basis = []
    for i in range(n):
        v = [0] * dim
        if i < n - 1 or s == "A":
            v[i], v[i + 1] = 1, -1
        elif s == "B":
            v[n - 1] = 2
        elif s == "C":
            v[n - 1] = 1
        else:
            v[n - 2], v[n - 1] = 1, 1
        basis.append(v)
    return basis


def epsilon_label(c: CartanType, node: int, v) -> tuple:
    """Label a nilradical coroot as ``(r, t)``, ``(2, r, t)`` or ``(1, m, r)``.

    With ``e_t - e_{r+1} -> (r, t)``, ``e_t + e_r (t < r)`` and the long/short
    ``e_r`` type coroot ``-> (2, r, t)``, ``e_r + e_m (m > node) -> (1, m, r)``
    (indices 1-based).
    """
    basis = _epsilon_basis(c)
    e = [sum(v[i] * basis[i][k] for i in range(len(v))) for k in range(len(basis[0]))]
    nz = [(k + 1, x) for k, x in enumerate(e) if x]
    if len(nz) == 1:
        (r, _), = nz
        return (2, r, r)
    (p, x), (q, y) = nz
    if x > 0 and y < 0:
        return (q - 1, p)
    if x == y == 1:
        if q <= node:
            return (2, q, p)
        return (1, q, p)
    raise ValueError(f"coroot {v} has no label")


def _kind(label):
    return "A" if len(label) == 2 else ("two" if label[0] == 2 else "one")


def swap_rule(series: str, n: int, x: tuple, y: tuple) -> tuple[str, bool]:
    """Rule name and predicted reversibility for two labels."""
    kx, ky = _kind(x), _kind(y)
    if kx == ky == "A":
        (r, t), (r2, t2) = sorted([x, y])
        return "R1", r < r2 and t2 > t
    if kx == ky == "two":
        (_, r2, t2), (_, r, t) = sorted([x, y], key=lambda z: (z[1], z[2]))
        return "R2", r > r2 and t2 > t
    if kx == ky == "one":
        (_, m2, r2), (_, m, r) = sorted([x, y], key=lambda z: (z[2], z[1]))
        return "R3", r > r2 and m2 > m
    d = series == "D"
    if {kx, ky} == {"two", "A"}:
        (_, r, t), (r2, t2) = (x, y) if kx == "two" else (y, x)
        ok = t2 < r or (d and t + 1 == r == t2 and r2 == n - 1)
        return ("D1" if d else "B1"), ok
    if {kx, ky} == {"one", "A"}:
        (_, m, r), (r2, t2) = (x, y) if kx == "one" else (y, x)
        ok = t2 < r or (d and m == r2 + 1 == n and t2 in (r, r + 1))
        return ("D2" if d else "B2"), ok
    (_, r, t), (_, m2, r2) = (x, y) if kx == "two" else (y, x)
    ok = t < r2 or (d and r2 == t == r - 1 and m2 == n)
    return ("D3" if d else "B3"), ok


def _explore(word: ReducedWord, r: RootDatum, cap: int):
    """All reduced words reachable by braid moves (``None`` past the cap)."""
    start = word.applied
    seen = {start}
    todo = deque([start])
    while todo:
        cur = todo.popleft()
        w = word.with_letters(cur[::-1])
        for pos, rel in braid_moves_at(w, r):
            nxt = _rewrite(w, r, pos, rel).applied
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    return None
                todo.append(nxt)
    return seen


def certify_swap_rules(c: CartanType | str, node: int, cap: int = 10**6) -> CheckReport:
    """Compare observed order reversals of coroot pairs across all reduced
    words of ``w0`` with the rules for the type.

    Bounded to classical rank at most 5; the (c') pattern is not certified.
    """
    if not isinstance(c, CartanType):
        c = CartanType.parse(c)
    if c.series not in "ABCD" or c.rank > 5:
        raise UsageError("swap rules are certified for classical types of rank <= 5")
    p = parabolic_datum(c, node)
    r = p.root_datum
    word = canonical_w0_word(c, node)
    words = _explore(word, r, cap)
    name = "swap-rules"
    if words is None:
        return CheckReport(name, str(c), node, "skipped", reason=f"more than {cap} reduced words")
    seq0 = coroot_sequence(word, r)
    index = {v: k for k, v in enumerate(seq0)}
    m = len(seq0)
    before = np.zeros((m, m), dtype=bool)       # before[a, b]: a seen before b
    for applied in words:
        w = word.with_letters(applied[::-1])
        order = np.array([index[v] for v in coroot_sequence(w, r)])
        pos = np.empty(m, dtype=np.int64)
        pos[order] = np.arange(m)
        before |= pos[:, None] < pos[None, :]
    if c.series == "D" and node == c.rank - 1:
        # relabel through the diagram automorphism exchanging nodes n-1 and n
        n = c.rank
        labels = [epsilon_label(c, n, v[:n - 2] + (v[n - 1], v[n - 2])) for v in seq0]
    else:
        labels = [epsilon_label(c, node, v) for v in seq0]
    mismatches = []
    per_rule: dict[str, dict] = {}
    for a in range(m):
        for b in range(a + 1, m):
            rule, predicted = swap_rule(c.series, c.rank, labels[a], labels[b])
            observed = bool(before[a, b] and before[b, a])
            st = per_rule.setdefault(rule, {"pairs": 0, "mismatches": 0})
            st["pairs"] += 1
            if observed != predicted:
                st["mismatches"] += 1
                mismatches.append({"pair": [list(labels[a]), list(labels[b])], "rule": rule,
                                   "predicted": predicted, "observed": observed})
    detail = {"reduced_words": len(words), "rules": per_rule, "bounded": True}
    if mismatches:
        detail["mismatches"] = mismatches
        return CheckReport(name, str(c), node, "failed", counterexample=mismatches[0], detail=detail)
    return CheckReport(name, str(c), node, "verified", detail=detail)
