from fractions import Fraction as F

import pytest

from parapoles.appendix import ALLOWLIST, EXCEPTIONAL, classical_expectation, compare, derived_row


def test_c4_rows():
    exp = classical_expectation("C", 4, 4)
    assert exp.s_k == F(3, 2)
    assert exp.levels == {1: (0,), 2: (-1, -2)}
    got = derived_row("C4", 4)
    assert got.levels == exp.levels and got.s_k == exp.s_k


def test_g2_node1():
    got = derived_row("G2", 1)
    assert got.levels == {1: (0,), 2: (-2,)}


@pytest.mark.parametrize("series,lo", [("A", 1), ("B", 2), ("C", 2), ("D", 4)])
def test_classical_all_match(series, lo):
    for n in range(lo, 11):
        for node in range(1, n + 1):
            assert {c.status for c in compare(f"{series}{n}", node)} == {"match"}, (n, node)


def test_exceptional_flags_exactly_the_allowlist():
    flagged = set()
    for t, rows in EXCEPTIONAL.items():
        for node in rows:
            for cell in compare(t, node):
                assert cell.status != "mismatch", cell
                if cell.status == "allowlisted":
                    flagged.add((cell.type, cell.node, cell.column))
    assert flagged == {(a.type, a.node, a.column) for a in ALLOWLIST}
    assert ("E8", 8, "L(2)") in flagged
    assert len(flagged) == 2 + 4 + 6 + 7 + 8 + 1


def test_allowlist_entries_complete():
    for a in ALLOWLIST:
        assert a.justification and a.derived and a.derived != a.printed


def test_sk_reading():
    cells = {c.column: c for c in compare("G2", 1)}
    assert (cells["s_k"].printed, cells["s_k"].derived) == ("3", "3/2")
    cells = {c.column: c for c in compare("E8", 8)}
    assert (cells["L(2)"].printed, cells["L(2)"].derived) == ("{-13}", "{-14}")


def test_mismatch_is_fatal(monkeypatch):
    import parapoles.appendix as ap
    rows = dict(ap.EXCEPTIONAL)
    rows["G2"] = {1: ap._row(3, [0], [-3]), 2: ap.EXCEPTIONAL["G2"][2]}
    monkeypatch.setattr(ap, "EXCEPTIONAL", rows)
    assert "mismatch" in {c.status for c in compare("G2", 1)}
