import pytest

from parapoles.parabolic import parabolic_datum
from parapoles.rootsystem import CartanType, UsageError
from parapoles.words import (
    BraidError,
    NonReducedWord,
    ReducedWord,
    braid_move,
    braid_moves_at,
    canonical_w0_word,
    certify_swap_rules,
    coroot_sequence,
    epsilon_label,
    random_rewrites,
    swap_rule,
    table_layout,
)


def word(name, node, letters):
    return ReducedWord(CartanType.parse(name), node, tuple(letters))


def test_g2_sequences():
    assert coroot_sequence(canonical_w0_word("G2", 1)) == [(1, 0), (1, 1), (2, 3), (1, 2), (1, 3)]
    assert coroot_sequence(canonical_w0_word("G2", 2)) == [(0, 1), (1, 3), (1, 2), (2, 3), (1, 1)]


def test_single_letter():
    assert coroot_sequence(word("A3", 2, [2])) == [(0, 1, 0)]


def test_canonical_letters():
    assert canonical_w0_word("B2", 2).letters == (2, 1, 2)
    assert canonical_w0_word("G2", 1).letters == (1, 2, 1, 2, 1)
    # (s2 s3)(s1 s2): the right-hand factor is applied first
    assert canonical_w0_word("A3", 2).letters == (2, 3, 1, 2)
    assert canonical_w0_word("D4", 4).letters == (4, 2, 3, 1, 2, 4)


def test_non_reduced_position():
    # (s3 s2)(s1 s2) reaches alpha_1^vee, which is in the Levi, at the third letter
    with pytest.raises(NonReducedWord) as err:
        coroot_sequence(word("A3", 2, [3, 2, 1, 2]))
    assert err.value.position == 3
    with pytest.raises(NonReducedWord) as err:
        coroot_sequence(word("A3", 2, [2, 2]))
    assert err.value.position == 2


# literal coroot sequences, read row by row off the tables
TABLES = {
    ("B2", 1): [(1, 0), (2, 1), (1, 1)],
    ("B2", 2): [(0, 1), (1, 1), (2, 1)],
    ("B3", 2): [(0, 1, 0), (1, 1, 0), (0, 2, 1), (1, 2, 1), (0, 1, 1), (2, 2, 1), (1, 1, 1)],
    ("B3", 3): [(0, 0, 1), (0, 1, 1), (1, 1, 1), (0, 2, 1), (1, 2, 1), (2, 2, 1)],
    ("C3", 1): [(1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 1, 2), (1, 2, 2)],
    ("C3", 2): [(0, 1, 0), (1, 1, 0), (0, 1, 1), (1, 2, 2), (0, 1, 2), (1, 1, 1), (1, 1, 2)],
    ("D4", 1): [(1, 0, 0, 0), (1, 1, 0, 0), (1, 1, 1, 0), (1, 1, 0, 1), (1, 1, 1, 1), (1, 2, 1, 1)],
    ("D4", 2): [(0, 1, 0, 0), (1, 1, 0, 0), (0, 1, 1, 0), (1, 1, 1, 0), (1, 2, 1, 1), (0, 1, 0, 1),
                (0, 1, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)],
}


@pytest.mark.parametrize("case", sorted(TABLES))
def test_tables(case):
    assert coroot_sequence(canonical_w0_word(*case)) == TABLES[case]
    assert table_layout(*case) == TABLES[case]


@pytest.mark.parametrize("series,lo", [("A", 1), ("B", 2), ("C", 2), ("D", 4)])
def test_layout_generator_agrees(series, lo):
    for n in range(lo, 7):
        for node in range(1, n + 1):
            expected = table_layout(f"{series}{n}", node)
            got = coroot_sequence(canonical_w0_word(f"{series}{n}", node))
            if expected is not None:
                assert got == expected, (n, node)


@pytest.mark.parametrize("name", ["A1", "A4", "B5", "C6", "D4", "D6", "D7", "G2", "F4", "E6", "E7"])
def test_words_cover_nilradical(name):
    c = CartanType.parse(name)
    for node in c.nodes:
        w = canonical_w0_word(c, node)
        seq = coroot_sequence(w)
        assert sorted(seq) == sorted(parabolic_datum(c, node).nilradical_coroots())
        assert w.canonical == (c.series not in "EF")


def test_commuting_swap_a3():
    w = canonical_w0_word("A3", 2)          # applied: s2, s1, s3, s2
    before = coroot_sequence(w)
    w2 = braid_move(w, 2, "a")
    after = coroot_sequence(w2)
    assert after[1] == before[2] and after[2] == before[1]
    assert braid_move(w2, 2, "a") == w


def test_b_move_middle_is_sum():
    w = canonical_w0_word("D4", 2)
    moves = [m for m in braid_moves_at(w, parabolic_datum("D4", 2).root_datum) if m[1] == "b"]
    assert moves
    i, _ = moves[0]
    seq = coroot_sequence(w)
    assert seq[i] == tuple(a + b for a, b in zip(seq[i - 1], seq[i + 1]))
    w2 = braid_move(w, i, "b")
    assert coroot_sequence(w2)[i - 1:i + 2] == [seq[i + 1], seq[i], seq[i - 1]]


def test_b_move_b3():
    w = canonical_w0_word("B3", 2)
    r = parabolic_datum("B3", 2).root_datum
    rels = {rel for _, rel in braid_moves_at(w, r)}
    assert "a" in rels
    counts = random_rewrites(w, steps=500, seed=3)
    assert counts["b"] > 0


def test_braid_pattern_rejected():
    w = canonical_w0_word("A3", 2)
    with pytest.raises(BraidError):
        braid_move(w, 1, "a")               # s2 s1 do not commute
    with pytest.raises(BraidError):
        braid_move(w, 1, "c")
    with pytest.raises(BraidError):
        braid_move(w, 4, "a")


@pytest.mark.parametrize("name,node", [("A4", 2), ("B3", 2), ("C3", 2), ("D4", 2), ("F4", 2), ("E6", 3)])
def test_random_rewrites(name, node):
    counts = random_rewrites(canonical_w0_word(name, node), steps=2000, seed=11)
    assert sum(counts.values()) == 2000


def test_random_rewrites_seeded():
    w = canonical_w0_word("D4", 2)
    assert random_rewrites(w, 300, seed=5) == random_rewrites(w, 300, seed=5)


def test_labels():
    c = CartanType.parse("B3")
    assert epsilon_label(c, 2, (0, 1, 0)) == (2, 2)
    # alpha_3^vee = 2 e_3 in B3
    assert epsilon_label(c, 2, (1, 2, 1)) == (2, 2, 1)
    assert epsilon_label(c, 2, (0, 2, 1)) == (2, 2, 2)
    assert epsilon_label(c, 2, (2, 2, 1)) == (2, 1, 1)
    assert epsilon_label(c, 2, (0, 1, 1)) == (1, 3, 2)


def test_swap_rule_table():
    assert swap_rule("A", 4, (2, 1), (3, 2)) == ("R1", True)
    assert swap_rule("A", 4, (3, 2), (2, 1)) == ("R1", True)
    assert swap_rule("A", 4, (2, 2), (3, 1)) == ("R1", False)
    assert swap_rule("B", 3, (2, 2, 1), (2, 1)) == ("B1", True)
    assert swap_rule("D", 5, (2, 2, 1), (4, 1)) == ("D1", True)


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4"])
def test_certify_small(name):
    c = CartanType.parse(name)
    for node in c.nodes:
        rep = certify_swap_rules(c, node)
        assert rep.status == "verified", rep.counterexample
        assert rep.detail["bounded"]


def test_certify_reports_rule_gap_d5():
    # the stated D rules miss five reversible pairs at D5, node 3
    rep = certify_swap_rules("D5", 3)
    assert rep.status == "failed"
    assert rep.detail["reduced_words"] == 6890
    got = sorted((m["rule"], tuple(map(tuple, m["pair"]))) for m in rep.detail["mismatches"])
    assert got == sorted([
        ("D1", ((4, 3), (2, 3, 1))),
        ("D1", ((4, 3), (2, 2, 1))),
        ("D2", ((4, 3), (1, 5, 1))),
        ("D3", ((2, 3, 2), (1, 5, 1))),
        ("D3", ((2, 3, 1), (1, 5, 1))),
    ])
    assert all(m["observed"] and not m["predicted"] for m in rep.detail["mismatches"])


def test_certify_cap_and_scope():
    assert certify_swap_rules("D5", 3, cap=100).status == "skipped"
    with pytest.raises(UsageError):
        certify_swap_rules("E6", 1)
