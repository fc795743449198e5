"""Word representation tests: canonical forms checked against a brute-force
"materialize a long window" oracle."""

import random

import pytest

from clopen.words import (
    Alphabet,
    BiWord,
    UltWord,
    WordError,
    eq,
    factors,
    format_bi,
    format_ult,
    parse_bi,
    parse_ult,
    prefix,
    shift_bi,
)


def unroll(head, cycle, n):
    """Oracle: first n letters of head·cycle·cycle·..."""
    out = list(head)
    while len(out) < n:
        out.extend(cycle)
    return tuple(out[:n])


def bi_window(left, core, right, start, a, b):
    """Oracle: letters of ...left·core·right... on [a, b) with core at start."""
    out = []
    for p in range(a, b):
        if p < start:
            out.append(left[(p - start) % len(left)])
        elif p < start + len(core):
            out.append(core[p - start])
        else:
            out.append(right[(p - start - len(core)) % len(right)])
    return tuple(out)


def test_prefix_unrolls_definition():
    assert prefix(UltWord("0", "1"), 3) == ("0", "1", "1")
    assert prefix(UltWord("", "0"), 5) == ("0",) * 5
    assert prefix(UltWord(["c", "a"], ["abar"]), 4) == ("c", "a", "abar", "abar")


def test_prefix_random_against_oracle():
    rng = random.Random(7)
    for _ in range(200):
        head = tuple(rng.choice("01") for _ in range(rng.randrange(0, 5)))
        cycle = tuple(rng.choice("01") for _ in range(rng.randrange(1, 5)))
        w = UltWord(head, cycle)
        for n in (0, 1, 3, 11):
            assert w.prefix(n) == unroll(head, cycle, n)


def test_canonicalization_idempotent_and_value_preserving():
    rng = random.Random(11)
    for _ in range(300):
        head = tuple(rng.choice("012") for _ in range(rng.randrange(0, 6)))
        cycle = tuple(rng.choice("012") for _ in range(rng.randrange(1, 5)))
        w = UltWord(head, cycle)
        again = UltWord(w.head, w.cycle)
        assert (again.head, again.cycle) == (w.head, w.cycle)
        assert w.prefix(30) == unroll(head, cycle, 30)


def test_eq_one_sided():
    assert eq(parse_ult("0(10)^inf"), parse_ult("01(01)^inf"))
    # non-primitive presentation normalizes
    assert UltWord("", "00") == UltWord("", "0")
    assert not eq(parse_ult("0(1)^inf"), parse_ult("1(0)^inf"))


def test_eq_matches_long_unroll():
    rng = random.Random(3)
    for _ in range(300):
        h1 = tuple(rng.choice("01") for _ in range(rng.randrange(0, 4)))
        c1 = tuple(rng.choice("01") for _ in range(rng.randrange(1, 4)))
        h2 = tuple(rng.choice("01") for _ in range(rng.randrange(0, 4)))
        c2 = tuple(rng.choice("01") for _ in range(rng.randrange(1, 4)))
        w1, w2 = UltWord(h1, c1), UltWord(h2, c2)
        # 20 letters decide equality for these sizes (oracle)
        same = unroll(h1, c1, 20) == unroll(h2, c2, 20)
        assert (w1 == w2) == same


def test_prefix_consistency():
    w = parse_ult("0110(100)^inf")
    for n in range(64):
        assert w.prefix(n) == w.prefix(n + 1)[:n]


def test_factors_trivial_cases():
    assert factors(parse_bi("(01)^inf.(01)^inf"), 2) == {("0", "1"), ("1", "0")}
    assert factors(parse_bi("(01)^inf.1(01)^inf"), 2) == {
        ("0", "1"),
        ("1", "0"),
        ("1", "1"),
    }
    assert factors(parse_ult("(0)^inf"), 3) == {("0", "0", "0")}


def test_factors_against_window_scan():
    rng = random.Random(5)
    for _ in range(100):
        head = tuple(rng.choice("01") for _ in range(rng.randrange(0, 4)))
        cycle = tuple(rng.choice("01") for _ in range(rng.randrange(1, 4)))
        w = UltWord(head, cycle)
        for m in (1, 2, 3):
            buf = unroll(head, cycle, len(head) + len(cycle) + m + 8)
            expected = {buf[i : i + m] for i in range(len(buf) - m + 1)}
            assert w.factors(m) == expected


def test_factors_monotone():
    w = parse_bi("(001)^inf.11(01)^inf")
    for m in (1, 2, 3, 4, 5):
        big = w.factors(m)
        small = w.factors(m - 1)
        for word in big:
            assert word[:-1] in small and word[1:] in small


def test_shift_examples():
    b = parse_bi("(01)^inf.(01)^inf")
    assert shift_bi(b, 2) == b
    assert shift_bi(b, 1) != b
    d = parse_bi("(01)^inf.1(01)^inf")
    s = shift_bi(d, 1)
    assert s.letter(-1) == "1"
    assert format_bi(s) == "(01)^inf1.(01)^inf"
    assert shift_bi(shift_bi(d, 5), -5) == d


def test_shift_group_law():
    rng = random.Random(13)
    words = [
        parse_bi("(01)^inf.1(01)^inf"),
        parse_bi("(0)^inf.100(1)^inf"),
        parse_bi("(011)^inf10.(0)^inf"),
    ]
    for b in words:
        for _ in range(40):
            j = rng.randrange(-16, 17)
            k = rng.randrange(-16, 17)
            assert shift_bi(shift_bi(b, j), k) == shift_bi(b, j + k)


def test_shift_matches_window_oracle():
    rng = random.Random(17)
    for _ in range(200):
        left = tuple(rng.choice("01") for _ in range(rng.randrange(1, 4)))
        core = tuple(rng.choice("01") for _ in range(rng.randrange(0, 5)))
        right = tuple(rng.choice("01") for _ in range(rng.randrange(1, 4)))
        start = rng.randrange(-5, 6)
        b = BiWord(left, core, right, start)
        assert b.window(-12, 12) == bi_window(left, core, right, start, -12, 12)
        k = rng.randrange(-8, 9)
        s = b.shift(k)
        assert s.window(-8, 8) == bi_window(left, core, right, start, -8 + k, 8 + k)


def test_biword_equality_iff_windows_agree():
    rng = random.Random(19)
    mk = lambda: BiWord(
        tuple(rng.choice("01") for _ in range(rng.randrange(1, 4))),
        tuple(rng.choice("01") for _ in range(rng.randrange(0, 4))),
        tuple(rng.choice("01") for _ in range(rng.randrange(1, 4))),
        rng.randrange(-4, 5),
    )
    for _ in range(400):
        b1, b2 = mk(), mk()
        # 40 coordinates decide equality at these sizes (oracle)
        same = b1.window(-20, 20) == b2.window(-20, 20)
        assert (b1 == b2) == same, (b1, b2)


def test_round_trip_text_grammar():
    for s in [
        "01(10)^inf",
        "(0)^inf",
        "0110(100)^inf",
        "c,a,(abar)^inf",
    ]:
        w = parse_ult(s, alphabet=Alphabet(["0", "1", "c", "a", "abar"]))
        assert parse_ult(format_ult(w), alphabet=Alphabet(["0", "1", "c", "a", "abar"])) == w
    for s in [
        "(01)^inf.1(01)^inf",
        "(01)^inf1.(01)^inf",
        "(0)^inf.(1)^inf",
        "(01)^inf10.(10)^inf",
    ]:
        b = parse_bi(s)
        assert parse_bi(format_bi(b)) == b


def test_multicharacter_letters_round_trip():
    ab = Alphabet(["0", "1", "c", "a", "abar"])
    w = UltWord(("c", "a"), ("abar",))
    assert format_ult(w) == "c,a,(abar)^inf"
    assert parse_ult("c,a,(abar)^inf", alphabet=ab) == w


def test_alphabet_validation():
    with pytest.raises(WordError):
        Alphabet([])
    with pytest.raises(WordError):
        Alphabet(["0", "0"])
    ab = Alphabet(["c", "0", "1"])
    assert ab.key(("0", "c")) == (1, 0)
