"""Quotient graphs and the odd-closed-walk decision: witnesses checked
mechanically, absence certified against a brute-force walk enumerator."""

import itertools

import pytest

from clopen.colorings import verify_coloring
from clopen.families import parse_family
from clopen.quotients import (
    Bipartite,
    OddWalk,
    decide_level,
    odd_closed_walk,
    odd_girth,
    quotient,
    scan,
    to_dot,
)

FAMILIES = [
    "gm",
    "gdelta:delta=(1)^inf",
    "go-plus:d=2,(3)^inf",
    "graph-o:d=(3)^inf",
    "graph-o:d=3,4,(3)^inf",
    "t",
    "k0",
    "gp:d=2,(3)^inf,p=1",
    "orbit:d=(3)^inf,S=sa{0}",
    "ka:A=0",
]


def brute_force_shortest_odd_walk(q):
    """Oracle: boolean adjacency powers; the first odd power with a diagonal
    hit is the shortest odd closed walk length."""
    q = q.undirected()
    verts = list(q.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    adj = [[False] * n for _ in range(n)]
    for (u, v) in q.edges:
        adj[idx[u]][idx[v]] = True
        adj[idx[v]][idx[u]] = True
    power = [row[:] for row in adj]
    for length in range(1, 2 * n + 2):
        if length % 2 == 1 and any(power[i][i] for i in range(n)):
            return length
        power = [
            [any(power[i][k] and adj[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return None


def test_quotient_examples():
    q = quotient(parse_family("go-plus:d=2,(3)^inf"), 1)
    assert {(("c",), ("0",)), (("0",), ("1",)), (("1",), ("c",))} <= set(q.edges)
    q = quotient(parse_family("graph-o:d=(3)^inf"), 1)
    assert set(q.edges) == {
        (("0",), ("1",)),
        (("1",), ("2",)),
        (("2",), ("0",)),
        (("1",), ("0",)),
        (("2",), ("1",)),
        (("0",), ("2",)),
    }
    q = quotient(parse_family("gm"), 1)
    assert (("0",), ("0",)) in set(q.edges)


def test_walk_on_triangle_and_square():
    from clopen.quotients import QuotientGraph
    from clopen.words import Alphabet

    ab = Alphabet(["0", "1", "2", "3"])
    tri = QuotientGraph(
        1,
        [("0",), ("1",), ("2",)],
        [(("0",), ("1",)), (("1",), ("0",)), (("1",), ("2",)),
         (("2",), ("1",)), (("2",), ("0",)), (("0",), ("2",))],
        False,
        ab,
    )
    w = odd_closed_walk(tri)
    assert w is not None and w.length == 3 and w.closed()
    square_edges = []
    for i in range(4):
        square_edges += [((str(i),), (str((i + 1) % 4),)),
                         ((str((i + 1) % 4),), (str(i),))]
    sq = QuotientGraph(1, [(str(i),) for i in range(4)], square_edges, False, ab)
    assert odd_closed_walk(sq) is None
    assert odd_girth(sq) is None


def test_self_loop_gives_length_one():
    q = quotient(parse_family("gm"), 1)
    w = odd_closed_walk(q)
    assert w is not None and w.length == 1
    assert w.vertices[0] == w.vertices[1]


@pytest.mark.parametrize("spec", FAMILIES)
def test_witnesses_are_walks_and_shortest(spec):
    g = parse_family(spec)
    for n in (1, 2, 3):
        q = quotient(g, n).undirected()
        edge_set = set(q.edges)
        w = odd_closed_walk(q)
        if w is None:
            continue
        assert w.closed() and w.length % 2 == 1
        for i in range(w.length):
            assert (w.vertices[i], w.vertices[i + 1]) in edge_set
        if len(q.vertices) <= 30:
            assert w.length == brute_force_shortest_odd_walk(q)


@pytest.mark.parametrize("spec", FAMILIES)
def test_antitone_odd_walks(spec):
    g = parse_family(spec)
    girths = []
    for n in (1, 2, 3, 4):
        girths.append(odd_girth(quotient(g, n)))
    # if a level has an odd walk then so does every lower level
    for lo, hi in itertools.combinations(range(4), 2):
        if girths[hi] is not None:
            assert girths[lo] is not None
            assert girths[lo] <= girths[hi]


@pytest.mark.parametrize("spec", FAMILIES)
def test_bipartite_pullback_verifies(spec):
    g = parse_family(spec)
    for n in (1, 2, 3):
        res = decide_level(g, n)
        if isinstance(res, Bipartite):
            for extra in (0, 5):
                check = verify_coloring(g, res.coloring, n + extra)
                assert check.ok, (spec, n, check.describe())


def test_symmetrization_commutes_with_quotient():
    from clopen.families import orient, symmetrize

    for spec in ("go-plus:d=2,(3)^inf", "gm", "graph-o:d=(3)^inf"):
        g = parse_family(spec)
        o = orient(g)
        for n in (1, 2, 3):
            q_sym_first = quotient(symmetrize(o), n)
            q_sym_last = quotient(o, n).undirected()
            assert set(q_sym_first.edges) == set(q_sym_last.edges), (spec, n)


def test_scan_go_plus_all_odd():
    rep = scan(parse_family("go-plus:d=2,(3)^inf"), 4)
    assert [e["verdict"] for e in rep["levels"]] == ["odd-walk"] * 4
    assert "chi_c >= 3" in rep["headline"]


def test_scan_halts_on_bipartite():
    rep = scan(parse_family("graph-o:d=3,4,(3)^inf"), 4)
    assert [e["verdict"] for e in rep["levels"]] == ["odd-walk", "bipartite"]
    assert "chi_c <= 2" in rep["headline"]


def test_scan_noncompact_caveat():
    rep = scan(parse_family("t"), 4)
    assert [e["verdict"] for e in rep["levels"]] == ["odd-walk"] * 4
    assert "not compact" in rep["headline"]
    rep2 = scan(parse_family("gm"), 3)
    assert "not compact" in rep2["headline"]


def test_dot_export():
    q = quotient(parse_family("graph-o:d=(3)^inf"), 1)
    dot = to_dot(q)
    assert dot.startswith("graph")
    assert '"0" -- "1"' in dot
    q2 = quotient(parse_family("k0"), 1)
    dot2 = to_dot(q2)
    assert '"1.1"' in dot2  # window labels carry the origin dot


def test_directed_quotient_of_oriented_family():
    from clopen.families import orient

    g = orient(parse_family("go-plus:d=2,(3)^inf"))
    q = quotient(g, 1)
    assert q.directed
    assert (("c",), ("0",)) in set(q.edges)
    assert (("0",), ("c",)) not in set(q.edges)
    res = decide_level(g, 1)  # directed inputs are symmetrized first
    assert isinstance(res, OddWalk)


def test_t_quotients_have_odd_walks_through_the_zero_prefix():
    g = parse_family("t")
    for n in range(1, 5):
        q = quotient(g, n).undirected()
        v0 = ("0",) * n
        assert v0 in q.vertices
        # odd closed walk through v0: reachability in the double cover
        adj = {v: set() for v in q.vertices}
        for (u, v) in q.edges:
            adj[u].add(v)
            adj[v].add(u)
        from collections import deque

        dist = {(v0, 0): 0}
        queue = deque([(v0, 0)])
        while queue:
            (u, side) = queue.popleft()
            for w in adj[u]:
                if (w, 1 - side) not in dist:
                    dist[(w, 1 - side)] = dist[(u, side)] + 1
                    queue.append((w, 1 - side))
        assert (v0, 1) in dist
        assert dist[(v0, 1)] <= 2 * n + 1


def test_scan_budget_gives_partial_flagged_report():
    rep = scan(parse_family("go-plus:d=2,(3)^inf"), 4, budget_ms=0.0)
    assert rep["partial"] and "partial" in rep["headline"]
    rep_full = scan(parse_family("go-plus:d=2,(3)^inf"), 2)
    assert not rep_full["partial"]
