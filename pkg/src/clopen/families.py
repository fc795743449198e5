"""Constructors for the concrete symbolic graph families, each exposing exact
level-n edge enumeration.

A SymbolicGraph is an edge generator: `generate(bound)` returns the finite
list of primitive directed edges whose clause parameters are at most `bound`,
as pairs of exactly represented points.  `edges_at_level(g, n)` projects those
edges to length-n prefixes (symmetric windows for two-sided families) using
the family's saturation bound B(n); stability under enlarging the bound is a
runtime-checkable property.

Families over an infinite numeral alphabet are capped at the letters reachable
below B(n); the cap is part of the alphabet reported for that level.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .dynamics import (
    Radix,
    check_rotation_number,
    odometer_iter,
    orbit_point,
    parse_quadratic,
    parse_radix,
    sturmian_code,
)
from .words import Alphabet, BiWord, BlockWord, UltWord, Word, numerals


class FamilyError(ValueError):
    pass


class FiniteGraph:
    """Plain finite graph; undirected edges are stored symmetrically."""

    def __init__(self, vertices: Iterable, edges: Iterable, directed: bool = False):
        self.vertices = list(dict.fromkeys(vertices))
        vset = set(self.vertices)
        self.directed = directed
        es = []
        for (u, v) in edges:
            if u not in vset or v not in vset:
                raise FamilyError("edge (%r, %r) references unknown vertex" % (u, v))
            es.append((u, v))
            if not directed:
                es.append((v, u))
        self.edges = set(es)

    def neighbors(self, u):
        return sorted(v for (a, v) in self.edges if a == u)

    def degree(self, u) -> int:
        return len([1 for (a, _) in self.edges if a == u])

    def undirected_edge_count(self) -> int:
        return len({frozenset(e) for e in self.edges if e[0] != e[1]}) + len(
            [1 for (u, v) in self.edges if u == v]
        )

    def __repr__(self):
        return "FiniteGraph(%d vertices, %d edges)" % (
            len(self.vertices),
            self.undirected_edge_count(),
        )


def odd_cycle(p: int) -> FiniteGraph:
    """The symmetric cycle on 2p+3 vertices."""
    if p < 0:
        raise FamilyError("p must be >= 0")
    n = 2 * p + 3
    return FiniteGraph(range(n), [(i, (i + 1) % n) for i in range(n)])


# ---------------------------------------------------------------------------


class SymbolicGraph:
    """A graph family on a zero-dimensional space, presented by a saturating
    edge generator.

    generate(bound, level) yields primitive directed edges (clause order,
    parameters up to `bound`, complete for projections at the given level);
    the graph itself is the symmetrization unless `directed` is set.  Points
    are UltWords (one-sided spaces), or BiWords/BlockWords (two-sided
    subshifts), in which case level n reads the symmetric window [-n, n).
    """

    def __init__(
        self,
        spec: str,
        alphabet_for: Callable[[int], Alphabet],
        generate: Callable[[int, int], list],
        saturation: Callable[[int], int],
        directed: bool = False,
        two_sided: bool = False,
        compact: bool = True,
        point_set: str = "",
        blocks: Callable[[int, int], Word] | None = None,
        block_count: Callable[[int], int] | None = None,
        finite_core: Callable[[], FiniteGraph] | None = None,
    ):
        self.spec = spec
        self.alphabet_for = alphabet_for
        self.generate = generate
        self.saturation = saturation
        self.directed = directed
        self.two_sided = two_sided
        self.compact = compact
        self.point_set = point_set
        self.blocks = blocks
        self.block_count = block_count
        self.finite_core = finite_core

    def project(self, x, n: int) -> Word:
        if self.two_sided:
            return x.window(-n, n)
        return x.prefix(n)

    def __repr__(self):
        return "SymbolicGraph(%s)" % self.spec


def symmetrize(g: SymbolicGraph) -> SymbolicGraph:
    """Close the generator under swaps and clear the directed flag."""
    out = SymbolicGraph(
        spec=g.spec.replace(":oriented", ""),
        alphabet_for=g.alphabet_for,
        generate=g.generate,
        saturation=g.saturation,
        directed=False,
        two_sided=g.two_sided,
        compact=g.compact,
        point_set=g.point_set,
        blocks=g.blocks,
        block_count=g.block_count,
        finite_core=g.finite_core,
    )
    return out


def orient(g: SymbolicGraph) -> SymbolicGraph:
    """Keep one direction per pair, by clause order of the generator."""
    if g.generate is None:
        raise FamilyError("no orientation scheme is defined for %s" % g.spec)
    out = symmetrize(g)
    out.directed = True
    out.spec = g.spec if g.spec.endswith(":oriented") else g.spec + ":oriented"
    return out


class LevelEdges:
    """Deduplicated level-n prefix pairs with one representative edge each."""

    def __init__(self, pairs: list, reps: dict, alphabet: Alphabet, level: int):
        self.pairs = pairs
        self.reps = reps
        self.alphabet = alphabet
        self.level = level

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)


def edges_at_level(g: SymbolicGraph, n: int, bound: int | None = None) -> LevelEdges:
    """Exactly { (x|n, y|n) : (x, y) edge of g } below the saturation bound,
    with the letter cap fixed by B(n) even when the bound is enlarged."""
    if n < 0:
        raise FamilyError("level must be >= 0")
    base_bound = g.saturation(n)
    if bound is None:
        bound = base_bound
    alphabet = g.alphabet_for(n)
    allowed = set(alphabet.letters)
    pairs: list = []
    reps: dict = {}
    seen = set()

    def add(s, t, x, y):
        key = (s, t)
        if key not in seen:
            seen.add(key)
            pairs.append(key)
            reps[key] = (x, y)

    for (x, y) in g.generate(bound, n):
        if not _letters_ok(g, x, n, allowed) or not _letters_ok(g, y, n, allowed):
            continue
        s, t = g.project(x, n), g.project(y, n)
        add(s, t, x, y)
        if not g.directed:
            add(t, s, y, x)
    pairs.sort(key=lambda st: (alphabet.key(st[0]), alphabet.key(st[1])))
    return LevelEdges(pairs, reps, alphabet, n)


def _letters_ok(g: SymbolicGraph, x, n: int, allowed: set) -> bool:
    if hasattr(x, "letters_used"):
        return set(x.letters_used()) <= allowed
    # lazily generated points: check the visible window only
    return set(x.window(-n, n)) <= allowed


# ---------------------------------------------------------------------------
# the level-indexed approximations of odd cycles on the Baire-like space
# ({c, a, abar} union numerals)^omega; level k walks through 2k+3 classes


def _c(k):
    return ("c",) * k


def gm() -> SymbolicGraph:
    """Graph whose level-k part approximates the odd cycle on 2k+3 points;
    the space is not compact (numeral letters are unbounded)."""

    # the numeral alphabet is capped at the letters reachable below the
    # saturation bound, and the bound equals the cap so that enlarging it
    # cannot smuggle in new capped letters
    def alphabet_for(n: int) -> Alphabet:
        return Alphabet(numerals(saturation(n) + 1) + ["c", "a", "abar"])

    def saturation(n: int) -> int:
        return 2 * (n + 2) + 1

    def generate(bound: int, level: int = 0) -> list:
        edges = []
        for k in range(bound + 1):
            K = str(k)
            for j in range(bound + 1):
                edges.append(
                    (
                        UltWord(_c(k + 1) + ("a",) * (j + 1), ("abar",)),
                        UltWord((K,) + ("0",) * (j + 1), ("abar",)),
                    )
                )
                for i in range(2 * k + 1):
                    edges.append(
                        (
                            UltWord((K,) + (str(i),) * (j + 1), ("a",)),
                            UltWord((K,) + (str(i + 1),) * (j + 1), ("abar",)),
                        )
                    )
                edges.append(
                    (
                        UltWord((K,) + (str(2 * k + 1),) * (j + 1), ("a",)),
                        UltWord(_c(k + 1) + ("abar",) * (j + 1), ("a",)),
                    )
                )
        return edges

    return SymbolicGraph(
        spec="gm",
        alphabet_for=alphabet_for,
        generate=generate,
        saturation=saturation,
        compact=False,
        point_set="({c,a,abar} u omega)^omega",
    )


def gdelta(delta: UltWord) -> SymbolicGraph:
    """The copy of the gm-style graph whose level-k block is present exactly
    when delta(k) = 1; lives on a countable closed subspace."""
    if not delta.letters_used() <= {"0", "1"}:
        raise FamilyError("delta must be a 0/1 word")
    from .words import format_ult

    delta_str = format_ult(delta)

    def alphabet_for(n: int) -> Alphabet:
        return Alphabet(numerals(saturation(n) + 1) + ["c", "a", "abar"])

    def saturation(n: int) -> int:
        return 2 * (n + 2) + 1

    def generate(bound: int, level: int = 0) -> list:
        edges = []
        for k in range(bound + 1):
            if delta.letter(k) != "1":
                continue
            K = str(k)
            for j in range(bound + 1):
                edges.append(
                    (
                        UltWord(_c(k + 1) + ("0", str(j)), ("a",)),
                        UltWord((K,) + ("0",) * (j + 2), ("abar",)),
                    )
                )
                for i in range(2 * k + 1):
                    edges.append(
                        (
                            UltWord((K, str(i)) + ("0",) * (j + 1), ("a",)),
                            UltWord((K, str(i + 1)) + ("0",) * (j + 1), ("abar",)),
                        )
                    )
                edges.append(
                    (
                        UltWord((K, str(2 * k + 1)) + ("0",) * (j + 1), ("a",)),
                        UltWord(_c(k + 1) + ("1", str(j)), ("abar",)),
                    )
                )
        return edges

    return SymbolicGraph(
        spec="gdelta:delta=%s" % delta_str,
        alphabet_for=alphabet_for,
        generate=generate,
        saturation=saturation,
        # infinitely many blocks force unbounded first letters
        compact="1" not in delta.cycle,
        point_set="P_delta (block k present iff delta(k)=1)",
    )


def t_graph() -> SymbolicGraph:
    """The countable graph on the Baire space whose level-n quotients all have
    odd closed walks although a clopen 2-coloring exists; the space is not
    compact, which is exactly why the level criterion is not conclusive."""

    def alphabet_for(n: int) -> Alphabet:
        return Alphabet(numerals(saturation(n) + 1))

    def saturation(n: int) -> int:
        return 2 * (n + 2) + 2

    def generate(bound: int, level: int = 0) -> list:
        edges = []
        for k in range(bound + 1):
            two_k2 = str(2 * k + 2)
            edges.append(
                (
                    UltWord(("0",) * (2 * k + 1), ("1",)),
                    UltWord((two_k2,), ("0",)),
                )
            )
            for i in range(2 * k + 1):
                edges.append(
                    (
                        UltWord((two_k2, str(i)) + ("0",) * k, ("1",)),
                        UltWord((two_k2, str(i + 1)), ("0",)),
                    )
                )
            edges.append(
                (
                    UltWord((two_k2, str(2 * k + 1)) + ("0",) * k, ("1",)),
                    UltWord(("0",) * (2 * k + 2), ("1",)),
                )
            )
        return edges

    return SymbolicGraph(
        spec="t",
        alphabet_for=alphabet_for,
        generate=generate,
        saturation=saturation,
        compact=False,
        point_set="omega^omega",
    )


# ---------------------------------------------------------------------------
# block graphs built from a dynamical system


DEFAULT_EXTRA = ("c", "a", "abar")


def _two_then_odd_half_lengths(d: Radix, l_max: int) -> list[int]:
    """n_0 = 0 and n_{l+1} = (d_1 * ... * d_{l+1} - 1) / 2."""
    out = [0]
    prod = 1
    for l in range(1, l_max + 1):
        prod *= d.digit(l)
        out.append((prod - 1) // 2)
    return out


class BlockSystem:
    """Supplies the words s_l(i) used as block labels, plus the enumeration
    policy: how far the middle of a block must be walked for a given level
    (None: fully) and how many blocks saturate a level."""

    def __init__(self, name, block, half_lengths, offsets, alphabet_base,
                 middle_cap=None, saturation=None):
        self.name = name
        self.block = block  # (l, i) -> Word of length l+1
        self.half_lengths = half_lengths  # l -> n_l
        self.offsets = offsets  # l -> L_l
        self.alphabet_base = alphabet_base  # list of digit letters
        self._middle_cap = middle_cap
        self._saturation = saturation

    def width(self, l: int) -> int:
        return 2 * self.half_lengths(l) + 2

    def middle_cap(self, level: int):
        return self._middle_cap(level) if self._middle_cap else None

    def saturation(self, n: int) -> int:
        if self._saturation is not None:
            return self._saturation(n)
        return max(n, 1)


def _middle_range(lam: int, cap):
    """Middle chain indices to walk: everything when the block is narrow,
    otherwise the first `cap` of them (later projections repeat)."""
    if cap is None or lam - 1 <= cap:
        return range(lam - 1)
    return range(cap)


def odometer_block_system(
    d: Radix, n_seq: Callable[[int], int] | None = None,
    L_seq: Callable[[int], int] | None = None
) -> BlockSystem:
    if n_seq is None:
        if not d.in_class_two_then_odd:
            raise FamilyError(
                "default block schedule needs first bound 2 and odd later "
                "bounds; pass an explicit half-length sequence otherwise"
            )

        def n_seq(l: int) -> int:
            return _two_then_odd_half_lengths(d, l)[l]

    if L_seq is None:
        L_seq = lambda l: 0

    def block(l: int, i: int) -> Word:
        return orbit_point(d, L_seq(l) + i).prefix(l + 1)

    return BlockSystem(
        name="odometer",
        block=block,
        half_lengths=n_seq,
        offsets=L_seq,
        alphabet_base=numerals(d.max_digit()),
        # chain projections at a level repeat with the full period there
        middle_cap=lambda level: 2 * d.period(level + 1) + 2,
    )


def sturmian_block_system(
    r_spec: str, n_seq: Callable[[int], int] | None = None,
    L_seq: Callable[[int], int] | None = None
) -> BlockSystem:
    r = parse_quadratic(r_spec)
    check_rotation_number(r)
    if n_seq is None:
        n_seq = lambda l: l
    if L_seq is None:
        L_seq = lambda l: 0

    def block(l: int, i: int) -> Word:
        return sturmian_code(r, 0, L_seq(l) + i, L_seq(l) + i + l)

    return BlockSystem(
        name="sturmian",
        block=block,
        half_lengths=n_seq,
        offsets=L_seq,
        alphabet_base=["0", "1"],
        # aperiodic coding: saturation waits for factor recurrence instead
        saturation=lambda n: 4 * (n + 2) * (n + 2),
    )


def offsets_from_revisit_schedule(zeta_head: Sequence[int],
                                  zeta_cycle: Sequence[int],
                                  n_seq: Callable[[int], int]) -> Callable[[int], int]:
    """Window offsets derived from an eventually periodic revisit schedule:
    even windows start at the scheduled value, odd windows end there.  The
    schedule is a user-supplied parameter, not a canonical choice."""
    head = tuple(int(v) for v in zeta_head)
    cycle = tuple(int(v) for v in zeta_cycle)
    if not cycle:
        raise FamilyError("schedule cycle must be nonempty")

    def zeta(m: int) -> int:
        if m < len(head):
            return head[m]
        return cycle[(m - len(head)) % len(cycle)]

    def L(l: int) -> int:
        if l % 2 == 0:
            return zeta(l // 2)
        # the window [L_l, R_l] with R_l - L_l = 2 n_l + 1 ends at zeta(m)
        return zeta(l // 2) - 2 * n_seq(l) - 1

    return L


def graph_from_system(system: BlockSystem, spec: str, compact: bool = True) -> SymbolicGraph:
    """The degree-<=1 graph whose level-l part chains the blocks s_l(0),...,
    s_l(2n_l+1) between two marker points, approximating an odd cycle."""

    alphabet = Alphabet(system.alphabet_base + list(DEFAULT_EXTRA))

    def alphabet_for(n: int) -> Alphabet:
        return alphabet

    def saturation(n: int) -> int:
        return system.saturation(n)

    def generate(bound: int, level: int = 0) -> list:
        edges = []
        cap = system.middle_cap(max(level, 1))
        for l in range(bound + 1):
            lam = system.width(l)
            s = lambda i: system.block(l, i)
            edges.append(
                (
                    UltWord(_c(l + 1) + ("a",), ("abar",)),
                    UltWord(s(0) + ("abar",), ("a",)),
                )
            )
            # chain indices beyond the cap repeat every level-`level`
            # projection already produced (residues modulo the level period)
            for i in _middle_range(lam, cap):
                edges.append(
                    (
                        UltWord(s(i) + ("a",) * (i + 1), ("abar",)),
                        UltWord(s(i + 1) + ("abar",) * (i + 2), ("a",)),
                    )
                )
            edges.append(
                (
                    UltWord(s(lam - 1) + ("a",) * lam, ("abar",)),
                    UltWord(_c(l + 1) + ("abar",), ("a",)),
                )
            )
        return edges

    g = SymbolicGraph(
        spec=spec,
        alphabet_for=alphabet_for,
        generate=generate,
        saturation=saturation,
        compact=compact,
        point_set="closure of the block graph projection",
        blocks=system.block,
        block_count=lambda l: system.width(l),
    )
    return g


def go_plus(d: Radix) -> SymbolicGraph:
    """Block graph of the odometer with the default schedule."""
    from .dynamics import format_radix

    return graph_from_system(
        odometer_block_system(d), spec="go-plus:d=%s" % format_radix(d)
    )


# ---------------------------------------------------------------------------


def go_graph(d: Radix) -> SymbolicGraph:
    """Graph induced by the odometer itself on the digit space: edges join
    each point to its successor."""
    from .dynamics import format_radix

    alphabet = d.alphabet()

    def alphabet_for(n: int) -> Alphabet:
        return alphabet

    def saturation(n: int) -> int:
        return max(n, 1)

    def generate(bound: int, level: int = 0) -> list:
        edges = []
        x = d.zero()
        for _ in range(d.period(bound)):
            y = odometer_iter(d, x, 1)
            edges.append((x, y))
            x = y
        return edges

    return SymbolicGraph(
        spec="graph-o:d=%s" % format_radix(d),
        alphabet_for=alphabet_for,
        generate=generate,
        saturation=saturation,
        compact=True,
        point_set="full digit space",
    )


def gp_chain(d: Radix, p: int) -> SymbolicGraph:
    """Member p of the descending chain: only block levels l >= p remain, and
    every block is doubled behind a marker letter 'd' so that the closure
    carries a cycle of length 2 n_p + 3."""
    from .dynamics import format_radix

    if not d.in_class_two_then_odd:
        raise FamilyError("the chain needs first bound 2 and odd later bounds")
    if p < 0:
        raise FamilyError("p must be >= 0")
    system = odometer_block_system(d)
    alphabet = Alphabet(numerals(d.max_digit()) + ["c", "a", "abar", "d"])

    def alphabet_for(n: int) -> Alphabet:
        return alphabet

    def saturation(n: int) -> int:
        return max(n, 1)

    def generate(bound: int, level: int = 0) -> list:
        edges = []
        cap = system.middle_cap(max(level, 1))
        for l in range(p, p + bound + 1):
            lam = system.width(l)
            s = lambda i: system.block(l, i)
            for j in range(bound + 1):
                D = ("d",) * (j + 1)
                edges.append(
                    (
                        UltWord(_c(l + 1) + D + ("a",), ("abar",)),
                        UltWord(s(0) + D + ("abar",), ("a",)),
                    )
                )
                for i in _middle_range(lam, cap):
                    edges.append(
                        (
                            UltWord(s(i) + D + ("a",) * (i + 1), ("abar",)),
                            UltWord(s(i + 1) + D + ("abar",) * (i + 2), ("a",)),
                        )
                    )
                edges.append(
                    (
                        UltWord(s(lam - 1) + D + ("a",) * lam, ("abar",)),
                        UltWord(_c(l + 1) + D + ("abar",), ("a",)),
                    )
                )
        return edges

    return SymbolicGraph(
        spec="gp:d=%s,p=%d" % (format_radix(d), p),
        alphabet_for=alphabet_for,
        generate=generate,
        saturation=saturation,
        compact=True,
        point_set="closure of the marked block graph projection",
        blocks=system.block,
        block_count=lambda l: system.width(l),
    )


# ---------------------------------------------------------------------------
# restrictions of the odometer graph to countable orbit pieces


class OrbitIndexSet:
    """Decidable subset of omega with a finite description: a finite part,
    arithmetic progressions, and interval schemes {base(l) + i : i < 3^l}
    for l drawn from a described set."""

    def __init__(self, finite=(), progressions=(), scheme_levels=None):
        self.finite = frozenset(int(i) for i in finite)
        self.progressions = tuple((int(a), int(b)) for (a, b) in progressions)
        if any(b <= 0 for (_, b) in self.progressions):
            raise FamilyError("progression step must be positive")
        self.scheme_levels = scheme_levels  # OrbitIndexSet or None

    @staticmethod
    def interval_base(l: int) -> int:
        return 3 ** (l + 2)

    def __contains__(self, i: int) -> bool:
        if i in self.finite:
            return True
        for (a, b) in self.progressions:
            if i >= a and (i - a) % b == 0:
                return True
        if self.scheme_levels is not None:
            if i == 0:
                return True
            l = 0
            while self.interval_base(l) <= i:
                if i < self.interval_base(l) + 3**l and l in self.scheme_levels:
                    return True
                l += 1
        return False

    def members_upto(self, bound: int) -> list[int]:
        return [i for i in range(bound + 1) if i in self]

    def scheme_level_list(self, upto: int) -> list[int]:
        if self.scheme_levels is None:
            return []
        return [l for l in range(upto + 1) if l in self.scheme_levels]

    def describe(self) -> str:
        parts = []
        if self.finite:
            parts.append("{%s}" % ",".join(str(i) for i in sorted(self.finite)))
        for (a, b) in self.progressions:
            parts.append("%d+%dk" % (a, b))
        if self.scheme_levels is not None:
            parts.append("sa{%s}" % self.scheme_levels.describe())
        return "|".join(parts) if parts else "{}"


def parse_index_set(s: str) -> OrbitIndexSet:
    """`{0,9}` | `1+2k` | `sa{0,2}` | unions joined with `|`; inside sa{...}
    the same grammar describes the level set."""
    s = s.strip()
    finite: set[int] = set()
    progressions = []
    scheme = None
    depth = 0
    parts, cur = [], ""
    for ch in s:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == "|" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    for part in parts:
        part = part.strip()
        if not part:
            continue
        if part.startswith("sa{") and part.endswith("}"):
            scheme = parse_index_set(part[3:-1])
        elif part.startswith("{") and part.endswith("}"):
            inner = part[1:-1].strip()
            if inner:
                finite |= {int(t) for t in inner.split(",")}
        elif "+" in part and part.endswith("k"):
            a, b = part[:-1].split("+")
            progressions.append((int(a), int(b)))
        else:
            finite.add(int(part))
    return OrbitIndexSet(finite, progressions, scheme)


def restricted_orbit_graph(d: Radix, S: OrbitIndexSet) -> SymbolicGraph:
    """Edges join the i-th and (i+1)-st iterates of the zero word, for i in S."""
    from .dynamics import format_radix

    alphabet = d.alphabet()

    def alphabet_for(n: int) -> Alphabet:
        return alphabet

    def index_bound(n: int) -> int:
        out = max(S.finite, default=0)
        for (a, b) in S.progressions:
            out = max(out, a + b * d.period(n))
        if S.scheme_levels is not None:
            levels = S.scheme_level_list(n + 4)
            at_least_n = [l for l in levels if l >= n]
            use = at_least_n[0] if at_least_n else (levels[-1] if levels else 0)
            out = max(out, OrbitIndexSet.interval_base(use) + 3**use)
        return out

    def saturation(n: int) -> int:
        return index_bound(n)

    def generate(bound: int, level: int = 0) -> list:
        edges = []
        x = d.zero()
        for i in range(bound + 1):
            y = odometer_iter(d, x, 1)
            if i in S:
                edges.append((x, y))
            x = y
        return edges

    return SymbolicGraph(
        spec="orbit:d=%s,S=%s" % (format_radix(d), S.describe()),
        alphabet_for=alphabet_for,
        generate=generate,
        saturation=saturation,
        compact=True,
        point_set="closure of a restricted orbit",
    )


# ---------------------------------------------------------------------------
# two-sided subshift families


def _k0_alpha0() -> BiWord:
    return BiWord(("0", "1"), (), ("0", "1"))


def _rank_block(m: int, j: int) -> Word:
    """Level-m block j: level 0 blocks are all 01; at level m+1 block 0 is 11
    and block j+1 is (01)^(j+1) 11 followed by the level-m blocks 0..j+1."""
    if m == 0:
        return ("0", "1")
    if j == 0:
        return ("1", "1")
    out = ("0", "1") * j + ("1", "1")
    for k in range(j + 1):
        out += _rank_block(m - 1, k)
    return out


def rank_point_alpha(m: int) -> BiWord | BlockWord:
    """(01)-periodic to the left; 11 then the level-(m-1) blocks to the right."""
    if m == 0:
        return _k0_alpha0()
    if m == 1:
        return BiWord(("0", "1"), ("1", "1"), ("0", "1"))
    return BlockWord(
        ("0", "1"),
        lambda j: ("1", "1") if j == 0 else _rank_block(m - 1, j - 1),
        start=0,
    )


def rank_point_beta(m: int) -> BiWord | BlockWord:
    """Like alpha_{m+1} but with a single 1 before the block stream."""
    if m == 0:
        return BiWord(("0", "1"), ("1",), ("0", "1"))
    return BlockWord(
        ("0", "1"),
        lambda j: ("1",) if j == 0 else _rank_block(m, j - 1),
        start=0,
    )


def _shift_edges(points: list, bound: int) -> list:
    """Edges (x, shift-by-one image) for finitely many shifts of each base
    point; a periodic base contributes its whole finite orbit."""
    from .dynamics import periodic_point_period

    edges = []
    for base in points:
        period = None
        if isinstance(base, BiWord):
            period = periodic_point_period(base)
        if period is not None:
            for k in range(period):
                edges.append((base.shift(k), base.shift(k + 1)))
        else:
            for k in range(-bound, bound + 1):
                edges.append((base.shift(k), base.shift(k + 1)))
    return edges


def k0_graph() -> SymbolicGraph:
    """Graph of the shift on the union of the 2-periodic orbit and the orbit
    of the word with a single doubled letter."""
    alphabet = Alphabet(["0", "1"])
    points = [_k0_alpha0(), rank_point_beta(0)]

    return SymbolicGraph(
        spec="k0",
        alphabet_for=lambda n: alphabet,
        generate=lambda bound, level=0: _shift_edges(points, bound),
        saturation=lambda n: 2 * n + 4,
        two_sided=True,
        compact=True,
        point_set="two shift orbits in {0,1}^Z",
    )


def rank_subshift(n: int) -> SymbolicGraph:
    """Countable subshift of rank n+2: orbits of alpha_0..alpha_n and beta_n."""
    if not (0 <= n <= 4):
        raise FamilyError("rank parameter must be between 0 and 4")
    alphabet = Alphabet(["0", "1"])
    points = [rank_point_alpha(m) for m in range(n + 1)] + [rank_point_beta(n)]

    def saturation(level: int) -> int:
        # past this many shifts, every window already occurred: the block
        # stream repeats all narrow patterns within the first few blocks
        pos = 2
        for j in range(2 * level + 5):
            pos += len(_rank_block(max(n, 1), j))
        return pos + 2 * level

    return SymbolicGraph(
        spec="rank-subshift:n=%d" % n,
        alphabet_for=lambda level: alphabet,
        generate=lambda bound, level=0: _shift_edges(points, bound),
        saturation=saturation,
        two_sided=True,
        compact=True,
        point_set="countable subshift of rank %d" % (n + 2),
    )


# ---------------------------------------------------------------------------
# the power-set embedding family


def _ka_points_and_map(A: Sequence[int], chain_depth: int):
    """Point list of the family and its homeomorphism, restricted to spine
    chain depth `chain_depth`; the even cycles for n in A are always complete."""
    A = sorted(set(int(a) for a in A))
    if len(A) > 4 or any(a > 4 or a < 0 for a in A):
        raise FamilyError("A must be a set of at most 4 levels, each <= 4")

    def up(e):  # epsilon + 1 mod 4
        return (e + 1) % 4

    def down(e):
        return (e - 1) % 4

    pts: dict[UltWord, UltWord] = {}

    def w(*parts) -> UltWord:
        head: tuple = ()
        for part in parts[:-1]:
            head += part
        return UltWord(head, parts[-1])

    # the 4-cycle of constant words
    for e in range(4):
        pts[w((), (str(e),))] = w((), (str(up(e)),))
    # the spine through the constant-4 word
    pts[w((), ("4",))] = w(("0",), ("1",))
    pts[w(("3", "2"), ("0",))] = w((), ("4",))
    for nn in range(chain_depth + 1):
        for e in range(4):
            src1 = w((str(e),) * (nn + 1) + (str(up(e)),), ("1",))
            if e != 3:
                pts[src1] = w((str(up(e)),) * (nn + 1) + (str(up(up(e))),), ("1",))
            else:
                pts[src1] = w(("0",) * (nn + 2), ("1",))
            src0 = w((str(e),) * (nn + 1) + (str(down(e)),), ("0",))
            if e != 3:
                pts[src0] = w((str(up(e)),) * (nn + 1) + (str(e),), ("0",))
            elif nn >= 1:
                # 3^{m+2} 2 0^inf -> 0^{m+1} 3 0^inf
                pts[src0] = w(("0",) * nn + ("3",), ("0",))
    # the even cycles indexed by A
    for a in A:
        strings = [
            tuple(format(i, "0%db" % (a + 1))) for i in range(2 ** (a + 1))
        ]
        for idx, s in enumerate(strings):
            for e in range(4):
                src = w((str(e),) * (a + 2) + (str(up(e)),) + s, ("2",))
                if e != 3:
                    dst = w((str(up(e)),) * (a + 2) + (str(up(up(e))),) + s, ("2",))
                else:
                    nxt = strings[(idx + 1) % len(strings)]
                    dst = w(("0",) * (a + 2) + ("1",) + nxt, ("2",))
                pts[src] = dst
    return pts


def ka_graph(A: Sequence[int]) -> SymbolicGraph:
    """Graph of a homeomorphism of a countable compact space whose finite
    cycles have lengths 4 and 4*2^(a+1) for a in A."""
    A = sorted(set(int(a) for a in A))
    if len(A) > 4 or any(a > 4 or a < 0 for a in A):
        raise FamilyError("A must be a set of at most 4 levels, each <= 4")
    alphabet = Alphabet(numerals(5))
    spec = "ka:A=%s" % ",".join(str(a) for a in A)

    def generate(bound: int, level: int = 0) -> list:
        pts = _ka_points_and_map(A, chain_depth=bound)
        return [(x, y) for (x, y) in pts.items()]

    def finite_core() -> FiniteGraph:
        # the finite orbits are the 4-cycle of constant words and the even
        # cycles indexed by A; the spine orbit contributes no finite cycles
        pts = _ka_points_and_map(A, chain_depth=max(A, default=0) + 2)
        constants = {(str(e),) for e in range(4)}
        keep = {
            x: y
            for (x, y) in pts.items()
            if (x.head == () and x.cycle in constants)
            or (x.head != () and x.cycle == ("2",))
        }
        from .words import format_ult

        edges = [(format_ult(x), format_ult(y)) for (x, y) in keep.items()]
        verts = sorted({v for e in edges for v in e})
        return FiniteGraph(verts, edges)

    return SymbolicGraph(
        spec=spec,
        alphabet_for=lambda n: alphabet,
        generate=generate,
        saturation=lambda n: n + 2,
        compact=True,
        point_set="countable compact subset of 5^omega",
        finite_core=finite_core,
    )


# ---------------------------------------------------------------------------
# family spec strings


def parse_family(spec: str) -> SymbolicGraph:
    """`odd-cycle:p=2` is a FiniteGraph and handled by the CLI separately;
    everything else builds a SymbolicGraph.  A trailing `:oriented` selects
    the primitive orientation."""
    spec = spec.strip()
    oriented = spec.endswith(":oriented")
    if oriented:
        spec = spec[: -len(":oriented")]
    name, _, argstr = spec.partition(":")
    args = _parse_args(argstr)
    if name == "gm":
        g = gm()
    elif name == "gdelta":
        from .words import parse_ult

        g = gdelta(parse_ult(args["delta"]))
    elif name == "go-plus":
        g = go_plus(parse_radix(args["d"]))
    elif name == "graph-o":
        g = go_graph(parse_radix(args["d"]))
    elif name == "t":
        g = t_graph()
    elif name == "k0":
        g = k0_graph()
    elif name == "rank-subshift":
        g = rank_subshift(int(args["n"]))
    elif name == "gp":
        g = gp_chain(parse_radix(args["d"]), int(args["p"]))
    elif name == "orbit":
        g = restricted_orbit_graph(parse_radix(args["d"]), parse_index_set(args["S"]))
    elif name == "ka":
        g = ka_graph([int(t) for t in args["A"].split(",")] if args["A"] else [])
    else:
        raise FamilyError("unknown family %r" % name)
    return orient(g) if oriented else g


def _parse_args(argstr: str) -> dict:
    """key=value pairs separated by commas, where values may themselves
    contain commas (a new key starts only at `name=`)."""
    args: dict[str, str] = {}
    if not argstr:
        return args
    key = None
    for tok in argstr.split(","):
        head, eq, rest = tok.partition("=")
        if eq and head.isidentifier():
            key = head
            args[key] = rest
        else:
            if key is None:
                raise FamilyError("bad family arguments %r" % argstr)
            args[key] += "," + tok
    return args
