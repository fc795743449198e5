"""Construction and verification of explicit continuous colorings, finite
coloring search on quotients, return-time colorings, and the subgraph
criterion for the delta-indexed families."""

from __future__ import annotations

from typing import Callable, Iterable, Optional

from .dynamics import Radix, prefix_succ
from .families import SymbolicGraph
from .quotients import QuotientGraph, quotient
from .words import Alphabet, Word, format_word, parse_prefix


class ColoringError(ValueError):
    pass


class TotalityError(ColoringError):
    """A prefix outside the declared color map was encountered."""


class ClopenColoring:
    """Color map constant on level-L cylinders: a total map from length-L
    prefixes (windows for two-sided families) to colors 0..k-1."""

    def __init__(self, level: int, colors: int, mapping: dict,
                 alphabet: Alphabet | None = None, two_sided: bool = False,
                 name: str = ""):
        if colors < 1:
            raise ColoringError("need at least one color")
        self.level = level
        self.colors = colors
        self.mapping = dict(mapping)
        self.alphabet = alphabet
        self.two_sided = two_sided
        self.name = name
        for v, c in self.mapping.items():
            if not (0 <= c < colors):
                raise ColoringError("color %r out of range for %r" % (c, v))

    def color_of_prefix(self, s: Word) -> int:
        key = tuple(s)
        if key not in self.mapping:
            raise TotalityError("prefix %r not in the declared map" % (format_word(key),))
        return self.mapping[key]

    def color_of_point(self, x) -> int:
        if self.two_sided:
            return self.color_of_prefix(x.window(-self.level, self.level))
        return self.color_of_prefix(x.prefix(self.level))

    def as_json(self) -> dict:
        return {
            "level": self.level,
            "colors": self.colors,
            "map": {format_word(v): c for v, c in sorted(self.mapping.items())},
        }


class PredicateColoring:
    """Decision procedure on points with a declared color count; verification
    against a family is a bounded edge sweep (sound but partial)."""

    def __init__(self, name: str, colors: int, fn: Callable):
        self.name = name
        self.colors = colors
        self.fn = fn

    def color_of_point(self, x) -> int:
        return self.fn(x)


class Violation:
    def __init__(self, edge, colors):
        self.edge = edge
        self.colors = colors

    def __repr__(self):
        return "Violation(%r -> colors %r)" % (self.edge, self.colors)


class VerifyResult:
    def __init__(self, ok: bool, violation: Optional[Violation], complete: bool,
                 checked: int, bound: int):
        self.ok = ok
        self.violation = violation
        self.complete = complete
        self.checked = checked
        self.bound = bound

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        mode = "complete" if self.complete else "bounded sweep"
        if self.ok:
            return "ok (%s, %d edges checked, bound %d)" % (mode, self.checked, self.bound)
        return "violation %r (%s)" % (self.violation, mode)


def verify_coloring(g: SymbolicGraph, c, bound: int) -> VerifyResult:
    """Check properness of a coloring against the family's edges.

    A ClopenColoring at level L is checked on the level max(L, bound)
    quotient, which is complete: the coloring is proper on the whole graph iff
    no quotient edge is monochromatic.  A PredicateColoring is checked on the
    generated edges with parameters up to `bound` only, and the result says
    so."""
    if isinstance(c, ClopenColoring):
        n = max(c.level, bound)
        q = quotient(g, n).undirected()
        checked = 0
        for (s, t) in q.edges:
            cs = c.color_of_prefix(s[: _width(c)] if not c.two_sided else _mid(s, c))
            ct = c.color_of_prefix(t[: _width(c)] if not c.two_sided else _mid(t, c))
            checked += 1
            if cs == ct:
                return VerifyResult(False, Violation((q.label(s), q.label(t)), (cs, ct)),
                                    True, checked, n)
        return VerifyResult(True, None, True, checked, n)
    count = 0
    for (x, y) in g.generate(bound):
        cx, cy = c.color_of_point(x), c.color_of_point(y)
        count += 1
        if cx == cy:
            return VerifyResult(False, Violation((x, y), (cx, cy)), False, count, bound)
    return VerifyResult(True, None, False, count, bound)


def _width(c: ClopenColoring) -> int:
    return c.level


def _mid(s: Word, c: ClopenColoring) -> Word:
    # central truncation of a window of width 2n down to width 2L
    n = len(s) // 2
    return s[n - c.level : n + c.level]


# ---------------------------------------------------------------------------
# the explicit colorings


def parity_coloring(d: Radix) -> ClopenColoring:
    """2-coloring by the parity of the odometer index below the first even
    digit bound; proper for the odometer graph because the period there is
    even.  Rejected when every bound is odd (no such coloring exists)."""
    span = len(d.head) + len(d.cycle)
    j0 = None
    for j in range(span):
        if d.digit(j) % 2 == 0:
            j0 = j
            break
    if j0 is None:
        raise ColoringError(
            "all digit bounds are odd: the odometer graph has no clopen "
            "2-coloring"
        )
    level = j0 + 1
    mapping = {}
    t = ("0",) * level
    for i in range(d.period(level)):
        mapping[t] = i % 2
        t = prefix_succ(d, t)
    return ClopenColoring(level=level, colors=2, mapping=mapping,
                          alphabet=d.alphabet(), name="parity")


def three_coloring_beta(g: SymbolicGraph, check_levels: int = 6) -> ClopenColoring:
    """Level-1 3-coloring of a block family: marker class, first letter 0,
    first letter 1.  Requires block i of every level to start with the letter
    matching the parity of i; rejected with a counterexample otherwise."""
    if g.blocks is None or g.block_count is None:
        raise ColoringError("family %s does not expose blocks" % g.spec)
    for l in range(check_levels):
        for i in range(g.block_count(l)):
            want = str(i % 2)
            got = g.blocks(l, i)[0]
            if got != want:
                raise ColoringError(
                    "block hypothesis fails at level %d index %d: first "
                    "letter %r, expected %r" % (l, i, got, want)
                )
    mapping = {("c",): 0, ("0",): 1, ("1",): 2}
    return ClopenColoring(level=1, colors=3, mapping=mapping,
                          alphabet=g.alphabet_for(1), name="marker-0-1")


def t_coloring() -> PredicateColoring:
    """The clopen 2-coloring of the Baire-space family: class 1 holds the
    points starting with 0 and the cylinders (2k+2)(j+1)0^{k+1}."""

    def fn(x) -> int:
        if x.letter(0) == "0":
            return 1
        first = int(x.letter(0))
        if first >= 2 and first % 2 == 0:
            k = (first - 2) // 2
            second = x.letter(1)
            if second.isdigit():
                j = int(second) - 1
                if 0 <= j <= 2 * k and all(
                    x.letter(2 + m) == "0" for m in range(k + 1)
                ):
                    return 1
        return 0

    return PredicateColoring("t-coloring", 2, fn)


# ---------------------------------------------------------------------------
# coloring search


class SearchBudgetError(RuntimeError):
    pass


def search_coloring(q: QuotientGraph, k: int) -> Optional[ClopenColoring]:
    """Exhaustive backtracking proper k-coloring of the quotient, or None as
    an absence certificate.  Vertices are ordered by descending degree (ties
    by alphabet order), so the output is deterministic."""
    if k < 1 or k > 6:
        raise SearchBudgetError("color count must be between 1 and 6")
    if len(q.vertices) > 10**5:
        raise SearchBudgetError("quotient too large for exhaustive search")
    q = q.undirected()
    adj: dict = {v: set() for v in q.vertices}
    for (u, v) in q.edges:
        if u == v:
            return None  # a self-loop defeats every coloring
        adj[u].add(v)
        adj[v].add(u)
    order = sorted(q.vertices, key=lambda v: (-len(adj[v]), q.alphabet.key(v)))
    color: dict = {}

    def backtrack(idx: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        used = {color[u] for u in adj[v] if u in color}
        for c in range(k):
            if c in used:
                continue
            color[v] = c
            if backtrack(idx + 1):
                return True
            del color[v]
        return False

    if not backtrack(0):
        return None
    return ClopenColoring(level=q.level, colors=k,
                          mapping={v: color[v] for v in q.vertices},
                          alphabet=q.alphabet, two_sided=q.two_sided,
                          name="searched")


# ---------------------------------------------------------------------------
# return times


class UndeterminedPrefixError(ColoringError):
    def __init__(self, needed: int):
        super().__init__(
            "prefix too short to determine the return time; need length >= %d"
            % needed
        )
        self.needed = needed


def return_time(d: Radix, C: Word, x: Word) -> int:
    """r_C(x): least l < L with the l-th odometer iterate of x entering the
    cylinder C, where L is twice the full period at |C| (every orbit returns
    within one period)."""
    C = tuple(C)
    x = tuple(x)
    if not C:
        raise ColoringError("cylinder must be nonempty")
    if len(x) < len(C):
        raise UndeterminedPrefixError(len(C))
    L = 2 * d.period(len(C))
    t = x
    for l in range(L):
        if t[: len(C)] == C:
            return l
        t = prefix_succ(d, t)
    raise AssertionError("odometer orbit failed to return within one period")


def return_parity_coloring(d: Radix, C: Word) -> ClopenColoring:
    """The coloring prefix -> parity of its return time to C, at level |C|."""
    C = tuple(C)
    level = len(C)
    mapping = {}
    t = ("0",) * level
    for _ in range(d.period(level)):
        mapping[t] = return_time(d, C, t) % 2
        t = prefix_succ(d, t)
    return ClopenColoring(level=level, colors=2, mapping=mapping,
                          alphabet=d.alphabet(), name="return-parity")


# ---------------------------------------------------------------------------
# the delta-family subgraph criterion


class IndexSetSpec:
    """Eventually periodic subset of omega: a finite part plus arithmetic
    progressions; membership and infinitude are decided from the
    description."""

    def __init__(self, finite: Iterable[int] = (), progressions=()):
        self.finite = frozenset(int(i) for i in finite)
        self.progressions = tuple((int(a), int(b)) for (a, b) in progressions)
        if any(b <= 0 for (_, b) in self.progressions):
            raise ColoringError("progression step must be positive")

    def __contains__(self, i: int) -> bool:
        if i in self.finite:
            return True
        return any(i >= a and (i - a) % b == 0 for (a, b) in self.progressions)

    @property
    def infinite(self) -> bool:
        return bool(self.progressions)

    @classmethod
    def all(cls) -> "IndexSetSpec":
        return cls((), ((0, 1),))

    @classmethod
    def evens(cls) -> "IndexSetSpec":
        return cls((), ((0, 2),))

    @classmethod
    def empty(cls) -> "IndexSetSpec":
        return cls()


class DeltaSubgraphSpec:
    """Finite description of a subgraph (V, E) of a delta-family: the marker
    limit flag, the set of k whose central points all lie in V, and the
    j-index sets of the three edge clauses (defaults plus finitely many
    overrides)."""

    def __init__(
        self,
        has_center: bool = True,
        center_levels: IndexSetSpec | None = None,
        entry_sets: IndexSetSpec | None = None,
        step_sets: IndexSetSpec | None = None,
        exit_sets: IndexSetSpec | None = None,
        entry_overrides: dict | None = None,
        step_overrides: dict | None = None,
        exit_overrides: dict | None = None,
    ):
        self.has_center = has_center
        self.center_levels = center_levels or IndexSetSpec.all()
        self.entry_sets = entry_sets or IndexSetSpec.all()
        self.step_sets = step_sets or IndexSetSpec.all()
        self.exit_sets = exit_sets or IndexSetSpec.all()
        self.entry_overrides = dict(entry_overrides or {})  # k -> IndexSetSpec
        self.step_overrides = dict(step_overrides or {})  # (k, i) -> IndexSetSpec
        self.exit_overrides = dict(exit_overrides or {})  # k -> IndexSetSpec

    def entry(self, k: int) -> IndexSetSpec:
        return self.entry_overrides.get(k, self.entry_sets)

    def step(self, k: int, i: int) -> IndexSetSpec:
        return self.step_overrides.get((k, i), self.step_sets)

    def exit(self, k: int) -> IndexSetSpec:
        return self.exit_overrides.get(k, self.exit_sets)

    def max_override(self) -> int:
        ks = [0]
        ks += list(self.entry_overrides) + list(self.exit_overrides)
        ks += [k for (k, _) in self.step_overrides]
        return max(ks)


class CharsubVerdict:
    def __init__(self, big: bool, failing_clause: str | None, threshold: int | None):
        self.big = big  # True: no continuous 2-coloring; False: one exists
        self.failing_clause = failing_clause
        self.threshold = threshold

    def __repr__(self):
        if self.big:
            return "CCN >= 3"
        return "CCN <= 2 (clause %s fails from k = %s)" % (
            self.failing_clause,
            self.threshold,
        )


def charsub_check(delta, spec: DeltaSubgraphSpec) -> CharsubVerdict:
    """Decide whether the described subgraph of the delta-family still avoids
    continuous 2-colorings: it does iff the marker limit stays in V and
    infinitely many present levels k keep all central points and infinitely
    many j in every clause set."""
    if not spec.has_center:
        return CharsubVerdict(False, "center point dropped from V", 0)

    def level_good(k: int) -> bool:
        if delta.letter(k) != "1":
            return False
        if k not in spec.center_levels:
            return False
        if not spec.entry(k).infinite:
            return False
        if any(not spec.step(k, i).infinite for i in range(2 * k + 1)):
            return False
        if not spec.exit(k).infinite:
            return False
        return True

    # beyond the overrides, the finite parts and both heads, level_good is
    # periodic in k with the joint period of delta and the level set
    import math

    period = len(delta.cycle)
    for (_, step) in spec.center_levels.progressions:
        period = math.lcm(period, step)
    start = max(
        spec.max_override() + 1,
        len(delta.head),
        max(spec.center_levels.finite, default=-1) + 1,
    )
    horizon = start + 2 * period + 2
    good = [k for k in range(horizon) if level_good(k)]
    if any(k >= start + period for k in good):
        return CharsubVerdict(True, None, None)
    # find the first failing clause at the first bad present level
    for k in range(horizon):
        if delta.letter(k) != "1":
            continue
        if k in good:
            continue
        if k not in spec.center_levels:
            return CharsubVerdict(False, "central points missing", k)
        if not spec.entry(k).infinite:
            return CharsubVerdict(False, "entry edges finite", k)
        if any(not spec.step(k, i).infinite for i in range(2 * k + 1)):
            return CharsubVerdict(False, "step edges finite", k)
        if not spec.exit(k).infinite:
            return CharsubVerdict(False, "exit edges finite", k)
    return CharsubVerdict(False, "no present level", 0)


# ---------------------------------------------------------------------------
# coloring files


def coloring_to_text(c: ClopenColoring, family: str) -> str:
    head = "level=%d colors=%d family=%s" % (c.level, c.colors, family)
    if c.two_sided:
        head += " kind=window"
    lines = [head]
    for v, col in sorted(c.mapping.items()):
        label = format_word(v, c.alphabet) if v else "<empty>"
        lines.append("%s %d" % (label, col))
    return "\n".join(lines) + "\n"


def coloring_from_text(text: str, alphabet: Alphabet | None = None):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = dict(tok.split("=", 1) for tok in lines[0].split())
    level = int(header["level"])
    colors = int(header["colors"])
    mapping = {}
    for ln in lines[1:]:
        pref, col = ln.rsplit(None, 1)
        key = () if pref == "<empty>" else parse_prefix(pref, alphabet)
        mapping[key] = int(col)
    c = ClopenColoring(level=level, colors=colors, mapping=mapping,
                       alphabet=alphabet,
                       two_sided=header.get("kind") == "window")
    return c, header.get("family", "")
