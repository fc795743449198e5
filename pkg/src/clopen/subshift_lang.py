"""Forbidden-factor subshifts, factor languages and complexity, power
freeness, uniform recurrence, and resolution-bounded Cantor-Bendixson ranks
of symbolically presented countable compacta."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .dynamics import (
    QuadraticReal,
    check_rotation_number,
    fibonacci_len,
    periodic_point_period,
    sturmian_code,
)
from .words import BiWord, BlockWord, Word, as_word, format_word


class SubshiftError(ValueError):
    pass


class BudgetError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# forbidden factors


class ForbiddenSet:
    """Finite set of forbidden words; M is the longest forbidden length."""

    def __init__(self, words: Iterable):
        self.words = frozenset(as_word(w) for w in words)
        if any(len(w) == 0 for w in self.words):
            raise SubshiftError("the empty word cannot be forbidden")
        self.max_len = max((len(w) for w in self.words), default=0)

    def __contains__(self, w) -> bool:
        return as_word(w) in self.words

    def __len__(self):
        return len(self.words)

    def __repr__(self):
        return "ForbiddenSet(%d words, max length %d)" % (len(self.words), self.max_len)


def member(b: BiWord, F: ForbiddenSet) -> bool:
    """True iff no factor of b lies in F; complete because factor sets of
    eventually periodic words are computed exactly."""
    lengths = sorted({len(w) for w in F.words})
    for m in lengths:
        if b.factors(m) & F.words:
            return False
    return True


def expand_fib_forbidden(p: int, budget: int = 200_000) -> ForbiddenSet:
    """The stage-p forbidden set: 00, 111, and all eighth powers w^8 with
    0 < 8|w| < f(9p+5)."""
    limit = fibonacci_len(9 * p + 5)
    max_w = (limit - 1) // 8
    count = 2 ** (max_w + 1) - 2
    if count > budget:
        raise BudgetError(
            "stage %d needs %d power words, over the budget of %d"
            % (p, count, budget)
        )
    words = [("0", "0"), ("1", "1", "1")]
    for ln in range(1, max_w + 1):
        for i in range(2**ln):
            w = tuple(format(i, "0%db" % ln))
            words.append(w * 8)
    return ForbiddenSet(words)


# ---------------------------------------------------------------------------
# subshift presentations and languages


class SubshiftSpec:
    def language(self, n: int) -> set:
        raise NotImplementedError

    @property
    def alphabet_letters(self) -> tuple:
        raise NotImplementedError


class ForbiddenSubshift(SubshiftSpec):
    """All biinfinite words avoiding F: the language is computed exactly from
    the de-Bruijn-style transition graph pruned to its biinfinite part."""

    def __init__(self, letters: Sequence[str], F: ForbiddenSet):
        self.letters = tuple(letters)
        self.F = F
        self._pruned: Optional[set] = None

    @property
    def alphabet_letters(self):
        return self.letters

    def _avoids(self, w: Word) -> bool:
        for m in {len(f) for f in self.F.words}:
            if any(w[i : i + m] in self.F.words for i in range(len(w) - m + 1)):
                return False
        return True

    def _vertices(self) -> set:
        """F-avoiding words of length max(M-1, 1) that extend to biinfinite
        F-avoiding words (prune until every vertex has a predecessor and a
        successor)."""
        if self._pruned is not None:
            return self._pruned
        L = max(self.F.max_len - 1, 1)
        verts = set()
        stack = [()]
        while stack:
            w = stack.pop()
            if len(w) == L:
                verts.add(w)
                continue
            for a in self.letters:
                nxt = w + (a,)
                if self._avoids(nxt):
                    stack.append(nxt)
        while True:
            with_succ = set()
            with_pred = set()
            for w in verts:
                for a in self.letters:
                    ext = w + (a,)
                    if self._avoids(ext) and ext[1:] in verts:
                        with_succ.add(w)
                        with_pred.add(ext[1:])
            keep = verts & with_succ & with_pred
            if keep == verts:
                break
            verts = keep
        self._pruned = verts
        return verts

    def language(self, n: int) -> set:
        if n == 0:
            return {()} if self._vertices() else set()
        verts = self._vertices()
        L = max(self.F.max_len - 1, 1)
        if n <= L:
            return {w[i : i + n] for w in verts for i in range(L - n + 1)}
        words = set(verts)
        for _ in range(n - L):
            nxt = set()
            for w in words:
                for a in self.letters:
                    if self._avoids(w + (a,)) and (w + (a,))[-L:] in verts:
                        nxt.add(w + (a,))
            words = nxt
        return words


class SturmianSubshift(SubshiftSpec):
    """Factors of the rotation coding; computed from a coded window of length
    4*(n+2)^2, a certified subset that equals the true language whenever the
    window passes the recurrence bound (the complexity cross-check n+1 detects
    under-windowing)."""

    def __init__(self, r: QuadraticReal, x=0):
        check_rotation_number(r)
        self.r = r
        self.x = x

    @property
    def alphabet_letters(self):
        return ("0", "1")

    def window(self, length: int) -> Word:
        return sturmian_code(self.r, self.x, 0, length - 1)

    def language(self, n: int) -> set:
        if n == 0:
            return {()}
        buf = self.window(4 * (n + 2) * (n + 2))
        return {buf[i : i + n] for i in range(len(buf) - n + 1)}


class FinitePointSet(SubshiftSpec):
    """Explicit list of eventually periodic points; language is exact."""

    def __init__(self, points: Sequence[BiWord]):
        self.points = list(points)
        if not self.points:
            raise SubshiftError("need at least one point")

    @property
    def alphabet_letters(self):
        letters = set()
        for p in self.points:
            letters |= p.letters_used()
        return tuple(sorted(letters))

    def language(self, n: int) -> set:
        out: set = set()
        for p in self.points:
            out |= p.factors(n)
        return out


def language(s: SubshiftSpec, n: int) -> set:
    return s.language(n)


def complexity(s: SubshiftSpec, n_max: int) -> list[int]:
    return [len(s.language(n)) for n in range(1, n_max + 1)]


# ---------------------------------------------------------------------------
# power freeness and uniform recurrence


def power_free_check(w, k: int):
    """None when no nonempty v has v^k as a factor of w; otherwise the pair
    (v, position) of the leftmost shortest violation."""
    if k < 2:
        raise SubshiftError("power must be >= 2")
    w = as_word(w)
    n = len(w)
    for ln in range(1, n // k + 1):
        for i in range(n - k * ln + 1):
            v = w[i : i + ln]
            if v * k == w[i : i + k * ln]:
                return (v, i)
    return None


def uniform_recurrence_bound(s: SubshiftSpec, w, l_max: int):
    """Least l <= l_max such that w is a factor of every length-l word of the
    language, or (None, escaping word) when no such l exists below the cap."""
    w = as_word(w)
    if w not in s.language(len(w)):
        raise SubshiftError("%s does not occur in the subshift" % (format_word(w),))
    escape = None
    for l in range(len(w), l_max + 1):
        words = s.language(l)
        bad = [v for v in words if not _occurs(w, v)]
        if not bad:
            return l, None
        escape = sorted(bad)[0]
    return None, escape


def _occurs(w: Word, v: Word) -> bool:
    return any(v[i : i + len(w)] == w for i in range(len(v) - len(w) + 1))


# ---------------------------------------------------------------------------
# Cantor-Bendixson ranks of declared limit forests


class ForestNode:
    """An orbit family: explicit points of a finite orbit, or the full shift
    orbit of an infinite-orbit base point."""

    def __init__(self, node_id: str, base, parent: str | None):
        self.id = node_id
        self.base = base  # BiWord or BlockWord
        self.parent = parent  # node id or None for roots

    def finite_orbit(self):
        """The explicit orbit when the base is shift-periodic, else None."""
        if isinstance(self.base, BiWord):
            p = periodic_point_period(self.base)
            if p is not None:
                return [self.base.shift(k) for k in range(p)]
        return None


class LimitForest:
    """Nodes with parent links meaning "the child family accumulates on the
    parent family"; verification is resolution-bounded."""

    def __init__(self, nodes: Sequence[ForestNode]):
        self.nodes = {n.id: n for n in nodes}
        if len(self.nodes) != len(nodes):
            raise SubshiftError("duplicate node ids")
        for n in nodes:
            if n.parent is not None and n.parent not in self.nodes:
                raise SubshiftError("unknown parent %r" % n.parent)
        # acyclicity
        for n in nodes:
            seen = set()
            cur = n
            while cur.parent is not None:
                if cur.id in seen:
                    raise SubshiftError("parent links contain a cycle")
                seen.add(cur.id)
                cur = self.nodes[cur.parent]

    def children(self, node_id: str) -> list[ForestNode]:
        return [n for n in self.nodes.values() if n.parent == node_id]

    def depth(self, node_id: str) -> int:
        d = 1
        cur = self.nodes[node_id]
        while cur.parent is not None:
            d += 1
            cur = self.nodes[cur.parent]
        return d

    def height(self) -> int:
        return max(self.depth(i) for i in self.nodes)

    def descendants(self, node_id: str) -> set:
        out = set()
        stack = [node_id]
        while stack:
            cur = stack.pop()
            for ch in self.children(cur):
                out.add(ch.id)
                stack.append(ch.id)
        return out

    def leaves_removed(self) -> "LimitForest":
        leaf_ids = {i for i in self.nodes if not self.children(i)}
        kept = [n for n in self.nodes.values() if n.id not in leaf_ids]
        if not kept:
            raise SubshiftError("removing the leaves empties the forest")
        return LimitForest(kept)


def _family_windows(node: ForestNode, radius: int, shifts: int) -> set:
    fin = node.finite_orbit()
    if fin is not None:
        return {p.window(-radius, radius) for p in fin}
    return {
        node.base.shift(k).window(-radius, radius)
        for k in range(-shifts, shifts + 1)
    }


def _family_factors(node: ForestNode, m: int, span: int) -> set:
    fin = node.finite_orbit()
    if fin is not None:
        out: set = set()
        for p in fin:
            out |= p.factors(m)
        return out
    if isinstance(node.base, BiWord):
        return node.base.factors(m)
    buf = node.base.window(-span, span)
    return {buf[i : i + m] for i in range(len(buf) - m + 1)}


class CBReport:
    def __init__(self, rank: int, resolution: int, edge_checks, node_checks,
                 verified: bool):
        self.rank = rank
        self.resolution = resolution
        self.edge_checks = edge_checks  # (child, parent) -> (ok, detail)
        self.node_checks = node_checks  # node -> (ok, detail)
        self.verified = verified

    def describe(self) -> str:
        status = "verified at resolution %d" % self.resolution if self.verified \
            else "declared, unverified at resolution %d" % self.resolution
        lines = ["rank %d (%s)" % (self.rank, status)]
        for (child, parent), (ok, detail) in sorted(self.edge_checks.items()):
            lines.append("  edge %s -> %s: %s (%s)"
                         % (child, parent, "pass" if ok else "FAIL", detail))
        for node, (ok, detail) in sorted(self.node_checks.items()):
            lines.append("  node %s isolation: %s (%s)"
                         % (node, "pass" if ok else "FAIL", detail))
        return "\n".join(lines)


def cb_rank(forest: LimitForest, resolution: int = 40, min_hits: int = 3) -> CBReport:
    """Rank = forest height; the verification checks, at the given resolution,
    that (i) each child family really accumulates on its parent (its windows
    match parent windows for parameters beyond the declared span, on both
    sides when possible) and (ii) each node carries a factor of length <= the
    resolution that no non-descendant family contains."""
    edge_checks = {}
    node_checks = {}
    D = resolution
    for node in forest.nodes.values():
        if node.parent is None:
            continue
        parent = forest.nodes[node.parent]
        if node.finite_orbit() is not None:
            edge_checks[(node.id, node.parent)] = (
                False,
                "finite families cannot accumulate on anything",
            )
            continue
        parent_windows = _family_windows(parent, D, shifts=4 * D + 8)
        probe_span = _probe_span(node, D)
        hits_pos = sum(
            1
            for k in range(D + 1, probe_span)
            if node.base.shift(k).window(-D, D) in parent_windows
        )
        hits_neg = sum(
            1
            for k in range(D + 1, probe_span)
            if node.base.shift(-k).window(-D, D) in parent_windows
        )
        ok = hits_pos + hits_neg >= min_hits and max(hits_pos, hits_neg) > 0
        edge_checks[(node.id, node.parent)] = (
            ok,
            "%d matching windows beyond the resolution (+%d/-%d)"
            % (hits_pos + hits_neg, hits_pos, hits_neg),
        )
    for node in forest.nodes.values():
        others = [
            forest.nodes[i]
            for i in forest.nodes
            if i != node.id and i not in forest.descendants(node.id)
        ]
        if not others:
            node_checks[node.id] = (True, "no non-descendant families")
            continue
        span = _probe_span(node, D)
        found = None
        for m in range(1, D + 1):
            mine = _family_factors(node, m, span)
            for other in others:
                mine -= _family_factors(other, m, span)
            if mine:
                found = sorted(mine)[0]
                break
        if found is None:
            node_checks[node.id] = (
                False,
                "no separating factor of length <= %d" % D,
            )
        else:
            node_checks[node.id] = (
                True,
                "separating factor %s" % format_word(found),
            )
    verified = all(ok for ok, _ in edge_checks.values()) and all(
        ok for ok, _ in node_checks.values()
    )
    return CBReport(forest.height(), D, edge_checks, node_checks, verified)


def _probe_span(node: ForestNode, D: int) -> int:
    """How far to shift when probing: enough to pass several block boundaries
    of a lazily generated tail, linear for eventually periodic points."""
    base = node.base
    if isinstance(base, BiWord):
        return 4 * D + 8 + len(base.core) + len(base.left) + len(base.right)
    # materialize until the tail is clearly longer than a few widths
    need = 40 * D + 200
    base.letter(base.start + need)
    return need


# ---------------------------------------------------------------------------
# built-in forests and the forest file format


def k0_forest() -> LimitForest:
    from .families import rank_point_alpha, rank_point_beta

    return LimitForest(
        [
            ForestNode("alpha0", rank_point_alpha(0), None),
            ForestNode("beta0", rank_point_beta(0), "alpha0"),
        ]
    )


def rank_forest(n: int) -> LimitForest:
    """The chain alpha_0 <- alpha_1 <- ... <- alpha_n <- beta_n."""
    from .families import rank_point_alpha, rank_point_beta

    nodes = []
    for m in range(n + 1):
        nodes.append(
            ForestNode(
                "alpha%d" % m,
                rank_point_alpha(m),
                None if m == 0 else "alpha%d" % (m - 1),
            )
        )
    nodes.append(ForestNode("beta%d" % n, rank_point_beta(n), "alpha%d" % n))
    return LimitForest(nodes)


def forest_from_text(text: str) -> LimitForest:
    """Lines `node <id> orbit=<biword> parent=<id|root>`; the orbit of the
    given base point is finite exactly when the point is shift-periodic."""
    from .words import parse_bi

    nodes = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        toks = ln.split()
        if len(toks) != 4 or toks[0] != "node":
            raise SubshiftError("bad forest line %r" % ln)
        node_id = toks[1]
        if not toks[2].startswith("orbit="):
            raise SubshiftError("bad forest line %r" % ln)
        base = parse_bi(toks[2][len("orbit=") :])
        if not toks[3].startswith("parent="):
            raise SubshiftError("bad forest line %r" % ln)
        parent = toks[3][len("parent=") :]
        nodes.append(ForestNode(node_id, base, None if parent == "root" else parent))
    return LimitForest(nodes)
