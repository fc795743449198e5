"""Command-line surface: families, quotients, level decisions, colorings,
subshift queries, Cantor-Bendixson ranks, homomorphism search and obstruction
reports, all deterministic.

Exit status: 0 when the verdict matches the expectation flags (or none were
given), 1 on a mismatch, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import colorings as col
from . import families as fam
from . import homs
from . import quotients as quo
from . import subshift_lang as sub
from .dynamics import parse_quadratic, parse_radix
from .words import WordError, format_word, parse_bi, parse_prefix

FAMILY_GRAMMAR = (
    "family spec strings: odd-cycle:p=2 | gm | gdelta:delta=(1)^inf | "
    "go-plus:d=2,(3)^inf | graph-o:d=(3)^inf | t | k0 | rank-subshift:n=2 | "
    "gp:d=2,(3)^inf,p=1 | orbit:d=(3)^inf,S=sa{0} | ka:A=0,2 "
    "(suffix :oriented for the one-directional variants)"
)


class Mismatch(Exception):
    pass


class UsageError(Exception):
    pass


class RunConfig:
    """Everything a run depends on; all computations are seed-free."""

    def __init__(self, family: str, levels: int = 4, bound=None,
                 fmt: str = "text", budget_ms=None):
        if levels <= 0:
            raise UsageError("level budget must be positive")
        if bound is not None and bound < 0:
            raise UsageError("enumeration bound must be >= 0")
        self.family = family
        self.levels = levels
        self.bound = bound
        self.fmt = fmt
        self.budget_ms = budget_ms

    def to_args(self) -> list:
        out = ["--family", self.family, "--levels", str(self.levels)]
        if self.bound is not None:
            out += ["--bound", str(self.bound)]
        out += ["--format", self.fmt]
        if self.budget_ms is not None:
            out += ["--budget-ms", str(self.budget_ms)]
        return out

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(
            family=args.family,
            levels=getattr(args, "levels", 4),
            bound=getattr(args, "bound", None),
            fmt=getattr(args, "format", "text"),
            budget_ms=getattr(args, "budget_ms", None),
        )


def _family(spec: str) -> fam.SymbolicGraph:
    try:
        return fam.parse_family(spec)
    except (fam.FamilyError, WordError, ValueError, KeyError) as e:
        raise UsageError("unknown or malformed family %r (%s)\n%s" % (spec, e, FAMILY_GRAMMAR))


def _finite_graph(spec: str) -> fam.FiniteGraph:
    """odd-cycle:p=N | file:PATH | FAMILY@LEVEL (the level-n quotient)."""
    if spec.startswith("odd-cycle:"):
        args = dict(tok.split("=") for tok in spec.split(":")[1].split(","))
        return fam.odd_cycle(int(args["p"]))
    if spec.startswith("file:"):
        with open(spec[len("file:") :], encoding="utf-8") as fh:
            return homs.finite_graph_from_text(fh.read())
    if "@" in spec:
        fspec, level = spec.rsplit("@", 1)
        return quo.quotient(_family(fspec), int(level)).undirected().to_finite_graph()
    raise UsageError(
        "finite graph spec must be odd-cycle:p=N, file:PATH or FAMILY@LEVEL: %r"
        % spec
    )


def _print_json(payload, no_timing: bool):
    if no_timing and isinstance(payload, dict):
        payload = json.loads(json.dumps(payload))
        for entry in payload.get("levels", []):
            entry.pop("millis", None)
        payload.pop("millis", None)
    print(json.dumps(payload, indent=2, sort_keys=True))


def _expect(expected, actual):
    if expected is not None and expected != actual:
        raise Mismatch("expected %s, got %s" % (expected, actual))


# ---------------------------------------------------------------------------
# subcommands


def cmd_family_show(args):
    g = _family(args.family)
    lev = fam.edges_at_level(g, args.level, bound=args.bound)
    info = {
        "family": g.spec,
        "pointSet": g.point_set,
        "compact": g.compact,
        "directed": g.directed,
        "twoSided": g.two_sided,
        "alphabet": list(lev.alphabet.letters),
        "level": args.level,
        "edgeCount": len(lev.pairs),
    }
    if args.format == "json":
        _print_json(info, args.no_timing)
    else:
        for k, v in info.items():
            print("%s: %s" % (k, v))
        q = quo.quotient(g, args.level, bound=args.bound)
        shown = lev.pairs[: args.sample]
        for (s, t) in shown:
            x, y = lev.reps.get((s, t), (None, None))
            print(
                "  %s -- %s    e.g. (%s, %s)"
                % (q.label(s), q.label(t), _point_str(x), _point_str(y))
            )
        if len(lev.pairs) > len(shown):
            print("  ... %d more" % (len(lev.pairs) - len(shown)))
    return 0


def _point_str(x) -> str:
    from .words import BiWord, BlockWord, UltWord, format_bi, format_ult

    if isinstance(x, UltWord):
        return format_ult(x)
    if isinstance(x, BiWord):
        return format_bi(x)
    if isinstance(x, BlockWord):
        return "...%s..." % format_word(x.window(-8, 8))
    return str(x)


def cmd_quotient(args):
    g = _family(args.family)
    q = quo.quotient(g, args.level, bound=args.bound)
    if args.format == "dot":
        print(quo.to_dot(q))
    elif args.format == "json":
        payload = {
            "family": g.spec,
            "level": q.level,
            "vertices": [q.label(v) for v in q.vertices],
            "edges": [[q.label(u), q.label(v)] for (u, v) in q.edges],
            "directed": q.directed,
        }
        _print_json(payload, args.no_timing)
    else:
        print("%s level %d: %d vertices, %d edges" % (g.spec, q.level, len(q.vertices), q.edge_count()))
        seen = set()
        for (u, v) in q.edges:
            if not q.directed and (v, u) in seen:
                continue
            seen.add((u, v))
            print("  %s %s %s" % (q.label(u), "->" if q.directed else "--", q.label(v)))
    return 0


def cmd_decide(args):
    g = _family(args.family)
    result = quo.decide_level(g, args.level)
    payload = {"family": g.spec, "level": args.level, "verdict": result.verdict}
    if isinstance(result, quo.Bipartite):
        payload["coloring"] = result.coloring.as_json()
        if args.color_out:
            with open(args.color_out, "w", encoding="utf-8") as fh:
                fh.write(col.coloring_to_text(result.coloring, g.spec))
    else:
        q = quo.quotient(g, args.level).undirected()
        payload["witness"] = result.witness.as_json(q)
        payload["oddGirth"] = result.witness.length
    if not g.compact:
        payload["caveat"] = (
            "point set is not compact: odd walks at all levels would not "
            "bound the continuous chromatic number"
        )
    if args.format == "json":
        _print_json(payload, args.no_timing)
    else:
        print("%s level %d: %s" % (g.spec, args.level, result.verdict))
        if "witness" in payload:
            print("  odd closed walk: %s" % " ".join(payload["witness"]["vertices"]))
        if "caveat" in payload:
            print("  caveat: %s" % payload["caveat"])
    _expect(args.expect, result.verdict)
    return 0


def cmd_scan(args):
    cfg = RunConfig.from_args(args)
    g = _family(cfg.family)
    report = quo.scan(g, cfg.levels, budget_ms=cfg.budget_ms)
    if report["partial"]:
        print("warning: partial report (budget exhausted)", file=sys.stderr)
    if args.format == "json":
        _print_json(report, args.no_timing)
    else:
        print(report["headline"])
        for entry in report["levels"]:
            girth = entry.get("oddGirth")
            print(
                "  level %d: %s (edges %d%s)"
                % (
                    entry["level"],
                    entry["verdict"],
                    entry["edgeCount"],
                    ", odd girth %d" % girth if girth else "",
                )
            )
    if args.expect:
        verdicts = {e["verdict"] for e in report["levels"]}
        if args.expect == "bipartite":
            _expect("bipartite", "bipartite" if "bipartite" in verdicts else "odd-walk")
        else:
            _expect("odd-walk", "odd-walk" if verdicts == {"odd-walk"} else "bipartite")
    return 0


def cmd_color_build(args):
    g = _family(args.family)
    if args.kind == "parity":
        d = parse_radix(_family_arg(args.family, "d"))
        c = col.parity_coloring(d)
    elif args.kind == "three-beta":
        c = col.three_coloring_beta(g)
    elif args.kind == "return-parity":
        if not args.cylinder:
            raise UsageError("return-parity needs --cylinder")
        d = parse_radix(_family_arg(args.family, "d"))
        c = col.return_parity_coloring(d, parse_prefix(args.cylinder))
    else:
        raise UsageError("unknown coloring kind %r" % args.kind)
    text = col.coloring_to_text(c, g.spec)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _family_arg(spec: str, key: str) -> str:
    name, _, argstr = spec.partition(":")
    return fam._parse_args(argstr)[key]


def cmd_color_verify(args):
    g = _family(args.family)
    if args.predicate:
        if args.predicate != "t-coloring":
            raise UsageError("unknown predicate coloring %r" % args.predicate)
        c = col.t_coloring()
    else:
        with open(args.coloring, encoding="utf-8") as fh:
            c, _ = col.coloring_from_text(fh.read(), g.alphabet_for(args.bound))
    res = col.verify_coloring(g, c, args.bound)
    print(res.describe())
    _expect(args.expect, "ok" if res.ok else "violation")
    return 0


def cmd_color_search(args):
    g = _family(args.family)
    q = quo.quotient(g, args.level)
    c = col.search_coloring(q, args.colors)
    if c is None:
        print("absent: no proper %d-coloring of the level-%d quotient" % (args.colors, args.level))
        _expect(args.expect, "absent")
        return 0
    print("found: proper %d-coloring of the level-%d quotient" % (args.colors, args.level))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(col.coloring_to_text(c, g.spec))
    _expect(args.expect, "found")
    return 0


def _subshift_spec(args) -> sub.SubshiftSpec:
    if getattr(args, "sturmian", None):
        return sub.SturmianSubshift(parse_quadratic(args.sturmian))
    if getattr(args, "points", None):
        pts = [parse_bi(tok) for tok in args.points.split(";") if tok.strip()]
        return sub.FinitePointSet(pts)
    F = _forbidden(args)
    if F is not None:
        return sub.ForbiddenSubshift(["0", "1"], F)
    raise UsageError("need one of --sturmian, --points, --forbidden, --fib-p")


def _forbidden(args):
    if getattr(args, "fib_p", None) is not None:
        return sub.expand_fib_forbidden(args.fib_p)
    if getattr(args, "forbidden", None):
        return sub.ForbiddenSet(args.forbidden.split(","))
    return None


def cmd_subshift_member(args):
    F = _forbidden(args)
    if F is None:
        raise UsageError("need --forbidden or --fib-p")
    b = parse_bi(args.word)
    ok = sub.member(b, F)
    print("member" if ok else "not a member")
    _expect(args.expect, "member" if ok else "non-member")
    return 0


def cmd_subshift_lang(args):
    s = _subshift_spec(args)
    words = sorted(s.language(args.n))
    print("%d words of length %d" % (len(words), args.n))
    for w in words:
        print("  " + format_word(w))
    return 0


def cmd_subshift_complexity(args):
    s = _subshift_spec(args)
    counts = sub.complexity(s, args.nmax)
    print(",".join(str(c) for c in counts))
    return 0


def cmd_subshift_powerfree(args):
    if args.fib_prefix is not None:
        from .dynamics import fibonacci_limit_prefix

        w = fibonacci_limit_prefix(args.fib_prefix)
    elif args.word:
        w = tuple(args.word)
    else:
        raise UsageError("need --word or --fib-prefix")
    hit = sub.power_free_check(w, args.power)
    if hit is None:
        print("ok: no %d-th power occurs" % args.power)
        _expect(args.expect, "ok")
    else:
        v, i = hit
        print("violation: (%s)^%d at position %d" % (format_word(v), args.power, i))
        _expect(args.expect, "violation")
    return 0


def cmd_cb_rank(args):
    if args.forest:
        with open(args.forest, encoding="utf-8") as fh:
            forest = sub.forest_from_text(fh.read())
    elif args.family == "k0":
        forest = sub.k0_forest()
    elif args.family and args.family.startswith("rank-subshift:"):
        n = int(args.family.split("n=")[1])
        forest = sub.rank_forest(n)
    else:
        raise UsageError("need --forest FILE or --family k0|rank-subshift:n=N")
    rep = sub.cb_rank(forest, args.resolution)
    print(rep.describe())
    if args.expect_rank is not None:
        _expect(args.expect_rank, rep.rank)
    if not rep.verified:
        raise Mismatch("verification failed at resolution %d" % args.resolution)
    return 0


def cmd_hom(args):
    G = _finite_graph(args.source)
    H = _finite_graph(args.target)
    w = homs.hom_exists(G, H, injective=args.injective)
    if w is None:
        print("absent: exhaustive search found no homomorphism")
        _expect(args.expect, "absent")
    else:
        print("found:")
        for u in G.vertices:
            print("  %s -> %s" % (u, w.mapping[u]))
        _expect(args.expect, "found")
    return 0


def cmd_spectrum(args):
    if args.graph:
        G = _finite_graph(args.graph)
    else:
        g = _family(args.family)
        if g.finite_core is None:
            raise UsageError("family %s has no finite core" % g.spec)
        G = g.finite_core()
    spec = sorted(homs.cycle_spectrum(G, args.max_len))
    print(",".join(str(l) for l in spec) if spec else "empty")
    return 0


def cmd_obstruct(args):
    g1 = _family(args.g1)
    g2 = _family(args.g2)
    rep = homs.quotient_hom_obstruction(g1, g2, args.level)
    if args.format == "json":
        _print_json(rep.as_json(), args.no_timing)
    else:
        print(rep.describe())
    if args.expect:
        _expect(args.expect, "obstructed" if rep.obstructed else "clear")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="clopen",
        description="level-by-level clopen colorability of symbolic graphs",
        epilog=FAMILY_GRAMMAR,
    )
    sp = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt=("text", "json")):
        p.add_argument("--format", choices=fmt, default="text")
        p.add_argument("--no-timing", action="store_true")
        p.add_argument("--bound", type=int, default=None,
                       help="override the enumeration bound")

    p = sp.add_parser("family", help="inspect a family")
    fsp = p.add_subparsers(dest="sub", required=True)
    ps = fsp.add_parser("show")
    ps.add_argument("--family", required=True)
    ps.add_argument("--level", type=int, default=1)
    ps.add_argument("--sample", type=int, default=12)
    common(ps)
    ps.set_defaults(fn=cmd_family_show)

    p = sp.add_parser("quotient", help="level-n quotient graph")
    p.add_argument("--family", required=True)
    p.add_argument("--level", type=int, required=True)
    common(p, fmt=("text", "json", "dot"))
    p.set_defaults(fn=cmd_quotient)

    p = sp.add_parser("decide", help="bipartite or odd-closed-walk at a level")
    p.add_argument("--family", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--expect", choices=("bipartite", "odd-walk"))
    p.add_argument("--color-out")
    common(p)
    p.set_defaults(fn=cmd_decide)

    p = sp.add_parser("scan", help="decide all levels up to a budget")
    p.add_argument("--family", required=True)
    p.add_argument("--levels", type=int, required=True)
    p.add_argument("--expect", choices=("bipartite", "odd-walk"))
    p.add_argument("--budget-ms", type=float, default=None)
    common(p)
    p.set_defaults(fn=cmd_scan)

    p = sp.add_parser("color", help="build, verify or search colorings")
    csp = p.add_subparsers(dest="sub", required=True)
    pb = csp.add_parser("build")
    pb.add_argument("--family", required=True)
    pb.add_argument("--kind", required=True,
                    choices=("parity", "three-beta", "return-parity"))
    pb.add_argument("--cylinder")
    pb.add_argument("--out")
    pb.set_defaults(fn=cmd_color_build)
    pv = csp.add_parser("verify")
    pv.add_argument("--family", required=True)
    pv.add_argument("--coloring")
    pv.add_argument("--predicate")
    pv.add_argument("--bound", type=int, default=4)
    pv.add_argument("--expect", choices=("ok", "violation"))
    pv.set_defaults(fn=cmd_color_verify)
    pc = csp.add_parser("search")
    pc.add_argument("--family", required=True)
    pc.add_argument("--level", type=int, required=True)
    pc.add_argument("--colors", type=int, required=True)
    pc.add_argument("--out")
    pc.add_argument("--expect", choices=("found", "absent"))
    pc.set_defaults(fn=cmd_color_search)

    p = sp.add_parser("subshift", help="membership, languages, powers")
    ssp = p.add_subparsers(dest="sub", required=True)
    pm = ssp.add_parser("member")
    pm.add_argument("--word", required=True)
    pm.add_argument("--forbidden")
    pm.add_argument("--fib-p", type=int)
    pm.add_argument("--expect", choices=("member", "non-member"))
    pm.set_defaults(fn=cmd_subshift_member)
    pl = ssp.add_parser("lang")
    pl.add_argument("--sturmian")
    pl.add_argument("--points")
    pl.add_argument("--forbidden")
    pl.add_argument("--fib-p", type=int)
    pl.add_argument("--n", type=int, required=True)
    pl.set_defaults(fn=cmd_subshift_lang)
    px = ssp.add_parser("complexity")
    px.add_argument("--sturmian")
    px.add_argument("--points")
    px.add_argument("--forbidden")
    px.add_argument("--fib-p", type=int)
    px.add_argument("--nmax", type=int, required=True)
    px.set_defaults(fn=cmd_subshift_complexity)
    pp = ssp.add_parser("powerfree")
    pp.add_argument("--word")
    pp.add_argument("--fib-prefix", type=int)
    pp.add_argument("--power", type=int, required=True)
    pp.add_argument("--expect", choices=("ok", "violation"))
    pp.set_defaults(fn=cmd_subshift_powerfree)

    p = sp.add_parser("cb", help="Cantor-Bendixson ranks")
    bsp = p.add_subparsers(dest="sub", required=True)
    pr = bsp.add_parser("rank")
    pr.add_argument("--forest")
    pr.add_argument("--family")
    pr.add_argument("--resolution", type=int, default=40)
    pr.add_argument("--expect-rank", type=int)
    pr.set_defaults(fn=cmd_cb_rank)

    p = sp.add_parser("hom", help="finite homomorphism search")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--injective", action="store_true")
    p.add_argument("--expect", choices=("found", "absent"))
    p.set_defaults(fn=cmd_hom)

    p = sp.add_parser("spectrum", help="simple cycle lengths of a finite core")
    p.add_argument("--family")
    p.add_argument("--graph")
    p.add_argument("--max-len", type=int, default=40)
    p.set_defaults(fn=cmd_spectrum)

    p = sp.add_parser("obstruct", help="level-n reduction obstructions")
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--expect", choices=("obstructed", "clear"))
    common(p)
    p.set_defaults(fn=cmd_obstruct)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except Mismatch as e:
        print("MISMATCH: %s" % e, file=sys.stderr)
        return 1
    except UsageError as e:
        print("usage error: %s" % e, file=sys.stderr)
        return 2
    except (WordError, fam.FamilyError, col.ColoringError, sub.SubshiftError,
            ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        print(FAMILY_GRAMMAR, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
