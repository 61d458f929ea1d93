"""Command-line surface: construct, verify, search, table, render.

Exit codes: 0 success / verification pass / SAT; 1 verification failure,
UNSAT when a witness was asked for, or construction failure; 2 usage or
input-format error; 3 solver aborted on a resource limit.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import construct as cons
from .certs import (
    CertificateError,
    certificate_digest,
    load_certificate,
    parse_edge_list,
    save_certificate,
    serialize_layout,
)
from .construct import StrictLayoutUnavailable
from .journal import DEFAULT_JOURNAL, JournalRecord, append_record, load_records
from .model import PageKind, edge, identity_order
from .render import render_svg
from .search import DEFAULT_NODE_LIMIT, DEFAULT_TIME_LIMIT, SearchProblem, solve
from .verify import Profile, verify_layout

_PROFILES = {p.value: p for p in Profile}

SCHEMES = ("relaxed", "strict-literal", "strict", "stars", "octahedron", "odd")


def _resolve_r(args, even_n_scheme: bool) -> int:
    if args.r is not None:
        return args.r
    if args.n is None:
        raise ValueError("give --r or --n")
    if even_n_scheme:
        if args.n % 2:
            raise ValueError(f"scheme {args.scheme!r} needs an even --n, got {args.n}")
        return args.n // 2
    if args.n % 2 == 0:
        raise ValueError(f"scheme 'odd' needs an odd --n, got {args.n}")
    return (args.n - 1) // 2


def _cmd_construct(args) -> int:
    scheme = args.scheme
    family = "K"
    meta_extra: dict = {}
    if scheme == "stars":
        if args.n is None:
            raise ValueError("scheme 'stars' needs --n")
        layout = cons.star_pages(args.n)
    elif scheme == "relaxed":
        r = _resolve_r(args, even_n_scheme=True)
        layout = cons.relaxed_complete(r)
        meta_extra["r"] = r
    elif scheme == "odd":
        r = _resolve_r(args, even_n_scheme=False)
        layout = cons.odd_extension(cons.relaxed_complete(r))
        meta_extra["r"] = r
    elif scheme == "strict-literal":
        r = _resolve_r(args, even_n_scheme=True)
        layout = cons.strict_literal(r)
        meta_extra["r"] = r
    elif scheme == "strict":
        r = _resolve_r(args, even_n_scheme=True)
        layout = cons.strict_complete(r)
        meta_extra["r"] = r
    elif scheme == "octahedron":
        r = _resolve_r(args, even_n_scheme=True)
        layout = cons.octahedron_pages(r)
        family = "O"
        meta_extra["r"] = r
    else:
        raise ValueError(f"unknown scheme {scheme!r}")

    meta = {"family": family, "scheme": scheme, "n": layout.graph.n, **meta_extra}
    text = serialize_layout(layout, meta)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}: {scheme} layout of n={layout.graph.n}, "
              f"{len(layout.pages)} pages, {layout.graph.m} edges")
    else:
        sys.stdout.write(text)
    if args.svg:
        Path(args.svg).write_text(render_svg(layout, force=args.force))
        print(f"wrote {args.svg}")
    return 0


def _infer_profile(layout) -> Profile:
    caps = any(p.kind is PageKind.CROSSCAP for p in layout.pages)
    return Profile.RELAXED if caps else Profile.STRICT


def _cmd_verify(args) -> int:
    layout, _meta = load_certificate(args.certificate)
    profile = _PROFILES[args.profile] if args.profile else _infer_profile(layout)
    report = verify_layout(layout, profile)
    if args.json:
        import json

        print(json.dumps(report.to_dict(), indent=1, sort_keys=True))
    else:
        for v in report.violations:
            print(v.describe())
        print(f"{'PASS' if report.passed else 'FAIL'} "
              f"profile={profile.value} pages={len(layout.pages)} "
              f"violations={len(report.violations)}")
    return 0 if report.passed else 1


def _family_graph(args):
    if args.graph:
        g = parse_edge_list(Path(args.graph).read_text())
        return g, f"file:{Path(args.graph).name}", {"n": g.n, "m": g.m}
    family = args.family or "K"
    if family == "K":
        if args.n is None:
            raise ValueError("family K needs --n")
        return cons.complete_graph(args.n), "K", {"n": args.n}
    if family == "O":
        r = args.r if args.r is not None else (args.n // 2 if args.n else None)
        if r is None:
            raise ValueError("family O needs --r or an even --n")
        return cons.octahedron(r), "O", {"r": r, "n": 2 * r}
    if family == "Cpow":
        if args.n is None or args.k is None:
            raise ValueError("family Cpow needs --n and --k")
        return cons.cycle_power(args.n, args.k), "Cpow", {"n": args.n, "k": args.k}
    if family == "K-e":
        if args.n is None:
            raise ValueError("family K-e needs --n")
        e = edge(1, 2)
        g = cons.minus_edge(cons.complete_graph(args.n), e)
        return g, "K-e", {"n": args.n, "e": list(e)}
    raise ValueError(f"unknown family {family!r}")


def _cmd_search(args) -> int:
    graph, family, params = _family_graph(args)
    profile = _PROFILES[args.profile]
    if args.optimize_order:
        order = None
        policy = "optimize"
    elif profile is Profile.STAR_FORESTS_ONLY:
        order = None
        policy = "none"
    else:
        order = identity_order(graph.n)
        policy = "identity"
    problem = SearchProblem(
        graph=graph,
        budget=args.budget,
        profile=profile,
        order=order,
        crosscap_allowed=args.crosscap,
        optimize_order=args.optimize_order,
        deterministic=args.deterministic,
        node_limit=args.node_limit,
        time_limit=args.time_limit,
    )
    outcome = solve(problem)

    digest = None
    if outcome.status == "sat":
        meta = {"family": family, **params, "scheme": "search",
                "profile": profile.value, "budget": args.budget}
        digest = certificate_digest(outcome.layout, meta)
        if args.out:
            save_certificate(args.out, outcome.layout, meta)
    record = JournalRecord(
        timestamp=JournalRecord.now_timestamp(),
        family=family,
        params=params,
        order_policy=policy,
        profile=profile.value,
        budget=args.budget,
        outcome=outcome.status,
        k_star=args.budget if outcome.status == "sat" else None,
        nodes=outcome.nodes,
        wall_time=round(outcome.wall_time, 3),
        certificate_digest=digest,
        extra={"reason": outcome.reason} if outcome.reason else {},
    )
    append_record(args.journal, record)

    print(f"{outcome.status.upper()} family={family} params={params} "
          f"profile={profile.value} budget={args.budget} order={policy} "
          f"nodes={outcome.nodes} wall={outcome.wall_time:.2f}s"
          + (f" reason={outcome.reason}" if outcome.reason else ""))
    if outcome.status == "sat":
        if args.out:
            print(f"certificate written to {args.out}")
        if args.svg:
            Path(args.svg).write_text(render_svg(outcome.layout))
            print(f"wrote {args.svg}")
        return 0
    if outcome.status == "unsat":
        return 1
    return 3


def _parse_range(spec: str) -> list[int]:
    if ".." in spec:
        a, b = spec.split("..", 1)
        lo, hi = int(a), int(b)
        if lo > hi:
            raise ValueError(f"empty range {spec!r}")
        return list(range(lo, hi + 1))
    return [int(spec)]


def _cmd_table(args) -> int:
    if (args.family or "K") != "K":
        raise ValueError("table currently supports --family K")
    records = load_records(args.journal)
    ns = _parse_range(args.n)
    cols = [p.value for p in Profile]
    print("n   sa_lower bt_lower " + " ".join(f"{c:>12}" for c in cols))
    for n in ns:
        g = cons.complete_graph(n)
        b = cons.bounds(g, "K")
        cells = []
        for prof in cols:
            sats = [r.budget for r in records
                    if r.family == "K" and r.params.get("n") == n
                    and r.profile == prof and r.outcome == "sat"]
            unsats = [r.budget for r in records
                      if r.family == "K" and r.params.get("n") == n
                      and r.profile == prof and r.outcome == "unsat"]
            upper = min(sats) if sats else None
            lower = max(unsats) + 1 if unsats else None
            if upper is not None and lower is not None and upper == lower:
                cells.append(f"k*={upper}")
            elif upper is not None and (lower is None or lower <= upper):
                lo = lower if lower is not None else "?"
                cells.append(f"[{lo},{upper}]")
            elif lower is not None:
                cells.append(f">={lower}")
            else:
                cells.append("?")
        bt = b.bt_lower if b.bt_lower is not None else "-"
        print(f"{n:<3} {b.sa_lower!s:>8} {bt!s:>8} " + " ".join(f"{c:>12}" for c in cells))
    return 0


def _cmd_render(args) -> int:
    layout, _meta = load_certificate(args.certificate)
    try:
        svg = render_svg(layout, force=args.force)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    Path(args.out).write_text(svg)
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starbook",
        description="Star-forest book layouts: construct, verify, search, render.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a layout from a named scheme")
    p.add_argument("--family", choices=("K", "O"), default=None,
                   help="graph family (implied by the scheme)")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--scheme", choices=SCHEMES, required=True)
    p.add_argument("--out", help="certificate path (stdout if omitted)")
    p.add_argument("--svg", help="also render to this SVG path")
    p.add_argument("--force", action="store_true",
                   help="render even if the layout fails verification")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="verify a certificate file")
    p.add_argument("certificate")
    p.add_argument("--profile", choices=sorted(_PROFILES), default=None,
                   help="default: relaxed if a cross-cap page is present, else strict")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search", help="exact search for a layout within a page budget")
    p.add_argument("--family", choices=("K", "O", "Cpow", "K-e"), default=None)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--k", type=int, help="power for the Cpow family")
    p.add_argument("--graph", help="edge-list file instead of a built-in family")
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--profile", choices=sorted(_PROFILES), default="strict")
    p.add_argument("--crosscap", action="store_true",
                   help="allow one cross-cap page (relaxed profile)")
    p.add_argument("--optimize-order", action="store_true",
                   help="search all spine orders up to symmetry (n <= 9)")
    p.add_argument("--deterministic", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    p.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT)
    p.add_argument("--out", help="write the SAT certificate here")
    p.add_argument("--svg", help="also render the SAT certificate here")
    p.add_argument("--journal", default=DEFAULT_JOURNAL)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("table", help="bounds and journal-established values")
    p.add_argument("--family", default="K")
    p.add_argument("--n", required=True, help="single value or range like 4..12")
    p.add_argument("--journal", default=DEFAULT_JOURNAL)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("render", help="render a certificate to SVG")
    p.add_argument("certificate")
    p.add_argument("--out", required=True)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=_cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except StrictLayoutUnavailable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CertificateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
