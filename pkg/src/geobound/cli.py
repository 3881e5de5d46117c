"""Command line interface: ``geobound verify|build|search``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .colouring import FAMILIES as COLOURING_FAMILIES
from .colouring import Colouring, family_colouring
from .complex import analyze, complex_to_json, dumps, realize
from .isometry import IsometryGroup, search_involutions
from .polytope import Polytope, build_loebell, build_polygon
from .suite import FAMILIES, default_jobs, named_element, verify_many

GENUS_CAP = 100


class UsageError(ValueError):
    pass


def parse_genus_range(text: str) -> list[int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise UsageError(f"genus must look like 5 or 2..10, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if lo < 2 or hi < lo:
        raise UsageError(f"bad genus range {text!r}: need 2 <= A <= B")
    if hi > GENUS_CAP:
        raise UsageError(f"genus above the cap of {GENUS_CAP}")
    return list(range(lo, hi + 1))


def _cmd_verify(args) -> int:
    genera = parse_genus_range(args.genus)
    if args.family == "kulkarni":
        genera = [g for g in genera if g % 4 == 3]
        if not genera:
            raise UsageError("no genus in the range satisfies g = 3 mod 4")
    jobs = default_jobs(args.jobs)
    reports = verify_many(args.family, genera, jobs=jobs, timings=args.timings)
    failed = 0
    for r in reports:
        sys.stdout.write(json.dumps(r, sort_keys=True, ensure_ascii=False) + "\n")
        bad = [c["name"] for c in r["checks"] if c["result"] != "pass"]
        failed += bool(bad)
        line = f"{r['family']} g={r['genus']}: {r['status']} ({len(r['checks'])} checks)"
        if bad:
            line += " failed: " + ", ".join(bad)
        print(line, file=sys.stderr)
    return 1 if failed else 0


def _parse_polytope(spec: str) -> Polytope:
    m = re.fullmatch(r"(polygon|loebell):(\d+)", spec)
    if not m:
        raise UsageError(f"polytope must be polygon:M or loebell:M, got {spec!r}")
    n = int(m.group(2))
    return build_polygon(n) if m.group(1) == "polygon" else build_loebell(n)


def _parse_colouring(spec: str, P: Polytope) -> Colouring:
    m = re.fullmatch(r"([a-z-]+):(\d+)", spec)
    if m and m.group(1) in COLOURING_FAMILIES:
        lam = family_colouring(m.group(1), int(m.group(2)))
        if lam.polytope != P:
            raise UsageError(f"colouring {spec} lives on {lam.polytope!r}, not on {P!r}")
        return lam
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"{spec!r} is neither FAMILY:G nor an existing colouring file")
    return Colouring.from_json(P, path.read_text())


def _cmd_build(args) -> int:
    P = _parse_polytope(args.polytope)
    lam = _parse_colouring(args.colouring, P)
    C = realize(lam)
    a = analyze(C)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "polytope.json").write_text(dumps(P.to_json()) + "\n")
        (out / "colouring.json").write_text(dumps(lam.to_json()) + "\n")
        (out / "complex.json").write_text(dumps(complex_to_json(C, a)) + "\n")
    print(json.dumps(a.summary(), sort_keys=True))
    return 0


def _cmd_search(args) -> int:
    g = args.genus
    lam = family_colouring(args.family, g)
    G = IsometryGroup(lam)
    z = None if args.modulo == "none" else named_element(G, args.family, g, args.modulo)
    want = -1 if args.orientation == "rev" else 1
    found = search_involutions(G, want, z)
    print(json.dumps({
        "family": args.family, "genus": g, "orientation": args.orientation, "modulo": args.modulo,
        "count": len(found),
        "elements": [{"element": G.describe(x), **x.to_json(lam),
                      "square": G.describe(G.mul(x, x))} for x in found],
    }, sort_keys=True, ensure_ascii=False))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="geobound", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification suite over a genus range")
    v.add_argument("--family", required=True, choices=FAMILIES)
    v.add_argument("--genus", required=True, help="G or A..B")
    v.add_argument("--jobs", type=int, default=1, help="worker processes (GEOBOUND_JOBS overrides)")
    v.add_argument("--timings", action="store_true", help="add wall times (reports stop being reproducible)")
    v.set_defaults(func=_cmd_verify)

    b = sub.add_parser("build", help="build a colouring's manifold and write JSON")
    b.add_argument("--polytope", required=True, help="polygon:M or loebell:M")
    b.add_argument("--colouring", required=True, help="FAMILY:G or a colouring JSON file")
    b.add_argument("--out", help="directory for polytope.json, colouring.json, complex.json")
    b.set_defaults(func=_cmd_build)

    s = sub.add_parser("search", help="list fixed-point-free involutions")
    s.add_argument("--family", required=True, choices=FAMILIES)
    s.add_argument("--genus", required=True, type=int)
    s.add_argument("--orientation", required=True, choices=("rev", "pres"))
    s.add_argument("--modulo", default="none", choices=("c", "d", "none"))
    s.set_defaults(func=_cmd_search)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"geobound: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
