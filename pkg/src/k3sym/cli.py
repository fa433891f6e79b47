"""Command line: ``k3sym verify``, ``k3sym curve``, ``k3sym mori``."""

from __future__ import annotations

import argparse
import json
import sys

from k3sym import claims, curvegeom, forms, groups, mori
from k3sym.field import PrimeEmbedding


def _config(args) -> claims.RunConfig:
    return claims.RunConfig(conductor=args.field_order, prime=args.prime, max_closure=args.max_closure)


def cmd_verify(args) -> int:
    cfg = _config(args)
    if args.claim:
        unknown = [c for c in args.claim if c not in claims.REGISTRY]
        if unknown:
            print(f"unknown claim(s): {', '.join(unknown)}; known: {', '.join(claims.REGISTRY.ids())}",
                  file=sys.stderr)
            return 2
        results = [claims.run_claim(c, cfg) for c in sorted(set(args.claim))]
        if args.tag:
            results = [r for r in results if args.tag in claims.REGISTRY.get(r.id).tags]
    else:
        results = claims.run_all(args.tag, cfg)
    print(claims.format_text(results))
    if args.json:
        claims.emit_report(results, "json", args.json)
    failed = [r.id for r in results if r.status != "pass"]
    if failed:
        print("failing claims: " + " ".join(failed), file=sys.stderr)
        return 1
    return 0


def cmd_curve(args) -> int:
    try:
        f = claims.load_curve(args.path)
    except (OSError, forms.FormError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.action == "show":
        print(f"degree {f.degree}, {len(f)} terms")
        print(f)
        return 0
    emb = PrimeEmbedding.default(f.ctx.n, start=args.prime or 337)
    cert = curvegeom.smooth_mod_p(f, emb)
    h = groups.group_h()
    try:
        curvegeom.check_invariant(f, h)
        invariant = True
    except ValueError:
        invariant = False
    out = {"degree": f.degree, "terms": len(f), "H_invariant": invariant,
           "certificate": {"prime": cert.prime, "verdict": cert.verdict, "detail": cert.detail}}
    if invariant:
        loc = curvegeom.candidate_singular_locus(f, h)
        out["singular_fixed_points"] = [repr(p) for p in loc]
    print(json.dumps(out, indent=2))
    return 0 if cert.verdict != curvegeom.BAD_PRIME else 1


def cmd_mori(args) -> int:
    try:
        g, n, e = mori.parse_range(args.g), mori.parse_range(args.n), mori.parse_range(args.emin)
    except ValueError as exc:
        print(f"error: bad range: {exc}", file=sys.stderr)
        return 2
    rows = mori.enumerate_scenarios(g, n, e)
    if args.only_feasible:
        rows = mori.survivors(rows)
    print(mori.format_table(rows))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"version": 1, "rows": [r.as_dict() for r in rows]}, fh, indent=2)
            fh.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="k3sym", description="Exact checks for H-invariant plane curves.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run registered claims")
    which = v.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true", help="run every claim")
    which.add_argument("--claim", action="append", metavar="ID", help="run one claim (repeatable)")
    v.add_argument("--tag", help="restrict to claims carrying this tag")
    v.add_argument("--json", metavar="PATH", help="write a JSON report")
    v.add_argument("--prime", type=int, help="prime for mod-p certificates (p = 1 mod the conductor)")
    v.add_argument("--field-order", type=int, default=84, help="conductor n of Q(zeta_n), default 84")
    v.add_argument("--max-closure", type=int, default=groups.DEFAULT_BOUND, help="element bound for group closures")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("curve", help="inspect a curve file")
    c.add_argument("action", choices=["show", "check"])
    c.add_argument("path")
    c.add_argument("--prime", type=int, help="start searching for a good prime here")
    c.set_defaults(func=cmd_curve)

    m = sub.add_parser("mori", help="Mori-reduction case table")
    msub = m.add_subparsers(dest="mori_command", required=True)
    sw = msub.add_parser("sweep", help="enumerate scenarios")
    sw.add_argument("--g", default="3..10")
    sw.add_argument("--n", default="0,7,14")
    sw.add_argument("--emin", default="3..11")
    sw.add_argument("--only-feasible", action="store_true")
    sw.add_argument("--json", metavar="PATH")
    sw.set_defaults(func=cmd_mori)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
