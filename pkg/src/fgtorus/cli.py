"""``fg``: JSON front end and verification suites.

Machine output is JSON on stdout (or ``-o FILE``); a one-line summary goes to
stderr.  Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input
error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from . import __version__, balanced, mutation, qtorus, reps, suites, sympoly
from .balanced import TheoremViolation
from .coeff import FORMAL, tower_from
from .quiver import NTriangulationQuiver
from .surface import SurfaceData, flip, new_surface, validate


class UsageError(Exception):
    pass


def _load_surface(path: str | None) -> SurfaceData:
    if not path:
        raise UsageError("-s FILE is required")
    try:
        return SurfaceData.from_json(Path(path).read_text())
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot read surface {path}: {exc}") from exc


def _quiver(args) -> NTriangulationQuiver:
    if args.n is None:
        raise UsageError("-n N is required")
    return NTriangulationQuiver(_load_surface(args.surface), args.n)


def _ring(args, n: int):
    """(ring, tower or None) from --order / --formal."""
    if args.formal or args.order is None:
        return FORMAL, None
    tw = tower_from(n, args.order)
    return tw.field, tw


# ---------------------------------------------------------------------------
# subcommands; each returns (json object, passed)


def cmd_surface(args) -> tuple[Any, bool]:
    if args.action == "new":
        if args.genus is None or args.punctures is None:
            raise UsageError("surface new needs -g and -m")
        S = new_surface(args.genus, args.punctures, seed=args.seed)
        return S.to_json_obj(), True
    S = _load_surface(args.surface)
    if args.action == "validate":
        msgs = validate(S)
        return {"errors": msgs, "pass": not msgs}, not msgs
    if args.edge is None:
        raise UsageError("surface flip needs -e ID")
    return flip(S, args.edge).to_json_obj(), True


def cmd_quiver(args):
    return _quiver(args).to_json_obj(), True


def cmd_center(args):
    q = _quiver(args)
    bl = balanced.balanced_lattice(q)
    rep = balanced.kernel_generators(bl)
    out: dict[str, Any] = {
        "b_generators": [list(g) for g in rep.generators],
        "kernel_rank": rep.kernel_rank,
        "independent": rep.independent,
        "index": rep.index,
    }
    ok = rep.passed
    _, tw = _ring(args, q.n)
    if tw is None:
        out["mode"] = "formal"
        out["generators"] = out["b_generators"]
    else:
        center = bl.B_d(tw.d).scaled(tw.N) + bl.kernel
        out["mode"] = "root-of-unity"
        out["tower"] = tw.to_json_obj()
        out["generators"] = center.rows()
        out["indices"] = {str(d): balanced.index_Bd(bl, d) for d in balanced.gcd_divisors(q.n)}
        r = balanced.rank_over_center(bl, tw, check=False)
        out["rank"] = r.to_json_obj()
        ok = ok and r.passed
    out["pass"] = ok
    return out, ok


def cmd_rank(args):
    q = _quiver(args)
    if args.order is None or args.formal:
        raise UsageError("rank needs --order M (the formal center has infinite index)")
    rep = balanced.rank_over_center(balanced.balanced_lattice(q), tower_from(q.n, args.order), check=False)
    return rep.to_json_obj(), rep.passed


def cmd_normalform(args):
    nf = balanced.normal_form_B(balanced.balanced_lattice(_quiver(args)), check=False)
    return nf.to_json_obj(), nf.passed


def cmd_flipseq(args):
    S = _load_surface(args.surface)
    if args.edge is None or args.n is None:
        raise UsageError("flipseq needs -e ID and -n N")
    try:
        seq = mutation.find_flip_sequence(S, args.edge, args.n, max_len=args.max_len)
    except mutation.NotFound as exc:
        return {"found": False, "max_len": args.max_len, "error": str(exc)}, False
    out = seq.to_json_obj()
    out["found"] = True
    return out, True


def cmd_loop_image(args):
    q = _quiver(args)
    ring, _ = _ring(args, q.n)
    punct = [args.puncture] if args.puncture else list(q.surface.punctures)
    ks = [args.k] if args.k else list(range(1, q.n))
    rows = []
    for p in punct:
        for k in ks:
            li = qtorus.loop_image(q, p, k, ring)
            rows.append(
                {
                    "puncture": p,
                    "k": k,
                    "element": li.element.to_json_obj(),
                    "central": li.central,
                    "d_form_matches": li.d_form_matches,
                    "pass": li.passed,
                }
            )
    ok = all(r["pass"] for r in rows)
    return {"loops": rows, "pass": ok}, ok


def cmd_p4check(args):
    if args.n is None:
        raise UsageError("-n N is required")
    ring, _ = _ring(args, args.n)
    rep = qtorus.p4_corner_check(args.n, ring)
    rows = [r.__dict__ for r in balanced.p4_boundary_rows(args.n)]
    out = rep.to_json_obj()
    out["boundary_rows"] = rows
    return out, rep.passed


def cmd_pbar(args):
    if None in (args.n, args.m, args.k):
        raise UsageError("pbar needs --n, --m and --k")
    try:
        P = sympoly.pbar(args.m, args.k, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    terms = [{"exponents": list(e), "coeff": c} for e, c in P.terms]
    return {"n": args.n, "m": args.m, "k": args.k, "polynomial": str(P), "terms": terms}, True


def cmd_irrep(args):
    if args.action == "random":
        if args.order is None or args.n is None:
            raise UsageError("irrep random needs -n N and --order M")
        data = reps.random_irrep(_load_surface(args.surface), args.n, args.order, seed=args.seed)
        return data.spec.to_json_obj(), True
    if not args.file:
        raise UsageError(f"irrep {args.action} needs a file")
    try:
        obj = json.loads(Path(args.file).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from exc
    if args.action == "build":
        data = reps.build_irrep(reps.IrrepSpec.from_json_obj(obj))
        return data.to_json_obj(), True
    rep = reps.verify_irrep(reps.IrrepData.from_json_obj(obj))
    return rep.to_json_obj(), rep.passed


def cmd_verify(args):
    rep = suites.run_suite(args.suite, seed=args.seed, max_len=args.max_len)
    for c in rep.cases:
        print(f"{c.status:4}  {c.runtime_ms:8.1f} ms  {c.name}", file=sys.stderr)
    return rep.to_json_obj(timings=args.timings), rep.passed


# ---------------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser, surface=True, n=True, ring=False) -> None:
    if surface:
        p.add_argument("-s", dest="surface", metavar="FILE", help="triangulation JSON")
    if n:
        p.add_argument("-n", "--n", dest="n", type=int, metavar="N", help="rank of PGL_n")
    if ring:
        p.add_argument("--order", type=int, metavar="M", help="order M of the root of unity ω̂^{1/2}")
        p.add_argument("--formal", action="store_true", help="formal Laurent coefficients")
    p.add_argument("-o", dest="output", metavar="FILE", help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fg", description="Quantum tori of n-triangulations: centers, ranks and representations.")
    ap.add_argument("--version", action="version", version=f"fg {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("surface", help="create, validate or flip a triangulation")
    p.add_argument("action", choices=("new", "validate", "flip"))
    p.add_argument("-g", dest="genus", type=int)
    p.add_argument("-m", dest="punctures", type=int)
    p.add_argument("-e", dest="edge", type=int)
    p.add_argument("--seed", type=int, default=0)
    _common(p, n=False)
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("quiver", help="n-triangulation quiver JSON")
    _common(p)
    p.set_defaults(func=cmd_quiver)

    for name, fn in (("center", cmd_center), ("rank", cmd_rank)):
        p = sub.add_parser(name, help=f"{name} of the balanced quantum torus")
        _common(p, ring=True)
        p.set_defaults(func=fn)

    p = sub.add_parser("normalform", help="antisymmetric normal form of the balanced lattice")
    _common(p)
    p.set_defaults(func=cmd_normalform)

    p = sub.add_parser("flipseq", help="mutation sequence realising a flip")
    _common(p)
    p.add_argument("-e", dest="edge", type=int)
    p.add_argument("--max-len", type=int, default=12)
    p.set_defaults(func=cmd_flipseq)

    p = sub.add_parser("loop-image", help="images of peripheral loops")
    _common(p, ring=True)
    p.add_argument("--puncture", "-p")
    p.add_argument("--k", "-k", type=int)
    p.set_defaults(func=cmd_loop_image)

    p = sub.add_parser("p4check", help="quadrilateral K rows and corner-arc identities")
    _common(p, surface=False, ring=True)
    p.set_defaults(func=cmd_p4check)

    p = sub.add_parser("pbar", help="reduced power elementary polynomial")
    _common(p, surface=False)
    p.add_argument("--m", "-m", dest="m", type=int)
    p.add_argument("--k", "-k", dest="k", type=int)
    p.set_defaults(func=cmd_pbar)

    p = sub.add_parser("irrep", help="build or verify an irreducible representation")
    p.add_argument("action", choices=("random", "build", "verify"))
    p.add_argument("file", nargs="?", help="irrep JSON (verify)")
    p.add_argument("--spec", dest="spec", metavar="FILE", help="spec JSON (build)")
    p.add_argument("--seed", type=int, default=0)
    _common(p, ring=True)
    p.set_defaults(func=cmd_irrep)

    p = sub.add_parser("verify", help="run a seeded verification suite")
    p.add_argument("--suite", choices=tuple(suites.SUITES), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-len", type=int, default=12)
    p.add_argument("--timings", action="store_true", help="include runtime-ms in the JSON")
    p.add_argument("-o", dest="output", metavar="FILE")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "spec", None) and not args.file:
        args.file = args.spec
    t0 = time.perf_counter()
    try:
        obj, ok = args.func(args)
    except UsageError as exc:
        print(f"fg: error: {exc}", file=sys.stderr)
        return 2
    except TheoremViolation as exc:
        print(f"fg: check failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, LookupError) as exc:
        print(f"fg: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(obj, indent=2, sort_keys=False, default=str) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"fg {args.command}: {'pass' if ok else 'FAIL'} ({1000 * (time.perf_counter() - t0):.0f} ms)", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
