"""Command-line front end.  Exit codes: 0 ok, 1 bad parameters, 2 failed verification."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import harness
from .errors import DegenerateError, ParameterError, VerificationError
from .farey import farey_set, integral_rho_exact, lemma_num_sums
from .io import read_graph, read_points, write_graph, write_points
from .lower_bounds import grid_star_lower_bound, must_have_graph
from .metrics import emst_weight, graph_weight, stretch_factor

EXIT_OK, EXIT_PARAM, EXIT_VERIFY = 0, 1, 2


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_gen(args) -> int:
    pts = harness.generate_points(args.kind, args.n, args.eps, args.seed)
    write_points(args.out, pts, harness.generator_header(args.kind, args.n, args.eps, args.seed))
    _emit({"points": len(pts), "out": args.out})
    return EXIT_OK


def cmd_build(args) -> int:
    pts = read_points(args.inp)
    if args.algo != "yao" and args.eps is None:
        raise ParameterError(f"{args.algo} needs --eps")
    g = harness.build(args.algo, pts, args.eps, args.k)
    write_graph(args.out, g)
    _emit({"algorithm": args.algo, "points": g.n, "edges": len(g), "weight": graph_weight(g)})
    return EXIT_OK


def cmd_verify(args) -> int:
    pts = read_points(args.points)
    rep = stretch_factor(pts, read_graph(args.graph, pts), 1.0 + args.eps)
    _emit({"stretch": rep.max_stretch, "witness": rep.witness, "target": rep.target, "ok": rep.ok})
    return EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_metrics(args) -> int:
    pts = read_points(args.points)
    g = read_graph(args.graph, pts)
    w, mst = graph_weight(g), emst_weight(pts)
    rep = stretch_factor(pts, g)
    _emit({"points": g.n, "edges": len(g), "weight": w, "emst": mst,
           "lightness": w / mst if mst > 0 else None,
           "sparsity": len(g) / g.n if g.n else None,
           "stretch": rep.max_stretch, "witness": rep.witness})
    return EXIT_OK


def cmd_lowerbound(args) -> int:
    if args.mode == "gridstar":
        if args.n is None:
            raise ParameterError("gridstar needs --n")
        _emit({"mode": "gridstar", "n": args.n, "eps": args.eps,
               "lower_bound": grid_star_lower_bound(args.n, args.eps)})
        return EXIT_OK
    if args.points is None:
        raise ParameterError(f"{args.mode} needs --points")
    pts = read_points(args.points)
    g = must_have_graph(pts, args.eps, lattice_mode=args.mode == "slab")
    if args.out:
        write_graph(args.out, g)
    _emit({"mode": args.mode, "eps": args.eps, "edges": len(g), "weight": graph_weight(g)})
    return EXIT_OK


def cmd_farey(args) -> int:
    out = {"n": args.n, "size": len(farey_set(args.n))}
    if args.integral:
        out["integral"] = integral_rho_exact(args.n)
    if args.lemma_num is not None:
        s1, s3 = lemma_num_sums(args.lemma_num)
        out["lemma_num"] = {"k": args.lemma_num, "sum_q": s1, "sum_q3": s3}
    _emit(out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = harness.SweepConfig.load(args.config)
    records = harness.run_sweep(cfg, args.out)
    bad = [r for r in records if not r.verified]
    _emit({"records": len(records), "failed": len(bad), "out": args.out})
    return EXIT_VERIFY if bad else EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sparseyao", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="generate a point file")
    s.add_argument("--kind", required=True, choices=harness.KINDS)
    s.add_argument("--n", type=int, required=True, help="point count (side length for grid)")
    s.add_argument("--eps", type=float)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("build", help="build a spanner")
    s.add_argument("--algo", required=True, choices=harness.ALGORITHMS)
    group = s.add_mutually_exclusive_group(required=True)
    group.add_argument("--eps", type=float)
    group.add_argument("--k", type=int, help="cone count (yao only)")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("verify", help="check the stretch of a graph against 1+eps")
    s.add_argument("--eps", type=float, required=True)
    s.add_argument("--points", required=True)
    s.add_argument("--graph", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("metrics", help="weight, EMST, lightness and stretch")
    s.add_argument("--points", required=True)
    s.add_argument("--graph", required=True)
    s.set_defaults(func=cmd_metrics)

    s = sub.add_parser("lowerbound", help="must-have edges or the lattice star bound")
    s.add_argument("--mode", required=True, choices=("ellipse", "slab", "gridstar"))
    s.add_argument("--eps", type=float, required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--points")
    s.add_argument("--out", help="write the must-have graph here")
    s.set_defaults(func=cmd_lowerbound)

    s = sub.add_parser("farey", help="Farey set size, rho integral, interval denominators")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--integral", action="store_true")
    s.add_argument("--lemma-num", type=int, metavar="K")
    s.set_defaults(func=cmd_farey)

    s = sub.add_parser("sweep", help="run a JSON-configured experiment sweep")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ParameterError, DegenerateError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except (VerificationError, AssertionError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
