"""Command-line front end.

Subcommands ``local``, ``global``, ``weakly-global``, ``metrics`` and
``verify`` read an edge list (``u v p`` per line) from a path or stdin and
write JSON (default) or TSV. Exit status is 1 for bad input and 2 when the
exhaustive oracle would exceed its edge budget.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import astuple
from typing import Sequence

from .global_nuclei import fg_decompose, wg_decompose
from .graph import GraphInputError, ProbabilisticGraph, induced_edge_subgraph, load_edge_list
from .local import Nucleus, all_nuclei, compute_scores
from .metrics import pcc, pd
from .motifs import cached_index
from .oracle import BudgetError, OracleBudget, exact_tails
from .sampling import DomainError, SamplingConfig
from .support import Hyperparams

log = logging.getLogger("probnucleus")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="probnucleus",
        description="Nucleus decompositions of graphs with independent edge probabilities.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", default="-",
                        help="edge-list file of 'u v p' lines; '-' or omitted reads stdin")
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--backend", choices=("exact", "hybrid"), default="hybrid")
    common.add_argument("--hyper", default=None,
                        metavar="A,B,C,D", help="approximation selection thresholds")
    common.add_argument("--k", type=int, default=None, help="only report level k")
    common.add_argument("-v", "--verbose", action="store_true")

    sampled = argparse.ArgumentParser(add_help=False)
    sampled.add_argument("--epsilon", type=float, default=0.1)
    sampled.add_argument("--delta", type=float, default=0.1)
    sampled.add_argument("--samples", type=int, default=None,
                         help="number of sampled worlds (overrides the epsilon/delta bound)")
    sampled.add_argument("--seed", type=int, default=0)
    sampled.add_argument("--estimator", choices=("mc", "oracle"), default="mc")
    sampled.add_argument("--max-oracle-edges", type=int, default=20)
    sampled.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    p = sub.add_parser("local", parents=[common], help="local nucleus decomposition")
    p.add_argument("--theta", type=float, required=True)

    p = sub.add_parser("global", parents=[common, sampled], help="global nuclei")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--keep-nonmaximal", action="store_true",
                   help="report every accepted candidate, not only maximal ones")

    p = sub.add_parser("weakly-global", parents=[common, sampled], help="weakly-global nuclei")
    p.add_argument("--theta", type=float, required=True)

    p = sub.add_parser("metrics", parents=[common],
                       help="density and clustering of the graph, and of its local nuclei with --theta")
    p.add_argument("--theta", type=float, default=None)

    p = sub.add_parser("verify", parents=[common], help="exact tail probabilities by enumeration")
    p.add_argument("--mode", choices=("local", "global", "weakly-global"), default="local")
    p.add_argument("--triangle", action="append", default=None, metavar="U,V,W",
                   help="triangle in input labels; repeatable; default is every triangle")
    p.add_argument("--max-oracle-edges", type=int, default=20)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        _validate(args)
        args.hyper = Hyperparams() if args.hyper is None else Hyperparams.parse(args.hyper)
        g = _read(args.input)
        if args.command == "verify":
            doc = _verify(g, args)
        elif args.command == "metrics":
            doc = _metrics(g, args)
        else:
            doc = _decompose(g, args)
    except BudgetError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except (GraphInputError, DomainError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    _write(doc, args, stdout)
    return 0


def main() -> None:
    sys.exit(run())


def _read(path: str) -> ProbabilisticGraph:
    if path == "-":
        return load_edge_list(sys.stdin)
    return load_edge_list(path)


def _validate(args) -> None:
    theta = getattr(args, "theta", None)
    if theta is not None and not 0 < theta <= 1:
        raise ValueError(f"--theta must lie in (0, 1], got {theta}")
    if args.k is not None and args.k < 0:
        raise ValueError("--k must be non-negative")
    if getattr(args, "threads", 1) < 1:
        raise ValueError("--threads must be at least 1")
    if getattr(args, "max_oracle_edges", 1) < 0:
        raise ValueError("--max-oracle-edges must be non-negative")


def _decompose(g: ProbabilisticGraph, args) -> dict:
    idx = cached_index(g)
    scores = compute_scores(g, idx, args.theta, args.hyper, args.backend)
    params = {"backend": args.backend, "hyper": list(astuple(args.hyper))}
    if args.command == "local":
        nuclei = all_nuclei(idx, scores)
        if args.k is not None:
            nuclei = [n for n in nuclei if n.k == args.k]
    else:
        cfg = SamplingConfig(epsilon=args.epsilon, delta=args.delta, n_override=args.samples,
                             base_seed=args.seed, n_jobs=args.threads)
        budget = OracleBudget(args.max_oracle_edges)
        params.update(epsilon=args.epsilon, delta=args.delta, samples=cfg.n_samples,
                      seed=args.seed, estimator=args.estimator)
        if args.command == "global":
            params["keep_nonmaximal"] = args.keep_nonmaximal
            nuclei = fg_decompose(g, idx, scores, args.theta, cfg, estimator=args.estimator,
                                  budget=budget, keep_nonmaximal=args.keep_nonmaximal, k=args.k)
        else:
            nuclei = wg_decompose(g, idx, scores, args.theta, cfg, estimator=args.estimator,
                                  budget=budget, k=args.k)
    nuclei = sorted(nuclei, key=lambda n: (-n.k, n.edges))
    return {
        "mode": args.command,
        "theta": args.theta,
        "params": params,
        "scores": [{"triangle": [g.label_of(x) for x in idx.triangles[t]], "nu": s}
                   for t, s in sorted(scores.score.items())],
        "nuclei": [_nucleus_doc(g, n) for n in nuclei],
    }


def _metrics(g: ProbabilisticGraph, args) -> dict:
    doc = {"mode": "metrics", "theta": args.theta, "params": {},
           "graph": _quality(g), "nuclei": []}
    if args.theta is not None:
        idx = cached_index(g)
        scores = compute_scores(g, idx, args.theta, args.hyper, args.backend)
        nuclei = all_nuclei(idx, scores)
        if args.k is not None:
            nuclei = [n for n in nuclei if n.k == args.k]
        doc["params"] = {"backend": args.backend, "hyper": list(astuple(args.hyper))}
        doc["nuclei"] = [_nucleus_doc(g, n) for n in nuclei]
    return doc


def _verify(g: ProbabilisticGraph, args) -> dict:
    idx = cached_index(g)
    if args.triangle:
        tris = [_parse_triangle(g, s) for s in args.triangle]
    else:
        tris = list(idx.triangles)
    k = 1 if args.k is None else args.k
    probs = exact_tails(g, tris, k, args.mode, OracleBudget(args.max_oracle_edges), idx)
    return {
        "mode": args.mode,
        "k": k,
        "results": [{"triangle": [g.label_of(x) for x in t], "probability": p}
                    for t, p in sorted(probs.items())],
    }


def _parse_triangle(g: ProbabilisticGraph, text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"--triangle expects U,V,W, got {text!r}")
    try:
        labels = [int(x) for x in parts]
    except ValueError:
        raise ValueError(f"--triangle expects integers, got {text!r}") from None
    t = tuple(sorted(g.vertex_of(x) for x in labels))
    if len(set(t)) != 3 or not all(g.has_edge(a, b) for a, b in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))):
        raise ValueError(f"{text} is not a triangle of the input graph")
    return t


def _nucleus_doc(g: ProbabilisticGraph, n: Nucleus) -> dict:
    view = induced_edge_subgraph(g, n.edges)
    return {
        "k": n.k,
        "vertices": [g.label_of(v) for v in n.vertices],
        "edges": [[u, v, p] for u, v, p in view.edge_triples()],
        **_quality(view),
    }


def _quality(h) -> dict:
    out = {}
    for name, fn in (("pd", pd), ("pcc", pcc)):
        try:
            out[name] = fn(h)
        except DomainError:
            out[name] = None
    return out


def _write(doc: dict, args, stream) -> None:
    if args.format == "json":
        json.dump(doc, stream, indent=2)
        stream.write("\n")
        return
    if args.command == "verify":
        for r in doc["results"]:
            stream.write("\t".join(map(str, r["triangle"])) + f"\t{r['probability']!r}\n")
        return
    if args.command == "metrics":
        stream.write(f"graph\t\t{_fmt(doc['graph']['pd'])}\t{_fmt(doc['graph']['pcc'])}\n")
    else:
        for s in doc["scores"]:
            stream.write("score\t" + ",".join(map(str, s["triangle"])) + f"\t{s['nu']}\n")
    for i, n in enumerate(doc["nuclei"]):
        verts = ",".join(map(str, n["vertices"]))
        stream.write(f"nucleus\t{i}\t{n['k']}\t{verts}\t{_fmt(n['pd'])}\t{_fmt(n['pcc'])}\n")
        for u, v, p in n["edges"]:
            stream.write(f"edge\t{i}\t{u}\t{v}\t{p!r}\n")


def _fmt(x) -> str:
    return "" if x is None else repr(x)


if __name__ == "__main__":
    main()
