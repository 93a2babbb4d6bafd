"""Command-line interface: ``loclu {cluster,generate,eval,dip}``.

Results are printed as JSON (or written to ``--output``) with a fixed key
order.  Exit status is 0 on success, 1 for bad input or configuration and 2
for unexpected internal failures.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .core import SWEEP_ALL, SWEEP_MODES, Preference, most_multimodal_attribute, run_loclu
from .dip import DipConfig, dip_test
from .errors import InvalidConfigError, InvalidInputError
from .graph import PowerIterConfig
from .io import (
    load_attributes,
    load_graph,
    load_labels,
    load_vertex_set,
    write_attributes,
    write_graph,
    write_ints,
)
from .measures import f1, nmi
from .synthgen import SyntheticSpec, generate, variable_size_spec

log = logging.getLogger("loclu")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_dip_options(p):
    p.add_argument("--alpha", type=float, default=0.05, help="significance level (default 0.05)")
    p.add_argument("--bootstrap-b", type=int, default=1000, help="uniform replicates for the p-value (default 1000)")
    p.add_argument("--rng-seed", type=int, default=0, help="seed for every random stream (default 0)")


def _add_output(p):
    p.add_argument("-o", "--output", help="write the JSON result here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(prog="loclu", description="Seed-driven local clustering on attributed graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeatable)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="find the local cluster of a seed vertex")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--attrs", required=True, help="attribute CSV, one row per vertex")
    p.add_argument("--labels", help="ground-truth labels; adds F1 and NMI to the output")
    p.add_argument("--seed-vertex", type=int, required=True, help="0-based id of the seed vertex")
    p.add_argument("--designated", default="auto",
                   help="comma-separated attribute columns, 'auto' for the single highest-dip column, "
                        "or 'none' (default auto)")
    p.add_argument("--sweep", choices=SWEEP_MODES, default=SWEEP_ALL,
                   help="sweep all designated columns or only the most multimodal one (default all)")
    p.add_argument("--max-passes", type=int, default=None,
                   help="cap on sweeps over the ordered columns (default: until stable)")
    p.add_argument("--epsilon-hat", type=float, default=0.001, help="power-iteration stopping threshold")
    p.add_argument("--max-iter", type=int, default=1000, help="power-iteration step limit")
    _add_dip_options(p)
    _add_output(p)
    p.add_argument("--members-out", help="also write the member ids, one per line")

    p = sub.add_parser("generate", help="write a planted-partition instance")
    sizes = p.add_mutually_exclusive_group(required=True)
    sizes.add_argument("--sizes", type=_int_list, help="graph cluster sizes, e.g. 500,500")
    sizes.add_argument("--variable", type=_int_list, metavar="LOW,HIGH,K",
                       help="K cluster sizes drawn uniformly from [LOW, HIGH]")
    p.add_argument("--p-in", type=float, default=0.35)
    p.add_argument("--p-out", type=float, default=0.01)
    p.add_argument("--d", type=int, default=20, help="number of attributes")
    p.add_argument("--relevant-ratio", type=float, default=0.5)
    p.add_argument("--min-mean-separation", type=float, default=0.0)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--out-dir", required=True, help="directory for graph.txt, attrs.csv, labels.txt")
    _add_output(p)

    p = sub.add_parser("eval", help="score a detected vertex set against a ground-truth set")
    p.add_argument("--detected", required=True, help="detected vertex ids, one per line")
    p.add_argument("--truth", required=True, help="ground-truth vertex ids, one per line")
    size = p.add_mutually_exclusive_group(required=True)
    size.add_argument("--n", type=int, help="number of vertices")
    size.add_argument("--graph", help="edge-list file to take the vertex count from")
    _add_output(p)

    p = sub.add_parser("dip", help="dip test on one attribute column")
    p.add_argument("--attrs", required=True, help="attribute CSV")
    p.add_argument("--column", type=int, default=0, help="0-based column after one-hot expansion")
    _add_dip_options(p)
    _add_output(p)
    return parser


def _emit(result, output):
    text = json.dumps(result, indent=2)
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _designated(text, X):
    text = text.strip().lower()
    if text == "auto":
        if X.shape[1] == 0:
            return []
        return [most_multimodal_attribute(X)]
    if text in ("none", ""):
        return []
    return _int_list(text)


def cmd_cluster(args):
    dipcfg = DipConfig(alpha=args.alpha, bootstrap_b=args.bootstrap_b, rng_seed=args.rng_seed)
    picfg = PowerIterConfig(epsilon_hat=args.epsilon_hat, max_iter=args.max_iter, rng_seed=args.rng_seed)
    graph = load_graph(args.graph)
    X, names = load_attributes(args.attrs, graph.n)
    if X.shape[1] == 0:
        X = np.empty((graph.n, 0))
    designated = _designated(args.designated, X)
    pref = Preference(args.seed_vertex, tuple(designated))
    res = run_loclu(graph, X, pref, picfg, dipcfg, mode=args.sweep, max_passes=args.max_passes)

    out = {
        "command": "cluster",
        "seed_vertex": pref.seed_id,
        "designated": list(pref.designated),
        "designated_names": [names[a] for a in pref.designated],
    }
    out.update(res.to_dict())
    if args.labels:
        labels = load_labels(args.labels, graph.n)
        truth = np.flatnonzero(labels == labels[pref.seed_id])
        out["f1"] = f1(res.members, truth)
        out["nmi"] = nmi(res.members, truth, graph.n)
    out["config"] = {
        "graph": args.graph,
        "attrs": args.attrs,
        "labels": args.labels,
        "seed_vertex": args.seed_vertex,
        "designated": args.designated,
        "sweep": args.sweep,
        "max_passes": args.max_passes,
        "alpha": dipcfg.alpha,
        "bootstrap_b": dipcfg.bootstrap_b,
        "epsilon_hat": picfg.epsilon_hat,
        "max_iter": picfg.max_iter,
        "rng_seed": args.rng_seed,
    }
    if args.members_out:
        write_ints(res.members, args.members_out)
    _emit(out, args.output)


def cmd_generate(args):
    common = dict(p_in=args.p_in, p_out=args.p_out, d=args.d, relevant_ratio=args.relevant_ratio,
                  min_mean_separation=args.min_mean_separation)
    if args.variable is not None:
        if len(args.variable) != 3:
            raise InvalidInputError("--variable takes LOW,HIGH,K")
        low, high, k = args.variable
        spec = variable_size_spec(low, high, k, rng_seed=args.rng_seed, **common)
    else:
        spec = SyntheticSpec(cluster_sizes=tuple(args.sizes), rng_seed=args.rng_seed, **common)
    inst = generate(spec)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_graph(inst.graph, out_dir / "graph.txt")
    write_attributes(inst.X, out_dir / "attrs.csv")
    write_ints(inst.truth, out_dir / "labels.txt")
    _emit({
        "command": "generate",
        "n": inst.graph.n,
        "edges": inst.graph.n_edges,
        "d": spec.d,
        "clusters": int(inst.truth.max()) + 1,
        "relevant": inst.relevant,
        "files": {name: str(out_dir / name) for name in ("graph.txt", "attrs.csv", "labels.txt")},
        "config": {
            "cluster_sizes": list(spec.cluster_sizes),
            "p_in": spec.p_in,
            "p_out": spec.p_out,
            "d": spec.d,
            "relevant_ratio": spec.relevant_ratio,
            "min_mean_separation": spec.min_mean_separation,
            "rng_seed": spec.rng_seed,
        },
    }, args.output)


def cmd_eval(args):
    n = args.n if args.n is not None else load_graph(args.graph).n
    detected = load_vertex_set(args.detected)
    truth = load_vertex_set(args.truth)
    for ids in (detected, truth):
        if ids.size and ids.max() >= n:
            raise InvalidInputError(f"vertex id {ids.max()} not below n={n}")
    _emit({"command": "eval", "n": n, "f1": f1(detected, truth), "nmi": nmi(detected, truth, n)}, args.output)


def cmd_dip(args):
    cfg = DipConfig(alpha=args.alpha, bootstrap_b=args.bootstrap_b, rng_seed=args.rng_seed)
    X, names = load_attributes(args.attrs)
    if not 0 <= args.column < X.shape[1]:
        raise InvalidInputError(f"column {args.column} out of range 0..{X.shape[1] - 1}")
    res = dip_test(X[:, args.column], cfg)
    out = {"command": "dip", "column": args.column, "name": names[args.column], "n": int(X.shape[0])}
    out.update(res.to_dict())
    out["unimodal"] = res.is_unimodal(cfg.alpha)
    out["config"] = {"alpha": cfg.alpha, "bootstrap_b": cfg.bootstrap_b, "rng_seed": cfg.rng_seed}
    _emit(out, args.output)


COMMANDS = {"cluster": cmd_cluster, "generate": cmd_generate, "eval": cmd_eval, "dip": cmd_dip}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (InvalidInputError, InvalidConfigError, OSError) as exc:
        print(f"loclu: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - last-resort mapping to the internal-error status
        log.debug("internal error", exc_info=True)
        print(f"loclu: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
