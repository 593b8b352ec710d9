"""Command-line interface: mutation walks, exchange-graph enumeration,
finite-type classification, randomized invariant verification, reference
example replay, exports, and the session server.

Exit codes: 0 ok, 1 verification failure, 2 usage/input error, 3 budget
exhausted.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .exchange import (
    BudgetExceeded,
    ExchangeMatrix,
    NotSkewSymmetrizable,
    classify_blocks,
    decompose,
    quiver_to_dot,
    to_quiver,
)
from .gca import (
    gca_duality_check,
    gca_initial,
    gca_step_work_bound,
    mutate_gca,
    validate_data,
)
from .golden import EXAMPLES
from .pattern import (
    SizeBudgetExceeded,
    check_separation,
    cluster_variable,
    coefficient,
    d_vector,
    enumerate_seeds,
    g_fan,
    g_fan_svg,
    graph_to_dot,
    graph_to_json,
    initial_seed,
    mutate,
    seed_to_json,
    verify_invariants,
    y_arena,
)
from .polyring import to_text
from .semifield import SfRational
from .server import serve

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class CliError(Exception):
    def __init__(self, message, code=EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _load_matrix(args):
    if getattr(args, "inline", None):
        text = args.inline
    elif getattr(args, "matrix", None):
        try:
            with open(args.matrix) as fh:
                text = fh.read()
        except OSError as e:
            raise CliError(f"cannot read matrix file: {e}")
    else:
        raise CliError("provide a matrix with --inline or --matrix")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CliError(f"matrix is not valid JSON: {e}")
    try:
        return ExchangeMatrix(data)
    except (NotSkewSymmetrizable, ValueError, TypeError) as e:
        raise CliError(f"bad exchange matrix: {e}")


def _parse_path(text, n):
    path = []
    for ch in text or "":
        if not ch.isdigit() or not 1 <= int(ch) <= n:
            raise CliError(f"path digit {ch!r} out of range 1..{n}")
        path.append(int(ch))
    return path


def cmd_mutate(args):
    B = _load_matrix(args)
    path = _parse_path(args.path, B.n)
    seed = initial_seed(B)
    for k in path:
        seed = mutate(seed, k)
    doc = seed_to_json(seed)
    if args.emit == "vars":
        doc["cluster_variables"] = [to_text(cluster_variable(seed, i)) for i in range(1, B.n + 1)]
        doc["d_vectors"] = [list(d_vector(seed, i)) for i in range(1, B.n + 1)]
    if args.semifield == "trop":
        doc["coefficients"] = [list(coefficient(seed, i).exps) for i in range(1, B.n + 1)]
    elif args.semifield == "sf":
        gens = [SfRational.generator(y_arena(B.n), v) for v in y_arena(B.n)]
        doc["coefficients"] = [
            coefficient(seed, i, "sf", gens).to_json() for i in range(1, B.n + 1)
        ]
    elif args.semifield == "trivial":
        doc["coefficients"] = [1] * B.n
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def cmd_enumerate(args):
    B = _load_matrix(args)
    result = enumerate_seeds(B, budget=args.budget)
    n_seeds = len(result.seeds)
    n_vars = len(result.cluster_variables)
    status = "complete" if result.complete else "incomplete at budget"
    print(f"{n_seeds} seeds, {n_vars} cluster variables, {status}")
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(graph_to_dot(result))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(graph_to_json(result), fh, indent=2)
    if args.gfan:
        if B.n != 2:
            raise CliError("--gfan requires a rank-2 matrix")
        with open(args.gfan, "w") as fh:
            json.dump(g_fan(result), fh)
    if args.svg:
        if B.n != 2:
            raise CliError("--svg requires a rank-2 matrix")
        with open(args.svg, "w") as fh:
            fh.write(g_fan_svg(result))
    return EXIT_OK if result.complete else EXIT_BUDGET


def cmd_classify(args):
    B = _load_matrix(args)
    try:
        labels = classify_blocks(B, max_matrices=args.budget, max_depth=args.depth)
    except BudgetExceeded:
        print("unknown (budget)")
        return EXIT_BUDGET
    if any(l is None for l in labels):
        print("infinite")
    else:
        print(" x ".join(str(l) for l in labels))
    return EXIT_OK


def _random_matrix(rng, n, bound):
    while True:
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = rng.randint(-bound, bound)
                if v:
                    w = rng.randint(1, bound)
                    rows[i][j] = v
                    rows[j][i] = -w if v > 0 else w
        try:
            return ExchangeMatrix(rows)
        except NotSkewSymmetrizable:
            continue


def cmd_verify(args):
    rng = random.Random(args.seed)
    report = {"walks": [], "separation": [], "gca": [], "ok": True}
    for _ in range(args.walks):
        n = rng.randint(2, 4)
        B = _random_matrix(rng, n, rng.randint(1, 3))
        seed = initial_seed(B)
        entry = {"b": B.to_json(), "path": [], "ok": True}
        for _ in range(args.depth):
            if max(abs(x) for row in seed.b.rows for x in row) > 6:
                break
            k = rng.randint(1, n)
            seed = mutate(seed, k, validate=False)
            entry["path"].append(k)
            inv = verify_invariants(seed)
            if not inv["ok"]:
                entry["ok"] = False
                entry["failed"] = {name: v for name, v in inv.items() if not v}
                break
        report["walks"].append(entry)
        report["ok"] = report["ok"] and entry["ok"]
    for _ in range(max(1, args.walks // 10) if args.walks else 0):
        B = _random_matrix(rng, 3, 2)
        path = [rng.randint(1, 3) for _ in range(min(args.depth, 6))]
        sep = check_separation(B, path)
        report["separation"].append({"b": B.to_json(), "path": path, "ok": sep["ok"]})
        report["ok"] = report["ok"] and sep["ok"]
    for _ in range(max(1, args.walks // 10) if args.walks else 0):
        B = _random_matrix(rng, 2, 2)
        data = validate_data([rng.randint(1, 3), rng.randint(1, 3)])
        seed = gca_initial(B, data)
        entry = {"b": B.to_json(), "r": list(data.r), "ok": True}
        for _ in range(min(args.depth, 6)):
            k = rng.randint(1, 2)
            if gca_step_work_bound(seed, k) > 100_000:
                break
            seed = mutate_gca(seed, k)
            dual = gca_duality_check(seed)
            if not dual["ok"]:
                entry["ok"] = False
                break
        report["gca"].append(entry)
        report["ok"] = report["ok"] and entry["ok"]
    print(json.dumps(report))
    return EXIT_OK if report["ok"] else EXIT_VERIFY


def cmd_examples(args):
    fn = EXAMPLES.get(args.name)
    if fn is None:
        raise CliError(f"unknown example {args.name!r}; choose from {sorted(EXAMPLES)}")
    diffs = fn()
    if diffs:
        for d in diffs:
            print(d)
        return EXIT_VERIFY
    print(f"{args.name}: ok")
    return EXIT_OK


def cmd_quiver(args):
    B = _load_matrix(args)
    dot = quiver_to_dot(to_quiver(B))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dot)
    else:
        print(dot)
    return EXIT_OK


def cmd_serve(args):
    serve(args.port, host=args.host)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="clusterkit",
        description="Exact mutation engine for cluster algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_matrix_args(p):
        p.add_argument("--inline", help="exchange matrix as inline JSON rows")
        p.add_argument("--matrix", help="path to a JSON file with matrix rows")

    p = sub.add_parser("mutate", help="walk a mutation path and print the seed")
    add_matrix_args(p)
    p.add_argument("--path", default="", help="mutation directions as digits, e.g. 121")
    p.add_argument("--emit", choices=["seed", "vars"], default="seed")
    p.add_argument(
        "--semifield",
        choices=["trop", "sf", "trivial"],
        help="also emit the coefficients specialized in this semifield",
    )
    p.set_defaults(fn=cmd_mutate)

    p = sub.add_parser("enumerate", help="breadth-first closure of the exchange graph")
    add_matrix_args(p)
    p.add_argument("--budget", type=int, default=50000)
    p.add_argument("--dot", help="write the exchange graph in DOT format")
    p.add_argument("--json", help="write the exchange graph as JSON")
    p.add_argument("--gfan", help="write the rank-2 g-vector fan as JSON")
    p.add_argument("--svg", help="write the rank-2 g-vector fan as SVG")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("classify", help="finite-type classification per block")
    add_matrix_args(p)
    p.add_argument("--budget", type=int, default=10000)
    p.add_argument("--depth", type=int, default=12)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("verify", help="randomized invariant verification")
    add_matrix_args(p)
    p.add_argument("--walks", type=int, default=100)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--seed", type=int, default=0, help="RNG seed for reproducibility")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("examples", help="replay a reference example against stored tables")
    p.add_argument("name", choices=sorted(EXAMPLES))
    p.set_defaults(fn=cmd_examples)

    p = sub.add_parser("quiver", help="DOT rendering of a skew-symmetric matrix")
    add_matrix_args(p)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_quiver)

    p = sub.add_parser("serve", help="run the JSON session API")
    p.add_argument("--port", type=int, default=8787)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except BudgetExceeded as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except SizeBudgetExceeded as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
