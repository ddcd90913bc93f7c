"""Command-line client for the graph calculus.

Every subcommand builds the same request models the HTTP service accepts
and renders the response models; by default the handlers run in-process,
with --server URL the requests go over HTTP instead.  Exit codes: 0 ok,
1 verification failure, 2 usage or parse error, 3 solver infeasibility for
a requested full-class order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .graphs import GraphError
from .poly import PolynomialError
from .service import handlers
from .service.handlers import ServiceError
from .service.models import (AntipodeRequest, CanonicalizeRequest, ComposeRequest,
                             CoproductRequest, EnumerateRequest, MergeRequest,
                             SolveRequest, StarRequest, VerifyRequest, WeightsJSON)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3

ENDPOINTS = {
    "enumerate": "/graphs/enumerate",
    "canonicalize": "/graphs/canonicalize",
    "compose": "/algebra/compose",
    "coproduct": "/algebra/coproduct",
    "antipode": "/algebra/antipode",
    "merge": "/algebra/merge",
    "solve": "/weights/solve",
    "star": "/star",
    "verify": "/verify",
}


def thread_cap() -> int:
    raw = os.environ.get("GRAPHSTAR_THREADS", "")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError as exc:
        raise ServiceError(f"GRAPHSTAR_THREADS must be an integer, got {raw!r}") from exc


def _call(args, kind: str, request, response_model):
    """Dispatch a request model in-process or against a remote server."""
    if args.server:
        import httpx
        url = args.server.rstrip("/") + ENDPOINTS[kind]
        reply = httpx.post(url, json=request.model_dump(), timeout=600.0)
        if reply.status_code >= 400:
            detail = reply.json().get("detail", reply.text)
            raise ServiceError(f"server error {reply.status_code}: {detail}")
        return response_model.model_validate(reply.json())
    handler = {
        "enumerate": handlers.enumerate_graphs,
        "canonicalize": handlers.canonicalize_graph,
        "compose": handlers.compose_graphs,
        "coproduct": handlers.coproduct_graph,
        "antipode": handlers.antipode_graph,
        "merge": handlers.merge_graph,
        "solve": handlers.solve,
        "star": handlers.star,
    }[kind]
    return handler(request)


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text + ("\n" if not text.endswith("\n") else ""))
    else:
        print(text)


def _vector_text(terms) -> str:
    if not terms:
        return "0"
    return "\n".join(f"{t.coeff} {_graph_text(t.graph)}" for t in terms)


def _tensor_text(terms) -> str:
    if not terms:
        return "0"
    return "\n".join(f"{t.coeff} [{_graph_text(t.left)}] (x) [{_graph_text(t.right)}]"
                     for t in terms)


def _graph_text(gj) -> str:
    legs = ";".join(f"v{i+1}:{a},{b}" for i, (a, b) in enumerate(gj.legs))
    base = f"m={gj.m};n={gj.n}"
    return f"{base};{legs}" if legs else base


def load_config(path: str) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ServiceError(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphstar",
        description="Exact calculus of admissible graphs for star-products")
    common = argparse.ArgumentParser(add_help=False)
    for target, defaults in ((parser, True), (common, False)):
        kw = (lambda d: {"default": d}) if defaults else \
             (lambda d: {"default": argparse.SUPPRESS})
        target.add_argument("--server", metavar="URL", **kw(None),
                            help="run against a remote service instead of in-process")
        target.add_argument("--config", metavar="FILE", **kw(None),
                            help="key=value config file for defaults")
        target.add_argument("--format", choices=("text", "json"), **kw("text"))
        target.add_argument("--out", metavar="FILE", **kw(None),
                            help="write output to a file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list a graph class", parents=[common])
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("restriction", nargs="?", default="full",
                   choices=("full", "forest", "constant", "zero-in-degree"))

    p = sub.add_parser("canonicalize", help="canonical form and properties", parents=[common])
    p.add_argument("graph")

    p = sub.add_parser("compose", help="pre-Lie composition of two graphs", parents=[common])
    p.add_argument("g1")
    p.add_argument("g2")
    p.add_argument("--bracket", action="store_true",
                   help="graded bracket instead of the plain composition")
    p.add_argument("--assignments", action="store_true",
                   help="count one summand per landing map")

    p = sub.add_parser("coproduct", help="reduced coproduct of an m=3 graph", parents=[common])
    p.add_argument("graph")
    p.add_argument("--prime", action="store_true",
                   help="restrict to prime subgraph terms")

    p = sub.add_parser("antipode", help="antipode of a graph", parents=[common])
    p.add_argument("graph")
    p.add_argument("--method", choices=("recursive", "geometric"),
                   default="recursive")

    p = sub.add_parser("merge", help="merger (signed boundary-pair collapses)", parents=[common])
    p.add_argument("graph")

    p = sub.add_parser("solve", help="solve the weight constraints", parents=[common])
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--restrict", default=None,
                   choices=("full", "forest", "constant", "zero-in-degree"))
    p.add_argument("--normalize", action="append", default=[],
                   metavar="GRAPH=VALUE",
                   help="normalization pair, e.g. 'm=2;n=1;v1:B1,B2=1'")

    p = sub.add_parser("star", help="star product of two polynomials", parents=[common])
    p.add_argument("--alpha", required=True, metavar="FILE",
                   help="bivector JSON file")
    p.add_argument("--weights", default=None, metavar="FILE",
                   help="weights JSON file (defaults to solving on the fly)")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--restrict", default=None,
                   choices=("full", "forest", "constant", "zero-in-degree"))

    p = sub.add_parser("verify", help="run a golden verification suite", parents=[common])
    p.add_argument("suite", choices=("appendix", "duality", "prelie", "moyal",
                                     "jacobi", "assoc", "antipode", "trees",
                                     "bch", "all"))
    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = load_config(args.config) if args.config else {}

    if args.command == "enumerate":
        from .service.models import EnumerateResponse
        req = EnumerateRequest(n=args.n, m=args.m, restriction=args.restriction)
        resp = _call(args, "enumerate", req, EnumerateResponse)
        if args.format == "json":
            _emit(args, json.dumps(resp.model_dump()["graphs_json"], indent=2))
        else:
            _emit(args, "\n".join(resp.graphs) if resp.graphs else "(empty class)")
        return EXIT_OK

    if args.command == "canonicalize":
        from .service.models import CanonicalizeResponse
        resp = _call(args, "canonicalize", CanonicalizeRequest(graph=args.graph),
                     CanonicalizeResponse)
        if args.format == "json":
            _emit(args, json.dumps(resp.model_dump(), indent=2))
        else:
            lines = [resp.graph,
                     f"automorphisms={resp.automorphisms}",
                     f"prime={str(resp.prime).lower()}",
                     f"forest={str(resp.forest).lower()}"]
            if resp.heights is not None:
                lines.append("heights=(%d,%d,%d)" % resp.heights)
            _emit(args, "\n".join(lines))
        return EXIT_OK

    if args.command == "compose":
        from .service.models import VectorResponse
        req = ComposeRequest(g1=args.g1, g2=args.g2,
                             operation="bracket" if args.bracket else "compose",
                             count_assignments=args.assignments)
        resp = _call(args, "compose", req, VectorResponse)
        _emit(args, json.dumps([t.model_dump() for t in resp.terms], indent=2)
              if args.format == "json" else _vector_text(resp.terms))
        return EXIT_OK

    if args.command == "coproduct":
        from .service.models import TensorResponse
        req = CoproductRequest(graph=args.graph, prime=args.prime)
        resp = _call(args, "coproduct", req, TensorResponse)
        _emit(args, json.dumps([t.model_dump() for t in resp.terms], indent=2)
              if args.format == "json" else _tensor_text(resp.terms))
        return EXIT_OK

    if args.command == "antipode":
        from .service.models import AntipodeResponse
        req = AntipodeRequest(graph=args.graph, method=args.method)
        resp = _call(args, "antipode", req, AntipodeResponse)
        if args.format == "json":
            _emit(args, json.dumps(resp.model_dump(), indent=2))
        else:
            parts = []
            if resp.graph_part:
                parts.append(_vector_text(resp.graph_part))
            if resp.tensor_part:
                parts.append(_tensor_text(resp.tensor_part))
            _emit(args, "\n".join(parts) if parts else "0")
        return EXIT_OK

    if args.command == "merge":
        from .service.models import VectorResponse
        resp = _call(args, "merge", MergeRequest(graph=args.graph), VectorResponse)
        _emit(args, json.dumps([t.model_dump() for t in resp.terms], indent=2)
              if args.format == "json" else _vector_text(resp.terms))
        return EXIT_OK

    if args.command == "solve":
        max_order = args.max_order if args.max_order is not None \
            else int(config.get("max_order", 3))
        restriction = args.restrict or config.get("restriction", "forest")
        normalize = {}
        for pair in args.normalize:
            graph_text, sep, value = pair.rpartition("=")
            if not sep or not graph_text:
                raise ServiceError(f"--normalize takes GRAPH=VALUE, got {pair!r}")
            normalize[graph_text] = value
        req = SolveRequest(max_order=max_order, restriction=restriction,
                           normalize=normalize)
        resp = _call(args, "solve", req, WeightsJSON)
        if args.format == "json" or args.out:
            _emit(args, json.dumps(resp.model_dump(), indent=2))
        if args.format == "text":
            lines = [f"order {r.order}: {r.status}" for r in resp.report]
            for v in resp.values:
                legs = ";".join(f"v{i+1}:{a},{b}"
                                for i, (a, b) in enumerate(v["graph"]["legs"]))
                gtext = f"m={v['graph']['m']};n={v['graph']['n']}"
                lines.append(f"W({gtext + (';' + legs if legs else '')}) = {v['weight']}")
            if not args.out:
                print("\n".join(lines))
        if restriction == "full" and any(r.status == "infeasible" for r in resp.report):
            return EXIT_INFEASIBLE
        return EXIT_OK

    if args.command == "star":
        from .service.models import BivectorJSON, StarResponse
        alpha = BivectorJSON.model_validate(json.loads(Path(args.alpha).read_text()))
        weights = None
        if args.weights:
            weights = WeightsJSON.model_validate(
                json.loads(Path(args.weights).read_text()))
        solve_req = None
        if weights is None:
            solve_req = SolveRequest(
                max_order=args.order,
                restriction=args.restrict or config.get("restriction", "forest"))
        req = StarRequest(alpha=alpha, f=args.f, g=args.g, order=args.order,
                          weights=weights, solve=solve_req)
        resp = _call(args, "star", req, StarResponse)
        _emit(args, json.dumps(resp.model_dump(), indent=2)
              if args.format == "json" else resp.series)
        return EXIT_OK

    if args.command == "verify":
        from .service.models import VerifyResponse
        req = VerifyRequest(suite=args.suite)
        if args.server:
            resp = _call(args, "verify", req, VerifyResponse)
        else:
            resp = handlers.verify(req, threads=thread_cap())
        lines = [c.name + ": expected " + c.expected + ", got " + c.got +
                 (" [ok]" if c.passed else " [FAIL]") for c in resp.checks]
        lines.append(("PASS" if resp.passed else "FAIL") +
                     f" ({sum(c.passed for c in resp.checks)}/{len(resp.checks)} checks)")
        _emit(args, "\n".join(lines))
        return EXIT_OK if resp.passed else EXIT_VERIFY_FAILED

    raise ServiceError(f"unhandled command {args.command}")


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        return run(argv)
    except (ServiceError, GraphError, PolynomialError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
