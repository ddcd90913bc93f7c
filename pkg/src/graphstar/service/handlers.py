"""Request handlers shared by the HTTP app and the command-line client.

All handlers are pure functions from request models to response models;
domain errors surface as ServiceError with an HTTP-style status code.
"""

from __future__ import annotations

from fractions import Fraction

from .. import __version__
from ..algebra import GraphVector, TensorVector, bracket, compose, coproduct_prime, \
    coproduct_reduced, merger
from ..characters import WeightSystem, antipode, antipode_geometric, solve_weights, \
    weight_system_from_json
from ..evaluator import Bivector, star_product
from ..graphs import Graph, GraphError, canonicalize, enumerate_class, graph_from_json, \
    graph_to_json, heights, is_forest, is_prime, parse_graph, serialize_graph, \
    automorphism_count
from ..poly import PolynomialError, parse_polynomial
from ..verify import SUITES, run_suites
from .models import (AntipodeRequest, AntipodeResponse,
                     CanonicalizeRequest, CanonicalizeResponse, CheckJSON,
                     ComposeRequest, CoproductRequest, EnumerateRequest,
                     EnumerateResponse, GraphJSON, HealthResponse, MergeRequest,
                     OrderStatus, SolveRequest, StarRequest, StarResponse,
                     TensorResponse, TensorTerm, VectorResponse, VectorTerm,
                     VerifyRequest, VerifyResponse, WeightsJSON)


class ServiceError(Exception):
    def __init__(self, message: str, status_code: int = 422):
        super().__init__(message)
        self.status_code = status_code


def _graph(raw) -> Graph:
    try:
        if isinstance(raw, str):
            return canonicalize(parse_graph(raw))
        if isinstance(raw, GraphJSON):
            raw = raw.model_dump()
        return canonicalize(graph_from_json(raw))
    except GraphError as exc:
        raise ServiceError(str(exc)) from exc


def _vector_terms(v: GraphVector) -> list[VectorTerm]:
    return [VectorTerm(graph=GraphJSON(**graph_to_json(g)), coeff=str(c))
            for g, c in v]


def _tensor_terms(tv: TensorVector) -> list[TensorTerm]:
    return [TensorTerm(left=GraphJSON(**graph_to_json(a)),
                       right=GraphJSON(**graph_to_json(b)), coeff=str(c))
            for (a, b), c in tv]


def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


def enumerate_graphs(req: EnumerateRequest) -> EnumerateResponse:
    graphs = enumerate_class(req.n, req.m, req.restriction)
    return EnumerateResponse(
        count=len(graphs),
        graphs=[serialize_graph(g) for g in graphs],
        graphs_json=[GraphJSON(**graph_to_json(g)) for g in graphs])


def canonicalize_graph(req: CanonicalizeRequest) -> CanonicalizeResponse:
    g = _graph(req.graph)
    return CanonicalizeResponse(
        graph=serialize_graph(g),
        graph_json=GraphJSON(**graph_to_json(g)),
        automorphisms=automorphism_count(g),
        prime=is_prime(g),
        forest=is_forest(g),
        heights=heights(g) if g.m == 2 else None)


def compose_graphs(req: ComposeRequest) -> VectorResponse:
    g1, g2 = _graph(req.g1), _graph(req.g2)
    op = bracket if req.operation == "bracket" else compose
    try:
        result = op(g1, g2, count_assignments=req.count_assignments)
    except GraphError as exc:
        raise ServiceError(str(exc)) from exc
    return VectorResponse(terms=_vector_terms(result), text=str(result))


def coproduct_graph(req: CoproductRequest) -> TensorResponse:
    g = _graph(req.graph)
    try:
        tv = coproduct_prime(g) if req.prime else coproduct_reduced(g)
    except GraphError as exc:
        raise ServiceError(str(exc)) from exc
    return TensorResponse(terms=_tensor_terms(tv), text=str(tv))


def antipode_graph(req: AntipodeRequest) -> AntipodeResponse:
    g = _graph(req.graph)
    try:
        value = antipode_geometric(g) if req.method == "geometric" else antipode(g)
    except GraphError as exc:
        raise ServiceError(str(exc)) from exc
    return AntipodeResponse(graph_part=_vector_terms(value.graphs),
                            tensor_part=_tensor_terms(value.tensors),
                            text=str(value))


def merge_graph(req: MergeRequest) -> VectorResponse:
    g = _graph(req.graph)
    try:
        result = merger(g)
    except GraphError as exc:
        raise ServiceError(str(exc)) from exc
    return VectorResponse(terms=_vector_terms(result), text=str(result))


def solve(req: SolveRequest) -> WeightsJSON:
    normalization = {}
    try:
        for text, value in req.normalize.items():
            normalization[_graph(text)] = Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ServiceError(f"bad normalization: {exc}") from exc
    w, reports = solve_weights(req.max_order, req.restriction,
                               normalization or None)
    obj = w.to_json_obj()
    return WeightsJSON(restriction=obj["restriction"], orders=obj["orders"],
                       values=obj["values"],
                       report=[OrderStatus(**r.to_json_obj()) for r in reports])


def weights_from_model(model: WeightsJSON) -> WeightSystem:
    w, _ = weight_system_from_json(model.model_dump())
    return w


def star(req: StarRequest) -> StarResponse:
    try:
        alpha = Bivector.from_json_obj(req.alpha.model_dump())
        f = parse_polynomial(req.f, alpha.dim)
        g = parse_polynomial(req.g, alpha.dim)
    except (PolynomialError, GraphError, ValueError) as exc:
        raise ServiceError(str(exc)) from exc
    if req.weights is not None:
        w = weights_from_model(req.weights)
    else:
        solve_req = req.solve or SolveRequest(max_order=req.order)
        if solve_req.max_order < req.order:
            solve_req = solve_req.model_copy(update={"max_order": req.order})
        w, _ = solve_weights(solve_req.max_order, solve_req.restriction)
    if w.solved_order < req.order:
        raise ServiceError(f"weights solved to order {w.solved_order}, "
                           f"need {req.order}")
    try:
        series = star_product(f, g, alpha, w, req.order)
    except (GraphError, PolynomialError, LookupError) as exc:
        raise ServiceError(str(exc)) from exc
    return StarResponse(series=str(series),
                        terms={k: str(p) for k, p in series.items()})


def verify(req: VerifyRequest, threads: int = 1) -> VerifyResponse:
    names = sorted(SUITES) if req.suite == "all" else [req.suite]
    try:
        checks = run_suites(names, threads=threads)
    except ValueError as exc:
        raise ServiceError(str(exc), status_code=404) from exc
    return VerifyResponse(
        suite=req.suite,
        passed=all(c.passed for c in checks),
        checks=[CheckJSON(name=c.name, expected=c.expected, got=c.got,
                          passed=c.passed) for c in checks])
