"""Pydantic request/response models for the service surface.

Graphs travel as the text format ('m=2;n=1;v1:B1,B2') or the JSON object
form; vectors, tensors and weights use the canonical JSON schemas that the
CLI also emits, with rationals as 'p/q' strings throughout.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field


class GraphJSON(BaseModel):
    m: int
    n: int
    legs: list[tuple[str, str]]


GraphInput = Union[str, GraphJSON]


class VectorTerm(BaseModel):
    graph: GraphJSON
    coeff: str


class TensorTerm(BaseModel):
    left: GraphJSON
    right: GraphJSON
    coeff: str


class EnumerateRequest(BaseModel):
    n: int = Field(ge=0)
    m: int = Field(ge=1, le=3)
    restriction: Literal["full", "forest", "zero-in-degree", "constant"] = "full"


class EnumerateResponse(BaseModel):
    count: int
    graphs: list[str]
    graphs_json: list[GraphJSON]


class CanonicalizeRequest(BaseModel):
    graph: GraphInput


class CanonicalizeResponse(BaseModel):
    graph: str
    graph_json: GraphJSON
    automorphisms: int
    prime: bool
    forest: bool
    heights: Optional[tuple[int, int, int]] = None


class ComposeRequest(BaseModel):
    g1: GraphInput
    g2: GraphInput
    operation: Literal["compose", "bracket"] = "compose"
    count_assignments: bool = False


class VectorResponse(BaseModel):
    terms: list[VectorTerm]
    text: str


class CoproductRequest(BaseModel):
    graph: GraphInput
    prime: bool = False


class TensorResponse(BaseModel):
    terms: list[TensorTerm]
    text: str


class AntipodeRequest(BaseModel):
    graph: GraphInput
    method: Literal["recursive", "geometric"] = "recursive"


class AntipodeResponse(BaseModel):
    graph_part: list[VectorTerm]
    tensor_part: list[TensorTerm]
    text: str


class MergeRequest(BaseModel):
    graph: GraphInput


class SolveRequest(BaseModel):
    max_order: int = Field(default=3, ge=0, le=6)
    restriction: Literal["full", "forest", "zero-in-degree", "constant"] = "forest"
    normalize: dict[str, str] = Field(default_factory=dict)


class OrderStatus(BaseModel):
    order: int
    status: str


class WeightsJSON(BaseModel):
    restriction: str
    orders: int
    values: list[dict]
    report: list[OrderStatus]


class BivectorJSON(BaseModel):
    dim: int
    entries: dict[str, str]


class StarRequest(BaseModel):
    alpha: BivectorJSON
    f: str
    g: str
    order: int = Field(ge=0, le=6)
    weights: Optional[WeightsJSON] = None
    solve: Optional[SolveRequest] = None


class StarResponse(BaseModel):
    series: str
    terms: dict[int, str]


class VerifyRequest(BaseModel):
    suite: str


class CheckJSON(BaseModel):
    name: str
    expected: str
    got: str
    passed: bool


class VerifyResponse(BaseModel):
    suite: str
    passed: bool
    checks: list[CheckJSON]


class HealthResponse(BaseModel):
    status: str
    version: str
