"""Golden-vector verification suites.

Each suite returns a list of named checks with expected/got renderings; a
suite passes when every check does.  The identity tables live in
data/goldens.json; everything else is recomputed on the fly against
independent oracles.
"""

from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from . import catalog
from .algebra import (GraphVector, TensorVector, associator, bracket, compose,
                      coproduct_reduced, exp_product, pairing)
from .bch import bch_oracle, bracket_str
from .characters import (AntipodeValue, antipode, antipode_geometric,
                         moyal_element, solve_weights, unitarity_check)
from .evaluator import (associativity_defect, constant_symplectic,
                        jacobi_defect, lie_nonabelian_2d, lie_so3, moyal_oracle,
                        star_product)
from .graphs import Graph, canonicalize, enumerate_class, parse_graph
from .poly import Polynomial
from .trees import (LEAF_L, LEAF_R, ck_coproduct_cuts, ck_coproduct_subgraphs,
                    graph_to_tree, node, tree_to_graph)

SAMPLE_SEED = 20240817


@dataclass
class CheckResult:
    name: str
    expected: str
    got: str

    @property
    def passed(self) -> bool:
        return self.expected == self.got

    def line(self) -> str:
        status = "ok  " if self.passed else "FAIL"
        return f"{status} {self.name}: expected {self.expected}, got {self.got}"


def _goldens() -> dict:
    with resources.files("graphstar.data").joinpath("goldens.json").open() as fh:
        return json.load(fh)


def _named_graphs(data: dict) -> dict[str, Graph]:
    return {name: canonicalize(parse_graph(text))
            for name, text in data["graphs"].items()}


def _vector(entries, graphs) -> GraphVector:
    return GraphVector([(graphs[g], Fraction(c)) for c, g in entries])


def _tensor(entries, graphs) -> TensorVector:
    return TensorVector([((graphs[a], graphs[b]), Fraction(c)) for c, a, b in entries])


def suite_appendix() -> list[CheckResult]:
    data = _goldens()
    graphs = _named_graphs(data)
    out = []
    for entry in data["compose"]:
        got = compose(graphs[entry["left"]], graphs[entry["right"]])
        expect = _vector(entry["expect"], graphs)
        out.append(CheckResult(entry["name"], str(expect), str(got)))
    for entry in data["bracket"]:
        got = bracket(graphs[entry["left"]], graphs[entry["right"]])
        expect = _vector(entry["expect"], graphs)
        out.append(CheckResult(entry["name"], str(expect), str(got)))
    for entry in data["coproduct"]:
        got = coproduct_reduced(graphs[entry["graph"]])
        expect = _tensor(entry["expect"], graphs)
        out.append(CheckResult(entry["name"], str(expect), str(got)))
    return out


def suite_duality() -> list[CheckResult]:
    out = []
    for total in range(4):
        mismatches = 0
        pairs = 0
        for k in range(total + 1):
            for g1 in enumerate_class(k, 2):
                for g2 in enumerate_class(total - k, 2):
                    comp = compose(g1, g2)
                    for big in enumerate_class(total, 3):
                        pairs += 1
                        if comp.coeff(big) != pairing(coproduct_reduced(big), g1, g2):
                            mismatches += 1
        out.append(CheckResult(f"duality/n={total}",
                               "0 mismatches",
                               f"{mismatches} mismatches (of {pairs} pairings)"
                               if mismatches else "0 mismatches"))
    return out


def suite_prelie() -> list[CheckResult]:
    out = []
    basis = {n: enumerate_class(n, 2) for n in range(4)}
    violations = 0
    for na in range(3):
        for nb in range(3 - na):
            for nc in range(3 - na - nb):
                for a, b, c in itertools.product(basis[na], basis[nb], basis[nc]):
                    if associator(a, b, c) + associator(a, c, b):
                        violations += 1
    out.append(CheckResult("prelie/exhaustive-n<=2", "0 violations",
                           f"{violations} violations" if violations else "0 violations"))
    triples = []
    for na in range(4):
        for nb in range(4 - na):
            nc = 3 - na - nb
            triples.extend(itertools.product(basis[na], basis[nb], basis[nc]))
    rng = random.Random(SAMPLE_SEED)
    sample = rng.sample(triples, 50)
    violations = sum(1 for a, b, c in sample
                     if associator(a, b, c) + associator(a, c, b))
    out.append(CheckResult("prelie/sampled-n=3", "0 violations in 50 samples",
                           f"{violations} violations in 50 samples" if violations
                           else "0 violations in 50 samples"))
    return out


def suite_moyal() -> list[CheckResult]:
    out = []
    w, reports = solve_weights(4, "zero-in-degree")
    statuses = {r.order: r.status for r in reports}
    out.append(CheckResult("moyal/solve-status",
                           "unique at orders 1..4",
                           "unique at orders 1..4"
                           if all(statuses[k] == "unique" for k in range(1, 5))
                           else str(statuses)))
    values_ok = all(w.weight(g) == 1 for n in range(5)
                    for g in enumerate_class(n, 2, "zero-in-degree"))
    out.append(CheckResult("moyal/weights-all-one", "true", str(values_ok).lower()))
    z = moyal_element(w, 4)
    out.append(CheckResult("moyal/element-is-exponential",
                           "true",
                           str(z == exp_product(GraphVector.of(catalog.B1), 4)).lower()))
    alpha = constant_symplectic(2)
    f = Polynomial(2, {(2, 0): 1})
    g = Polynomial(2, {(0, 2): 1})
    worked = star_product(f, g, alpha, w, 2)
    out.append(CheckResult("moyal/worked-value",
                           "x1^2*x2^2 + eps*(4*x1*x2) + eps^2*(2)", str(worked)))
    monos = [Polynomial(2, {(a, b): 1}) for a in range(4) for b in range(4) if a + b <= 3]
    mism = sum(1 for fa in monos for fb in monos
               if star_product(fa, fb, alpha, w, 4) != moyal_oracle(fa, fb, alpha, 4))
    out.append(CheckResult("moyal/star-equals-oracle-deg3-eps4", "0 mismatches",
                           f"{mism} mismatches" if mism else "0 mismatches"))
    return out


def suite_jacobi() -> list[CheckResult]:
    out = []
    so3 = lie_so3()
    lie2 = lie_nonabelian_2d()
    m3 = [Polynomial(3, {t: 1}) for t in itertools.product(range(3), repeat=3)
          if 0 < sum(t) <= 2]
    m2 = [Polynomial(2, {t: 1}) for t in itertools.product(range(3), repeat=2)
          if 0 < sum(t) <= 2]
    for name, alpha, monos in (("so3", so3, m3), ("nonabelian-2d", lie2, m2)):
        for mode in ("alt", "span"):
            bad = sum(1 for a, b, c in itertools.product(monos, repeat=3)
                      if jacobi_defect(alpha, a, b, c, mode))
            out.append(CheckResult(f"jacobi/{mode}-{name}", "0 nonzero defects",
                                   f"{bad} nonzero defects" if bad else "0 nonzero defects"))
    return out


def suite_assoc() -> list[CheckResult]:
    out = []
    w2, _ = solve_weights(2, "full")
    alpha = constant_symplectic(2, Fraction(7, 3))
    monos = [Polynomial(2, {(a, b): 1}) for a in range(5) for b in range(5) if a + b <= 4]
    bad = sum(1 for fa, fb, fc in itertools.product(monos, repeat=3)
              if associativity_defect(fa, fb, fc, alpha, w2, 2))
    out.append(CheckResult("assoc/eps2-generic-constant", "0 nonzero defects",
                           f"{bad} nonzero defects" if bad else "0 nonzero defects"))
    lie2 = lie_nonabelian_2d()
    wf, _ = solve_weights(3, "forest")
    bad = sum(1 for fa, fb, fc in itertools.product(monos[:8], repeat=3)
              if associativity_defect(fa, fb, fc, lie2, wf, 1))
    out.append(CheckResult("assoc/eps1-linear", "0 nonzero defects",
                           f"{bad} nonzero defects" if bad else "0 nonzero defects"))
    return out


def suite_antipode() -> list[CheckResult]:
    data = _goldens()
    graphs = _named_graphs(data)
    out = []
    for entry in data["antipode"]:
        got = antipode(graphs[entry["graph"]])
        expect = AntipodeValue(_vector(entry["graph_part"], graphs),
                               _tensor(entry["tensor_part"], graphs))
        out.append(CheckResult(entry["name"], str(expect), str(got)))
    mismatch = sum(1 for n in range(4) for g in enumerate_class(n, 3)
                   if antipode_geometric(g) != antipode(g))
    out.append(CheckResult("antipode/geometric-equals-recursive-n<=3",
                           "0 mismatches",
                           f"{mismatch} mismatches" if mismatch else "0 mismatches"))
    w3, _ = solve_weights(3, "forest")
    out.append(CheckResult("antipode/unitarity-forest-order3", "true",
                           str(unitarity_check(w3, 3)).lower()))
    return out


def suite_trees() -> list[CheckResult]:
    out = []
    mismatches = 0
    checked = 0
    for t in _binary_trees_up_to(5):
        checked += 1
        if ck_coproduct_cuts(t) != ck_coproduct_subgraphs(t):
            mismatches += 1
    out.append(CheckResult("trees/cuts-equal-subgraphs<=5",
                           "0 mismatches", f"{mismatches} mismatches (of {checked})"
                           if mismatches else "0 mismatches"))
    bad = 0
    count = 0
    for n in range(5):
        for g in enumerate_class(n, 2, "forest"):
            count += 1
            if tree_to_graph(graph_to_tree(g)) != g:
                bad += 1
    out.append(CheckResult("trees/graph-roundtrip-n<=4", "0 mismatches",
                           f"{bad} mismatches (of {count})" if bad else "0 mismatches"))
    comb_ok = True
    for n in range(1, 5):
        t = node(LEAF_L, LEAF_R)
        for _ in range(n - 1):
            t = node(LEAF_L, t)
        if tree_to_graph(t) != catalog.bernoulli_left(n):
            comb_ok = False
    out.append(CheckResult("trees/right-comb-is-left-chain", "true",
                           str(comb_ok).lower()))
    return out


def _binary_trees_up_to(max_nodes: int):
    # all leaf labelings: the coproduct is defined on every binary tree,
    # including those outside the graph correspondence
    def build(n):
        if n == 1:
            return [node(a, b) for a in (LEAF_L, LEAF_R) for b in (LEAF_L, LEAF_R)]
        out = set()
        for k in range(n):
            lefts = build(k) if k else [LEAF_L, LEAF_R]
            rights = build(n - 1 - k) if n - 1 - k else [LEAF_L, LEAF_R]
            for a in lefts:
                for b in rights:
                    out.add(node(a, b))
        return list(out)
    for n in range(1, max_nodes + 1):
        yield from build(n)


def suite_bch() -> list[CheckResult]:
    _, lie = bch_oracle(3)
    out = []
    deg2 = {bracket_str(t.bracket): t.coefficient for t in lie.get(2, [])}
    out.append(CheckResult("bch/degree-2", "{'[x,y]': Fraction(1, 2)}", str(deg2)))
    deg3 = {bracket_str(t.bracket): t.coefficient for t in lie.get(3, [])}
    out.append(CheckResult(
        "bch/degree-3",
        "{'[x,[x,y]]': Fraction(1, 12), '[[x,y],y]': Fraction(1, 12)}", str(deg3)))
    return out


SUITES = {
    "appendix": suite_appendix,
    "duality": suite_duality,
    "prelie": suite_prelie,
    "moyal": suite_moyal,
    "jacobi": suite_jacobi,
    "assoc": suite_assoc,
    "antipode": suite_antipode,
    "trees": suite_trees,
    "bch": suite_bch,
}


def run_suites(names: list[str], threads: int = 1) -> list[CheckResult]:
    """Run the named suites (deterministic output order regardless of the
    thread count)."""
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; known: {sorted(SUITES)}")
    if threads > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda n: SUITES[n](), names))
    else:
        results = [SUITES[n]() for n in names]
    return [check for block in results for check in block]
