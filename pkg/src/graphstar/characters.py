"""Weight systems on arity-2 graphs and the order-by-order solve of the
associativity constraints, plus the antipode and unitarity checks.

A weight system is multiplicative (values on non-prime graphs are products
over prime factors) and transpose-symmetric by default, so the unknowns at
internal degree n are the prime graphs of that degree modulo transpose.
Graphs outside the system's restriction class evaluate to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import catalog
from .algebra import GraphVector, TensorVector, coproduct_reduced, log_product
from .exactsolve import solve_exact
from .graphs import (Graph, InvariantError, automorphism_count, canonicalize,
                     enumerate_class, is_prime, passes_restriction, prime_factorize,
                     transpose)


class UnsolvedOrderError(LookupError):
    """A weight was requested beyond the solved range."""


def _symmetric_key(g: Graph) -> Graph:
    t = transpose(g)
    return g if g.key() <= t.key() else t


@dataclass(frozen=True)
class WeightSystem:
    """Partial map from arity-2 graphs to rationals, solved per degree."""

    restriction: str = "full"
    multiplicative: bool = True
    symmetric: bool = True
    prime_values: dict[Graph, Fraction] = field(default_factory=dict)
    solved_order: int = 0

    def _prime_weight(self, p: Graph) -> Fraction:
        key = _symmetric_key(p) if self.symmetric else p
        if key not in self.prime_values:
            if p.n > self.solved_order:
                raise UnsolvedOrderError(f"degree {p.n} beyond solved order {self.solved_order}")
            raise UnsolvedOrderError(f"no weight stored for {p}")
        return self.prime_values[key]

    def weight(self, g: Graph) -> Fraction:
        """Weight of a basis graph; zero outside the restriction class."""
        g = canonicalize(g)
        if g.m != 2:
            raise InvariantError("arity", "weights live on arity-2 graphs")
        if not passes_restriction(g, self.restriction):
            return Fraction(0)
        value = Fraction(1)
        for p in prime_factorize(g):
            value *= self._prime_weight(p)
        return value

    def with_order(self, order: int, values: dict[Graph, Fraction]) -> "WeightSystem":
        merged = dict(self.prime_values)
        merged.update(values)
        return WeightSystem(self.restriction, self.multiplicative, self.symmetric,
                            merged, max(self.solved_order, order))

    def to_json_obj(self, report: list[dict] | None = None) -> dict:
        from .graphs import graph_to_json
        values = [{"graph": graph_to_json(g), "weight": str(w)}
                  for g, w in sorted(self.prime_values.items(), key=lambda t: t[0].key())]
        return {"restriction": self.restriction, "orders": self.solved_order,
                "values": values, "report": report or []}


def weight_system_from_json(obj: dict) -> tuple[WeightSystem, list[dict]]:
    from .graphs import graph_from_json
    values = {canonicalize(graph_from_json(v["graph"])): Fraction(v["weight"])
              for v in obj["values"]}
    ws = WeightSystem(restriction=obj["restriction"], prime_values=values,
                      solved_order=int(obj["orders"]))
    return ws, list(obj.get("report", []))


def evaluate(w: WeightSystem, v: GraphVector | TensorVector | Graph) -> Fraction:
    """Linear extension of the weight; on tensors the product of the factor
    evaluations."""
    if isinstance(v, Graph):
        return w.weight(v)
    if isinstance(v, GraphVector):
        return sum((c * w.weight(g) for g, c in v), Fraction(0))
    return sum((c * w.weight(a) * w.weight(b) for (a, b), c in v), Fraction(0))


@dataclass(frozen=True)
class ConstraintEquation:
    """One linear equation sum(coeffs[u] * W(u)) + constant = 0 over the
    unknown prime weights of the current degree."""

    source: Graph                       # the arity-3 graph that produced it
    coeffs: dict[Graph, Fraction]       # unknown (symmetric key) -> coefficient
    constant: Fraction
    redundant_by_symmetry: bool         # source is its own transpose

    def is_trivial(self) -> bool:
        return not self.coeffs and not self.constant


@dataclass
class ConstraintSystem:
    order: int
    restriction: str
    unknowns: list[Graph]
    equations: list[ConstraintEquation]


def assemble_constraints(w: WeightSystem, order: int,
                         restriction: str | None = None) -> ConstraintSystem:
    """One equation per arity-3 graph of the given internal degree in the
    restriction class: the reduced coproduct evaluated by W must vanish.
    Factors of degree `order` contribute unknowns; everything of lower
    degree is already solved."""
    restriction = restriction or w.restriction
    unknown_keys: dict[Graph, None] = {}
    for p in enumerate_class(order, 2, restriction):
        if is_prime(p):
            key = _symmetric_key(p) if w.symmetric else p
            unknown_keys.setdefault(key)
    equations = []
    for big in enumerate_class(order, 3, restriction):
        coeffs: dict[Graph, Fraction] = {}
        constant = Fraction(0)
        for (a, b), c in coproduct_reduced(big):
            term = c
            unknown: Graph | None = None
            for factor in (a, b):
                if not passes_restriction(factor, restriction):
                    term = Fraction(0)
                    break
                if factor.n == order and order > 0 and is_prime(factor):
                    # prime factor of full degree: the unknown of this order
                    key = _symmetric_key(factor) if w.symmetric else factor
                    if key not in unknown_keys:
                        term = Fraction(0)
                        break
                    unknown = key
                else:
                    # lower degree, or a product of lower-degree primes
                    term *= w.weight(factor)
            if not term:
                continue
            if unknown is not None:
                coeffs[unknown] = coeffs.get(unknown, Fraction(0)) + term
                if not coeffs[unknown]:
                    del coeffs[unknown]
            else:
                constant += term
        equations.append(ConstraintEquation(
            source=big, coeffs=coeffs, constant=constant,
            redundant_by_symmetry=transpose(big) == big))
    return ConstraintSystem(order=order, restriction=restriction,
                            unknowns=sorted(unknown_keys), equations=equations)


@dataclass
class OrderReport:
    order: int
    status: str          # 'unique' | 'dim=<d>' | 'infeasible'
    restriction: str

    def to_json_obj(self) -> dict:
        return {"order": self.order, "status": self.status}


def _solve_order(system: ConstraintSystem, normalization: dict[Graph, Fraction]):
    pinned = {u: normalization[u] for u in system.unknowns if u in normalization}
    free_unknowns = [u for u in system.unknowns if u not in pinned]
    rows, rhs = [], []
    for eq in system.equations:
        row = [eq.coeffs.get(u, Fraction(0)) for u in free_unknowns]
        const = eq.constant + sum((eq.coeffs[u] * pinned[u]
                                   for u in pinned if u in eq.coeffs), Fraction(0))
        if any(row) or const:
            rows.append(row)
            rhs.append(-const)
    if not rows:
        rows, rhs = [[Fraction(0)] * len(free_unknowns)], [Fraction(0)]
    return pinned, free_unknowns, solve_exact(rows, rhs)


def solve_weights(max_order: int, restriction: str = "forest",
                  normalization: dict[Graph, Fraction] | None = None,
                  symmetric: bool = True) -> tuple[WeightSystem, list[OrderReport]]:
    """Solve the cocycle constraints order by order.  The normalization
    (unit weight on the edgeless graph and the single wedge by default)
    pins unknowns before each solve.  If the requested class turns
    infeasible at some order, the remaining orders are completed on the
    forest class and the report says so."""
    if normalization is None:
        normalization = {catalog.B1: Fraction(1)}
    normalization = {_symmetric_key(canonicalize(g)) if symmetric else canonicalize(g):
                     Fraction(v) for g, v in normalization.items()}
    w = WeightSystem(restriction=restriction, symmetric=symmetric)
    reports: list[OrderReport] = []
    active = restriction
    for order in range(1, max_order + 1):
        system = assemble_constraints(w, order, active)
        pinned, free_unknowns, sol = _solve_order(system, normalization)
        if sol.status == "infeasible":
            reports.append(OrderReport(order, "infeasible", active))
            if active == "forest":
                raise InvariantError("solver", f"forest class infeasible at order {order}")
            active = "forest"
            system = assemble_constraints(w, order, active)
            pinned, free_unknowns, sol = _solve_order(system, normalization)
            if sol.status == "infeasible":
                raise InvariantError("solver", f"forest class infeasible at order {order}")
        status = "unique" if sol.status == "unique" else f"dim={sol.dimension}"
        reports.append(OrderReport(order, status, active))
        values = dict(pinned)
        values.update({u: sol.particular[i] for i, u in enumerate(free_unknowns)})
        w = w.with_order(order, values)
    return w, reports


def moyal_element(w: WeightSystem, max_order: int) -> GraphVector:
    """Sum over the restriction class of (W / automorphism count) per graph,
    graded by internal degree."""
    if max_order > w.solved_order:
        raise UnsolvedOrderError(f"order {max_order} beyond solved {w.solved_order}")
    terms = []
    for n in range(max_order + 1):
        for g in enumerate_class(n, 2, w.restriction):
            c = w.weight(g) / automorphism_count(g)
            if c:
                terms.append((g, c))
    return GraphVector(terms)


def hausdorff_element(z: GraphVector, max_order: int) -> GraphVector:
    """Logarithm of the star element under the boundary product."""
    return log_product(z, max_order)


def symmetry_factor(g: Graph) -> Fraction:
    """|Aut(g)| / n!, the label-forgetting scale factor."""
    import math
    return Fraction(automorphism_count(g), math.factorial(g.n))


@dataclass(frozen=True)
class AntipodeValue:
    """Antipode output: a plain graph part plus formal quotient-subgraph
    products (only arity-3 inputs produce the tensor part)."""

    graphs: GraphVector
    tensors: TensorVector

    def __eq__(self, other):
        if not isinstance(other, AntipodeValue):
            return NotImplemented
        return self.graphs == other.graphs and self.tensors == other.tensors

    def __str__(self) -> str:
        if not self.graphs and not self.tensors:
            return "0"
        parts = []
        if self.graphs:
            parts.append(str(self.graphs))
        if self.tensors:
            parts.append(str(self.tensors))
        return "  ".join(parts)


def antipode(g: Graph) -> AntipodeValue:
    """Counterterm recursion S(g) = -g - sum S(quotient) subgraph over the
    reduced coproduct.  Arity-2 graphs are primitive here, so S = -id on
    them and the recursion stops at depth one."""
    g = canonicalize(g)
    if g.m == 2:
        return AntipodeValue(GraphVector.of(g, -1), TensorVector())
    if g.m != 3:
        raise InvariantError("arity", "antipode implemented for arities 2 and 3")
    tensors = TensorVector()
    for (q, sub), c in coproduct_reduced(g):
        # S(q) = -q since arity-2 graphs are primitive
        tensors = tensors - TensorVector({(q, sub): -c})
    return AntipodeValue(GraphVector.of(g, -1), tensors)


def antipode_geometric(g: Graph) -> AntipodeValue:
    """Antipode as the convolution-geometric series sum_k x^{*k} with
    x = unit-counit projector minus identity.  Iterates the convolution
    until the power vanishes; must agree with the recursive form."""
    g = canonicalize(g)
    if g.m not in (2, 3):
        raise InvariantError("arity", "antipode implemented for arities 2 and 3")

    # A convolution power is represented by its unit scalar, its values on
    # arity-2 basis graphs (GraphVector), and on arity-3 ones (AntipodeValue).
    def x_on(h: Graph) -> GraphVector:
        return GraphVector.of(h, -1)

    def convolve_with_x(power):
        unit_scalar, low, high = power

        def low_next(h: Graph) -> GraphVector:
            # coproduct of a primitive h: 1 (x) h + h (x) 1
            return x_on(h).scale(unit_scalar)

        def high_next(h: Graph) -> AntipodeValue:
            graphs = x_on(h).scale(unit_scalar) if unit_scalar else GraphVector()
            tensors = TensorVector()
            for (q, sub), c in coproduct_reduced(h):
                for lg, lc in low(q):
                    tensors = tensors + TensorVector({(lg, sub): -c * lc})
            return AntipodeValue(graphs, tensors)

        return (Fraction(0), low_next, high_next)

    total_graphs = GraphVector()
    total_tensors = TensorVector()
    # k = 0 term: the unit-counit projector vanishes on non-unit graphs.
    power = (Fraction(1), lambda h: GraphVector(),
             lambda h: AntipodeValue(GraphVector(), TensorVector()))
    for _ in range(g.n + 3):
        power = convolve_with_x(power)
        if g.m == 2:
            value = AntipodeValue(power[1](g), TensorVector())
        else:
            value = power[2](g)
        if not value.graphs and not value.tensors and not power[0]:
            break
        total_graphs = total_graphs + value.graphs
        total_tensors = total_tensors + value.tensors
    return AntipodeValue(total_graphs, total_tensors)


def unitarity_check(w: WeightSystem, order: int) -> bool:
    """W(S(g)) = -W(g) for every arity-3 graph of each degree <= order in
    W's restriction class.  The plain graph part of S(g) is -g, so the
    check reduces to the tensor part evaluating to zero; the arity-3
    weight itself cancels formally."""
    for n in range(order + 1):
        for big in enumerate_class(n, 3, w.restriction):
            s = antipode(big)
            if s.graphs != GraphVector.of(big, -1):
                return False
            if evaluate(w, s.tensors) != 0:
                return False
    return True
