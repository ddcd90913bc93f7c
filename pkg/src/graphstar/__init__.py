"""graphstar: exact combinatorial calculus of admissible graphs for
star-products -- graph Hopf operations, weight solving, and polynomial
star-product evaluation."""

__version__ = "0.1.0"

from .algebra import (GraphVector, TensorVector, associator, boundary_product,
                      bracket, compose, coproduct_prime, coproduct_reduced,
                      delta, exp_product, insert_at, log_product, merger,
                      normal_subgraphs, pairing)
from .characters import (WeightSystem, antipode, antipode_geometric, evaluate,
                         hausdorff_element, moyal_element, solve_weights,
                         symmetry_factor, unitarity_check)
from .evaluator import (Bivector, associativity_defect, jacobi_defect,
                        moyal_oracle, star_product, state_sum)
from .graphs import (Graph, GraphError, canonicalize, enumerate_class, heights,
                     parse_graph, serialize_graph, transpose)
from .poly import Polynomial, PolySeries, parse_polynomial

__all__ = [
    "__version__",
    "Graph", "GraphError", "GraphVector", "TensorVector", "WeightSystem",
    "Bivector", "Polynomial", "PolySeries",
    "canonicalize", "enumerate_class", "heights", "parse_graph",
    "serialize_graph", "transpose", "parse_polynomial",
    "boundary_product", "insert_at", "compose", "bracket", "associator",
    "normal_subgraphs", "coproduct_reduced", "coproduct_prime", "pairing",
    "merger", "delta", "exp_product", "log_product",
    "evaluate", "solve_weights", "moyal_element", "hausdorff_element",
    "symmetry_factor", "antipode", "antipode_geometric", "unitarity_check",
    "state_sum", "star_product", "moyal_oracle", "jacobi_defect",
    "associativity_defect",
]
