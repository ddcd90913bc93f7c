"""Pre-Lie / Hopf operations on admissible graphs.

Two counting conventions for the insertion composition coexist:

* class counting (default): each distinct isomorphism class produced at an
  insertion point contributes once.  This convention is dual to the reduced
  coproduct (normal subgraphs are counted as vertex subsets) and matches
  the golden identity tables.
* assignment counting (``count_assignments=True``): one summand per
  landing function, the honest Leibniz rule.  This is the convention
  intertwined by the state-sum evaluation; only it makes insertion an
  algebra morphism, and it is the one under which the symmetry-factored
  element b_0 + b_1 + b_1^2/2! + b_2^L + b_2^R squares to zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .catalog import unit
from .graphs import ArityError, Graph, InvariantError, canonicalize, graph_to_json, is_prime

Scalar = Union[int, Fraction]


class GraphVector:
    """Finite rational linear combination of canonical graphs sharing one
    boundary arity (or empty).  Immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Graph, Scalar] | Iterable[tuple[Graph, Scalar]] = ()):
        data: dict[Graph, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for g, c in items:
            c = Fraction(c)
            if not c:
                continue
            g = canonicalize(g)
            c += data.get(g, 0)
            if c:
                data[g] = c
            else:
                data.pop(g, None)
        arities = {g.m for g in data}
        if len(arities) > 1:
            raise ArityError(f"mixed boundary arities in one vector: {sorted(arities)}")
        self._terms = data

    @classmethod
    def of(cls, g: Graph, coeff: Scalar = 1) -> "GraphVector":
        return cls([(g, coeff)])

    def items(self) -> list[tuple[Graph, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: t[0].key())

    def __iter__(self) -> Iterator[tuple[Graph, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, g: Graph) -> Fraction:
        return self._terms.get(canonicalize(g), Fraction(0))

    def arity(self) -> int | None:
        for g in self._terms:
            return g.m
        return None

    def graded_part(self, degree: int) -> "GraphVector":
        return GraphVector((g, c) for g, c in self._terms.items() if g.n == degree)

    def max_degree(self) -> int:
        return max((g.n for g in self._terms), default=0)

    def __add__(self, other: "GraphVector") -> "GraphVector":
        merged = dict(self._terms)
        for g, c in other._terms.items():
            s = merged.get(g, 0) + c
            if s:
                merged[g] = s
            else:
                merged.pop(g, None)
        return GraphVector(merged)

    def __sub__(self, other: "GraphVector") -> "GraphVector":
        return self + (-other)

    def __neg__(self) -> "GraphVector":
        return GraphVector({g: -c for g, c in self._terms.items()})

    def scale(self, factor: Scalar) -> "GraphVector":
        factor = Fraction(factor)
        if not factor:
            return GraphVector()
        return GraphVector({g: c * factor for g, c in self._terms.items()})

    __rmul__ = __mul__ = scale

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Graph):
            other = GraphVector.of(other)
        if not isinstance(other, GraphVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return "  ".join(f"{'+' if c > 0 else '-'}{abs(c)} {g}" for g, c in self.items())

    def __repr__(self) -> str:
        return f"GraphVector({str(self)})"

    def to_json_obj(self) -> list[dict]:
        return [{"graph": graph_to_json(g), "coeff": str(c)} for g, c in self.items()]


class TensorVector:
    """Finite rational combination of ordered graph pairs (quotient, subgraph)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[Graph, Graph], Scalar]
                 | Iterable[tuple[tuple[Graph, Graph], Scalar]] = ()):
        data: dict[tuple[Graph, Graph], Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (a, b), c in items:
            c = Fraction(c)
            if not c:
                continue
            key = (canonicalize(a), canonicalize(b))
            c += data.get(key, 0)
            if c:
                data[key] = c
            else:
                data.pop(key, None)
        self._terms = data

    def items(self) -> list[tuple[tuple[Graph, Graph], Fraction]]:
        return sorted(self._terms.items(), key=lambda t: (t[0][0].key(), t[0][1].key()))

    def __iter__(self):
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, a: Graph, b: Graph) -> Fraction:
        return self._terms.get((canonicalize(a), canonicalize(b)), Fraction(0))

    def __add__(self, other: "TensorVector") -> "TensorVector":
        merged = dict(self._terms)
        for k, c in other._terms.items():
            s = merged.get(k, 0) + c
            if s:
                merged[k] = s
            else:
                merged.pop(k, None)
        return TensorVector(merged)

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        return self + (-other)

    def __neg__(self) -> "TensorVector":
        return TensorVector({k: -c for k, c in self._terms.items()})

    def scale(self, factor: Scalar) -> "TensorVector":
        factor = Fraction(factor)
        if not factor:
            return TensorVector()
        return TensorVector({k: c * factor for k, c in self._terms.items()})

    __rmul__ = __mul__ = scale

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return "  ".join(f"{'+' if c > 0 else '-'}{abs(c)} [{a}] (x) [{b}]"
                         for (a, b), c in self.items())

    def __repr__(self) -> str:
        return f"TensorVector({str(self)})"

    def to_json_obj(self) -> list[dict]:
        return [{"left": graph_to_json(a), "right": graph_to_json(b), "coeff": str(c)}
                for (a, b), c in self.items()]


def tensor(a: GraphVector | Graph, b: GraphVector | Graph) -> TensorVector:
    va = a if isinstance(a, GraphVector) else GraphVector.of(a)
    vb = b if isinstance(b, GraphVector) else GraphVector.of(b)
    return TensorVector({(ga, gb): ca * cb for ga, ca in va for gb, cb in vb})


def _as_vector(x: GraphVector | Graph) -> GraphVector:
    return x if isinstance(x, GraphVector) else GraphVector.of(x)


# ---------------------------------------------------------------------------
# boundary product

def _product_basis(g1: Graph, g2: Graph) -> Graph | None:
    if g1.m != g2.m:
        return None
    shift = g1.n
    legs = list(g1.legs)
    for pair in g2.legs:
        legs.append(tuple(sorted(t if t < g2.m else t + shift for t in pair)))
    return canonicalize(Graph(g1.m, g1.n + g2.n, tuple(legs)))


def boundary_product(a: GraphVector | Graph, b: GraphVector | Graph) -> GraphVector:
    """Bilinear disjoint union over a shared boundary; zero across arities."""
    out: dict[Graph, Fraction] = {}
    for g1, c1 in _as_vector(a):
        for g2, c2 in _as_vector(b):
            g = _product_basis(g1, g2)
            if g is None:
                continue
            s = out.get(g, 0) + c1 * c2
            if s:
                out[g] = s
            else:
                out.pop(g, None)
    return GraphVector(out)


def product_of(factors: Iterable[Graph], m: int = 2) -> Graph:
    """Boundary product of basis graphs (the unit for an empty sequence)."""
    acc = unit(m)
    for f in factors:
        nxt = _product_basis(acc, f)
        if nxt is None:
            raise ArityError("factors of a boundary product must share one arity")
        acc = nxt
    return acc


# ---------------------------------------------------------------------------
# insertion composition

def insert_at(g1: Graph, i: int, g2: Graph, count_assignments: bool = False) -> GraphVector:
    """Insert g2 at the i-th boundary vertex of g1 (1-based), redistributing
    the edges that entered that vertex over all vertices of g2 (its boundary
    included).  Result arity m1 + m2 - 1.  With class counting each distinct
    outcome appears once; with assignment counting once per landing map."""
    if not 1 <= i <= g1.m:
        raise ArityError(f"insertion index {i} outside 1..{g1.m}")
    m1, m2 = g1.m, g2.m
    new_m = m1 + m2 - 1
    here = i - 1

    def map_g1_boundary(t: int) -> int:
        return t if t < here else t + m2 - 1  # the slot itself is never mapped

    def map_g2_target(t: int) -> int:
        return here + t if t < m2 else m1 + m2 - 1 + (t - m2) + g1.n

    # g1's internal vertices keep indices 0..n1-1, g2's follow.
    incoming = [(k, slot) for k in range(g1.n)
                for slot in (0, 1) if g1.legs[k][slot] == here]
    landings = list(range(new_m + g1.n, new_m + g1.n + g2.n)) + \
        [here + t for t in range(m2)]

    base_legs: list[list[int]] = []
    for k in range(g1.n):
        pair = []
        for t in g1.legs[k]:
            if t == here:
                pair.append(-1)  # placeholder for a redirected edge
            elif t < m1:
                pair.append(map_g1_boundary(t))
            else:
                pair.append(new_m + (t - m1))
        base_legs.append(pair)
    g2_legs = [tuple(sorted(map_g2_target(t) for t in pair)) for pair in g2.legs]

    out: dict[Graph, Fraction] = {}
    for choice in itertools.product(landings, repeat=len(incoming)):
        legs = [list(p) for p in base_legs]
        for (k, slot), target in zip(incoming, choice):
            legs[k][slot] = target
        all_legs = tuple(tuple(sorted(p)) for p in legs) + tuple(g2_legs)
        g = canonicalize(Graph(new_m, g1.n + g2.n, all_legs))
        if count_assignments:
            out[g] = out.get(g, Fraction(0)) + 1
        else:
            out[g] = Fraction(1)
    return GraphVector(out)


def compose(a: GraphVector | Graph, b: GraphVector | Graph,
            count_assignments: bool = False) -> GraphVector:
    """Pre-Lie composition: signed sum of insertions over the boundary of
    the first factor, extended bilinearly."""
    out = GraphVector()
    for g1, c1 in _as_vector(a):
        for g2, c2 in _as_vector(b):
            sign_base = g2.m - 1
            for i in range(1, g1.m + 1):
                sign = -1 if ((i - 1) * sign_base) % 2 else 1
                out = out + insert_at(g1, i, g2, count_assignments).scale(c1 * c2 * sign)
    return out


def bracket(a: GraphVector | Graph, b: GraphVector | Graph,
            count_assignments: bool = False) -> GraphVector:
    """Graded bracket [a,b] = a o b - (-1)^((m-1)(m'-1)) b o a."""
    va, vb = _as_vector(a), _as_vector(b)
    ma, mb = va.arity(), vb.arity()
    if ma is None or mb is None:
        return GraphVector()
    sign = -1 if ((ma - 1) * (mb - 1)) % 2 else 1
    return compose(va, vb, count_assignments) - compose(vb, va, count_assignments).scale(sign)


def associator(a: GraphVector | Graph, b: GraphVector | Graph, c: GraphVector | Graph,
               count_assignments: bool = False) -> GraphVector:
    return compose(compose(a, b, count_assignments), c, count_assignments) \
        - compose(a, compose(b, c, count_assignments), count_assignments)


def delta(v: GraphVector | Graph) -> GraphVector:
    """The differential [b_0, -] on arity-2 vectors."""
    v = _as_vector(v)
    if v.arity() not in (None, 2):
        raise ArityError("delta acts on arity-2 vectors")
    return bracket(unit(2), v)


# ---------------------------------------------------------------------------
# normal subgraphs, coproducts, merger

@dataclass(frozen=True)
class NormalSubgraphWitness:
    """One normal subgraph of a graph: a consecutive boundary run plus an
    internal vertex subset closed under out-edges, with admissible quotient."""

    run: tuple[int, ...]          # 1-based consecutive boundary indices
    internal: frozenset[int]      # 1-based internal vertex indices
    subgraph: Graph               # rebased to its own boundary (the run)
    quotient: Graph               # run and subset collapsed to one point
    sign: int                     # (-1)^(number of boundary points left of run)


def _quotient(g: Graph, run_start: int, run_len: int, subset: frozenset[int]) -> Graph | None:
    """Collapse the boundary run and internal subset to one boundary point;
    None when the quotient would carry parallel legs (inadmissible)."""
    lo = run_start - 1
    hi = lo + run_len  # run is boundary targets lo..hi-1
    keep = sorted(k for k in range(g.n) if (k + 1) not in subset)
    index = {k: j for j, k in enumerate(keep)}
    new_m = g.m - run_len + 1

    def remap(t: int) -> int | None:
        if t < g.m:
            if t < lo:
                return t
            if t < hi:
                return lo
            return t - run_len + 1
        k = t - g.m
        if (k + 1) in subset:
            return lo
        return new_m + index[k]

    legs = []
    for k in keep:
        a, b = (remap(t) for t in g.legs[k])
        if a == b:
            return None
        legs.append(tuple(sorted((a, b))))
    return canonicalize(Graph(new_m, len(keep), tuple(legs)))


def _rebase_subgraph(g: Graph, run_start: int, run_len: int, subset: frozenset[int]) -> Graph:
    lo = run_start - 1
    members = sorted(k - 1 for k in subset)
    index = {k: j for j, k in enumerate(members)}
    legs = []
    for k in members:
        pair = []
        for t in g.legs[k]:
            if t < g.m:
                pair.append(t - lo)
            else:
                pair.append(run_len + index[t - g.m])
        legs.append(tuple(sorted(pair)))
    return canonicalize(Graph(run_len, len(members), tuple(legs)))


def normal_subgraphs(g: Graph, run_length: int) -> list[NormalSubgraphWitness]:
    """All witnesses for the given boundary run length: internal subsets
    closed under out-edges into the run, excluding the trivial cases and
    any witness whose quotient would carry parallel legs."""
    if not 1 <= run_length <= g.m:
        raise ArityError(f"run length {run_length} outside 1..{g.m}")
    witnesses = []
    for start in range(1, g.m - run_length + 2):
        lo, hi = start - 1, start - 1 + run_length
        for size in range(g.n + 1):
            for combo in itertools.combinations(range(1, g.n + 1), size):
                subset = frozenset(combo)
                if run_length == g.m and len(subset) in (0, g.n):
                    continue  # gamma = full-boundary unit or gamma = whole graph
                ok = True
                for k in combo:
                    for t in g.legs[k - 1]:
                        if t < g.m:
                            if not lo <= t < hi:
                                ok = False
                                break
                        elif (t - g.m + 1) not in subset:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    continue
                q = _quotient(g, start, run_length, subset)
                if q is None:
                    continue
                sub = _rebase_subgraph(g, start, run_length, subset)
                witnesses.append(NormalSubgraphWitness(
                    run=tuple(range(start, start + run_length)),
                    internal=subset,
                    subgraph=sub,
                    quotient=q,
                    sign=-1 if (start - 1) % 2 else 1,
                ))
    return witnesses


def coproduct_reduced(g: Graph) -> TensorVector:
    """Reduced coproduct of an arity-3 graph: signed sum of
    quotient (x) subgraph over boundary runs of length two."""
    if g.m != 3:
        raise ArityError(f"reduced coproduct requires m=3, got m={g.m}")
    return TensorVector([((w.quotient, w.subgraph), w.sign)
                         for w in normal_subgraphs(g, 2)])


def coproduct_prime(g: Graph) -> TensorVector:
    """Restriction of the reduced coproduct to witnesses whose subgraph is
    prime (the degree-zero unit subgraph is kept when it occurs)."""
    if g.m != 3:
        raise ArityError(f"prime coproduct requires m=3, got m={g.m}")
    if not is_prime(g):
        raise InvariantError("prime", "prime coproduct takes a prime graph")
    return TensorVector([((w.quotient, w.subgraph), w.sign)
                         for w in normal_subgraphs(g, 2)
                         if w.subgraph.n == 0 or is_prime(w.subgraph)])


def pairing(tv: TensorVector, g1: Graph, g2: Graph) -> Fraction:
    return tv.coeff(g1, g2)


def duality_check(g1: Graph, g2: Graph, big: Graph) -> bool:
    """Coefficient of `big` in g1 o g2 equals the (g1, g2) coefficient of
    the reduced coproduct of `big`."""
    return compose(g1, g2).coeff(big) == pairing(coproduct_reduced(big), g1, g2)


def merger(g: Graph) -> GraphVector:
    """Difference of the two adjacent-boundary-pair collapses of an m=3
    graph; collapses producing parallel legs contribute zero."""
    if g.m != 3:
        raise ArityError(f"merger requires m=3, got m={g.m}")
    out = GraphVector()
    left = _quotient(g, 1, 2, frozenset())
    right = _quotient(g, 2, 2, frozenset())
    if left is not None:
        out = out + GraphVector.of(left)
    if right is not None:
        out = out - GraphVector.of(right)
    return out


def boundary_reduce(g: Graph, i: int) -> TensorVector:
    """(g / boundary pair (i, i+1)) tensor the unit; zero if the collapse
    would create parallel legs."""
    if not 1 <= i <= g.m - 1:
        raise ArityError(f"boundary pair index {i} outside 1..{g.m - 1}")
    q = _quotient(g, i, 2, frozenset())
    if q is None:
        return TensorVector()
    return TensorVector({(q, unit(2)): 1})


# ---------------------------------------------------------------------------
# global symmetry, exp/log

def apply_T(v: GraphVector | Graph) -> GraphVector:
    """Global symmetry: each basis graph maps to minus its transpose."""
    from .graphs import transpose
    return GraphVector([(transpose(g), -c) for g, c in _as_vector(v)])


def apply_T_tensor(tv: TensorVector) -> TensorVector:
    from .graphs import transpose
    return TensorVector([(((transpose(a)), transpose(b)), c) for (a, b), c in tv])


def exp_product(v: GraphVector, max_order: int, m: int | None = None) -> GraphVector:
    """Exponential under the boundary product, truncated at internal degree
    max_order.  The argument must have no degree-0 component."""
    if v.graded_part(0):
        raise InvariantError("grading", "exp argument must have no degree-0 part")
    arity = v.arity() or m
    if arity is None:
        raise ArityError("cannot infer arity of an empty vector; pass m")
    truncated = GraphVector((g, c) for g, c in v if g.n <= max_order)
    result = GraphVector.of(unit(arity))
    power = GraphVector.of(unit(arity))
    fact = 1
    for k in range(1, max_order + 1):
        power = GraphVector((g, c) for g, c in boundary_product(power, truncated)
                            if g.n <= max_order)
        if not power:
            break
        fact *= k
        result = result + power.scale(Fraction(1, fact))
    return result


def log_product(v: GraphVector, max_order: int) -> GraphVector:
    """Logarithm under the boundary product; v must have coefficient 1 on
    the unit of its arity."""
    arity = v.arity()
    if arity is None or v.coeff(unit(arity)) != 1:
        raise InvariantError("unit-coefficient", "log argument needs coefficient 1 on the unit")
    x = GraphVector((g, c) for g, c in v if g.n != 0 and g.n <= max_order)
    result = GraphVector()
    power = GraphVector.of(unit(arity))
    for k in range(1, max_order + 1):
        power = GraphVector((g, c) for g, c in boundary_product(power, x)
                            if g.n <= max_order)
        if not power:
            break
        result = result + power.scale(Fraction((-1) ** (k + 1), k))
    return result
