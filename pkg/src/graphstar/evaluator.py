"""Evaluation of graphs as multidifferential operators on polynomials.

Each internal vertex carries a copy of a fixed antisymmetric 2-tensor; a
state sum over edge index assignments turns a graph into an operator on m
polynomial arguments.  With an antisymmetric tensor the order in which a
vertex's two legs index the tensor only affects the overall sign of the
graph's operator, so a fixed convention is needed: legs are read in target
precedence B1, then internal vertices by index, then B2..Bm.  Under this
precedence the three degree-2 loop operators satisfy exactly
U(t_2^R) - U(t_2^L) = U(c_2) for every Jacobi tensor.

The per-graph operator table is cached, so repeated applications (star
products over many argument pairs) cost only table evaluations.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .characters import WeightSystem
from .graphs import (ArityError, Graph, automorphism_count, canonical_permutation,
                     canonicalize, enumerate_class, relabel)
from .poly import Polynomial, PolynomialError, PolySeries, parse_polynomial

MultiIndex = tuple[int, ...]

# Span form of the Jacobi identity: U(t_2^R) - U(t_2^L) - sign * U(c_2) = 0
# for Jacobi tensors.  The value is pinned by direct computation against
# so(3) and the 2-dim nonabelian algebra under the leg precedence above and
# recorded in the golden data file.
JACOBI_SPAN_SIGN = 1


def _precedence(t: int, m: int) -> tuple[int, int]:
    # B1 before internal vertices before B2..Bm; ascending index inside.
    if t == 0:
        return (0, 0)
    if t >= m:
        return (1, t)
    return (2, t)


def ordered_legs(g: Graph, k: int) -> tuple[int, int]:
    """The two targets of internal vertex k (0-based) in evaluation order."""
    a, b = g.legs[k]
    return (a, b) if _precedence(a, g.m) <= _precedence(b, g.m) else (b, a)


class Bivector:
    """Antisymmetric 2-tensor with polynomial entries on R^d."""

    __slots__ = ("dim", "_upper", "_hash")

    def __init__(self, dim: int, entries: dict[tuple[int, int], Polynomial]):
        self.dim = dim
        upper: dict[tuple[int, int], Polynomial] = {}
        for (i, j), p in entries.items():
            if not 1 <= i < j <= dim:
                raise ArityError(f"bivector entries need 1 <= i < j <= d, got ({i},{j})")
            if p.dim != dim:
                raise PolynomialError(f"entry ({i},{j}) has dimension {p.dim}, expected {dim}")
            if p:
                upper[(i, j)] = p
        self._upper = upper
        self._hash = hash((dim, frozenset(upper.items())))

    def entry(self, i: int, j: int) -> Polynomial:
        """Signed entry alpha^{ij}; antisymmetry is structural."""
        if i == j:
            return Polynomial.zero(self.dim)
        if i < j:
            return self._upper.get((i, j), Polynomial.zero(self.dim))
        return -self._upper.get((j, i), Polynomial.zero(self.dim))

    def is_constant(self) -> bool:
        return all(p.is_constant() for p in self._upper.values())

    def is_linear(self) -> bool:
        return all(p.is_linear_homogeneous() for p in self._upper.values())

    def __eq__(self, other):
        if not isinstance(other, Bivector):
            return NotImplemented
        return self.dim == other.dim and self._upper == other._upper

    def __hash__(self):
        return self._hash

    def to_json_obj(self) -> dict:
        return {"dim": self.dim,
                "entries": {f"{i},{j}": str(p) for (i, j), p in sorted(self._upper.items())}}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Bivector":
        dim = int(obj["dim"])
        entries = {}
        for key, text in obj.get("entries", {}).items():
            i, j = (int(part) for part in key.split(","))
            entries[(i, j)] = parse_polynomial(text, dim)
        return cls(dim, entries)


def constant_symplectic(dim: int = 2, value: int | Fraction = 1) -> Bivector:
    """alpha^{12} = value, everything else zero."""
    return Bivector(dim, {(1, 2): Polynomial.constant(dim, value)})


def lie_so3() -> Bivector:
    """Structure tensor of so(3) on R^3: alpha^{ij} = eps_{ijk} x_k."""
    x = lambda i: Polynomial.variable(3, i)
    return Bivector(3, {(1, 2): x(3), (1, 3): -x(2), (2, 3): x(1)})


def lie_nonabelian_2d() -> Bivector:
    """The 2-dimensional nonabelian Lie algebra [e1, e2] = e2: alpha^{12} = x2."""
    return Bivector(2, {(1, 2): Polynomial.variable(2, 2)})


class MultiDiffOperator:
    """Multidifferential operator sum_t p_t * prod_j d^{a_{t,j}} f_j."""

    __slots__ = ("dim", "arity", "terms")

    def __init__(self, dim: int, arity: int,
                 terms: dict[tuple[MultiIndex, ...], Polynomial] | None = None):
        self.dim = dim
        self.arity = arity
        self.terms = terms or {}

    def add_term(self, key: tuple[MultiIndex, ...], coeff: Polynomial):
        if not coeff:
            return
        cur = self.terms.get(key)
        total = coeff if cur is None else cur + coeff
        if total:
            self.terms[key] = total
        else:
            self.terms.pop(key, None)

    def apply(self, fs: list[Polynomial]) -> Polynomial:
        if len(fs) != self.arity:
            raise ArityError(f"operator takes {self.arity} arguments, got {len(fs)}")
        out = Polynomial.zero(self.dim)
        for key, coeff in self.terms.items():
            prod = coeff
            dead = False
            for f, multi in zip(fs, key):
                g = f
                for axis, count in enumerate(multi):
                    for _ in range(count):
                        g = g.derivative(axis + 1)
                        if not g:
                            break
                    if not g:
                        break
                if not g:
                    dead = True
                    break
                prod = prod * g
            if not dead:
                out = out + prod
        return out

    def is_zero(self) -> bool:
        return not self.terms


@lru_cache(maxsize=4096)
def graph_operator(g: Graph, alpha: Bivector) -> MultiDiffOperator:
    """The state sum over edge index assignments, collected as an operator
    table keyed by the derivative multi-indices of the boundary arguments."""
    g = canonicalize(g)
    dim = alpha.dim
    op = MultiDiffOperator(dim, g.m)
    vertex_legs = [ordered_legs(g, k) for k in range(g.n)]
    edges = [(k, slot) for k in range(g.n) for slot in (0, 1)]
    for assignment in itertools.product(range(1, dim + 1), repeat=len(edges)):
        index = {(k, vertex_legs[k][slot]): assignment[2 * k + slot]
                 for k, slot in edges}
        coeff = Polynomial.constant(dim, 1)
        for k in range(g.n):
            legs = vertex_legs[k]
            entry = alpha.entry(index[(k, legs[0])], index[(k, legs[1])])
            if not entry:
                coeff = None
                break
            target = g.m + k
            for j in range(g.n):
                for t in vertex_legs[j]:
                    if t == target:
                        entry = entry.derivative(index[(j, t)])
                        if not entry:
                            break
                if not entry:
                    break
            if not entry:
                coeff = None
                break
            coeff = coeff * entry
        if coeff is None or not coeff:
            continue
        multis = []
        for b in range(g.m):
            counts = [0] * dim
            for j in range(g.n):
                for t in vertex_legs[j]:
                    if t == b:
                        counts[index[(j, t)] - 1] += 1
            multis.append(tuple(counts))
        op.add_term(tuple(multis), coeff)
    return op


def state_sum(g: Graph, alpha: Bivector, fs: list[Polynomial]) -> Polynomial:
    """Apply the graph's multidifferential operator to m polynomials."""
    if len(fs) != g.m:
        raise ArityError(f"graph takes {g.m} arguments, got {len(fs)}")
    return graph_operator(g, alpha).apply(fs)


def apply_graph_vector(v, alpha: Bivector, fs: list[Polynomial]) -> Polynomial:
    """Linear extension of the state sum to graph vectors."""
    out = Polynomial.zero(alpha.dim)
    for g, c in v:
        out = out + state_sum(g, alpha, fs).scale(c)
    return out


def _star_coefficients(w: WeightSystem, order: int) -> list[tuple[Graph, Fraction]]:
    coeffs = []
    for g in enumerate_class(order, 2, w.restriction):
        c = w.weight(g) / automorphism_count(g)
        if c:
            coeffs.append((g, c))
    return coeffs


def star_product_series(a: PolySeries, b: PolySeries, alpha: Bivector,
                        w: WeightSystem, order: int | None = None) -> PolySeries:
    """Star product of truncated series, bilinear over the series orders."""
    n = min(a.order, b.order) if order is None else order
    out: dict[int, Polynomial] = {}
    for k in range(n + 1):
        for ka, pa in a.items():
            for kb, pb in b.items():
                if ka + kb + k > n:
                    continue
                for g, c in _star_coefficients(w, k):
                    term = state_sum(g, alpha, [pa, pb]).scale(c)
                    if term:
                        key = ka + kb + k
                        out[key] = out.get(key, Polynomial.zero(alpha.dim)) + term
    return PolySeries(alpha.dim, n, out)


def star_product(f: Polynomial, g: Polynomial, alpha: Bivector,
                 w: WeightSystem, order: int) -> PolySeries:
    """f * g as a series in the deformation parameter through eps^order."""
    return star_product_series(PolySeries.of(f, order), PolySeries.of(g, order),
                               alpha, w, order)


def moyal_oracle(f: Polynomial, g: Polynomial, alpha: Bivector, order: int) -> PolySeries:
    """Independent expansion of the exponential bidifferential formula for a
    constant tensor; no graphs involved."""
    if not alpha.is_constant():
        raise PolynomialError("the exponential formula requires a constant tensor")
    dim = alpha.dim
    consts = {(i, j): alpha.entry(i, j).items()[0][1] if alpha.entry(i, j) else Fraction(0)
              for i in range(1, dim + 1) for j in range(1, dim + 1)}
    out = {0: f * g}
    fact = 1
    for k in range(1, order + 1):
        fact *= k
        total = Polynomial.zero(dim)
        for left in itertools.product(range(1, dim + 1), repeat=k):
            for right in itertools.product(range(1, dim + 1), repeat=k):
                c = Fraction(1)
                for i, j in zip(left, right):
                    c *= consts[(i, j)]
                    if not c:
                        break
                if not c:
                    continue
                df, dg = f, g
                for i in left:
                    df = df.derivative(i)
                    if not df:
                        break
                if not df:
                    continue
                for j in right:
                    dg = dg.derivative(j)
                    if not dg:
                        break
                if not dg:
                    continue
                total = total + (df * dg).scale(c)
        if total:
            out[k] = total.scale(Fraction(1, fact))
    return PolySeries(dim, order, out)


def poisson_bracket(f: Polynomial, g: Polynomial, alpha: Bivector) -> Polynomial:
    """{f,g} = sum over both index orders of alpha^{ij} d_i f d_j g."""
    out = Polynomial.zero(alpha.dim)
    for i in range(1, alpha.dim + 1):
        for j in range(1, alpha.dim + 1):
            entry = alpha.entry(i, j)
            if entry:
                out = out + entry * f.derivative(i) * g.derivative(j)
    return out


def jacobi_defect(alpha: Bivector, f: Polynomial, g: Polynomial, h: Polynomial,
                  mode: str = "alt") -> Polynomial:
    """Two zero-tests for a Jacobi tensor.  'alt' fully alternates the
    prime loop graph's trilinear operator over its arguments; 'span' checks
    U(t_2^R) - U(t_2^L) - sign * U(c_2) with the frozen sign constant."""
    from . import catalog
    if mode == "alt":
        out = Polynomial.zero(alpha.dim)
        for perm, sign in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                           ((1, 0, 2), -1), ((0, 2, 1), -1), ((2, 1, 0), -1)):
            args = [(f, g, h)[i] for i in perm]
            out = out + state_sum(catalog.C2, alpha, args).scale(sign)
        return out
    if mode == "span":
        return state_sum(catalog.T2_R, alpha, [f, g, h]) \
            - state_sum(catalog.T2_L, alpha, [f, g, h]) \
            - state_sum(catalog.C2, alpha, [f, g, h]).scale(JACOBI_SPAN_SIGN)
    raise ValueError(f"mode must be 'alt' or 'span', got {mode!r}")


def associativity_defect(f: Polynomial, g: Polynomial, h: Polynomial,
                         alpha: Bivector, w: WeightSystem, order: int) -> PolySeries:
    """(f*g)*h - f*(g*h) truncated at eps^order."""
    fs = PolySeries.of(f, order)
    gs = PolySeries.of(g, order)
    hs = PolySeries.of(h, order)
    left = star_product_series(star_product_series(fs, gs, alpha, w, order), hs,
                               alpha, w, order)
    right = star_product_series(fs, star_product_series(gs, hs, alpha, w, order),
                                alpha, w, order)
    return left - right


def gerstenhaber_insert(op1: MultiDiffOperator, i: int, op2: MultiDiffOperator,
                        fs: list[Polynomial]) -> Polynomial:
    """op1 with its i-th argument (1-based) replaced by op2 applied to the
    corresponding argument block; the operator-level insertion."""
    m2 = op2.arity
    inner = op2.apply(fs[i - 1:i - 1 + m2])
    outer_args = fs[:i - 1] + [inner] + fs[i - 1 + m2:]
    return op1.apply(outer_args)


def gerstenhaber_compose(op1: MultiDiffOperator, op2: MultiDiffOperator,
                         fs: list[Polynomial]) -> Polynomial:
    """Signed sum of operator insertions, applied to concrete arguments."""
    out = Polynomial.zero(op1.dim)
    sign_base = op2.arity - 1
    for i in range(1, op1.arity + 1):
        sign = -1 if ((i - 1) * sign_base) % 2 else 1
        out = out + gerstenhaber_insert(op1, i, op2, fs).scale(sign)
    return out


def insert_with_parity(g1: Graph, i: int, g2: Graph) -> list[tuple[Graph, int]]:
    """Assignment-counted insertion together with the orientation parity of
    each summand: the sign relating the leg order inherited from the two
    factors (redirected edges keep their slot) to the evaluation order of
    the canonical result.  One entry per landing map."""
    if not 1 <= i <= g1.m:
        raise ArityError(f"insertion index {i} outside 1..{g1.m}")
    m1, m2 = g1.m, g2.m
    new_m = m1 + m2 - 1
    here = i - 1

    def map_g1_boundary(t: int) -> int:
        return t if t < here else t + m2 - 1

    def map_g2_target(t: int) -> int:
        return here + t if t < m2 else new_m + g1.n + (t - m2)

    base: list[list[int]] = []
    redirect_slots = []
    for k in range(g1.n):
        pair = []
        for slot, t in enumerate(ordered_legs(g1, k)):
            if t == here:
                pair.append(-1)
                redirect_slots.append((k, slot))
            elif t < m1:
                pair.append(map_g1_boundary(t))
            else:
                pair.append(new_m + (t - m1))
        base.append(pair)
    g2_ordered = [[map_g2_target(t) for t in ordered_legs(g2, k)] for k in range(g2.n)]
    landings = list(range(new_m + g1.n, new_m + g1.n + g2.n)) + \
        [here + t for t in range(m2)]

    out = []
    for choice in itertools.product(landings, repeat=len(redirect_slots)):
        ordered = [list(p) for p in base]
        for (k, slot), target in zip(redirect_slots, choice):
            ordered[k][slot] = target
        ordered = ordered + [list(p) for p in g2_ordered]
        raw = Graph(new_m, g1.n + g2.n,
                    tuple(tuple(sorted(p)) for p in ordered))
        perm = canonical_permutation(raw)
        canonical = relabel(raw, perm)
        parity = 1
        for k in range(raw.n):
            a, b = (new_m + perm[t - new_m] if t >= new_m else t for t in ordered[k])
            if (a, b) != ordered_legs(canonical, perm[k]):
                parity = -parity
        out.append((canonical, parity))
    return out


def kontsevich_morphism_defect(g1: Graph, g2: Graph, alpha: Bivector,
                               fs: list[Polynomial]) -> Polynomial:
    """Difference between the operator-level composition of the two graph
    operators and the parity-weighted state sums of the graph-level
    insertion summands; zero when the evaluation intertwines the two
    pre-Lie structures."""
    op1 = graph_operator(g1, alpha)
    op2 = graph_operator(g2, alpha)
    out = Polynomial.zero(alpha.dim)
    sign_base = g2.m - 1
    for i in range(1, g1.m + 1):
        sign = -1 if ((i - 1) * sign_base) % 2 else 1
        lhs = gerstenhaber_insert(op1, i, op2, fs)
        rhs = Polynomial.zero(alpha.dim)
        for summand, parity in insert_with_parity(g1, i, g2):
            rhs = rhs + state_sum(summand, alpha, fs).scale(parity)
        out = out + (lhs - rhs).scale(sign)
    return out
