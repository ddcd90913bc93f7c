"""Admissible graphs: canonical forms, isomorphism, enumeration, structure.

An admissible graph has m >= 1 ordered boundary vertices (out-degree 0) and
n >= 0 internal vertices, each with exactly two outgoing edges ("legs") to
two distinct targets, no directed circuit among internal vertices.  Targets
are encoded as small ints: 0..m-1 are the boundary points B1..Bm, m..m+n-1
are the internal vertices V1..Vn.  Within a leg pair the targets are kept
sorted, which puts boundary targets first by index, then internal targets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache


class GraphError(ValueError):
    """Base class for graph construction and parsing failures."""


class GraphSyntaxError(GraphError):
    """Malformed graph text; carries the 0-based offset of the offense."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InvariantError(GraphError):
    """A structural invariant is violated; names the invariant."""

    def __init__(self, invariant: str, detail: str = ""):
        msg = invariant if not detail else f"{invariant}: {detail}"
        super().__init__(msg)
        self.invariant = invariant


class ArityError(GraphError):
    """Operation applied to a graph of unsupported boundary arity."""


Leg = tuple[int, int]


def _has_circuit(n: int, m: int, legs: tuple[Leg, ...]) -> bool:
    # Depth-first search over internal out-edges; 0=white 1=grey 2=black.
    state = [0] * n
    for start in range(n):
        if state[start]:
            continue
        stack = [(start, iter(legs[start]))]
        state[start] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for t in it:
                if t < m:
                    continue
                w = t - m
                if state[w] == 1:
                    return True
                if state[w] == 0:
                    state[w] = 1
                    stack.append((w, iter(legs[w])))
                    advanced = True
                    break
            if not advanced:
                state[v] = 2
                stack.pop()
    return False


@dataclass(frozen=True)
class Graph:
    """Validated admissible graph.  Immutable; equality is encoding equality."""

    m: int
    n: int
    legs: tuple[Leg, ...]

    def __post_init__(self):
        if self.m < 1:
            raise InvariantError("boundary-arity", f"m={self.m} must be >= 1")
        if self.n < 0 or len(self.legs) != self.n:
            raise InvariantError("leg-count", f"expected {self.n} leg pairs, got {len(self.legs)}")
        norm = []
        for k, pair in enumerate(self.legs):
            if len(pair) != 2:
                raise InvariantError("leg-count", f"vertex V{k+1} must have exactly 2 legs")
            a, b = sorted(pair)
            if not (0 <= a < self.m + self.n and 0 <= b < self.m + self.n):
                raise InvariantError("target-range", f"vertex V{k+1} target out of range")
            if a == b:
                raise InvariantError("parallel-legs", f"vertex V{k+1} has two legs on one target")
            if a == self.m + k or b == self.m + k:
                raise InvariantError("self-edge", f"vertex V{k+1} points at itself")
            norm.append((a, b))
        object.__setattr__(self, "legs", tuple(norm))
        if _has_circuit(self.n, self.m, self.legs):
            raise InvariantError("circuit", "directed circuit among internal vertices")

    def key(self) -> tuple:
        return (self.m, self.n, self.legs)

    def __lt__(self, other: "Graph") -> bool:
        return self.key() < other.key()

    def target_name(self, t: int) -> str:
        return f"B{t + 1}" if t < self.m else f"V{t - self.m + 1}"

    def __str__(self) -> str:
        return serialize_graph(self)

    def __repr__(self) -> str:
        return f"Graph({serialize_graph(self)!r})"

    def in_degree_boundary(self, i: int) -> int:
        """Number of edges landing on boundary point i (1-based)."""
        t = i - 1
        return sum(pair.count(t) for pair in self.legs)

    def in_degree_internal(self, k: int) -> int:
        """Number of edges landing on internal vertex k (1-based)."""
        t = self.m + k - 1
        return sum(pair.count(t) for pair in self.legs)


def _apply_perm(g: Graph, perm: tuple[int, ...]) -> tuple[Leg, ...]:
    # perm[old internal index] = new internal index (0-based).
    def remap(t: int) -> int:
        return t if t < g.m else g.m + perm[t - g.m]

    new_legs: list[Leg] = [None] * g.n  # type: ignore[list-item]
    for k in range(g.n):
        a, b = (remap(t) for t in g.legs[k])
        new_legs[perm[k]] = (a, b) if a < b else (b, a)
    return tuple(new_legs)


def canonicalize(g: Graph) -> Graph:
    """Canonical representative: lexicographically minimal leg encoding
    over all permutations of the internal vertex indices.  Idempotent and
    isomorphism-invariant; brute force, intended for desk scale (n <= 8)."""
    if g.n <= 1:
        return g
    best = min(_apply_perm(g, p) for p in itertools.permutations(range(g.n)))
    if best == g.legs:
        return g
    return Graph(g.m, g.n, best)


def canonical_permutation(g: Graph) -> tuple[int, ...]:
    """The first permutation (old internal index -> new) realizing the
    canonical encoding; used to transport per-vertex leg orientations."""
    if g.n == 0:
        return ()
    best_perm = None
    best_legs = None
    for p in itertools.permutations(range(g.n)):
        legs = _apply_perm(g, p)
        if best_legs is None or legs < best_legs:
            best_legs, best_perm = legs, p
    return best_perm


def relabel(g: Graph, perm: tuple[int, ...]) -> Graph:
    """Apply an internal-vertex relabeling (old index -> new index)."""
    return Graph(g.m, g.n, _apply_perm(g, perm))


def is_canonical(g: Graph) -> bool:
    return canonicalize(g).legs == g.legs


def automorphism_count(g: Graph) -> int:
    """Number of internal-vertex permutations fixing the leg structure
    (boundary fixed pointwise)."""
    if g.n <= 1:
        return 1
    return sum(1 for p in itertools.permutations(range(g.n)) if _apply_perm(g, p) == g.legs)


def transpose(g: Graph) -> Graph:
    """Reverse the boundary order (B_i -> B_{m+1-i}); an involution."""
    def remap(t: int) -> int:
        return g.m - 1 - t if t < g.m else t

    legs = tuple(tuple(sorted(remap(t) for t in pair)) for pair in g.legs)
    return canonicalize(Graph(g.m, g.n, legs))


def is_forest(g: Graph) -> bool:
    """True when every internal vertex has at most one incoming edge."""
    return all(g.in_degree_internal(k) <= 1 for k in range(1, g.n + 1))


def has_zero_in_degree(g: Graph) -> bool:
    """True when no edge lands on an internal vertex."""
    return all(g.in_degree_internal(k) == 0 for k in range(1, g.n + 1))


def has_circuit(g: Graph) -> bool:
    """Always False on constructed graphs; kept for raw-data validation."""
    return _has_circuit(g.n, g.m, g.legs)


def _components(g: Graph) -> list[list[int]]:
    # Connected components of the internal vertices under edges between
    # internal vertices (boundary points do not join components).
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for k in range(g.n):
        for t in g.legs[k]:
            if t >= g.m:
                adj[k].add(t - g.m)
                adj[t - g.m].add(k)
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp, stack = [], [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _induced_on(g: Graph, vertices: list[int]) -> Graph:
    # Subgraph on the given internal vertices over the full boundary.
    index = {v: i for i, v in enumerate(vertices)}
    legs = []
    for v in vertices:
        pair = tuple(t if t < g.m else g.m + index[t - g.m] for t in g.legs[v])
        legs.append(tuple(sorted(pair)))
    return canonicalize(Graph(g.m, len(vertices), tuple(legs)))


def prime_factorize(g: Graph) -> list[Graph]:
    """Prime factors of g under the boundary product, as a sorted list
    with multiplicity.  Unit graphs (n = 0) factor into nothing."""
    if g.n == 0:
        return []
    return sorted(_induced_on(g, comp) for comp in _components(g))


def is_prime(g: Graph) -> bool:
    """Not a non-trivial boundary product; units are not prime."""
    return g.n >= 1 and len(_components(g)) == 1


def heights(g: Graph) -> tuple[int, int, int]:
    """(phi_L, phi_R, phi) for an m=2 graph: in-degrees of the two boundary
    points and their difference phi_R - phi_L."""
    if g.m != 2:
        raise ArityError(f"heights requires m=2, got m={g.m}")
    left = g.in_degree_boundary(1)
    right = g.in_degree_boundary(2)
    return left, right, right - left


def pad(g: Graph, side: str) -> Graph:
    """Embed an m=2 graph into m=3: 'right' puts it on boundary (1,2) with
    point 3 bare, 'left' puts it on (2,3) with point 1 bare."""
    if g.m != 2:
        raise ArityError(f"pad requires m=2, got m={g.m}")
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    shift = 1 if side == "left" else 0

    def remap(t: int) -> int:
        return t + shift if t < 2 else t + 1

    legs = tuple(tuple(sorted(remap(t) for t in pair)) for pair in g.legs)
    return canonicalize(Graph(3, g.n, legs))


RESTRICTIONS = ("full", "forest", "zero-in-degree")


def _normalize_restriction(restriction: str) -> str:
    if restriction == "constant":
        return "zero-in-degree"
    if restriction not in RESTRICTIONS:
        raise ValueError(f"unknown restriction {restriction!r}")
    return restriction


def passes_restriction(g: Graph, restriction: str) -> bool:
    restriction = _normalize_restriction(restriction)
    if restriction == "forest":
        return is_forest(g)
    if restriction == "zero-in-degree":
        return has_zero_in_degree(g)
    return True


@lru_cache(maxsize=None)
def _enumerate_cached(n: int, m: int, restriction: str) -> tuple[Graph, ...]:
    if restriction == "zero-in-degree":
        choices = [t for t in itertools.combinations(range(m), 2)]
    else:
        choices = None
    found: set[Graph] = set()
    per_vertex = []
    for k in range(n):
        if choices is not None:
            per_vertex.append(choices)
        else:
            targets = [t for t in range(m + n) if t != m + k]
            per_vertex.append(list(itertools.combinations(targets, 2)))
    for assignment in itertools.product(*per_vertex):
        if _has_circuit(n, m, assignment):
            continue
        g = Graph(m, n, assignment)
        if restriction == "forest" and not is_forest(g):
            continue
        found.add(canonicalize(g))
    return tuple(sorted(found))


def enumerate_class(n: int, m: int, restriction: str = "full") -> list[Graph]:
    """All canonical admissible graphs with n internal and m boundary
    vertices, sorted by canonical encoding.  'forest' keeps internal
    in-degree <= 1, 'zero-in-degree' keeps internal in-degree 0."""
    if n < 0 or m < 1:
        raise ValueError(f"invalid class parameters n={n}, m={m}")
    return list(_enumerate_cached(n, m, _normalize_restriction(restriction)))


def parse_target(token: str, m: int, n: int, pos: int) -> int:
    token = token.strip()
    if not token or token[0] not in "BbVv":
        raise GraphSyntaxError(f"expected target 'B<i>' or 'V<k>', got {token!r}", pos)
    try:
        idx = int(token[1:])
    except ValueError:
        raise GraphSyntaxError(f"bad target index in {token!r}", pos) from None
    if token[0] in "Bb":
        if not 1 <= idx <= m:
            raise InvariantError("target-range", f"boundary index {idx} outside 1..{m}")
        return idx - 1
    if not 1 <= idx <= n:
        raise InvariantError("target-range", f"internal index {idx} outside 1..{n}")
    return m + idx - 1


def parse_graph(text: str) -> Graph:
    """Parse 'm=<int>;n=<int>;v1:<T>,<T>;...' with targets B<i> / V<k>.
    Whitespace is insignificant; leg order within a pair is not."""
    compact = "".join(text.split())
    fields = compact.split(";")
    offset = 0
    positions = []
    for f in fields:
        positions.append(offset)
        offset += len(f) + 1
    if len(fields) < 2:
        raise GraphSyntaxError("expected 'm=<int>;n=<int>;...'", 0)
    if not fields[0].startswith("m="):
        raise GraphSyntaxError("expected 'm=<int>'", positions[0])
    if not fields[1].startswith("n="):
        raise GraphSyntaxError("expected 'n=<int>'", positions[1])
    try:
        m = int(fields[0][2:])
        n = int(fields[1][2:])
    except ValueError:
        raise GraphSyntaxError("boundary/internal counts must be integers", 0) from None
    vertex_fields = fields[2:]
    if len(vertex_fields) != n:
        raise GraphSyntaxError(f"expected {n} vertex entries, got {len(vertex_fields)}",
                               positions[min(2 + len(vertex_fields), len(fields) - 1)])
    legs = []
    for k, f in enumerate(vertex_fields):
        pos = positions[2 + k]
        head, sep, rest = f.partition(":")
        if not sep or head.lower() != f"v{k + 1}":
            raise GraphSyntaxError(f"expected 'v{k + 1}:<T>,<T>'", pos)
        parts = rest.split(",")
        if len(parts) != 2:
            raise GraphSyntaxError("each vertex takes exactly two targets", pos)
        legs.append((parse_target(parts[0], m, n, pos), parse_target(parts[1], m, n, pos)))
    return Graph(m, n, tuple(legs))


def serialize_graph(g: Graph) -> str:
    parts = [f"m={g.m}", f"n={g.n}"]
    for k, pair in enumerate(g.legs):
        parts.append(f"v{k + 1}:{g.target_name(pair[0])},{g.target_name(pair[1])}")
    return ";".join(parts)


def graph_to_json(g: Graph) -> dict:
    return {
        "m": g.m,
        "n": g.n,
        "legs": [[g.target_name(a), g.target_name(b)] for a, b in g.legs],
    }


def graph_from_json(obj: dict) -> Graph:
    m, n = int(obj["m"]), int(obj["n"])
    legs = tuple(
        (parse_target(a, m, n, 0), parse_target(b, m, n, 0)) for a, b in obj["legs"]
    )
    return Graph(m, n, legs)
