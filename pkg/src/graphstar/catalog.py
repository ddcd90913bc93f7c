"""Named small graphs used throughout: units, wedges, Bernoulli chains,
the n=2 three-point graphs, and the chain family feeding the weight
recursion.  All constants are canonical."""

from __future__ import annotations

from .graphs import ArityError, Graph, canonicalize, pad


def unit(m: int = 2) -> Graph:
    """Edgeless graph on m boundary points; unit of the boundary product."""
    return Graph(m, 0, ())


def wedge(i: int, j: int, m: int = 2) -> Graph:
    """Single internal vertex with legs to boundary points i and j (1-based)."""
    if not (1 <= i < j <= m):
        raise ArityError(f"wedge needs 1 <= i < j <= m, got ({i},{j}) with m={m}")
    return Graph(m, 1, ((i - 1, j - 1),))


def bernoulli_left(n: int) -> Graph:
    """Left Bernoulli chain b_n^L: V_k -> {B1, V_{k+1}}, last vertex a wedge."""
    if n < 1:
        raise ValueError("bernoulli chains start at n=1")
    legs = [(0, 2 + k + 1) for k in range(n - 1)] + [(0, 1)]
    return canonicalize(Graph(2, n, tuple(legs)))


def bernoulli_right(n: int) -> Graph:
    """Right Bernoulli chain b_n^R: V_k -> {V_{k+1}, B2}, last vertex a wedge."""
    if n < 1:
        raise ValueError("bernoulli chains start at n=1")
    legs = [(1, 2 + k + 1) for k in range(n - 1)] + [(0, 1)]
    return canonicalize(Graph(2, n, tuple(legs)))


def gamma_n(n: int) -> Graph:
    """Chain on m=3 whose last vertex wedges on (B2,B3); its coproduct ties
    b_n^L to b_{n-1}^L and drives the order-by-order weight recursion."""
    if n < 1:
        raise ValueError("gamma_n starts at n=1")
    legs = [(0, 3 + k + 1) for k in range(n - 1)] + [(1, 2)]
    return canonicalize(Graph(3, n, tuple(legs)))


B0 = unit(2)
BULLET = unit(1)
TRIPLE = unit(3)

B1 = wedge(1, 2)
B1_SQ = canonicalize(Graph(2, 2, ((0, 1), (0, 1))))

B1_L = wedge(1, 2, m=3)
B1_M = wedge(1, 3, m=3)
B1_R = wedge(2, 3, m=3)

T2_L = canonicalize(Graph(3, 2, ((0, 4), (1, 2))))
T2_R = canonicalize(Graph(3, 2, ((2, 4), (0, 1))))
C2 = canonicalize(Graph(3, 2, ((1, 4), (0, 2))))
C2_L = canonicalize(Graph(3, 2, ((0, 1), (0, 2))))
C2_R = canonicalize(Graph(3, 2, ((0, 2), (1, 2))))

B1SQ_L = pad(B1_SQ, "right")
B1SQ_R = pad(B1_SQ, "left")
B1SQ_M = canonicalize(Graph(3, 2, ((0, 2), (0, 2))))
