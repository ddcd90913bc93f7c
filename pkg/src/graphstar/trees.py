"""Rooted trees with L/R-labeled leaves, their admissible-cut coproduct in
two independent forms, and the correspondence with forest graphs.

Trees coming from graphs are strictly binary (every node has two children,
each a subtree or a labeled leaf).  Coproduct trunks may lose children:
pruning deletes a full subtree together with its parent edge, so nodes in
trunk output can carry fewer than two children.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .graphs import Graph, InvariantError, canonicalize, is_forest

LEAF_L = "L"
LEAF_R = "R"


@dataclass(frozen=True)
class Tree:
    """A rooted tree node; children are Trees or leaf labels, stored in
    canonical order."""

    children: tuple

    def __post_init__(self):
        for c in self.children:
            if not isinstance(c, Tree) and c not in (LEAF_L, LEAF_R):
                raise InvariantError("tree-child", f"bad child {c!r}")
        object.__setattr__(self, "children", tuple(sorted(self.children, key=_child_key)))

    def node_count(self) -> int:
        return 1 + sum(c.node_count() for c in self.children if isinstance(c, Tree))

    def is_binary(self) -> bool:
        return len(self.children) == 2 and all(
            c.is_binary() if isinstance(c, Tree) else True for c in self.children)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.children) + ")"

    def __lt__(self, other: "Tree") -> bool:
        return _child_key(self) < _child_key(other)


def _child_key(c) -> tuple:
    if c == LEAF_L:
        return (0, 0, ())
    if c == LEAF_R:
        return (0, 1, ())
    return (1, len(c.children), tuple(_child_key(x) for x in c.children))


def node(*children) -> Tree:
    return Tree(tuple(children))


class Forest:
    """Canonical multiset of trees."""

    __slots__ = ("trees",)

    def __init__(self, trees: Iterable[Tree] = ()):
        self.trees = tuple(sorted(trees, key=_child_key))

    def __eq__(self, other):
        return isinstance(other, Forest) and self.trees == other.trees

    def __hash__(self):
        return hash(self.trees)

    def __len__(self):
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    def node_count(self) -> int:
        return sum(t.node_count() for t in self.trees)

    def __str__(self) -> str:
        return "[" + ",".join(str(t) for t in self.trees) + "]"

    def __repr__(self) -> str:
        return f"Forest({str(self)})"


EMPTY_FOREST = Forest()


def parse_tree(text: str) -> Tree:
    tree, pos = _parse_tree_at(text.replace(" ", ""), 0)
    if pos != len(text.replace(" ", "")):
        raise InvariantError("tree-syntax", f"trailing input at {pos}")
    if not isinstance(tree, Tree):
        raise InvariantError("tree-syntax", "a bare leaf is not a tree")
    return tree


def _parse_tree_at(s: str, pos: int):
    if pos >= len(s):
        raise InvariantError("tree-syntax", "unexpected end of input")
    if s[pos] in (LEAF_L, LEAF_R):
        return s[pos], pos + 1
    if s[pos] != "(":
        raise InvariantError("tree-syntax", f"expected '(' or leaf at {pos}")
    pos += 1
    children = []
    while pos < len(s) and s[pos] != ")":
        child, pos = _parse_tree_at(s, pos)
        children.append(child)
        if pos < len(s) and s[pos] == ",":
            pos += 1
    if pos >= len(s):
        raise InvariantError("tree-syntax", "unbalanced parentheses")
    return Tree(tuple(children)), pos + 1


def parse_forest(text: str) -> Forest:
    text = text.replace(" ", "")
    if not (text.startswith("[") and text.endswith("]")):
        raise InvariantError("tree-syntax", "forest text must be bracketed")
    inner = text[1:-1]
    if not inner:
        return EMPTY_FOREST
    trees = []
    depth = 0
    start = 0
    for i, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            trees.append(parse_tree(inner[start:i]))
            start = i + 1
    trees.append(parse_tree(inner[start:]))
    return Forest(trees)


# ---------------------------------------------------------------------------
# Connes-Kreimer style coproduct, two routes

CoproductTerms = dict[tuple[Forest, Forest], int]


def _fresh(t: Tree) -> Tree:
    """Structure-preserving copy with all node objects distinct, so that
    identity-based bookkeeping below is sound even for shared subtrees."""
    return Tree(tuple(_fresh(c) if isinstance(c, Tree) else c for c in t.children))


def _subtrees(t: Tree) -> list[Tree]:
    out = [t]
    for c in t.children:
        if isinstance(c, Tree):
            out.extend(_subtrees(c))
    return out


def _internal_edges(t: Tree) -> list[tuple[Tree, Tree]]:
    out = []
    for c in t.children:
        if isinstance(c, Tree):
            out.append((t, c))
            out.extend(_internal_edges(c))
    return out


def _remove(t: Tree, cut: set[int]) -> Tree | None:
    """Trunk after deleting the subtrees whose roots are in `cut` (by id).
    Returns None when t itself is cut."""
    if id(t) in cut:
        return None
    kept = []
    for c in t.children:
        if isinstance(c, Tree):
            r = _remove(c, cut)
            if r is not None:
                kept.append(r)
        else:
            kept.append(c)
    return Tree(tuple(kept))


def ck_coproduct_cuts(t: Tree) -> CoproductTerms:
    """Admissible-cut coproduct: for every set of internal edges no two of
    which lie on one root path, (trunk) tensor (pruned subtrees); the empty
    cut and the full-tree term are included."""
    t = _fresh(t)
    edges = _internal_edges(t)
    terms: CoproductTerms = {}

    def admissible(subset: tuple[tuple[Tree, Tree], ...]) -> bool:
        # no cut edge may sit below another cut edge's child subtree
        roots = [child for _, child in subset]
        for _, child in subset:
            above = [s for s in _subtrees(child)[1:]]
            for r in roots:
                if any(r is s for s in above):
                    return False
        return True

    for size in range(len(edges) + 1):
        for subset in itertools.combinations(edges, size):
            if not admissible(subset):
                continue
            cut_ids = {id(child) for _, child in subset}
            trunk = _remove(t, cut_ids)
            pruned = Forest(child for _, child in subset)
            key = (Forest([trunk]), pruned)
            terms[key] = terms.get(key, 0) + 1
    key = (EMPTY_FOREST, Forest([t]))
    terms[key] = terms.get(key, 0) + 1
    return terms


def ck_coproduct_subgraphs(t: Tree) -> CoproductTerms:
    """Same coproduct via descendant-closed node subsets: each subset is a
    union of full subtrees; the quotient removes them."""
    t = _fresh(t)
    nodes = _subtrees(t)
    index = {id(n): i for i, n in enumerate(nodes)}
    children_of = {id(n): [c for c in n.children if isinstance(c, Tree)]
                   for n in nodes}
    terms: CoproductTerms = {}
    for bits in itertools.product((0, 1), repeat=len(nodes)):
        subset = {id(n) for n in nodes if bits[index[id(n)]]}
        # descendant-closed: children of members are members
        if any(id(c) not in subset for nid in subset
               for c in children_of[nid]):
            continue
        # maximal members become the pruned forest components
        maximal = [n for n in nodes if id(n) in subset and
                   not any(any(n is c for c in children_of[id(p)])
                           and id(p) in subset for p in nodes)]
        pruned = Forest(maximal)
        trunk = _remove(t, {id(n) for n in maximal})
        key = (Forest([trunk]) if trunk is not None else EMPTY_FOREST, pruned)
        terms[key] = terms.get(key, 0) + 1
    return terms


# ---------------------------------------------------------------------------
# graph <-> tree correspondence on the forest class

def graph_to_tree(g: Graph) -> Forest:
    """Forest of binary trees for an arity-2 forest graph: an edge to the
    left boundary point becomes an L leaf, to the right an R leaf, internal
    edges become child edges."""
    if g.m != 2:
        raise InvariantError("arity", "tree correspondence needs m=2")
    if not is_forest(g):
        raise InvariantError("forest", "graph has an internal vertex with two parents")

    def build(k: int) -> Tree:
        children = []
        for t in g.legs[k]:
            if t == 0:
                children.append(LEAF_L)
            elif t == 1:
                children.append(LEAF_R)
            else:
                children.append(build(t - 2))
        return Tree(tuple(children))

    roots = [k for k in range(g.n) if g.in_degree_internal(k + 1) == 0]
    return Forest(build(k) for k in roots)


def tree_to_graph(f: Forest | Tree) -> Graph:
    """Inverse correspondence; input trees must be strictly binary."""
    if isinstance(f, Tree):
        f = Forest([f])
    legs: list[tuple[int, int]] = []

    def build(t: Tree) -> int:
        if not t.is_binary():
            raise InvariantError("binary", "tree nodes must have exactly two children")
        my_index = len(legs)
        legs.append((0, 0))  # placeholder
        pair = []
        for c in t.children:
            if c == LEAF_L:
                pair.append(0)
            elif c == LEAF_R:
                pair.append(1)
            else:
                pair.append(2 + build(c))
        legs[my_index] = (pair[0], pair[1])
        return my_index

    for t in f:
        build(t)
    return canonicalize(Graph(2, len(legs), tuple(legs)))
