import itertools
import random
from fractions import Fraction

import pytest

from graphstar import catalog
from graphstar.algebra import (GraphVector, TensorVector, apply_T, apply_T_tensor,
                               associator, boundary_product, bracket, compose,
                               coproduct_prime, coproduct_reduced, delta,
                               duality_check, exp_product, insert_at, log_product,
                               merger, boundary_reduce, normal_subgraphs, pairing,
                               product_of)
from graphstar.graphs import (ArityError, Graph, InvariantError, enumerate_class,
                              heights, pad, transpose)

B0, B1, B1_SQ = catalog.B0, catalog.B1, catalog.B1_SQ
B2L = catalog.bernoulli_left(2)
B2R = catalog.bernoulli_right(2)
RNG = random.Random(20240817)


def vec(*terms):
    return GraphVector(list(terms))


def test_vector_basics():
    v = vec((B1, 1), (B2L, Fraction(1, 2)))
    assert v.coeff(B1) == 1
    assert (v - v) == GraphVector()
    assert 2 * v == v + v
    assert v.graded_part(2) == vec((B2L, Fraction(1, 2)))
    with pytest.raises(ArityError):
        vec((B1, 1), (catalog.B1_L, 1))


def test_boundary_product():
    assert boundary_product(B1, B1) == GraphVector.of(B1_SQ)
    assert boundary_product(B0, B2L) == GraphVector.of(B2L)
    assert not boundary_product(B1, catalog.B1_L)  # arity mismatch -> 0
    assert product_of([]) == B0


def test_insert_examples():
    assert insert_at(B0, 1, B1) == GraphVector.of(catalog.B1_L)
    mixed = boundary_product(GraphVector.of(catalog.B1_L), GraphVector.of(catalog.B1_R))
    [(mixed_graph, _)] = mixed.items()
    assert insert_at(B1, 1, B1) == vec((catalog.T2_R, 1), (catalog.C2_L, 1),
                                       (mixed_graph, 1))
    assert insert_at(B1, 1, B0) == vec((catalog.B1_M, 1), (catalog.B1_R, 1))
    with pytest.raises(ArityError):
        insert_at(B1, 3, B0)


def test_insert_assignment_counting():
    with_mult = insert_at(B1_SQ, 1, B0, count_assignments=True)
    assert with_mult.coeff(catalog.C2_R) == 2
    assert insert_at(B1_SQ, 1, B0).coeff(catalog.C2_R) == 1


def test_compose_identities():
    assert not compose(B0, B0)
    assert compose(B0, B1) == vec((catalog.B1_L, 1), (catalog.B1_R, -1))
    assert compose(B1, B0) == vec((catalog.B1_R, 1), (catalog.B1_L, -1))
    assert compose(B1, B1) == vec((catalog.T2_R, 1), (catalog.T2_L, -1),
                                  (catalog.C2_L, 1), (catalog.C2_R, -1))
    assert compose(B0, B2L) == vec((pad(B2L, "right"), 1), (pad(B2L, "left"), -1))
    assert compose(B2L, B0) == vec((pad(B2L, "left"), 1), (pad(B2L, "right"), -1),
                                   (catalog.T2_L, 1), (catalog.C2, 1))
    assert compose(B0, B1_SQ) == vec((catalog.B1SQ_L, 1), (catalog.B1SQ_R, -1))


def test_bracket_identities():
    assert not bracket(B0, B1)
    assert bracket(B0, B2L) == vec((catalog.T2_L, 1), (catalog.C2, 1))
    assert bracket(B0, B1_SQ) == vec((catalog.C2_R, 1), (catalog.C2_L, -1))


def test_bracket_rejects_mixed_arity():
    with pytest.raises(ArityError):
        bracket(vec((B1, 1), (catalog.B1_L, 1)), GraphVector.of(B0))


def test_associator_antisymmetry_exhaustive():
    basis = {n: enumerate_class(n, 2) for n in range(3)}
    assert not associator(B0, B0, B0)
    for na in range(3):
        for nb in range(3 - na):
            for nc in range(3 - na - nb):
                for a, b, c in itertools.product(basis[na], basis[nb], basis[nc]):
                    assert not associator(a, b, c) + associator(a, c, b)


def test_associator_equal_arguments_vanish():
    assert not associator(B1, B1, B1)


def test_bracket_graded_jacobi():
    # for odd-degree elements both cyclic forms collapse to unsigned sums
    basis = {n: enumerate_class(n, 2) for n in range(3)}
    for na in range(3):
        for nb in range(3 - na):
            for nc in range(3 - na - nb):
                for a, b, c in itertools.product(basis[na], basis[nb], basis[nc]):
                    assert not (bracket(a, bracket(b, c)) +
                                bracket(b, bracket(c, a)) +
                                bracket(c, bracket(a, b))), (a, b, c)


def test_normal_subgraph_witnesses_t2l():
    ws = normal_subgraphs(catalog.T2_L, 2)
    assert len(ws) == 2
    by_run = {w.run: w for w in ws}
    left = by_run[(1, 2)]
    assert left.internal == frozenset() and left.subgraph == B0
    assert left.quotient == B2L and left.sign == 1
    right = by_run[(2, 3)]
    assert right.subgraph == B1 and right.quotient == B1 and right.sign == -1


def test_normal_subgraph_witnesses_b1m():
    ws = normal_subgraphs(catalog.B1_M, 2)
    assert len(ws) == 2
    assert {w.sign for w in ws} == {1, -1}
    assert all(w.subgraph == B0 and w.quotient == B1 for w in ws)


def test_normal_subgraph_parallel_edge_exclusion():
    ws = normal_subgraphs(catalog.B1_L, 2)
    assert len(ws) == 2
    assert {(w.run, w.internal) for w in ws} == \
        {((1, 2), frozenset({1})), ((2, 3), frozenset())}


def test_coproduct_table():
    assert coproduct_reduced(catalog.T2_L) == \
        TensorVector([((B2L, B0), 1), ((B1, B1), -1)])
    assert coproduct_reduced(catalog.C2_L) == \
        TensorVector([((B1, B1), 1), ((B1_SQ, B0), -1)])
    assert not coproduct_reduced(catalog.B1_M)
    assert coproduct_reduced(catalog.gamma_n(3)) == \
        TensorVector([((catalog.bernoulli_left(3), B0), 1), ((B2L, B1), -1)])
    with pytest.raises(ArityError):
        coproduct_reduced(B1)


def test_coproduct_prime():
    assert coproduct_prime(catalog.T2_L) == coproduct_reduced(catalog.T2_L)
    assert coproduct_prime(catalog.C2) == \
        TensorVector([((B2L, B0), 1), ((B2R, B0), -1)])
    assert not coproduct_prime(catalog.B1_M)
    with pytest.raises(InvariantError):
        coproduct_prime(catalog.C2_L)


def test_duality_examples():
    assert duality_check(B1, B1, catalog.T2_R)
    assert compose(B1, B1).coeff(catalog.T2_R) == 1
    assert duality_check(B1, B1, catalog.C2)
    assert compose(B1, B1).coeff(catalog.C2) == 0
    assert duality_check(B2L, B0, catalog.T2_L)
    assert compose(B2L, B0).coeff(catalog.T2_L) == 1


def test_duality_exhaustive():
    for total in range(4):
        for k in range(total + 1):
            for g1 in enumerate_class(k, 2):
                for g2 in enumerate_class(total - k, 2):
                    comp = compose(g1, g2)
                    for big in enumerate_class(total, 3):
                        assert comp.coeff(big) == \
                            pairing(coproduct_reduced(big), g1, g2), (g1, g2, big)


def test_merger():
    assert merger(catalog.C2) == vec((B2L, 1), (B2R, -1))
    assert merger(catalog.T2_L) == GraphVector.of(B2L)
    assert boundary_reduce(catalog.B1_L, 2) == TensorVector({(B1, B0): 1})
    assert not boundary_reduce(catalog.B1_L, 1)  # parallel-edge collapse drops


def test_apply_T():
    assert apply_T(B2L) == GraphVector.of(B2R, -1)
    assert apply_T(B1) == GraphVector.of(B1, -1)
    assert apply_T_tensor(coproduct_reduced(catalog.C2_L)) == \
        -coproduct_reduced(catalog.C2_R)


def test_T_compatibility():
    sample = [(B0, B1), (B1, B1), (B2L, B0), (B1, B1_SQ)]
    for g1, g2 in sample:
        assert apply_T(compose(g1, g2)) == compose(apply_T(g1), apply_T(g2))
        assert apply_T(boundary_product(g1, g2)) == \
            -boundary_product(apply_T(g1), apply_T(g2))
    for n in range(4):
        for g in enumerate_class(n, 3):
            lhs = apply_T_tensor(coproduct_reduced(g))
            rhs = TensorVector()
            for tg, c in apply_T(g):
                rhs = rhs + coproduct_reduced(tg).scale(c)
            assert lhs == rhs, g


def test_symmetric_graphs_have_antisymmetric_coproducts():
    for n in range(4):
        for g in enumerate_class(n, 3):
            if transpose(g) != g:
                continue
            ws = normal_subgraphs(g, 2)
            triples = sorted((w.quotient.key(), w.subgraph.key(), w.sign) for w in ws)
            flipped = sorted((transpose(w.quotient).key(), transpose(w.subgraph).key(),
                              -w.sign) for w in ws)
            assert triples == flipped, g


def test_no_middle_leg_vanishing():
    found = 0
    for n in range(4):
        for g in enumerate_class(n, 3):
            if g.in_degree_boundary(2) == 0:
                found += 1
                assert not coproduct_reduced(g), g
    assert found > 3


def test_leading_terms_and_height_inequality():
    # The unit-subgraph terms of the coproduct are exactly the two signed
    # boundary collapses (parallel-edge collapses dropped); every other term
    # has a quotient of strictly smaller degree.  When both collapses are
    # admissible the right one strictly dominates in right-boundary height.
    from graphstar.algebra import _quotient
    for n in range(1, 4):
        for g in enumerate_class(n, 3):
            cp = coproduct_reduced(g)
            expected_top = TensorVector()
            left = _quotient(g, 1, 2, frozenset())
            right = _quotient(g, 2, 2, frozenset())
            if left is not None:
                expected_top = expected_top + TensorVector({(left, B0): 1})
            if right is not None:
                expected_top = expected_top - TensorVector({(right, B0): 1})
            tops = TensorVector([((a, b), c) for (a, b), c in cp if b.n == 0])
            assert tops == expected_top, g
            assert all(a.n < n for (a, b), c in cp if b.n > 0), g
            # both terms present means the collapses are admissible AND do
            # not cancel each other (equal quotients annihilate in the sum)
            if left is not None and right is not None and left != right:
                assert heights(left)[1] < heights(right)[1], g


def test_delta():
    assert not delta(B1)
    assert delta(B1_SQ) == vec((catalog.C2_R, 1), (catalog.C2_L, -1))
    assert delta(vec((B2L, 1), (B2R, 1))) == vec((catalog.T2_L, 1), (catalog.T2_R, -1))


def test_delta_squared_vanishes():
    for n in range(3):
        for g in enumerate_class(n, 2):
            assert not bracket(B0, delta(g)), g


def test_unit_weight_cancellation():
    total = compose(B1, B1) + bracket(B0, B1_SQ) + bracket(B0, B2L) + bracket(B0, B2R)
    assert not total


def test_insertion_is_algebra_morphism_with_assignments():
    # The Leibniz gluing data over a product factors through the two sides.
    # As a graph-sum identity this requires an edgeless inserted graph
    # (otherwise the right side would duplicate its internal vertices).
    triples = [(B1, B1, B0), (B2L, B1, B0), (B1_SQ, B1, B0), (B2L, B2R, B0),
               (B1, B1, catalog.unit(3)), (B1, B1_SQ, catalog.BULLET)]
    for g1, g2, g in triples:
        for i in range(1, 3):
            lhs = insert_at(product_of([g1, g2]), i, g, count_assignments=True)
            rhs = boundary_product(insert_at(g1, i, g, count_assignments=True),
                                   insert_at(g2, i, g, count_assignments=True))
            assert lhs == rhs, (g1, g2, g, i)


def test_closure_of_composition():
    pairs = [(g1, g2) for k in range(3) for g1 in enumerate_class(k, 2)
             for g2 in enumerate_class(2 - k, 2)]
    for g1, g2 in pairs:
        for g, _ in compose(g1, g2):
            Graph(g.m, g.n, g.legs)  # revalidates all invariants
            assert g.m == 3 and g.n == g1.n + g2.n


def test_exp_log():
    e = exp_product(GraphVector.of(B1), 3)
    assert e == vec((B0, 1), (B1, 1), (B1_SQ, Fraction(1, 2)),
                    (product_of([B1] * 3), Fraction(1, 6)))
    assert log_product(exp_product(GraphVector.of(B1), 4), 4) == GraphVector.of(B1)
    v = vec((B0, 1), (B1_SQ, 1))
    b14 = product_of([B1] * 4)
    assert log_product(v, 4) == vec((B1_SQ, 1), (b14, Fraction(-1, 2)))
    with pytest.raises(InvariantError):
        exp_product(vec((B0, 1)), 3)
    with pytest.raises(InvariantError):
        log_product(vec((B1, 1)), 3)


def test_vector_json_round_trip():
    v = compose(B1, B1)
    obj = v.to_json_obj()
    assert obj == sorted(obj, key=lambda t: (t["graph"]["m"], t["graph"]["n"],
                                             t["graph"]["legs"]))
    from graphstar.graphs import graph_from_json
    rebuilt = GraphVector([(graph_from_json(t["graph"]), Fraction(t["coeff"]))
                           for t in obj])
    assert rebuilt == v


def test_tensor_json():
    tv = coproduct_reduced(catalog.T2_L)
    obj = tv.to_json_obj()
    assert all(set(t) == {"left", "right", "coeff"} for t in obj)
