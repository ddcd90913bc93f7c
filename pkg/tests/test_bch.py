from fractions import Fraction

import pytest

from graphstar.bch import (FreeAlgebraElement, bch_oracle, bch_report,
                           bracket_str, exp_free, expand_bracket, is_lyndon,
                           log_free, lyndon_words, standard_bracketing)


def test_free_algebra_arithmetic():
    x = FreeAlgebraElement.letter(0, 4)
    y = FreeAlgebraElement.letter(1, 4)
    assert (x * y).coeff((0, 1)) == 1
    assert (x * y - y * x).coeff((1, 0)) == -1
    assert ((x + y) * (x + y)).coeff((0, 1)) == 1


def test_exp_log_inverse():
    x = FreeAlgebraElement.letter(0, 5)
    y = FreeAlgebraElement.letter(1, 5)
    assert log_free(exp_free(x)) == x
    u = x + y.scale(Fraction(1, 3))
    assert log_free(exp_free(u)) == u
    with pytest.raises(ValueError):
        exp_free(FreeAlgebraElement.unit(3))
    with pytest.raises(ValueError):
        log_free(x)


def test_lyndon_words():
    assert lyndon_words(3) == [(0,), (1,), (0, 1), (0, 0, 1), (0, 1, 1)]
    assert is_lyndon((0, 0, 1, 1))
    assert not is_lyndon((1, 0))
    assert not is_lyndon((0, 1, 0, 1))


def test_standard_bracketing():
    assert bracket_str(standard_bracketing((0, 1))) == "[x,y]"
    assert bracket_str(standard_bracketing((0, 0, 1))) == "[x,[x,y]]"
    assert bracket_str(standard_bracketing((0, 1, 1))) == "[[x,y],y]"


def test_expand_bracket():
    elt = expand_bracket(standard_bracketing((0, 1)), 2)
    assert elt.coeff((0, 1)) == 1 and elt.coeff((1, 0)) == -1


def test_hausdorff_degrees():
    _, lie = bch_oracle(4)
    assert {bracket_str(t.bracket): t.coefficient for t in lie[1]} == \
        {"x": 1, "y": 1}
    assert {bracket_str(t.bracket): t.coefficient for t in lie[2]} == \
        {"[x,y]": Fraction(1, 2)}
    assert {bracket_str(t.bracket): t.coefficient for t in lie[3]} == \
        {"[x,[x,y]]": Fraction(1, 12), "[[x,y],y]": Fraction(1, 12)}
    assert {bracket_str(t.bracket): t.coefficient for t in lie[4]} == \
        {"[x,[[x,y],y]]": Fraction(1, 24)}


def test_hausdorff_element_is_lie():
    # decomposition succeeding at every degree is the Lie-element check
    elt, lie = bch_oracle(5)
    total = FreeAlgebraElement(5)
    for k, terms in lie.items():
        for t in terms:
            total = total + expand_bracket(t.bracket, 5).scale(t.coefficient)
    assert total == elt


def test_report_is_informational_text():
    from graphstar.characters import solve_weights
    from graphstar.evaluator import lie_nonabelian_2d
    w, _ = solve_weights(3, "forest")
    text = bch_report(w, lie_nonabelian_2d(), 3)
    assert "degree 2" in text and "x1^2 * x2" in text
    assert "informational" in text
