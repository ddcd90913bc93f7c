"""Free-algebra oracle for the Hausdorff series.

log(exp(x) exp(y)) is computed in the truncated free associative algebra on
two letters and rewritten degree by degree in the Lyndon bracket basis of
the free Lie algebra.  Everything is exact rational arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactsolve import solve_exact

Word = tuple[int, ...]  # letters 0 = x, 1 = y

LETTERS = ("x", "y")


class FreeAlgebraElement:
    """Rational combination of words in two letters, truncated by degree."""

    __slots__ = ("order", "_terms")

    def __init__(self, order: int, terms=()):
        self.order = order
        data: dict[Word, Fraction] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for w, c in items:
            c = Fraction(c)
            if not c or len(w) > order:
                continue
            w = tuple(w)
            c += data.get(w, 0)
            if c:
                data[w] = c
            else:
                data.pop(w, None)
        self._terms = data

    @classmethod
    def unit(cls, order: int) -> "FreeAlgebraElement":
        return cls(order, {(): 1})

    @classmethod
    def letter(cls, which: int, order: int) -> "FreeAlgebraElement":
        return cls(order, {(which,): 1})

    def items(self):
        return sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0]))

    def coeff(self, w: Word) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    def degree_part(self, k: int) -> dict[Word, Fraction]:
        return {w: c for w, c in self._terms.items() if len(w) == k}

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, FreeAlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other):
        merged = dict(self._terms)
        for w, c in other._terms.items():
            s = merged.get(w, 0) + c
            if s:
                merged[w] = s
            else:
                merged.pop(w, None)
        return FreeAlgebraElement(min(self.order, other.order), merged)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor) -> "FreeAlgebraElement":
        return FreeAlgebraElement(self.order, {w: c * Fraction(factor)
                                               for w, c in self._terms.items()})

    def __mul__(self, other: "FreeAlgebraElement") -> "FreeAlgebraElement":
        order = min(self.order, other.order)
        out: dict[Word, Fraction] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                if len(w1) + len(w2) > order:
                    continue
                w = w1 + w2
                s = out.get(w, 0) + c1 * c2
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return FreeAlgebraElement(order, out)

    def __str__(self):
        if not self._terms:
            return "0"
        def word_str(w):
            return "1" if not w else "".join(LETTERS[l] for l in w)
        return " + ".join(f"{c}*{word_str(w)}" for w, c in self.items())


def exp_free(a: FreeAlgebraElement) -> FreeAlgebraElement:
    """exp of an element with no constant term."""
    if a.coeff(()):
        raise ValueError("exp argument must have no constant term")
    out = FreeAlgebraElement.unit(a.order)
    power = FreeAlgebraElement.unit(a.order)
    fact = 1
    for k in range(1, a.order + 1):
        power = power * a
        if not power:
            break
        fact *= k
        out = out + power.scale(Fraction(1, fact))
    return out


def log_free(a: FreeAlgebraElement) -> FreeAlgebraElement:
    """log of an element with constant term 1."""
    if a.coeff(()) != 1:
        raise ValueError("log argument must have constant term 1")
    x = a - FreeAlgebraElement.unit(a.order)
    out = FreeAlgebraElement(a.order)
    power = FreeAlgebraElement.unit(a.order)
    for k in range(1, a.order + 1):
        power = power * x
        if not power:
            break
        out = out + power.scale(Fraction((-1) ** (k + 1), k))
    return out


def is_lyndon(w: Word) -> bool:
    return bool(w) and all(w < w[i:] for i in range(1, len(w)))


def lyndon_words(max_len: int) -> list[Word]:
    """All Lyndon words over {x < y} up to the given length."""
    out = []
    for k in range(1, max_len + 1):
        for w in itertools.product((0, 1), repeat=k):
            if is_lyndon(w):
                out.append(w)
    return out


Bracket = tuple  # nested ("x",), ("y",) leaves or (left, right) pairs


def standard_bracketing(w: Word) -> Bracket:
    """Right standard factorization: w = uv with v the longest proper
    Lyndon suffix; bracket recursively."""
    if len(w) == 1:
        return (LETTERS[w[0]],)
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return (standard_bracketing(w[:i]), standard_bracketing(w[i:]))
    raise ValueError(f"not a Lyndon word: {w}")


def bracket_str(b: Bracket) -> str:
    if len(b) == 1 and isinstance(b[0], str):
        return b[0]
    return f"[{bracket_str(b[0])},{bracket_str(b[1])}]"


def expand_bracket(b: Bracket, order: int) -> FreeAlgebraElement:
    if len(b) == 1 and isinstance(b[0], str):
        return FreeAlgebraElement.letter(LETTERS.index(b[0]), order)
    left = expand_bracket(b[0], order)
    right = expand_bracket(b[1], order)
    return left * right - right * left


def bch_element(order: int) -> FreeAlgebraElement:
    """log(exp(x) exp(y)) truncated at the given total degree."""
    x = FreeAlgebraElement.letter(0, order)
    y = FreeAlgebraElement.letter(1, order)
    return log_free(exp_free(x) * exp_free(y))


@dataclass(frozen=True)
class LieTerm:
    coefficient: Fraction
    bracket: Bracket
    word: Word

    def __str__(self):
        return f"{self.coefficient} * {bracket_str(self.bracket)}"


def lyndon_decomposition(elt: FreeAlgebraElement) -> dict[int, list[LieTerm]]:
    """Write each homogeneous component in the Lyndon bracket basis.  Fails
    (infeasible solve) when a component is not a Lie element."""
    out: dict[int, list[LieTerm]] = {}
    for k in range(1, elt.order + 1):
        component = elt.degree_part(k)
        lyndon = [w for w in lyndon_words(k) if len(w) == k]
        brackets = [standard_bracketing(w) for w in lyndon]
        expansions = [expand_bracket(b, k) for b in brackets]
        words = sorted(set(itertools.chain(component,
                                           *[e._terms for e in expansions])))
        if not words:
            continue
        rows = [[e.coeff(w) for e in expansions] for w in words]
        rhs = [component.get(w, Fraction(0)) for w in words]
        sol = solve_exact(rows, rhs)
        if sol.status == "infeasible":
            raise ValueError(f"degree-{k} component is not a Lie element")
        terms = [LieTerm(c, b, w) for c, b, w in
                 zip(sol.particular, brackets, lyndon) if c]
        if terms:
            out[k] = terms
    return out


def bch_oracle(order: int) -> tuple[FreeAlgebraElement, dict[int, list[LieTerm]]]:
    """The Hausdorff series with its Lyndon bracket form, degrees <= order."""
    elt = bch_element(order)
    return elt, lyndon_decomposition(elt)


def bch_report(w, alpha, order: int) -> str:
    """Juxtapose the x^n * y star-product expansions against the Hausdorff
    coefficients.  Informational only: the weight system's tree-level values
    are not asserted to be a dictionary for the series coefficients."""
    from .evaluator import star_product
    from .poly import Polynomial
    elt, lie = bch_oracle(order)
    lines = ["Hausdorff series through degree %d:" % order]
    for k in sorted(lie):
        lines.append("  degree %d: %s" % (k, " + ".join(str(t) for t in lie[k])))
    lines.append("")
    lines.append("x1^n * x2 expansions (weights: %s, solved order %d):"
                 % (w.restriction, w.solved_order))
    x1 = Polynomial.variable(alpha.dim, 1)
    x2 = Polynomial.variable(alpha.dim, 2)
    f = Polynomial.constant(alpha.dim, 1)
    for n in range(1, min(order, w.solved_order) + 1):
        f = f * x1
        series = star_product(f, x2, alpha, w, min(order, w.solved_order))
        lines.append("  x1^%d * x2 = %s" % (n, series))
    lines.append("")
    lines.append("The comparison is informational; no coefficient dictionary "
                 "is asserted between the two columns.")
    return "\n".join(lines)
