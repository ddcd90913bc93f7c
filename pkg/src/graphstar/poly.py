"""Sparse multivariate polynomials with exact rational coefficients, and
truncated power series in the deformation parameter.

Monomials are exponent tuples of a fixed length d; variables render as
x1..xd.  Series render as 'p0 + eps*(p1) + eps^2*(p2) + ...'.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]
Monomial = tuple[int, ...]


class PolynomialError(ValueError):
    pass


class Polynomial:
    """Immutable sparse polynomial in d variables over the rationals."""

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms: Mapping[Monomial, Scalar]
                 | Iterable[tuple[Monomial, Scalar]] = ()):
        self.dim = dim
        data: dict[Monomial, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            c = Fraction(c)
            if not c:
                continue
            mono = tuple(mono)
            if len(mono) != dim or any(e < 0 for e in mono):
                raise PolynomialError(f"bad monomial {mono} for dimension {dim}")
            c += data.get(mono, 0)
            if c:
                data[mono] = c
            else:
                data.pop(mono, None)
        self._terms = data

    @classmethod
    def zero(cls, dim: int) -> "Polynomial":
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, value: Scalar) -> "Polynomial":
        return cls(dim, {(0,) * dim: value})

    @classmethod
    def variable(cls, dim: int, index: int) -> "Polynomial":
        """x_index, 1-based."""
        mono = tuple(1 if i == index - 1 else 0 for i in range(dim))
        return cls(dim, {mono: 1})

    def items(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __iter__(self):
        return iter(self.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.dim, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        merged = dict(self._terms)
        for mono, c in other._terms.items():
            s = merged.get(mono, 0) + c
            if s:
                merged[mono] = s
            else:
                merged.pop(mono, None)
        return Polynomial(self.dim, merged)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.dim, {m: -c for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(mono, 0) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return Polynomial(self.dim, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, factor: Scalar) -> "Polynomial":
        factor = Fraction(factor)
        if not factor:
            return Polynomial(self.dim)
        return Polynomial(self.dim, {m: c * factor for m, c in self._terms.items()})

    def _check(self, other: "Polynomial"):
        if self.dim != other.dim:
            raise PolynomialError(f"dimension mismatch {self.dim} != {other.dim}")

    def derivative(self, index: int) -> "Polynomial":
        """Partial derivative with respect to x_index (1-based)."""
        i = index - 1
        out = {}
        for mono, c in self._terms.items():
            e = mono[i]
            if e:
                lowered = mono[:i] + (e - 1,) + mono[i + 1:]
                out[lowered] = out.get(lowered, 0) + c * e
        return Polynomial(self.dim, out)

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._terms)

    def is_linear_homogeneous(self) -> bool:
        return all(sum(m) == 1 for m in self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for mono, c in self.items():
            factors = [f"x{i + 1}" + (f"^{e}" if e > 1 else "")
                       for i, e in enumerate(mono) if e]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(("+ " if c > 0 else "- ") + body)
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"Polynomial({self.dim}, {str(self)!r})"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x\d+)|(?P<op>[*^+\-()]))")


def parse_polynomial(text: str, dim: int) -> Polynomial:
    """Parse a polynomial string like '3/2*x1^2*x3 - x2 + 1'."""
    pos = 0
    tokens: list[tuple[str, str]] = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolynomialError(f"bad character {text[pos]!r} at offset {pos}")
        if m.lastgroup:
            tokens.append((m.lastgroup, m.group(m.lastgroup)))
        pos = m.end()
    tokens.append(("end", ""))
    idx = 0

    def peek():
        return tokens[idx]

    def take(kind=None):
        nonlocal idx
        tok = tokens[idx]
        if kind and tok[0] != kind:
            raise PolynomialError(f"expected {kind}, got {tok[1]!r}")
        idx += 1
        return tok

    def parse_sum() -> Polynomial:
        sign = 1
        while peek()[1] in ("+", "-"):
            if take()[1] == "-":
                sign = -sign
        acc = parse_term().scale(sign)
        while peek()[1] in ("+", "-"):
            sign = 1
            while peek()[1] in ("+", "-"):
                if take()[1] == "-":
                    sign = -sign
            acc = acc + parse_term().scale(sign)
        return acc

    def parse_term() -> Polynomial:
        acc = parse_factor()
        while peek()[1] == "*":
            take()
            acc = acc * parse_factor()
        return acc

    def parse_factor() -> Polynomial:
        kind, value = peek()
        if value == "(":
            take()
            inner = parse_sum()
            if take()[1] != ")":
                raise PolynomialError("unbalanced parentheses")
            base = inner
        elif kind == "num":
            take()
            base = Polynomial.constant(dim, Fraction(value))
        elif kind == "var":
            take()
            index = int(value[1:])
            if not 1 <= index <= dim:
                raise PolynomialError(f"variable {value} outside x1..x{dim}")
            base = Polynomial.variable(dim, index)
        else:
            raise PolynomialError(f"unexpected token {value!r}")
        if peek()[1] == "^":
            take()
            exp = int(take("num")[1])
            out = Polynomial.constant(dim, 1)
            for _ in range(exp):
                out = out * base
            return out
        return base

    result = parse_sum()
    if peek()[0] != "end":
        raise PolynomialError(f"trailing input {peek()[1]!r}")
    return result


class PolySeries:
    """Power series sum_k eps^k p_k truncated at a fixed order."""

    __slots__ = ("dim", "order", "_coeffs")

    def __init__(self, dim: int, order: int,
                 coeffs: Mapping[int, Polynomial] | Iterable[tuple[int, Polynomial]] = ()):
        self.dim = dim
        self.order = order
        data: dict[int, Polynomial] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for k, p in items:
            if k < 0:
                raise PolynomialError("negative series order")
            if k > order or not p:
                continue
            data[k] = data.get(k, Polynomial.zero(dim)) + p
            if not data[k]:
                del data[k]
        self._coeffs = data

    @classmethod
    def of(cls, p: Polynomial, order: int) -> "PolySeries":
        return cls(p.dim, order, {0: p})

    def coeff(self, k: int) -> Polynomial:
        return self._coeffs.get(k, Polynomial.zero(self.dim))

    def items(self) -> list[tuple[int, Polynomial]]:
        return sorted(self._coeffs.items())

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolySeries):
            return NotImplemented
        common = min(self.order, other.order)
        return self.dim == other.dim and \
            all(self.coeff(k) == other.coeff(k) for k in range(common + 1))

    def __hash__(self):
        return hash((self.dim, self.order, frozenset(self._coeffs.items())))

    def __add__(self, other: "PolySeries") -> "PolySeries":
        order = min(self.order, other.order)
        return PolySeries(self.dim, order,
                          [(k, self.coeff(k) + other.coeff(k)) for k in range(order + 1)])

    def __sub__(self, other: "PolySeries") -> "PolySeries":
        return self + other.scale(-1)

    def scale(self, factor: Scalar) -> "PolySeries":
        return PolySeries(self.dim, self.order,
                          {k: p.scale(factor) for k, p in self._coeffs.items()})

    def __mul__(self, other: "PolySeries") -> "PolySeries":
        order = min(self.order, other.order)
        out: dict[int, Polynomial] = {}
        for k1, p1 in self._coeffs.items():
            for k2, p2 in other._coeffs.items():
                if k1 + k2 > order:
                    continue
                k = k1 + k2
                out[k] = out.get(k, Polynomial.zero(self.dim)) + p1 * p2
        return PolySeries(self.dim, order, out)

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        chunks = []
        for k, p in self.items():
            if k == 0:
                chunks.append(str(p))
            elif k == 1:
                chunks.append(f"eps*({p})")
            else:
                chunks.append(f"eps^{k}*({p})")
        return " + ".join(chunks)

    def __repr__(self) -> str:
        return f"PolySeries({str(self)!r})"
