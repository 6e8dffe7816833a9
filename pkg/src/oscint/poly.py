"""Sparse exact-rational multivariate polynomials and their text grammar.

A polynomial is a map from exponent vectors (tuples of nonnegative ints, one
per variable) to nonzero Fraction coefficients.  The ambient dimension is
explicit: "x1^4" in two variables keeps its second axis.

Grammar accepted by parse():

    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    factor := 'x' INDEX ('^' NAT)?
    coeff  := INT | INT '/' POSINT

Whitespace is insignificant.  Example: ``3/2*x1^2*x2 - x3``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Exponent = tuple[int, ...]


class PolynomialSyntaxError(ValueError):
    """Malformed polynomial text; carries the character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class VariableIndexError(ValueError):
    """Variable index exceeds the ambient dimension (or is zero)."""


class NegativeExponentError(ValueError):
    """Exponents must be nonnegative integers."""


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


@dataclass(frozen=True)
class Polynomial:
    """Immutable sparse polynomial; ``terms`` never stores zero coefficients."""

    n: int
    terms: Mapping[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be a positive integer")
        clean = {}
        for e, c in self.terms.items():
            if len(e) != self.n:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {self.n}")
            if any(k < 0 for k in e):
                raise NegativeExponentError(f"negative exponent in {e}")
            c = Fraction(c)
            if c != 0:
                clean[tuple(int(k) for k in e)] = c
        object.__setattr__(self, "terms", clean)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(n: int) -> "Polynomial":
        return Polynomial(n, {})

    @staticmethod
    def constant(n: int, c) -> "Polynomial":
        return Polynomial(n, {(0,) * n: Fraction(c)})

    @staticmethod
    def monomial(n: int, exponent: Iterable[int], coeff=1) -> "Polynomial":
        return Polynomial(n, {tuple(exponent): Fraction(coeff)})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Polynomial(self.n, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.n, out)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self.n, {e: c * v for e, v in self.terms.items()})

    def shift_exponents(self, p: Iterable[int]) -> "Polynomial":
        """Multiply by the monomial x^p (p nonnegative)."""
        p = tuple(p)
        return Polynomial(self.n, {tuple(a + b for a, b in zip(e, p)): c for e, c in self.terms.items()})

    def partial(self, i: int) -> "Polynomial":
        """Exact partial derivative with respect to x_{i+1} (0-based index)."""
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            ne = tuple(ne)
            out[ne] = out.get(ne, Fraction(0)) + c * e[i]
        return Polynomial(self.n, out)

    # -- queries -----------------------------------------------------------

    @property
    def support(self) -> frozenset[Exponent]:
        return frozenset(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, e: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def evaluate(self, point) -> Fraction:
        """Exact value at a rational point."""
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x**k
            total += v
        return total

    def evaluate_float(self, *coords):
        """Vectorized float evaluation on numpy arrays (one array per axis)."""
        import numpy as np

        total = np.zeros(np.broadcast(*coords).shape if len(coords) > 1 else np.shape(coords[0]))
        for e, c in self.terms.items():
            v = float(c)
            term = v
            for x, k in zip(coords, e):
                if k:
                    term = term * x**k
            total = total + term
        return total

    def substitute_exponents(self, matrix: Iterable[Iterable[int]]) -> "Polynomial":
        """Monomial substitution x_j = prod_k y_k^{A[k][j]}: exponent a maps to A.a."""
        rows = [tuple(r) for r in matrix]
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            ne = tuple(sum(r[j] * e[j] for j in range(self.n)) for r in rows)
            out[ne] = out.get(ne, Fraction(0)) + c
        return Polynomial(len(rows), out)

    # -- printing ----------------------------------------------------------

    def _sorted_terms(self) -> Iterator[tuple[Exponent, Fraction]]:
        # graded lexicographic, highest first: deterministic golden files
        return iter(sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0]))))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self._sorted_terms():
            factors = [f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k > 0]
            mag = abs(c)
            if not factors:
                body = format_rational(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([format_rational(mag)] + factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


# -- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.pos = 0

    def error(self, msg: str) -> PolynomialSyntaxError:
        return PolynomialSyntaxError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def read_nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a number")
        return int(self.text[start : self.pos])

    def parse(self) -> Polynomial:
        terms: dict[Exponent, Fraction] = {}
        sign = 1
        ch = self.peek()
        if ch in "+-":
            sign = -1 if ch == "-" else 1
            self.take()
        self.parse_term(terms, sign)
        while True:
            ch = self.peek()
            if ch == "":
                break
            if ch not in "+-":
                raise self.error(f"expected '+' or '-', found {ch!r}")
            self.take()
            self.parse_term(terms, -1 if ch == "-" else 1)
        return Polynomial(self.n, terms)

    def parse_term(self, terms: dict, sign: int):
        coeff = Fraction(sign)
        exponent = [0] * self.n
        ch = self.peek()
        if ch.isdigit():
            coeff *= self.read_coeff()
            seen_factor = True  # bare constant term is legal
        elif ch == "x":
            seen_factor = False
        else:
            raise self.error(f"expected a coefficient or variable, found {ch!r}")
        while True:
            ch = self.peek()
            if ch == "x":
                self.read_factor(exponent)
            elif ch == "*":
                self.take()
                if self.peek() != "x":
                    raise self.error("expected a variable after '*'")
                self.read_factor(exponent)
            else:
                break
            seen_factor = True
        if not seen_factor:
            raise self.error("empty term")
        e = tuple(exponent)
        terms[e] = terms.get(e, Fraction(0)) + coeff

    def read_coeff(self) -> Fraction:
        num = self.read_nat()
        if self.peek() == "/":
            self.take()
            den = self.read_nat()
            if den == 0:
                raise self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def read_factor(self, exponent: list[int]):
        assert self.take() == "x"
        self.skip_ws()
        if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
            raise self.error("expected a variable index after 'x'")
        idx = self.read_nat()
        if idx < 1 or idx > self.n:
            raise VariableIndexError(f"variable x{idx} out of range for dimension {self.n}")
        power = 1
        if self.peek() == "^":
            self.take()
            if self.peek() == "-":
                raise NegativeExponentError("negative exponents are not allowed")
            power = self.read_nat()
        exponent[idx - 1] += power


def parse_polynomial(text: str, dimension: int) -> Polynomial:
    """Parse ``text`` in the grammar above; like terms collected, zeros dropped."""
    if dimension < 1:
        raise ValueError("dimension must be a positive integer")
    return _Parser(text, dimension).parse()


def taylor_support(p: Polynomial) -> frozenset[Exponent]:
    """Exponent vectors carrying a nonzero coefficient."""
    return p.support
