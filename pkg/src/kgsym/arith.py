"""Exact arithmetic substrate: rational scalars, sparse bivariate polynomials
in x and y, and exact rational linear algebra (nullspace, rank).

Everything here is exact; no floating point is used anywhere in the package.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

# Rational scalars are arbitrary-precision fractions: always in lowest terms,
# denominator positive, zero is 0/1.
Rational = Fraction


def _as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


class XYPoly:
    """Sparse polynomial in x and y over exact rationals.

    Terms map exponent pairs (i, j) to nonzero coefficients; no zero
    coefficient is ever stored, so two polynomials are equal exactly when
    their term maps are. Values are immutable by convention: no operation
    mutates its operands.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for (i, j), value in terms.items():
                c = _as_rational(value)
                if c:
                    cleaned[(int(i), int(j))] = c
        self.terms = cleaned

    @classmethod
    def zero(cls) -> "XYPoly":
        return cls()

    @classmethod
    def one(cls) -> "XYPoly":
        return cls({(0, 0): 1})

    @classmethod
    def constant(cls, value) -> "XYPoly":
        return cls({(0, 0): value})

    @classmethod
    def variable(cls, name: str) -> "XYPoly":
        if name == "x":
            return cls({(1, 0): 1})
        if name == "y":
            return cls({(0, 1): 1})
        raise ValueError(f"unknown variable {name!r}; only x and y exist")

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1) -> "XYPoly":
        return cls({(i, j): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(key == (0, 0) for key in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return self.terms.get((0, 0), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(i + j for (i, j) in self.terms)

    def diff(self, var: str) -> "XYPoly":
        """Exact partial derivative with respect to x or y."""
        out = {}
        if var == "x":
            for (i, j), c in self.terms.items():
                if i:
                    out[(i - 1, j)] = c * i
        elif var == "y":
            for (i, j), c in self.terms.items():
                if j:
                    out[(i, j - 1)] = c * j
        else:
            raise ValueError(f"unknown variable {var!r}")
        return XYPoly(out)

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        result = XYPoly.__new__(XYPoly)
        result.terms = out
        return result

    __radd__ = __add__

    def __neg__(self):
        result = XYPoly.__new__(XYPoly)
        result.terms = {key: -c for key, c in self.terms.items()}
        return result

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        result = XYPoly.__new__(XYPoly)
        result.terms = out
        return result

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = XYPoly.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        """Terms in canonical degree-lexicographic order (highest first)."""
        return sorted(self.terms.items(),
                      key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0]),
                      reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = [_poly_term_str(key, c) for key, c in self.sorted_terms()]
        return _join_signed(pieces)

    def __repr__(self):
        return f"XYPoly({self})"


def _coerce_poly(value):
    if isinstance(value, XYPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return XYPoly.constant(value)
    return NotImplemented


def _poly_term_str(key, coeff) -> str:
    i, j = key
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    if not parts:
        return str(coeff)
    body = "*".join(parts)
    if coeff == 1:
        return body
    if coeff == -1:
        return "-" + body
    return f"{coeff}*{body}"


def _join_signed(pieces) -> str:
    out = pieces[0]
    for piece in pieces[1:]:
        if piece.startswith("-"):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out


def poly_arith(a: XYPoly, b: XYPoly, op: str) -> XYPoly:
    """Ring operation on two polynomials; op is one of add, sub, mul."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_diff(a: XYPoly, var: str) -> XYPoly:
    """Exact partial derivative of a with respect to x or y."""
    return a.diff(var)


class RationalMatrix:
    """Dense matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError("entry grid does not match declared dimensions")
        self.rows = rows
        self.cols = cols
        self.entries = [[_as_rational(v) for v in row] for row in entries]

    @classmethod
    def from_rows(cls, entries) -> "RationalMatrix":
        entries = [list(row) for row in entries]
        rows = len(entries)
        cols = len(entries[0]) if entries else 0
        return cls(rows, cols, entries)

    def mul_vector(self, vec):
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        return [sum((row[c] * vec[c] for c in range(self.cols)), Fraction(0))
                for row in self.entries]

    def __eq__(self, other):
        return (isinstance(other, RationalMatrix)
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols})"


def _integer_rows(m: RationalMatrix):
    """Scale each row to coprime integers, dropping zero rows."""
    out = []
    for row in m.entries:
        den = 1
        for v in row:
            if v:
                den = den * v.denominator // gcd(den, v.denominator)
        ints = [int(v * den) for v in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g:
            out.append([v // g for v in ints])
    return out


def _echelon(rows, cols):
    """Fraction-free forward elimination.

    Returns (reduced rows, pivot column list). Pivot policy: leftmost nonzero
    column, first nonzero row; scaling stays integral and is normalized only
    when kernel vectors are extracted.
    """
    pivots = []
    r = 0
    for col in range(cols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][col]
        for i in range(r + 1, len(rows)):
            v = rows[i][col]
            if not v:
                continue
            tail = [pv * a - v * b
                    for a, b in zip(rows[i][col:], rows[r][col:])]
            g = 0
            for t in tail:
                g = gcd(g, t)
            if g > 1:
                tail = [t // g for t in tail]
            rows[i] = [0] * col + tail
        pivots.append(col)
        r += 1
    return rows[:r], pivots


def nullspace(m: RationalMatrix):
    """Exact kernel basis in reduced-row-echelon convention.

    Each basis vector carries a unit entry in its own free column and zeros in
    every other free column; vectors are ordered by ascending free-column
    index. The empty list signals a trivial kernel.
    """
    cols = m.cols
    rows, pivots = _echelon(_integer_rows(m), cols)
    pivot_set = set(pivots)
    basis = []
    for free_col in range(cols):
        if free_col in pivot_set:
            continue
        vec = [Fraction(0)] * cols
        vec[free_col] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            if pc > free_col:
                continue
            row = rows[i]
            s = row[free_col] * vec[free_col]
            for j in range(i + 1, len(pivots)):
                c = pivots[j]
                if c > free_col:
                    break
                if row[c] and vec[c]:
                    s += row[c] * vec[c]
            if s:
                vec[pc] = Fraction(-s, row[pc])
        basis.append(vec)
    return basis


def rank(m: RationalMatrix) -> int:
    """Exact rank via fraction-free elimination."""
    _, pivots = _echelon(_integer_rows(m), m.cols)
    return len(pivots)
