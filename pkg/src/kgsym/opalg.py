"""Normal-ordered linear operators in the total derivatives Dx and Dy with
polynomial coefficients.

An operator is a finite sum a_pq(x, y) * Dx^p * Dy^q with all coefficients to
the left of all derivations; the normal form is unique, so operator equality
is coefficient-map equality. Composition re-normal-orders through the
rewriting Dx o a = a*Dx + a_x (and likewise for Dy).
"""

from __future__ import annotations

from fractions import Fraction

from .arith import XYPoly

_X = XYPoly.variable("x")
_Y = XYPoly.variable("y")


def _clean(terms):
    return {key: c for key, c in terms.items() if c}


def _acc(out, key, poly):
    s = out.get(key)
    s = poly if s is None else s + poly
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def _d_step(terms, var):
    """Normal form of Dx (or Dy) composed with the operator given by terms."""
    out = {}
    for (p, q), c in terms.items():
        shifted = (p + 1, q) if var == "x" else (p, q + 1)
        _acc(out, shifted, c)
        dc = c.diff(var)
        if dc:
            _acc(out, (p, q), dc)
    return out


class TDOperator:
    """Linear operator sum a_pq(x, y) * Dx^p * Dy^q in normal form."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for (p, q), c in terms.items():
                if not isinstance(c, XYPoly):
                    c = XYPoly.constant(c)
                if c:
                    cleaned[(int(p), int(q))] = c
        self.terms = cleaned

    @classmethod
    def zero(cls) -> "TDOperator":
        return cls()

    @classmethod
    def identity(cls) -> "TDOperator":
        return cls({(0, 0): XYPoly.one()})

    @classmethod
    def dx(cls) -> "TDOperator":
        return cls({(1, 0): XYPoly.one()})

    @classmethod
    def dy(cls) -> "TDOperator":
        return cls({(0, 1): XYPoly.one()})

    @classmethod
    def j(cls) -> "TDOperator":
        """The dilation generator x*Dx - y*Dy."""
        return cls({(1, 0): _X, (0, 1): -_Y})

    @classmethod
    def mul_by(cls, poly) -> "TDOperator":
        """Multiplication operator by a polynomial (or constant)."""
        if not isinstance(poly, XYPoly):
            poly = XYPoly.constant(poly)
        return cls({(0, 0): poly})

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        """Highest total derivative order; -1 for the zero operator."""
        if not self.terms:
            return -1
        return max(p + q for (p, q) in self.terms)

    def __add__(self, other):
        if not isinstance(other, TDOperator):
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            _acc(out, key, c)
        result = TDOperator.__new__(TDOperator)
        result.terms = out
        return result

    def __sub__(self, other):
        if not isinstance(other, TDOperator):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        result = TDOperator.__new__(TDOperator)
        result.terms = {key: -c for key, c in self.terms.items()}
        return result

    def scale(self, value) -> "TDOperator":
        """Multiply by a constant scalar (constants commute with Dx, Dy)."""
        value = Fraction(value)
        result = TDOperator.__new__(TDOperator)
        if value:
            result.terms = {key: c * value for key, c in self.terms.items()}
        else:
            result.terms = {}
        return result

    def left_mul_poly(self, poly: XYPoly) -> "TDOperator":
        """Left multiplication by a polynomial: poly * self, still normal."""
        result = TDOperator.__new__(TDOperator)
        result.terms = _clean({key: poly * c for key, c in self.terms.items()})
        return result

    def __mul__(self, other):
        if isinstance(other, TDOperator):
            return self.compose(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, XYPoly):
            return self.left_mul_poly(other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("operator exponent must be a nonnegative integer")
        result = TDOperator.identity()
        for _ in range(exponent):
            result = result.compose(self)
        return result

    def compose(self, other: "TDOperator") -> "TDOperator":
        """Normal-ordered product self o other."""
        cache = {(0, 0): other.terms}

        def lifted(p, q):
            t = cache.get((p, q))
            if t is None:
                if p:
                    t = _d_step(lifted(p - 1, q), "x")
                else:
                    t = _d_step(lifted(p, q - 1), "y")
                cache[(p, q)] = t
            return t

        out = {}
        for (p, q), coeff in self.terms.items():
            for key, c in lifted(p, q).items():
                _acc(out, key, coeff * c)
        result = TDOperator.__new__(TDOperator)
        result.terms = out
        return result

    def adjoint(self) -> "TDOperator":
        """Formal adjoint: (a * Dx^p * Dy^q)+ = (-1)^(p+q) Dx^p Dy^q o a."""
        out = {}
        for (p, q), c in self.terms.items():
            t = {(0, 0): c}
            for _ in range(q):
                t = _d_step(t, "y")
            for _ in range(p):
                t = _d_step(t, "x")
            if (p + q) % 2:
                for key, cc in t.items():
                    _acc(out, key, -cc)
            else:
                for key, cc in t.items():
                    _acc(out, key, cc)
        result = TDOperator.__new__(TDOperator)
        result.terms = out
        return result

    def __eq__(self, other):
        if not isinstance(other, TDOperator):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((key, hash(c)) for key, c in self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        """Terms ordered with the highest derivative order first."""
        return sorted(self.terms.items(),
                      key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0]),
                      reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for (p, q), c in self.sorted_terms():
            dpart = _derivative_str(p, q)
            if not dpart:
                pieces.append(str(c))
            elif c == XYPoly.one():
                pieces.append(dpart)
            elif c.is_constant():
                value = c.constant_value()
                pieces.append("-" + dpart if value == -1
                              else f"{value}*{dpart}")
            else:
                pieces.append(f"({c})*{dpart}")
        out = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                out += " - " + piece[1:]
            else:
                out += " + " + piece
        return out

    def __repr__(self):
        return f"TDOperator({self})"


def _derivative_str(p, q):
    parts = []
    if p:
        parts.append("Dx" if p == 1 else f"Dx^{p}")
    if q:
        parts.append("Dy" if q == 1 else f"Dy^{q}")
    return "*".join(parts)


def generator(name: str, poly=None) -> TDOperator:
    """Named generator: DX, DY, J, ONE, or MUL with a polynomial argument."""
    if name == "DX":
        return TDOperator.dx()
    if name == "DY":
        return TDOperator.dy()
    if name == "J":
        return TDOperator.j()
    if name == "ONE":
        return TDOperator.identity()
    if name == "MUL":
        if poly is None:
            raise ValueError("MUL requires a polynomial argument")
        return TDOperator.mul_by(poly)
    raise ValueError(f"unknown generator {name!r}")


def compose(a: TDOperator, b: TDOperator) -> TDOperator:
    return a.compose(b)


def commutator(a: TDOperator, b: TDOperator) -> TDOperator:
    return a.compose(b) - b.compose(a)


def adjoint(a: TDOperator) -> TDOperator:
    return a.adjoint()


def kg_operator() -> TDOperator:
    """The light-cone Klein-Gordon operator Dx*Dy - 1."""
    return TDOperator({(1, 1): XYPoly.one(), (0, 0): XYPoly.constant(-1)})


def basis_op(kind: str, k: int, l: int) -> TDOperator:
    """Half-shifted basis operator (J + l/2)^k o Dx^l, or the mirrored
    (J - l/2)^k o Dy^l for kind Qbar (which needs l >= 1)."""
    if k < 0 or l < 0:
        raise ValueError("orders must be nonnegative")
    if kind == "Q":
        shifted = TDOperator.j() + TDOperator.mul_by(Fraction(l, 2))
        tail = TDOperator({(l, 0): XYPoly.one()})
    elif kind == "Qbar":
        if l == 0:
            raise ValueError("Qbar requires l >= 1")
        shifted = TDOperator.j() - TDOperator.mul_by(Fraction(l, 2))
        tail = TDOperator({(0, l): XYPoly.one()})
    else:
        raise ValueError(f"unknown basis kind {kind!r}")
    return (shifted ** k).compose(tail)


def monomial_op(side: str, k: int, l: int) -> TDOperator:
    """J^k o Dx^l (side X) or J^k o Dy^l (side Y), normal-ordered."""
    if k < 0 or l < 0:
        raise ValueError("orders must be nonnegative")
    if side == "X":
        tail = TDOperator({(l, 0): XYPoly.one()})
    elif side == "Y":
        tail = TDOperator({(0, l): XYPoly.one()})
    else:
        raise ValueError(f"unknown side {side!r}")
    return (TDOperator.j() ** k).compose(tail)


def skew_self_split(a: TDOperator):
    """Split into (skew-adjoint, self-adjoint) halves summing to a."""
    ad = a.adjoint()
    half = Fraction(1, 2)
    return ((a - ad).scale(half), (a + ad).scale(half))
