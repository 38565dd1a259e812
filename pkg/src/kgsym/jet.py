"""Jet spaces for the light-cone Klein-Gordon equation u_xy = u.

Two representations live here. The reduced (on-shell) jet has coordinates
w_k per field w, one integer index k: w_k is the k-th pure x-derivative for
k >= 0 and the (-k)-th pure y-derivative for k < 0, with the mixed derivative
eliminated through w_xy = w. The free (off-shell) jet keeps all coordinates
u_(a,b) of the single field u. Total derivatives, the Euler operator and the
on-shell reduction morphism connect the two pictures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import XYPoly
from .opalg import TDOperator

_X = XYPoly.variable("x")
_Y = XYPoly.variable("y")


@dataclass(frozen=True)
class FieldId:
    """A dependent variable; every declared field satisfies w_xy = w on shell."""
    name: str


U = FieldId("u")
F = FieldId("f")


def _field_name(field) -> str:
    return field.name if isinstance(field, FieldId) else str(field)


def _coerce_coeff(value):
    if isinstance(value, XYPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return XYPoly.constant(value)
    return None


def _mono_mul(m1, m2):
    exps = dict(m1)
    for var, e in m2:
        exps[var] = exps.get(var, 0) + e
    return tuple(sorted(exps.items()))


def _acc(out, mono, coeff):
    s = out.get(mono)
    s = coeff if s is None else s + coeff
    if s:
        out[mono] = s
    else:
        out.pop(mono, None)


class ReducedJetPoly:
    """Differential polynomial in on-shell jet coordinates w_k, k in Z.

    Terms map monomials in the jet variables (tuples of ((field, k), exp))
    to nonzero XYPoly coefficients. Several fields may appear; all of them
    satisfy the same on-shell relation.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for mono, coeff in terms.items():
                c = _coerce_coeff(coeff)
                if c is None:
                    raise TypeError("coefficients must be XYPoly or rational")
                if c:
                    cleaned[tuple(sorted(mono))] = c
        self.terms = cleaned

    @classmethod
    def zero(cls) -> "ReducedJetPoly":
        return cls()

    @classmethod
    def one(cls) -> "ReducedJetPoly":
        return cls({(): XYPoly.one()})

    @classmethod
    def from_poly(cls, poly) -> "ReducedJetPoly":
        c = _coerce_coeff(poly)
        return cls({(): c})

    @classmethod
    def var(cls, field, k: int) -> "ReducedJetPoly":
        """The single jet coordinate w_k of the given field."""
        name = _field_name(field)
        return cls({(((name, int(k)), 1),): XYPoly.one()})

    def is_zero(self) -> bool:
        return not self.terms

    def fields(self):
        return {name for mono in self.terms for ((name, _), _) in mono}

    def jet_variables(self):
        return {var for mono in self.terms for (var, _) in mono}

    def order(self):
        """Max |k| over appearing jet variables; None when coefficient-only."""
        indices = [abs(k) for (_, k) in self.jet_variables()]
        return max(indices) if indices else None

    def jet_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e for _, e in mono) for mono in self.terms)

    def is_linear(self) -> bool:
        """Linear and homogeneous in the jet variables."""
        return all(sum(e for _, e in mono) == 1 for mono in self.terms)

    def coefficient(self, mono) -> XYPoly:
        return self.terms.get(tuple(sorted(mono)), XYPoly.zero())

    def partial(self, field, k: int) -> "ReducedJetPoly":
        """Partial derivative with respect to the jet variable (field, k)."""
        var = (_field_name(field), int(k))
        out = {}
        for mono, coeff in self.terms.items():
            exps = dict(mono)
            e = exps.get(var)
            if not e:
                continue
            if e == 1:
                del exps[var]
            else:
                exps[var] = e - 1
            _acc(out, tuple(sorted(exps.items())), coeff * e)
        result = ReducedJetPoly.__new__(ReducedJetPoly)
        result.terms = out
        return result

    def total_derivative(self, var: str) -> "ReducedJetPoly":
        """Reduced total derivative: coefficient derivative plus the index
        shift k -> k+1 (for x) or k -> k-1 (for y) through the chain rule."""
        if var not in ("x", "y"):
            raise ValueError(f"unknown variable {var!r}")
        step = 1 if var == "x" else -1
        out = {}
        for mono, coeff in self.terms.items():
            dc = coeff.diff(var)
            if dc:
                _acc(out, mono, dc)
            for (name, k), e in mono:
                exps = dict(mono)
                if e == 1:
                    del exps[(name, k)]
                else:
                    exps[(name, k)] = e - 1
                shifted = (name, k + step)
                exps[shifted] = exps.get(shifted, 0) + 1
                _acc(out, tuple(sorted(exps.items())), coeff * e)
        result = ReducedJetPoly.__new__(ReducedJetPoly)
        result.terms = out
        return result

    def __add__(self, other):
        other = _coerce_reduced(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            _acc(out, mono, coeff)
        result = ReducedJetPoly.__new__(ReducedJetPoly)
        result.terms = out
        return result

    __radd__ = __add__

    def __neg__(self):
        result = ReducedJetPoly.__new__(ReducedJetPoly)
        result.terms = {mono: -c for mono, c in self.terms.items()}
        return result

    def __sub__(self, other):
        other = _coerce_reduced(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_reduced(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_reduced(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                _acc(out, _mono_mul(m1, m2), c1 * c2)
        result = ReducedJetPoly.__new__(ReducedJetPoly)
        result.terms = out
        return result

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = ReducedJetPoly.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        other = _coerce_reduced(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((m, hash(c)) for m, c in self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        """Canonical display order: jet degree descending, then by field name
        and descending index inside each degree block."""
        def mono_key(mono):
            return tuple((name, -k, e) for (name, k), e in
                         sorted(mono, key=lambda ve: (ve[0][0], -ve[0][1])))
        return sorted(self.terms.items(),
                      key=lambda kv: (-sum(e for _, e in kv[0]),
                                      mono_key(kv[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for mono, coeff in self.sorted_terms():
            body = "*".join(_jet_var_str(name, k, e) for (name, k), e in
                            sorted(mono, key=lambda ve: (ve[0][0], -ve[0][1])))
            pieces.append(_coeff_prefixed(coeff, body))
        return _join_signed(pieces)

    def __repr__(self):
        return f"ReducedJetPoly({self})"


def _coerce_reduced(value):
    if isinstance(value, ReducedJetPoly):
        return value
    c = _coerce_coeff(value)
    if c is None:
        return NotImplemented
    return ReducedJetPoly({(): c}) if c else ReducedJetPoly.zero()


def _jet_var_str(name, k, e):
    base = f"{name}[{k}]"
    return base if e == 1 else f"{base}^{e}"


def _coeff_prefixed(coeff: XYPoly, body: str) -> str:
    if not body:
        return str(coeff)
    if len(coeff.terms) == 1:
        ((i, j), f) = next(iter(coeff.terms.items()))
        if (i, j) == (0, 0):
            if f == 1:
                return body
            if f == -1:
                return "-" + body
            return f"{f}*{body}"
        return f"{coeff}*{body}"
    return f"({coeff})*{body}"


def _join_signed(pieces) -> str:
    out = pieces[0]
    for piece in pieces[1:]:
        if piece.startswith("-"):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out


class FreeJetPoly:
    """Differential polynomial in the off-shell coordinates u_(a,b), a,b >= 0.

    Only the field u lives off shell; coefficients are XYPoly.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for mono, coeff in terms.items():
                c = _coerce_coeff(coeff)
                if c is None:
                    raise TypeError("coefficients must be XYPoly or rational")
                if c:
                    cleaned[tuple(sorted(mono))] = c
        self.terms = cleaned

    @classmethod
    def zero(cls) -> "FreeJetPoly":
        return cls()

    @classmethod
    def one(cls) -> "FreeJetPoly":
        return cls({(): XYPoly.one()})

    @classmethod
    def from_poly(cls, poly) -> "FreeJetPoly":
        return cls({(): _coerce_coeff(poly)})

    @classmethod
    def var(cls, a: int, b: int) -> "FreeJetPoly":
        """The coordinate u_(a,b) = d^a/dx^a d^b/dy^b u."""
        if a < 0 or b < 0:
            raise ValueError("derivative orders must be nonnegative")
        return cls({(((int(a), int(b)), 1),): XYPoly.one()})

    def is_zero(self) -> bool:
        return not self.terms

    def jet_variables(self):
        return {var for mono in self.terms for (var, _) in mono}

    def order(self):
        orders = [a + b for (a, b) in self.jet_variables()]
        return max(orders) if orders else None

    def partial(self, a: int, b: int) -> "FreeJetPoly":
        var = (int(a), int(b))
        out = {}
        for mono, coeff in self.terms.items():
            exps = dict(mono)
            e = exps.get(var)
            if not e:
                continue
            if e == 1:
                del exps[var]
            else:
                exps[var] = e - 1
            _acc(out, tuple(sorted(exps.items())), coeff * e)
        result = FreeJetPoly.__new__(FreeJetPoly)
        result.terms = out
        return result

    def total_derivative(self, var: str) -> "FreeJetPoly":
        """Full off-shell total derivative; no substitution happens here."""
        if var not in ("x", "y"):
            raise ValueError(f"unknown variable {var!r}")
        out = {}
        for mono, coeff in self.terms.items():
            dc = coeff.diff(var)
            if dc:
                _acc(out, mono, dc)
            for (a, b), e in mono:
                exps = dict(mono)
                if e == 1:
                    del exps[(a, b)]
                else:
                    exps[(a, b)] = e - 1
                shifted = (a + 1, b) if var == "x" else (a, b + 1)
                exps[shifted] = exps.get(shifted, 0) + 1
                _acc(out, tuple(sorted(exps.items())), coeff * e)
        result = FreeJetPoly.__new__(FreeJetPoly)
        result.terms = out
        return result

    def __add__(self, other):
        other = _coerce_free(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            _acc(out, mono, coeff)
        result = FreeJetPoly.__new__(FreeJetPoly)
        result.terms = out
        return result

    __radd__ = __add__

    def __neg__(self):
        result = FreeJetPoly.__new__(FreeJetPoly)
        result.terms = {mono: -c for mono, c in self.terms.items()}
        return result

    def __sub__(self, other):
        other = _coerce_free(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_free(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_free(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                _acc(out, _mono_mul(m1, m2), c1 * c2)
        result = FreeJetPoly.__new__(FreeJetPoly)
        result.terms = out
        return result

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = FreeJetPoly.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        other = _coerce_free(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((m, hash(c)) for m, c in self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        def mono_key(mono):
            return tuple(((-a - b, -a), e) for (a, b), e in mono)
        pieces = []
        for mono, coeff in sorted(self.terms.items(),
                                  key=lambda kv: (-sum(e for _, e in kv[0]),
                                                  mono_key(kv[0]))):
            body = "*".join(
                (f"u({a},{b})" if e == 1 else f"u({a},{b})^{e}")
                for (a, b), e in sorted(mono, key=lambda ve: (-ve[0][0] - ve[0][1], -ve[0][0])))
            pieces.append(_coeff_prefixed(coeff, body))
        return _join_signed(pieces)

    def __repr__(self):
        return f"FreeJetPoly({self})"


def _coerce_free(value):
    if isinstance(value, FreeJetPoly):
        return value
    c = _coerce_coeff(value)
    if c is None:
        return NotImplemented
    return FreeJetPoly({(): c}) if c else FreeJetPoly.zero()


class LaurentEval:
    """Polynomial in x, y, lambda and 1/lambda over exact rationals.

    Records the scalar factor left after evaluating a reduced jet polynomial
    on the exponential solution family and dividing out the exponential."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for (i, j, m), value in terms.items():
                c = Fraction(value)
                if c:
                    cleaned[(int(i), int(j), int(m))] = c
        self.terms = cleaned

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, LaurentEval):
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return LaurentEval(out)

    def __neg__(self):
        return LaurentEval({key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentEval):
            return NotImplemented
        return self + (-other)

    def scale(self, value) -> "LaurentEval":
        value = Fraction(value)
        return LaurentEval({key: c * value for key, c in self.terms.items()})

    def shift_lambda(self, n: int) -> "LaurentEval":
        """Multiply by lambda^n."""
        return LaurentEval({(i, j, m + n): c
                            for (i, j, m), c in self.terms.items()})

    def diff(self, var: str) -> "LaurentEval":
        out = {}
        if var == "x":
            for (i, j, m), c in self.terms.items():
                if i:
                    out[(i - 1, j, m)] = c * i
        elif var == "y":
            for (i, j, m), c in self.terms.items():
                if j:
                    out[(i, j - 1, m)] = c * j
        else:
            raise ValueError(f"unknown variable {var!r}")
        return LaurentEval(out)

    def __eq__(self, other):
        if not isinstance(other, LaurentEval):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for (i, j, m), c in sorted(self.terms.items()):
            parts = []
            if i:
                parts.append("x" if i == 1 else f"x^{i}")
            if j:
                parts.append("y" if j == 1 else f"y^{j}")
            if m:
                parts.append("L" if m == 1 else f"L^{m}")
            body = "*".join(parts)
            pieces.append(f"{c}*{body}" if body else str(c))
        return " + ".join(pieces)

    def __repr__(self):
        return f"LaurentEval({self})"


def reduced_total_derivative(p: ReducedJetPoly, var: str) -> ReducedJetPoly:
    """The reduced total derivative in x or y."""
    return p.total_derivative(var)


def iterated_derivative(p: ReducedJetPoly, k: int) -> ReducedJetPoly:
    """k-fold reduced x-derivative for k >= 0, (-k)-fold y-derivative else."""
    var = "x" if k >= 0 else "y"
    for _ in range(abs(k)):
        p = p.total_derivative(var)
    return p


def reduced_J(p: ReducedJetPoly) -> ReducedJetPoly:
    """The reduced dilation x*Dx - y*Dy acting on a reduced jet polynomial."""
    return (p.total_derivative("x") * _X) - (p.total_derivative("y") * _Y)


def apply_operator_reduced(a: TDOperator, field=U) -> ReducedJetPoly:
    """Apply an operator to a field on shell: Dx^p Dy^q w reduces to w_(p-q)."""
    name = _field_name(field)
    out = {}
    for (p, q), coeff in a.terms.items():
        _acc(out, (((name, p - q), 1),), coeff)
    result = ReducedJetPoly.__new__(ReducedJetPoly)
    result.terms = out
    return result


def apply_operator_free(a: TDOperator) -> FreeJetPoly:
    """Apply an operator to u off shell: Dx^p Dy^q u is the coordinate u_(p,q)."""
    out = {}
    for (p, q), coeff in a.terms.items():
        _acc(out, (((p, q), 1),), coeff)
    result = FreeJetPoly.__new__(FreeJetPoly)
    result.terms = out
    return result


def free_total_derivative(p: FreeJetPoly, var: str) -> FreeJetPoly:
    """The full off-shell total derivative in x or y."""
    return p.total_derivative(var)


def euler_operator(p: FreeJetPoly) -> FreeJetPoly:
    """Euler operator: sum of (-Dx)^a (-Dy)^b applied to dp/du_(a,b).

    Annihilates exactly the total divergences."""
    result = FreeJetPoly.zero()
    for (a, b) in sorted(p.jet_variables()):
        term = p.partial(a, b)
        for _ in range(a):
            term = term.total_derivative("x")
        for _ in range(b):
            term = term.total_derivative("y")
        result = result + (term if (a + b) % 2 == 0 else -term)
    return result


def reduce(p: FreeJetPoly) -> ReducedJetPoly:
    """Substitute u_(a,b) -> u_(a-b) using u_xy = u and its consequences."""
    out = {}
    for mono, coeff in p.terms.items():
        exps = {}
        for (a, b), e in mono:
            var = ("u", a - b)
            exps[var] = exps.get(var, 0) + e
        _acc(out, tuple(sorted(exps.items())), coeff)
    result = ReducedJetPoly.__new__(ReducedJetPoly)
    result.terms = out
    return result


def eval_exp_family(p: ReducedJetPoly) -> LaurentEval:
    """Evaluate on the exponential solution family with spectral parameter
    lambda (u_k picks up lambda^k) and divide out the exponential factor per
    monomial degree, leaving an exact Laurent-polynomial scalar."""
    fields = p.fields()
    if len(fields) > 1:
        raise ValueError(f"polynomial mixes distinct fields: {sorted(fields)}")
    out = {}
    for mono, coeff in p.terms.items():
        weight = sum(k * e for (_, k), e in mono)
        for (i, j), c in coeff.terms.items():
            key = (i, j, weight)
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return LaurentEval(out)
