"""Reduced quotients of multivariate polynomials."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .gcd import gcd_poly
from .poly import MultiPoly, as_coeff, canonical_vars, format_poly


class RationalFunction:
    """num/den with gcd(num, den) = 1, den integral primitive, positive leading coefficient."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce: bool = True):
        if not isinstance(num, MultiPoly):
            num = MultiPoly.const(num)
        if den is None:
            den = MultiPoly.const(1, num.vars)
        elif not isinstance(den, MultiPoly):
            den = MultiPoly.const(den, num.vars)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        num, den = num._align(den)
        if reduce:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num: MultiPoly, den: MultiPoly) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj.num, obj.den = num._align(den)
        return obj

    @classmethod
    def var(cls, name: str) -> "RationalFunction":
        return cls._raw(MultiPoly.var(name), MultiPoly.const(1, (name,)))

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls._raw(MultiPoly.const(c), MultiPoly.const(1))

    @property
    def vars(self):
        return self.num.vars

    def free_vars(self):
        return canonical_vars(self.num.free_vars() + self.den.free_vars())

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        return as_coeff(Fraction(self.num.constant_value()) / Fraction(self.den.constant_value()))

    def as_poly(self) -> MultiPoly:
        if not self.den.is_constant():
            raise ValueError("not a polynomial")
        return self.num / self.den.constant_value()

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, MultiPoly):
            return RationalFunction._raw(other, MultiPoly.const(1, other.vars))
        return RationalFunction.const(other)

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        g = gcd_poly(self.den, o.den)
        a = self.den.divexact(g)
        b = o.den.divexact(g)
        return RationalFunction(self.num * b + o.num * a, a * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o.is_constant():
            c = o.constant_value()
            if not c:
                return RationalFunction.const(0)
            return RationalFunction._raw(self.num.scale(c), self.den)
        g1 = gcd_poly(self.num, o.den)
        g2 = gcd_poly(o.num, self.den)
        n = self.num.divexact(g1) * o.num.divexact(g2)
        d = self.den.divexact(g2) * o.den.divexact(g1)
        return RationalFunction(n, d, reduce=False)._normalize()

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num, reduce=False)._normalize()

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction._raw(self.num ** n, self.den ** n)._normalize()

    def _normalize(self):
        """Fix the sign/content convention without a gcd."""
        den = self.den
        c = den.rational_content()
        if den.leading_coeff() < 0:
            c = -c
        if c != 1:
            return RationalFunction._raw(self.num.scale(1 / c), den.scale(1 / c))
        return self

    # -- calculus / substitution -----------------------------------------
    def diff(self, var: str) -> "RationalFunction":
        n, d = self.num, self.den
        dd = d.diff(var)
        if not dd:
            return RationalFunction._raw(n.diff(var), d)
        return RationalFunction(n.diff(var) * d - n * dd, d * d)

    def subs(self, values: Mapping[str, object]) -> "RationalFunction":
        """Substitute numbers, polynomials or rational functions."""
        rf = {k: v for k, v in values.items() if isinstance(v, RationalFunction) and not v.is_polynomial()}
        if not rf:
            vals = {k: (v.as_poly() if isinstance(v, RationalFunction) else v) for k, v in values.items()}
            n = self.num.subs(vals)
            d = self.den.subs(vals)
            if not d:
                raise ZeroDivisionError("denominator vanishes after substitution")
            return RationalFunction(n, d)
        num = compose_poly(self.num, values)
        den = compose_poly(self.den, values)
        if not den:
            raise ZeroDivisionError("denominator vanishes after substitution")
        return num / den

    def __call__(self, *args, **kwargs):
        values = dict(zip(self.vars, args))
        values.update(kwargs)
        r = self.subs(values)
        return r.constant_value() if r.is_constant() else r

    def eval(self, point: Mapping[str, object]):
        """Evaluate at a point given as a mapping; raises on a pole."""
        n = self.num.subs(point)
        d = self.den.subs(point)
        if not d:
            raise ZeroDivisionError("pole")
        if n.is_constant() and d.is_constant():
            return as_coeff(Fraction(n.constant_value()) / Fraction(d.constant_value()))
        return RationalFunction(n, d)

    # -- comparisons / display -------------------------------------------
    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        return format_rf(self)


def format_rf(r: RationalFunction, mul: str = "*", pow_: str = "^") -> str:
    n = format_poly(r.num, mul, pow_)
    if r.den.is_constant() and r.den.constant_value() == 1:
        return n
    d = format_poly(r.den, mul, pow_)
    if len(r.num) > 1:
        n = f"({n})"
    if not d.replace("^", "").isalnum():
        d = f"({d})"
    return f"{n}/{d}"


def _reduce(num: MultiPoly, den: MultiPoly):
    if not num:
        return MultiPoly.const(0, num.vars), MultiPoly.const(1, num.vars)
    if not den.is_constant():
        g = gcd_poly(num, den)
        if not g.is_constant():
            num = num.divexact(g)
            den = den.divexact(g)
    c = den.rational_content()
    if den.leading_coeff() < 0:
        c = -c
    if c != 1:
        num = num.scale(1 / c)
        den = den.scale(1 / c)
    return num, den


def compose_poly(p: MultiPoly, values: Mapping[str, object]) -> RationalFunction:
    """Substitute rational functions into a polynomial, sharing one denominator per variable.

    With u = a/b, a term c*u^k in a polynomial of u-degree n becomes
    c*a^k*b^(n-k) over b^n, so no gcds are needed until the final reduction.
    """
    num = p
    den = MultiPoly.const(1)
    vals = {}
    for k, v in values.items():
        if k not in p.vars:
            continue
        if not isinstance(v, RationalFunction):
            v = RationalFunction(v) if isinstance(v, MultiPoly) else RationalFunction.const(v)
        vals[k] = v
    # rename first so that the substitution is simultaneous
    fresh = {k: f"_{i}" for i, k in enumerate(vals)}
    num = num.rename(fresh)
    vals = {fresh[k]: v for k, v in vals.items()}
    for k, v in vals.items():
        n = num.degree(k)
        if n <= 0:
            num = num.subs({k: 0}) if n == 0 and k in num.vars else num
            continue
        coeffs = num.coeffs_in(k)
        a, b = v.num, v.den
        apow = [MultiPoly.const(1)]
        bpow = [MultiPoly.const(1)]
        for _ in range(n):
            apow.append(apow[-1] * a)
            bpow.append(bpow[-1] * b)
        acc = None
        for j, c in coeffs.items():
            term = c * apow[j] * bpow[n - j]
            acc = term if acc is None else acc + term
        num = acc
        den = den * bpow[n]
    return RationalFunction(num, den)
