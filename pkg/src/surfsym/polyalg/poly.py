"""Sparse multivariate polynomials with exact rational coefficients.

Coefficients are Python ``int`` when integral and :class:`fractions.Fraction`
otherwise, so integer-coefficient work (the common case after clearing
denominators) runs on machine-friendly ints.  Exponent vectors are tuples
aligned with ``vars``.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from operator import add, sub
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Exp = Tuple[int, ...]
Coeff = Union[int, Fraction]

# Canonical variable order; anything else sorts after these, alphabetically.
VAR_ORDER = ("t", "s", "u", "v", "w", "lam")


def _var_key(name: str):
    try:
        return (0, VAR_ORDER.index(name), "")
    except ValueError:
        return (1, 0, name)


def canonical_vars(names: Iterable[str]) -> Tuple[str, ...]:
    return tuple(sorted(set(names), key=_var_key))


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def as_coeff(c) -> Coeff:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, str):
        return _norm(Fraction(c))
    try:
        # gmpy2 / numpy scalars and the like
        return _norm(Fraction(c))
    except (TypeError, ValueError):
        raise TypeError(f"cannot use {c!r} as an exact coefficient") from None


def _grlex(e: Exp):
    return (sum(e), e)


class MultiPoly:
    """Immutable polynomial ``sum(c * prod(x_i ** e_i))``.

    Binary operations between polynomials over different variable tuples
    embed both into the canonical union of their variables.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms: Mapping[Exp, Coeff] | None = None, vars: Sequence[str] = ()):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean: Dict[Exp, Coeff] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                if c:
                    clean[tuple(e)] = as_coeff(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exp, Coeff], vars: Tuple[str, ...]) -> "MultiPoly":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c, vars: Sequence[str] = ()) -> "MultiPoly":
        vars = tuple(vars)
        c = as_coeff(c)
        return cls._raw({(0,) * len(vars): c} if c else {}, vars)

    @classmethod
    def var(cls, name: str, vars: Sequence[str] | None = None) -> "MultiPoly":
        vars = (name,) if vars is None else tuple(vars)
        if name not in vars:
            vars = canonical_vars(vars + (name,))
        e = tuple(1 if v == name else 0 for v in vars)
        return cls._raw({e: 1}, vars)

    @classmethod
    def from_univariate(cls, coeffs: Sequence, var: str) -> "MultiPoly":
        """Build from a low-to-high coefficient list."""
        return cls({(i,): c for i, c in enumerate(coeffs) if c}, (var,))

    # -- basic queries ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values())) if self.terms else 0

    def free_vars(self) -> Tuple[str, ...]:
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree if omitted); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def min_degree(self, var: str) -> int:
        if not self.terms or var not in self.vars:
            return 0
        i = self.vars.index(var)
        return min(e[i] for e in self.terms)

    def leading_exp(self) -> Exp:
        return max(self.terms, key=_grlex)

    def leading_coeff(self) -> Coeff:
        return self.terms[self.leading_exp()] if self.terms else 0

    def lex_leading_exp(self) -> Exp:
        return max(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex(kv[0]), reverse=True)

    def __len__(self) -> int:
        return len(self.terms)

    # -- variable handling ------------------------------------------------
    def embed(self, vars: Sequence[str]) -> "MultiPoly":
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = []
        for i, v in enumerate(self.vars):
            if v in vars:
                pos.append(vars.index(v))
            else:
                if any(e[i] for e in self.terms):
                    raise ValueError(f"variable {v!r} is used and cannot be dropped")
                pos.append(None)
        n = len(vars)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for k, j in zip(e, pos):
                if j is not None:
                    ne[j] = k
            out[tuple(ne)] = c
        return MultiPoly._raw(out, vars)

    def drop_unused(self) -> "MultiPoly":
        return self.embed(self.free_vars())

    def _align(self, other: "MultiPoly"):
        if self.vars == other.vars:
            return self, other
        vs = canonical_vars(self.vars + other.vars)
        return self.embed(vs), other.embed(vs)

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(other, self.vars)

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        new = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(new)) != len(new):
            raise ValueError("renaming collapses variables")
        p = MultiPoly._raw(dict(self.terms), new)
        return p.embed(canonical_vars(new))

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.vars)

    def __add__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other, self.vars)
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return MultiPoly._raw(out, a.vars)

    __radd__ = __add__

    def __sub__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other, self.vars)
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) - c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return MultiPoly._raw(out, a.vars)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = as_coeff(c)
        if not c:
            return MultiPoly._raw({}, self.vars)
        if c == 1:
            return self
        return MultiPoly._raw({e: _norm(v * c) for e, v in self.terms.items()}, self.vars)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        a, b = self._align(other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        if not b.terms:
            return MultiPoly._raw({}, a.vars)
        if len(b.terms) == 1:
            (eb, cb), = b.terms.items()
            return MultiPoly._raw(
                {tuple(map(add, ea, eb)): _norm(ca * cb) for ea, ca in a.terms.items()}, a.vars
            )
        out: Dict[Exp, Coeff] = {}
        get = out.get
        bitems = list(b.terms.items())
        for ea, ca in a.terms.items():
            for eb, cb in bitems:
                e = tuple(map(add, ea, eb))
                out[e] = get(e, 0) + ca * cb
        return MultiPoly._raw({e: _norm(c) for e, c in out.items() if c}, a.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.is_constant():
                other = other.constant_value()
            else:
                return self.divexact(other)
        if not other:
            raise ZeroDivisionError("division of polynomial by zero")
        return self.scale(Fraction(1) / as_coeff(other))

    def divexact(self, other: "MultiPoly") -> "MultiPoly":
        q, r = self.div(other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def div(self, other: "MultiPoly", exact_only: bool = False):
        """Multivariate division by a single divisor in grlex order.

        Returns ``(q, r)`` with ``self == q*other + r`` and no term of ``r``
        divisible by the leading term of ``other``.  With ``exact_only`` it
        bails out as soon as a non-divisible leading term appears (returns
        ``(None, nonzero)``).
        """
        a, b = self._align(other)
        if not b.terms:
            raise ZeroDivisionError("polynomial division by zero")
        vars = a.vars
        lb = b.leading_exp()
        lcb = b.terms[lb]
        brest = [(e, c) for e, c in b.terms.items() if e != lb]
        rem = dict(a.terms)
        heap = [tuple(-x for x in _flat_key(e)) for e in rem]
        heapq.heapify(heap)
        q: Dict[Exp, Coeff] = {}
        r: Dict[Exp, Coeff] = {}
        n = len(vars)
        while heap:
            key = heapq.heappop(heap)
            e = _unflat(tuple(-x for x in key), n)
            c = rem.pop(e, 0)
            # drop duplicate heap entries
            while heap and heap[0] == key:
                heapq.heappop(heap)
            if not c:
                continue
            if all(x >= y for x, y in zip(e, lb)):
                qe = tuple(map(sub, e, lb))
                if isinstance(c, int) and isinstance(lcb, int) and not c % lcb:
                    qc = c // lcb
                else:
                    qc = _norm(Fraction(c) / lcb)
                q[qe] = qc
                for eb, cb in brest:
                    ne = tuple(map(add, qe, eb))
                    old = rem.get(ne)
                    if old is None:
                        rem[ne] = -qc * cb
                        heapq.heappush(heap, tuple(-x for x in _flat_key(ne)))
                    else:
                        rem[ne] = old - qc * cb
            else:
                if exact_only:
                    return None, MultiPoly._raw({e: c}, vars)
                r[e] = _norm(c)
        return (MultiPoly._raw({e: _norm(c) for e, c in q.items()}, vars),
                MultiPoly._raw({e: c for e, c in r.items() if c}, vars))

    def divides(self, other: "MultiPoly") -> bool:
        """True when ``self`` divides ``other`` exactly."""
        if not self.terms:
            return not other.terms
        if not other.terms:
            return True
        from .modular import may_divide
        if not may_divide(self, other):
            return False
        q, r = other.div(self, exact_only=True)
        return q is not None and not r

    # -- calculus / substitution -----------------------------------------
    def diff(self, var: str) -> "MultiPoly":
        if var not in self.vars:
            return MultiPoly._raw({}, self.vars)
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return MultiPoly._raw(out, self.vars)

    def coeffs_in(self, var: str) -> Dict[int, "MultiPoly"]:
        """Coefficients w.r.t. ``var`` as polynomials in the remaining variables."""
        if var not in self.vars:
            rest = self.vars
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        groups: Dict[int, Dict[Exp, Coeff]] = {}
        for e, c in self.terms.items():
            groups.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: MultiPoly._raw(g, rest) for k, g in groups.items()}

    @classmethod
    def from_coeffs_in(cls, coeffs: Mapping[int, "MultiPoly"], var: str) -> "MultiPoly":
        out = None
        for k, c in coeffs.items():
            term = c * MultiPoly.var(var, canonical_vars(c.vars + (var,))) ** k
            out = term if out is None else out + term
        return out if out is not None else MultiPoly.const(0, (var,))

    def subs(self, values: Mapping[str, object]) -> "MultiPoly":
        """Substitute numbers or polynomials for variables (all at once)."""
        values = {k: v for k, v in values.items() if k in self.vars}
        if not values:
            return self
        polys = {k: v for k, v in values.items() if isinstance(v, MultiPoly)}
        if not polys:
            return self._subs_numbers(values)
        keep = tuple(v for v in self.vars if v not in values)
        target = canonical_vars(keep + sum((p.vars for p in polys.values()), ()))
        idx = [(i, values[v]) for i, v in enumerate(self.vars) if v in values]
        keep_idx = [i for i, v in enumerate(self.vars) if v not in values]
        base_vars = tuple(self.vars[i] for i in keep_idx)
        powers: Dict[Tuple[int, int], MultiPoly] = {}

        def power(i, val, k):
            key = (i, k)
            if key not in powers:
                if isinstance(val, MultiPoly):
                    powers[key] = val.embed(target) ** k if k else MultiPoly.const(1, target)
                else:
                    powers[key] = MultiPoly.const(as_coeff(val) ** k, target)
            return powers[key]

        # group terms by the kept exponents to share the substituted products
        out = MultiPoly.const(0, target)
        groups: Dict[Exp, list] = {}
        for e, c in self.terms.items():
            groups.setdefault(tuple(e[i] for i in keep_idx), []).append((e, c))
        for ke, items in groups.items():
            acc = MultiPoly.const(0, target)
            for e, c in items:
                term = MultiPoly.const(c, target)
                for i, val in idx:
                    if e[i]:
                        term = term * power(i, val, e[i])
                acc = acc + term
            mono = MultiPoly._raw({ke: 1}, base_vars).embed(target)
            out = out + acc * mono
        return out

    def _subs_numbers(self, values: Mapping[str, object]) -> "MultiPoly":
        keep_idx = [i for i, v in enumerate(self.vars) if v not in values]
        sub_idx = [(i, as_coeff(values[v])) for i, v in enumerate(self.vars) if v in values]
        new_vars = tuple(self.vars[i] for i in keep_idx)
        cache: Dict[Tuple[int, int], Coeff] = {}
        out: Dict[Exp, Coeff] = {}
        for e, c in self.terms.items():
            val = c
            for i, x in sub_idx:
                k = e[i]
                if k:
                    key = (i, k)
                    pk = cache.get(key)
                    if pk is None:
                        pk = cache[key] = x ** k
                    val = val * pk
            ne = tuple(e[i] for i in keep_idx)
            out[ne] = out.get(ne, 0) + val
        return MultiPoly._raw({e: _norm(c) for e, c in out.items() if c}, new_vars)

    def __call__(self, *args, **kwargs):
        """Evaluate at a point; positional args follow ``vars``."""
        values = dict(zip(self.vars, args))
        values.update(kwargs)
        p = self.subs(values)
        return p.constant_value() if p.is_constant() else p

    # -- content ----------------------------------------------------------
    def rational_content(self) -> Fraction:
        """Positive rational c with self/c integral and primitive."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            if isinstance(c, int):
                num = gcd(num, c)
            else:
                num = gcd(num, c.numerator)
                den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "MultiPoly":
        """Integer primitive part with positive grlex-leading coefficient."""
        if not self.terms:
            return self
        c = self.rational_content()
        if self.leading_coeff() < 0:
            c = -c
        if c == 1:
            return self
        if c.denominator == 1 and self.is_integral():
            k = c.numerator
            return MultiPoly._raw({e: v // k for e, v in self.terms.items()}, self.vars)
        return self.scale(1 / c)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def monic(self) -> "MultiPoly":
        lc = self.leading_coeff()
        return self.scale(Fraction(1) / lc) if lc != 1 else self

    # -- comparisons / display -------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other, self.vars)
            except TypeError:
                return NotImplemented
        if self.vars != other.vars:
            a, b = self._align(other)
            return a.terms == b.terms
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            p = self.drop_unused()
            self._hash = hash((p.vars, frozenset(p.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        return format_poly(self)


def _flat_key(e: Exp):
    return (sum(e),) + e


def _unflat(key, n):
    return tuple(key[1:1 + n])


def _fmt_coeff(c) -> str:
    return str(c)


def format_poly(p: MultiPoly, mul: str = "*", pow_: str = "^") -> str:
    if not p.terms:
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        mono = mul.join(
            v if k == 1 else f"{v}{pow_}{k}" for v, k in zip(p.vars, e) if k
        )
        neg = c < 0
        a = -c if neg else c
        if mono:
            if a == 1:
                body = mono
            elif isinstance(a, Fraction):
                body = f"{a.numerator}/{a.denominator}{mul}{mono}" if a.numerator == 1 else f"{a.numerator}{mul}{mono}/{a.denominator}"
            else:
                body = f"{a}{mul}{mono}"
        else:
            body = str(a)
        parts.append(("-" if neg else "+", body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def poly_vars(*names: str) -> Tuple[MultiPoly, ...]:
    """Generators over the canonical ordering of ``names``."""
    vs = canonical_vars(names)
    return tuple(MultiPoly.var(n, vs) for n in names)


def _rational_sqrt(c):
    from math import isqrt

    c = Fraction(c)
    if c < 0:
        return None
    n, d = c.numerator, c.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return _norm(Fraction(rn, rd))


def sqrt_poly(p: MultiPoly):
    """Exact square root with positive leading coefficient, or None."""
    if not p.terms:
        return p
    vars = p.vars
    order = lambda e: (sum(e), e)  # noqa: E731
    lo = min(p.terms, key=order)
    if any(k % 2 for k in lo):
        return None
    lo_half = tuple(k // 2 for k in lo)
    lt = p.leading_exp()
    if any(k % 2 for k in lt):
        return None
    c0 = _rational_sqrt(p.terms[lt])
    if c0 is None:
        return None
    e0 = tuple(k // 2 for k in lt)
    root = MultiPoly._raw({e0: c0}, vars)
    rem = p - root * root
    two_lead = 2 * c0
    while rem:
        le = rem.leading_exp()
        qe = tuple(a - b for a, b in zip(le, e0))
        if any(k < 0 for k in qe) or order(qe) < order(lo_half):
            return None
        qc = _norm(Fraction(rem.terms[le]) / two_lead)
        term = MultiPoly._raw({qe: qc}, vars)
        rem = rem - (root * 2 + term) * term
        root = root + term
    return root
