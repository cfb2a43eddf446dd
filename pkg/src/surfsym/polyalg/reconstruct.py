"""Rational function reconstruction from point samples."""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import List, Sequence, Tuple

from .linalg import nullspace_q
from .poly import MultiPoly
from .ratfunc import RationalFunction


class NoConsistentBranch(ValueError):
    """The samples are not explained by a rational function of the given degree."""

    def __init__(self, msg: str = "no consistent branch"):
        super().__init__(msg)


def monomials(deg: int, nvars: int = 2) -> List[Tuple[int, ...]]:
    """Exponents of total degree <= deg, ascending grlex."""
    return sorted((e for e in product(range(deg + 1), repeat=nvars) if sum(e) <= deg),
                  key=lambda e: (sum(e), e))


def reconstruct_rational_function(
    samples: Sequence[Tuple[Tuple, object]],
    degree_bound: int,
    vars: Sequence[str] = ("t", "s"),
    holdout: int = 10,
) -> RationalFunction:
    """Rational function of total degree <= D (numerator and denominator) matching samples.

    Solves num(p_i) - value_i * den(p_i) = 0; the last ``holdout`` samples are
    kept back and must agree with the result.
    """
    vars = tuple(vars)
    mons = monomials(degree_bound, len(vars))
    m = len(mons)
    need = 2 * m
    if len(samples) < need:
        raise ValueError(f"need at least {need} samples for degree bound {degree_bound}")
    hold = min(holdout, len(samples) - need)
    fit = samples[: len(samples) - hold] if hold else samples
    check = samples[len(samples) - hold:] if hold else []
    rows = []
    for pt, val in fit:
        pt = [Fraction(x) for x in pt]
        val = Fraction(val)
        mv = [_mono_val(e, pt) for e in mons]
        rows.append(mv + [-val * x for x in mv])
    basis = nullspace_q(rows, 2 * m)
    if not basis:
        raise NoConsistentBranch()
    vec = basis[0]
    num = MultiPoly({e: c for e, c in zip(mons, vec[:m]) if c}, vars)
    den = MultiPoly({e: c for e, c in zip(mons, vec[m:]) if c}, vars)
    if not den:
        raise NoConsistentBranch()
    f = RationalFunction(num, den)
    for pt, val in list(fit) + list(check):
        env = dict(zip(vars, pt))
        d = f.den.subs(env)
        if not d or f.eval(env) != Fraction(val):
            raise NoConsistentBranch()
    return f


def _mono_val(e, pt):
    v = Fraction(1)
    for x, k in zip(pt, e):
        if k:
            v *= x ** k
    return v
