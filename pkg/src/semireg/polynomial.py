"""Exact-rational univariate polynomials with Sturm-sequence root isolation.

Coefficients are stored as :class:`fractions.Fraction`, lowest power first.
Floats passed in are converted exactly, so the only rounding happens in the
final conversion of an isolated root to ``float``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import NoRootError, ParameterError

__all__ = ["RealPolynomial", "smallest_real_root"]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    return Fraction(float(c))


class RealPolynomial:
    """Polynomial with rational coefficients ``c[0] + c[1] x + ...``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        c = [_frac(v) for v in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [Fraction(0)]
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def from_roots(cls, roots: Sequence) -> "RealPolynomial":
        out = cls([1])
        for r in roots:
            out = out * cls([-_frac(r), 1])
        return out

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.degree < 0

    def __repr__(self):
        return f"RealPolynomial({[str(c) for c in self.coeffs]})"

    def __eq__(self, other):
        if not isinstance(other, RealPolynomial):
            other = RealPolynomial([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, RealPolynomial):
            other = RealPolynomial([other])
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return RealPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self):
        return RealPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, RealPolynomial) else RealPolynomial([-_frac(other)]))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RealPolynomial):
            k = _frac(other)
            return RealPolynomial(c * k for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return RealPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = RealPolynomial([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x):
        """Horner evaluation; exact for rational ``x``, float otherwise."""
        acc = 0 if isinstance(x, (int, Fraction)) else 0.0
        if isinstance(x, (int, Fraction)):
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def derivative(self) -> "RealPolynomial":
        return RealPolynomial(i * c for i, c in enumerate(self.coeffs) if i) if self.degree > 0 else RealPolynomial([0])

    def divmod(self, other: "RealPolynomial") -> tuple["RealPolynomial", "RealPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - other.degree, 1)
        lead = other.coeffs[-1]
        db = other.degree
        while len(rem) - 1 >= db and any(rem):
            shift = len(rem) - 1 - db
            f = rem[-1] / lead
            q[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= f * c
            rem.pop()
            while len(rem) > 1 and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < db:
                break
        return RealPolynomial(q), RealPolynomial(rem)

    def monic(self) -> "RealPolynomial":
        lead = self.coeffs[-1]
        return RealPolynomial(c / lead for c in self.coeffs)

    def gcd(self, other: "RealPolynomial") -> "RealPolynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def squarefree(self) -> "RealPolynomial":
        """Product of the distinct irreducible factors (same roots, all simple)."""
        if self.degree <= 0:
            return self
        g = self.gcd(self.derivative())
        return self.divmod(g)[0].monic()

    def strip_root_at_zero(self) -> "RealPolynomial":
        """Divide out every factor of ``x``."""
        c = list(self.coeffs)
        while len(c) > 1 and c[0] == 0:
            c.pop(0)
        return RealPolynomial(c)

    def to_float_list(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    # -- root isolation ---------------------------------------------------

    def sturm_chain(self) -> list["RealPolynomial"]:
        chain = [self, self.derivative()]
        while not chain[-1].is_zero() and chain[-1].degree > 0:
            rem = chain[-2].divmod(chain[-1])[1]
            if rem.is_zero():
                break
            chain.append(-rem)
        return chain

    def root_bound(self) -> Fraction:
        """Cauchy bound: all real roots lie in ``[-B, B]``."""
        lead = abs(self.coeffs[-1])
        return 1 + max((abs(c) / lead for c in self.coeffs[:-1]), default=Fraction(0))

    def real_roots(self, lo=None, hi=None, tol: float = 1e-14) -> list[float]:
        """Distinct real roots in ``[lo, hi]``, ascending.

        Roots are isolated with Sturm counts on the square-free part and
        refined by exact bisection until the bracket is narrower than
        ``tol * max(1, |root|)``.
        """
        if self.is_zero():
            raise ParameterError("the zero polynomial has no isolated roots")
        if self.degree == 0:
            return []
        p = self.squarefree()
        bound = p.root_bound()
        lo = -bound if lo is None else _frac(lo)
        hi = bound if hi is None else _frac(hi)
        if lo > hi:
            raise ParameterError("need lo <= hi")
        chain = p.sturm_chain()

        def variations(x: Fraction) -> int:
            signs = [s for s in (q(x) for q in chain) if s != 0]
            return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))

        roots: list[float] = []
        if p(lo) == 0:
            roots.append(float(lo))
        # Sturm counts distinct roots in the half-open interval (a, b]
        work = [(lo, hi, variations(lo), variations(hi))]
        brackets = []
        while work:
            a, b, va, vb = work.pop()
            k = va - vb
            if k == 0:
                continue
            if k == 1:
                brackets.append((a, b))
                continue
            mid = (a + b) / 2
            vm = variations(mid)
            work.append((a, mid, va, vm))
            work.append((mid, b, vm, vb))
        for a, b in sorted(brackets):
            roots.append(_refine(p, a, b, tol))
        return sorted(roots)


def _refine(p: RealPolynomial, a: Fraction, b: Fraction, tol: float) -> float:
    """Bisect the single simple root of ``p`` in ``(a, b]``."""
    if p(b) == 0:
        return float(b)
    fb = p(b) > 0
    while True:
        width = b - a
        if width <= Fraction(tol) * max(1, abs(a), abs(b)):
            break
        mid = (a + b) / 2
        # shrink the rationals so the bisection does not blow up denominators
        mid = mid.limit_denominator(1 << 200) if mid.denominator > (1 << 256) else mid
        fm = p(mid)
        if fm == 0:
            return float(mid)
        if (fm > 0) == fb:
            b = mid
        else:
            a = mid
    return float((a + b) / 2)


def smallest_real_root(poly: RealPolynomial, lo, hi, tol: float = 1e-14) -> float:
    """Smallest real root of ``poly`` in ``[lo, hi]``."""
    if not lo < hi:
        raise ParameterError("need lo < hi")
    roots = poly.real_roots(lo, hi, tol)
    if not roots:
        raise NoRootError(f"no real root in [{float(lo)}, {float(hi)}]")
    return roots[0]
