"""Exact scalar arithmetic over the Gaussian rationals Q(i).

``Fraction`` from the standard library plays the role of the arbitrary
precision rational.  :class:`GaussRat` pairs two of them, :class:`Poly` is a
dense univariate polynomial with :class:`GaussRat` coefficients (lowest
degree first) and :class:`RatFun` is a reduced quotient of two polynomials.
All values are immutable.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import _kernels
from .errors import BothZero, DivisionByZeroPoly, InputError, NumericRootFailure, ZeroPolynomial

__all__ = [
    "GaussRat",
    "Poly",
    "RatFun",
    "RootSet",
    "Z",
    "poly_divrem",
    "poly_gcd",
    "poly_lcm",
    "squarefree_decompose",
    "roots_with_multiplicity",
    "coprime_base",
    "multiplicity",
    "format_rational",
    "parse_gaussrat",
]

# relative residual accepted for a numerically located root
NUMERIC_ROOT_RTOL = 1e-10


def _frac(x) -> Fraction:
    if type(x) is Fraction:
        return x
    if type(x) is int:
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, (Rational, str)):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


class GaussRat:
    """Complex number a + b i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> GaussRat:
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, x) -> GaussRat:
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, str):
            return parse_gaussrat(x)
        return cls(x)

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussRat._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussRat._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussRat._raw(a * c, b)
        return GaussRat._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussRat._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def conj(self) -> GaussRat:
        return GaussRat._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        """|a|^2, an exact rational."""
        return self.re * self.re + self.im * self.im

    def inv(self) -> GaussRat:
        if not self:
            raise ZeroDivisionError("GaussRat division by zero")
        if not self.im:
            return GaussRat._raw(1 / self.re, self.im)
        n = self.norm()
        return GaussRat._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison / conversion -----------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({format_gaussrat(self)})"

    def __str__(self):
        return format_gaussrat(self)


_F0 = Fraction(0)
ZERO = GaussRat._raw(_F0, _F0)
ONE = GaussRat._raw(Fraction(1), Fraction(0))
I_UNIT = GaussRat._raw(Fraction(0), Fraction(1))


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_gaussrat(a: GaussRat) -> str:
    """Canonical string: ``p/q``, ``c/d*i`` or ``a/b+c/d*i``."""
    if not a.im:
        return format_rational(a.re)
    im = a.im
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = f"{format_rational(im)}*i"
    if not a.re:
        return ims
    sign = "" if ims.startswith("-") else "+"
    return f"{format_rational(a.re)}{sign}{ims}"


def parse_gaussrat(text: str) -> GaussRat:
    """Inverse of :func:`format_gaussrat`; also accepts ``a+bi`` and ``inf``-free forms."""
    s = text.replace(" ", "")
    if not s:
        raise InputError("empty number")
    if not s.endswith("i"):
        try:
            return GaussRat(Fraction(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad number {text!r}") from exc
    body = s[:-1]
    if body.endswith("*"):
        body = body[:-1]
    # split at the last sign that is not leading and not after 'e'
    cut = None
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE/":
            cut = k
            break
    try:
        if cut is None:
            re, im = "0", body
        else:
            re, im = body[:cut], body[cut:]
        if im in ("", "+"):
            im = "1"
        elif im == "-":
            im = "-1"
        return GaussRat(Fraction(re), Fraction(im))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad number {text!r}") from exc


# ----------------------------------------------------------------------
# polynomials


def _conv(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_convolve(fa, fb):
    """Coefficients of a product from the integer forms of both factors."""
    da, ra, ia = fa
    db, rb, ib = fb
    re = _conv(ra, rb)
    im = None
    if ia is not None or ib is not None:
        im = [0] * len(re)
        if ia is not None and ib is not None:
            re = [x - y for x, y in zip(re, _conv(ia, ib))]
        if ia is not None:
            im = [x + y for x, y in zip(im, _conv(ia, rb))]
        if ib is not None:
            im = [x + y for x, y in zip(im, _conv(ra, ib))]
    d = da * db
    if im is None:
        return [GaussRat._raw(Fraction(x, d), _F0) if x else ZERO for x in re]
    return [GaussRat._raw(Fraction(x, d), Fraction(y, d)) for x, y in zip(re, im)]


class Poly:
    """Dense polynomial in ``z`` with GaussRat coefficients, lowest first.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs", "_ints")

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, GaussRat) else GaussRat.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, cs) -> Poly:
        cs = list(cs)
        while cs and not cs[-1]:
            cs.pop()
        obj = object.__new__(cls)
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def const(cls, c) -> Poly:
        return cls._raw([GaussRat.coerce(c)])

    @classmethod
    def monomial(cls, k: int, c=1) -> Poly:
        return cls._raw([ZERO] * k + [GaussRat.coerce(c)])

    @classmethod
    def linear_root(cls, alpha) -> Poly:
        """The monic polynomial z - alpha."""
        return cls._raw([-GaussRat.coerce(alpha), ONE])

    # basic properties -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> GaussRat:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> GaussRat:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def is_real(self) -> bool:
        return all(not c.im for c in self.coeffs)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = GaussRat.coerce(other)
            if not c:
                return ZERO_POLY
            return Poly._raw([x * c for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        if len(b) == 1:
            c = b[0]
            return Poly._raw([x * c for x in a])
        if len(a) == 1:
            c = a[0]
            return Poly._raw([x * c for x in b])
        return Poly._raw(_int_convolve(self._int_form(), other._int_form()))

    __rmul__ = __mul__

    def _int_form(self):
        """(common denominator, integer real parts, integer imaginary parts or None), cached."""
        try:
            return self._ints
        except AttributeError:
            pass
        den = 1
        for c in self.coeffs:
            den = math.lcm(den, c.re.denominator, c.im.denominator)
        re = [c.re.numerator * (den // c.re.denominator) for c in self.coeffs]
        im = None
        if any(c.im for c in self.coeffs):
            im = [c.im.numerator * (den // c.im.denominator) for c in self.coeffs]
        self._ints = (den, re, im)
        return self._ints

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = ONE_POLY
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, c):
        if isinstance(c, (Poly, RatFun)):
            return RatFun(self) / c
        return self * GaussRat.coerce(c).inv()

    def scale(self, c) -> Poly:
        return self * GaussRat.coerce(c)

    def divrem(self, other: Poly):
        return poly_divrem(self, other)

    def __floordiv__(self, other):
        return poly_divrem(self, other)[0]

    def __mod__(self, other):
        return poly_divrem(self, other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = poly_divrem(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == ONE:
            return self
        inv = lc.inv()
        return Poly._raw([c * inv for c in self.coeffs])

    def deriv(self) -> Poly:
        return Poly._raw([c * k for k, c in enumerate(self.coeffs)][1:])

    def conj(self) -> Poly:
        """Conjugate every coefficient: p*(z) with p*(z) = conj(p(conj z))."""
        return Poly._raw([c.conj() for c in self.coeffs])

    def reverse(self, d: int) -> Poly:
        """z^d p(1/z) for d >= deg p."""
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        cs = list(self.coeffs) + [ZERO] * (d + 1 - len(self.coeffs))
        return Poly._raw(cs[::-1])

    def shift(self, alpha) -> Poly:
        """Coefficients of p(z + alpha): the Taylor coefficients at alpha."""
        alpha = GaussRat.coerce(alpha)
        cs = list(self.coeffs)
        n = len(cs)
        for k in range(n - 1):
            for j in range(n - 2, k - 1, -1):
                cs[j] = cs[j] + alpha * cs[j + 1]
        return Poly._raw(cs)

    def compose(self, other: Poly) -> Poly:
        result = ZERO_POLY
        for c in reversed(self.coeffs):
            result = result * other + Poly._raw([c])
        return result

    # evaluation -------------------------------------------------------
    def __call__(self, x):
        if isinstance(x, (complex, float)) or isinstance(x, np.generic):
            acc = 0j
            for c in reversed(self.coeffs):
                acc = acc * x + complex(c)
            return acc
        x = GaussRat.coerce(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_numpy(self) -> np.ndarray:
        """Complex coefficients, lowest degree first."""
        return np.array([complex(c) for c in self.coeffs], dtype=np.complex128)

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, GaussRat)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def sort_key(self):
        return (self.degree, tuple((c.re, c.im) for c in reversed(self.coeffs)))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


ZERO_POLY = Poly._raw([])
ONE_POLY = Poly._raw([ONE])
Z = Poly._raw([ZERO, ONE])


def format_poly(p: Poly, var: str = "z") -> str:
    """Render a polynomial as an expression the entry parser accepts."""
    if not p:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        cs = format_gaussrat(c)
        if c.im and c.re:
            cs = f"({cs})"
        mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mon:
            term = cs
        elif c == ONE:
            term = mon
        elif c == -ONE:
            term = f"-{mon}"
        else:
            term = f"{cs}*{mon}"
        parts.append(term)
    out = parts[0]
    for t in parts[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def poly_divrem(a: Poly, b: Poly):
    """Euclidean division a = q*b + r with deg r < deg b."""
    if not b:
        raise DivisionByZeroPoly("division by the zero polynomial")
    db = b.degree
    if a.degree < db:
        return ZERO_POLY, a
    inv = b.coeffs[-1].inv()
    rem = list(a.coeffs)
    bc = b.coeffs
    quot = [ZERO] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if not c:
            continue
        f = c * inv
        quot[k - db] = f
        for j in range(db):
            if bc[j]:
                rem[k - db + j] = rem[k - db + j] - f * bc[j]
        rem[k] = ZERO
    return Poly._raw(quot), Poly._raw(rem[:db])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    if not a and not b:
        raise BothZero("gcd of two zero polynomials")
    a, b = a.monic(), b.monic()
    while b:
        _, r = poly_divrem(a, b)
        a, b = b, r.monic()
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ZERO_POLY
    return (a * b.exact_div(poly_gcd(a, b))).monic()


def multiplicity(p: Poly, factor: Poly) -> int:
    """Largest k with factor^k | p (factor non-constant, p nonzero)."""
    if not p:
        raise ZeroPolynomial("multiplicity in the zero polynomial")
    if factor.degree < 1:
        raise ValueError("factor must be non-constant")
    k = 0
    while p.degree >= factor.degree:
        q, r = poly_divrem(p, factor)
        if r:
            break
        p = q
        k += 1
    return k


def squarefree_decompose(p: Poly):
    """Yun's algorithm: list of (monic factor, multiplicity), multiplicities increasing."""
    if not p:
        raise ZeroPolynomial("square-free decomposition of the zero polynomial")
    f = p.monic()
    if f.degree < 1:
        return []
    df = f.deriv()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.deriv()
    out = []
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        b = b.exact_div(g)
        c = d.exact_div(g)
        if g.degree > 0:
            out.append((g, i))
        d = c - b.deriv()
        i += 1
    return out


def coprime_base(polys) -> list:
    """Pairwise coprime, square-free, monic polynomials whose products give every input.

    Each input (up to a constant) is a product of powers of the returned
    elements, so all roots of one element share the same multiplicity in
    every input.
    """
    pending = []
    for p in polys:
        if p and p.degree > 0:
            pending.extend(f for f, _ in squarefree_decompose(p))
    base: list = []
    while pending:
        f = pending.pop()
        if f.degree < 1:
            continue
        merged = False
        for idx, g in enumerate(base):
            h = poly_gcd(f, g)
            if h.degree > 0:
                base.pop(idx)
                parts = [h, f.exact_div(h), g.exact_div(h)]
                pending.extend(x.monic() for x in parts if x.degree > 0)
                merged = True
                break
        if not merged:
            base.append(f)
    return sorted(base, key=Poly.sort_key)


# ----------------------------------------------------------------------
# rational functions


class RatFun:
    """Reduced quotient num/den with den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if den is None:
            den = ONE_POLY
        elif not isinstance(den, Poly):
            den = Poly.const(den)
        if not den:
            raise DivisionByZeroPoly("rational function with zero denominator")
        if not num:
            self.num, self.den = ZERO_POLY, ONE_POLY
            return
        if den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        lc = den.lc
        if lc != ONE:
            inv = lc.inv()
            num = num * inv
            den = den * inv
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> RatFun:
        obj = object.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def coerce(cls, x) -> RatFun:
        if isinstance(x, RatFun):
            return x
        if isinstance(x, Poly):
            return cls._raw(x, ONE_POLY)
        return cls._raw(Poly.const(x), ONE_POLY)

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __add__(self, other):
        other = RatFun.coerce(other)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatFun.coerce(other))

    def __rsub__(self, other):
        return RatFun.coerce(other) - self

    def __mul__(self, other):
        other = RatFun.coerce(other)
        if not self.num or not other.num:
            return ZERO_RF
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self) -> RatFun:
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        return self * RatFun.coerce(other).inv()

    def __rtruediv__(self, other):
        return RatFun.coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return RatFun._raw(self.num**k, self.den**k)

    def deriv(self) -> RatFun:
        return RatFun(self.num.deriv() * self.den - self.num * self.den.deriv(), self.den * self.den)

    def conj(self) -> RatFun:
        return RatFun._raw(self.num.conj(), self.den.conj())

    def valuation(self, factor: Poly) -> int:
        """Signed order along a square-free factor (or at a point for z - alpha)."""
        if not self.num:
            raise ZeroPolynomial("valuation of the zero function")
        return multiplicity(self.num, factor) - (multiplicity(self.den, factor) if self.den.degree > 0 else 0)

    def val_at(self, alpha) -> int:
        return self.valuation(Poly.linear_root(alpha))

    def __call__(self, x):
        d = self.den(x)
        if isinstance(d, complex):
            return self.num(x) / d
        if not d:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(x) / d

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int, Fraction, GaussRat)):
            return self == RatFun.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFun({self})"

    def __str__(self):
        if self.den.degree == 0:
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


ZERO_RF = RatFun._raw(ZERO_POLY, ONE_POLY)
ONE_RF = RatFun._raw(ONE_POLY, ONE_POLY)


# ----------------------------------------------------------------------
# roots


@dataclass(frozen=True)
class RootSet:
    """Roots of a polynomial with multiplicities.

    ``residual_factors`` holds the exact square-free factors (with their
    multiplicity in the input) whose roots could only be located
    numerically; ``numeric_roots`` are their roots.  The residual bound of a
    numeric root refers to its square-free factor.
    """

    exact_roots: list = field(default_factory=list)
    numeric_roots: list = field(default_factory=list)
    residual_factors: list = field(default_factory=list)

    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.exact_roots) + sum(m for _, m, _ in self.numeric_roots)

    def as_dict(self) -> dict:
        return dict(self.exact_roots)


def _gauss_round(x: complex) -> GaussRat:
    return GaussRat(int(round(x.real)), int(round(x.imag)))


def _clear_denominators(p: Poly) -> Poly:
    den = 1
    for c in p.coeffs:
        den = math.lcm(den, c.re.denominator, c.im.denominator)
    return p * den


def numeric_roots(p: Poly) -> np.ndarray:
    """All complex roots of p: companion-matrix eigenvalues polished by Aberth."""
    if p.degree < 1:
        return np.zeros(0, dtype=np.complex128)
    c = p.monic().to_numpy()
    if p.degree == 1:
        return np.array([-c[0]], dtype=np.complex128)
    start = np.roots(c[::-1]).astype(np.complex128)
    return _kernels.aberth(c, start)


def _split_exact(f: Poly):
    """Exact Gaussian-rational roots of the square-free f, and the leftover factor."""
    found = []
    if f.degree < 1:
        return found, f
    while f.degree >= 1 and not f.coeffs[0]:
        found.append(ZERO)
        f = Poly._raw(f.coeffs[1:])
    while f.degree >= 1:
        if f.degree == 1:
            found.append(-f.coeffs[0] / f.coeffs[1])
            f = ONE_POLY
            break
        lead = _clear_denominators(f).lc
        clc = complex(lead)
        hit = None
        for r in numeric_roots(f):
            cand = _gauss_round(clc * r) / lead
            if not f(cand):
                hit = cand
                break
        if hit is None:
            break
        found.append(hit)
        f = f.exact_div(Poly.linear_root(hit))
    return found, f.monic()


def roots_with_multiplicity(p: Poly) -> RootSet:
    """Exact roots where they lie in Q(i); numeric roots for the rest.

    Candidates follow the rational root theorem: the denominator of an
    exact root divides the leading coefficient of the denominator-cleared
    square-free factor, and the numerator is read off the numeric root.
    Every exact root is confirmed by exact evaluation.
    """
    if not p:
        raise ZeroPolynomial("roots of the zero polynomial")
    exact, numeric, leftovers = _roots_cached(p)
    return RootSet(list(exact), list(numeric), list(leftovers))


@functools.lru_cache(maxsize=2048)
def _roots_cached(p: Poly) -> tuple:
    exact, numeric, leftovers = [], [], []
    for f, mult in squarefree_decompose(p):
        found, rest = _split_exact(f)
        exact.extend((r, mult) for r in found)
        if rest.degree >= 1:
            leftovers.append((rest, mult))
            cs = rest.to_numpy()
            absc = np.abs(cs)
            for r in numeric_roots(rest):
                resid = abs(np.polyval(cs[::-1], r))
                bound = NUMERIC_ROOT_RTOL * float(np.sum(absc * np.abs(r) ** np.arange(len(cs))))
                if resid > bound:
                    raise NumericRootFailure(f"root {r} of {rest} has residual {resid:.3e} > {bound:.3e}")
                numeric.append((complex(r), mult, bound))
    exact.sort(key=lambda rm: (rm[0].re, rm[0].im))
    numeric.sort(key=lambda rmb: (rmb[0].real, rmb[0].imag))
    return tuple(exact), tuple(numeric), tuple(leftovers)
