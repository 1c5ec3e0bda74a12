"""Exact Gaussian rationals and the small amount of exact linear algebra built on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def parse_rational(s: str) -> Fraction:
    """Parse ``"p/q"`` or an integer string into a Fraction.

    Decimal strings and floats are refused: they usually stand for irrational
    or rounded values and would silently break exactness.
    """
    s = s.strip()
    if not s:
        raise ValueError("empty rational string")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational 'p/q': {s!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {s!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, slots=True)
class GaussRat:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    @classmethod
    def coerce(cls, x) -> GaussRat:
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return cls(x[0], x[1])
        return cls(x, 0)

    @classmethod
    def parse(cls, pair) -> GaussRat:
        """Parse a ``[re, im]`` pair of rational strings."""
        if isinstance(pair, str) or len(pair) != 2:
            raise ValueError(f"expected [re, im] pair, got {pair!r}")
        re, im = pair
        if not isinstance(re, str) or not isinstance(im, str):
            raise ValueError("complex parts must be rational strings like '1/3'")
        return cls(parse_rational(re), parse_rational(im))

    def to_pair(self) -> list[str]:
        return [format_rational(self.re), format_rational(self.im)]

    # arithmetic

    def __add__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conj()
        return GaussRat(num.re / d, num.im / d)

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) / self

    def __eq__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({format_rational(self.re)}, {format_rational(self.im)})"

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"

    def conj(self) -> GaussRat:
        return GaussRat(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0


ZERO = GaussRat(0, 0)
ONE = GaussRat(1, 0)
I = GaussRat(0, 1)


def sign(x: Fraction | int) -> int:
    return (x > 0) - (x < 0)


def dot(a: Sequence[GaussRat], z: Sequence) -> GaussRat:
    """Bilinear pairing sum(a_j z_j) without conjugation."""
    total = ZERO
    for aj, zj in zip(a, z, strict=True):
        total = total + aj * zj
    return total


def cross(u: GaussRat, v: GaussRat) -> Fraction:
    """det of (u, v) viewed as real 2-vectors, i.e. Im(conj(u) v)."""
    return u.re * v.im - u.im * v.re


def solve2(w1: GaussRat, w2: GaussRat, v: GaussRat) -> tuple[Fraction, Fraction]:
    """Real coordinates (x, y) with v = x w1 + y w2; w1, w2 must be R-independent."""
    det = cross(w1, w2)
    if det == 0:
        raise ZeroDivisionError("w1 and w2 are real-collinear")
    return cross(v, w2) / det, cross(w1, v) / det


def primitive_integer_vector(v: Iterable[Fraction]) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector.

    The direction (including sign) is preserved.
    """
    v = [Fraction(x) for x in v]
    if not any(v):
        raise ValueError("zero vector has no primitive multiple")
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with leftmost pivots; zero rows dropped."""
    m = [[Fraction(x) for x in r] for r in rows]
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column, in column order."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def inverse(mat: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse of a square rational matrix."""
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]
