"""The value group {<a, k> : k in Z^n} of a linear form, its generators and index counts.

All arithmetic is exact.  Functions taking a ``form`` accept anything with an
``a`` attribute (LinearForm, ClassifiedForm) or a plain coefficient sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd, lcm

from .gaussrat import GaussRat, cross, solve2


class DegenerateLattice(ArithmeticError):
    """The values <a, k> do not span a rank-2 lattice."""


class NotInLattice(ValueError):
    pass


class NonIntegerIndex(ArithmeticError):
    pass


class DegenerateParallelogram(ValueError):
    pass


def _coeffs(form) -> tuple[GaussRat, ...]:
    a = getattr(form, "a", form)
    return tuple(GaussRat.coerce(x) for x in a)


@dataclass(frozen=True)
class ValueLattice:
    w1: GaussRat
    w2: GaussRat

    @property
    def T(self) -> GaussRat:
        return self.w2 / self.w1

    @property
    def covolume(self) -> Fraction:
        return abs(cross(self.w1, self.w2))

    def contains(self, v: GaussRat) -> bool:
        x, y = solve2(self.w1, self.w2, v)
        return x.denominator == 1 and y.denominator == 1

    def reduced(self) -> ValueLattice:
        """Lagrange-Gauss reduced basis of the same lattice, oriented so Im(w2/w1) > 0."""
        u, v = self.w1, self.w2
        if u.abs2() > v.abs2():
            u, v = v, u
        while True:
            mu = round((u.re * v.re + u.im * v.im) / u.abs2())
            v = v - u * mu
            if v.abs2() >= u.abs2():
                break
            u, v = v, u
        if cross(u, v) < 0:
            v = -v
        return ValueLattice(u, v)


def _normal_form(vecs: list[tuple[int, int]]) -> tuple[int, int, int]:
    """Column normal form of integer 2-vectors: lattice basis (h11, h21), (0, h22).

    h11 > 0, h22 > 0 and 0 <= h21 < h22.  Elimination repeatedly reduces the
    first coordinates modulo the smallest nonzero one (leftmost on ties).
    """
    vecs = [v for v in vecs if v != (0, 0)]
    while sum(1 for v in vecs if v[0] != 0) > 1:
        k = min((i for i, v in enumerate(vecs) if v[0] != 0), key=lambda i: abs(vecs[i][0]))
        px, py = vecs[k]
        for i, (x, y) in enumerate(vecs):
            if i != k and x != 0:
                t = x // px
                vecs[i] = (x - t * px, y - t * py)
    pivot = next((v for v in vecs if v[0] != 0), None)
    if pivot is None:
        raise DegenerateLattice("values are real-collinear with the imaginary axis")
    h22 = 0
    for x, y in vecs:
        if x == 0:
            h22 = gcd(h22, y)
    if h22 == 0:
        raise DegenerateLattice("values span a rank-1 group")
    h11, h21 = pivot if pivot[0] > 0 else (-pivot[0], -pivot[1])
    return h11, h21 % h22, h22


def value_lattice(form) -> ValueLattice:
    """Generators of A_l = {<a,k>} for a rank-2 (L2) form.

    Coefficients are scaled by a common denominator D, the integer pairs
    (D Re a_j, D Im a_j) are put in column normal form and scaled back, so
    w1 = (h11 + i h21)/D, w2 = i h22/D and Im(w2/w1) > 0 by construction.
    """
    a = _coeffs(form)
    D = lcm(*(x.re.denominator for x in a), *(x.im.denominator for x in a))
    vecs = [(int(x.re * D), int(x.im * D)) for x in a]
    h11, h21, h22 = _normal_form(vecs)
    return ValueLattice(GaussRat(Fraction(h11, D), Fraction(h21, D)), GaussRat(0, Fraction(h22, D)))


def decompose(lat: ValueLattice, v) -> tuple[int, int]:
    """Integers (m1, m2) with v = m1*w1 + m2*w2."""
    x, y = solve2(lat.w1, lat.w2, GaussRat.coerce(v))
    if x.denominator != 1 or y.denominator != 1:
        raise NotInLattice(f"{v} is not in the lattice spanned by {lat.w1}, {lat.w2}")
    return int(x), int(y)


def is_degenerate_pair(a: tuple[GaussRat, ...], p: int, q: int) -> bool:
    return not a[p] or not a[q] or (a[q] / a[p]).is_real()


def nu(form, p: int, q: int) -> int:
    """Number of value-lattice points in the half-open parallelogram on a_p, a_q.

    Returns 0 when a_p or a_q vanishes or when a_q/a_p is real; otherwise the
    index of Z a_p + Z a_q in A_l, |det(a_p, a_q)| / covolume.
    """
    if p == q:
        raise ValueError("p and q must differ")
    a = _coeffs(form)
    if is_degenerate_pair(a, p, q):
        return 0
    lat = value_lattice(a)
    r = abs(cross(a[p], a[q])) / lat.covolume
    if r.denominator != 1:
        raise NonIntegerIndex(f"|det|/covolume = {r} is not an integer")
    return int(r)


@dataclass(frozen=True)
class CosetSystem:
    p: int
    q: int
    points: tuple[GaussRat, ...]

    def __len__(self):
        return len(self.points)


def in_parallelogram(v: GaussRat, ap: GaussRat, aq: GaussRat) -> bool:
    alpha, beta = solve2(ap, aq, v)
    return 0 <= alpha < 1 and 0 <= beta < 1


def _reduce_into(v: GaussRat, ap: GaussRat, aq: GaussRat) -> tuple[Fraction, Fraction, GaussRat]:
    alpha, beta = solve2(ap, aq, v)
    alpha, beta = alpha - floor(alpha), beta - floor(beta)
    return alpha, beta, ap * alpha + aq * beta


def coset_reps(form, p: int, q: int) -> CosetSystem:
    """The points x_1 = 0, x_2, ... of A_l inside the half-open parallelogram P_pq.

    They form the finite group A_l / (Z a_p + Z a_q); it is generated from 0 by
    adding w1, w2 and reducing back into P_pq.  Points are ordered by their
    (a_q, a_p) coordinates.
    """
    a = _coeffs(form)
    if p == q or is_degenerate_pair(a, p, q):
        raise DegenerateParallelogram(f"P_({p},{q}) has no interior")
    lat = value_lattice(a)
    ap, aq = a[p], a[q]
    found = {GaussRat(0): (Fraction(0), Fraction(0))}
    stack = [GaussRat(0)]
    while stack:
        x = stack.pop()
        for w in (lat.w1, lat.w2):
            alpha, beta, y = _reduce_into(x + w, ap, aq)
            if y not in found:
                found[y] = (alpha, beta)
                stack.append(y)
    points = tuple(sorted(found, key=lambda x: (found[x][1], found[x][0])))
    expected = nu(a, p, q)
    if len(points) != expected or points[0] != 0:
        raise NonIntegerIndex(f"found {len(points)} coset points, expected {expected}")
    return CosetSystem(p, q, points)


def fractional_reduce(lat: ValueLattice, v: GaussRat) -> GaussRat:
    """Representative of v mod the lattice in {x w1 + y w2 : 0 <= x, y < 1}."""
    x, y = solve2(lat.w1, lat.w2, v)
    return lat.w1 * (x - floor(x)) + lat.w2 * (y - floor(y))


def index_in(sub: ValueLattice, lat: ValueLattice) -> int:
    """[lat : sub] for a full-rank sublattice."""
    r = sub.covolume / lat.covolume
    if r.denominator != 1:
        raise NonIntegerIndex(f"covolume ratio {r} is not an integer")
    return int(r)


__all__ = [
    "ValueLattice", "CosetSystem", "value_lattice", "decompose", "nu", "coset_reps",
    "fractional_reduce", "in_parallelogram", "index_in", "is_degenerate_pair",
    "DegenerateLattice", "NotInLattice", "NonIntegerIndex", "DegenerateParallelogram",
]
