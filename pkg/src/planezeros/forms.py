"""Linear forms l(z) = <a, z> + c with Gaussian-rational coefficients.

Classification into L1 / L2 uses the real rank m of {Re a, Im a}, which is the
dimension of the orthogonal complement of the real kernel {x : <a, x> = 0}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence

from .gaussrat import GaussRat, dot, inverse, nullspace, primitive_integer_vector, rref
from .lattice import fractional_reduce, value_lattice

L1 = "L1"
L2 = "L2"


@dataclass(frozen=True)
class LinearForm:
    a: tuple[GaussRat, ...]
    c: GaussRat = GaussRat(0, 0)
    mult: int = 1

    def __post_init__(self):
        a = tuple(GaussRat.coerce(x) for x in self.a)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", GaussRat.coerce(self.c))
        if len(a) < 2:
            raise ValueError("dimension n must be at least 2")
        if not any(a):
            raise ValueError("coefficient vector a must not vanish")
        if not isinstance(self.mult, int) or self.mult < 1:
            raise ValueError("multiplicity must be a positive integer")

    @property
    def n(self) -> int:
        return len(self.a)

    def __call__(self, z):
        """Exact value at a point with Gaussian-rational coordinates."""
        return dot(self.a, [GaussRat.coerce(x) for x in z]) + self.c

    def scaled(self, lam) -> LinearForm:
        lam = GaussRat.coerce(lam)
        return LinearForm(tuple(x * lam for x in self.a), self.c * lam, self.mult)

    def with_mult(self, mult: int) -> LinearForm:
        return LinearForm(self.a, self.c, mult)


@dataclass(frozen=True)
class ClassifiedForm:
    form: LinearForm
    cls: str
    m: int
    basis: tuple[tuple[int, ...], ...]  # Lambda_1..Lambda_n; the first m span A-perp
    dual: tuple[tuple[Fraction, ...], ...]  # rows Omega_j of the inverse basis matrix
    b: tuple[GaussRat, ...]
    k0: tuple[int, ...] | None = None
    scale: GaussRat | None = None
    c_reduced: GaussRat | None = None
    witness: tuple[int, int] | None = None

    @property
    def a(self):
        return self.form.a

    @property
    def c(self):
        return self.form.c

    @property
    def n(self):
        return self.form.n


@dataclass(frozen=True)
class Certificate:
    cls: str
    perp_basis: tuple[tuple[int, ...], ...]
    k0: tuple[int, ...] | None = None
    witness: tuple[int, int] | None = None


def _witness(a: Sequence[GaussRat]) -> tuple[int, int] | None:
    n = len(a)
    for p in range(n):
        for q in range(p + 1, n):
            if a[p] and a[q] and not (a[q] / a[p]).is_real():
                return p, q
    return None


def classify(form: LinearForm) -> ClassifiedForm:
    a = form.a
    n = form.n
    rows, _ = rref([[x.re for x in a], [x.im for x in a]])
    m = len(rows)
    perp = [primitive_integer_vector(r) for r in rows]
    kernel = [primitive_integer_vector(v) for v in nullspace(rows, n)]
    basis = tuple(perp + kernel)
    cols = [[basis[j][i] for j in range(n)] for i in range(n)]
    dual = tuple(tuple(row) for row in inverse(cols))
    b = tuple(dot(a, lam) for lam in basis)

    if m == 1:
        k0 = perp[0]  # rref pivot is 1, so the first nonzero entry is already positive
        j = next(i for i, k in enumerate(k0) if k)
        lam = a[j] / k0[j]
        assert all(a[i] == lam * k0[i] for i in range(n))
        cprime = form.c / lam
        c_red = GaussRat(cprime.re - floor(cprime.re), cprime.im)
        return ClassifiedForm(form, L1, 1, basis, dual, b, k0=k0, scale=lam, c_reduced=c_red)

    witness = _witness(a)
    assert witness is not None, "rank-2 form without a non-real coefficient ratio"
    assert b[0] and b[1] and not (b[1] / b[0]).is_real()
    return ClassifiedForm(form, L2, 2, basis, dual, b, witness=witness)


def divisor_certificate(form: LinearForm | ClassifiedForm) -> Certificate:
    """Data showing the periodic reproduction of the hyperplane is an analytic divisor.

    With Gaussian-rational coefficients A-perp always has an integer basis and an
    L2 form always has a pair with non-real ratio, so this never fails.
    """
    cf = form if isinstance(form, ClassifiedForm) else classify(form)
    perp = cf.basis[: cf.m]
    if cf.cls == L1:
        return Certificate(L1, perp, k0=cf.k0)
    return Certificate(L2, perp, witness=cf.witness)


@dataclass(frozen=True)
class CanonicalKey:
    cls: str
    direction: tuple[GaussRat, ...]
    offset: GaussRat


def canonical_key(form: LinearForm) -> CanonicalKey:
    """Key identifying the periodic reproduction of {l = 0} as a set.

    The coefficient vector is scaled so its first nonzero entry is 1 and the
    constant is reduced modulo the value group of the scaled vector.
    """
    a = form.a
    j = next(i for i, x in enumerate(a) if x)
    direction = tuple(x / a[j] for x in a)
    c = form.c / a[j]
    cf = classify(form)
    if cf.cls == L1:
        step = Fraction(1, abs(cf.k0[j]))
        r = c.re - floor(c.re / step) * step
        offset = GaussRat(r, c.im)
    else:
        offset = fractional_reduce(value_lattice(direction), c)
    return CanonicalKey(cf.cls, direction, offset)


__all__ = [
    "L1", "L2", "LinearForm", "ClassifiedForm", "Certificate", "CanonicalKey",
    "classify", "divisor_certificate", "canonical_key",
]
