"""Evaluable entire periodic functions with a prescribed plane divisor.

Every factor is evaluated in log space and summed; values are exponentiated
only at the end, so large imaginary parts do not overflow intermediate
products.  Quasi-period exponents and the quadratic corrector are kept as
exact Gaussian rationals in units of 2*pi*i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, log, pi
from typing import Callable, Sequence

import numpy as np

from .forms import L1, ClassifiedForm, LinearForm, classify
from .gaussrat import ZERO, GaussRat, sign
from .indexcalc import PlaneDivisor, divisor_index
from .lattice import ValueLattice, coset_reps, decompose, value_lattice

TWO_PI_I = 2j * pi


class ImTZero(ValueError):
    pass


class NonpositiveTolerance(ValueError):
    pass


class IndexObstruction(ValueError):
    """The divisor has a nonzero index, so no entire periodic function has it."""

    def __init__(self, index):
        super().__init__(f"divisor index is nonzero:\n{index}")
        self.index = index


_NEGLIGIBLE = 40.0  # |e^y| < 4e-18 below this, far under double rounding of the log sum


def log1mexp(x):
    """log(1 - e^x) for complex x, accurate for both signs of Re x (any branch).

    Terms that are zero to double precision are not evaluated.
    """
    x = np.asarray(x, dtype=complex)
    flip = x.real > 0
    y = np.where(flip, -x, x)
    out = np.where(flip, x + 1j * pi, 0j)
    live = y.real > -_NEGLIGIBLE
    with np.errstate(divide="ignore"):
        out[live] += np.log(-np.expm1(y[live]))
    return out


def _as_complex(x) -> complex:
    return complex(x)


def phi_cutoff(T: complex, max_im_w: float, eps: float) -> int:
    b = abs(T.imag)
    tail = -log(-np.expm1(-2 * pi * b))  # geometric tail of the omitted factors
    return ceil((max_im_w + log(1 / eps) / (2 * pi) + tail / (2 * pi)) / b) + 2


def phi_log(T, w, eps: float = 1e-12, Q: int | None = None):
    """log of the truncated theta-like product with zeros at Z + T Z.

    Factors are 1 - e^{-+2 pi i (w - qT)}, |q| <= Q, with the sign chosen so
    every factor tends to 1.  Q defaults to the cutoff making the omitted tail
    smaller than eps in relative size.
    """
    T = _as_complex(T)
    if T.imag == 0:
        raise ImTZero("Im T must be nonzero")
    if not eps > 0:
        raise NonpositiveTolerance("eps must be positive")
    w = np.asarray(w, dtype=complex)
    if Q is None:
        Q = phi_cutoff(T, float(np.max(np.abs(w.imag), initial=0.0)), eps)
    s = 1 if T.imag > 0 else -1
    q = np.arange(-Q, Q + 1)
    x = w[..., None] - q * T
    expo = np.where(q >= 0, -s, s) * TWO_PI_I * x
    return log1mexp(expo).sum(axis=-1)


def phi_eval(T, w, eps: float = 1e-12, Q: int | None = None):
    return np.exp(phi_log(T, w, eps, Q))


def phi_multiplier_log(T, w, m: int = 1):
    """log of Phi(w + mT)/Phi(w) for the product above: (-1)^m exp(-2 pi i s (m w + m(m+1)/2 T))."""
    T = _as_complex(T)
    s = 1 if T.imag > 0 else -1
    w = np.asarray(w, dtype=complex)
    return -TWO_PI_I * s * (m * w + m * (m + 1) / 2 * T) + 1j * pi * m


def f_l1_eval(k0: Sequence[int], c, z):
    """sin(pi u) e^{i pi u} with u = <k0, z> + c; periodic with period 1 in each z_j."""
    z = np.asarray(z, dtype=complex)
    u = z @ np.asarray(k0, dtype=float) + _as_complex(c)
    return np.sin(pi * u) * np.exp(1j * pi * u)


# factors


@dataclass(frozen=True)
class L1Factor:
    k0: tuple[int, ...]
    c: GaussRat
    sign: int
    mult: int = 1

    @classmethod
    def from_form(cls, cf: ClassifiedForm) -> L1Factor:
        return cls(cf.k0, cf.c_reduced, 1 if cf.c_reduced.im >= 0 else -1, cf.form.mult)

    @property
    def gamma(self) -> float:
        return float(self.c.im) / float(np.linalg.norm(self.k0))

    def log_eval(self, z):
        z = np.asarray(z, dtype=complex)
        u = z @ np.asarray(self.k0, dtype=float) + complex(self.c)
        v = log1mexp(self.sign * TWO_PI_I * u)
        return v if self.mult == 1 else self.mult * v


@dataclass(frozen=True)
class L2Factor:
    form: LinearForm
    lattice: ValueLattice
    m1: tuple[int, ...]
    m2: tuple[int, ...]

    @classmethod
    def from_form(cls, form: LinearForm | ClassifiedForm) -> L2Factor:
        form = form.form if isinstance(form, ClassifiedForm) else form
        lat = value_lattice(form.a).reduced()
        dec = [decompose(lat, x) for x in form.a]
        return cls(form, lat, tuple(d[0] for d in dec), tuple(d[1] for d in dec))

    @property
    def T(self) -> GaussRat:
        return self.lattice.T

    @property
    def mult(self) -> int:
        return self.form.mult

    def argument(self, z):
        """l(z) / w1."""
        z = np.asarray(z, dtype=complex)
        a = np.array([complex(x) for x in self.form.a])
        return (z @ a + complex(self.form.c)) / complex(self.lattice.w1)

    def log_eval(self, z, eps: float = 1e-12):
        v = phi_log(complex(self.T), self.argument(z), eps)
        return v if self.mult == 1 else self.mult * v

    def exponent_hat(self, p: int) -> tuple[tuple[GaussRat, ...], GaussRat]:
        """Quasi-period exponent for z -> z + e_p, in units of 2 pi i: (linear coeffs, constant).

        Shifting z by e_p moves the product argument by m1 + m2 T; the period 1
        contributes nothing and m2 steps of T compose to
        -s (m2 w + m2(m2+1)/2 T) + m2/2.
        """
        s = sign(self.T.im)
        m = self.m2[p]
        w1 = self.lattice.w1
        lin = tuple(x / w1 * (-s * m * self.mult) for x in self.form.a)
        const = (self.form.c / w1 * (-s * m)
                 - self.T * Fraction(s * m * (m + 1), 2)
                 + Fraction(m, 2)) * self.mult
        return lin, const


@dataclass(frozen=True)
class QuasiPeriodExponent:
    """g_p(z) = 2 pi i (<lin_hat, z> + const_hat), with F(z + e_p) = e^{g_p(z)} F(z)."""

    p: int
    lin_hat: tuple[GaussRat, ...]
    const_hat: GaussRat

    @property
    def lin(self) -> np.ndarray:
        return TWO_PI_I * np.array([complex(x) for x in self.lin_hat])

    @property
    def const(self) -> complex:
        return TWO_PI_I * complex(self.const_hat)

    def __call__(self, z):
        return np.asarray(z, dtype=complex) @ self.lin + self.const

    def is_zero(self) -> bool:
        return not any(self.lin_hat) and not self.const_hat


@dataclass(frozen=True)
class FunctionModel:
    """F(z) = prod(L1 factors) * prod(L2 factors) * exp(-H(z)).

    sigma and tau are exact, in units of 2 pi i: the combined L2 factors have
    quasi-period exponents G_p(z) = 2 pi i (sum_j sigma[p][j] z_j + tau[p]),
    and H(z) = 2 pi i (z^T sigma z / 2 + sum_j rho_j z_j), rho_j = tau_j - sigma_jj/2.
    """

    n: int
    l1: tuple[L1Factor, ...]
    l2: tuple[L2Factor, ...]
    sigma: tuple[tuple[GaussRat, ...], ...]
    tau: tuple[GaussRat, ...]
    eps: float = 1e-12

    @property
    def rho(self) -> tuple[GaussRat, ...]:
        return tuple(self.tau[j] - self.sigma[j][j] * Fraction(1, 2) for j in range(self.n))

    def corrector(self, z):
        z = np.asarray(z, dtype=complex)
        S = np.array([[complex(x) for x in row] for row in self.sigma])
        r = np.array([complex(x) for x in self.rho])
        quad = 0.5 * np.einsum("...i,ij,...j->...", z, S, z)
        return TWO_PI_I * (quad + z @ r)

    def log_eval(self, z):
        z = np.asarray(z, dtype=complex)
        total = np.zeros(z.shape[:-1], dtype=complex)
        for f in self.l1:
            total = total + f.log_eval(z)
        for f in self.l2:
            total = total + f.log_eval(z, self.eps)
        return total - self.corrector(z)

    def __call__(self, z):
        return np.exp(self.log_eval(z))


def eval_model(M: FunctionModel, z):
    return M(z)


def log_eval_model(M: FunctionModel, z):
    return M.log_eval(z)


def _exponent_sums(factors: Sequence[L2Factor], n: int):
    sigma = [[ZERO] * n for _ in range(n)]
    tau = [ZERO] * n
    for f in factors:
        for p in range(n):
            lin, const = f.exponent_hat(p)
            sigma[p] = [x + y for x, y in zip(sigma[p], lin)]
            tau[p] = tau[p] + const
    return sigma, tau


def build_model(Z: PlaneDivisor, eps: float = 1e-12) -> FunctionModel:
    if not eps > 0:
        raise NonpositiveTolerance("eps must be positive")
    n = Z.n
    l1, l2 = [], []
    for cf in Z.classified:
        if cf.cls == L1:
            l1.append(L1Factor.from_form(cf))
        else:
            l2.append(L2Factor.from_form(cf))
    sigma, tau = _exponent_sums(l2, n)
    N = divisor_index(Z)
    asym = np.array([[sigma[q][p] != sigma[p][q] for q in range(n)] for p in range(n)])
    if asym.any() != N.any():
        raise AssertionError("exponent asymmetry disagrees with the index matrix")
    if N.any():
        raise IndexObstruction(N)
    return FunctionModel(n, tuple(l1), tuple(l2), tuple(map(tuple, sigma)), tuple(tau), eps)


# exact corrector identity


def _poly_shift_difference(poly: dict, p: int, n: int) -> dict:
    """P(z + e_p) - P(z) for a polynomial {exponent tuple: coefficient}."""
    from math import comb

    out: dict = {}
    for expo, coef in poly.items():
        d = expo[p]
        for j in range(d):  # terms with z_p^j, j < d, from expanding (z_p + 1)^d
            e = list(expo)
            e[p] = j
            e = tuple(e)
            out[e] = out.get(e, ZERO) + coef * comb(d, j)
    return {e: c for e, c in out.items() if c}


def corrector_polynomial(M: FunctionModel) -> dict:
    n = M.n
    poly: dict = {}

    def add(e, c):
        poly[e] = poly.get(e, ZERO) + c

    for i in range(n):
        for j in range(n):
            e = [0] * n
            e[i] += 1
            e[j] += 1
            add(tuple(e), M.sigma[i][j] * Fraction(1, 2))
    for j, r in enumerate(M.rho):
        e = [0] * n
        e[j] = 1
        add(tuple(e), r)
    return {e: c for e, c in poly.items() if c}


def corrector_identity(M: FunctionModel) -> list[bool]:
    """Per direction p, whether Delta_p H equals G_p coefficient by coefficient (exact)."""
    n = M.n
    H = corrector_polynomial(M)
    sigma, tau = _exponent_sums(M.l2, n)
    ok = []
    for p in range(n):
        G = {}
        for j in range(n):
            e = [0] * n
            e[j] = 1
            if sigma[p][j]:
                G[tuple(e)] = sigma[p][j]
        if tau[p]:
            G[(0,) * n] = tau[p]
        ok.append(_poly_shift_difference(H, p, n) == G)
    return ok


def quasi_period_exponent(obj, p: int) -> QuasiPeriodExponent:
    """Exponent g_p with F(z + e_p) = e^{g_p(z)} F(z) for a model, factor or form."""
    if isinstance(obj, (LinearForm, ClassifiedForm)):
        cf = obj if isinstance(obj, ClassifiedForm) else classify(obj)
        obj = L1Factor.from_form(cf) if cf.cls == L1 else L2Factor.from_form(cf)
    if isinstance(obj, L1Factor):
        return QuasiPeriodExponent(p, (ZERO,) * len(obj.k0), ZERO)
    if isinstance(obj, L2Factor):
        lin, const = obj.exponent_hat(p)
        return QuasiPeriodExponent(p, lin, const)
    if isinstance(obj, FunctionModel):
        sigma, tau = _exponent_sums(obj.l2, obj.n)
        lin = [x - (y + z) * Fraction(1, 2) for x, y, z in
               zip(sigma[p], obj.sigma[p], [obj.sigma[j][p] for j in range(obj.n)])]
        const = tau[p] - obj.sigma[p][p] * Fraction(1, 2) - obj.rho[p]
        return QuasiPeriodExponent(p, tuple(lin), const)
    raise TypeError(f"no quasi-period exponent for {type(obj).__name__}")


# evaluators for single components


def form_log_evaluator(form: LinearForm, eps: float = 1e-12) -> Callable:
    """log of the standard entire function whose divisor is the reproduction of the form."""
    cf = classify(form)
    factor = L1Factor.from_form(cf) if cf.cls == L1 else L2Factor.from_form(cf)
    if cf.cls == L1:
        return factor.log_eval
    return lambda z: factor.log_eval(z, eps)


def coset_log_evaluator(form: LinearForm, p: int, q: int, eps: float = 1e-12) -> Callable:
    """log of prod_j Phi_{T_q}(l(z)/a_p - x_j/a_p), x_j the coset points in P_pq."""
    cos = coset_reps(form, p, q)
    ap = complex(form.a[p])
    Tq = complex(form.a[q] / form.a[p])
    shifts = [complex(x / form.a[p]) for x in cos.points]
    a = np.array([complex(x) for x in form.a])
    c = complex(form.c)

    def f(z):
        w = (np.asarray(z, dtype=complex) @ a + c) / ap
        return form.mult * sum(phi_log(Tq, w - s, eps) for s in shifts)

    return f


# serialization


def _pairs(xs):
    return [x.to_pair() for x in xs]


def model_to_dict(M: FunctionModel) -> dict:
    return {
        "n": M.n,
        "eps": M.eps,
        "l1_factors": [
            {"k0": list(f.k0), "c": f.c.to_pair(), "sign": f.sign, "mult": f.mult, "gamma": f.gamma}
            for f in M.l1
        ],
        "l2_factors": [
            {
                "a": _pairs(f.form.a), "c": f.form.c.to_pair(), "mult": f.mult,
                "w1": f.lattice.w1.to_pair(), "w2": f.lattice.w2.to_pair(), "T": f.T.to_pair(),
                "m1": list(f.m1), "m2": list(f.m2),
            }
            for f in M.l2
        ],
        "sigma": [_pairs(row) for row in M.sigma],
        "tau": _pairs(M.tau),
        "rho": _pairs(M.rho),
        "units": "sigma, tau, rho are coefficients of 2*pi*i",
    }


def model_from_dict(d: dict) -> FunctionModel:
    P = GaussRat.parse
    l1 = tuple(L1Factor(tuple(f["k0"]), P(f["c"]), int(f["sign"]), int(f["mult"])) for f in d["l1_factors"])
    l2 = tuple(
        L2Factor(
            LinearForm(tuple(P(x) for x in f["a"]), P(f["c"]), int(f["mult"])),
            ValueLattice(P(f["w1"]), P(f["w2"])),
            tuple(f["m1"]), tuple(f["m2"]),
        )
        for f in d["l2_factors"]
    )
    sigma = tuple(tuple(P(x) for x in row) for row in d["sigma"])
    tau = tuple(P(x) for x in d["tau"])
    return FunctionModel(int(d["n"]), l1, l2, sigma, tau, float(d["eps"]))
