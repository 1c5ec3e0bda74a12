"""Independent checks: branch-tracked numeric index, brute-force lattice counts, model verification."""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from math import lcm, log, pi
from typing import Callable, Sequence

import numpy as np

from .construct import FunctionModel
from .gaussrat import GaussRat, dot
from .indexcalc import PlaneDivisor, divisor_index
from .lattice import _coeffs, is_degenerate_pair, value_lattice


class PathThroughZero(RuntimeError):
    pass


class NonIntegerResult(ArithmeticError):
    pass


class _NearZero(Exception):
    pass


_RE = (0.137, 0.271, 0.389, 0.457, 0.113, 0.241)
_IM = (0.311, 0.183, 0.227, 0.359, 0.293, 0.149)


def default_base_point(n: int) -> tuple[complex, ...]:
    return tuple(complex(_RE[j % 6] + 0.01 * (j // 6), _IM[j % 6]) for j in range(n))


@dataclass(frozen=True)
class ContinuationConfig:
    base_point: tuple[complex, ...] | None = None
    steps: int = 64
    max_depth: int = 14
    residual_tol: float = 0.1
    retries: int = 6
    max_doublings: int = 10
    seed: int = 0

    def base(self, n: int) -> np.ndarray:
        z0 = self.base_point if self.base_point is not None else default_base_point(n)
        if len(z0) != n:
            raise ValueError("base point has wrong dimension")
        return np.asarray(z0, dtype=complex)


def _wrap(x):
    return (x + pi) % (2 * pi) - pi


def tracked_change(logf: Callable, z0, direction, shift, cfg: ContinuationConfig) -> complex:
    """Change of log f(z + shift) - log f(z) along z = z0 + t*direction, t in [0, 1].

    The imaginary part is continued through principal increments; a segment
    is bisected while its phase jump is >= pi/2 or its log-modulus jump > 1.
    """
    z0 = np.asarray(z0, dtype=complex)
    direction = np.asarray(direction, dtype=complex)
    shift = np.asarray(shift, dtype=complex)

    def r(t):
        pts = z0 + t[:, None] * direction
        v = logf(pts + shift) - logf(pts)
        if not np.all(np.isfinite(v)):
            raise _NearZero
        return v

    # size the grid from the local slope so a step cannot hide a whole turn
    probe = np.linspace(0.0, 1.0, cfg.steps + 1)
    h = 1e-7
    slope = np.abs(r(probe + h) - r(probe)) / h
    steps = max(cfg.steps, int(np.ceil(np.max(slope) / (pi / 4))))
    t = np.linspace(0.0, 1.0, steps + 1)
    vals = r(t)
    for _ in range(cfg.max_depth + 1):
        d = np.diff(vals)
        dim = _wrap(d.imag)
        bad = (np.abs(dim) >= pi / 2) | (np.abs(d.real) > 1.0)
        if not bad.any():
            return complex(d.real.sum(), dim.sum())
        mids = 0.5 * (t[:-1][bad] + t[1:][bad])
        t = np.concatenate([t, mids])
        vals = np.concatenate([vals, r(mids)])
        order = np.argsort(t, kind="stable")
        t, vals = t[order], vals[order]
    raise _NearZero


def numeric_index(f: Callable, n: int, p: int, q: int, cfg: ContinuationConfig | None = None,
                  periods=None, log: bool = False) -> int:
    """N_pq = (Delta_p g_q - Delta_q g_p) / 2 pi i by continuation of log f(z+w_q)/f(z).

    ``f`` maps an array of points (..., n) to values, or to any branch of
    their logarithm when ``log`` is true.  ``periods`` rows are the period
    vectors (identity by default).  The evaluator is trusted to be entire with
    the intended divisor; samples alone cannot confirm that.
    """
    cfg = cfg or ContinuationConfig()
    P = np.eye(n, dtype=complex) if periods is None else np.asarray(periods, dtype=complex)
    logf = f if log else (lambda z: np.log(f(z)))
    rng = np.random.default_rng(cfg.seed)
    base = cfg.base(n)
    for attempt in range(cfg.retries + 1):
        z0 = base
        if attempt:
            z0 = base + 0.05 * (rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n))
        try:
            return _index_at(logf, z0, P[p], P[q], cfg)
        except _NearZero:
            continue
    raise PathThroughZero(f"continuation paths kept meeting zeros after {cfg.retries} retries")


def _index_at(logf, z0, wp, wq, cfg: ContinuationConfig) -> int:
    # uniform grids can alias whole turns, so the step count is doubled
    # until two consecutive resolutions give the same integer
    prev = None
    steps = cfg.steps
    for _ in range(cfg.max_doublings + 1):
        c = replace(cfg, steps=steps)
        with np.errstate(all="ignore"):
            val = (tracked_change(logf, z0, wp, wq, c) - tracked_change(logf, z0, wq, wp, c)) / (2j * pi)
        k = round(val.real)
        if abs(val - k) >= cfg.residual_tol:
            raise NonIntegerResult(f"index estimate {val} is not close to an integer")
        if k == prev:
            return int(k)
        prev = k
        steps *= 2
    raise NonIntegerResult("index estimate did not stabilize under step refinement")


def numeric_index_matrix(f: Callable, n: int, cfg: ContinuationConfig | None = None,
                         periods=None, log: bool = False) -> np.ndarray:
    N = np.zeros((n, n), dtype=np.int64)
    for p, q in itertools.combinations(range(n), 2):
        N[p, q] = numeric_index(f, n, p, q, cfg, periods, log)
        N[q, p] = -N[p, q]
    return N


def nu_bruteforce(form, p: int, q: int, window: int = 2, kmax: int = 10_000) -> int:
    """Count the distinct values <a, k> lying in the half-open parallelogram on a_p, a_q.

    The coordinates k_r, r not in {p, q}, run over boxes [-K, K]^(n-2) of
    growing K; for each of them the pair (k_p, k_q) placing the value inside
    the parallelogram is found by exact floor division.  The reached set
    S_K is monotone and S_(K+1) = S_K forces it to be closed under the
    generators, so a stall means the count is final; ``window`` consecutive
    stalls are required anyway.  Coordinates are scaled to integers.
    """
    a = _coeffs(form)
    if is_degenerate_pair(a, p, q):
        raise ValueError("parallelogram is degenerate")
    n = len(a)
    D = lcm(*(x.re.denominator for x in a), *(x.im.denominator for x in a))
    A = np.array([[int(x.re * D), int(x.im * D)] for x in a], dtype=np.int64)
    ap, aq = A[p], A[q]
    det = int(ap[0] * aq[1] - ap[1] * aq[0])
    sgn, adet = (1 if det > 0 else -1), abs(det)
    rest = [r for r in range(n) if r not in (p, q)]
    if not rest:
        return 1
    seen: set[tuple[int, int]] = set()
    counts = []
    for K in range(0, kmax + 1):
        # only the shell max|k_r| = K is new
        r = np.arange(-K, K + 1, dtype=np.int64)
        grid = np.stack(np.meshgrid(*([r] * len(rest)), indexing="ij"), axis=-1).reshape(-1, len(rest))
        grid = grid[np.abs(grid).max(axis=1) == K]
        V = grid @ A[rest]
        fa = (sgn * (V[:, 0] * aq[1] - V[:, 1] * aq[0])) // adet
        fb = (sgn * (ap[0] * V[:, 1] - ap[1] * V[:, 0])) // adet
        V = V - fa[:, None] * ap - fb[:, None] * aq
        seen.update(map(tuple, V.tolist()))
        counts.append(len(seen))
        if len(counts) > window and len(set(counts[-window - 1:])) == 1:
            return counts[-1]
    raise RuntimeError("enumeration did not stabilize")


# model verification


def random_gaussrat(rng: np.random.Generator, lo: float = -1, hi: float = 1, den: int = 12) -> GaussRat:
    re = Fraction(int(rng.integers(int(lo * den), int(hi * den) + 1)), den)
    im = Fraction(int(rng.integers(int(lo * den), int(hi * den) + 1)), den)
    return GaussRat(re, im)


def divisor_point(form, rng: np.random.Generator, kmax: int = 2) -> tuple[GaussRat, ...]:
    """An exact point of the reproduction near the real cube: l(z) = <a, k> for a small k.

    F grows like a Gaussian away from the real cube, so points with small
    imaginary parts keep the radius-0.25 neighbourhood scale meaningful.

    Free coordinates are random in a small box; the solved coordinate z_r
    depends on k, and k is drawn among those keeping |Im z_r| <= 1/4 (the
    closest one if none does).  Re z_r is then moved into [-1/2, 1/2) by an
    integer translation, which keeps the point on the divisor.
    """
    a = form.a
    n = len(a)
    nz = [j for j in range(n) if a[j]]
    r = nz[int(rng.integers(len(nz)))]
    z = [random_gaussrat(rng, den=7) for _ in range(n)]
    z = [GaussRat(x.re / 2, x.im / 4) for x in z]
    z[r] = GaussRat(0, 0)
    rest = form.c + dot(a, z)
    cands = []
    for k in itertools.product(range(-kmax, kmax + 1), repeat=n):
        zr = (dot(a, k) - rest) / a[r]
        cands.append((abs(zr.im), k, zr))
    good = [c for c in cands if c[0] <= Fraction(1, 4)] or [min(cands, key=lambda c: c[0])]
    _, k, zr = good[int(rng.integers(len(good)))]
    zr = zr - round(zr.re)
    z[r] = zr
    return tuple(z)


def _unit_directions(rng, n, m):
    v = rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _transverse_direction(rng, a, n):
    """Random unit direction v with |<a, v>| >= |a|/2, so the form actually moves along it."""
    a = np.array([complex(x) for x in a])
    while True:
        v = _unit_directions(rng, n, 1)[0]
        if abs(v @ a) >= 0.5 * np.linalg.norm(a):
            return v


def divisor_distance(Z: PlaneDivisor, z) -> float:
    """Lower bound on the distance from z to the reproduction of Z.

    For each component the value l(z) is compared with the nearest zero value
    (the lattice A_l, or lambda * Z for L1) and divided by |a|.
    """
    z = np.asarray(z, dtype=complex)
    best = np.inf
    for cf in Z.classified:
        a = np.array([complex(x) for x in cf.a])
        v = complex(a @ z + complex(cf.c))
        if cf.cls == "L1":
            lam = complex(cf.scale)
            u = v / lam
            d = abs(u - round(u.real)) * abs(lam)
        else:
            lat = value_lattice(cf.a).reduced()
            w1, w2 = complex(lat.w1), complex(lat.w2)
            x, y = np.linalg.solve([[w1.real, w2.real], [w1.imag, w2.imag]], [v.real, v.imag])
            d = min(abs(v - (i * w1 + j * w2)) for i in range(int(np.floor(x)) - 1, int(np.floor(x)) + 3)
                    for j in range(int(np.floor(y)) - 1, int(np.floor(y)) + 3))
        best = min(best, d / np.linalg.norm(a))
    return float(best)


def _displaced(rng, Z, zp, a, n, tries=16):
    """zp + 0.1 v for a generic transverse v; of a few candidates the one farthest from Z."""
    cands = [zp + 0.1 * _transverse_direction(rng, a, n) for _ in range(tries)]
    return max(cands, key=lambda z: divisor_distance(Z, z))


@dataclass
class VerifyReport:
    seed: int
    tol: float
    periodicity: list[float] = field(default_factory=list)
    zero_tests: list[dict] = field(default_factory=list)
    displaced_tests: list[dict] = field(default_factory=list)
    index_formula: list[list[int]] = field(default_factory=list)
    index_numeric: list[list[int]] = field(default_factory=list)

    @property
    def periodic(self) -> bool:
        return all(r < self.tol for r in self.periodicity)

    @property
    def zeros_ok(self) -> bool:
        return all(t["hit"] for t in self.zero_tests)

    @property
    def displaced_ok(self) -> bool:
        return all(t["ok"] for t in self.displaced_tests)

    @property
    def index_ok(self) -> bool:
        return self.index_formula == self.index_numeric and not np.any(self.index_numeric)

    @property
    def passed(self) -> bool:
        return self.periodic and self.zeros_ok and self.displaced_ok and self.index_ok

    def to_dict(self) -> dict:
        d = asdict(self)
        d.update(periodic=self.periodic, zeros_ok=self.zeros_ok, displaced_ok=self.displaced_ok,
                 index_ok=self.index_ok, passed=self.passed)
        return d


def periodicity_residuals(M: FunctionModel, z) -> np.ndarray:
    """|F(z+e_p) - F(z)| / max(|F(z)|, |F(z+e_p)|) for each sample and direction, shape (m, n)."""
    z = np.asarray(z, dtype=complex)
    L0 = M.log_eval(z)
    out = np.empty((z.shape[0], M.n))
    for p in range(M.n):
        dL = M.log_eval(z + np.eye(M.n)[p]) - L0
        out[:, p] = np.abs(np.expm1(dL)) / np.maximum(1.0, np.exp(dL.real))
    return out


def verify_model(M: FunctionModel, Z: PlaneDivisor, seed: int = 0, tol: float = 1e-8,
                 n_points: int = 50, n_zeros: int = 20, far_tol: float = 1e-3,
                 cfg: ContinuationConfig | None = None) -> VerifyReport:
    rng = np.random.default_rng(seed)
    n = M.n
    rep = VerifyReport(seed, tol)

    z = rng.uniform(-1, 1, (n_points, n)) + 1j * rng.uniform(-0.5, 0.5, (n_points, n))
    rep.periodicity = [float(x) for x in periodicity_residuals(M, z).max(axis=0)]

    comps = Z.components
    for i in range(n_zeros):
        j = i % len(comps)
        zp = np.array([complex(x) for x in divisor_point(comps[j], rng)])
        probes = zp + 0.25 * _unit_directions(rng, n, 8)
        with np.errstate(divide="ignore"):
            log_scale = float(np.max(M.log_eval(probes).real))
            at = float(M.log_eval(zp[None])[0].real)
        rel = at - log_scale
        rep.zero_tests.append({"component": j, "log10_rel": rel / log(10), "hit": bool(rel < log(tol))})
        # the displaced point is compared with its own neighbourhood
        moved = _displaced(rng, Z, zp, comps[j].a, n)
        around = moved + 0.25 * _unit_directions(rng, n, 8)
        with np.errstate(divide="ignore"):
            rel_far = float(M.log_eval(moved[None])[0].real - np.max(M.log_eval(around).real))
        rep.displaced_tests.append({"component": j, "log10_rel": rel_far / log(10),
                                    "ok": bool(rel_far > log(far_tol))})

    rep.index_formula = divisor_index(Z).tolist()
    rep.index_numeric = numeric_index_matrix(M.log_eval, n, cfg, log=True).tolist()
    return rep


__all__ = [
    "ContinuationConfig", "VerifyReport", "PathThroughZero", "NonIntegerResult",
    "numeric_index", "numeric_index_matrix", "nu_bruteforce", "verify_model",
    "tracked_change", "divisor_point", "divisor_distance", "periodicity_residuals", "default_base_point",
]
