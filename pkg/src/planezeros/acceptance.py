"""The acceptance suite: eight end-to-end criteria, each reported as pass/fail with details.

Every criterion is a function returning an ``Outcome``; ``run_all`` runs them in
order.  Seeds are fixed, so the corpus and the verdicts are reproducible.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import pi

import numpy as np

from .construct import (
    build_model, corrector_identity, form_log_evaluator, phi_cutoff, phi_log, phi_multiplier_log,
)
from .forms import LinearForm
from .gaussrat import GaussRat, I
from .indexcalc import (
    PlaneDivisor, Transform, component_index, decide, divisor_index, predicted_index,
    recomputed_index, symmetric_closure, symmetry_certificate,
)
from .lattice import nu
from .oracle import nu_bruteforce, numeric_index, verify_model


@dataclass
class Outcome:
    number: int
    title: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number}: {self.title} ({self.seconds:.1f} s)"


def random_rational(rng, bound: int = 5) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))


def random_form(rng, n: int, bound: int = 5) -> LinearForm:
    while True:
        a = tuple(GaussRat(random_rational(rng, bound), random_rational(rng, bound)) for _ in range(n))
        if any(a):
            c = GaussRat(random_rational(rng, bound), random_rational(rng, bound))
            return LinearForm(a, c)


def random_corpus(seed: int = 2024, size: int = 50) -> list[LinearForm]:
    rng = np.random.default_rng(seed)
    return [random_form(rng, int(rng.choice([2, 3, 4]))) for _ in range(size)]


def random_divisor(rng, n: int | None = None, max_forms: int = 3) -> PlaneDivisor:
    n = n or int(rng.choice([2, 3]))
    forms = []
    for _ in range(int(rng.integers(1, max_forms + 1))):
        f = random_form(rng, n, bound=3)
        if rng.random() < 0.25:
            # an L1 component: real multiple of an integer vector
            k = tuple(int(x) for x in rng.integers(-2, 3, n))
            if not any(k):
                k = (1,) + k[1:]
            lam = GaussRat(random_rational(rng, 3) or 1, random_rational(rng, 3))
            f = LinearForm(tuple(lam * x for x in k), f.c)
        forms.append(f.with_mult(int(rng.integers(1, 3))))
    return PlaneDivisor(tuple(forms))


def _timed(number: int, title: str):
    def wrap(fn):
        def run(*args, **kw) -> Outcome:
            t = time.perf_counter()
            passed, detail = fn(*args, **kw)
            return Outcome(number, title, bool(passed), detail, time.perf_counter() - t)

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


@_timed(1, "component index equals the continuation oracle on 50 random forms")
def criterion_1(corpus=None):
    corpus = corpus or random_corpus()
    failures, pairs = [], 0
    for f in corpus:
        ev = form_log_evaluator(f)
        for p, q in itertools.combinations(range(f.n), 2):
            pairs += 1
            exact, numeric = component_index(f, p, q), numeric_index(ev, f.n, p, q, log=True)
            if exact != numeric:
                failures.append({"a": [x.to_pair() for x in f.a], "p": p + 1, "q": q + 1,
                                 "formula": exact, "oracle": numeric})
    return not failures, {"forms": len(corpus), "pairs": pairs, "failures": failures}


@_timed(2, "nu equals brute-force counting; worked case a=(1,i,1/2)")
def criterion_2(corpus=None):
    corpus = corpus or random_corpus()
    failures, counted = [], 0
    for f in corpus:
        for p, q in itertools.combinations(range(f.n), 2):
            if nu(f, p, q) == 0:
                continue
            counted += 1
            exact, brute = nu(f, p, q), nu_bruteforce(f, p, q)
            if exact != brute:
                failures.append({"a": [x.to_pair() for x in f.a], "p": p + 1, "q": q + 1,
                                 "nu": exact, "brute": brute})
    w = LinearForm((1, I, Fraction(1, 2)))
    worked = {
        "nu12": nu(w, 0, 1), "nu12_brute": nu_bruteforce(w, 0, 1),
        "N12": component_index(w, 0, 1), "N13": component_index(w, 0, 2), "N23": component_index(w, 1, 2),
    }
    worked_ok = worked == {"nu12": 2, "nu12_brute": 2, "N12": -2, "N13": 0, "N23": 1}
    return not failures and worked_ok, {"pairs": counted, "failures": failures, "worked_case": worked}


CRITERION_3_T = (1j, -1j, 0.5 + 0.5j, -0.25 - 1.5j, 0.3 + 0.7j, 2j)


def _rel(log_lhs, log_rhs):
    """|lhs - rhs| / |lhs| from logarithms."""
    return np.abs(np.expm1(log_rhs - log_lhs))


@_timed(3, "theta-like product: laws for w+1 and w+T, truncation stability")
def criterion_3(seed: int = 3, eps: float = 1e-12, tol: float = 1e-9):
    """The w+T law is checked with the required multiplier e^{-+2 pi i (w+T)}."""
    rng = np.random.default_rng(seed)
    rows = []
    for T in CRITERION_3_T:
        w = rng.uniform(-2, 2, 100) + 1j * rng.uniform(-2, 2, 100)
        s = 1 if T.imag > 0 else -1
        L = phi_log(T, w, eps)
        r_one = _rel(L, phi_log(T, w + 1, eps))
        lhs_T = phi_log(T, w + T, eps)
        required = L - s * 2j * pi * (w + T)
        r_required = _rel(lhs_T, required)
        r_derived = _rel(lhs_T, L + phi_multiplier_log(T, w, 1))
        Q = phi_cutoff(T, float(np.max(np.abs(w.imag))), eps)
        r_trunc = _rel(phi_log(T, w, eps, Q), phi_log(T, w, eps, Q + 5))
        rows.append({
            "T": [T.real, T.imag], "one_step": float(r_one.max()), "T_step_required": float(r_required.max()),
            "T_step_with_minus_sign": float(r_derived.max()), "truncation": float(r_trunc.max()),
        })
    ok = all(r["one_step"] < tol and r["T_step_required"] < tol and r["truncation"] < 1e-12 for r in rows)
    return ok, {"laws": rows, "note": "the required T-step law is off by a factor -1 for this product"}


PAIR = PlaneDivisor((LinearForm((1, I), Fraction(1, 3)), LinearForm((1, -I), Fraction(1, 5))))
SINGLE = PlaneDivisor((LinearForm((1, I)),))


@_timed(4, "cancelling pair accepted and verified; single form rejected with N12 = -1")
def criterion_4(seed: int = 0):
    d = decide(PAIR)
    rep = verify_model(d.model, PAIR, seed=seed, tol=1e-8, n_points=50, n_zeros=20, far_tol=1e-3)
    r = decide(SINGLE, build=False)
    rejected = r.verdict == "reject" and r.witness is not None and (r.witness.p, r.witness.q, r.witness.value) == (0, 1, -1)
    detail = {
        "pair_verdict": d.verdict,
        "periodicity": rep.periodicity,
        "max_zero_log10": max(t["log10_rel"] for t in rep.zero_tests),
        "min_displaced_log10": min(t["log10_rel"] for t in rep.displaced_tests),
        "index_numeric": rep.index_numeric,
        "single_verdict": r.verdict,
        "single_witness": None if r.witness is None else [r.witness.p + 1, r.witness.q + 1, r.witness.value],
    }
    ok = d.accepted and rep.periodic and rep.zeros_ok and rep.displaced_ok and rejected
    return ok, detail


@_timed(5, "transform laws and additivity on 20 random divisors")
def criterion_5(seed: int = 5, count: int = 20):
    rng = np.random.default_rng(seed)
    failures, checks = [], 0
    for _ in range(count):
        Z = random_divisor(rng)
        N = divisor_index(Z)
        ts = [Transform.beta(p) for p in range(Z.n)]
        ts += [Transform.alpha(p, q) for p, q in itertools.combinations(range(Z.n), 2)]
        ts += [Transform.scale(p, k) for p in range(Z.n) for k in (1, 2, 3)]
        for t in ts:
            checks += 1
            if not np.array_equal(predicted_index(N, t), recomputed_index(Z, t)):
                failures.append({"transform": [t.kind, t.p, t.q, t.k], "N": N.tolist()})
        W = random_divisor(rng, n=Z.n)
        checks += 1
        if not np.array_equal(divisor_index(Z + W), N + divisor_index(W)):
            failures.append({"additivity": True, "N": N.tolist()})
    return not failures, {"checks": checks, "failures": failures}


def random_gauge(rng, n: int, degree: int = 3, scale: float = 0.3):
    """h(z) = sum of monomials of total degree <= degree with random complex coefficients."""
    monos = [e for e in itertools.product(range(degree + 1), repeat=n) if sum(e) <= degree]
    coef = scale * (rng.normal(size=len(monos)) + 1j * rng.normal(size=len(monos)))
    expo = np.array(monos)

    def h(z):
        z = np.asarray(z, dtype=complex)
        return (np.prod(z[..., None, :] ** expo, axis=-1) * coef).sum(axis=-1)

    return h


@_timed(6, "index unchanged by 10 random polynomial gauges")
def criterion_6(seed: int = 6, count: int = 10):
    rng = np.random.default_rng(seed)
    failures = []
    for i in range(count):
        n = 2 + i % 2
        f = random_form(rng, n, bound=3)
        ev = form_log_evaluator(f)
        h = random_gauge(rng, n)
        for p, q in itertools.combinations(range(n), 2):
            plain = numeric_index(ev, n, p, q, log=True)
            gauged = numeric_index(lambda z: ev(z) + h(z), n, p, q, log=True)
            if plain != gauged:
                failures.append({"a": [x.to_pair() for x in f.a], "p": p + 1, "q": q + 1,
                                 "plain": plain, "gauged": gauged})
    return not failures, {"gauges": count, "failures": failures}


def symmetric_divisors(seed: int = 7, count: int = 10) -> list[tuple[PlaneDivisor, set, set]]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.choice([2, 3]))
        coords = list(rng.permutation(n))
        cut = int(rng.integers(0, n + 1))
        Iset, Jset = {int(x) for x in coords[:cut]}, {int(x) for x in coords[cut:]}
        seeds = [random_form(rng, n, bound=3) for _ in range(int(rng.integers(1, 3)))]
        out.append((symmetric_closure(seeds, Iset, Jset), Iset, Jset))
    return out


@_timed(7, "symmetric divisors certified and have zero index")
def criterion_7(seed: int = 7, count: int = 10):
    failures = []
    sizes = []
    for Z, Iset, Jset in symmetric_divisors(seed, count):
        cert = symmetry_certificate(Z, Iset, Jset)
        sizes.append(len(Z.components))
        if not (cert.symmetric and not divisor_index(Z).any()):
            failures.append({"I": sorted(Iset), "J": sorted(Jset), "index": divisor_index(Z).tolist()})
    return not failures, {"sizes": sizes, "failures": failures}


@_timed(8, "corrector identity exact for every accepted build")
def criterion_8(seed: int = 8):
    rng = np.random.default_rng(seed)
    cases = [PAIR, PlaneDivisor((LinearForm((2, 4), Fraction(1, 2)),))]
    cases += [Z for Z, _, _ in symmetric_divisors()]
    cases += [Z for Z in (random_divisor(rng) for _ in range(40)) if not divisor_index(Z).any()]
    failures = []
    for Z in cases:
        ok = corrector_identity(build_model(Z))
        if not all(ok):
            failures.append({"components": len(Z.components), "per_direction": ok})
    return not failures, {"builds": len(cases), "failures": failures}


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8)


def run_all(verbose: bool = False) -> list[Outcome]:
    corpus = random_corpus()
    out = []
    for crit in CRITERIA:
        res = crit(corpus) if crit in (criterion_1, criterion_2) else crit()
        if verbose:
            print(res.line(), flush=True)
        out.append(res)
    return out


__all__ = ["Outcome", "CRITERIA", "run_all", "random_corpus", "random_form", "random_divisor",
           "random_gauge", "symmetric_divisors"] + [c.__name__ for c in CRITERIA]
