"""Index matrices of periodic plane divisors and the acceptance decision."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable

import numpy as np

from .forms import L1, L2, ClassifiedForm, LinearForm, canonical_key, classify
from .gaussrat import sign
from .lattice import index_in, is_degenerate_pair, nu, value_lattice


@dataclass(frozen=True)
class PlaneDivisor:
    """Finite sum of periodic reproductions of hyperplanes, with multiplicities."""

    components: tuple[LinearForm, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("a plane divisor needs at least one component")
        n = comps[0].n
        if any(f.n != n for f in comps):
            raise ValueError("all components must have the same dimension")

    @property
    def n(self) -> int:
        return self.components[0].n

    @cached_property
    def classified(self) -> tuple[ClassifiedForm, ...]:
        return tuple(classify(f) for f in self.components)

    def __add__(self, other: PlaneDivisor) -> PlaneDivisor:
        return PlaneDivisor(self.components + other.components)

    def split(self) -> tuple[tuple[LinearForm, ...], tuple[LinearForm, ...]]:
        """(Z', Z''): the L1 components and the L2 components."""
        z1 = tuple(cf.form for cf in self.classified if cf.cls == L1)
        z2 = tuple(cf.form for cf in self.classified if cf.cls == L2)
        return z1, z2


def check_skew(N: np.ndarray) -> np.ndarray:
    if not np.array_equal(N, -N.T):
        raise AssertionError(f"index matrix is not skew-symmetric:\n{N}")
    return N


def component_index(form: LinearForm | ClassifiedForm, p: int, q: int) -> int:
    """N_pq of the reproduction of one hyperplane, times its multiplicity."""
    cf = form if isinstance(form, ClassifiedForm) else classify(form)
    if p == q or cf.cls == L1 or is_degenerate_pair(cf.a, p, q):
        return 0
    ratio = cf.a[q] / cf.a[p]
    return -nu(cf.a, p, q) * sign(ratio.im) * cf.form.mult


def _index_of_forms(forms: Iterable[LinearForm | ClassifiedForm], n: int) -> np.ndarray:
    N = np.zeros((n, n), dtype=np.int64)
    for f in forms:
        for p, q in combinations(range(n), 2):
            v = component_index(f, p, q)
            N[p, q] += v
            N[q, p] -= v
    return N


def divisor_index(Z: PlaneDivisor) -> np.ndarray:
    return check_skew(_index_of_forms(Z.classified, Z.n))


def condition_sums(Z: PlaneDivisor) -> np.ndarray:
    """sum_j mult_j nu_pq sign Im(a_q/a_p) over the L2 components, for all p != q."""
    n = Z.n
    S = np.zeros((n, n), dtype=np.int64)
    for cf in Z.classified:
        if cf.cls != L2:
            continue
        for p in range(n):
            for q in range(n):
                if p != q and not is_degenerate_pair(cf.a, p, q):
                    S[p, q] += cf.form.mult * nu(cf.a, p, q) * sign((cf.a[q] / cf.a[p]).im)
    return S


@dataclass(frozen=True)
class Witness:
    p: int
    q: int
    value: int  # N_pq, the offending index entry


@dataclass(frozen=True)
class Decision:
    verdict: str  # "accept" | "reject"
    z_prime: tuple[LinearForm, ...]
    z_second: tuple[LinearForm, ...]
    index: np.ndarray
    witness: Witness | None = None
    model: object = None

    @property
    def accepted(self) -> bool:
        return self.verdict == "accept"


def decide(Z: PlaneDivisor, eps: float = 1e-12, build: bool = True) -> Decision:
    z1, z2 = Z.split()
    N = divisor_index(Z)
    S = condition_sums(Z)
    if not np.array_equal(N, -S):
        raise AssertionError("index matrix disagrees with the coefficient condition")
    bad = [(p, q) for p, q in combinations(range(Z.n), 2) if S[p, q] != 0]
    if bad:
        p, q = bad[0]
        return Decision("reject", z1, z2, N, witness=Witness(p, q, int(N[p, q])))
    model = None
    if build:
        from .construct import build_model

        model = build_model(Z, eps=eps)
    return Decision("accept", z1, z2, N, model=model)


# transforms of the coordinate space


@dataclass(frozen=True)
class Transform:
    kind: str  # "beta" | "alpha" | "scale"
    p: int
    q: int | None = None
    k: int | None = None

    @classmethod
    def beta(cls, j: int) -> Transform:
        return cls("beta", j)

    @classmethod
    def alpha(cls, p: int, q: int) -> Transform:
        return cls("alpha", p, q)

    @classmethod
    def scale(cls, p: int, k: int) -> Transform:
        return cls("scale", p, k=k)

    def validate(self, n: int):
        if self.kind not in ("beta", "alpha", "scale"):
            raise ValueError(f"unknown transform kind {self.kind!r}")
        if not 0 <= self.p < n:
            raise ValueError(f"coordinate index {self.p} out of range")
        if self.kind == "alpha" and (self.q is None or not 0 <= self.q < n or self.q == self.p):
            raise ValueError("alpha needs two distinct coordinate indices")
        if self.kind == "scale" and (not isinstance(self.k, int) or self.k <= 0):
            raise ValueError("period scaling needs an integer k > 0")


def transform_form(f: LinearForm, t: Transform) -> LinearForm:
    a = list(f.a)
    if t.kind == "beta":
        a[t.p] = -a[t.p]
    elif t.kind == "alpha":
        a[t.p], a[t.q] = a[t.q], a[t.p]
    else:
        return f
    return LinearForm(tuple(a), f.c, f.mult)


def predicted_index(N: np.ndarray, t: Transform) -> np.ndarray:
    """Index after the transform from its laws: reflections and swaps permute or negate rows and
    columns, and scaling a period by k multiplies its row and column by k."""
    N = N.copy()
    if t.kind == "beta":
        N[t.p, :] *= -1
        N[:, t.p] *= -1
    elif t.kind == "alpha":
        perm = list(range(N.shape[0]))
        perm[t.p], perm[t.q] = perm[t.q], perm[t.p]
        N = N[np.ix_(perm, perm)]
    else:
        N[t.p, :] *= t.k
        N[:, t.p] *= t.k
    return N


@dataclass(frozen=True)
class TransformResult:
    divisor: PlaneDivisor
    predicted: np.ndarray


def apply_transform(Z: PlaneDivisor, t: Transform) -> TransformResult:
    """Image divisor (unchanged for period scaling) and its index predicted by the transform laws."""
    t.validate(Z.n)
    image = PlaneDivisor(tuple(transform_form(f, t) for f in Z.components))
    return TransformResult(image, predicted_index(divisor_index(Z), t))


def rescaled_divisor(Z: PlaneDivisor, p: int, k: int) -> PlaneDivisor:
    """Z in coordinates where the period k*e_p becomes e_p (z_p -> k z_p).

    Each component turns into the distinct reproductions of <a', z> + c - j a_p,
    j = 0..k-1, with a'_p = k a_p: one per coset of the smaller value group.
    """
    out = []
    for f in Z.components:
        a2 = list(f.a)
        a2[p] = f.a[p] * k
        seen = {}
        for j in range(k):
            g = LinearForm(tuple(a2), f.c - f.a[p] * j, f.mult)
            seen.setdefault(canonical_key(g), g)
        if classify(f).cls == L2:
            expected = index_in(value_lattice(a2), value_lattice(f.a))
            assert len(seen) == expected, (len(seen), expected)
        out.extend(seen.values())
    return PlaneDivisor(tuple(out))


def scaled_period_index(Z: PlaneDivisor, p: int, k: int) -> np.ndarray:
    """Index of Z with respect to the periods e_1, .., k e_p, .., e_n."""
    return divisor_index(rescaled_divisor(Z, p, k))


def recomputed_index(Z: PlaneDivisor, t: Transform) -> np.ndarray:
    if t.kind == "scale":
        return scaled_period_index(Z, t.p, t.k)
    return divisor_index(apply_transform(Z, t).divisor)


# symmetry


def key_multiset(forms: Iterable[LinearForm]) -> Counter:
    keys = Counter()
    for f in forms:
        keys[canonical_key(f)] += f.mult
    return keys


@dataclass(frozen=True)
class SymmetryCertificate:
    symmetric: bool
    conclusive: bool
    failures: tuple[Transform, ...] = ()
    index: np.ndarray | None = field(default=None, compare=False)

    def __bool__(self):
        return self.symmetric


def _covered(n: int, I: set[int], J: set[int]) -> bool:
    return all(p in I or q in I or (p in J and q in J) for p, q in combinations(range(n), 2))


def symmetry_certificate(Z: PlaneDivisor, I: Iterable[int], J: Iterable[int]) -> SymmetryCertificate:
    """Check invariance of Z under beta_k (k in I) and alpha_pq (p, q in J).

    When Z is invariant and every coordinate pair is covered by I or J, the
    index must vanish; that conclusion is asserted.
    """
    I, J = set(I), set(J)
    if I & J:
        raise ValueError("I and J must be disjoint")
    if not (I | J) <= set(range(Z.n)):
        raise ValueError("I and J must be subsets of the coordinate indices")
    base = key_multiset(Z.components)
    transforms = [Transform.beta(k) for k in sorted(I)]
    transforms += [Transform.alpha(p, q) for p, q in combinations(sorted(J), 2)]
    failures = tuple(
        t for t in transforms
        if key_multiset(transform_form(f, t) for f in Z.components) != base
    )
    symmetric = not failures
    conclusive = _covered(Z.n, I, J)
    N = divisor_index(Z)
    if symmetric and conclusive and N.any():
        raise AssertionError(f"symmetric divisor with nonzero index:\n{N}")
    return SymmetryCertificate(symmetric, conclusive, failures, N)


def symmetric_closure(forms: Iterable[LinearForm], I: Iterable[int], J: Iterable[int]) -> PlaneDivisor:
    """Smallest divisor containing the forms and closed under the beta / alpha group."""
    gens = [Transform.beta(k) for k in sorted(set(I))]
    gens += [Transform.alpha(p, q) for p, q in combinations(sorted(set(J)), 2)]
    out: dict = {}
    stack = list(forms)
    while stack:
        f = stack.pop()
        key = canonical_key(f)
        if key in out:
            continue
        out[key] = f
        stack.extend(transform_form(f, t) for t in gens)
    return PlaneDivisor(tuple(out.values()))


__all__ = [
    "PlaneDivisor", "Decision", "Witness", "Transform", "TransformResult", "SymmetryCertificate",
    "component_index", "divisor_index", "condition_sums", "decide", "apply_transform",
    "predicted_index", "recomputed_index", "rescaled_divisor", "scaled_period_index",
    "symmetry_certificate", "symmetric_closure", "transform_form", "key_multiset",
]
