"""[p|2p]-structures: evaluation, the s_i terms, Jacobson completion, restricted derivations."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .foundation import EVEN, fp, inv, kernel, linalg_solve, matpow, vector_parity
from .liesuper import AlgebraError, GradedMap, LieSuperAlgebra, Report, is_derivation

DEFAULT_SAMPLES = 64


@dataclass(frozen=True, eq=False)
class PMap:
    """Images ``e_j^{[p]}`` of the even basis vectors; row ``j`` of ``images``.

    Rows of odd basis vectors are zero and never read.
    """

    images: np.ndarray

    @classmethod
    def from_images(cls, alg: LieSuperAlgebra, images: dict, check: bool = True) -> "PMap":
        n, sp = alg.dim, alg.space
        F = np.zeros((n, n), dtype=np.int64)
        for key, value in images.items():
            j = sp.index(key) if isinstance(key, str) else int(key)
            if sp.parities[j] != EVEN:
                raise AlgebraError(f"p-map image given for odd element {sp.names[j]}")
            v = sp.vector(value, alg.p) if isinstance(value, dict) else np.asarray(value, dtype=np.int64) % alg.p
            if vector_parity(sp, v) not in ("zero", "even"):
                raise AlgebraError(f"image of {sp.names[j]} is not even")
            F[j] = v
        pm = cls(F)
        if check:
            rep = verify_restricted(alg, pm)
            if not rep.ok:
                raise AlgebraError(f"p-map fails Jacobson compatibility: {rep.failures}")
        return pm

    @classmethod
    def zero(cls, alg: LieSuperAlgebra) -> "PMap":
        return cls(np.zeros((alg.dim, alg.dim), dtype=np.int64))

    def image(self, j: int) -> np.ndarray:
        return self.images[j]

    def __eq__(self, other):
        return isinstance(other, PMap) and np.array_equal(self.images, other.images)

    __hash__ = None


def _require_even(alg: LieSuperAlgebra, *vs):
    for v in vs:
        if vector_parity(alg.space, v) not in ("zero", "even"):
            raise AlgebraError("expected an even element")


# ---------------------------------------------------------------- s_i terms

def s_i_all(alg: LieSuperAlgebra, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Rows ``s_1(a,b), ..., s_{p-1}(a,b)`` from ``(ad_{la+b})^{p-1}(a) = sum i s_i l^{i-1}``."""
    _require_even(alg, a, b)
    p = alg.p
    A, B = alg.ad(a), alg.ad(b)
    coeffs = np.zeros((p, alg.dim), dtype=np.int64)  # coeffs[k] multiplies l^k
    coeffs[0] = a % p
    for _ in range(p - 1):
        nxt = coeffs @ B.T
        nxt[1:] += coeffs[:-1] @ A.T
        coeffs = nxt % p
    out = np.zeros((p - 1, alg.dim), dtype=np.int64)
    for i in range(1, p):
        out[i - 1] = coeffs[i - 1] * inv(i, p) % p
    return out


def _nested(alg: LieSuperAlgebra, word, tail: np.ndarray) -> np.ndarray:
    """``[w_1, [w_2, [..., [w_k, tail]]]]``."""
    v = tail
    for w in reversed(word):
        v = alg.bracket(w, v)
    return v


def s_i_wordsum(alg: LieSuperAlgebra, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Independent oracle: sum over bracket words ``[x_1,[...,[x_{p-2},[b,a]]]]``."""
    _require_even(alg, a, b)
    p = alg.p
    out = np.zeros((p - 1, alg.dim), dtype=np.int64)
    ba = alg.bracket(b, a)
    for word in product((0, 1), repeat=p - 2):
        i = sum(word) + 1  # number of a's including the innermost one
        term = _nested(alg, [a if w else b for w in word], ba)
        out[i - 1] = (out[i - 1] + term * inv(i, p)) % p
    return out


# -------------------------------------------------------------- evaluation

def pmap_eval(alg: LieSuperAlgebra, pm: PMap, a: np.ndarray) -> np.ndarray:
    """``a^{[p]}`` for even ``a`` and ``(a^2)^{[p]}`` with ``a^2 = [a,a]/2`` for odd ``a``."""
    p = alg.p
    a = np.asarray(a, dtype=np.int64) % p
    par = vector_parity(alg.space, a)
    if par == "mixed":
        raise AlgebraError("pmap_eval needs a homogeneous element")
    if par == "odd":
        return pmap_eval(alg, pm, alg.bracket(a, a) * inv(2, p) % p)
    acc = np.zeros(alg.dim, dtype=np.int64)
    acc_p = np.zeros(alg.dim, dtype=np.int64)
    for j in np.nonzero(a)[0]:
        t = np.zeros(alg.dim, dtype=np.int64)
        t[j] = a[j]
        # (alpha e_j)^{[p]} = alpha^p f_j = alpha f_j over F_p
        acc_p = (acc_p + a[j] * pm.images[j] + s_i_all(alg, acc, t).sum(axis=0)) % p
        acc = (acc + t) % p
    return acc_p


def verify_restricted(alg: LieSuperAlgebra, pm: PMap) -> Report:
    p, sp = alg.p, alg.space
    failures = []
    for j in sp.even:
        if vector_parity(sp, pm.images[j]) not in ("zero", "even"):
            failures.append(("parity", sp.names[j]))
            continue
        lhs = alg.ad(pm.images[j])
        rhs = matpow(alg.ad(np.eye(alg.dim, dtype=np.int64)[j]), p, p)
        for col in np.nonzero(np.any((lhs - rhs) % p, axis=0))[0]:
            failures.append(("jacobson", (sp.names[j], sp.names[col])))
    return Report(not failures, failures)


def jacobson_complete(alg: LieSuperAlgebra) -> tuple[PMap | None, Report]:
    """Solve ``ad_f = (ad e_j)^p`` for each even ``e_j``.

    Free coordinates are set to zero; the report lists the kernel (even part of
    the center) that parametrizes all other choices.
    """
    p, n, sp = alg.p, alg.dim, alg.space
    even = sp.even
    A = alg.ad_basis()[even].reshape(len(even), -1).T  # columns: vec(ad e_k)
    F = np.zeros((n, n), dtype=np.int64)
    failures, free = [], None
    for j in even:
        target = matpow(alg.ad_basis()[j], p, p).reshape(-1)
        sol = linalg_solve(A, target, p)
        free = sol.kernel
        if not sol.consistent:
            failures.append(("no image", sp.names[j]))
            continue
        F[j, even] = sol.particular
    ker = np.zeros((0 if free is None else free.shape[0], n), dtype=np.int64)
    if free is not None and free.size:
        ker[:, even] = free
    rep = Report(not failures, failures, {"kernel": ker})
    return (PMap(F) if not failures else None), rep


# ----------------------------------------------------- restricted derivations

def _even_samples(alg: LieSuperAlgebra, count: int, seed: int):
    rng = np.random.default_rng(seed)
    even = alg.space.even
    for _ in range(count):
        v = np.zeros(alg.dim, dtype=np.int64)
        v[even] = rng.integers(0, alg.p, size=len(even))
        yield v


def restricted_defect(alg: LieSuperAlgebra, pm: PMap, D: GradedMap, a: np.ndarray) -> np.ndarray:
    """``D(a^{[p]}) - (ad_a)^{p-1}(D a)``."""
    p = alg.p
    lhs = D.matrix @ pmap_eval(alg, pm, a) % p
    rhs = matpow(alg.ad(a), p - 1, p) @ (D.matrix @ a % p) % p
    return (lhs - rhs) % p


def is_restricted_derivation(
    alg: LieSuperAlgebra, pm: PMap, D: GradedMap, samples: int = DEFAULT_SAMPLES, seed: int = 0
) -> bool:
    if not is_derivation(alg, D):
        return False
    I = np.eye(alg.dim, dtype=np.int64)
    for j in alg.space.even:
        if np.any(restricted_defect(alg, pm, D, I[j])):
            return False
    for v in _even_samples(alg, samples, seed):
        if np.any(restricted_defect(alg, pm, D, v)):
            return False
    return True


def restricted_derivation_space(alg: LieSuperAlgebra, pm: PMap, parity: int) -> list[GradedMap]:
    """Basis of the derivations of the given parity that are restricted.

    Both sides of the restrictedness identity obey the same addition law on
    derivations, so it is enough to impose it on the even basis; the condition
    is linear in ``D``.
    """
    from .liesuper import derivation_space

    basis = derivation_space(alg, parity)
    if not basis:
        return []
    I = np.eye(alg.dim, dtype=np.int64)
    cols = [np.concatenate([restricted_defect(alg, pm, D, I[j]) for j in alg.space.even] or [np.zeros(0, np.int64)])
            for D in basis]
    A = np.column_stack(cols) % alg.p
    out = []
    for c in kernel(A, alg.p):
        M = sum(int(ck) * D.matrix for ck, D in zip(c, basis)) % alg.p
        out.append(GradedMap(M, parity))
    return out


@dataclass(frozen=True)
class PProperty:
    gamma: int
    a0: np.ndarray
    kernel: np.ndarray = field(repr=False)  # rows (gamma, a0) of the homogeneous solution space


def p_property_solve(alg: LieSuperAlgebra, pm: PMap, D: GradedMap) -> PProperty | None:
    """Solve ``D^p = gamma D + ad_{a0}``, ``D a0 = 0`` jointly for ``(gamma, a0)``, ``a0`` even."""
    if D.parity != EVEN:
        raise AlgebraError("the p-property concerns even derivations")
    p, n = alg.p, alg.dim
    even = alg.space.even
    M = D.matrix
    top = np.column_stack([M.reshape(-1)] + [alg.ad_basis()[k].reshape(-1) for k in even])
    bottom = np.column_stack([np.zeros(n, dtype=np.int64), M[:, even]])
    A = np.vstack([top, bottom]) % p
    rhs = np.concatenate([matpow(M, p, p).reshape(-1), np.zeros(n, dtype=np.int64)])
    sol = linalg_solve(A, rhs, p)
    if not sol.consistent:
        return None

    def unpack(x):
        a0 = np.zeros(n, dtype=np.int64)
        a0[even] = x[1:]
        return a0

    K = np.array([np.concatenate([[k[0]], unpack(k)]) for k in sol.kernel], dtype=np.int64).reshape(-1, n + 1)
    return PProperty(int(sol.particular[0]), unpack(sol.particular), K)


def has_p_property(alg: LieSuperAlgebra, D: GradedMap, gamma, a0: np.ndarray) -> bool:
    p = alg.p
    g = fp(gamma, p)
    lhs = matpow(D.matrix, p, p)
    rhs = (g * D.matrix + alg.ad(a0)) % p
    return np.array_equal(lhs, rhs) and not np.any(D.matrix @ a0 % p)


__all__ = [
    "PMap",
    "PProperty",
    "has_p_property",
    "is_restricted_derivation",
    "jacobson_complete",
    "p_property_solve",
    "pmap_eval",
    "restricted_defect",
    "restricted_derivation_space",
    "s_i_all",
    "s_i_wordsum",
    "verify_restricted",
]
