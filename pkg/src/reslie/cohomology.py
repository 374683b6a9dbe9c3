"""Restricted cochains of degree at most 2 with trivial coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .foundation import EVEN, inv, linalg_solve, matpow, vector_parity
from .liesuper import LieSuperAlgebra
from .restricted import DEFAULT_SAMPLES, PMap, _even_samples, pmap_eval


@dataclass(frozen=True, eq=False)
class Cochain1:
    functional: np.ndarray
    parity: int = EVEN

    def __call__(self, v):
        return int(self.functional @ v)

    def __eq__(self, other):
        return (
            isinstance(other, Cochain1)
            and self.parity == other.parity
            and np.array_equal(self.functional, other.functional)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class RestrictedCochain2:
    """``phi[i, j] = phi(e_i, e_j)``; ``theta[k]`` is the value on even ``e_k`` (odd slots unused)."""

    phi: np.ndarray
    theta: np.ndarray
    parity: int = EVEN

    def __eq__(self, other):
        return (
            isinstance(other, RestrictedCochain2)
            and self.parity == other.parity
            and np.array_equal(self.phi, other.phi)
            and np.array_equal(self.theta, other.theta)
        )

    __hash__ = None


def bilinear(phi: np.ndarray, a: np.ndarray, b: np.ndarray, p: int) -> int:
    return int(a @ phi @ b % p)


def d1(alg: LieSuperAlgebra, chi: Cochain1) -> np.ndarray:
    """``(d chi)(e_i, e_j) = chi([e_i, e_j])``."""
    return alg.table @ chi.functional % alg.p


def closure_defect(alg: LieSuperAlgebra, phi: np.ndarray) -> np.ndarray:
    """``J[a,b,c] = sum_cyc (-1)^{|a||c|} phi(a, [b, c])`` on basis triples."""
    S = alg._sign
    W = np.einsum("ak,bck->abc", phi, alg.table) % alg.p
    J = S[:, None, :] * W + S[None, :, :] * np.transpose(W, (1, 2, 0)) + S[:, :, None] * np.transpose(W, (2, 0, 1))
    return J % alg.p


def is_closed(alg: LieSuperAlgebra, phi: np.ndarray) -> bool:
    return not np.any(closure_defect(alg, phi))


def ind1(alg: LieSuperAlgebra, pm: PMap, chi: Cochain1) -> np.ndarray:
    """Basis values of ``x -> chi(x^{[p]})``."""
    return pm.images @ chi.functional % alg.p


def star_correction(alg: LieSuperAlgebra, phi: np.ndarray, a: np.ndarray, b: np.ndarray) -> int:
    """Correction term of the *-property addition law (trivial coefficients).

    Sum over words with ``x_1 = a``, ``x_2 = b`` and ``x_3..x_p`` in ``{a, b}`` of
    ``phi([[...[x_1, x_2], ...], x_{p-1}], x_p) / pi{a}``.
    """
    p = alg.p
    total = 0
    for word in product((0, 1), repeat=p - 2):
        xs = [a if w else b for w in word]
        v = alg.bracket(a, b)
        for x in xs[:-1]:
            v = alg.bracket(v, x)
        count = 1 + sum(word)
        total += bilinear(phi, v, xs[-1], p) * inv(count, p)
    return total % p


def theta_eval(alg: LieSuperAlgebra, c: RestrictedCochain2, a: np.ndarray) -> int:
    """Extend the basis values of ``theta`` to an even ``a`` by the *-property."""
    p = alg.p
    a = np.asarray(a, dtype=np.int64) % p
    if vector_parity(alg.space, a) not in ("zero", "even"):
        raise ValueError("theta is defined on even elements")
    acc = np.zeros(alg.dim, dtype=np.int64)
    val = 0
    for j in np.nonzero(a)[0]:
        t = np.zeros(alg.dim, dtype=np.int64)
        t[j] = a[j]
        val += int(a[j]) * int(c.theta[j])
        if np.any(acc):
            val += star_correction(alg, c.phi, acc, t)
        acc = (acc + t) % p
    return val % p


def ind2(alg: LieSuperAlgebra, pm: PMap, c: RestrictedCochain2, a: np.ndarray, b: np.ndarray) -> int:
    """``phi(a, b^{[p]}) - phi([[...[a, b], ...], b], b)`` with ``p-1`` inner brackets."""
    p = alg.p
    bp = pmap_eval(alg, pm, b)
    inner = matpow(alg.ad(b), p - 1, p) @ a % p  # (-1)^{p-1} = 1
    return (bilinear(c.phi, a, bp, p) - bilinear(c.phi, inner, b, p)) % p


def ind2_full(alg: LieSuperAlgebra, pm: PMap, c: RestrictedCochain2, a: np.ndarray, b: np.ndarray) -> int:
    """Term-by-term evaluation of the general Ind^2 display with the trivial action.

    Every term carrying a factor ``b^i`` with ``i > 0`` or ``a beta(b)`` vanishes.
    """
    p = alg.p
    bp = pmap_eval(alg, pm, b)
    total = bilinear(c.phi, a, bp, p)
    for i in range(p):
        j = p - 1 - i
        if i > 0:
            continue  # b^i acts as zero on the trivial module
        v = a
        for _ in range(j):
            v = alg.bracket(v, b)
        total -= (-1) ** i * bilinear(c.phi, v, b, p)
    return total % p


def is_restricted_cocycle(
    alg: LieSuperAlgebra, pm: PMap, c: RestrictedCochain2, samples: int = DEFAULT_SAMPLES, seed: int = 0
) -> bool:
    if not is_closed(alg, c.phi):
        return False
    I = np.eye(alg.dim, dtype=np.int64)
    even = alg.space.even
    for i in even:
        for j in even:
            if ind2(alg, pm, c, I[i], I[j]):
                return False
    vs = list(_even_samples(alg, 2 * samples, seed))
    for a, b in zip(vs[::2], vs[1::2]):
        if ind2(alg, pm, c, a, b):
            return False
    return True


def is_restricted_coboundary(alg: LieSuperAlgebra, pm: PMap, c: RestrictedCochain2) -> Cochain1 | None:
    """Witness ``chi`` with ``chi([e_i,e_j]) = phi_ij`` and ``chi(e_k^{[p]}) = theta_k``."""
    p, n = alg.p, alg.dim
    q = alg.space.parity
    cols = [k for k in range(n) if q[k] == c.parity]
    iu = np.triu_indices(n)
    rows = alg.table[iu][:, cols]
    rhs = c.phi[iu]
    even = alg.space.even
    A = np.vstack([rows, pm.images[even][:, cols]])
    b = np.concatenate([rhs, c.theta[even]])
    if A.shape[1] == 0:
        return Cochain1(np.zeros(n, dtype=np.int64), c.parity) if not np.any(b % p) else None
    sol = linalg_solve(A, b, p)
    if not sol.consistent:
        return None
    chi = np.zeros(n, dtype=np.int64)
    chi[cols] = sol.particular
    return Cochain1(chi, c.parity)


def coboundary_of(alg: LieSuperAlgebra, pm: PMap, chi: Cochain1) -> RestrictedCochain2:
    return RestrictedCochain2(d1(alg, chi), ind1(alg, pm, chi), chi.parity)


__all__ = [
    "Cochain1",
    "RestrictedCochain2",
    "closure_defect",
    "coboundary_of",
    "d1",
    "ind1",
    "ind2",
    "ind2_full",
    "is_closed",
    "is_restricted_coboundary",
    "is_restricted_cocycle",
    "star_correction",
    "theta_eval",
]
