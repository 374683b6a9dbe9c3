"""Quasi-Frobenius forms, adjoints of derivations and the cocycles built from them."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .cohomology import (
    Cochain1,
    RestrictedCochain2,
    is_closed,
    is_restricted_coboundary,
    is_restricted_cocycle,
)
from .foundation import (
    EVEN,
    ODD,
    fp,
    gram_from_wedge,
    in_span,
    intersect,
    inv,
    kernel,
    linalg_solve,
    matinv,
    matpow,
    rank,
    span,
    vector_parity,
)
from .liesuper import AlgebraError, GradedMap, LieSuperAlgebra, center, derived
from .restricted import PMap, _nested, pmap_eval

KINDS = ("ortho_even", "ortho_odd", "peri_even", "peri_odd")


class FormError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BilinearForm:
    gram: np.ndarray
    parity: int = EVEN

    @classmethod
    def from_wedge(cls, alg: LieSuperAlgebra, terms, parity: int | None = None) -> "BilinearForm":
        G = gram_from_wedge(alg.space, terms, alg.p)
        return cls(G, form_parity(alg, G) if parity is None else parity)

    def __eq__(self, other):
        return isinstance(other, BilinearForm) and self.parity == other.parity and np.array_equal(self.gram, other.gram)

    __hash__ = None


def omega(w: BilinearForm, a, b, p: int) -> int:
    return int(np.asarray(a) @ w.gram @ np.asarray(b) % p)


def form_parity(alg: LieSuperAlgebra, G: np.ndarray) -> int:
    q = alg.space.parity
    found = {int((q[i] + q[j]) % 2) for i, j in zip(*np.nonzero(G))}
    if len(found) > 1:
        raise FormError("form is not homogeneous")
    return found.pop() if found else EVEN


@dataclass
class FormCheck:
    skew: bool
    parity_ok: bool
    closed: bool
    nondegenerate: bool

    @property
    def ok(self) -> bool:
        return self.skew and self.parity_ok and self.closed and self.nondegenerate


def is_super_antisymmetric(alg: LieSuperAlgebra, G: np.ndarray) -> bool:
    return not np.any((G + alg._sign * G.T) % alg.p)


def form_check(alg: LieSuperAlgebra, w: BilinearForm) -> FormCheck:
    p, G = alg.p, w.gram % alg.p
    q = alg.space.parity
    wrong = (q[:, None] + q[None, :] + w.parity) % 2 == 1
    return FormCheck(
        skew=is_super_antisymmetric(alg, G),
        parity_ok=not np.any(G[wrong]),
        closed=is_closed(alg, G),
        nondegenerate=rank(G, p) == alg.dim,
    )


# ------------------------------------------------------------- orthogonals

def orthogonal_complement(alg: LieSuperAlgebra, w: BilinearForm, S: np.ndarray) -> np.ndarray:
    """``{v : w(v, s) = 0 for s in S}`` as an RREF basis."""
    p, n = alg.p, alg.dim
    S = np.asarray(S, dtype=np.int64).reshape(-1, n)
    if S.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    return span(kernel(S @ w.gram.T % p, p), p, n)


def is_isotropic(alg, w, S) -> bool:
    perp = orthogonal_complement(alg, w, S)
    return all(in_span(perp, s, alg.p) for s in np.asarray(S).reshape(-1, alg.dim))


def is_nondegenerate_subspace(alg, w, S) -> bool:
    S = span(S, alg.p, alg.dim)
    return intersect(S, orthogonal_complement(alg, w, S), alg.p).shape[0] == 0


def is_lagrangian(alg, w, S) -> bool:
    S = span(S, alg.p, alg.dim)
    return np.array_equal(S, orthogonal_complement(alg, w, S))


# --------------------------------------------------------------- detection

def form_basis(alg: LieSuperAlgebra, parity: int) -> list[np.ndarray]:
    """Super antisymmetric Gram matrices of the given parity, one per free entry."""
    n, q, p = alg.dim, alg.space.parities, alg.p
    out = []
    for i in range(n):
        for j in range(i, n):
            if (q[i] + q[j]) % 2 != parity:
                continue
            if i == j and q[i] == EVEN:
                continue
            G = np.zeros((n, n), dtype=np.int64)
            G[i, j] = 1
            if i != j:
                G[j, i] = 1 if q[i] * q[j] else p - 1
            out.append(G)
    return out


def closed_forms(alg: LieSuperAlgebra, parity: int) -> list[np.ndarray]:
    """Basis of the space of closed super antisymmetric forms of the given parity."""
    from .cohomology import closure_defect

    basis = form_basis(alg, parity)
    if not basis:
        return []
    A = np.stack([closure_defect(alg, G).reshape(-1) for G in basis], axis=1)
    K = kernel(A % alg.p, alg.p)
    return [np.tensordot(k, np.stack(basis), axes=1) % alg.p for k in K]


@dataclass
class Detection:
    found: BilinearForm | None
    certificate: str  # "none", "common_radical", "parity_dimension", "exhaustive", "inconclusive"
    radical: np.ndarray
    space_dim: int
    seed: int
    budget: int
    tried: int = 0

    @property
    def exists(self) -> bool | None:
        if self.found is not None:
            return True
        return False if self.certificate in ("common_radical", "parity_dimension", "exhaustive") else None


EXHAUSTIVE_LIMIT = 4096


def detect_qf(alg: LieSuperAlgebra, parity: int, budget: int = 256, seed: int = 0) -> Detection:
    p, n = alg.p, alg.dim
    forms = closed_forms(alg, parity)
    if forms:
        stacked = np.vstack([G.T for G in forms]) % p
        radical = span(kernel(stacked, p), p, n)
    else:
        radical = np.eye(n, dtype=np.int64)
    d = len(forms)
    if radical.shape[0]:
        return Detection(None, "common_radical", radical, d, seed, budget)
    n0, n1 = alg.space.dims
    if (parity == EVEN and n0 % 2) or (parity == ODD and n0 != n1):
        # an even form pairs g_0 with itself skew-symmetrically; an odd one pairs g_0 with g_1
        return Detection(None, "parity_dimension", radical, d, seed, budget)
    stack = np.stack(forms)
    if p ** d <= EXHAUSTIVE_LIMIT:
        tried = 0
        for coeffs in product(range(p), repeat=d):
            tried += 1
            G = np.tensordot(np.array(coeffs), stack, axes=1) % p
            if rank(G, p) == n:
                return Detection(BilinearForm(G, parity), "none", radical, d, seed, budget, tried)
        return Detection(None, "exhaustive", radical, d, seed, budget, tried)
    rng = np.random.default_rng(seed)
    for t in range(budget):
        coeffs = rng.integers(0, p, size=d)
        G = np.tensordot(coeffs, stack, axes=1) % p
        if rank(G, p) == n:
            return Detection(BilinearForm(G, parity), "none", radical, d, seed, budget, t + 1)
    return Detection(None, "inconclusive", radical, d, seed, budget, budget)


# ----------------------------------------------------------------- adjoint

def adjoint(alg: LieSuperAlgebra, w: BilinearForm, D: GradedMap) -> GradedMap:
    """``D*`` with ``w(D a, b) = (-1)^{|a||D|} w(a, D* b)``, i.e. ``D^T G = S G D*``."""
    p = alg.p
    if rank(w.gram, p) != alg.dim:
        raise FormError("adjoint needs a non-degenerate form")
    s = np.where(alg.space.parity * D.parity % 2 == 1, p - 1, 1)
    M = matinv(w.gram % p, p) @ (s[:, None] * (D.matrix.T @ w.gram % p)) % p
    return GradedMap(M % p, D.parity)


def form_of(M: np.ndarray, w: BilinearForm, p: int) -> np.ndarray:
    """Gram matrix of ``(a, b) -> w(M a, b)``."""
    return M.T @ w.gram % p


def cocycle_C(alg: LieSuperAlgebra, w: BilinearForm, D: GradedMap) -> np.ndarray:
    Ds = adjoint(alg, w, D)
    return form_of((D.matrix + Ds.matrix) % alg.p, w, alg.p)


def cocycle_C_literal(alg: LieSuperAlgebra, w: BilinearForm, D: GradedMap) -> np.ndarray:
    """``w(D a, b) + (-1)^{|a||D|} w(a, D b)`` entry by entry."""
    p = alg.p
    s = np.where(alg.space.parity * D.parity % 2 == 1, p - 1, 1)
    return (D.matrix.T @ w.gram + s[:, None] * (w.gram @ D.matrix)) % p


# ------------------------------------------------------------- sigma and P

def sigma_all(alg: LieSuperAlgebra, w: BilinearForm, D: GradedMap, a: np.ndarray, b: np.ndarray,
              M: np.ndarray | None = None) -> np.ndarray:
    """``sigma_1..sigma_{p-1}`` from ``w(M(ua+b), (ad_{ua+b})^{p-2}(a)) = sum i sigma_i u^{i-1}``, ``M = D + D*``."""
    p, n = alg.p, alg.dim
    if M is None:
        M = (D.matrix + adjoint(alg, w, D).matrix) % p
    A, B = alg.ad(a), alg.ad(b)
    v = np.zeros((p, n), dtype=np.int64)
    v[0] = a % p
    for _ in range(p - 2):
        nxt = v @ B.T
        nxt[1:] += v[:-1] @ A.T
        v = nxt % p
    Ma, Mb = M @ a % p, M @ b % p
    coeff = np.zeros(p + 1, dtype=np.int64)
    for k in range(p):
        coeff[k] += Mb @ w.gram @ v[k]
        coeff[k + 1] += Ma @ w.gram @ v[k]
    coeff %= p
    return np.array([coeff[i - 1] * inv(i, p) % p for i in range(1, p)], dtype=np.int64)


def sigma_closed_forms(alg, w, D, a, b, M=None) -> dict:
    """Closed forms: sigma_1 for any p; sigma_1, sigma_2 for p = 3."""
    p = alg.p
    if M is None:
        M = (D.matrix + adjoint(alg, w, D).matrix) % p
    out = {1: int((M @ b) @ w.gram @ (matpow(alg.ad(b), p - 2, p) @ a) % p)}
    if p == 3:
        out[2] = int(2 * ((M @ a) @ w.gram @ alg.bracket(b, a)) % p)
    return out


def sigma_wordsum(alg, w, D, a, b, M=None) -> int:
    """Sum of all sigma_i over bracket words ending in ``[b, a]``."""
    p = alg.p
    if M is None:
        M = (D.matrix + adjoint(alg, w, D).matrix) % p
    total = 0
    ba = alg.bracket(b, a)
    for word in product((0, 1), repeat=p - 2):
        xs = [a if t else b for t in word]
        count = sum(word) + 1
        tail = _nested(alg, xs[1:], ba)
        total += int((M @ xs[0]) @ w.gram @ tail % p) * inv(count, p)
    return total % p


def P_eval(alg: LieSuperAlgebra, w: BilinearForm, D: GradedMap, P_basis: np.ndarray, a: np.ndarray,
           M: np.ndarray | None = None) -> int:
    """Extend ``P`` from even basis values by the sigma addition law, ascending order."""
    p = alg.p
    if M is None:
        M = (D.matrix + adjoint(alg, w, D).matrix) % p
    a = np.asarray(a, dtype=np.int64) % p
    acc = np.zeros(alg.dim, dtype=np.int64)
    val = 0
    for j in np.nonzero(a)[0]:
        t = np.zeros(alg.dim, dtype=np.int64)
        t[j] = a[j]
        val += int(a[j]) * int(P_basis[j]) + int(sigma_all(alg, w, D, acc, t, M).sum())
        acc = (acc + t) % p
    return val % p


def build_CP(alg: LieSuperAlgebra, pm: PMap, w: BilinearForm, D: GradedMap,
             P_basis=None) -> RestrictedCochain2:
    p = alg.p
    C = cocycle_C(alg, w, D)
    theta = np.zeros(alg.dim, dtype=np.int64) if P_basis is None else np.asarray(P_basis, dtype=np.int64) % p
    return RestrictedCochain2(C, theta, (D.parity + w.parity) % 2)


def prop_cocycle_defect(alg, pm, w, D, a, b, M=None) -> int:
    """``w(M b^{[p]}, a) - w(M b, ad_b^{p-1} a)``; zero on all even pairs iff (C, P) is a cocycle."""
    p = alg.p
    if M is None:
        M = (D.matrix + adjoint(alg, w, D).matrix) % p
    bp = pmap_eval(alg, pm, b)
    lhs = (M @ bp) @ w.gram @ a
    rhs = (M @ b) @ w.gram @ (matpow(alg.ad(b), p - 1, p) @ a)
    return int((lhs - rhs) % p)


# ------------------------------------------------------------ obstructions

@dataclass(eq=False)
class Obstruction:
    kind: str
    cochain: RestrictedCochain2
    M_omega: np.ndarray  # Omega(a, b) = w(M_omega a, b)
    second: callable = field(repr=False)  # formula for T / Delta / 0 on arbitrary even a
    witness: Cochain1 | None = None
    Z: np.ndarray | None = None

    @property
    def is_coboundary(self) -> bool:
        return self.witness is not None


def kind_parities(kind: str) -> tuple[int, int]:
    """(parity of D, parity of the form) for a construction kind."""
    return {
        "ortho_even": (EVEN, EVEN),
        "ortho_odd": (ODD, EVEN),
        "peri_even": (EVEN, ODD),
        "peri_odd": (ODD, ODD),
    }[kind]


def build_obstruction(alg: LieSuperAlgebra, pm: PMap, w: BilinearForm, D: GradedMap, kind: str,
                      lam=0, P_basis=None) -> Obstruction:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    dpar, wpar = kind_parities(kind)
    if D.parity != dpar or w.parity != wpar:
        raise AlgebraError(f"{kind} needs a derivation of parity {dpar} and a form of parity {wpar}")
    p, n = alg.p, alg.dim
    lam = fp(lam, p)
    Dm = D.matrix
    Ds = adjoint(alg, w, D).matrix
    S = (Dm + Ds) % p
    if dpar == EVEN:
        M = (Dm @ Dm + 2 * Ds @ Dm + Ds @ Ds + lam * S) % p
    else:
        M = (Dm @ Dm - Ds @ Ds) % p
    phi = form_of(M, w, p)
    P_basis = np.zeros(n, dtype=np.int64) if P_basis is None else np.asarray(P_basis, dtype=np.int64) % p

    def first_term(a):
        return int((S @ a) @ w.gram @ (matpow(alg.ad(a), p - 2, p) @ (Dm @ a)) % p)

    if kind == "ortho_even":
        def second(a):
            return (first_term(a) + lam * P_eval(alg, w, D, P_basis, a, S)) % p
    elif kind == "ortho_odd":
        second = first_term
    else:
        def second(a):
            return 0

    I = np.eye(n, dtype=np.int64)
    theta = np.zeros(n, dtype=np.int64)
    for k in alg.space.even:
        theta[k] = second(I[k])
    c = RestrictedCochain2(phi, theta, (dpar + wpar) % 2)
    chi = is_restricted_coboundary(alg, pm, c)
    Z = Z_from_witness(alg, w, chi) if chi is not None else None
    return Obstruction(kind, c, M, second, chi, Z)


def Z_from_witness(alg: LieSuperAlgebra, w: BilinearForm, chi: Cochain1) -> np.ndarray:
    """Solve ``w(Z, .) = chi``."""
    sol = linalg_solve(w.gram.T % alg.p, chi.functional, alg.p)
    if not sol.consistent:
        raise FormError("witness is not representable; form degenerate?")
    return sol.particular


def P_from_Z(alg: LieSuperAlgebra, pm: PMap, w: BilinearForm, D: GradedMap, Z: np.ndarray, lam) -> np.ndarray:
    """Basis values of ``P`` forced by ``T(a) = w(Z, a^{[p]})`` when ``lam != 0``."""
    p = alg.p
    lam = fp(lam, p)
    if lam == 0:
        raise ValueError("P is not determined by Z when lambda = 0")
    S = (D.matrix + adjoint(alg, w, D).matrix) % p
    I = np.eye(alg.dim, dtype=np.int64)
    out = np.zeros(alg.dim, dtype=np.int64)
    for k in alg.space.even:
        a = I[k]
        t0 = (S @ a) @ w.gram @ (matpow(alg.ad(a), p - 2, p) @ (D.matrix @ a))
        out[k] = (Z @ w.gram @ pm.images[k] - t0) * inv(lam, p) % p
    return out


# --------------------------------------------------------------- misc checks

def frobenius_exact(alg: LieSuperAlgebra, w: BilinearForm) -> Cochain1 | None:
    """``f`` with ``f([e_i, e_j]) = w(e_i, e_j)``, if any."""
    p, n = alg.p, alg.dim
    sol = linalg_solve(alg.table.reshape(n * n, n), w.gram.reshape(-1), p)
    if not sol.consistent:
        return None
    return Cochain1(sol.particular, w.parity)


def dim_bound_check(alg: LieSuperAlgebra, w: BilinearForm | None = None) -> bool:
    """``dim z(a) <= dim a - dim [a, a]``."""
    return center(alg).shape[0] <= alg.dim - derived(alg).shape[0]


__all__ = [
    "BilinearForm",
    "Detection",
    "FormCheck",
    "FormError",
    "KINDS",
    "Obstruction",
    "P_eval",
    "P_from_Z",
    "Z_from_witness",
    "adjoint",
    "build_CP",
    "build_obstruction",
    "closed_forms",
    "cocycle_C",
    "cocycle_C_literal",
    "detect_qf",
    "dim_bound_check",
    "form_check",
    "form_of",
    "frobenius_exact",
    "is_isotropic",
    "is_lagrangian",
    "is_nondegenerate_subspace",
    "is_restricted_cocycle",
    "kind_parities",
    "omega",
    "orthogonal_complement",
    "prop_cocycle_defect",
    "sigma_all",
    "sigma_closed_forms",
    "sigma_wordsum",
]
