"""Lie superalgebras given by structure constants over F_p."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, permutations

import numpy as np

from .foundation import (
    EVEN,
    ODD,
    SuperSpace,
    fp,
    is_homogeneous,
    kernel,
    matpow,
    span,
    vector_parity,
)


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GradedMap:
    """Linear endomorphism; column ``l`` of ``matrix`` is the image of ``e_l``."""

    matrix: np.ndarray
    parity: int

    def __call__(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v

    def __eq__(self, other):
        return (
            isinstance(other, GradedMap)
            and self.parity == other.parity
            and np.array_equal(self.matrix, other.matrix)
        )

    __hash__ = None


def graded_map(space: SuperSpace, matrix: np.ndarray, p: int, parity: int | None = None) -> GradedMap:
    M = np.asarray(matrix, dtype=np.int64) % p
    q = space.parity
    support = np.nonzero(M)
    found = {int((q[r] + q[c]) % 2) for r, c in zip(*support)}
    if parity is None:
        if len(found) > 1:
            raise AlgebraError("map is not homogeneous")
        parity = found.pop() if found else EVEN
    elif found - {parity}:
        raise AlgebraError(f"map has components of the wrong parity for {parity}")
    return GradedMap(M, int(parity))


def rank_one(space: SuperSpace, terms, p: int, parity: int | None = None) -> GradedMap:
    """Build ``sum c * (v (x) w^*)`` from ``(v_name, w_name, c)`` triples; it sends
    ``e_w`` to ``c * e_v``."""
    M = np.zeros((space.dim, space.dim), dtype=np.int64)
    for v, w, c in terms:
        M[space.index(v), space.index(w)] += fp(c, p)
    return graded_map(space, M, p, parity)


@dataclass(frozen=True, eq=False)
class LieSuperAlgebra:
    """``table[i, j]`` holds the coordinates of ``[e_i, e_j]``."""

    space: SuperSpace
    p: int
    table: np.ndarray
    name: str = ""
    _sign: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_sign", self.space.sign_matrix())

    @classmethod
    def from_brackets(cls, space: SuperSpace, p: int, brackets: dict, name: str = ""):
        """``brackets`` maps ``(i, j)`` (indices or names) to a coefficient dict or vector.

        Only one of ``(i, j)``/``(j, i)`` may be given; the other is derived by
        super antisymmetry.
        """
        n = space.dim
        T = np.zeros((n, n, n), dtype=np.int64)
        given = set()
        for (i, j), value in brackets.items():
            i = space.index(i) if isinstance(i, str) else int(i)
            j = space.index(j) if isinstance(j, str) else int(j)
            if (j, i) in given and i != j:
                raise AlgebraError(f"bracket of {space.names[i]}, {space.names[j]} given twice")
            v = space.vector(value, p) if isinstance(value, dict) else np.asarray(value, dtype=np.int64) % p
            qi, qj = space.parities[i], space.parities[j]
            if vector_parity(space, v) not in ("zero", ("even", "odd")[(qi + qj) % 2]):
                raise AlgebraError(
                    f"[{space.names[i]}, {space.names[j]}] breaks the grading"
                )
            sgn = -1 if qi * qj else 1
            if i == j and sgn == 1 and np.any(v):
                raise AlgebraError(f"[{space.names[i]}, {space.names[i]}] must vanish for even elements")
            T[i, j] = v
            T[j, i] = (-sgn * v) % p if i != j else v
            given.add((i, j))
        return cls(space, p, T % p, name)

    @property
    def dim(self) -> int:
        return self.space.dim

    def nonzero_brackets(self):
        """(i, j, vector) for i <= j with a nonzero bracket."""
        n = self.dim
        for i in range(n):
            for j in range(i, n):
                if np.any(self.table[i, j]):
                    yield i, j, self.table[i, j]

    def bracket(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", a, b, self.table) % self.p

    def ad(self, a: np.ndarray) -> np.ndarray:
        """Matrix of ``ad_a``: column j holds ``[a, e_j]``."""
        return np.einsum("i,ijk->kj", a, self.table) % self.p

    def ad_basis(self) -> np.ndarray:
        """``A[i]`` is the matrix of ``ad_{e_i}``."""
        return np.transpose(self.table, (0, 2, 1))

    def parity_of(self, v: np.ndarray) -> str:
        return vector_parity(self.space, v)


# ------------------------------------------------------------------ checks

@dataclass
class Report:
    ok: bool
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _double_brackets(alg: LieSuperAlgebra) -> np.ndarray:
    """``B[a, b, c] = [e_a, [e_b, e_c]]``."""
    return np.einsum("bck,akl->abcl", alg.table, alg.table) % alg.p


def verify_algebra(alg: LieSuperAlgebra) -> Report:
    p, T, S = alg.p, alg.table, alg._sign
    names = alg.space.names
    failures = []
    anti = (np.transpose(T, (1, 0, 2)) + S[:, :, None] * T) % p
    for i, j in zip(*np.nonzero(np.any(anti, axis=2))):
        if i <= j:
            failures.append(("antisymmetry", (names[i], names[j])))
    B = _double_brackets(alg)
    # sum_cyc (-1)^{|a||c|} [a, [b, c]]
    J = (
        S[:, None, :, None] * B
        + S[None, :, :, None] * np.transpose(B, (1, 2, 0, 3))
        + S[:, :, None, None] * np.transpose(B, (2, 0, 1, 3))
    ) % p
    for a, b, c in zip(*np.nonzero(np.any(J, axis=3))):
        failures.append(("jacobi", (names[a], names[b], names[c])))
    if p == 3:
        # [a,[a,a]] = 0 for odd a, coefficient by coefficient
        for trip in combinations_with_replacement(alg.space.odd, 3):
            total = sum(B[o] for o in set(permutations(trip))) % p
            if np.any(total):
                failures.append(("cubic", tuple(names[t] for t in trip)))
    return Report(not failures, failures)


def ad_power(alg: LieSuperAlgebra, a: np.ndarray, k: int) -> GradedMap:
    M = matpow(alg.ad(a), k, alg.p)
    par = vector_parity(alg.space, a)
    if par == "mixed":
        raise AlgebraError("ad_power needs a homogeneous element")
    q = ODD if par == "odd" and k % 2 else EVEN
    return GradedMap(M, q)


def center(alg: LieSuperAlgebra) -> np.ndarray:
    """Joint kernel of all ad_{e_i}: v is central iff [e_i, v] = 0 for all i."""
    A = alg.ad_basis().reshape(-1, alg.dim)
    return span(kernel(A, alg.p), alg.p, alg.dim)


def derived(alg: LieSuperAlgebra) -> np.ndarray:
    return span(alg.table.reshape(-1, alg.dim), alg.p, alg.dim)


def centralizer(alg: LieSuperAlgebra, ideal: np.ndarray) -> np.ndarray:
    """{v : [v, u] = 0 for all u in the given subspace}."""
    if ideal.shape[0] == 0:
        return np.eye(alg.dim, dtype=np.int64)
    # [v, u] = sum_i v_i [e_i, u]; rows: for each u, matrix columns = [e_i, u]
    blocks = [np.einsum("ijk,j->ki", alg.table, u) for u in ideal]
    return span(kernel(np.vstack(blocks) % alg.p, alg.p), alg.p, alg.dim)


def center_derived(alg: LieSuperAlgebra):
    return center(alg), derived(alg), lambda ideal: centralizer(alg, ideal)


def graded_intersection(space: SuperSpace, U: np.ndarray, parity: int, p: int) -> np.ndarray:
    from .foundation import intersect

    mask = np.array([q == parity for q in space.parities])
    comp = np.eye(space.dim, dtype=np.int64)[mask]
    return intersect(U, comp, p)


# ------------------------------------------------------------- derivations

def _leibniz_system(alg: LieSuperAlgebra, parity: int):
    """Linear system whose kernel is the space of derivations of given parity.

    Unknowns are matrix entries ``D[r, c]`` allowed by the parity.
    """
    n, p, T = alg.dim, alg.p, alg.table
    q = alg.space.parity
    I = np.eye(n, dtype=np.int64)
    sgn = np.where(q * parity % 2 == 1, -1, 1)  # (-1)^{|D||e_i|}
    # A[i, j, out, r, c]
    A = np.einsum("or,ijc->ijorc", I, T)
    A = A - np.einsum("ci,rjo->ijorc", I, T)
    A = A - sgn[:, None, None, None, None] * np.einsum("cj,iro->ijorc", I, T)
    A = A.reshape(n * n * n, n * n) % p
    allowed = [r * n + c for r in range(n) for c in range(n) if (q[r] + q[c]) % 2 == parity]
    return A[:, allowed], allowed


def derivation_space(alg: LieSuperAlgebra, parity: int) -> list[GradedMap]:
    n, p = alg.dim, alg.p
    A, allowed = _leibniz_system(alg, parity)
    out = []
    for k in kernel(A, p):
        M = np.zeros(n * n, dtype=np.int64)
        M[allowed] = k
        out.append(GradedMap(M.reshape(n, n), parity))
    return out


def leibniz_defect(alg: LieSuperAlgebra, D: GradedMap) -> np.ndarray:
    """``E[i, j] = D[e_i,e_j] - [D e_i, e_j] - (-1)^{|D||e_i|} [e_i, D e_j]``."""
    p, T, M = alg.p, alg.table, D.matrix
    q = alg.space.parity
    sgn = np.where(q * D.parity % 2 == 1, -1, 1)
    lhs = np.einsum("ijc,oc->ijo", T, M)
    t1 = np.einsum("ri,rjo->ijo", M, T)
    t2 = np.einsum("rj,iro->ijo", M, T)
    return (lhs - t1 - sgn[:, None, None] * t2) % p


def is_derivation(alg: LieSuperAlgebra, D: GradedMap) -> bool:
    return not np.any(leibniz_defect(alg, D))


def is_inner(alg: LieSuperAlgebra, D: GradedMap) -> np.ndarray | None:
    """Return X with D = ad_X, if any (lowest-index canonical)."""
    from .foundation import linalg_solve

    A = alg.ad_basis().reshape(alg.dim, -1).T
    sol = linalg_solve(A, D.matrix.reshape(-1), alg.p)
    return sol.particular


def commutator(D: GradedMap, E: GradedMap, p: int) -> GradedMap:
    s = -1 if D.parity * E.parity else 1
    return GradedMap((D.matrix @ E.matrix - s * E.matrix @ D.matrix) % p, (D.parity + E.parity) % 2)


__all__ = [
    "AlgebraError",
    "GradedMap",
    "LieSuperAlgebra",
    "Report",
    "ad_power",
    "center",
    "center_derived",
    "centralizer",
    "commutator",
    "derivation_space",
    "derived",
    "graded_intersection",
    "graded_map",
    "is_derivation",
    "is_homogeneous",
    "is_inner",
    "rank_one",
    "verify_algebra",
]
