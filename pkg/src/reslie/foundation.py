"""Exact arithmetic over F_p, linear algebra, and graded vector spaces.

Vectors and matrices are plain ``numpy`` int64 arrays holding residues in
``[0, p)``. Scalars are Python ints. A subspace is represented by a 2-D
array whose rows are its reduced-row-echelon basis, which makes subspace
equality a plain array comparison.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

EVEN, ODD = 0, 1


class DimensionError(ValueError):
    """Raised when matrix/vector shapes do not fit together."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    return _kernels.inverse_table(p)


def check_modulus(p: int) -> int:
    p = int(p)
    if p <= 2 or not is_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p}")
    return p


def fp(x, p: int) -> int:
    """Coerce an int, Fraction, or string like ``"-1/2"`` to a residue mod p."""
    if isinstance(x, (bool, np.bool_)):
        raise TypeError("booleans are not field elements")
    if isinstance(x, (int, np.integer)):
        return int(x) % p
    if isinstance(x, str):
        x = Fraction(x.strip())
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"{x} has no image in F_{p}")
        return (x.numerator * pow(x.denominator, -1, p)) % p
    raise TypeError(f"cannot interpret {x!r} as an element of F_{p}")


def inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    return pow(a, -1, p)


def signed(a: int, p: int) -> int:
    """Symmetric representative in (-p/2, p/2], for display."""
    a %= p
    return a - p if a > p // 2 else a


def vec(values: Iterable, p: int) -> np.ndarray:
    return np.array([fp(v, p) for v in values], dtype=np.int64)


def zeros(n: int) -> np.ndarray:
    return np.zeros(n, dtype=np.int64)


def unit(n: int, i: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.int64)
    v[i] = 1
    return v


def mat(rows, p: int) -> np.ndarray:
    return np.array([[fp(v, p) for v in row] for row in rows], dtype=np.int64).reshape(
        len(rows), -1
    )


# ------------------------------------------------------------ linear algebra

def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {A.shape}")
    if A.shape[0] == 0 or A.shape[1] == 0:
        return A % p, np.zeros(0, dtype=np.int64)
    return _kernels.rref(A, p, inverse_table(p))


@dataclass(frozen=True)
class Solution:
    particular: np.ndarray | None
    kernel: np.ndarray  # rows form a basis of the null space

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def kernel(A: np.ndarray, p: int) -> np.ndarray:
    """Null space basis (rows), one vector per free column, lowest index first."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    R, pivots = rref(A, p)
    free = [c for c in range(n) if c not in set(pivots.tolist())]
    K = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        for r, c in enumerate(pivots):
            K[t, c] = (-R[r, f]) % p
    return K


def linalg_solve(A: np.ndarray, b: np.ndarray, p: int) -> Solution:
    """Solve ``A x = b`` over F_p.

    Returns the particular solution whose free coordinates are zero (absent when
    the system is inconsistent) together with a null-space basis.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if A.ndim != 2 or A.shape[0] != b.shape[0]:
        raise DimensionError(f"A has shape {A.shape} but b has length {b.shape[0]}")
    m, n = A.shape
    K = kernel(A, p) if m else np.eye(n, dtype=np.int64)
    if m == 0:
        return Solution(np.zeros(n, dtype=np.int64), K)
    R, pivots = rref(np.concatenate([A % p, (b % p)[:, None]], axis=1), p)
    if len(pivots) and pivots[-1] == n:
        return Solution(None, K)
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = R[r, n]
    return Solution(x, K)


def rank(A: np.ndarray, p: int) -> int:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def det(A: np.ndarray, p: int) -> int:
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError("determinant of a non-square matrix")
    if A.shape[0] == 0:
        return 1
    return _kernels.det(A, p, inverse_table(p))


def det_rank(A: np.ndarray, p: int) -> tuple[int | None, int]:
    A = np.asarray(A, dtype=np.int64)
    d = det(A, p) if A.ndim == 2 and A.shape[0] == A.shape[1] else None
    return d, rank(A, p)


def matinv(A: np.ndarray, p: int) -> np.ndarray:
    n = A.shape[0]
    R, pivots = rref(np.concatenate([A % p, np.eye(n, dtype=np.int64)], axis=1), p)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:].copy()


def matpow(A: np.ndarray, k: int, p: int) -> np.ndarray:
    result = np.eye(A.shape[0], dtype=np.int64)
    base = A % p
    while k:
        if k & 1:
            result = result @ base % p
        base = base @ base % p
        k >>= 1
    return result


# ------------------------------------------------------------------ subspaces

def span(vectors, p: int, n: int | None = None) -> np.ndarray:
    """Canonical (RREF) basis of the span of the given vectors."""
    V = np.asarray(vectors, dtype=np.int64)
    if V.size == 0:
        if n is None:
            n = V.shape[-1] if V.ndim == 2 else 0
        return np.zeros((0, n), dtype=np.int64)
    V = V.reshape(-1, V.shape[-1])
    R, pivots = rref(V, p)
    return R[: len(pivots)].copy()


def in_span(U: np.ndarray, v: np.ndarray, p: int) -> bool:
    if U.shape[0] == 0:
        return not np.any(np.asarray(v) % p)
    return rank(np.vstack([U, v]), p) == rank(U, p)


def is_subspace(U: np.ndarray, V: np.ndarray, p: int) -> bool:
    return all(in_span(V, u, p) for u in U)


def intersect(U: np.ndarray, V: np.ndarray, p: int) -> np.ndarray:
    n = U.shape[1]
    if U.shape[0] == 0 or V.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    # x U = y V  <=>  (x, -y) in ker [U; -V]^T
    K = kernel(np.vstack([U, (-V) % p]).T, p)
    return span(K[:, : U.shape[0]] @ U % p, p, n)


def coordinates(U: np.ndarray, v: np.ndarray, p: int) -> np.ndarray | None:
    """Coefficients c with ``c @ U == v`` or None when v is not in the span."""
    sol = linalg_solve(U.T, v, p)
    return sol.particular


# -------------------------------------------------------------- graded spaces

@dataclass(frozen=True)
class SuperSpace:
    names: tuple[str, ...]
    parities: tuple[int, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.names) != len(self.parities):
            raise ValueError("names and parities differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be unique")
        if any(q not in (EVEN, ODD) for q in self.parities):
            raise ValueError("parities must be 0 (even) or 1 (odd)")
        object.__setattr__(self, "_index", {nm: i for i, nm in enumerate(self.names)})

    @classmethod
    def build(cls, even: Sequence[str], odd: Sequence[str]) -> "SuperSpace":
        return cls(tuple(even) + tuple(odd), (EVEN,) * len(even) + (ODD,) * len(odd))

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def dims(self) -> tuple[int, int]:
        n_odd = sum(self.parities)
        return self.dim - n_odd, n_odd

    @property
    def parity(self) -> np.ndarray:
        return np.array(self.parities, dtype=np.int64)

    @property
    def even(self) -> list[int]:
        return [i for i, q in enumerate(self.parities) if q == EVEN]

    @property
    def odd(self) -> list[int]:
        return [i for i, q in enumerate(self.parities) if q == ODD]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown basis element {name!r}") from None

    def vector(self, coeffs: dict, p: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for name, c in coeffs.items():
            v[self.index(name)] = (v[self.index(name)] + fp(c, p)) % p
        return v

    def sign_matrix(self) -> np.ndarray:
        """``S[k, l] = (-1)^{|e_k||e_l|}``."""
        q = self.parity
        return np.where(np.outer(q, q) == 1, -1, 1).astype(np.int64)


def vector_parity(space: SuperSpace, v: np.ndarray) -> str:
    v = np.asarray(v)
    support = np.nonzero(v)[0]
    if support.size == 0:
        return "zero"
    qs = {space.parities[i] for i in support}
    if len(qs) == 2:
        return "mixed"
    return "even" if qs == {EVEN} else "odd"


def is_homogeneous(space: SuperSpace, v: np.ndarray) -> bool:
    return vector_parity(space, v) != "mixed"


def gram_from_wedge(space: SuperSpace, terms, p: int) -> np.ndarray:
    """Gram matrix ``G[k, l] = w(e_k, e_l)`` of ``w = sum c * e_i^* ^ e_j^*``.

    Dual pairing ``<e_i^*, e_j> = delta_ij`` with the tensor rule
    ``<f (x) g, u (x) v> = (-1)^{|u||g|} <f, u><g, v>``. Hence ``e_i^* ^ e_j^*``
    is 1 on ``(e_i, e_j)`` unless both are odd, in which case it is the symmetric
    form with value -1 on ``(e_i, e_j)`` and ``(e_j, e_i)``. For odd ``e_i`` the
    square ``e_i^* ^ e_i^*`` has value -1 on ``(e_i, e_i)``.
    """
    n = space.dim
    G = np.zeros((n, n), dtype=np.int64)
    q = space.parities
    for i, j, c in terms:
        i = space.index(i) if isinstance(i, str) else int(i)
        j = space.index(j) if isinstance(j, str) else int(j)
        c = fp(c, p)
        if q[i] * q[j]:
            G[i, j] -= c
            if i != j:
                G[j, i] -= c
        elif i == j:
            raise ValueError("e_i^* ^ e_i^* vanishes for even e_i")
        else:
            G[i, j] += c
            G[j, i] -= c
    return G % p


def wedge_terms(space: SuperSpace, G: np.ndarray, p: int) -> list[tuple[int, int, int]]:
    """Inverse of :func:`gram_from_wedge` on super antisymmetric matrices."""
    q = space.parities
    out = []
    for i in range(space.dim):
        for j in range(i, space.dim):
            g = int(G[i, j]) % p
            if not g or (i == j and not q[i]):
                continue
            out.append((i, j, (-g) % p if q[i] * q[j] else g))
    return out
