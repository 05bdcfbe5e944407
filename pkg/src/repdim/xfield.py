"""Exact dense linear algebra over prime fields and the rationals.

Matrices are plain numpy arrays.  Over ``F_p`` with small ``p`` they use
``int64`` storage with entries in ``[0, p)``; over the rationals (and for
large primes) they are object arrays of :class:`fractions.Fraction` /
Python ints.  All elimination uses fixed left-to-right pivoting so every
derived basis and particular solution is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

_INT64_SAFE_PRIME = 46341  # p*p < 2**31 keeps int64 matmul exact for n < 2**32


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """A prime field ``F_p`` (``p`` set) or the rationals (``p is None``)."""

    p: int | None = 5

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def rational(cls) -> "Field":
        return cls(None)

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def dtype(self):
        if self.p is not None and self.p < _INT64_SAFE_PRIME:
            return np.int64
        return object

    def __str__(self):
        return "Q" if self.p is None else f"F_{self.p}"

    def to_json(self) -> dict:
        return {"p": self.p} if self.p is not None else {"rational": True}

    # -- scalars ---------------------------------------------------------
    def element(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    # -- arrays ----------------------------------------------------------
    def array(self, data, shape=None) -> np.ndarray:
        if isinstance(data, np.ndarray) and data.dtype != object and self.dtype is np.int64:
            out = data.astype(np.int64) % self.p
        else:
            raw = np.asarray(data, dtype=object)
            if raw.size == 0:
                out = np.zeros(raw.shape, dtype=self.dtype)
            else:
                flat = [self.element(x) for x in raw.ravel()]
                out = np.array(flat, dtype=self.dtype).reshape(raw.shape)
        if shape is not None:
            out = out.reshape(shape)
        return out

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.dtype is np.int64:
            return np.zeros((rows, cols), dtype=np.int64)
        z = np.empty((rows, cols), dtype=object)
        z.fill(Fraction(0) if self.p is None else 0)
        return z

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.element(1)
        return out

    def reduce(self, a):
        if self.p is None:
            return a
        return a % self.p

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return self.reduce(a @ b)

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def scale(self, c, a):
        return self.reduce(self.element(c) * a)

    def neg(self, a):
        return self.reduce(-a)

    def is_zero(self, a) -> bool:
        return not np.any(a != 0)

    def kron(self, a, b):
        if a.size == 0 or b.size == 0:
            return self.zeros(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
        return self.reduce(np.kron(a, b))

    def random_matrix(self, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        if self.p is not None:
            vals = rng.integers(0, self.p, size=(rows, cols))
        else:
            vals = rng.integers(-3, 4, size=(rows, cols))
        return self.array(vals.tolist(), shape=(rows, cols))

    def random_invertible(self, rng: np.random.Generator, n: int) -> np.ndarray:
        while True:
            g = self.random_matrix(rng, n, n)
            if rank(self, g) == n:
                return g


DEFAULT_FIELD = Field(5)


# ---------------------------------------------------------------------------
# elimination primitives


def rref(F: Field, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with left-to-right pivoting."""
    R = F.array(A).copy()
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, c] != 0)[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = F.reduce(R[r] * F.inv(R[r, c]))
        col = R[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col != 0)[0]
        if len(rows):
            R[rows] = F.reduce(R[rows] - np.outer(col[rows], R[r]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: Field, A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def kernel_basis(F: Field, A: np.ndarray) -> np.ndarray:
    """Basis of the right null space, returned as the columns of an ``n x k`` matrix."""
    m, n = A.shape
    if m == 0:
        return F.eye(n)
    R, pivots = rref(F, A)
    free = [c for c in range(n) if c not in set(pivots)]
    K = F.zeros(n, len(free))
    for j, fcol in enumerate(free):
        K[fcol, j] = F.element(1)
        for i, pc in enumerate(pivots):
            K[pc, j] = F.reduce(-R[i, fcol])
    return K


def solve_right(F: Field, A: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """A particular solution ``X`` of ``A X = b`` (free variables set to zero), or None."""
    if A.shape[0] != b.shape[0]:
        raise ValueError(f"shape mismatch: A has {A.shape[0]} rows, b has {b.shape[0]}")
    m, n = A.shape
    k = b.shape[1]
    if m == 0:
        return F.zeros(n, k)
    R, pivots = rref(F, np.concatenate([F.array(A), F.array(b)], axis=1))
    if pivots and pivots[-1] >= n:
        return None
    X = F.zeros(n, k)
    for i, pc in enumerate(pivots):
        X[pc] = R[i, n:]
    return X


def image_basis(F: Field, A: np.ndarray) -> np.ndarray:
    """Column-space basis: the pivot columns of ``A``."""
    if A.size == 0:
        return F.zeros(A.shape[0], 0)
    _, pivots = rref(F, A)
    return F.array(A)[:, pivots]


def inverse(F: Field, A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    X = solve_right(F, A, F.eye(n))
    if X is None or rank(F, A) < n:
        raise ZeroDivisionError("matrix is singular")
    return X


def left_inverse(F: Field, K: np.ndarray) -> np.ndarray:
    """``L`` with ``L K = I`` for ``K`` of full column rank."""
    n, k = K.shape
    if k == 0:
        return F.zeros(0, n)
    R, pivots = rref(F, np.concatenate([F.array(K), F.eye(n)], axis=1))
    if pivots[:k] != list(range(k)):
        raise ValueError("matrix does not have full column rank")
    return R[:k, k:]


def complement_basis(F: Field, S: np.ndarray) -> np.ndarray:
    """Standard basis vectors completing the columns of ``S`` to a basis."""
    n = S.shape[0]
    if S.shape[1] == 0:
        return F.eye(n)
    _, pivots = rref(F, S.T)
    rest = [j for j in range(n) if j not in set(pivots)]
    return F.eye(n)[:, rest]


def quotient_map(F: Field, S: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """For a subspace with independent columns ``S`` return ``(Q, L)``.

    ``Q`` has kernel ``span(S)``, ``L`` is a section: ``Q L = I`` and ``Q S = 0``.
    """
    C = complement_basis(F, S)
    B = np.concatenate([F.array(S), C], axis=1)
    Binv = inverse(F, B)
    return Binv[S.shape[1]:], C


def in_span(F: Field, S: np.ndarray, v: np.ndarray) -> bool:
    if v.ndim == 1:
        v = v.reshape(-1, 1)
    if S.shape[1] == 0:
        return F.is_zero(v)
    return solve_right(F, S, v) is not None


def independent_columns(F: Field, A: np.ndarray) -> np.ndarray:
    return image_basis(F, A)


def mat_power(F: Field, A: np.ndarray, e: int) -> np.ndarray:
    out = F.eye(A.shape[0])
    base = A
    while e:
        if e & 1:
            out = F.matmul(out, base)
        e >>= 1
        if e:
            base = F.matmul(base, base)
    return out
