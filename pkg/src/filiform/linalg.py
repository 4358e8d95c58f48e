"""Dense exact linear algebra over a :class:`~filiform.exactfield.FieldSpec`.

Matrices are plain numpy arrays holding canonical field values (see
``FieldSpec.asarray``).  Subspaces of ``K^n`` are stored by their reduced
row-echelon basis, so equality of subspaces is equality of arrays.
"""
from __future__ import annotations

from itertools import combinations, product
from typing import Iterator, NamedTuple, Optional

import numpy as np

from .exactfield import FieldSpec
from .exceptions import DimensionMismatch, SingularMatrix, UnsupportedField

__all__ = [
    "rref",
    "rank",
    "kernel",
    "solve",
    "Solution",
    "inverse",
    "det",
    "matmul",
    "Subspace",
    "superspaces_of",
    "subspaces_of_dim",
    "gaussian_binomial",
    "is_invertible",
]


def _nonzero_rows(col: np.ndarray) -> np.ndarray:
    return col.nonzero()[0]


def rref(M, field: FieldSpec):
    """Reduced row-echelon form.

    Returns ``(R, rank, pivot_columns)``; ``R`` has the same shape as ``M``
    with the zero rows at the bottom.
    """
    A = field.asarray(M)
    if A.ndim != 2:
        raise DimensionMismatch("rref expects a 2-d matrix")
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = _nonzero_rows(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        lead = A[r, c]
        if lead != 1:
            A[r] = field.reduce(A[r] * field.inv(lead))
        col = A[:, c].copy()
        col[r] = 0
        others = _nonzero_rows(col)
        if others.size:
            A[others] = field.reduce(A[others] - np.outer(col[others], A[r]))
        pivots.append(c)
        r += 1
    return A, r, pivots


def rank(M, field: FieldSpec) -> int:
    return rref(M, field)[1]


def kernel(M, field: FieldSpec) -> "Subspace":
    """The null space ``{v : M v = 0}`` as a canonical :class:`Subspace`."""
    R, r, pivots = rref(M, field)
    cols = R.shape[1]
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = field.zeros((len(free), cols))
    for t, fcol in enumerate(free):
        basis[t, fcol] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = -R[i, fcol]
    return Subspace(field.reduce(basis), cols, field)


class Solution(NamedTuple):
    x: np.ndarray
    kernel: "Subspace"


def solve(M, b, field: FieldSpec) -> Optional[Solution]:
    """One solution of ``M x = b`` plus the kernel of ``M``; ``None`` if inconsistent."""
    A = field.asarray(M)
    bb = field.asarray(b).reshape(-1)
    if A.shape[0] != bb.shape[0]:
        raise DimensionMismatch(f"{A.shape} matrix against length-{bb.shape[0]} vector")
    cols = A.shape[1]
    R, r, pivots = rref(np.column_stack([A, bb]), field)
    if cols in pivots:
        return None
    x = field.zeros(cols)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, cols]
    return Solution(x, kernel(A, field))


def inverse(M, field: FieldSpec) -> np.ndarray:
    A = field.asarray(M)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionMismatch("inverse of a non-square matrix")
    R, r, _ = rref(np.hstack([A, field.eye(n)]), field)
    if r < n or any(R[i, i] != 1 for i in range(n)) or _any(R[:n, :n] - field.eye(n)):
        raise SingularMatrix("matrix is not invertible")
    return R[:, n:].copy()


def det(M, field: FieldSpec):
    """Determinant as a raw canonical value."""
    A = field.asarray(M)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionMismatch("det of a non-square matrix")
    d = 1
    for c in range(n):
        nz = _nonzero_rows(A[c:, c])
        if nz.size == 0:
            return field.canonical(0)
        k = c + int(nz[0])
        if k != c:
            A[[c, k]] = A[[k, c]]
            d = -d
        lead = A[c, c]
        d = d * lead
        below = _nonzero_rows(A[c + 1 :, c]) + c + 1
        if below.size:
            factor = field.reduce(A[below, c] * field.inv(lead))
            A[below] = field.reduce(A[below] - np.outer(factor, A[c]))
    return field.canonical(d if field.is_finite else d)


def is_invertible(M, field: FieldSpec) -> bool:
    A = field.asarray(M)
    return A.shape[0] == A.shape[1] and rank(A, field) == A.shape[0]


def matmul(A, B, field: FieldSpec) -> np.ndarray:
    return field.reduce(np.dot(A, B))


def _any(a: np.ndarray) -> bool:
    if a.dtype == object:
        return any(x != 0 for x in a.flat)
    return bool(a.any())


class Subspace:
    """A subspace of ``K^n`` held by its reduced row-echelon basis (rows)."""

    __slots__ = ("ambient_dim", "field", "basis", "pivots", "_key")

    def __init__(self, rows, ambient_dim: int, field: FieldSpec):
        rows = field.asarray(rows) if len(rows) else field.zeros((0, ambient_dim))
        rows = rows.reshape(-1, ambient_dim)
        R, r, pivots = rref(rows, field)
        self.ambient_dim = ambient_dim
        self.field = field
        self.basis = R[:r]
        self.basis.setflags(write=False)
        self.pivots = tuple(pivots)
        self._key = None

    @classmethod
    def _from_rref(cls, basis: np.ndarray, pivots, ambient_dim: int, field: FieldSpec) -> "Subspace":
        obj = cls.__new__(cls)
        obj.ambient_dim = ambient_dim
        obj.field = field
        obj.basis = basis
        obj.basis.setflags(write=False)
        obj.pivots = tuple(pivots)
        obj._key = None
        return obj

    @classmethod
    def zero(cls, n: int, field: FieldSpec) -> "Subspace":
        return cls._from_rref(field.zeros((0, n)), (), n, field)

    @classmethod
    def full(cls, n: int, field: FieldSpec) -> "Subspace":
        return cls._from_rref(field.eye(n), range(n), n, field)

    @classmethod
    def span(cls, vectors, n: int, field: FieldSpec) -> "Subspace":
        return cls(vectors, n, field)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.dim

    def key(self):
        if self._key is None:
            if self.field.is_finite:
                self._key = (self.ambient_dim, self.basis.shape, self.basis.tobytes())
            else:
                self._key = (self.ambient_dim, self.basis.shape, tuple(self.basis.flat))
        return self._key

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.field == other.field and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return (self.dim, self.basis.tolist()) < (other.dim, other.basis.tolist())

    def contains(self, v) -> bool:
        v = self.field.asarray(v).reshape(-1)
        return self.reduce_vector(v) is None

    __contains__ = contains

    def reduce_vector(self, v):
        """Remainder of ``v`` after clearing pivot coordinates; ``None`` if ``v`` lies in the space."""
        v = self.field.asarray(v).reshape(-1).copy()
        for row, pc in zip(self.basis, self.pivots):
            if v[pc] != 0:
                v = self.field.reduce(v - v[pc] * row)
        return None if not _any(v) else v

    def residuals(self, V: np.ndarray) -> np.ndarray:
        """Rows of ``V`` reduced modulo the space (zero rows lie inside it)."""
        V = self.field.asarray(V).reshape(-1, self.ambient_dim)
        if self.dim == 0:
            return V
        return self.field.reduce(V - np.dot(V[:, list(self.pivots)], self.basis))

    def contains_all(self, V) -> bool:
        return not _any(self.residuals(V))

    def contains_subspace(self, other: "Subspace") -> bool:
        return self.contains_all(other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(np.vstack([self.basis, other.basis]), self.ambient_dim, self.field)

    def intersection(self, other: "Subspace") -> "Subspace":
        # v = a B1 = b B2  <=>  (a, -b) in ker [B1; B2]^T
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.field)
        stacked = np.vstack([self.basis, self.field.reduce(-other.basis)]).T
        ker = kernel(stacked, self.field)
        vecs = matmul(ker.basis[:, : self.dim], self.basis, self.field)
        return Subspace(vecs, self.ambient_dim, self.field)

    def complement_coordinates(self):
        """Coordinates that are not pivots; they index a complement of the space."""
        piv = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in piv]

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.ambient_dim}, {self.field}, basis={self.basis.tolist()})"


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _echelon_completions(r: int, k: int, p: int) -> Iterator[np.ndarray]:
    """All k x r matrices in reduced row-echelon form of rank k over F_p."""
    for pivots in combinations(range(r), k):
        free = []
        for row, pc in enumerate(pivots):
            for c in range(pc + 1, r):
                if c not in pivots:
                    free.append((row, c))
        base = np.zeros((k, r), dtype=np.int64)
        for row, pc in enumerate(pivots):
            base[row, pc] = 1
        for values in product(range(p), repeat=len(free)):
            m = base.copy()
            for (row, c), v in zip(free, values):
                m[row, c] = v
            yield m


def superspaces_of(m: int, containing: Subspace, n: Optional[int] = None, field: Optional[FieldSpec] = None):
    """Yield every m-dimensional subspace of K^n containing ``containing``, once each.

    Order is lexicographic in the pivot pattern and then in the free entries
    of the echelon form of the quotient ``K^n / containing``.
    """
    n = containing.ambient_dim if n is None else n
    field = containing.field if field is None else field
    if not field.is_finite:
        raise UnsupportedField("subspace enumeration over Q is infinite")
    if n != containing.ambient_dim:
        raise DimensionMismatch("ambient dimension disagrees with the contained subspace")
    u = containing.dim
    if not u <= m <= n:
        return
    comp = containing.complement_coordinates()
    r = len(comp)
    for block in _echelon_completions(r, m - u, field.p):
        lifted = field.zeros((m - u, n))
        lifted[:, comp] = block
        yield Subspace(np.vstack([containing.basis, lifted]), n, field)


def subspaces_of_dim(m: int, n: int, field: FieldSpec):
    return superspaces_of(m, Subspace.zero(n, field), n, field)
