"""Lie algebras given by structure constants, and the subspace machinery on them.

Basis vectors are numbered from 1 in the public API (``e_1 .. e_n``) and
from 0 in arrays.  The structure tensor ``T`` satisfies
``[e_i, e_j] = sum_k T[i, j, k] e_k`` and is antisymmetric in its first two
indices by construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple

import numpy as np

from .exactfield import FieldSpec, Scalar
from .exceptions import (
    DimensionMismatch,
    JacobiViolation,
    NotAnIdeal,
    NotFiliform,
    NotNilpotent,
    SingularMatrix,
    UnsupportedField,
)
from .linalg import Subspace, _any, inverse, is_invertible, kernel, matmul

__all__ = [
    "StructureTable",
    "BasisChange",
    "make_algebra",
    "bracket",
    "centralizer",
    "center",
    "is_ideal",
    "is_abelian_subspace",
    "lower_central_series",
    "is_nilpotent",
    "nil_index",
    "is_filiform",
    "type_sequence",
    "quotient",
    "Quotient",
    "central_quotient_tower",
    "all_ideals",
    "ideals_of_dim",
    "filiform_basis",
    "apply_basis_change",
    "is_compatible_basis",
    "is_filiform_basis",
    "is_adapted_basis",
    "jacobi_violations",
]


class StructureTable:
    """A finite-dimensional Lie algebra over a prime field or Q.

    ``constants`` maps ``(i, j, k)`` with ``1 <= i < j <= n`` to ``c_ij^k``;
    missing entries are zero.  The Jacobi identity is checked on every basis
    triple unless ``check=False``.
    """

    def __init__(
        self,
        dim: int,
        field: FieldSpec,
        constants: Optional[Mapping[Tuple[int, int, int], object]] = None,
        label: Optional[str] = None,
        *,
        check: bool = True,
        family=None,
    ):
        if dim < 1:
            raise ValueError("dimension must be positive")
        T = field.zeros((dim, dim, dim))
        for key, value in (constants or {}).items():
            try:
                i, j, k = key
            except (TypeError, ValueError):
                raise IndexError(f"malformed structure-constant key {key!r}") from None
            if not all(isinstance(t, (int, np.integer)) for t in (i, j, k)):
                raise IndexError(f"malformed structure-constant key {key!r}")
            if not (1 <= i < j <= dim and 1 <= k <= dim):
                raise IndexError(f"key {key!r} out of range or not i < j (n={dim})")
            c = field.canonical(value)
            T[i - 1, j - 1, k - 1] = c
            T[j - 1, i - 1, k - 1] = field.canonical(-c)
        self._init(T, field, label, check, family)

    @classmethod
    def from_tensor(cls, T, field: FieldSpec, label=None, *, check=True, family=None) -> "StructureTable":
        """Build from a full ``n x n x n`` tensor; antisymmetry is verified."""
        T = field.asarray(T)
        n = T.shape[0]
        if T.shape != (n, n, n):
            raise DimensionMismatch(f"structure tensor of shape {T.shape}")
        if _any(field.reduce(T + T.transpose(1, 0, 2))):
            raise ValueError("structure tensor is not antisymmetric")
        obj = cls.__new__(cls)
        obj._init(T, field, label, check, family)
        return obj

    @classmethod
    def unchecked(cls, dim, field, constants=None, label=None) -> "StructureTable":
        """Skip the Jacobi check; for negative tests and raw file fixtures."""
        return cls(dim, field, constants, label, check=False)

    def _init(self, T, field, label, check, family):
        self.dim = T.shape[0]
        self.field = field
        self.label = label
        self.family = family
        self._T = T
        self._T.setflags(write=False)
        self._cache: Dict[str, object] = {}
        if check:
            bad = jacobi_violations(self, first_only=True)
            if bad:
                i, j, k = bad[0]
                raise JacobiViolation(i, j, k)

    # -- data access -------------------------------------------------------
    @property
    def tensor(self) -> np.ndarray:
        return self._T

    @property
    def constants(self) -> Dict[Tuple[int, int, int], Scalar]:
        out = {}
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    if self._T[i, j, k] != 0:
                        out[(i + 1, j + 1, k + 1)] = Scalar(self._T[i, j, k], self.field)
        return out

    def key(self):
        if "key" not in self._cache:
            body = self._T.tobytes() if self.field.is_finite else tuple(self._T.flat)
            self._cache["key"] = (self.dim, self.field.p, body)
        return self._cache["key"]

    def __eq__(self, other):
        return isinstance(other, StructureTable) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        name = f" {self.label!r}" if self.label else ""
        return f"<StructureTable{name} dim={self.dim} over {self.field}, {len(self.constants)} nonzero c_ij^k>"

    def relabel(self, label: Optional[str], family=None) -> "StructureTable":
        return StructureTable.from_tensor(self._T, self.field, label, check=False, family=family)

    # -- linear maps -------------------------------------------------------
    def vector(self, v) -> np.ndarray:
        arr = self.field.asarray(v).reshape(-1)
        if arr.shape[0] != self.dim:
            raise DimensionMismatch(f"vector of length {arr.shape[0]} in a {self.dim}-dimensional algebra")
        return arr

    def unit(self, i: int) -> np.ndarray:
        """Coordinate vector of ``e_i`` (1-based)."""
        v = self.field.zeros(self.dim)
        v[i - 1] = 1
        return v

    def bracket(self, u, v) -> np.ndarray:
        u, v = self.vector(u), self.vector(v)
        return self.field.reduce(np.einsum("i,j,ijk->k", u, v, self._T))

    def brackets(self, U: np.ndarray, V: np.ndarray) -> np.ndarray:
        """All brackets ``[U_a, V_b]`` as an array of shape ``(len(U), len(V), n)``."""
        return self.field.reduce(np.einsum("ai,bj,ijk->abk", U, V, self._T))

    def ad_stack(self, B: np.ndarray) -> np.ndarray:
        """Matrix of ``u -> ([u, b_1], ..., [u, b_s])`` stacked, shape ``(s*n, n)``."""
        n = self.dim
        M = np.einsum("sj,ijk->ski", B, self._T)
        return self.field.reduce(M).reshape(-1, n)


def jacobi_violations(g: StructureTable, first_only: bool = False) -> List[Tuple[int, int, int]]:
    """Basis triples ``i < j < k`` (1-based) where the Jacobi identity fails."""
    T = g.tensor
    # X[i, j, k] = [e_i, [e_j, e_k]]
    X = np.einsum("jkm,iml->ijkl", T, T)
    J = g.field.reduce(X + np.einsum("jkil->ijkl", X) + np.einsum("kijl->ijkl", X))
    out = []
    n = g.dim
    for i, j, k in combinations(range(n), 3):
        if _any(J[i, j, k]):
            out.append((i + 1, j + 1, k + 1))
            if first_only:
                break
    return out


def make_algebra(dim: int, field: FieldSpec, constants=None, label=None) -> StructureTable:
    return StructureTable(dim, field, constants, label)


def bracket(g: StructureTable, u, v) -> np.ndarray:
    return g.bracket(u, v)


def centralizer(g: StructureTable, S: Subspace) -> Subspace:
    n = g.dim
    if S.ambient_dim != n:
        raise DimensionMismatch("subspace lives in a different ambient space")
    if S.dim == 0:
        return Subspace.full(n, g.field)
    return kernel(g.ad_stack(S.basis), g.field)


def _full(g: StructureTable) -> Subspace:
    if "full" not in g._cache:
        g._cache["full"] = Subspace.full(g.dim, g.field)
    return g._cache["full"]


def center(g: StructureTable) -> Subspace:
    if "center" not in g._cache:
        g._cache["center"] = kernel(g.ad_stack(g.field.eye(g.dim)), g.field)
    return g._cache["center"]


def is_ideal(g: StructureTable, S: Subspace) -> bool:
    if S.dim in (0, g.dim):
        return True
    V = np.einsum("si,ijk->sjk", S.basis, g.tensor).reshape(-1, g.dim)
    return S.contains_all(g.field.reduce(V))


def is_abelian_subspace(g: StructureTable, S: Subspace) -> bool:
    if S.dim == 0:
        return True
    return not _any(g.brackets(S.basis, S.basis))


def _bracket_with_algebra(g: StructureTable, S: Subspace) -> Subspace:
    """``[S, g]`` as a subspace."""
    if S.dim == 0:
        return S
    V = np.einsum("si,ijk->sjk", S.basis, g.tensor).reshape(-1, g.dim)
    return Subspace(g.field.reduce(V), g.dim, g.field)


def lower_central_series(g: StructureTable) -> List[Subspace]:
    """``[C^1 = g, C^2 = [g, g], ...]`` up to stabilization (ends at 0 iff nilpotent)."""
    if "lcs" not in g._cache:
        series = [_full(g)]
        while True:
            nxt = _bracket_with_algebra(g, series[-1])
            if nxt == series[-1]:
                break
            series.append(nxt)
            if nxt.dim == 0:
                break
        g._cache["lcs"] = series
    return list(g._cache["lcs"])


def is_nilpotent(g: StructureTable) -> bool:
    return lower_central_series(g)[-1].dim == 0


def nil_index(g: StructureTable) -> Optional[int]:
    """Smallest ``p`` with ``C^{p+1} = 0``; ``None`` when not nilpotent."""
    series = lower_central_series(g)
    if series[-1].dim != 0:
        return None
    return len(series) - 1


def is_filiform(g: StructureTable) -> bool:
    if "filiform" not in g._cache:
        n = g.dim
        series = lower_central_series(g)
        ok = True
        for k in range(2, n + 1):
            dim_k = series[k - 1].dim if k - 1 < len(series) else series[-1].dim
            if dim_k != n - k:
                ok = False
                break
        g._cache["filiform"] = ok
    return g._cache["filiform"]


def type_sequence(g: StructureTable) -> Tuple[int, ...]:
    """Dimensions of the successive quotients ``C^k / C^{k+1}`` of the lower central series."""
    series = lower_central_series(g)
    return tuple(series[k].dim - series[k + 1].dim for k in range(len(series) - 1))


class Quotient(NamedTuple):
    algebra: StructureTable
    projection: np.ndarray  # (n - m) x n, coordinates on the coset representatives
    representatives: Tuple[int, ...]  # 0-based coordinates used as coset representatives


def quotient(g: StructureTable, h: Subspace, label=None, *, check: bool = True) -> Quotient:
    """``g / h`` on the basis of non-pivot coordinates of ``h``'s echelon form."""
    if not is_ideal(g, h):
        raise NotAnIdeal("the subspace is not an ideal")
    F = g.field
    n = g.dim
    reps = h.complement_coordinates()
    m = len(reps)
    if m == 0:
        raise ValueError("quotient by the whole algebra is zero-dimensional")
    proj = F.zeros((m, n))
    for a, q in enumerate(reps):
        proj[a, q] = 1
    nonpiv = np.array(reps, dtype=int)
    for row, pc in zip(h.basis, h.pivots):
        # e_pc = row - (rest of row)  =>  e_pc == -sum_q row[q] e_q  mod h
        proj[:, pc] = F.reduce(-row[nonpiv])
    sub = g.tensor[np.ix_(reps, reps)]
    Tq = F.reduce(np.einsum("ck,abk->abc", proj, sub))
    alg = StructureTable.from_tensor(Tq, F, label, check=check)
    return Quotient(alg, proj, tuple(reps))


def central_quotient_tower(g: StructureTable, depth: int) -> List[StructureTable]:
    """``[g^(0), g^(1), ..., g^(depth)]`` with ``g^(i) = g^(i-1) / Z(g^(i-1))``."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    tower = [g]
    for _ in range(depth):
        cur = tower[-1]
        nxt = cur._cache.get("central_quotient")
        if nxt is None:
            label = f"{cur.label}/Z" if cur.label else None
            nxt = quotient(cur, center(cur), label, check=False).algebra
            cur._cache["central_quotient"] = nxt
        tower.append(nxt)
    return tower


def _lines_in(S: Subspace):
    F = S.field
    s = S.dim
    for c in range(s):
        for tail in product(range(F.p), repeat=s - c - 1):
            coeffs = [0] * c + [1] + list(tail)
            v = F.reduce(np.dot(np.array(coeffs, dtype=F.dtype), S.basis))
            yield Subspace(v.reshape(1, -1), S.ambient_dim, F)


def all_ideals(g: StructureTable, _memo=None) -> List[Subspace]:
    """Every ideal of a nilpotent algebra over a finite field.

    A nonzero ideal of a nilpotent algebra meets the center, so it contains
    some central line ``L`` and is the preimage of an ideal of ``g / L``.
    """
    F = g.field
    if not F.is_finite:
        raise UnsupportedField("ideal enumeration needs a finite field")
    if "ideals" in g._cache:
        return list(g._cache["ideals"])
    memo = {} if _memo is None else _memo
    key = g.key()
    if key in memo:
        return list(memo[key])
    n = g.dim
    found = {Subspace.zero(n, F), _full(g)}
    Z = center(g)
    if Z.dim == 0:
        raise NotNilpotent("algebra with trivial center is not nilpotent")
    if n > 1:
        for L in _lines_in(Z):
            q = quotient(g, L, check=False)
            reps = list(q.representatives)
            for J in all_ideals(q.algebra, memo):
                lifts = F.zeros((J.dim, n))
                if J.dim:
                    lifts[:, reps] = J.basis
                found.add(Subspace(np.vstack([L.basis, lifts]), n, F))
    out = sorted(found)
    memo[key] = out
    g._cache["ideals"] = out
    return list(out)


def ideals_of_dim(g: StructureTable, m: int):
    """Yield each m-dimensional ideal exactly once (deterministic order)."""
    if not 0 <= m <= g.dim:
        return
    for h in all_ideals(g):
        if h.dim == m:
            yield h


# -- bases ----------------------------------------------------------------------


@dataclass(frozen=True)
class BasisChange:
    """New basis ``e'_j = sum_i P[i, j] e_i`` (columns of ``P`` are the new vectors)."""

    matrix: np.ndarray
    field: FieldSpec

    def __post_init__(self):
        if not is_invertible(self.matrix, self.field):
            raise SingularMatrix("basis change matrix is singular")

    def inverse(self) -> "BasisChange":
        return BasisChange(inverse(self.matrix, self.field), self.field)


def apply_basis_change(g: StructureTable, P, label=None) -> StructureTable:
    """Structure constants of ``g`` in the basis given by the columns of ``P``."""
    F = g.field
    M = P.matrix if isinstance(P, BasisChange) else F.asarray(P)
    if M.shape != (g.dim, g.dim):
        raise DimensionMismatch("basis change of the wrong size")
    Pinv = inverse(M, F)
    T = F.reduce(np.einsum("ia,jb,ijk->abk", M, M, g.tensor))
    T = F.reduce(np.einsum("ck,abk->abc", Pinv, T))
    return StructureTable.from_tensor(T, F, label if label is not None else g.label, check=False)


def _span_of_units(g: StructureTable, idx: Iterable[int]) -> Subspace:
    n = g.dim
    rows = [g.unit(i) for i in idx]
    return Subspace(np.array(rows, dtype=g.field.dtype).reshape(-1, n), n, g.field)


def is_compatible_basis(g: StructureTable) -> bool:
    """``C^k = <e_2, ..., e_{n-k+1}>`` for ``2 <= k <= n`` (standard basis)."""
    n = g.dim
    if not is_filiform(g):
        return False
    series = lower_central_series(g)
    for k in range(2, n):
        if series[k - 1] != _span_of_units(g, range(2, n - k + 2)):
            return False
    return True


def _is_unit(v: np.ndarray, i: int) -> bool:
    """``v == e_i`` with ``i`` 1-based."""
    w = v.copy()
    if w[i - 1] != 1:
        return False
    w[i - 1] = 0
    return not _any(w)


def filiform_basis_kinds(g: StructureTable) -> Optional[Dict[int, int]]:
    """For each ``i in 3..n``: 1 if ``[e_1, e_i] = e_{i-1}``, else 2 if ``[e_i, e_n] = e_{i-1}``.

    ``None`` when the standard basis is not a filiform basis.
    """
    n = g.dim
    if not is_compatible_basis(g):
        return None
    T = g.tensor
    kinds = {}
    for i in range(3, n + 1):
        if _is_unit(T[0, i - 1], i - 1):
            kinds[i] = 1
        elif _is_unit(T[i - 1, n - 1], i - 1):
            kinds[i] = 2
        else:
            return None
    return kinds


def is_filiform_basis(g: StructureTable) -> bool:
    return filiform_basis_kinds(g) is not None


def is_adapted_basis(g: StructureTable) -> bool:
    """Compatible, ``[e_1, e_{i+1}] = e_i`` for ``3 <= i <= n-1`` and ``[e_3, e_n] = 0``."""
    n = g.dim
    if not is_compatible_basis(g):
        return False
    T = g.tensor
    if n >= 4 and _any(T[2, n - 1]):
        return False
    return all(_is_unit(T[0, i], i) for i in range(3, n))


def _direction_pairs(F: FieldSpec):
    if F.is_finite:
        values = range(F.p)
    else:
        values = (0, 1, -1, 2, -2)
    vecs = [(1, 0), (0, 1)] + [(a, b) for a in values for b in values if (a, b) not in ((0, 0), (1, 0), (0, 1))]
    return vecs


def _try_chain(g: StructureTable, e1, en, series) -> Optional[List[np.ndarray]]:
    """Complete ``e_1, e_n`` to a filiform basis by brackets, with backtracking over the kind."""
    n = g.dim
    F = g.field
    top = g.bracket(e1, en)
    if series[2].reduce_vector(top) is None:
        return None
    chain = {n: en, n - 1: top}

    def extend(i):
        # define e_{i-1} from e_i; it must lie in C^{n-i+2} but not in C^{n-i+3}
        if i == 2:
            return True
        deeper = series[n - i + 2] if n - i + 2 < len(series) else Subspace.zero(n, F)
        for cand in (g.bracket(e1, chain[i]), g.bracket(chain[i], en)):
            if deeper.reduce_vector(cand) is None:
                continue
            chain[i - 1] = cand
            if extend(i - 1):
                return True
            del chain[i - 1]
        return False

    if not extend(n - 1):
        return None
    return [e1] + [chain[i] for i in range(2, n + 1)]


def filiform_basis(g: StructureTable) -> BasisChange:
    """A change of basis turning the standard basis of ``g`` into a filiform basis.

    Candidates for ``e_1`` and ``e_n`` are tried in a fixed order (first
    without, then with, a component in ``C^2``); the first pair whose bracket
    chain is compatible with the lower central series wins.
    """
    if not is_filiform(g):
        raise NotFiliform("algebra is not filiform")
    F = g.field
    n = g.dim
    if n <= 2 or is_filiform_basis(g):
        return BasisChange(F.eye(n), F)
    series = lower_central_series(g)
    while len(series) <= n:
        series.append(Subspace.zero(n, F))
    C2 = series[1]
    u, v = C2.complement_coordinates()
    dirs = _direction_pairs(F)

    def base_vec(ab):
        w = F.zeros(n)
        w[u], w[v] = F.canonical(ab[0]), F.canonical(ab[1])
        return w

    def shifts():
        yield F.zeros(n)
        if F.is_finite:
            for coeffs in product(range(F.p), repeat=C2.dim):
                if any(coeffs):
                    yield F.reduce(np.dot(np.array(coeffs, dtype=F.dtype), C2.basis))
        else:
            for row in C2.basis:
                yield row

    for w1 in shifts():
        for w2 in (F.zeros(n),) if not _any(w1) else shifts():
            for d1 in dirs:
                for d2 in dirs:
                    if F.canonical(d1[0] * d2[1] - d1[1] * d2[0]) == 0:
                        continue
                    e1 = F.reduce(base_vec(d1) + w1)
                    en = F.reduce(base_vec(d2) + w2)
                    basis = _try_chain(g, e1, en, series)
                    if basis is not None:
                        P = np.array(basis, dtype=F.dtype).T.copy()
                        return BasisChange(P, F)
    raise NotFiliform("no filiform basis found")  # contradicts the existence lemma
