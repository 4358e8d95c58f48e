"""Isotopism and isomorphism invariants: the d-sequence, z1, z2 and fingerprints.

``d_m(g)`` is the largest dimension of the centralizer of an m-dimensional
ideal.  For a filiform algebra the ideals are known explicitly: ``0``, the
terms ``C^k`` of the lower central series, and the subspaces containing
``C^2`` (an ideal not inside ``C^2`` already contains an element of
``C^2 \\ C^3``, and an ideal meeting ``C^k \\ C^{k+1}`` contains ``C^k``).
That gives a fast exact path; the generic path enumerates all ideals.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Tuple

import numpy as np

from .exactfield import FieldSpec
from .exceptions import NotFiliform, NotNilpotent, UnsupportedField
from .liealg import (
    StructureTable,
    all_ideals,
    center,
    central_quotient_tower,
    centralizer,
    is_abelian_subspace,
    is_filiform,
    is_nilpotent,
    lower_central_series,
    type_sequence,
)
from .linalg import Subspace, rank

__all__ = [
    "Fingerprint",
    "fingerprint",
    "d_sequence",
    "d_sequence_bruteforce",
    "z1",
    "z2",
    "isotopy_key",
    "TOWER_DEPTH",
]

TOWER_DEPTH = 2


def _filiform_d(g: StructureTable) -> Tuple[int, ...]:
    n = g.dim
    F = g.field
    if n <= 2:
        # abelian: every subspace is an ideal with full centralizer
        return tuple([n] * n)
    series = lower_central_series(g)
    cens = _series_centralizers(g)
    out = [0] * n
    for m in range(1, n - 1):
        out[m - 1] = cens[n - m].dim
    # hyperplanes containing C^2: C^2 + <v>, v running over P^1 of g / C^2
    C2 = series[1]
    W = cens[2]
    u, w = C2.complement_coordinates()
    Wu = np.einsum("si,ik->sk", W.basis, g.tensor[:, u, :])
    Ww = np.einsum("si,ik->sk", W.basis, g.tensor[:, w, :])
    best = 0
    for alpha, beta in _projective_line(F):
        M = F.reduce(alpha * Wu + beta * Ww)
        best = max(best, W.dim - rank(M.T, F))
    out[n - 2] = best
    out[n - 1] = center(g).dim
    return tuple(out)


def _projective_line(F: FieldSpec):
    yield (1, 0)
    for t in range(F.p):
        yield (t, 1)


def d_sequence_bruteforce(g: StructureTable) -> Tuple[int, ...]:
    """d-sequence by enumerating every ideal (no filiform shortcut)."""
    n = g.dim
    out = [0] * n
    for h in all_ideals(g):
        if h.dim:
            out[h.dim - 1] = max(out[h.dim - 1], centralizer(g, h).dim)
    return tuple(out)


def d_sequence(g: StructureTable) -> Tuple[int, ...]:
    """``(d_1, ..., d_n)``; entry ``m`` is 0 when there is no m-dimensional ideal."""
    if not g.field.is_finite:
        raise UnsupportedField("d-sequence needs a finite field (ideals over Q are infinite in number)")
    if "dseq" not in g._cache:
        if is_filiform(g):
            g._cache["dseq"] = _filiform_d(g)
        else:
            if not is_nilpotent(g):
                raise NotNilpotent("d-sequence is only defined here for nilpotent algebras")
            g._cache["dseq"] = d_sequence_bruteforce(g)
    return g._cache["dseq"]


def _series_centralizers(g: StructureTable):
    """``[None, Cen(C^1), ..., Cen(C^{n+1})]``, cached on the table."""
    if "series_cen" not in g._cache:
        n, F = g.dim, g.field
        series = lower_central_series(g)
        out = [None]
        for k in range(1, n + 2):
            term = _series_term(series, k, n, F)
            out.append(centralizer(g, term) if term.dim else Subspace.full(n, F))
        g._cache["series_cen"] = out
    return g._cache["series_cen"]


def _series_term(series, k, n, F):
    """``C^k`` for any k >= 1, padding with zero past the end."""
    if k - 1 < len(series):
        return series[k - 1]
    return Subspace.zero(n, F)


def z1(g: StructureTable) -> int:
    """Largest k with ``Cen(C^{n-k+2})`` strictly containing ``C^2``."""
    if not is_filiform(g):
        raise NotFiliform("z1 is defined for filiform algebras")
    n, F = g.dim, g.field
    series = lower_central_series(g)
    C2 = _series_term(series, 2, n, F)
    cens = _series_centralizers(g)
    best = 0
    for k in range(1, n + 1):
        cen = cens[n - k + 2]
        if cen.dim > C2.dim and cen.contains_subspace(C2):
            best = k
    return best


def z2(g: StructureTable) -> int:
    """Largest k with ``C^{n-k+1}`` abelian."""
    if not is_filiform(g):
        raise NotFiliform("z2 is defined for filiform algebras")
    n, F = g.dim, g.field
    series = lower_central_series(g)
    best = 0
    for k in range(1, n + 1):
        if is_abelian_subspace(g, _series_term(series, n - k + 1, n, F)):
            best = k
    return best


@dataclass(frozen=True, order=True)
class Fingerprint:
    dim: int
    char: int
    type_seq: Tuple[int, ...]
    d0: Tuple[int, ...]
    d1: Tuple[int, ...]
    d2: Tuple[int, ...]
    z1: int
    z2: int

    def as_dict(self) -> Dict[str, object]:
        return {
            "dim": self.dim,
            "char": self.char,
            "type": list(self.type_seq),
            "d0": list(self.d0),
            "d1": list(self.d1),
            "d2": list(self.d2),
            "z1": self.z1,
            "z2": self.z2,
        }

    @classmethod
    def from_dict(cls, data) -> "Fingerprint":
        return cls(
            int(data["dim"]),
            int(data["char"]),
            tuple(data["type"]),
            tuple(data["d0"]),
            tuple(data["d1"]),
            tuple(data["d2"]),
            int(data["z1"]),
            int(data["z2"]),
        )

    def isotopy_part(self) -> Tuple:
        """The entries proven to be isotopism invariants: type and ``d(g)``."""
        return (self.dim, self.char, self.type_seq, self.d0)


# d of a quotient depends only on its table; sweeps revisit the same quotients often
_QUOTIENT_D: Dict[tuple, Tuple[int, ...]] = {}


def _cached_d(q: StructureTable) -> Tuple[int, ...]:
    key = q.key()
    hit = _QUOTIENT_D.get(key)
    if hit is None:
        hit = d_sequence(q)
        if len(_QUOTIENT_D) > 200_000:
            _QUOTIENT_D.clear()
        _QUOTIENT_D[key] = hit
    return hit


def fingerprint(g: StructureTable) -> Fingerprint:
    """Type, d of ``g``, ``g^(1)``, ``g^(2)``, z1 and z2."""
    if "fingerprint" in g._cache:
        return g._cache["fingerprint"]
    if not is_filiform(g):
        raise NotFiliform("fingerprints are defined for filiform algebras")
    if not g.field.is_finite:
        raise UnsupportedField("fingerprints need a finite field")
    tower = central_quotient_tower(g, min(TOWER_DEPTH, g.dim - 1))
    ds = [d_sequence(g)] + [_cached_d(q) for q in tower[1:]]
    while len(ds) < TOWER_DEPTH + 1:
        ds.append(())
    fp = Fingerprint(g.dim, g.field.p, type_sequence(g), ds[0], ds[1], ds[2], z1(g), z2(g))
    g._cache["fingerprint"] = fp
    return fp


def isotopy_key(g: StructureTable) -> Tuple:
    return fingerprint(g).isotopy_part()
