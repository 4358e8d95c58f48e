"""scikit-learn style wrappers.

Inputs are sequences of :class:`~filiform.liealg.StructureTable` objects,
not numeric arrays, so these estimators fit into pipelines that start from
algebras but do not pass sklearn's array-based ``check_estimator`` suite.
"""
from __future__ import annotations

from typing import List, Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .classify import representatives
from .exceptions import DimensionMismatch
from .families import build
from .invariants import fingerprint
from .liealg import StructureTable
from .morphism import find_isomorphism

__all__ = ["FingerprintTransformer", "FiliformClassifier", "check_algebras"]

UNCLASSIFIED = "unclassified"


def check_algebras(X, *, same_space: bool = True) -> List[StructureTable]:
    """Validate a sequence of structure tables (optionally all of one dimension and field)."""
    if isinstance(X, StructureTable):
        raise TypeError("expected a sequence of StructureTable, got a single table")
    items = list(X)
    if not items:
        raise ValueError("empty input")
    for g in items:
        if not isinstance(g, StructureTable):
            raise TypeError(f"expected StructureTable, got {type(g).__name__}")
    if same_space:
        dim, F = items[0].dim, items[0].field
        for g in items[1:]:
            if g.dim != dim or g.field != F:
                raise DimensionMismatch("all algebras must share dimension and field")
    return items


class FingerprintTransformer(TransformerMixin, BaseEstimator):
    """Map each algebra to its fingerprint as a row of integers.

    Columns: type sequence, ``d(g)``, ``d(g^(1))``, ``d(g^(2))``, ``z1``,
    ``z2``; shorter sequences are padded with ``pad``.
    """

    def __init__(self, pad: int = -1):
        self.pad = pad

    def fit(self, X, y=None):
        items = check_algebras(X)
        self.dim_ = items[0].dim
        self.characteristic_ = items[0].field.characteristic
        n = self.dim_
        self.widths_ = {"type": max(n - 1, 0), "d0": n, "d1": max(n - 1, 0), "d2": max(n - 2, 0)}
        self.n_features_out_ = sum(self.widths_.values()) + 2
        return self

    def transform(self, X):
        check_is_fitted(self, "widths_")
        items = check_algebras(X)
        if items[0].dim != self.dim_ or items[0].field.characteristic != self.characteristic_:
            raise DimensionMismatch("algebras differ from those seen in fit")
        rows = []
        for g in items:
            fp = fingerprint(g)
            row = []
            for name, seq in (("type", fp.type_seq), ("d0", fp.d0), ("d1", fp.d1), ("d2", fp.d2)):
                w = self.widths_[name]
                row += list(seq)[:w] + [self.pad] * (w - len(seq))
            row += [fp.z1, fp.z2]
            rows.append(row)
        return np.array(rows, dtype=np.int64)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "widths_")
        names = []
        for name, w in self.widths_.items():
            names += [f"{name}_{i + 1}" for i in range(w)]
        return np.array(names + ["z1", "z2"], dtype=object)


class FiliformClassifier(ClassifierMixin, BaseEstimator):
    """Label algebras by the isomorphism class they belong to.

    ``fit(X, y)`` stores labeled reference algebras; ``fit(X)`` without
    labels uses the normal-form representatives for the dimension and field
    of ``X`` instead.  ``predict`` returns the label of the isomorphic
    reference, or ``"unclassified"``.
    """

    def __init__(self, prefilter: bool = True):
        self.prefilter = prefilter

    def fit(self, X, y: Optional[Sequence] = None):
        items = check_algebras(X)
        if y is None:
            reps = representatives(items[0].dim, items[0].field)
            self.references_ = [build(r) for r in reps]
            self.classes_ = np.array([r.label for r in reps], dtype=object)
            self.reference_labels_ = list(self.classes_)
        else:
            y = list(y)
            if len(y) != len(items):
                raise ValueError("X and y have different lengths")
            self.references_ = items
            self.reference_labels_ = y
            self.classes_ = np.array(sorted(set(map(str, y))), dtype=object)
        self.dim_ = items[0].dim
        self.field_ = items[0].field
        return self

    def _label_of(self, g: StructureTable):
        fp = fingerprint(g) if self.prefilter else None
        for ref, label in zip(self.references_, self.reference_labels_):
            if self.prefilter and fingerprint(ref) != fp:
                continue
            if find_isomorphism(g, ref, prefilter=False).isomorphic:
                return label
        return UNCLASSIFIED

    def predict(self, X):
        check_is_fitted(self, "references_")
        items = check_algebras(X)
        if items[0].dim != self.dim_ or items[0].field != self.field_:
            raise DimensionMismatch("algebras differ from those seen in fit")
        return np.array([self._label_of(g) for g in items], dtype=object)

