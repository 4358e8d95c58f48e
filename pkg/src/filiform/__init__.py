"""Exact computations with filiform Lie algebras over prime fields.

Structure tables, isotopism invariants, isomorphism search and the
classification of filiform algebras of dimension at most seven over F_p.
"""
__version__ = "0.1.0"

from .exactfield import GF, QQ, FieldSpec, Scalar
from .exceptions import FiliformError
from .families import FamilyParams, build, dim5_nonmodel, g6, g7, g7_type2, h7_type3, model
from .liealg import (
    BasisChange,
    StructureTable,
    apply_basis_change,
    center,
    filiform_basis,
    is_filiform,
    lower_central_series,
    make_algebra,
)
from .invariants import Fingerprint, d_sequence, fingerprint, z1, z2
from .morphism import find_isomorphism, heuristic_isotopism_search, verify_isomorphism, verify_isotopism
from .classify import ClassificationReport, classify, enumerate_candidates, identify, verify_paper
from .io import parse_algebra, render_algebra

__all__ = [
    "__version__",
    "GF",
    "QQ",
    "FieldSpec",
    "Scalar",
    "FiliformError",
    "FamilyParams",
    "build",
    "model",
    "dim5_nonmodel",
    "g6",
    "g7",
    "g7_type2",
    "h7_type3",
    "StructureTable",
    "BasisChange",
    "make_algebra",
    "apply_basis_change",
    "center",
    "lower_central_series",
    "is_filiform",
    "filiform_basis",
    "Fingerprint",
    "fingerprint",
    "d_sequence",
    "z1",
    "z2",
    "find_isomorphism",
    "verify_isomorphism",
    "verify_isotopism",
    "heuristic_isotopism_search",
    "ClassificationReport",
    "classify",
    "enumerate_candidates",
    "identify",
    "verify_paper",
    "parse_algebra",
    "render_algebra",
]
