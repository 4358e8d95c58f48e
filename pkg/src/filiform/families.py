"""Normal-form families of filiform Lie algebras in dimensions 5, 6 and 7."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .exactfield import FieldSpec, Scalar
from .exceptions import WrongCharacteristic
from .liealg import StructureTable

__all__ = [
    "FamilyParams",
    "build",
    "model",
    "dim5_nonmodel",
    "g6",
    "g7",
    "g7_type2",
    "h7_type3",
    "TAGS",
]

TAGS = ("model", "dim5", "g6", "g7", "g7type2", "h7type3")
_ARITY = {"dim5": 0, "g6": 3, "g7": 4, "g7type2": 1, "h7type3": 1}


@dataclass(frozen=True, order=True)
class FamilyParams:
    """A family tag plus its parameters, e.g. ``FamilyParams("g7", (1, 0, 0, 2), GF(5))``.

    For ``model`` the single parameter is the dimension.
    """

    tag: str
    params: Tuple[int, ...]
    field: FieldSpec

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown family tag {self.tag!r}; expected one of {TAGS}")
        raw = tuple(self.params)
        if self.tag == "model":
            if len(raw) != 1 or int(raw[0]) < 1:
                raise ValueError("model takes the dimension as its only parameter")
            canon = (int(raw[0]),)
        else:
            if len(raw) != _ARITY[self.tag]:
                raise ValueError(f"{self.tag} takes {_ARITY[self.tag]} parameters, got {len(raw)}")
            canon = tuple(self.field.canonical(x) for x in raw)
        if self.tag in ("g7type2", "h7type3"):
            if self.field.p != 2:
                raise WrongCharacteristic(f"{self.tag} exists only in characteristic 2")
            if canon[0] not in (0, 1):
                raise ValueError(f"{self.tag} parameter must be 0 or 1")
        object.__setattr__(self, "params", canon)

    @property
    def dim(self) -> int:
        return {"model": self.params[0] if self.params else 0, "dim5": 5, "g6": 6}.get(self.tag, 7)

    @property
    def label(self) -> str:
        body = ",".join(str(x) for x in self.params)
        name = {"g7type2": "g7type2", "h7type3": "h7type3"}.get(self.tag, self.tag)
        return f"{name}[{body}]@{self.field}"

    def scalars(self):
        return tuple(Scalar(x, self.field) for x in self.params)


def _model_constants(n: int):
    return {(1, i + 1, i): 1 for i in range(2, n)}


def model(n: int, field: FieldSpec) -> StructureTable:
    """Only nonzero brackets ``[e_1, e_{i+1}] = e_i`` for ``i >= 2``."""
    return build(FamilyParams("model", (n,), field))


def dim5_nonmodel(field: FieldSpec) -> StructureTable:
    return build(FamilyParams("dim5", (), field))


def g6(a, b, c, field: FieldSpec) -> StructureTable:
    return build(FamilyParams("g6", (a, b, c), field))


def g7(a, b, c, d, field: FieldSpec) -> StructureTable:
    return build(FamilyParams("g7", (a, b, c, d), field))


def g7_type2(a: int, field: FieldSpec) -> StructureTable:
    return build(FamilyParams("g7type2", (a,), field))


def h7_type3(a: int, field: FieldSpec) -> StructureTable:
    return build(FamilyParams("h7type3", (a,), field))


def _add(consts, i, j, k, value):
    if value:
        consts[(i, j, k)] = consts.get((i, j, k), 0) + value


def constants_of(params: FamilyParams) -> dict:
    tag = params.tag
    p = params.params
    if tag == "model":
        return _model_constants(p[0])
    if tag == "dim5":
        consts = _model_constants(5)
        consts[(4, 5, 2)] = 1
        return consts
    if tag == "g6":
        a, b, c = p
        consts = _model_constants(6)
        _add(consts, 4, 5, 2, a)
        _add(consts, 4, 6, 2, b)
        _add(consts, 4, 6, 3, a)
        _add(consts, 5, 6, 2, c)
        _add(consts, 5, 6, 3, b)
        _add(consts, 5, 6, 4, a)
        return consts
    if tag == "g7":
        a, b, c, d = p
        ab = a + b
        consts = _model_constants(7)
        _add(consts, 4, 7, 2, a)
        _add(consts, 5, 6, 2, b)
        _add(consts, 5, 7, 2, c)
        _add(consts, 5, 7, 3, ab)
        _add(consts, 6, 7, 2, d)
        _add(consts, 6, 7, 3, c)
        _add(consts, 6, 7, 4, ab)
        return consts
    if tag == "g7type2":
        (a,) = p
        consts = {
            (1, 3, 2): 1,
            (4, 6, 2): 1,
            (5, 7, 2): 1,
            (4, 7, 3): 1,
            (5, 6, 3): 1,
            (1, 5, 4): 1,
            (1, 6, 5): 1,
            (1, 7, 6): 1,
            (6, 7, 3): 1,
        }
        _add(consts, 6, 7, 4, a)
        return consts
    if tag == "h7type3":
        (a,) = p
        consts = {
            (3, 7, 2): 1,
            (4, 6, 2): 1,
            (1, 4, 3): 1,
            (5, 6, 3): 1,
            (5, 7, 4): 1,
            (6, 7, 5): 1,
            (1, 7, 6): 1,
        }
        _add(consts, 4, 7, 2, a)
        return consts
    raise ValueError(tag)


def build(params: FamilyParams) -> StructureTable:
    """Structure table of a family member; the Jacobi identity is verified."""
    return StructureTable(params.dim, params.field, constants_of(params), params.label, family=params)
