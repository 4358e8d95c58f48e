"""Text format for structure tables, witness files and classification reports.

Algebra files look like::

    FLIE 1
    dim 5
    char 3
    label dim5 non-model
    # i j k coeff   meaning [e_i, e_j] has coefficient coeff on e_k
    1 3 2 1
    4 5 2 1

Reports are JSON documents; every embedded witness can be re-verified
against algebras rebuilt from the recorded family parameters.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np

from .exactfield import FieldSpec, GF, QQ
from .exceptions import InvalidField, ParseError
from .families import FamilyParams, build
from .liealg import StructureTable
from .morphism import verify_isomorphism, verify_isotopism

__all__ = [
    "parse_algebra",
    "render_algebra",
    "read_algebra",
    "write_algebra",
    "content_hash",
    "witness_to_json",
    "parse_witness",
    "report_to_dict",
    "report_to_json",
    "report_summary",
    "reverify_report",
    "verification_report_to_dict",
    "verification_summary",
]

MAGIC = "FLIE 1"


def _field_of(char: int) -> FieldSpec:
    return QQ if char == 0 else GF(char)


def _parse_coeff(tok: str, F: FieldSpec, lineno: int):
    try:
        c = int(tok) if F.is_finite else Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, f"bad coefficient {tok!r}") from None
    if F.is_finite and not 0 <= c < F.p:
        raise ParseError(lineno, f"coefficient {tok} outside [0, {F.p - 1}]")
    return c


def parse_algebra(text: str, *, check: bool = True) -> StructureTable:
    """Parse an algebra file; Jacobi is verified unless ``check=False``."""
    header: Dict[str, str] = {}
    consts: Dict[tuple, object] = {}
    stage = 0
    F: Optional[FieldSpec] = None
    n = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if stage == 0:
            if line != MAGIC:
                raise ParseError(lineno, f"expected {MAGIC!r} header")
            stage = 1
            continue
        word, _, rest = line.partition(" ")
        if stage == 1:
            if word != "dim":
                raise ParseError(lineno, "expected 'dim <n>'")
            try:
                n = int(rest)
            except ValueError:
                raise ParseError(lineno, f"bad dimension {rest!r}") from None
            if n < 1:
                raise ParseError(lineno, "dimension must be positive")
            stage = 2
            continue
        if stage == 2:
            if word != "char":
                raise ParseError(lineno, "expected 'char <p>'")
            try:
                F = _field_of(int(rest))
            except (ValueError, InvalidField) as exc:
                raise ParseError(lineno, f"bad characteristic {rest!r}: {exc}") from None
            stage = 3
            continue
        if word == "label":
            if "label" in header or consts:
                raise ParseError(lineno, "label must come once, before the brackets")
            header["label"] = rest.strip()
            continue
        toks = line.split()
        if len(toks) != 4:
            raise ParseError(lineno, "expected '<i> <j> <k> <coeff>'")
        try:
            i, j, k = (int(t) for t in toks[:3])
        except ValueError:
            raise ParseError(lineno, "indices must be integers") from None
        if not (1 <= i <= n and 1 <= j <= n and 1 <= k <= n):
            raise ParseError(lineno, f"index out of range 1..{n}")
        if i >= j:
            raise ParseError(lineno, "entries require i < j")
        if (i, j, k) in consts:
            raise ParseError(lineno, f"duplicate entry ({i}, {j}, {k})")
        consts[(i, j, k)] = _parse_coeff(toks[3], F, lineno)
    if stage < 3:
        raise ParseError(0, "incomplete header: need FLIE 1, dim and char lines")
    return StructureTable(n, F, consts, header.get("label"), check=check)


def _coeff_text(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(int(c))


def render_algebra(g: StructureTable) -> str:
    """Deterministic text: header, optional label, nonzero entries sorted by (i, j, k)."""
    lines = [MAGIC, f"dim {g.dim}", f"char {g.field.characteristic}"]
    if g.label:
        lines.append(f"label {g.label}")
    for (i, j, k), c in sorted(g.constants.items()):
        lines.append(f"{i} {j} {k} {_coeff_text(c.value)}")
    return "\n".join(lines) + "\n"


def read_algebra(path, *, check: bool = True) -> StructureTable:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read(), check=check)


def write_algebra(g: StructureTable, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_algebra(g))


def content_hash(g: StructureTable) -> str:
    """SHA-256 of the rendered table without its label."""
    unlabeled = g.relabel(None)
    return hashlib.sha256(render_algebra(unlabeled).encode()).hexdigest()


# -- witnesses --------------------------------------------------------------------


def _mat(M) -> List[List[object]]:
    return [[_json_scalar(x) for x in row] for row in np.asarray(M).tolist()]


def _json_scalar(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    return int(x)


def witness_to_json(w, char: int) -> Dict[str, object]:
    """An iso witness as ``{"matrix": ...}``, an isotopy triple as ``{"f", "g", "h"}``."""
    if hasattr(w, "matrix"):
        return {"kind": "isomorphism", "char": char, "matrix": _mat(w.matrix)}
    return {"kind": "isotopism", "char": char, "f": _mat(w.f), "g": _mat(w.g), "h": _mat(w.h)}


def parse_witness(data, field: FieldSpec):
    """``(f, g, h)`` arrays from a witness dict or JSON text; iso witnesses give ``f = g = h``."""
    if isinstance(data, str):
        data = json.loads(data)
    conv = (lambda M: field.asarray(np.array([[Fraction(x) for x in r] for r in M], dtype=object))) \
        if not field.is_finite else (lambda M: field.asarray(np.array(M, dtype=np.int64)))
    if "matrix" in data:
        M = conv(data["matrix"])
        return M, M, M
    try:
        return conv(data["f"]), conv(data["g"]), conv(data["h"])
    except KeyError as exc:
        raise ValueError(f"witness lacks {exc}") from None


# -- reports ----------------------------------------------------------------------


def _params_json(fp: FamilyParams) -> Dict[str, object]:
    return {"tag": fp.tag, "params": list(fp.params), "char": fp.field.characteristic}


def _params_from_json(d) -> FamilyParams:
    return FamilyParams(d["tag"], tuple(d["params"]), _field_of(int(d["char"])))


def report_to_dict(report, tool_version: str = "") -> Dict[str, object]:
    char = report.field.characteristic
    algebras: Dict[str, Dict[str, object]] = {}

    def ref(fp: FamilyParams) -> str:
        if fp.label not in algebras:
            algebras[fp.label] = {"family": _params_json(fp), "sha256": content_hash(build(fp))}
        return fp.label

    def wj(w):
        return None if w is None else witness_to_json(w, char)

    out: Dict[str, object] = {
        "format": "filiform-classification",
        "format_version": 1,
        "tool_version": tool_version,
        "dim": report.dim,
        "char": char,
        "candidate_count": report.candidate_count,
        "expected": report.expected,
        "match": report.match,
        "iso_count": report.iso_count,
        "iso_classes": [
            {
                "representative": ref(c.representative),
                "members": [ref(m) for m in c.members],
                "fingerprint": c.fingerprint.as_dict() if c.fingerprint is not None else None,
                "merges": [
                    {"member": ref(m.member), "into": ref(c.representative), "provenance": m.provenance,
                     "witness": wj(m.witness)}
                    for m in c.merges
                ],
            }
            for c in report.iso_classes
        ],
        "iso_separations": [
            {"a": ref(s.a), "b": ref(s.b), "certificate": s.certificate, "detail": s.detail}
            for s in report.iso_separations
        ],
    }
    if report.isotopy_classes is not None:
        out["isotopy_count"] = report.isotopy_count
        out["isotopy_classes"] = [
            {
                "representative": ref(c.representative),
                "iso_representatives": [ref(r) for r in c.iso_representatives],
                "members": [ref(m) for m in c.members],
                "merges": [
                    {"source": ref(m.source), "target": ref(m.target), "origin": m.origin, "name": m.name,
                     "certification": "Witness", "witness": wj(m.witness)}
                    for m in c.merges
                ],
            }
            for c in report.isotopy_classes
        ]
        out["isotopy_separations"] = [
            {"a": ref(s.a), "b": ref(s.b), "certification": s.certificate, "detail": s.detail}
            for s in report.isotopy_separations
        ]
    out["timings"] = {k: round(v, 4) for k, v in report.timings.items()}
    out["notes"] = list(report.notes)
    out["algebras"] = algebras
    return out


def report_to_json(report, tool_version: str = "") -> str:
    return json.dumps(report_to_dict(report, tool_version), indent=2, sort_keys=True)


def reverify_report(data) -> List[str]:
    """Rebuild every referenced algebra, check its hash and re-verify every witness.

    Returns a list of problems; empty means everything checks out.
    """
    if isinstance(data, str):
        data = json.loads(data)
    problems: List[str] = []
    tables: Dict[str, StructureTable] = {}
    for label, entry in data.get("algebras", {}).items():
        g = build(_params_from_json(entry["family"]))
        if content_hash(g) != entry["sha256"]:
            problems.append(f"{label}: content hash differs")
        tables[label] = g
    F = _field_of(int(data["char"]))
    for c in data.get("iso_classes", []):
        for m in c["merges"]:
            if m["witness"] is None:
                continue
            f, _, _ = parse_witness(m["witness"], F)
            if not verify_isomorphism(tables[m["member"]], tables[m["into"]], f):
                problems.append(f"iso witness {m['member']} -> {m['into']} fails")
    for c in data.get("isotopy_classes", []) or []:
        for m in c["merges"]:
            f, g, h = parse_witness(m["witness"], F)
            if not verify_isotopism(tables[m["source"]], tables[m["target"]], f, g, h):
                problems.append(f"isotopy witness {m['source']} -> {m['target']} fails")
    return problems


def report_summary(report) -> str:
    """Plain-text lines in the style 'expected 6, found 6'."""
    F = report.field
    lines = [f"dimension {report.dim} over {F}: {report.candidate_count} candidates"]
    exp = report.expected or {}
    lines.append(f"isomorphism classes: expected {exp.get('iso', '?')}, found {report.iso_count}")
    for c in report.iso_classes:
        lines.append(f"  {c.representative.label}  ({len(c.members)} members)")
    if report.isotopy_classes is not None:
        lines.append(f"isotopism classes: expected {exp.get('isotopy', '?')}, found {report.isotopy_count}")
        for c in report.isotopy_classes:
            lines.append(f"  {c.representative.label}  <- {', '.join(r.label for r in c.iso_representatives)}")
        heur = report.heuristic_only_pairs()
        if heur:
            lines.append("separations without an invariant (HeuristicOnly):")
            lines += [f"  {a.label} / {b.label}" for a, b in heur]
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)


def verification_report_to_dict(rep, tool_version: str = "") -> Dict[str, object]:
    return {
        "format": "filiform-verification",
        "format_version": 1,
        "tool_version": tool_version,
        "passed": rep.passed,
        "claims": [
            {"name": c.name, "expected": c.expected, "found": c.found, "passed": c.passed,
             "seconds": round(c.seconds, 3), "detail": c.detail}
            for c in rep.claims
        ],
        "out_of_scope": [
            {"dim": d, "char": p, **info} for (d, p), info in sorted(rep.out_of_scope.items())
        ],
    }


def verification_summary(rep) -> str:
    lines = []
    for c in rep.claims:
        mark = "PASS" if c.passed else "FAIL"
        exp, got = c.expected, c.found
        if isinstance(exp, list) and isinstance(got, list):
            missing = [x for x in exp if x not in got]
            extra = [x for x in got if x not in exp]
            body = f"{len(got)} items" + (f"; missing {missing}" if missing else "") + (f"; extra {extra}" if extra else "")
        else:
            body = f"expected {exp}, found {got}"
        lines.append(f"[{mark}] {c.name}: {body} ({c.seconds:.2f}s)" + (f" {c.detail}" if c.detail and not c.passed else ""))
    for (d, p), info in sorted(rep.out_of_scope.items()):
        lines.append(f"[SKIP] dim {d} over F_{p}: stated {info['iso']} classes; {info['reason']}")
    return "\n".join(lines)
