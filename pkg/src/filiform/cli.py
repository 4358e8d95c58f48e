"""Command-line interface: ``filiform <subcommand> ...``.

Exit codes: 0 success or pass, 1 a verified negative answer or a failed
check, 2 a usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import __version__
from .classify import classify, identify, verify_paper
from .exactfield import GF
from .exceptions import FiliformError
from .families import TAGS, FamilyParams, build
from .invariants import fingerprint
from .io import (
    verification_summary,
    verification_report_to_dict,
    parse_witness,
    read_algebra,
    render_algebra,
    report_summary,
    report_to_json,
    witness_to_json,
)
from .liealg import center, is_filiform, is_nilpotent, lower_central_series, type_sequence
from .morphism import find_isomorphism, verify_isotopism

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _int_list(text: str) -> List[int]:
    if not text.strip():
        return []
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(text: str, path: Optional[str]) -> None:
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_family(args) -> int:
    F = GF(args.prime)
    params = tuple(args.params)
    if args.tag == "model":
        params = params or (args.dim,)
    g = build(FamilyParams(args.tag, params, F))
    _emit(render_algebra(g).rstrip("\n"), args.output)
    return EXIT_OK


def _load(path, args):
    return read_algebra(path, check=not getattr(args, "unchecked", False))


def cmd_info(args) -> int:
    g = _load(args.file, args)
    series = lower_central_series(g)
    nil = is_nilpotent(g)
    info = {
        "label": g.label,
        "dim": g.dim,
        "char": g.field.characteristic,
        "lower_central_series_dims": [s.dim for s in series],
        "type": list(type_sequence(g)) if nil else None,
        "center_dim": center(g).dim,
        "nilpotent": nil,
        "filiform": is_filiform(g),
    }
    if args.json:
        print(json.dumps(info, indent=2))
    else:
        for k, v in info.items():
            print(f"{k}: {v}")
    return EXIT_OK


def cmd_invariants(args) -> int:
    g = _load(args.file, args)
    fp = fingerprint(g)
    if args.json:
        print(json.dumps(fp.as_dict(), indent=2))
    else:
        for k, v in fp.as_dict().items():
            print(f"{k}: {v}")
    return EXIT_OK


def cmd_iso(args) -> int:
    A, B = _load(args.file_a, args), _load(args.file_b, args)
    v = find_isomorphism(A, B, prefilter=not args.no_prefilter)
    out = {"outcome": v.outcome.value, "certificate": v.certificate.value if v.certificate else None,
           "info": v.info}
    if v.witness is not None:
        out["witness"] = witness_to_json(v.witness, A.field.characteristic)
        if args.witness_out:
            _emit(json.dumps(out["witness"], indent=2), args.witness_out)
    if args.json:
        print(json.dumps(out, indent=2, default=str))
    else:
        print(v.outcome.value + (f" ({v.certificate.value})" if v.certificate else ""))
        if v.witness is not None:
            for row in out["witness"]["matrix"]:
                print("  " + " ".join(str(x) for x in row))
    return EXIT_OK if v.isomorphic else EXIT_FAIL


def cmd_isotopy_verify(args) -> int:
    A, B = _load(args.file_a, args), _load(args.file_b, args)
    with open(args.witness, encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        f, g, h = parse_witness(data, A.field)
    except (ValueError, TypeError) as exc:
        raise _UsageError(f"malformed witness file: {exc}") from None
    ok = verify_isotopism(A, B, f, g, h)
    print("verified" if ok else "does not verify")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(args) -> int:
    report = classify(args.dim, args.prime, isotopy=args.isotopy, method=args.method, seed=args.seed,
                      heuristic_budget=args.budget)
    if args.json:
        _emit(report_to_json(report, __version__), args.json)
    if not args.quiet:
        print(report_summary(report))
    return EXIT_FAIL if report.match is False else EXIT_OK


def cmd_identify(args) -> int:
    g = _load(args.file, args)
    res = identify(g)
    if res.classified:
        print(f"class: {res.representative.label}")
        if args.json:
            print(json.dumps(witness_to_json(res.witness, g.field.characteristic), indent=2))
        return EXIT_OK
    print("Unclassified: no normal form matches (fingerprint " + json.dumps(res.fingerprint.as_dict()) + ")",
          file=sys.stderr)
    return EXIT_FAIL


_SCOPES = {"dim5": (5,), "dim6": (6,), "dim7": (7,), "all": (5, 6, 7)}


def cmd_verify_paper(args) -> int:
    dims = []
    for s in args.scope.split(","):
        if s not in _SCOPES:
            raise _UsageError(f"unknown scope {s!r}; choose from {sorted(_SCOPES)}")
        dims += [d for d in _SCOPES[s] if d not in dims]
    rep = verify_paper(dims, args.primes, isotopy=not args.no_isotopy, witnesses=not args.no_witnesses)
    print(verification_summary(rep))
    if args.json:
        _emit(json.dumps(verification_report_to_dict(rep, __version__), indent=2, default=str), args.json)
    return EXIT_OK if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="filiform", description="Filiform Lie algebras over prime fields.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", help="write a normal-form algebra")
    p.add_argument("tag", choices=TAGS)
    p.add_argument("--params", type=_int_list, default=[], help="comma-separated parameters")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--dim", type=int, default=None, help="dimension for the model algebra")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_family)

    for name, func, hlp in (("info", cmd_info, "series, type, center"),
                            ("invariants", cmd_invariants, "print the fingerprint")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("file")
        p.add_argument("--json", action="store_true")
        p.add_argument("--unchecked", action="store_true", help="skip the Jacobi check on load")
        p.set_defaults(func=func)

    p = sub.add_parser("iso", help="decide isomorphism")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--no-prefilter", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--witness-out", default=None)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("isotopy-verify", help="re-verify a stored witness")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--witness", required=True)
    p.set_defaults(func=cmd_isotopy_verify)

    p = sub.add_parser("classify", help="classify the normal forms")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--isotopy", action="store_true")
    p.add_argument("--method", choices=("auto", "search", "closed-form"), default="auto")
    p.add_argument("--seed", type=int, default=0, help="seed for the sampled search cross-checks")
    p.add_argument("--budget", type=int, default=4000, help="heuristic isotopism search budget")
    p.add_argument("--json", default=None, metavar="FILE", help="write the JSON report ('-' for stdout)")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("identify", help="name the class of an algebra")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="also print the witness")
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("verify-paper", help="recompute every stated count")
    p.add_argument("--scope", default="all", help="comma-separated: dim5, dim6, dim7, all")
    p.add_argument("--primes", type=_int_list, default=[2, 3, 5, 7])
    p.add_argument("--no-isotopy", action="store_true")
    p.add_argument("--no-witnesses", action="store_true")
    p.add_argument("--json", default=None, metavar="FILE")
    p.set_defaults(func=cmd_verify_paper)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (_UsageError, FiliformError, OSError, ValueError) as exc:
        print(f"filiform {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
