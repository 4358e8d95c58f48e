"""Sparse multivariate polynomials over F_p, just enough for the isomorphism search.

A polynomial is a dict mapping exponent tuples to nonzero residues.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Tuple

Poly = Dict[Tuple[int, ...], int]


def const(c: int, nvars: int, p: int) -> Poly:
    c %= p
    return {(0,) * nvars: c} if c else {}


def var(i: int, nvars: int) -> Poly:
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): 1}


def add(a: Poly, b: Poly, p: int) -> Poly:
    out = dict(a)
    for e, c in b.items():
        v = (out.get(e, 0) + c) % p
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def scale(a: Poly, c: int, p: int) -> Poly:
    c %= p
    if not c:
        return {}
    return {e: (v * c) % p for e, v in a.items()}


def addmul(acc: Poly, a: Poly, b: Poly, c: int, p: int) -> None:
    """``acc += c * a * b`` in place."""
    if not a or not b or not c % p:
        return
    for ea, va in a.items():
        vac = va * c
        for eb, vb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = (acc.get(e, 0) + vac * vb) % p
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    out: Poly = {}
    addmul(out, a, b, 1, p)
    return out


def power(a: Poly, k: int, nvars: int, p: int) -> Poly:
    out = const(1, nvars, p)
    for _ in range(k):
        out = mul(out, a, p)
    return out


def degree(a: Poly) -> int:
    return max((sum(e) for e in a), default=-1)


def is_constant(a: Poly) -> bool:
    return all(not any(e) for e in a)


def constant_term(a: Poly, nvars: int) -> int:
    return a.get((0,) * nvars, 0)


def variables(a: Poly) -> set:
    out = set()
    for e in a:
        for i, x in enumerate(e):
            if x:
                out.add(i)
    return out


def substitute(a: Poly, i: int, expr: Poly, nvars: int, p: int, _pow_cache=None) -> Poly:
    """Replace variable ``i`` by ``expr`` (which must not contain ``i``)."""
    if not any(e[i] for e in a):
        return a
    pows = {} if _pow_cache is None else _pow_cache
    out: Poly = {}
    for e, c in a.items():
        k = e[i]
        if k == 0:
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
            continue
        if k not in pows:
            pows[k] = power(expr, k, nvars, p)
        rest = list(e)
        rest[i] = 0
        addmul(out, {tuple(rest): 1}, pows[k], c, p)
    return out


def evaluate(a: Poly, values: List[int], p: int) -> int:
    total = 0
    for e, c in a.items():
        term = c
        for x, k in zip(values, e):
            if k:
                term = term * pow(x, k, p) % p
        total += term
    return total % p


def linear_parts(a: Poly, nvars: int) -> Optional[Tuple[Dict[int, int], int]]:
    """``({var: coeff}, constant)`` if ``a`` has degree <= 1, else ``None``."""
    lin: Dict[int, int] = {}
    c0 = 0
    for e, c in a.items():
        s = sum(e)
        if s == 0:
            c0 = c
        elif s == 1:
            lin[e.index(1)] = c
        else:
            return None
    return lin, c0


def solve_linear_for(a: Poly, i: int, nvars: int, p: int) -> Poly:
    """From a degree-1 ``a`` with nonzero coefficient on ``i``, the expression ``x_i = ...``."""
    lin, c0 = linear_parts(a, nvars)
    inv = pow(lin[i], -1, p)
    out: Poly = {}
    if c0:
        out[(0,) * nvars] = (-c0 * inv) % p
    for j, c in lin.items():
        if j != i:
            e = [0] * nvars
            e[j] = 1
            out[tuple(e)] = (-c * inv) % p
    return out


def vec_bracket(U: List[Poly], V: List[Poly], brackets: Iterable[Tuple[int, int, int, int]], n: int, p: int) -> List[Poly]:
    """``[U, V]`` for vectors of polynomials, given the nonzero ``(a, b, k, c)`` with a < b."""
    out: List[Poly] = [dict() for _ in range(n)]
    for a, b, k, c in brackets:
        addmul(out[k], U[a], V[b], c, p)
        addmul(out[k], U[b], V[a], -c, p)
    return out
