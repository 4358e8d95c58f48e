import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filiform.exactfield import GF, QQ
from filiform.exceptions import NotFiliform, OutOfScope, UnsupportedField
from filiform.families import FamilyParams, build, g6, g7
from filiform.liealg import apply_basis_change, make_algebra
from filiform.linalg import inverse, is_invertible
from filiform.morphism import (
    Certificate,
    Outcome,
    check_dim6_entry_relations,
    check_dim7_entry_relations,
    closed_form_class_g7,
    closed_form_iso_g7,
    find_isomorphism,
    heuristic_isotopism_search,
    paper_isotopy_witnesses,
    principal_isotope,
    verify_isomorphism,
    verify_isotopism,
)


def random_invertible(rng, n, F):
    while True:
        M = rng.integers(0, F.p, size=(n, n))
        if is_invertible(M, F):
            return M


@settings(max_examples=25)
@given(st.sampled_from([2, 3, 5]), st.integers(0, 2**32 - 1), st.data())
def test_search_recovers_scrambled_copies(p, seed, data):
    F = GF(p)
    t = data.draw(st.lists(st.integers(0, p - 1), min_size=4, max_size=4))
    g = g7(*t, F)
    h = apply_basis_change(g, random_invertible(np.random.default_rng(seed), 7, F))
    v = find_isomorphism(g, h)
    assert v.isomorphic and v.witness.verified
    assert verify_isomorphism(g, h, v.witness.matrix)


def test_witness_direction():
    # F maps A to B: F [u, v]_A = [F u, F v]_B
    F = GF(3)
    A = g6(1, 0, 0, F)
    P = np.eye(6, dtype=np.int64)
    P[0, 5] = 1
    B = apply_basis_change(A, P)
    W = inverse(P, F)
    assert verify_isomorphism(A, B, W)
    assert verify_isomorphism(B, A, P)


def test_negative_certificates():
    F = GF(3)
    A, B = g7(1, 0, 0, 1, F), g7(1, 0, 0, 2, F)
    assert find_isomorphism(A, B).outcome is Outcome.NOT_ISOMORPHIC
    v = find_isomorphism(A, B, prefilter=False)
    assert v.outcome is Outcome.NOT_ISOMORPHIC
    assert v.certificate is Certificate.EXHAUSTED_SEARCH
    v = find_isomorphism(g7(0, 0, 0, 0, F), g7(1, 1, 0, 0, F))
    assert v.certificate is Certificate.FINGERPRINT_MISMATCH


def test_search_rejects_bad_inputs():
    with pytest.raises(UnsupportedField):
        find_isomorphism(g6(1, 0, 0, QQ), g6(1, 0, 0, QQ))
    bad = make_algebra(6, GF(3), {(1, 2, 3): 1})
    with pytest.raises(NotFiliform):
        find_isomorphism(bad, bad)


@pytest.mark.parametrize("p", [2, 3])
def test_closed_form_key_matches_pairwise_rule(p):
    params = list(product(range(p), repeat=4))
    for x in params:
        for y in params:
            try:
                same = closed_form_iso_g7(x, y, p)
            except OutOfScope:
                same = False
            assert same == (closed_form_class_g7(x, p) == closed_form_class_g7(y, p)), (x, y)


def test_closed_form_agrees_with_search_sample():
    rng = random.Random(4)
    for p in (3, 5):
        F = GF(p)
        params = list(product(range(p), repeat=4))
        for _ in range(60):
            x, y = rng.choice(params), rng.choice(params)
            same = closed_form_class_g7(x, p) == closed_form_class_g7(y, p)
            assert find_isomorphism(g7(*x, F), g7(*y, F)).isomorphic == same, (p, x, y)


def test_closed_form_out_of_scope():
    with pytest.raises(OutOfScope):
        closed_form_iso_g7((1, 0, 0, 0), (0, 1, 0, 0), 5)


def test_quadratic_residue_split():
    # over F_5 the value 4ad - 5c^2 = 4d separates d square from d nonsquare
    assert closed_form_iso_g7((1, 0, 0, 1), (1, 0, 0, 4), 5)
    assert not closed_form_iso_g7((1, 0, 0, 1), (1, 0, 0, 2), 5)


def test_type3_zero_is_isomorphic_to_type2_zero_over_f2():
    F = GF(2)
    A = build(FamilyParams("h7type3", (0,), F))
    B = build(FamilyParams("g7type2", (0,), F))
    v = find_isomorphism(A, B)
    assert v.isomorphic
    M = v.witness.matrix
    # check the identity entrywise without numpy einsum
    for i, j in product(range(7), repeat=2):
        lhs = [sum(M[k, l] * A.tensor[i, j, l] for l in range(7)) % 2 for k in range(7)]
        rhs = [sum(M[a, i] * M[b, j] * B.tensor[a, b, k] for a in range(7) for b in range(7)) % 2 for k in range(7)]
        assert lhs == rhs
    assert not find_isomorphism(build(FamilyParams("h7type3", (0,), F)),
                                build(FamilyParams("g7type2", (1,), F))).isomorphic


@pytest.mark.parametrize("p", [2, 3, 5])
def test_stated_maps_split_on_c(p):
    F = GF(p)
    for w in paper_isotopy_witnesses(7, F):
        if w.name.startswith("g7(1,0,c,d)"):
            c = w.source.params[2]
            assert w.witness.verified == (c == 0), w.source.label
        else:
            assert w.witness.verified, w.name
    assert all(w.witness.verified for w in paper_isotopy_witnesses(6, F))


def test_principal_isotope_of_type3():
    F = GF(2)
    g = build(FamilyParams("h7type3", (1,), F))
    f = F.eye(7)
    f[2, 3] = 1  # f(e_4) = e_3 + e_4
    iso = principal_isotope(g, f, f)
    assert iso.is_lie
    assert verify_isotopism(g, build(FamilyParams("h7type3", (0,), F)), f, f, F.eye(7))


def test_principal_isotope_conditions_can_fail():
    F = GF(3)
    g = g6(1, 0, 0, F)
    f = F.eye(6)
    gm = F.eye(6)
    gm[0, 0] = 2
    assert not principal_isotope(g, f, gm).condition_i


def test_heuristic_search_finds_stated_isotopism():
    F = GF(3)
    v = heuristic_isotopism_search(g6(0, 1, 1, F), g6(0, 1, 0, F), budget=4000)
    assert v.outcome in (Outcome.ISOTOPIC, Outcome.ISOMORPHIC)
    w = v.witness
    assert verify_isotopism(g6(0, 1, 1, F), g6(0, 1, 0, F), w.f, w.g, w.h)


def test_heuristic_search_reports_failure_honestly():
    F = GF(3)
    v = heuristic_isotopism_search(g7(1, 1, 0, 0, F), g7(1, 2, 0, 0, F), budget=300)
    assert v.outcome is Outcome.NOT_SEPARATED
    assert v.witness is None


def test_entry_relations_hold_for_search_witnesses():
    F = GF(3)
    v = find_isomorphism(g6(0, 0, 1, F), g6(0, 0, 2, F))
    assert check_dim6_entry_relations(v.witness.matrix, (0, 0, 1), (0, 0, 2), F)
    # 4ad - 5c^2 is 1 for both, a square
    v = find_isomorphism(g7(1, 0, 1, 0, F), g7(1, 0, 0, 1, F))
    assert v.isomorphic
    assert check_dim7_entry_relations(v.witness.matrix, (1, 0, 1, 0), (1, 0, 0, 1), F)
    # the identity satisfies no nontrivial change of parameters
    assert not check_dim6_entry_relations(F.eye(6), (1, 0, 0), (1, 1, 0), F)


def test_verify_isotopism_rejects_wrong_h():
    F = GF(5)
    g = g7(1, 2, 0, 0, F)
    I = F.eye(7)
    assert verify_isotopism(g, g, I, I, I)
    h = I.copy()
    h[1, 1] = 2
    assert not verify_isotopism(g, g, I, I, h)
    # scaling one argument by 2 scales every bracket by 2
    two = F.reduce(2 * I)
    assert verify_isotopism(g, g, two, I, two)


@pytest.mark.slow
@pytest.mark.parametrize("p", [3, 5])
def test_closed_form_agrees_with_search_exhaustively(p):
    # all pairs sharing the zero pattern of (a, b); other pairs are split by d
    F = GF(p)
    params = list(product(range(p), repeat=4))
    tables = {t: g7(*t, F) for t in params}
    for i, x in enumerate(params):
        for y in params[i:]:
            if (bool(x[0]), bool(x[1])) != (bool(y[0]), bool(y[1])):
                continue
            assert closed_form_iso_g7(x, y, p) == find_isomorphism(tables[x], tables[y]).isomorphic, (x, y)
