from itertools import product

import numpy as np
import pytest

from filiform.exactfield import GF, QQ
from filiform.exceptions import NotFiliform, UnsupportedField
from filiform.families import FamilyParams, build, g6, g7, model
from filiform.invariants import Fingerprint, d_sequence, d_sequence_bruteforce, fingerprint, isotopy_key, z1, z2
from filiform.liealg import apply_basis_change, make_algebra


def f2_normal_forms():
    F = GF(2)
    out = [build(FamilyParams("model", (n,), F)) for n in range(3, 8)]
    out.append(build(FamilyParams("dim5", (), F)))
    out += [g6(*t, F) for t in product(range(2), repeat=3)]
    out += [g7(*t, F) for t in product(range(2), repeat=4)]
    out += [build(FamilyParams(tag, (a,), F)) for tag in ("g7type2", "h7type3") for a in (0, 1)]
    return out


@pytest.mark.parametrize("g", f2_normal_forms(), ids=lambda g: g.label)
def test_fast_d_matches_all_ideals(g):
    assert d_sequence(g) == d_sequence_bruteforce(g)


@pytest.mark.parametrize("p", [3, 5])
def test_fast_d_matches_all_ideals_odd(p):
    F = GF(p)
    for t in [(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)]:
        g = g6(*t, F)
        assert d_sequence(g) == d_sequence_bruteforce(g)


def test_model_d_sequence():
    # every ideal of dimension 2..n-1 of the model algebra is centralized by a hyperplane
    assert d_sequence(model(6, GF(3))) == (6, 5, 5, 5, 5, 1)


def test_fingerprint_roundtrip_and_isotopy_part():
    g = g7(1, 2, 1, 0, GF(3))
    fp = fingerprint(g)
    assert Fingerprint.from_dict(fp.as_dict()) == fp
    assert fp.isotopy_part() == (7, 3, fp.type_seq, fp.d0) == isotopy_key(g)
    assert len(fp.d1) == 6 and len(fp.d2) == 5


def test_z_invariants_are_basis_free():
    F = GF(5)
    g = g7(1, 0, 2, 3, F)
    P = np.eye(7, dtype=np.int64)
    P[0, 6] = 3
    P[6, 0] = 1
    P[1, 2] = 4
    h = apply_basis_change(g, P)
    assert (z1(g), z2(g)) == (z1(h), z2(h))


def test_fingerprint_rejects_bad_inputs():
    with pytest.raises(NotFiliform):
        fingerprint(make_algebra(4, GF(3), {(1, 2, 3): 1}))
    with pytest.raises(UnsupportedField):
        fingerprint(model(5, QQ))


def test_fingerprint_separates_dim6_isomorphism_classes_f2():
    # the six classes over F_2 have pairwise distinct fingerprints except where a search is needed
    F = GF(2)
    reps = [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 1, 0)]
    fps = [fingerprint(g6(*t, F)) for t in reps]
    assert len(set(fps)) >= 5
