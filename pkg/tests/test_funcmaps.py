import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sandwich_forge.caps import CapExceeded
from sandwich_forge.funcmaps import (
    GroupFunction,
    all_functions,
    classify,
    classify_values,
    conjugate,
    conjugate_identity_holds,
    function_from_json,
    function_space,
    function_to_json,
    identity_map,
    inverse_map,
    left_multiplication,
    mo_transform,
    sample_functions,
    strongly_inverse_preserving_slow,
)
from sandwich_forge.groups import catalog, cyclic, symmetric

from conftest import perm_compose, perm_inverse

S3 = symmetric(3)
PERMS = list(itertools.permutations(range(3)))
SMALL = [e.group for e in catalog(3)]


def test_mo_conjugate_on_s3():
    a = PERMS.index((1, 0, 2))
    x = PERMS.index((1, 2, 0))
    got = conjugate(inverse_map(S3), a, "left")(x)
    # a x^-1 a^-1 with plain composition
    want = perm_compose(perm_compose((1, 0, 2), perm_inverse((1, 2, 0))), perm_inverse((1, 0, 2)))
    assert want == (1, 2, 0)
    assert got == PERMS.index(want)


def test_homomorphism_is_fixed_by_conjugation():
    f = identity_map(cyclic(3))
    for a in range(3):
        assert conjugate(f, a) == f


def test_conjugate_by_identity_on_identity_preserving():
    for f in all_functions(cyclic(3), cyclic(3)):
        if f(0) == 0:
            assert conjugate(f, 0) == f


def test_conjugate_rejects_bad_element():
    with pytest.raises(ValueError):
        conjugate(identity_map(cyclic(3)), 3)
    with pytest.raises(ValueError):
        conjugate(identity_map(cyclic(3)), 0, side="middle")


def test_mo_examples():
    g = cyclic(4)
    assert mo_transform(inverse_map(S3)) == inverse_map(S3)
    const = GroupFunction(g, g, [0, 0, 0, 0])
    assert mo_transform(const) == const
    f = left_multiplication(g, 1)
    assert mo_transform(f).values.tolist() == [(x - 1) % 4 for x in range(4)]
    assert mo_transform(f) != f


def test_classify_mo_on_s3():
    c = classify(inverse_map(S3))
    assert (c.inverse_preserving, c.strongly_inverse_preserving, c.sandwich_morphism) == (True, True, True)
    assert not c.homomorphism


def test_classify_translation_on_c4():
    for a in (1, 3):
        c = classify(left_multiplication(cyclic(4), a))
        assert c.strongly_inverse_preserving and c.sandwich_morphism
        assert not c.inverse_preserving and not c.identity_preserving
        assert c.witnesses["identity_preserving"] == (0,)
    # x -> x + 2 equals x -> x - 2, so translation by the involution is inverse preserving
    assert classify(left_multiplication(cyclic(4), 2)).inverse_preserving


@pytest.mark.parametrize("g", SMALL + [S3], ids=lambda g: g.name)
def test_identity_map_all_flags(g):
    assert all(classify(identity_map(g)).flags().values())


def test_function_counts():
    assert sum(1 for _ in all_functions(cyclic(2), cyclic(2))) == 4
    assert sum(1 for _ in all_functions(cyclic(3), cyclic(3))) == 27
    assert function_space(cyclic(4), S3).shape == (1296, 4)


def test_all_functions_lexicographic():
    vals = [f.values.tolist() for f in all_functions(cyclic(2), cyclic(3))]
    assert vals == sorted(vals) and len(set(map(tuple, vals))) == 9


def test_function_space_cap():
    with pytest.raises(CapExceeded, match="sample"):
        next(iter(all_functions(S3, S3, cap=100)))


def test_sampling_is_seeded():
    a = sample_functions(S3, cyclic(4), 50, seed=7)
    b = sample_functions(S3, cyclic(4), 50, seed=7)
    assert (a == b).all() and a.shape == (50, 6)


@pytest.mark.parametrize("g,h", list(itertools.product(SMALL, SMALL)), ids=lambda g: g.name)
def test_sip_equals_sandwich_morphism_exhaustive(g, h):
    for f in all_functions(g, h):
        c = classify(f)
        assert c.strongly_inverse_preserving == strongly_inverse_preserving_slow(f)
        if c.strongly_inverse_preserving:
            assert conjugate_identity_holds(f)


def test_batch_matches_single():
    g, h = S3, cyclic(4)
    vals = sample_functions(g, h, 300, seed=3)
    batch = classify_values(g, h, vals)
    for i, v in enumerate(vals):
        c = classify(GroupFunction(g, h, v))
        assert batch["strongly_inverse_preserving"][i] == c.strongly_inverse_preserving
        assert batch["sandwich_morphism"][i] == c.sandwich_morphism


def test_printed_conjugate_identity_fails_for_mo_on_s3():
    vals = inverse_map(S3).values[None, :]
    out = classify_values(S3, S3, vals)
    assert out["conjugate_identity"][0]
    assert not out["conjugate_identity_as_printed"][0]


@pytest.mark.parametrize("g,h", list(itertools.product(SMALL, SMALL)), ids=lambda g: g.name)
def test_action_and_intertwining_laws(g, h):
    n = g.order
    inv = 0
    for f in all_functions(g, h):
        mo = mo_transform(f)
        assert mo_transform(mo) == f
        inv += mo == f
        for a in range(n):
            assert mo_transform(conjugate(f, a, "right")) == conjugate(mo, a, "left")
            assert mo_transform(conjugate(f, a, "left")) == conjugate(mo, a, "right")
        if f(g.identity) != h.identity:
            continue
        assert conjugate(f, g.identity) == f
        for a, b in itertools.product(range(n), repeat=2):
            assert conjugate(conjugate(f, a), b) == conjugate(f, g.mul(a, b))
        homo = classify(f).homomorphism
        assert homo == all(conjugate(f, a) == f for a in range(n))
        if classify(f).strongly_inverse_preserving:
            assert all(conjugate(f, a, "left") == conjugate(f, a, "right") for a in range(n))
        elif classify(f).inverse_preserving:
            assert any(conjugate(f, a, "left") != conjugate(f, a, "right") for a in range(n))
    assert inv % 2 == h.order ** n % 2


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=6, max_size=6), st.integers(0, 5), st.integers(0, 5))
def test_action_laws_sampled_on_s3(vals, a, b):
    f = GroupFunction(S3, S3, vals)
    f = conjugate(f, 0)  # normalize to identity preserving
    assert conjugate(conjugate(f, a), b) == conjugate(f, S3.mul(a, b))
    mo = mo_transform(f)
    assert mo_transform(conjugate(f, a, "right")) == conjugate(mo, a, "left")


def test_json_roundtrip():
    f = left_multiplication(S3, 4)
    g = function_from_json(function_to_json(f))
    assert g.values.tolist() == f.values.tolist() and g.domain.name == "S3"


def test_bad_values():
    with pytest.raises(ValueError):
        GroupFunction(S3, S3, [0, 1])
    with pytest.raises(ValueError):
        GroupFunction(S3, cyclic(2), np.arange(6))
