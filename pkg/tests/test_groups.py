import itertools

import numpy as np
import pytest

from sandwich_forge.groups import (
    GroupValidationError,
    build_group,
    catalog,
    catalog_is_complete,
    center,
    central_involutions,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    elementary_abelian_2,
    group_from_json,
    group_to_json,
    left_cosets,
    quaternion8,
    sandwich_of,
    symmetric,
    two_torsion,
    validate_group,
)
from sandwich_forge.magma import axiom_profile, is_isomorphic

from conftest import perm_compose, perm_inverse

S3_PERMS = list(itertools.permutations(range(3)))


def idx(p):
    return S3_PERMS.index(tuple(p))


def test_s3_sandwich_of_two_transpositions():
    s3 = symmetric(3)
    a, b = idx((1, 0, 2)), idx((2, 1, 0))
    # oracle: a b^-1 a with explicit permutation composition
    want = perm_compose(perm_compose((1, 0, 2), perm_inverse((2, 1, 0))), (1, 0, 2))
    assert want == (0, 2, 1)
    assert sandwich_of(s3)(a, b) == idx(want)


def test_sandwich_of_cyclic_is_affine():
    for n in range(1, 9):
        s = sandwich_of(cyclic(n))
        assert s.tolist() == [[(2 * a - b) % n for b in range(n)] for a in range(n)]


@pytest.mark.parametrize("entry", catalog(16), ids=lambda e: e.name)
def test_catalog_groups_give_sandwiches(entry):
    g = entry.group
    validate_group(g.table, g.identity, g.inverse)
    p = axiom_profile(sandwich_of(g))
    assert p.is_sandwich
    # group sandwiches are left cancellative, and right cancellative only
    # when squaring is injective
    sq = g.table[np.arange(g.order), np.arange(g.order)]
    assert p.right_cancellative == (len(set(sq.tolist())) == g.order)


def test_catalog_order_eight_complete():
    entries = catalog(8)
    counts = {}
    for e in entries:
        counts[e.group.order] = counts.get(e.group.order, 0) + 1
    # number of groups of each order up to isomorphism
    assert counts == {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5}
    assert catalog_is_complete(8) and not catalog_is_complete(16)
    orders = [e.group.order for e in entries]
    assert orders == sorted(orders)


def element_orders(g):
    out = []
    for x in range(g.order):
        k, y = 1, x
        while y != g.identity:
            y, k = g.mul(y, x), k + 1
        out.append(k)
    return sorted(out)


def test_catalog_complete_through_fifteen():
    want = {9: 2, 10: 2, 11: 1, 12: 5, 13: 1, 14: 2, 15: 1}
    by_order = {}
    for e in catalog(15):
        by_order.setdefault(e.group.order, []).append(e.group)
    assert {k: len(by_order[k]) for k in want} == want
    assert catalog_is_complete(15)
    # the order-12 entries are pairwise non-isomorphic
    assert len({tuple(element_orders(g)) for g in by_order[12]}) == 5


def test_validation_reports_all_problems():
    bad = [[0, 1, 2], [1, 0, 0], [2, 2, 1]]
    with pytest.raises(GroupValidationError) as e:
        validate_group(bad)
    assert e.value.violations


def test_validation_accepts_relabelled_identity():
    g = validate_group([[1, 0], [0, 1]])
    assert g.identity == 1


@pytest.mark.parametrize(
    "name,order",
    [("C4", 4), ("C2^3", 8), ("S3", 6), ("D4", 8), ("Q8", 8), ("Dic3", 12), ("A4", 12), ("C2xC4", 8), ("C2^2xC4", 16)],
)
def test_build_group(name, order):
    assert build_group(name).order == order


def test_build_group_rejects_garbage():
    with pytest.raises(ValueError):
        build_group("Z7")


def test_quaternion_facts():
    q = quaternion8()
    assert q.order == 8
    assert center(q) == central_involutions(q) == frozenset({q.identity, 2})
    assert len(two_torsion(q)) == 2
    assert dicyclic(2).table.tolist() == q.table.tolist()


def test_dihedral_is_not_abelian():
    d = dihedral(4)
    assert not (d.table == d.table.T).all()
    assert len(center(d)) == 2


def test_direct_product_index_convention():
    g = direct_product(cyclic(2), cyclic(3))
    for a, b, c, d in itertools.product(range(2), range(3), range(2), range(3)):
        assert g.mul(a * 3 + b, c * 3 + d) == ((a + c) % 2) * 3 + (b + d) % 3


def test_two_torsion_s3():
    assert two_torsion(symmetric(3)) == frozenset(
        idx(p) for p in S3_PERMS if perm_compose(p, p) == (0, 1, 2)
    )


def test_central_involutions_elementary_abelian():
    g = elementary_abelian_2(3)
    assert central_involutions(g) == frozenset(range(8))
    assert len(left_cosets(g, central_involutions(g))) == 1


def test_left_cosets_partition():
    g = cyclic(6)
    cos = left_cosets(g, frozenset({0, 3}))
    assert sorted(map(sorted, cos)) == [[0, 3], [1, 4], [2, 5]]


def test_group_json_roundtrip():
    g = dihedral(3)
    h = group_from_json(group_to_json(g))
    assert h.table.tolist() == g.table.tolist() and h.identity == g.identity


def test_isomorphic_groups_isomorphic_sandwiches():
    assert is_isomorphic(sandwich_of(build_group("C2xC3")), sandwich_of(cyclic(6)))
    # C2xC4 and C8 differ in their involution counts, which the sandwich sees
    assert not is_isomorphic(sandwich_of(build_group("C2xC4")), sandwich_of(cyclic(8)))
