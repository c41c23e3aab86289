"""Catalog constructors: intermediate family, orbit closure, flat types."""

from __future__ import annotations

import pytest

from arrfree.arrangement import Hyperplane, ZeroDimensional, lattice_isomorphic
from arrfree.catalog import (
    AmbiguousType,
    CatalogDataError,
    InvalidParameter,
    NoSuchType,
    _transform,
    canonical_induction_order,
    flat_orbits,
    group,
    group_names,
    intermediate,
    intermediate_exponents,
    load_groups,
    monomial_arrangement,
    reflection_arrangement,
    restriction_by_type,
)
from arrfree.cyclotomic import root_of_unity

G333_TEXT = """
# monomial test presentation
group G(3,3,3) dim=3 zeta=3 hyperplanes=9
0, 1, 0
1, 0, 0
0, 0, 1

0, z, 0
z^2, 0, 0
0, 0, 1

1, 0, 0
0, 0, 1
0, 1, 0
"""


def g333():
    return load_groups(G333_TEXT)["G(3,3,3)"]


def test_intermediate_cardinality_and_order():
    for r in (2, 3, 4):
        for ell in (2, 3, 4):
            for k in range(ell + 1):
                a = intermediate(r, ell, k)
                assert len(a) == k + r * ell * (ell - 1) // 2
                assert a.dim == ell
    # coordinate hyperplanes really are there
    a = intermediate(3, 3, 2)
    assert Hyperplane([1, 0, 0]) in a
    assert Hyperplane([0, 1, 0]) in a
    assert Hyperplane([0, 0, 1]) not in a


def test_intermediate_exponent_formula_samples():
    assert intermediate_exponents(3, 3, 2) == (1, 4, 6)
    assert intermediate_exponents(3, 3, 0) == (1, 4, 4)
    assert intermediate_exponents(2, 4, 4) == (1, 3, 5, 7)
    assert intermediate_exponents(4, 5, 1) == (1, 5, 9, 13, 13)
    # the formula matches the lattice on a couple of instances
    assert intermediate(3, 3, 2).exponents() == (1, 4, 6)
    assert intermediate(2, 3, 1).exponents() == (1, 3, 3)


def test_intermediate_parameter_bounds():
    with pytest.raises(InvalidParameter):
        intermediate(3, 2, 5)
    with pytest.raises(InvalidParameter):
        intermediate(1, 3, 0)
    with pytest.raises(InvalidParameter):
        intermediate(3, 1, 0)
    with pytest.raises(InvalidParameter):
        intermediate_exponents(3, 3, -1)


def test_monomial_endpoints_and_divisor_rule():
    assert monomial_arrangement(3, 3, 3) == intermediate(3, 3, 0)
    assert monomial_arrangement(3, 1, 3) == intermediate(3, 3, 3)
    # any proper divisor builds the same mirrors as p = 1
    assert monomial_arrangement(4, 2, 3) == monomial_arrangement(4, 1, 3)
    with pytest.raises(InvalidParameter):
        monomial_arrangement(6, 4, 2)


def test_group_loader_and_closure():
    g = g333()
    assert g.dim == 3 and g.order == 3 and g.expected == 9
    assert len(g.generators) == 3
    arr = reflection_arrangement(g)
    assert len(arr) == 9
    assert arr == intermediate(3, 3, 0)
    # cached per presentation
    assert reflection_arrangement(g) is arr


def test_group_loader_rejects_bad_data():
    with pytest.raises(CatalogDataError):
        load_groups("group X dim=2 zeta=1 hyperplanes=1\n1, 0\n0, 0\n")
    with pytest.raises(CatalogDataError):
        load_groups("group X dim=2 zeta=1 hyperplanes=1\n1, 0, 0\n")
    with pytest.raises(CatalogDataError):
        load_groups("1, 0\n0, 1\n")
    with pytest.raises(CatalogDataError):
        load_groups("group X dim=2 zeta=1 hyperplanes=1\n")


def test_closure_cardinality_gates():
    low = load_groups(G333_TEXT.replace("hyperplanes=9", "hyperplanes=8"))
    with pytest.raises(CatalogDataError, match="exceeds"):
        reflection_arrangement(low["G(3,3,3)"])
    high = load_groups(G333_TEXT.replace("hyperplanes=9", "hyperplanes=10"))
    with pytest.raises(CatalogDataError, match="stopped at 9"):
        reflection_arrangement(high["G(3,3,3)"])


def test_restriction_by_type_on_monomial():
    g = g333()
    r = restriction_by_type(g, "A1")
    assert r.dim == 2 and len(r) == 4  # one slot merges, two slots survive
    assert r.candidate_exponents() == (1, 3)
    with pytest.raises(NoSuchType):
        restriction_by_type(g, "A3")
    with pytest.raises(NoSuchType):
        restriction_by_type(g, "E8")
    # the full center matches the size-9 discriminated tag but is a point
    with pytest.raises(ZeroDimensional):
        restriction_by_type(g, "G(3,3,3)")


def test_flat_orbits_of_monomial():
    g = g333()
    atoms = flat_orbits(g, 1)
    assert [lab.orbit_size for lab in atoms] == [9]
    assert atoms[0].tag == "A1"
    # 12 lines, each on 3 mirrors; the twist difference a-b of the two
    # slope parameters is invariant, so the 9 generic lines split in 3
    # orbits next to the coordinate-line orbit
    lines = flat_orbits(g, 2)
    assert sorted(lab.orbit_size for lab in lines) == [3, 3, 3, 3]
    assert {lab.tag for lab in lines} == {"A2"}
    assert all(lab.count == 3 for lab in lines)
    top = flat_orbits(g, 0)
    assert len(top) == 1 and top[0].tag == "empty"


def test_canonical_induction_order_structure():
    z = root_of_unity(3)
    hs = canonical_induction_order(3, 3)
    assert len(hs) == 10
    assert hs[0] == Hyperplane([1, -1, 0])
    assert hs[3] == Hyperplane([1, 0, 0])
    assert hs[4] == Hyperplane([1, 0, -1])
    assert set(hs) == set(intermediate(3, 3, 1).hyperplanes)

    hs4 = canonical_induction_order(3, 4)
    assert len(hs4) == 20
    assert set(hs4) == set(intermediate(3, 4, 2).hyperplanes)
    assert hs4[10] == Hyperplane([0, 1, 0, 0])

    hs2 = canonical_induction_order(2, 3)
    assert len(hs2) == 7
    assert set(hs2) == set(intermediate(2, 3, 1).hyperplanes)

    with pytest.raises(InvalidParameter):
        canonical_induction_order(1, 3)
    with pytest.raises(InvalidParameter):
        canonical_induction_order(3, 2)


# ---- shipped exceptional-group data ----

SHIPPED = {
    "G23": (3, 5, 15),
    "G24": (3, 7, 21),
    "G25": (3, 3, 12),
    "G26": (3, 3, 21),
    "G27": (3, 15, 45),
    "G28": (4, 1, 24),
    "G29": (4, 4, 40),
    "G30": (4, 5, 60),
    "G31": (4, 4, 60),
    "G32": (4, 3, 40),
    "G33": (5, 3, 45),
    "G34": (6, 3, 126),
}


def test_shipped_catalog_closes_at_expected_counts():
    assert set(group_names()) == set(SHIPPED)
    for name, (dim, order, count) in SHIPPED.items():
        g = group(name)
        assert (g.dim, g.order, g.expected) == (dim, order, count)
        arr = reflection_arrangement(g)
        assert len(arr) == count and arr.dim == dim


def test_shipped_catalog_characteristic_roots():
    roots = {
        "G23": (1, 5, 9),
        "G24": (1, 9, 11),
        "G25": (1, 4, 7),
        "G26": (1, 7, 13),
        "G27": (1, 19, 25),
        "G28": (1, 5, 7, 11),
        "G29": (1, 9, 13, 17),
        "G30": (1, 11, 19, 29),
        "G31": (1, 13, 17, 29),
        "G32": (1, 7, 13, 19),
        "G33": (1, 7, 9, 13, 15),
    }
    for name, want in roots.items():
        arr = reflection_arrangement(group(name))
        assert arr.candidate_exponents() == want
        assert sum(want) == len(arr)


def test_icosahedral_mirrors_embed_in_valentiner():
    big = reflection_arrangement(group("G27"))
    small = reflection_arrangement(group("G23"))
    for h in small.hyperplanes:
        lifted = Hyperplane([c.promote(15) for c in h.coeffs], 15)
        assert lifted in big


def test_shipped_arrangements_are_generator_stable():
    # one more closure pass moves nothing
    for name in ("G25", "G32"):
        g = group(name)
        arr = reflection_arrangement(g)
        for mat in g.generators:
            for h in arr.hyperplanes:
                assert _transform(h, mat, g.order) in arr


def test_restrictions_of_rank5_and_rank6_groups():
    g33, g34 = group("G33"), group("G34")
    sizes = {
        (g33, "A1"): (4, 28),
        (g33, "A1^2"): (3, 17),
        (g33, "A2"): (3, 14),
        (g34, "A1"): (5, 85),
        (g34, "A1^2"): (4, 56),
        (g34, "A2"): (4, 49),
        (g34, "A1^3"): (3, 33),
        (g34, "A1A2"): (3, 30),
        (g34, "A3"): (3, 25),
    }
    for (g, tag), (dim, count) in sizes.items():
        r = restriction_by_type(g, tag)
        assert (r.dim, len(r)) == (dim, count)


def test_g34_monomial_restriction_matches_rank3_group():
    r = restriction_by_type(group("G34"), "G(3,3,3)")
    g26 = reflection_arrangement(group("G26"))
    assert len(r) == 21
    assert lattice_isomorphic(r, g26)


def test_flat_orbits_of_shipped_groups():
    atoms33 = flat_orbits(group("G33"), 1)
    assert [(lab.tag, lab.orbit_size) for lab in atoms33] == [("A1", 45)]
    lines34 = flat_orbits(group("G34"), 2)
    assert sorted((lab.tag, lab.orbit_size) for lab in lines34) == \
        [("A1^2", 2835), ("A2", 1680)]


def test_pair_flat_restriction_of_monomial():
    # restricting the full monomial arrangement to one twisted-pair flat
    # leaves an intermediate arrangement one rank down with one extra
    # coordinate hyperplane
    z = root_of_unity(3)
    for ell, p in ((3, 2), (4, 3)):
        whole = intermediate(3, ell, 0)
        restricted = whole.restricted(Hyperplane([1, -z] + [0] * (ell - 2)))
        assert lattice_isomorphic(restricted, intermediate(3, p, 1))
