import itertools

import pytest

from conftest import (
    chain3,
    contractible_groupoid,
    delooping_cyclic,
    discrete,
    poset2,
    terminal_cat,
)
from homonoid.fincat import (
    FunctorData,
    InvalidStructure,
    NatTransfData,
    UnknownMorphism,
    compose_functors,
    constant_functor,
    identity_functor,
    identity_transf,
    is_isomorphism,
    iso_classes,
    obj_components,
    opposite,
    pair_obj,
    product,
    proj,
    terminal_category,
    tuple_functor,
    validate_category,
    validate_functor,
    validate_natural,
    vertical_compose,
    whisker,
)


def oracle_category_laws(cat):
    """Brute-force re-check of all laws, independent of validate_category."""
    for f in cat.morphism_ids():
        assert cat.compose(cat.id_of(cat.cod[f]), f) == f
        assert cat.compose(f, cat.id_of(cat.dom[f])) == f
    for f, g, h in itertools.product(cat.morphism_ids(), repeat=3):
        if cat.cod[f] == cat.dom[g] and cat.cod[g] == cat.dom[h]:
            assert cat.compose(cat.compose(h, g), f) == cat.compose(
                h, cat.compose(g, f)
            )


def test_terminal_category_valid():
    cat = terminal_cat()
    assert len(cat.objects) == 1 and len(cat.morphisms) == 1
    oracle_category_laws(cat)


def test_poset2_valid_by_oracle():
    cat = poset2()
    assert len(cat.morphisms) == 3
    oracle_category_laws(cat)


def test_empty_category_is_legal():
    cat = validate_category([], [], {}, {})
    assert cat.objects == () and cat.morphisms == ()


def test_missing_composite_reported():
    with pytest.raises(InvalidStructure) as ei:
        validate_category(
            ["0", "1"],
            [("i0", "0", "0"), ("i1", "1", "1"), ("a", "0", "1")],
            {"0": "i0", "1": "i1"},
            {("i0", "i0"): "i0", ("i1", "i1"): "i1", ("a", "i0"): "a"},
        )
    kinds = {v.kind for v in ei.value.violations}
    assert "IllTypedComposite" in kinds
    assert any(v.subject == ("i1", "a") for v in ei.value.violations)


def test_missing_identity_reported():
    with pytest.raises(InvalidStructure) as ei:
        validate_category(["x"], [], {}, {})
    assert ei.value.violations[0].kind == "MissingIdentity"


def test_nonassociative_genuine():
    # a table where (h.g).f != h.(g.f): use three parallel endos
    comp = {}
    names = ["e", "p", "q"]
    # e is identity; p.p = q, p.q = e, q.p = p, q.q = q  (not associative)
    table = {
        ("e", "e"): "e", ("e", "p"): "p", ("e", "q"): "q",
        ("p", "e"): "p", ("q", "e"): "q",
        ("p", "p"): "q", ("p", "q"): "e", ("q", "p"): "p", ("q", "q"): "q",
    }
    comp.update(table)
    with pytest.raises(InvalidStructure) as ei:
        validate_category(
            ["*"], [(n, "*", "*") for n in names], {"*": "e"}, comp
        )
    assert any(v.kind == "NonAssociative" for v in ei.value.violations)


def test_is_isomorphism():
    cat = poset2()
    assert is_isomorphism(cat, "i0") == (True, "i0")
    assert is_isomorphism(cat, "a") == (False, None)
    grp = contractible_groupoid(2)
    ok, inv = is_isomorphism(grp, "u01")
    assert ok and inv == "u10"
    with pytest.raises(UnknownMorphism):
        is_isomorphism(cat, "nope")


def test_iso_classes():
    grp = contractible_groupoid(3)
    classes = iso_classes(grp)
    assert classes["k0"] == frozenset({"k0", "k1", "k2"})
    pos = poset2()
    assert iso_classes(pos)["0"] == frozenset({"0"})


# -- functors ----------------------------------------------------------------


def test_identity_and_constant_functors():
    for cat in (poset2(), chain3(), contractible_groupoid(2)):
        validate_functor(identity_functor(cat))
        validate_functor(constant_functor(cat, terminal_cat(), "*"))


def test_functor_violation_detected():
    cat = delooping_cyclic(2)
    # swap the two endomorphism images: g0 -> g1, g1 -> g0 breaks identities
    bad = FunctorData(cat, cat, {"*": "*"}, {"g0": "g1", "g1": "g0"})
    with pytest.raises(InvalidStructure) as ei:
        validate_functor(bad)
    kinds = {v.kind for v in ei.value.violations}
    assert "BreaksIdentity" in kinds or "BreaksComposition" in kinds


def test_functor_breaks_composition_oracle():
    # object-bijective endomap of BZ2 sending g1 to g0 breaks g1.g1 = g0
    cat = delooping_cyclic(2)
    bad = FunctorData(cat, cat, {"*": "*"}, {"g0": "g0", "g1": "g0"})
    # oracle: re-check every composable pair by hand
    broken = [
        (g, f)
        for (g, f), gf in cat.composition.items()
        if cat.compose(bad.morphism_map[g], bad.morphism_map[f])
        != bad.morphism_map[gf]
    ]
    assert not broken  # collapsing to identity is actually a functor
    validate_functor(bad)


def test_compose_functors_pointwise():
    c = chain3()
    f = identity_functor(c)
    g = constant_functor(c, terminal_cat(), "*")
    gf = compose_functors(g, f)
    validate_functor(gf)
    assert gf.object_map == g.object_map
    assert compose_functors(f, f).object_map == f.object_map


# -- natural transformations --------------------------------------------------


def test_identity_transformation_is_iso():
    t = validate_natural(identity_transf(identity_functor(poset2())))
    assert t.is_iso


def test_non_natural_family_rejected_with_witness():
    # source = poset2 (the arrow category shape), two functors into chain3
    src = poset2()
    tgt = chain3()
    f = FunctorData(src, tgt, {"0": "0", "1": "1"}, {"i0": "m00", "i1": "m11", "a": "m01"})
    g = FunctorData(src, tgt, {"0": "1", "1": "2"}, {"i0": "m11", "i1": "m22", "a": "m12"})
    validate_functor(f)
    validate_functor(g)
    good = NatTransfData(f, g, {"0": "m01", "1": "m12"})
    validate_natural(good)
    bad = NatTransfData(f, g, {"0": "m01", "1": "m11"})
    with pytest.raises(InvalidStructure) as ei:
        validate_natural(bad)
    kinds = {v.kind for v in ei.value.violations}
    assert "ComponentIllTyped" in kinds


def test_naturality_failure_witnessed():
    src = poset2()
    tgt = contractible_groupoid(2)
    f = constant_functor(src, tgt, "k0")
    g = constant_functor(src, tgt, "k1")
    # both components must be u01; a mixed family is ill-typed or non-natural
    ok = validate_natural(NatTransfData(f, g, {"0": "u01", "1": "u01"}))
    assert ok.is_iso
    # now a genuinely non-natural square: target BZ2, components differ
    b = delooping_cyclic(2)
    f2 = constant_functor(poset2(), b, "*")
    with pytest.raises(InvalidStructure) as ei:
        validate_natural(NatTransfData(f2, f2, {"0": "g0", "1": "g1"}))
    assert any(v.kind == "NaturalitySquareFails" and v.subject == ("a",)
               for v in ei.value.violations)


def test_vertical_compose_identities():
    f = identity_functor(chain3())
    t = vertical_compose(identity_transf(f), identity_transf(f))
    validate_natural(t)
    assert t.components == identity_transf(f).components


def test_whisker_preserves_naturality():
    # whisker a valid transformation on both sides; oracle = validate_natural
    src = poset2()
    tgt = contractible_groupoid(2)
    f = constant_functor(src, tgt, "k0")
    g = constant_functor(src, tgt, "k1")
    t = validate_natural(NatTransfData(f, g, {"0": "u01", "1": "u01"}))
    h = identity_functor(tgt)
    validate_natural(whisker(h, t))
    e = identity_functor(src)
    validate_natural(whisker(t, e))


# -- products ------------------------------------------------------------------


def test_product_unit_law():
    c = chain3()
    p = product([terminal_category(), c])
    assert len(p.objects) == len(c.objects)
    assert len(p.morphisms) == len(c.morphisms)


def test_product_counts_oracle():
    a, b = discrete(2), discrete(2)
    p = product([a, b])
    assert len(p.objects) == 4 and len(p.morphisms) == 4
    validate_functor(proj(p, 0))
    validate_functor(proj(p, 1))


def test_product_flattening_strictly_associative():
    a, b, c = poset2(), discrete(2), chain3()
    left = product([product([a, b]), c])
    right = product([a, b, c])
    assert left.objects == right.objects
    assert left.morphisms == right.morphisms
    assert left.composition == right.composition


def test_product_category_laws():
    p = product([poset2(), poset2()])
    # revalidate through the table validator
    validate_category(p.objects, p.morphisms, p.identities, p.composition)


def test_tuple_functor_and_projections():
    c = poset2()
    p = product([c, c])
    diag = tuple_functor([identity_functor(c), identity_functor(c)])
    validate_functor(diag)
    assert compose_functors(proj(p, 0), diag).object_map == identity_functor(c).object_map
    assert obj_components(p, pair_obj(p, "0", "1")) == ("0", "1")


def test_opposite_involution():
    c = chain3()
    assert opposite(opposite(c)).composition == c.composition
    validate_category(
        opposite(c).objects,
        opposite(c).morphisms,
        opposite(c).identities,
        opposite(c).composition,
    )
