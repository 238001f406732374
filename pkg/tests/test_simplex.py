import itertools
import time
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homonoid.fincat import validate_category
from homonoid.simplex import (
    DeltaTruncation,
    OutOfTruncation,
    SimplexMorphism,
    compose,
    delta_check,
    delta_fincat,
    enumerate_hom,
    generators,
    hom_count,
    identity,
    interval_dual,
    ordinal_sum,
)


def oracle_hom(m, n):
    """All weakly increasing length-m lists over 1..n, by raw filtering."""
    return [
        vals
        for vals in itertools.product(range(1, n + 1), repeat=m)
        if all(vals[i] <= vals[i + 1] for i in range(m - 1))
    ] if m > 0 else [()]


def test_unique_map_two_to_one():
    hom = enumerate_hom(2, 1)
    assert [f.values for f in hom] == [(1, 1)]


def test_empty_ordinal_identity():
    hom = enumerate_hom(0, 0)
    assert len(hom) == 1 and hom[0].values == ()


def test_hom_2_2_enumeration():
    # oracle first: brute-force filter gives three maps
    assert oracle_hom(2, 2) == [(1, 1), (1, 2), (2, 2)]
    assert [f.values for f in enumerate_hom(2, 2)] == [(1, 1), (1, 2), (2, 2)]


@pytest.mark.parametrize("m", range(5))
@pytest.mark.parametrize("n", range(5))
def test_hom_counts_match_binomial_and_oracle(m, n):
    hom = enumerate_hom(m, n)
    assert len(hom) == len(oracle_hom(m, n))
    if n >= 1:
        assert len(hom) == comb(m + n - 1, m)
    else:
        assert len(hom) == (1 if m == 0 else 0)


def test_ordinal_sum_examples():
    assert ordinal_sum(identity(1), identity(1)).values == identity(2).values
    bang = SimplexMorphism(2, 1, (1, 1))
    s = ordinal_sum(bang, identity(1))
    assert (s.dom, s.cod, s.values) == (3, 2, (1, 1, 2))
    empty = SimplexMorphism(0, 0, ())
    assert ordinal_sum(bang, empty).values == bang.values
    assert ordinal_sum(empty, bang).values == bang.values


def test_ordinal_sum_truncation_guard():
    with pytest.raises(OutOfTruncation):
        DeltaTruncation(3).ordinal_sum(identity(2), identity(2))


def small_morphisms(max_n=3):
    out = []
    for m in range(max_n + 1):
        for n in range(max_n + 1):
            out.extend(enumerate_hom(m, n))
    return out


@given(st.data())
@settings(max_examples=200, deadline=None)
def test_sum_interchange_random(data):
    mors = small_morphisms(2)
    f1 = data.draw(st.sampled_from(mors))
    f2 = data.draw(st.sampled_from([g for g in mors if g.dom == f1.cod]))
    g1 = data.draw(st.sampled_from(mors))
    g2 = data.draw(st.sampled_from([g for g in mors if g.dom == g1.cod]))
    lhs = ordinal_sum(compose(f2, f1), compose(g2, g1))
    rhs = compose(ordinal_sum(f2, g2), ordinal_sum(f1, g1))
    assert lhs == rhs


def test_interval_dual_outer_edge():
    bang = SimplexMorphism(2, 1, (1, 1))
    assert interval_dual(bang) == (0, 2)


def test_interval_dual_identity():
    for m in range(4):
        assert interval_dual(identity(m)) == tuple(range(m + 1))


def test_interval_dual_contravariant_exhaustive():
    mors = small_morphisms(3)
    for f in mors:
        for g in mors:
            if g.dom != f.cod:
                continue
            df, dg = interval_dual(f), interval_dual(g)
            assert interval_dual(compose(g, f)) == tuple(
                df[dg[j]] for j in range(g.cod + 1)
            )


def test_generators_level_one():
    faces, degens = generators(1)
    assert len(faces) == 1 and faces[0].values == ()
    assert len(degens) == 1 and degens[0].values == (1, 1)


def test_generators_level_zero_empty():
    assert generators(0) == ([], [])


def test_every_hom22_is_generator_composite():
    # brute-force closure of generators under composition
    gens = []
    for m in range(1, 4):
        fs, ds = generators(m)
        gens.extend(fs + ds)
    seen = {(g.dom, g.cod, g.values) for g in gens}
    for n in range(4):
        seen.add((n, n, identity(n).values))
    changed = True
    while changed:
        changed = False
        for d1, c1, v1 in list(seen):
            for g in gens:
                if g.dom == c1 and g.cod <= 3:
                    h = compose(g, SimplexMorphism(d1, c1, v1))
                    key = (h.dom, h.cod, h.values)
                    if key not in seen:
                        seen.add(key)
                        changed = True
    for f in enumerate_hom(2, 2):
        assert (2, 2, f.values) in seen


def test_delta_fincat_is_valid_category():
    c = delta_fincat(3)
    validate_category(c.objects, c.morphisms, c.identities, c.composition)


def test_delta_check_passes_and_is_fast():
    t0 = time.perf_counter()
    rep = delta_check(4)
    elapsed = time.perf_counter() - t0
    assert rep.ok, [e for e in rep.entries if e.status != "pass"]
    assert elapsed < 1.0
