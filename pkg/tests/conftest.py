"""Shared small-category corpus used across the test suite.

Each builder returns a freshly validated FinCat, so tests can mutate raw
tables before validation without affecting each other.
"""

from __future__ import annotations

import pytest

from homonoid.fincat import FinCat, validate_category


def terminal_cat() -> FinCat:
    return validate_category(
        ["*"], [("1*", "*", "*")], {"*": "1*"}, {("1*", "1*"): "1*"}, name="1"
    )


def poset2() -> FinCat:
    """The poset 0 -> 1: two objects, three morphisms."""
    return validate_category(
        ["0", "1"],
        [("i0", "0", "0"), ("i1", "1", "1"), ("a", "0", "1")],
        {"0": "i0", "1": "i1"},
        {
            ("i0", "i0"): "i0",
            ("i1", "i1"): "i1",
            ("a", "i0"): "a",
            ("i1", "a"): "a",
        },
        name="poset2",
    )


def chain3() -> FinCat:
    """The poset 0 -> 1 -> 2 with its unique composite."""
    objs = ["0", "1", "2"]
    mors = []
    ids = {}
    comp = {}
    arrows = {}
    for x in range(3):
        for y in range(x, 3):
            m = f"m{x}{y}"
            mors.append((m, str(x), str(y)))
            arrows[(x, y)] = m
            if x == y:
                ids[str(x)] = m
    for x in range(3):
        for y in range(x, 3):
            for z in range(y, 3):
                comp[(arrows[(y, z)], arrows[(x, y)])] = arrows[(x, z)]
    return validate_category(objs, mors, ids, comp, name="chain3")


def discrete(n: int) -> FinCat:
    objs = [f"d{i}" for i in range(n)]
    mors = [(f"id{i}", f"d{i}", f"d{i}") for i in range(n)]
    ids = {f"d{i}": f"id{i}" for i in range(n)}
    comp = {(f"id{i}", f"id{i}"): f"id{i}" for i in range(n)}
    return validate_category(objs, mors, ids, comp, name=f"disc{n}")


def contractible_groupoid(n: int) -> FinCat:
    """Exactly one morphism between any two of n objects."""
    objs = [f"k{i}" for i in range(n)]
    mors = [(f"u{i}{j}", f"k{i}", f"k{j}") for i in range(n) for j in range(n)]
    ids = {f"k{i}": f"u{i}{i}" for i in range(n)}
    comp = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                comp[(f"u{j}{k}", f"u{i}{j}")] = f"u{i}{k}"
    return validate_category(objs, mors, ids, comp, name=f"K{n}")


def delooping_cyclic(n: int) -> FinCat:
    """One object whose endomorphisms are the cyclic group Z/n."""
    mors = [(f"g{i}", "*", "*") for i in range(n)]
    comp = {(f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)}
    return validate_category(["*"], mors, {"*": "g0"}, comp, name=f"BZ{n}")


def chain3_monoidal(op, name: str) -> "MonoidalStructure":
    """Strict monoidal structure on chain3 with object tensor x@y = op(x,y).

    `op` must be monotone in both arguments with op(0, x) = op(x, 0) = x
    (e.g. max, or addition capped at 2).
    """
    from homonoid.monoidal import strict_monoidal

    base = chain3()
    obj_t = {}
    mor_t = {}
    for x in range(3):
        for y in range(3):
            obj_t[(str(x), str(y))] = str(op(x, y))
    for a in range(3):
        for b in range(a, 3):
            for c in range(3):
                for d in range(c, 3):
                    mor_t[(f"m{a}{b}", f"m{c}{d}")] = f"m{op(a, c)}{op(b, d)}"
    return strict_monoidal(base, obj_t, mor_t, "0", name=name)


def delooping_monoidal(n: int) -> "MonoidalStructure":
    """One object, endomorphisms Z/n, tensor = addition (strict monoidal)."""
    from homonoid.monoidal import strict_monoidal

    base = delooping_cyclic(n)
    obj_t = {("*", "*"): "*"}
    mor_t = {
        (f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)
    }
    return strict_monoidal(base, obj_t, mor_t, "*", name=f"tensor-BZ{n}")


def discrete_monoidal_z2() -> "MonoidalStructure":
    """The group Z/2 as a discrete strict monoidal category."""
    from homonoid.monoidal import strict_monoidal

    base = discrete(2)
    obj_t = {
        ("d0", "d0"): "d0", ("d0", "d1"): "d1",
        ("d1", "d0"): "d1", ("d1", "d1"): "d0",
    }
    mor_t = {
        (f"id{i}", f"id{j}"): f"id{(i + j) % 2}" for i in range(2) for j in range(2)
    }
    return strict_monoidal(base, obj_t, mor_t, "d0", name="disc-Z2")


@pytest.fixture
def corpus() -> list[FinCat]:
    return [
        terminal_cat(),
        poset2(),
        chain3(),
        discrete(2),
        contractible_groupoid(2),
        contractible_groupoid(3),
        delooping_cyclic(2),
    ]
