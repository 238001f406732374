"""Finite categories as explicit tables, with exhaustive validation.

Objects and morphisms are opaque string ids.  A category is its object
list, its morphism list with endpoints, an identity assignment, and a
total composition table over composable pairs.  Every categorical law is
therefore decidable, and the validators here check them all exhaustively,
reporting every violation with lexicographically smallest witnesses first.

Products of categories are kept flat: an n-ary product is a single
:class:`TupleCat` whose objects and morphisms are json-encoded tuples of
component ids, and nesting products splices factor lists together.  This
makes the product operation strictly associative and strictly unital
(the empty product is the terminal category), which is what the rest of
the package relies on.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Mapping
from dataclasses import dataclass, field


class UnknownMorphism(ValueError):
    """A morphism (or object) id that is not part of the category."""


class ShapeMismatch(ValueError):
    """Endpoints of functors/transformations do not line up for an operation."""


@dataclass(frozen=True)
class Violation:
    kind: str
    subject: tuple[str, ...]
    detail: str = ""

    def describe(self) -> str:
        subj = ", ".join(self.subject)
        return f"{self.kind}[{subj}]" + (f": {self.detail}" if self.detail else "")


class InvalidStructure(Exception):
    """A table failed its defining laws.  Carries the full violation list."""

    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        shown = "; ".join(v.describe() for v in self.violations[:8])
        extra = "" if len(self.violations) <= 8 else f" (+{len(self.violations) - 8} more)"
        super().__init__(f"{len(self.violations)} violation(s): {shown}{extra}")


# ---------------------------------------------------------------------------
# Categories


@dataclass
class FinCat:
    """A finite category.  Treated as immutable once constructed."""

    objects: tuple[str, ...]
    morphisms: tuple[tuple[str, str, str], ...]  # (id, dom, cod)
    identities: dict[str, str]
    composition: dict[tuple[str, str], str]  # (g, f) -> g after f
    name: str = ""

    dom: dict[str, str] = field(default_factory=dict, repr=False, compare=False)
    cod: dict[str, str] = field(default_factory=dict, repr=False, compare=False)
    _hom: dict[tuple[str, str], tuple[str, ...]] = field(
        default_factory=dict, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        self.dom = {m: d for m, d, _ in self.morphisms}
        self.cod = {m: c for m, _, c in self.morphisms}
        buckets: dict[tuple[str, str], list[str]] = {}
        for m, d, c in self.morphisms:
            buckets.setdefault((d, c), []).append(m)
        self._hom = {k: tuple(sorted(v)) for k, v in buckets.items()}

    # -- lookups ----------------------------------------------------------

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._hom.get((a, b), ())

    def id_of(self, a: str) -> str:
        try:
            return self.identities[a]
        except KeyError:
            raise UnknownMorphism(f"no identity for object {a!r}") from None

    def compose(self, g: str, f: str) -> str:
        """g after f.  Raises for non-composable or unknown pairs."""
        try:
            return self.composition[(g, f)]
        except KeyError:
            if f not in self.dom or g not in self.dom:
                raise UnknownMorphism(f"unknown morphism in ({g!r}, {f!r})") from None
            raise ShapeMismatch(
                f"{g!r} after {f!r} undefined (cod {self.cod[f]!r} vs dom {self.dom[g]!r})"
            ) from None

    def has_morphism(self, m: str) -> bool:
        return m in self.dom

    def morphism_ids(self) -> list[str]:
        return sorted(self.dom)


def same_category(a: FinCat, b: FinCat) -> bool:
    """Structural equality of the underlying tables (names ignored)."""
    if a is b:
        return True
    return (
        a.objects == b.objects
        and a.morphisms == b.morphisms
        and a.identities == b.identities
        and a.composition == b.composition
    )


def validate_category(
    objects,
    morphisms,
    identities,
    composition,
    name: str = "",
) -> FinCat:
    """Build a :class:`FinCat` after checking every axiom on the raw tables.

    Raises :class:`InvalidStructure` listing all violations: ill-typed or
    non-total composition entries (``IllTypedComposite``), identity problems
    (``MissingIdentity``) and associativity failures (``NonAssociative``).
    """
    objects = tuple(objects)
    morphisms = tuple(tuple(m) for m in morphisms)
    identities = dict(identities)
    composition = {tuple(k): v for k, v in composition.items()} if isinstance(
        composition, Mapping
    ) else {(g, f): gf for g, f, gf in composition}

    bad: list[Violation] = []
    if len(set(objects)) != len(objects):
        bad.append(Violation("DuplicateId", ("objects",), "duplicate object id"))
    mids = [m[0] for m in morphisms]
    if len(set(mids)) != len(mids):
        bad.append(Violation("DuplicateId", ("morphisms",), "duplicate morphism id"))
    obj_set = set(objects)
    dom = {}
    cod = {}
    for m, d, c in morphisms:
        dom[m], cod[m] = d, c
        if d not in obj_set or c not in obj_set:
            bad.append(Violation("IllTypedComposite", (m,), "endpoint not an object"))
    if bad:
        raise InvalidStructure(bad)

    mor_set = set(mids)
    for a in sorted(objects):
        i = identities.get(a)
        if i is None or i not in mor_set or dom[i] != a or cod[i] != a:
            bad.append(Violation("MissingIdentity", (a,), "no identity morphism"))
    for a in sorted(identities):
        if a not in obj_set:
            bad.append(Violation("MissingIdentity", (a,), "identity for unknown object"))

    # composition: defined exactly on composable pairs, with correct typing
    for (g, f) in sorted(composition):
        if g not in mor_set or f not in mor_set:
            bad.append(Violation("IllTypedComposite", (g, f), "unknown morphism id"))
            continue
        if dom[g] != cod[f]:
            bad.append(Violation("IllTypedComposite", (g, f), "pair not composable"))
            continue
        gf = composition[(g, f)]
        if gf not in mor_set or dom[gf] != dom[f] or cod[gf] != cod[g]:
            bad.append(Violation("IllTypedComposite", (g, f), "composite ill-typed"))
    for g in sorted(mor_set):
        for f in sorted(mor_set):
            if dom[g] == cod[f] and (g, f) not in composition:
                bad.append(Violation("IllTypedComposite", (g, f), "composite missing"))
    if bad:
        raise InvalidStructure(bad)

    for f in sorted(mor_set):
        if composition[(identities[cod[f]], f)] != f or composition[(f, identities[dom[f]])] != f:
            bad.append(Violation("MissingIdentity", (f,), "identity law fails"))

    by_dom: dict[str, list[str]] = {a: [] for a in objects}
    for m in sorted(mor_set):
        by_dom[dom[m]].append(m)
    for (g, f) in sorted(composition):
        gf = composition[(g, f)]
        for h in by_dom[cod[g]]:
            if composition[(composition[(h, g)], f)] != composition[(h, gf)]:
                bad.append(Violation("NonAssociative", (h, g, f)))
    if bad:
        raise InvalidStructure(bad)

    return FinCat(objects, morphisms, identities, composition, name)


def is_isomorphism(cat: FinCat, f: str) -> tuple[bool, str | None]:
    """Exhaustive two-sided inverse search; returns (found, inverse id)."""
    if not cat.has_morphism(f):
        raise UnknownMorphism(f"unknown morphism {f!r}")
    a, b = cat.dom[f], cat.cod[f]
    for g in cat.hom(b, a):
        if cat.compose(g, f) == cat.id_of(a) and cat.compose(f, g) == cat.id_of(b):
            return True, g
    return False, None


def isomorphism_ids(cat: FinCat) -> set[str]:
    return {m for m in cat.dom if is_isomorphism(cat, m)[0]}


def iso_classes(cat: FinCat) -> dict[str, frozenset[str]]:
    """Partition of objects into isomorphism classes."""
    parent = {a: a for a in cat.objects}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in cat.morphism_ids():
        if is_isomorphism(cat, m)[0]:
            ra, rb = find(cat.dom[m]), find(cat.cod[m])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[str, set[str]] = {}
    for a in cat.objects:
        groups.setdefault(find(a), set()).add(a)
    return {a: frozenset(groups[find(a)]) for a in cat.objects}


# ---------------------------------------------------------------------------
# Functors


@dataclass
class FunctorData:
    source: FinCat
    target: FinCat
    object_map: dict[str, str]
    morphism_map: dict[str, str]
    name: str = ""

    def on_obj(self, a: str) -> str:
        return self.object_map[a]

    def on_mor(self, f: str) -> str:
        return self.morphism_map[f]


def functor_equal(f: FunctorData, g: FunctorData) -> bool:
    return (
        same_category(f.source, g.source)
        and same_category(f.target, g.target)
        and f.object_map == g.object_map
        and f.morphism_map == g.morphism_map
    )


def validate_functor(fun: FunctorData) -> FunctorData:
    """Check functoriality exhaustively (typing, identities, composition)."""
    src, tgt = fun.source, fun.target
    bad: list[Violation] = []
    for a in sorted(src.objects):
        if fun.object_map.get(a) not in set(tgt.objects):
            bad.append(Violation("IllTypedImage", (a,), "object image missing/unknown"))
    for m in sorted(src.dom):
        fm = fun.morphism_map.get(m)
        if fm is None or not tgt.has_morphism(fm):
            bad.append(Violation("IllTypedImage", (m,), "morphism image missing/unknown"))
    if bad:
        raise InvalidStructure(bad)
    for m in sorted(src.dom):
        fm = fun.morphism_map[m]
        if (
            tgt.dom[fm] != fun.object_map[src.dom[m]]
            or tgt.cod[fm] != fun.object_map[src.cod[m]]
        ):
            bad.append(Violation("IllTypedImage", (m,), "endpoints not preserved"))
    if bad:
        raise InvalidStructure(bad)
    for a in sorted(src.objects):
        if fun.morphism_map[src.id_of(a)] != tgt.id_of(fun.object_map[a]):
            bad.append(Violation("BreaksIdentity", (a,)))
    for (g, f), gf in sorted(fun.source.composition.items()):
        if tgt.compose(fun.morphism_map[g], fun.morphism_map[f]) != fun.morphism_map[gf]:
            bad.append(Violation("BreaksComposition", (f, g)))
    if bad:
        raise InvalidStructure(bad)
    return fun


def identity_functor(cat: FinCat) -> FunctorData:
    return FunctorData(
        cat, cat, {a: a for a in cat.objects}, {m: m for m in cat.dom}, "1"
    )


def constant_functor(src: FinCat, tgt: FinCat, obj: str) -> FunctorData:
    i = tgt.id_of(obj)
    return FunctorData(
        src, tgt, {a: obj for a in src.objects}, {m: i for m in src.dom}
    )


def compose_functors(g: FunctorData, f: FunctorData) -> FunctorData:
    """g after f."""
    if not same_category(f.target, g.source):
        raise ShapeMismatch("functor composition: middle categories differ")
    return FunctorData(
        f.source,
        g.target,
        {a: g.object_map[fa] for a, fa in f.object_map.items()},
        {m: g.morphism_map[fm] for m, fm in f.morphism_map.items()},
    )


def opposite(cat: FinCat) -> FinCat:
    """Reverse all arrows; composition table transposes accordingly."""
    return FinCat(
        cat.objects,
        tuple((m, c, d) for m, d, c in cat.morphisms),
        dict(cat.identities),
        {(f, g): gf for (g, f), gf in cat.composition.items()},
        name=cat.name + ".op" if cat.name else "",
    )


# ---------------------------------------------------------------------------
# Natural transformations


@dataclass
class NatTransfData:
    source: FunctorData
    target: FunctorData
    components: dict[str, str]
    is_iso: bool | None = None


def validate_natural(t: NatTransfData) -> NatTransfData:
    """Check every naturality square; sets ``is_iso`` on success."""
    f, g = t.source, t.target
    if not (same_category(f.source, g.source) and same_category(f.target, g.target)):
        raise ShapeMismatch("transformation endpoints are not parallel functors")
    base, tgt = f.source, f.target
    bad: list[Violation] = []
    for a in sorted(base.objects):
        c = t.components.get(a)
        if (
            c is None
            or not tgt.has_morphism(c)
            or tgt.dom[c] != f.object_map[a]
            or tgt.cod[c] != g.object_map[a]
        ):
            bad.append(Violation("ComponentIllTyped", (a,)))
    if bad:
        raise InvalidStructure(bad)
    for m in sorted(base.dom):
        a, b = base.dom[m], base.cod[m]
        left = tgt.compose(g.morphism_map[m], t.components[a])
        right = tgt.compose(t.components[b], f.morphism_map[m])
        if left != right:
            bad.append(Violation("NaturalitySquareFails", (m,)))
    if bad:
        raise InvalidStructure(bad)
    t.is_iso = all(
        is_isomorphism(tgt, t.components[a])[0] for a in base.objects
    )
    return t


def identity_transf(fun: FunctorData) -> NatTransfData:
    comps = {a: fun.target.id_of(fun.object_map[a]) for a in fun.source.objects}
    return NatTransfData(fun, fun, comps, is_iso=True)


def vertical_compose(t2: NatTransfData, t1: NatTransfData) -> NatTransfData:
    """t2 after t1 (componentwise composition in the target category)."""
    if not functor_equal(t1.target, t2.source):
        raise ShapeMismatch("vertical composition: middle functors differ")
    tgt = t1.source.target
    comps = {
        a: tgt.compose(t2.components[a], t1.components[a])
        for a in t1.source.source.objects
    }
    return NatTransfData(t1.source, t2.target, comps)


def whisker(x, y) -> NatTransfData:
    """Whisker a transformation by a functor on either side.

    ``whisker(F, t)`` is F applied after t (components ``F(t_a)``), and
    ``whisker(t, F)`` is t restricted along F (components ``t_{F(a)}``).
    """
    if isinstance(x, FunctorData) and isinstance(y, NatTransfData):
        if not same_category(y.source.target, x.source):
            raise ShapeMismatch("whisker: functor does not start where t lands")
        comps = {a: x.morphism_map[c] for a, c in y.components.items()}
        return NatTransfData(
            compose_functors(x, y.source), compose_functors(x, y.target), comps
        )
    if isinstance(x, NatTransfData) and isinstance(y, FunctorData):
        if not same_category(y.target, x.source.source):
            raise ShapeMismatch("whisker: functor does not land where t starts")
        comps = {a: x.components[y.object_map[a]] for a in y.source.objects}
        return NatTransfData(
            compose_functors(x.source, y), compose_functors(x.target, y), comps
        )
    raise ShapeMismatch("whisker expects (FunctorData, NatTransfData) or vice versa")


def inverse_natural(t: NatTransfData) -> NatTransfData:
    """Componentwise inverse of a natural isomorphism."""
    tgt = t.source.target
    comps = {}
    for a, c in t.components.items():
        ok, inv = is_isomorphism(tgt, c)
        if not ok:
            raise InvalidStructure([Violation("ComponentIllTyped", (a,), "not invertible")])
        comps[a] = inv
    return NatTransfData(t.target, t.source, comps, is_iso=True)


# ---------------------------------------------------------------------------
# Flattened finite products


def _tuple_id(parts) -> str:
    return json.dumps(list(parts), separators=(",", ":"))


class _TupleComposition(Mapping):
    """Composition table of a flattened product, computed componentwise on
    demand instead of materializing the full cartesian table."""

    def __init__(self, tc: "TupleCat"):
        self._tc = tc

    def __getitem__(self, key):
        g, f = key
        tc = self._tc
        gp, fp = tc.mor_parts[g], tc.mor_parts[f]
        return _tuple_id(
            [c.composition[(a, b)] for c, a, b in zip(tc.factors, gp, fp)]
        )

    def __iter__(self):
        pairings = [list(c.composition) for c in self._tc.factors]
        for combo in itertools.product(*pairings):
            yield (
                _tuple_id([p[0] for p in combo]),
                _tuple_id([p[1] for p in combo]),
            )

    def __len__(self):
        n = 1
        for c in self._tc.factors:
            n *= len(c.composition)
        return n

    def __eq__(self, other):
        if isinstance(other, _TupleComposition) and other._tc is self._tc:
            return True
        if not isinstance(other, Mapping) or len(other) != len(self):
            return False
        return all(k in other and other[k] == self[k] for k in self)

    __hash__ = None  # type: ignore[assignment]


@dataclass
class TupleCat(FinCat):
    """A flattened finite product of plain categories.

    ``factors`` never contains a TupleCat: nested products are spliced at
    construction time, so ``product(product(A, B), C)`` and
    ``product(A, B, C)`` are identical cell for cell.
    """

    factors: tuple[FinCat, ...] = ()
    obj_parts: dict[str, tuple[str, ...]] = field(default_factory=dict, repr=False)
    mor_parts: dict[str, tuple[str, ...]] = field(default_factory=dict, repr=False)


def obj_components(cat: FinCat, obj: str) -> tuple[str, ...]:
    """The flattened component tuple of an object (length 1 for plain cats)."""
    if isinstance(cat, TupleCat):
        return cat.obj_parts[obj]
    return (obj,)


def mor_components(cat: FinCat, mor: str) -> tuple[str, ...]:
    if isinstance(cat, TupleCat):
        return cat.mor_parts[mor]
    return (mor,)


_PRODUCT_CACHE: dict[tuple[int, ...], "TupleCat"] = {}


def product(factors) -> FinCat:
    """Flattened finite product.  Empty product is the terminal category,
    unary product returns the factor itself.

    Results are memoized per factor identity, so repeated products of the
    same (immutable) categories share one instance and compare by identity.
    """
    flat: list[FinCat] = []
    for f in factors:
        if isinstance(f, TupleCat):
            flat.extend(f.factors)
        else:
            flat.append(f)
    if len(flat) == 1:
        return flat[0]
    cache_key = tuple(id(c) for c in flat)
    hit = _PRODUCT_CACHE.get(cache_key)
    if hit is not None:
        return hit

    objects = []
    obj_parts = {}
    for combo in itertools.product(*[c.objects for c in flat]):
        oid = _tuple_id(combo)
        objects.append(oid)
        obj_parts[oid] = combo
    morphisms = []
    mor_parts = {}
    for combo in itertools.product(*[[m[0] for m in c.morphisms] for c in flat]):
        mid = _tuple_id(combo)
        d = _tuple_id([c.dom[m] for c, m in zip(flat, combo)])
        cd = _tuple_id([c.cod[m] for c, m in zip(flat, combo)])
        morphisms.append((mid, d, cd))
        mor_parts[mid] = combo
    identities = {
        oid: _tuple_id([c.id_of(p) for c, p in zip(flat, parts)])
        for oid, parts in obj_parts.items()
    }
    built = TupleCat(
        objects=tuple(objects),
        morphisms=tuple(morphisms),
        identities=identities,
        composition={},
        name="*".join(c.name for c in flat) if all(c.name for c in flat) else "",
        factors=tuple(flat),
        obj_parts=obj_parts,
        mor_parts=mor_parts,
    )
    built.composition = _TupleComposition(built)  # type: ignore[assignment]
    # hold the factors alive so the id-keyed memo can never alias new objects
    built._cache_key_refs = tuple(flat)  # type: ignore[attr-defined]
    _PRODUCT_CACHE[cache_key] = built
    return built


def terminal_category() -> FinCat:
    return product([])


def proj(tc: FinCat, i: int) -> FunctorData:
    """Projection functor onto the i-th flattened factor."""
    if not isinstance(tc, TupleCat):
        if i == 0:
            return identity_functor(tc)
        raise ShapeMismatch("projection index out of range")
    fac = tc.factors[i]
    return FunctorData(
        tc,
        fac,
        {o: tc.obj_parts[o][i] for o in tc.objects},
        {m: tc.mor_parts[m][i] for m in tc.dom},
    )


def tuple_functor(components: list[FunctorData]) -> FunctorData:
    """Pair functors with a common source into their (flattened) product.

    The target is ``product([f.target for f in components])`` and images are
    concatenations of the component images.
    """
    if not components:
        raise ShapeMismatch("tuple_functor needs at least one component")
    src = components[0].source
    for f in components[1:]:
        if not same_category(f.source, src):
            raise ShapeMismatch("tuple_functor components must share their source")
    tgt = product([f.target for f in components])
    flat = not isinstance(tgt, TupleCat)
    object_map = {}
    for a in src.objects:
        parts: list[str] = []
        for f in components:
            parts.extend(obj_components(f.target, f.object_map[a]))
        object_map[a] = parts[0] if flat else _tuple_id(parts)
    morphism_map = {}
    for m in src.dom:
        parts = []
        for f in components:
            parts.extend(mor_components(f.target, f.morphism_map[m]))
        morphism_map[m] = parts[0] if flat else _tuple_id(parts)
    return FunctorData(src, tgt, object_map, morphism_map)


def pair_obj(tc: FinCat, *objs: str) -> str:
    """Object id of a tuple of component objects in a flattened product."""
    if not isinstance(tc, TupleCat):
        (only,) = objs
        return only
    if len(objs) != len(tc.factors):
        raise ShapeMismatch(f"expected {len(tc.factors)} components, got {len(objs)}")
    return _tuple_id(list(objs))


def pair_mor(tc: FinCat, *mors: str) -> str:
    if not isinstance(tc, TupleCat):
        (only,) = mors
        return only
    if len(mors) != len(tc.factors):
        raise ShapeMismatch(f"expected {len(tc.factors)} components, got {len(mors)}")
    return _tuple_id(list(mors))
