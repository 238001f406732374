"""Equivalences between finite categories.

``find_pseudo_inverse`` searches for a functor F with G.F and F.G both
naturally isomorphic to identities.  The search is a backtracking
enumeration in lexicographic order (object images first, then morphism
images, then unit/counit components), pruned by constraints that any
pseudo-inverse must satisfy: object images are confined to the right
isomorphism classes, hom-sets must stay nonempty, images of parallel
morphisms must stay distinct, and composition equations are propagated as
soon as all three participants are assigned.  Pruning only removes
candidates that cannot extend to a witness, so the first witness found is
the same one naive enumeration would produce.

The budget bounds the number of candidate assignments tried, which is the
honest cost measure for a pruned search; exceeding it raises
:class:`BudgetExceeded`, while exhausting the space returns ``None``
("not found", a definitive answer).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .fincat import (
    FinCat,
    FunctorData,
    NatTransfData,
    compose_functors,
    identity_functor,
    is_isomorphism,
    iso_classes,
    isomorphism_ids,
    validate_natural,
)

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"search budget of {limit} candidate assignments exceeded")


class PromotionFailed(RuntimeError):
    """Internal invariant breach: a valid witness could not be promoted."""


@dataclass
class EquivalenceWitness:
    """(F, G, unit, counit) with unit: 1 => G.F and counit: F.G => 1."""

    forward: FunctorData  # F: A -> B
    backward: FunctorData  # G: B -> A
    unit: NatTransfData
    counit: NatTransfData


class AdjointEquivalence(EquivalenceWitness):
    """An equivalence whose unit/counit satisfy both triangle identities."""


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(self.limit)


def _maybe_shuffle(items: list, rng: random.Random | None) -> list:
    if rng is not None:
        rng.shuffle(items)
    return items


def enumerate_functors(
    src: FinCat,
    tgt: FinCat,
    budget: _Budget,
    rng: random.Random | None = None,
    obj_candidates: dict[str, list[str]] | None = None,
    faithful: bool = False,
):
    """Yield functors src -> tgt in lexicographic order, with pruning.

    ``obj_candidates`` restricts object images; ``faithful`` additionally
    rejects functors identifying parallel morphisms (sound when searching
    for one leg of an equivalence, since such legs are always faithful).
    """
    objs = sorted(src.objects)
    mors = sorted(m for m in src.dom if m not in set(src.identities.values()))
    tgt_objs = sorted(tgt.objects)

    cand = {}
    for a in objs:
        base = list(obj_candidates[a]) if obj_candidates is not None else list(tgt_objs)
        cand[a] = _maybe_shuffle(sorted(base), rng)

    equations = [(g, f, gf) for (g, f), gf in sorted(src.composition.items())]
    eq_of: dict[str, list[int]] = {}
    for i, (g, f, gf) in enumerate(equations):
        for m in {g, f, gf}:
            eq_of.setdefault(m, []).append(i)
    eq_count = [0] * len(equations)

    omap: dict[str, str] = {}
    mmap: dict[str, str] = {}
    used_images: set[tuple[str, str, str]] = set()

    def assign_mor(mid: str, image: str) -> tuple[list[int], bool]:
        """Record an image; propagate any newly completed composition equation."""
        mmap[mid] = image
        touched = []
        consistent = True
        for i in eq_of.get(mid, ()):
            eq_count[i] += 1
            touched.append(i)
            if consistent and eq_count[i] == 3:
                g, f, gf = equations[i]
                if tgt.compose(mmap[g], mmap[f]) != mmap[gf]:
                    consistent = False
        return touched, consistent

    def retract_mor(mid: str, touched: list[int], faithful_key) -> None:
        for i in touched:
            eq_count[i] -= 1
        del mmap[mid]
        if faithful_key is not None:
            used_images.discard(faithful_key)

    def hom_shapes_ok(a: str, b: str, i: int) -> bool:
        for a2 in objs[: i + 1]:
            b2 = b if a2 == a else omap[a2]
            for (x, y, fx, fy) in ((a, a2, b, b2), (a2, a, b2, b)):
                n_src = len(src.hom(x, y))
                n_tgt = len(tgt.hom(fx, fy))
                if n_src > 0 and n_tgt == 0:
                    return False
                if faithful and n_src > n_tgt:
                    return False
        return True

    def try_objects(i: int):
        if i == len(objs):
            yield from try_morphisms(0)
            return
        a = objs[i]
        for b in cand[a]:
            budget.spend()
            if not hom_shapes_ok(a, b, i):
                continue
            omap[a] = b
            fkey = None
            if faithful:
                fkey = (a, a, tgt.id_of(b))
                used_images.add(fkey)
            touched, consistent = assign_mor(src.id_of(a), tgt.id_of(b))
            if consistent:
                yield from try_objects(i + 1)
            retract_mor(src.id_of(a), touched, fkey)
            del omap[a]

    def try_morphisms(j: int):
        if j == len(mors):
            yield FunctorData(src, tgt, dict(omap), dict(mmap))
            return
        mid = mors[j]
        a, b = src.dom[mid], src.cod[mid]
        # an equation with both factors assigned forces the composite; any
        # other candidate would fail at completion, so trying it is wasted
        forced = None
        for i in eq_of.get(mid, ()):
            if eq_count[i] == 2:
                g, f, gf = equations[i]
                if mid == gf and g in mmap and f in mmap:
                    val = tgt.compose(mmap[g], mmap[f])
                    if forced is not None and forced != val:
                        return
                    forced = val
        if forced is not None:
            images = [forced]
        else:
            # lexicographic always: shuffling here defeats forcing and blows
            # the budget; seeds act on object images and unit/counit choices
            images = list(tgt.hom(omap[a], omap[b]))
        for im in images:
            budget.spend()
            fkey = None
            if faithful:
                key = (a, b, im)
                if key in used_images:
                    continue
                used_images.add(key)
                fkey = key
            touched, consistent = assign_mor(mid, im)
            if consistent:
                yield from try_morphisms(j + 1)
            retract_mor(mid, touched, fkey)

    yield from try_objects(0)


def natural_isos(
    f: FunctorData,
    g: FunctorData,
    budget: _Budget,
    rng: random.Random | None = None,
):
    """Yield all natural isomorphisms f => g in lexicographic order."""
    base, tgt = f.source, f.target
    iso = isomorphism_ids(tgt)
    objs = sorted(base.objects)
    pos = {a: i for i, a in enumerate(objs)}
    by_last: dict[int, list[str]] = {i: [] for i in range(len(objs))}
    for m in base.morphism_ids():
        last = max(pos[base.dom[m]], pos[base.cod[m]])
        by_last[last].append(m)

    comp: dict[str, str] = {}

    def place(i: int):
        if i == len(objs):
            yield dict(comp)
            return
        a = objs[i]
        candidates = [
            m for m in tgt.hom(f.object_map[a], g.object_map[a]) if m in iso
        ]
        for c in _maybe_shuffle(candidates, rng):
            budget.spend()
            comp[a] = c
            if all(
                tgt.compose(g.morphism_map[m], comp[base.dom[m]])
                == tgt.compose(comp[base.cod[m]], f.morphism_map[m])
                for m in by_last[i]
            ):
                yield from place(i + 1)
            del comp[a]

    yield from place(0)


def _first_natural_iso(f, g, budget, rng=None) -> NatTransfData | None:
    for comp in natural_isos(f, g, budget, rng):
        return NatTransfData(f, g, comp, is_iso=True)
    return None


def find_pseudo_inverse(
    g_fun: FunctorData,
    budget: int = DEFAULT_BUDGET,
    seed: int | None = None,
) -> EquivalenceWitness | None:
    """Search for (F, unit, counit) exhibiting ``g_fun`` as an equivalence.

    Given G: B -> A, finds the lexicographically first F: A -> B together
    with natural isomorphisms 1_A => G.F and F.G => 1_B, or returns None
    when the exhaustive (pruned) search finishes empty-handed.
    """
    a_cat, b_cat = g_fun.target, g_fun.source
    bud = _Budget(budget)
    rng = random.Random(seed) if seed is not None else None

    cls_a = iso_classes(a_cat)
    cls_b = iso_classes(b_cat)
    # F(a) must satisfy G(F(a)) ~ a; and for any b with G(b) ~ a the counit
    # forces F(a) ~ F(G(b)) ~ b, so all such b must be isomorphic already.
    candidates: dict[str, list[str]] = {}
    for a in a_cat.objects:
        pool = [b for b in b_cat.objects if g_fun.object_map[b] in cls_a[a]]
        hits = {next(iter(sorted(cls_b[b]))) for b in pool}
        if len(hits) > 1:
            return None
        if hits:
            required = cls_b[pool[0]]
            cand = sorted(b for b in required if g_fun.object_map[b] in cls_a[a])
        else:
            cand = sorted(
                b for b in b_cat.objects if g_fun.object_map[b] in cls_a[a]
            )
        if not cand:
            return None
        candidates[a] = cand

    id_a = identity_functor(a_cat)
    id_b = identity_functor(b_cat)
    for f_fun in enumerate_functors(
        a_cat, b_cat, bud, rng, obj_candidates=candidates, faithful=True
    ):
        unit = _first_natural_iso(id_a, compose_functors(g_fun, f_fun), bud, rng)
        if unit is None:
            continue
        counit = _first_natural_iso(compose_functors(f_fun, g_fun), id_b, bud, rng)
        if counit is None:
            continue
        return EquivalenceWitness(f_fun, g_fun, unit, counit)
    return None


def find_equivalence(
    a_cat: FinCat,
    b_cat: FinCat,
    budget: int = DEFAULT_BUDGET,
    seed: int | None = None,
) -> EquivalenceWitness | None:
    """Search for any equivalence between two categories.

    Enumerates functors G: B -> A and completes each to a witness when
    possible; the budget is shared across the whole search.
    """
    bud = _Budget(budget)
    rng = random.Random(seed) if seed is not None else None
    for g_fun in enumerate_functors(b_cat, a_cat, bud, rng, faithful=True):
        w = _attempt_completion(g_fun, bud, rng)
        if w is not None:
            return w
    return None


def _attempt_completion(g_fun, bud, rng) -> EquivalenceWitness | None:
    a_cat, b_cat = g_fun.target, g_fun.source
    cls_a = iso_classes(a_cat)
    candidates = {
        a: sorted(b for b in b_cat.objects if g_fun.object_map[b] in cls_a[a])
        for a in a_cat.objects
    }
    if any(not c for c in candidates.values()):
        return None
    id_a = identity_functor(a_cat)
    id_b = identity_functor(b_cat)
    for f_fun in enumerate_functors(
        a_cat, b_cat, bud, rng, obj_candidates=candidates, faithful=True
    ):
        unit = _first_natural_iso(id_a, compose_functors(g_fun, f_fun), bud, rng)
        if unit is None:
            continue
        counit = _first_natural_iso(compose_functors(f_fun, g_fun), id_b, bud, rng)
        if counit is None:
            continue
        return EquivalenceWitness(f_fun, g_fun, unit, counit)
    return None


def check_triangle_identities(w: EquivalenceWitness) -> tuple[bool, list[str]]:
    """Evaluate both identities at every object; returns all failures."""
    f, g = w.forward, w.backward
    a_cat, b_cat = f.source, f.target
    failures = []
    for a in sorted(a_cat.objects):
        fa = f.object_map[a]
        lhs = b_cat.compose(w.counit.components[fa], f.morphism_map[w.unit.components[a]])
        if lhs != b_cat.id_of(fa):
            failures.append(f"counit.F o F.unit at {a}: {lhs}")
    for b in sorted(b_cat.objects):
        gb = g.object_map[b]
        lhs = a_cat.compose(g.morphism_map[w.counit.components[b]], w.unit.components[gb])
        if lhs != a_cat.id_of(gb):
            failures.append(f"G.counit o unit.G at {b}: {lhs}")
    return (not failures, failures)


def promote_to_adjoint(
    w: EquivalenceWitness, budget: int = DEFAULT_BUDGET
) -> AdjointEquivalence:
    """Fix the counit so both triangle identities hold; the unit is kept.

    The replacement counit at b is the unique u: FG(b) -> b whose image
    under G is the inverse of the unit at G(b) (G is full and faithful for
    a valid witness, so u exists and is unique).  The result is re-verified;
    if the direct construction fails, an exhaustive search over natural
    isomorphisms F.G => 1 runs as a fallback before giving up.
    """
    ok, _ = check_triangle_identities(w)
    if ok:
        if isinstance(w, AdjointEquivalence):
            return w
        return AdjointEquivalence(w.forward, w.backward, w.unit, w.counit)

    f, g = w.forward, w.backward
    a_cat, b_cat = f.source, f.target
    comps = {}
    for b in sorted(b_cat.objects):
        gb = g.object_map[b]
        inv_ok, eta_inv = is_isomorphism(a_cat, w.unit.components[gb])
        if not inv_ok:
            raise PromotionFailed(f"unit component at {gb} is not invertible")
        fgb = f.object_map[gb]
        pick = None
        for u in b_cat.hom(fgb, b):
            if g.morphism_map[u] == eta_inv:
                pick = u
                break
        if pick is None:
            comps = None
            break
        comps[b] = pick

    if comps is not None:
        candidate = NatTransfData(compose_functors(f, g), identity_functor(b_cat), comps)
        try:
            validate_natural(candidate)
        except Exception:
            candidate = None
        if candidate is not None and candidate.is_iso:
            fixed = EquivalenceWitness(f, g, w.unit, candidate)
            ok, _ = check_triangle_identities(fixed)
            if ok:
                return AdjointEquivalence(f, g, w.unit, candidate)

    bud = _Budget(budget)
    for comp in natural_isos(compose_functors(f, g), identity_functor(b_cat), bud):
        candidate = NatTransfData(
            compose_functors(f, g), identity_functor(b_cat), comp, is_iso=True
        )
        fixed = EquivalenceWitness(f, g, w.unit, candidate)
        ok, _ = check_triangle_identities(fixed)
        if ok:
            return AdjointEquivalence(f, g, w.unit, candidate)
    raise PromotionFailed("no compatible counit exists for this witness")
