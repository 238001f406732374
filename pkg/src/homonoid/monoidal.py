"""Monoidal structures on finite categories, equivalence classes of
morphisms, colax monoidal functor data, and the coherence checkers.

A monoidal structure is stored as raw tensor tables (object pairs and
morphism pairs) over a validated base category, together with component
dictionaries for the associator and unitors; ``None`` for those fields
means the structure is strict and the components are identities.  Tables
may be partial ("truncated"), in which case every law is quantified over
the pairs/triples on which the tensor is defined -- this is how the
truncated ordinal category acts as the source of a colax functor.

Coherence failures are never exceptions: the pentagon/triangle/axiom
checkers return reports listing every failing instance with both composite
morphism ids.  Exceptions are reserved for ill-typed input.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .fincat import (
    FinCat,
    FunctorData,
    InvalidStructure,
    UnknownMorphism,
    Violation,
    isomorphism_ids,
    validate_functor,
)
from .report import Report
from .simplex import delta_fincat, delta_tensor_tables


@dataclass
class MonoidalStructure:
    """Tensor tables + unit + (associator, unitors) over a finite base.

    ``associator[(a, b, c)]`` is a morphism (a@b)@c -> a@(b@c); the unitor
    components are ``left_unitor[a]: I@a -> a`` and
    ``right_unitor[a]: a@I -> a``.
    """

    base: FinCat
    tensor_obj_table: dict[tuple[str, str], str]
    tensor_mor_table: dict[tuple[str, str], str]
    unit: str
    associator: dict[tuple[str, str, str], str] | None = None
    left_unitor: dict[str, str] | None = None
    right_unitor: dict[str, str] | None = None
    partial: bool = False
    name: str = ""
    equivalences: "EquivalenceClass | None" = field(default=None, repr=False)

    def tensor_obj(self, a: str, b: str) -> str | None:
        return self.tensor_obj_table.get((a, b))

    def tensor_mor(self, f: str, g: str) -> str | None:
        return self.tensor_mor_table.get((f, g))

    def assoc_component(self, a: str, b: str, c: str) -> str:
        if self.associator is not None:
            return self.associator[(a, b, c)]
        ab = self.tensor_obj(a, b)
        abc = self.tensor_obj(ab, c)
        return self.base.id_of(abc)

    def left_unit_component(self, a: str) -> str:
        if self.left_unitor is not None:
            return self.left_unitor[a]
        return self.base.id_of(a)

    def right_unit_component(self, a: str) -> str:
        if self.right_unitor is not None:
            return self.right_unitor[a]
        return self.base.id_of(a)

    @property
    def is_strict(self) -> bool:
        return (
            self.associator is None
            and self.left_unitor is None
            and self.right_unitor is None
        )


def strict_monoidal(
    base: FinCat,
    tensor_obj_table: dict,
    tensor_mor_table: dict,
    unit: str,
    partial: bool = False,
    name: str = "",
) -> MonoidalStructure:
    return MonoidalStructure(
        base, dict(tensor_obj_table), dict(tensor_mor_table), unit,
        partial=partial, name=name,
    )


def delta_monoidal(N: int) -> MonoidalStructure:
    """The truncated ordinal category as a strict, partial monoidal structure."""
    obj_t, mor_t = delta_tensor_tables(N)
    return strict_monoidal(
        delta_fincat(N), obj_t, mor_t, unit="0", partial=True, name=f"Delta<={N}"
    )


def tensor_functor(m: MonoidalStructure) -> FunctorData:
    """The tensor as an explicit functor out of the flattened square.

    Materializes product(base, base); only sensible for small bases.
    """
    from .fincat import pair_mor, pair_obj, product

    if m.partial:
        raise InvalidStructure(
            [Violation("IllTypedComposite", (m.name or "tensor",), "partial tensor")]
        )
    sq = product([m.base, m.base])
    omap = {
        pair_obj(sq, a, b): m.tensor_obj_table[(a, b)]
        for a in m.base.objects
        for b in m.base.objects
    }
    mmap = {
        pair_mor(sq, f, g): m.tensor_mor_table[(f, g)]
        for f in m.base.dom
        for g in m.base.dom
    }
    return FunctorData(sq, m.base, omap, mmap)


def validate_monoidal(m: MonoidalStructure) -> MonoidalStructure:
    """Exhaustively check the structure (not pentagon/triangle, which are
    separate report-producing checks).

    Confirms tensor totality (unless partial), functoriality of the tensor
    tables including interchange, and that the associator/unitor components
    are well-typed natural isomorphisms.  Interchange is quadratic in the
    number of composable pairs of the base.
    """
    base = m.base
    bad: list[Violation] = []
    if m.unit not in set(base.objects):
        bad.append(Violation("IllTypedComposite", (m.unit,), "unit not an object"))
        raise InvalidStructure(bad)

    objs = sorted(base.objects)
    for a, b in itertools.product(objs, objs):
        ab = m.tensor_obj(a, b)
        if ab is None:
            if not m.partial:
                bad.append(Violation("IllTypedComposite", (a, b), "tensor undefined"))
            continue
        if ab not in set(base.objects):
            bad.append(Violation("IllTypedComposite", (a, b), "tensor not an object"))
    if bad:
        raise InvalidStructure(bad)

    mors = base.morphism_ids()
    for f, g in itertools.product(mors, mors):
        fg = m.tensor_mor(f, g)
        dd = m.tensor_obj(base.dom[f], base.dom[g])
        cc = m.tensor_obj(base.cod[f], base.cod[g])
        if dd is None or cc is None:
            if fg is not None and (dd is None or cc is None):
                bad.append(Violation("IllTypedComposite", (f, g), "image outside table"))
            continue
        if fg is None:
            if not m.partial:
                bad.append(Violation("IllTypedComposite", (f, g), "tensor undefined"))
            continue
        if base.dom[fg] != dd or base.cod[fg] != cc:
            bad.append(Violation("IllTypedComposite", (f, g), "tensor ill-typed"))
    if bad:
        raise InvalidStructure(bad)

    for a, b in itertools.product(objs, objs):
        if m.tensor_obj(a, b) is None:
            continue
        if m.tensor_mor(base.id_of(a), base.id_of(b)) != base.id_of(m.tensor_obj(a, b)):
            bad.append(Violation("BreaksIdentity", (a, b)))
    comp = sorted(base.composition.items())
    for ((f2, f1), f21), ((g2, g1), g21) in itertools.product(comp, comp):
        lhs = m.tensor_mor(f21, g21)
        if lhs is None:
            continue
        t2 = m.tensor_mor(f2, g2)
        t1 = m.tensor_mor(f1, g1)
        if t2 is None or t1 is None:
            if not m.partial:
                bad.append(Violation("BreaksComposition", (f1, g1, f2, g2), "interchange"))
            continue
        if base.compose(t2, t1) != lhs:
            bad.append(Violation("BreaksComposition", (f1, g1, f2, g2), "interchange"))
    if bad:
        raise InvalidStructure(bad)

    _validate_coherence_components(m, bad)
    if bad:
        raise InvalidStructure(bad)
    return m


def _validate_coherence_components(m: MonoidalStructure, bad: list[Violation]) -> None:
    base = m.base
    objs = sorted(base.objects)
    iso = isomorphism_ids(base)

    if m.associator is None:
        for a, b, c in itertools.product(objs, repeat=3):
            ab, bc = m.tensor_obj(a, b), m.tensor_obj(b, c)
            if ab is None or bc is None:
                continue
            left, right = m.tensor_obj(ab, c), m.tensor_obj(a, bc)
            if left is not None and right is not None and left != right:
                bad.append(Violation("ComponentIllTyped", (a, b, c), "not strict"))
    else:
        for a, b, c in itertools.product(objs, repeat=3):
            ab, bc = m.tensor_obj(a, b), m.tensor_obj(b, c)
            if ab is None or bc is None:
                continue
            comp = m.associator.get((a, b, c))
            if (
                comp is None
                or not base.has_morphism(comp)
                or base.dom[comp] != m.tensor_obj(ab, c)
                or base.cod[comp] != m.tensor_obj(a, bc)
            ):
                bad.append(Violation("ComponentIllTyped", (a, b, c), "associator"))
            elif comp not in iso:
                bad.append(Violation("ComponentIllTyped", (a, b, c), "not iso"))
        if bad:
            return
        mors = base.morphism_ids()
        for f, g, h in itertools.product(mors, repeat=3):
            fg = m.tensor_mor(f, g)
            gh = m.tensor_mor(g, h)
            if fg is None or gh is None:
                continue
            lhs_m = m.tensor_mor(fg, h)
            rhs_m = m.tensor_mor(f, gh)
            if lhs_m is None or rhs_m is None:
                continue
            src = m.assoc_component(base.dom[f], base.dom[g], base.dom[h])
            tgt = m.assoc_component(base.cod[f], base.cod[g], base.cod[h])
            if base.compose(tgt, lhs_m) != base.compose(rhs_m, src):
                bad.append(Violation("NaturalitySquareFails", (f, g, h), "associator"))

    for table, side in ((m.left_unitor, "left"), (m.right_unitor, "right")):
        if table is None:
            for a in objs:
                pair = (m.unit, a) if side == "left" else (a, m.unit)
                ta = m.tensor_obj(*pair)
                if ta is not None and ta != a:
                    bad.append(Violation("ComponentIllTyped", (a,), f"{side} not strict"))
            continue
        for a in objs:
            pair = (m.unit, a) if side == "left" else (a, m.unit)
            ta = m.tensor_obj(*pair)
            if ta is None:
                continue
            comp = table.get(a)
            if (
                comp is None
                or not base.has_morphism(comp)
                or base.dom[comp] != ta
                or base.cod[comp] != a
            ):
                bad.append(Violation("ComponentIllTyped", (a,), f"{side} unitor"))
            elif comp not in iso:
                bad.append(Violation("ComponentIllTyped", (a,), f"{side} not iso"))
        if bad:
            continue
        for f in base.morphism_ids():
            a, b = base.dom[f], base.cod[f]
            i = base.id_of(m.unit)
            tf = m.tensor_mor(i, f) if side == "left" else m.tensor_mor(f, i)
            if tf is None:
                continue
            if base.compose(table[b], tf) != base.compose(f, table[a]):
                bad.append(Violation("NaturalitySquareFails", (f,), f"{side} unitor"))


def check_pentagon(m: MonoidalStructure) -> Report:
    """The five-edge associativity coherence over every object quadruple."""
    base = m.base
    rep = Report()
    bad = []
    for a, b, c, d in itertools.product(sorted(base.objects), repeat=4):
        ab = m.tensor_obj(a, b)
        cd = m.tensor_obj(c, d)
        bc = m.tensor_obj(b, c)
        if ab is None or cd is None or bc is None:
            continue
        if (
            m.tensor_obj(ab, c) is None
            or m.tensor_obj(m.tensor_obj(ab, c), d) is None
        ):
            continue
        top = base.compose(
            m.assoc_component(a, b, cd), m.assoc_component(ab, c, d)
        )
        bottom = base.compose(
            m.tensor_mor(base.id_of(a), m.assoc_component(b, c, d)),
            base.compose(
                m.assoc_component(a, bc, d),
                m.tensor_mor(m.assoc_component(a, b, c), base.id_of(d)),
            ),
        )
        if top != bottom:
            bad.append(f"({a},{b},{c},{d}): {top} != {bottom}")
    rep.add("pentagon", bad)
    return rep


def check_triangle(m: MonoidalStructure) -> Report:
    """Unit coherence (A@I)@B -> A@(I@B) -> A@B against rho_A @ 1_B."""
    base = m.base
    rep = Report()
    bad = []
    for a, b in itertools.product(sorted(base.objects), repeat=2):
        ai = m.tensor_obj(a, m.unit)
        ib = m.tensor_obj(m.unit, b)
        if ai is None or ib is None or m.tensor_obj(ai, b) is None:
            continue
        via_assoc = base.compose(
            m.tensor_mor(base.id_of(a), m.left_unit_component(b)),
            m.assoc_component(a, m.unit, b),
        )
        direct = m.tensor_mor(m.right_unit_component(a), base.id_of(b))
        if via_assoc != direct:
            bad.append(f"({a},{b}): {via_assoc} != {direct}")
    rep.add("triangle", bad)
    return rep


# ---------------------------------------------------------------------------
# Equivalence classes of morphisms


@dataclass
class EquivalenceClass:
    """A distinguished set of morphisms of a monoidal base."""

    over: MonoidalStructure
    members: frozenset[str]

    def __contains__(self, mid: str) -> bool:
        return mid in self.members


def iso_equivalences(m: MonoidalStructure) -> EquivalenceClass:
    """The smallest legal class: exactly the isomorphisms."""
    return EquivalenceClass(m, frozenset(isomorphism_ids(m.base)))


def all_equivalences(m: MonoidalStructure) -> EquivalenceClass:
    return EquivalenceClass(m, frozenset(m.base.dom))


def validate_equivalence_class(e: EquivalenceClass) -> Report:
    """Check the three closure axioms, reporting violations per axiom."""
    base = e.over.base
    for mid in sorted(e.members):
        if not base.has_morphism(mid):
            raise UnknownMorphism(f"unknown member morphism {mid!r}")
    rep = Report()

    bad = [f for f in sorted(isomorphism_ids(base)) if f not in e.members]
    rep.add("contains-isomorphisms", bad)

    bad = []
    for (g, f), h in sorted(base.composition.items()):
        members = (f in e.members) + (g in e.members) + (h in e.members)
        if members == 2:
            bad.append(f"({f},{g},{h})")
    rep.add("two-out-of-three", bad)

    bad = []
    for f in sorted(e.members):
        for g in sorted(e.members):
            fg = e.over.tensor_mor(f, g)
            if fg is not None and fg not in e.members:
                bad.append(f"({f},{g})->{fg}")
    rep.add("tensor-closure", bad)
    return rep


# ---------------------------------------------------------------------------
# Colax monoidal functor data


@dataclass
class ColaxData:
    """A functor between monoidal bases plus comparison maps.

    ``comparisons[(A, B)]`` is a morphism X(A@B) -> X(A)@X(B) in the target
    base, and ``unit_comparison`` is X(I) -> I.  Sources with a partial
    tensor contribute axioms only where the tensor is defined.
    """

    source: MonoidalStructure
    target: MonoidalStructure
    functor: FunctorData
    comparisons: dict[tuple[str, str], str]
    unit_comparison: str


def _defined_pairs(m: MonoidalStructure):
    for a in sorted(m.base.objects):
        for b in sorted(m.base.objects):
            if m.tensor_obj(a, b) is not None:
                yield a, b


def validate_colax(d: ColaxData) -> Report:
    """Naturality, associativity coherence and both unit coherences.

    Ill-typed comparison components are a precondition failure and raise;
    axiom failures are report content.
    """
    src, tgt, x = d.source, d.target, d.functor
    validate_functor(x)
    base_s, base_t = src.base, tgt.base
    bad: list[Violation] = []
    for a, b in _defined_pairs(src):
        comp = d.comparisons.get((a, b))
        expected_dom = x.object_map[src.tensor_obj(a, b)]
        expected_cod = tgt.tensor_obj(x.object_map[a], x.object_map[b])
        if expected_cod is None:
            bad.append(Violation("IllTypedComponent", (a, b), "target tensor undefined"))
        elif (
            comp is None
            or not base_t.has_morphism(comp)
            or base_t.dom[comp] != expected_dom
            or base_t.cod[comp] != expected_cod
        ):
            bad.append(Violation("IllTypedComponent", (a, b)))
    uc = d.unit_comparison
    if (
        not base_t.has_morphism(uc)
        or base_t.dom[uc] != x.object_map[src.unit]
        or base_t.cod[uc] != tgt.unit
    ):
        bad.append(Violation("IllTypedComponent", ("unit",)))
    if bad:
        raise InvalidStructure(bad)

    rep = Report()
    fails = []
    mors = base_s.morphism_ids()
    for f in mors:
        for g in mors:
            fg = src.tensor_mor(f, g)
            if fg is None:
                continue
            a, b = base_s.dom[f], base_s.dom[g]
            a2, b2 = base_s.cod[f], base_s.cod[g]
            lhs = base_t.compose(
                tgt.tensor_mor(x.morphism_map[f], x.morphism_map[g]),
                d.comparisons[(a, b)],
            )
            rhs = base_t.compose(d.comparisons[(a2, b2)], x.morphism_map[fg])
            if lhs != rhs:
                fails.append(f"({f},{g}): {lhs} != {rhs}")
    rep.add("comparison-naturality", fails)

    fails = []
    for a, b, c in itertools.product(sorted(base_s.objects), repeat=3):
        ab, bc = src.tensor_obj(a, b), src.tensor_obj(b, c)
        if ab is None or bc is None:
            continue
        abc = src.tensor_obj(ab, c)
        if abc is None or src.tensor_obj(a, bc) is None:
            continue
        xa, xb, xc = (x.object_map[o] for o in (a, b, c))
        left = base_t.compose(
            tgt.assoc_component(xa, xb, xc),
            base_t.compose(
                tgt.tensor_mor(d.comparisons[(a, b)], base_t.id_of(xc)),
                d.comparisons[(ab, c)],
            ),
        )
        # a non-strict source contributes its own associator before splitting
        right = base_t.compose(
            tgt.tensor_mor(base_t.id_of(xa), d.comparisons[(b, c)]),
            base_t.compose(
                d.comparisons[(a, bc)],
                x.morphism_map[src.assoc_component(a, b, c)],
            ),
        )
        if left != right:
            fails.append(f"({a},{b},{c}): {left} != {right}")
    rep.add("comparison-associativity", fails)

    fails_r, fails_l = [], []
    for a in sorted(base_s.objects):
        xa = x.object_map[a]
        if src.tensor_obj(a, src.unit) is not None:
            path = base_t.compose(
                tgt.right_unit_component(xa),
                base_t.compose(
                    tgt.tensor_mor(base_t.id_of(xa), uc),
                    d.comparisons[(a, src.unit)],
                ),
            )
            if path != x.morphism_map[src.right_unit_component(a)]:
                fails_r.append(f"{a}: {path}")
        if src.tensor_obj(src.unit, a) is not None:
            path = base_t.compose(
                tgt.left_unit_component(xa),
                base_t.compose(
                    tgt.tensor_mor(uc, base_t.id_of(xa)),
                    d.comparisons[(src.unit, a)],
                ),
            )
            if path != x.morphism_map[src.left_unit_component(a)]:
                fails_l.append(f"{a}: {path}")
    rep.add("comparison-unit-right", fails_r)
    rep.add("comparison-unit-left", fails_l)
    return rep


def is_strong(d: ColaxData) -> bool:
    """True when the unit comparison and every binary comparison invert."""
    from .fincat import is_isomorphism

    base_t = d.target.base
    if not is_isomorphism(base_t, d.unit_comparison)[0]:
        return False
    return all(
        is_isomorphism(base_t, c)[0]
        for (a, b), c in d.comparisons.items()
        if d.source.tensor_obj(a, b) is not None
    )
