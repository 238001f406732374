"""Homotopy monoids over the truncated ordinal category, their collapse to
ordinary monoids when every comparison inverts, and the construction of a
monoidal category from a category-valued homotopy monoid.

Two flavours live here.  The morphism-level flavour
(:class:`MHomotopyMonoid`) is a colax functor from the truncated ordinal
category into a finite monoidal category whose comparison components lie
in a declared equivalence class; packaging a finite monoid with identity
comparisons and extracting it back are exact inverse operations.  The
category-valued flavour (:class:`CatHomotopyMonoid`) carries a finite
category per level, a functor per ordinal map and comparison *functors*
onto flattened products; ``build_monoidal_category`` runs the pipeline
pseudo-inverses -> adjoint promotion -> tensor -> associator/unitors ->
full coherence verification, and refuses to hand back an unverified
structure.

The associator is assembled by a fixed mate-pasting route through level 3:
the strict comparison coherences are rewritten along the chosen unit/counit
isomorphisms, so every step is a whiskered component and the result is
computable and re-verifiable by the generic checkers.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .equivalences import (
    DEFAULT_BUDGET,
    _Budget,
    enumerate_functors,
    find_pseudo_inverse,
    promote_to_adjoint,
)
from .fincat import (
    FinCat,
    FunctorData,
    InvalidStructure,
    Violation,
    compose_functors,
    functor_equal,
    identity_functor,
    is_isomorphism,
    mor_components,
    obj_components,
    pair_mor,
    pair_obj,
    product,
    proj,
    terminal_category,
    tuple_functor,
    validate_functor,
)
from .monoidal import (
    ColaxData,
    MonoidalStructure,
    check_pentagon,
    check_triangle,
    delta_monoidal,
    iso_equivalences,
    strict_monoidal,
    validate_colax,
    validate_monoidal,
)
from .report import Report
from .simplex import (
    DeltaTruncation,
    SimplexMorphism,
    compose as compose_simplex,
    identity,
    ordinal_sum,
)


class NotStrong(ValueError):
    """Extraction requires every comparison component to be invertible."""


class ConstructionInvariantBreach(RuntimeError):
    """The constructed structure failed its own verification; carries the report."""

    def __init__(self, report: Report):
        self.report = report
        super().__init__("constructed monoidal category failed verification: "
                         + "; ".join(e.name for e in report.failures()))


# ---------------------------------------------------------------------------
# Finite monoids


@dataclass
class FiniteMonoid:
    elements: tuple[str, ...]
    unit: str
    table: dict[tuple[str, str], str]

    def mul(self, x: str, y: str) -> str:
        return self.table[(x, y)]

    def product_of(self, xs) -> str:
        out = self.unit
        for x in xs:
            out = self.mul(out, x)
        return out


def validate_monoid(m: FiniteMonoid) -> FiniteMonoid:
    bad = []
    for x in m.elements:
        if m.mul(m.unit, x) != x or m.mul(x, m.unit) != x:
            bad.append(Violation("MissingIdentity", (x,)))
    for x, y, z in itertools.product(m.elements, repeat=3):
        if m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)):
            bad.append(Violation("NonAssociative", (x, y, z)))
    if bad:
        raise InvalidStructure(bad)
    return m


def is_commutative(m: FiniteMonoid) -> bool:
    return all(
        m.mul(x, y) == m.mul(y, x) for x in m.elements for y in m.elements
    )


def cyclic_monoid(n: int) -> FiniteMonoid:
    els = tuple(str(i) for i in range(n))
    table = {(str(i), str(j)): str((i + j) % n) for i in range(n) for j in range(n)}
    return FiniteMonoid(els, "0", table)


def enumerate_monoids(size: int) -> list[FiniteMonoid]:
    """All monoid tables on {x0..x(size-1)} with unit x0, by backtracking.

    Associativity is checked as soon as every product in a triple is
    known, which prunes the fill-in enough to stay instant for size <= 4.
    """
    els = tuple(f"x{i}" for i in range(size))
    unit = els[0]
    cells = [(a, b) for a in els[1:] for b in els[1:]]
    table: dict[tuple[str, str], str] = {}
    for a in els:
        table[(unit, a)] = a
        table[(a, unit)] = a

    found: list[FiniteMonoid] = []

    def consistent_after(cell) -> bool:
        for x, y, z in itertools.product(els, repeat=3):
            xy = table.get((x, y))
            yz = table.get((y, z))
            if xy is None or yz is None:
                continue
            left = table.get((xy, z))
            right = table.get((x, yz))
            if left is not None and right is not None and left != right:
                return False
        return True

    def fill(i: int) -> None:
        if i == len(cells):
            found.append(FiniteMonoid(els, unit, dict(table)))
            return
        cell = cells[i]
        for value in els:
            table[cell] = value
            if consistent_after(cell):
                fill(i + 1)
            del table[cell]

    fill(0)
    return found


# ---------------------------------------------------------------------------
# The function ambient: ordinals realized as powers of a monoid


def _induced_function(m: FiniteMonoid, f: SimplexMorphism):
    """The function M^dom -> M^cod given by multiplying over fibers."""
    inputs = list(itertools.product(m.elements, repeat=f.dom))
    fibers = [[i for i in range(1, f.dom + 1) if f(i) == j] for j in range(1, f.cod + 1)]
    outputs = []
    for xs in inputs:
        outputs.append(tuple(m.product_of(xs[i - 1] for i in fib) for fib in fibers))
    return tuple(outputs)


def _function_id(m: FiniteMonoid, dom: int, cod: int, outputs) -> str:
    index = {e: i for i, e in enumerate(m.elements)}
    body = ",".join("".join(str(index[e]) for e in out) for out in outputs)
    return f"{dom}>{cod}|{body}"


def monoid_ambient(m: FiniteMonoid, levels: int = 3) -> MonoidalStructure:
    """A strict monoidal category of monoid powers and induced functions.

    Objects are the formal powers 0..levels; the morphisms m -> n are the
    distinct functions M^m -> M^n realized by ordinal maps, composed as
    functions, with ordinal sum (juxtaposition) as the tensor.  Equality of
    morphisms is equality of function tables, so packaging and extraction
    round-trip exactly.
    """
    validate_monoid(m)
    tr = DeltaTruncation(levels)
    fn_of: dict[str, dict] = {}
    mor_for_simplex: dict[str, str] = {}
    for f in tr.all_morphisms():
        outs = _induced_function(m, f)
        mid = _function_id(m, f.dom, f.cod, outs)
        mor_for_simplex[f.id] = mid
        if mid not in fn_of:
            fn_of[mid] = {"dom": f.dom, "cod": f.cod, "outputs": outs}

    objects = tuple(str(n) for n in range(levels + 1))
    morphisms = tuple(
        (mid, str(info["dom"]), str(info["cod"])) for mid, info in sorted(fn_of.items())
    )
    identities = {str(n): mor_for_simplex[identity(n).id] for n in range(levels + 1)}

    def compose_fn(g: str, f: str) -> str:
        gi, fi = fn_of[g], fn_of[f]
        inputs = list(itertools.product(m.elements, repeat=fi["dom"]))
        mid_index = {
            xs: i
            for i, xs in enumerate(itertools.product(m.elements, repeat=gi["dom"]))
        }
        outs = tuple(gi["outputs"][mid_index[fi["outputs"][k]]] for k in range(len(inputs)))
        return _function_id(m, fi["dom"], gi["cod"], outs)

    composition = {}
    for g, ginfo in fn_of.items():
        for f, finfo in fn_of.items():
            if finfo["cod"] == ginfo["dom"]:
                composition[(g, f)] = compose_fn(g, f)

    base = FinCat(objects, morphisms, identities, composition, name=f"powers-of-{len(m.elements)}")

    obj_t = {
        (str(a), str(b)): str(a + b)
        for a in range(levels + 1)
        for b in range(levels + 1)
        if a + b <= levels
    }
    mor_t = {}
    for f, fi in fn_of.items():
        for g, gi in fn_of.items():
            if fi["dom"] + gi["dom"] > levels or fi["cod"] + gi["cod"] > levels:
                continue
            inputs = list(itertools.product(m.elements, repeat=fi["dom"] + gi["dom"]))
            outs = []
            f_index = {
                xs: i for i, xs in enumerate(itertools.product(m.elements, repeat=fi["dom"]))
            }
            g_index = {
                xs: i for i, xs in enumerate(itertools.product(m.elements, repeat=gi["dom"]))
            }
            for xs in inputs:
                left = fi["outputs"][f_index[xs[: fi["dom"]]]]
                right = gi["outputs"][g_index[xs[fi["dom"] :]]]
                outs.append(left + right)
            mor_t[(f, g)] = _function_id(
                m, fi["dom"] + gi["dom"], fi["cod"] + gi["cod"], tuple(outs)
            )
    amb = strict_monoidal(base, obj_t, mor_t, "0", partial=True,
                          name=f"powers({','.join(m.elements)})")
    amb.equivalences = iso_equivalences(amb)
    amb._simplex_realization = dict(mor_for_simplex)  # type: ignore[attr-defined]
    return amb


# ---------------------------------------------------------------------------
# Monoid objects in a monoidal base


@dataclass
class MonoidData:
    ambient: MonoidalStructure
    carrier: str
    multiplication: str  # carrier @ carrier -> carrier
    unit_morphism: str  # I -> carrier


def validate_monoid_data(d: MonoidData) -> MonoidData:
    amb, base = d.ambient, d.ambient.base
    c, mu, e = d.carrier, d.multiplication, d.unit_morphism
    cc = amb.tensor_obj(c, c)
    bad = []
    if base.dom.get(mu) != cc or base.cod.get(mu) != c:
        bad.append(Violation("ComponentIllTyped", (mu,), "multiplication"))
    if base.dom.get(e) != amb.unit or base.cod.get(e) != c:
        bad.append(Violation("ComponentIllTyped", (e,), "unit morphism"))
    if bad:
        raise InvalidStructure(bad)
    idc = base.id_of(c)
    left = base.compose(mu, amb.tensor_mor(mu, idc))
    right = base.compose(
        mu, base.compose(amb.tensor_mor(idc, mu), amb.assoc_component(c, c, c))
    )
    if left != right:
        bad.append(Violation("NonAssociative", (mu,)))
    if base.compose(mu, amb.tensor_mor(e, idc)) != amb.left_unit_component(c):
        bad.append(Violation("MissingIdentity", (e,), "left unit law"))
    if base.compose(mu, amb.tensor_mor(idc, e)) != amb.right_unit_component(c):
        bad.append(Violation("MissingIdentity", (e,), "right unit law"))
    if bad:
        raise InvalidStructure(bad)
    return d


def monoid_object(m: FiniteMonoid, levels: int = 3) -> MonoidData:
    """The canonical monoid object on the first power in the function ambient."""
    if levels < 3:
        raise ValueError("the ambient needs the third power to state associativity")
    amb = monoid_ambient(m, levels)
    real = amb._simplex_realization  # type: ignore[attr-defined]
    mu = real[SimplexMorphism(2, 1, (1, 1)).id]
    e = real[SimplexMorphism(0, 1, ()).id]
    return validate_monoid_data(MonoidData(amb, "1", mu, e))


# ---------------------------------------------------------------------------
# Morphism-level homotopy monoids


@dataclass
class MHomotopyMonoid:
    """A colax functor from the truncated ordinals into a monoidal base,
    with every comparison in the base's declared equivalence class."""

    ambient: MonoidalStructure
    truncation: int
    levels: dict[int, str]
    maps: dict[str, str]  # SimplexMorphism.id -> base morphism
    comparisons: dict[tuple[int, int], str]
    unit_comparison: str

    def as_colax(self) -> ColaxData:
        from .simplex import delta_fincat

        delta = delta_monoidal(self.truncation)
        x = FunctorData(
            delta.base,
            self.ambient.base,
            {str(n): self.levels[n] for n in range(self.truncation + 1)},
            dict(self.maps),
        )
        comparisons = {
            (str(m), str(n)): c for (m, n), c in self.comparisons.items()
        }
        return ColaxData(delta, self.ambient, x, comparisons, self.unit_comparison)


def package_monoid(d: MonoidData, truncation: int = 3) -> MHomotopyMonoid:
    """Strict packaging: levels are tensor powers of the carrier, ordinal
    maps act by iterated multiplication over fibers, comparisons are
    identities.  Requires a strict ambient."""
    amb, base = d.ambient, d.ambient.base
    if not amb.is_strict:
        raise InvalidStructure(
            [Violation("ComponentIllTyped", (d.carrier,), "ambient must be strict")]
        )
    c, mu, e = d.carrier, d.multiplication, d.unit_morphism
    idc = base.id_of(c)

    powers = {0: amb.unit}
    for n in range(1, truncation + 1):
        powers[n] = amb.tensor_obj(powers[n - 1], c)
        if powers[n] is None:
            raise InvalidStructure(
                [Violation("ComponentIllTyped", (str(n),), "power outside ambient")]
            )

    multi = {0: e, 1: idc}
    for k in range(2, truncation + 1):
        multi[k] = base.compose(mu, amb.tensor_mor(multi[k - 1], idc))

    def realize(f: SimplexMorphism) -> str:
        if f.cod == 0:
            return base.id_of(amb.unit)
        out = None
        for j in range(1, f.cod + 1):
            size = sum(1 for i in range(1, f.dom + 1) if f(i) == j)
            leg = multi[size]
            out = leg if out is None else amb.tensor_mor(out, leg)
        return out

    tr = DeltaTruncation(truncation)
    maps = {f.id: realize(f) for f in tr.all_morphisms()}
    comparisons = {
        (m, n): base.id_of(powers[m + n])
        for m in range(truncation + 1)
        for n in range(truncation + 1)
        if m + n <= truncation
    }
    return MHomotopyMonoid(
        amb, truncation, powers, maps, comparisons, base.id_of(amb.unit)
    )


def extract_monoid(h: MHomotopyMonoid) -> MonoidData:
    """Collapse a strong homotopy monoid to the monoid it carries.

    The multiplication is the binary level map composed with the inverted
    binary comparison; the unit morphism likewise through the inverted
    unit comparison.  Raises :class:`NotStrong` when a comparison fails to
    invert."""
    base = h.ambient.base
    ok, inv11 = is_isomorphism(base, h.comparisons[(1, 1)])
    if not ok:
        raise NotStrong("binary comparison at (1,1) is not invertible")
    ok, inv0 = is_isomorphism(base, h.unit_comparison)
    if not ok:
        raise NotStrong("unit comparison is not invertible")
    bang = h.maps[SimplexMorphism(2, 1, (1, 1)).id]
    iota = h.maps[SimplexMorphism(0, 1, ()).id]
    mu = base.compose(bang, inv11)
    e = base.compose(iota, inv0)
    return validate_monoid_data(MonoidData(h.ambient, h.levels[1], mu, e))


def _validate_m_homotopy_monoid(h: MHomotopyMonoid) -> Report:
    rep = Report()
    colax = h.as_colax()
    try:
        colax_rep = validate_colax(colax)
    except InvalidStructure as err:
        rep.add_error("colax-typing", str(err))
        return rep
    rep.extend(colax_rep)
    cls = h.ambient.equivalences
    bad = []
    if cls is None:
        bad.append("ambient carries no equivalence class")
    else:
        for key in sorted(h.comparisons):
            if h.comparisons[key] not in cls.members:
                bad.append(f"comparison {key} not an equivalence")
        if h.unit_comparison not in cls.members:
            bad.append("unit comparison not an equivalence")
    rep.add("comparisons-are-equivalences", bad)
    return rep


# ---------------------------------------------------------------------------
# Category-valued homotopy monoids


@dataclass
class CatHomotopyMonoid:
    """Per-level categories, functors for ordinal maps, and comparison
    functors onto flattened products of levels."""

    truncation: int
    levels: dict[int, FinCat]
    maps: dict[str, FunctorData]  # SimplexMorphism.id -> functor
    comparisons: dict[tuple[int, int], FunctorData]
    unit_comparison: FunctorData  # C(0) -> terminal
    witnesses: dict = field(default_factory=dict, repr=False)
    _products: dict = field(default_factory=dict, repr=False)

    def level_product(self, *ns: int) -> FinCat:
        key = tuple(ns)
        if key not in self._products:
            self._products[key] = product([self.levels[n] for n in ns])
        return self._products[key]

    def functor_of(self, f: SimplexMorphism) -> FunctorData:
        return self.maps[f.id]


# -- inflation specifications ----------------------------------------------------


def parse_inflation(spec: str):
    """Parse "const:2", "power:3", "none" or sums like "const:2+power:2"."""
    if spec in ("", "none"):
        return (("const", 1),)
    blocks = []
    for part in spec.split("+"):
        kind, _, arg = part.partition(":")
        size = int(arg) if arg else 1
        if kind not in ("const", "power") or size < 1:
            raise ValueError(f"bad inflation block {part!r}")
        blocks.append((kind, size))
    return tuple(blocks)


def _tokens(blocks, n: int):
    """Duplication tokens at level n, ordered deterministically."""
    out = []
    for bi, (kind, size) in enumerate(blocks):
        if kind == "const":
            out.extend(("c", bi, j) for j in range(size))
        else:
            out.extend(
                ("p", bi) + (w,)
                for w in itertools.product(range(size), repeat=n)
            )
    return out


def _token_act(blocks, f: SimplexMorphism, token):
    if token[0] == "c":
        return token
    _, bi, w = token
    size = blocks[bi][1]
    out = []
    for j in range(1, f.cod + 1):
        out.append(sum(w[i - 1] for i in range(1, f.dom + 1) if f(i) == j) % size)
    return ("p", bi, tuple(out))


def _token_split(token, m: int):
    if token[0] == "c":
        return token, token
    _, bi, w = token
    return ("p", bi, w[:m]), ("p", bi, w[m:])


def _token_json(token):
    if token[0] == "c":
        return list(token)
    return [token[0], token[1], list(token[2])]


# -- fixture generation ------------------------------------------------------------


def _obj_id(d, token) -> str:
    return json.dumps([list(d), _token_json(token)], separators=(",", ":"))


def _mor_id(dom_id: str, cod_id: str, label) -> str:
    return json.dumps([dom_id, cod_id, list(label)], separators=(",", ":"))


def generate_fixture(
    monoid: FiniteMonoid,
    inflation="const:2",
    style: str = "discrete",
    truncation: int = 3,
) -> CatHomotopyMonoid:
    """A category-valued homotopy monoid built from a finite monoid.

    Level n is the n-th power of the base (the monoid as a discrete
    category, or as a one-object category when ``style='delooping'`` and
    the monoid is commutative), inflated by an indiscrete factor of
    duplication tokens.  Comparisons forget nothing on the power part and
    split tokens, so they are equivalences, and genuine isomorphisms only
    when the inflation is trivial.
    """
    validate_monoid(monoid)
    blocks = parse_inflation(inflation) if isinstance(inflation, str) else tuple(inflation)
    if style == "delooping":
        if not is_commutative(monoid):
            raise ValueError("delooping inflation requires a commutative monoid")
        d_elements: tuple[str, ...] = ("*",)
    elif style == "discrete":
        d_elements = monoid.elements
    else:
        raise ValueError(f"unknown fixture style {style!r}")

    def labels(n: int):
        if style == "discrete":
            return [()]
        return list(itertools.product(monoid.elements, repeat=n))

    def label_mul(a, b):
        return tuple(monoid.mul(x, y) for x, y in zip(a, b))

    def label_act(f: SimplexMorphism, a):
        return tuple(
            monoid.product_of(a[i - 1] for i in range(1, f.dom + 1) if f(i) == j)
            for j in range(1, f.cod + 1)
        )

    def d_act(f: SimplexMorphism, d):
        if style == "delooping":
            return ("*",) * f.cod
        return tuple(
            monoid.product_of(d[i - 1] for i in range(1, f.dom + 1) if f(i) == j)
            for j in range(1, f.cod + 1)
        )

    def build_level(n: int) -> FinCat:
        objs = []
        obj_data = {}
        for d in itertools.product(d_elements, repeat=n):
            for token in _tokens(blocks, n):
                oid = _obj_id(d, token)
                objs.append(oid)
                obj_data[oid] = (d, token)
        mors = []
        identities = {}
        id_label = ((monoid.unit,) * n) if style == "delooping" else ()
        for o1 in objs:
            d1, t1 = obj_data[o1]
            for o2 in objs:
                d2, t2 = obj_data[o2]
                if style == "discrete" and d1 != d2:
                    continue
                for lab in labels(n):
                    mid = _mor_id(o1, o2, lab)
                    mors.append((mid, o1, o2))
                    if o1 == o2 and lab == id_label:
                        identities[o1] = mid
        composition = {}
        for mid2, o2a, o2b in mors:
            for mid1, o1a, o1b in mors:
                if o1b != o2a:
                    continue
                l2 = json.loads(mid2)[2]
                l1 = json.loads(mid1)[2]
                lab = label_mul(tuple(l2), tuple(l1)) if style == "delooping" else ()
                composition[(mid2, mid1)] = _mor_id(o1a, o2b, lab)
        cat = FinCat(tuple(objs), tuple(mors), identities, composition, name=f"C{n}")
        cat._obj_data = obj_data  # type: ignore[attr-defined]
        return cat

    levels = {n: build_level(n) for n in range(truncation + 1)}

    def functor_for(f: SimplexMorphism) -> FunctorData:
        src, tgt = levels[f.dom], levels[f.cod]
        omap = {}
        for oid, (d, token) in src._obj_data.items():  # type: ignore[attr-defined]
            omap[oid] = _obj_id(d_act(f, d), _token_act(blocks, f, token))
        mmap = {}
        for mid, o1, o2 in src.morphisms:
            lab = tuple(json.loads(mid)[2])
            new_lab = label_act(f, lab) if style == "delooping" else ()
            mmap[mid] = _mor_id(omap[o1], omap[o2], new_lab)
        return FunctorData(src, tgt, omap, mmap, name=f"C({f.id})")

    tr = DeltaTruncation(truncation)
    maps = {f.id: functor_for(f) for f in tr.all_morphisms()}

    fixture = CatHomotopyMonoid(truncation, levels, {}, {}, None)  # type: ignore[arg-type]
    fixture.maps = maps

    def comparison_for(m: int, n: int) -> FunctorData:
        src = levels[m + n]
        tgt = fixture.level_product(m, n)
        cm, cn = levels[m], levels[n]
        omap = {}
        for oid, (d, token) in src._obj_data.items():  # type: ignore[attr-defined]
            tm, tn = _token_split(token, m)
            omap[oid] = pair_obj(tgt, _obj_id(d[:m], tm), _obj_id(d[m:], tn))
        mmap = {}
        for mid, o1, o2 in src.morphisms:
            lab = tuple(json.loads(mid)[2])
            d1, t1 = src._obj_data[o1]  # type: ignore[attr-defined]
            d2, t2 = src._obj_data[o2]  # type: ignore[attr-defined]
            left = _mor_id(
                _obj_id(d1[:m], _token_split(t1, m)[0]),
                _obj_id(d2[:m], _token_split(t2, m)[0]),
                lab[:m],
            )
            right = _mor_id(
                _obj_id(d1[m:], _token_split(t1, m)[1]),
                _obj_id(d2[m:], _token_split(t2, m)[1]),
                lab[m:],
            )
            mmap[mid] = pair_mor(tgt, left, right)
        return FunctorData(src, tgt, omap, mmap, name=f"xi({m},{n})")

    fixture.comparisons = {
        (m, n): comparison_for(m, n)
        for m in range(truncation + 1)
        for n in range(truncation + 1)
        if m + n <= truncation
    }
    term = terminal_category()
    c0 = levels[0]
    fixture.unit_comparison = FunctorData(
        c0,
        term,
        {o: term.objects[0] for o in c0.objects},
        {mid: term.morphisms[0][0] for mid, _, _ in c0.morphisms},
        name="xi0",
    )
    return fixture


# -- validation ---------------------------------------------------------------------


def _product_functor(src: FinCat, fs: list[FunctorData]) -> FunctorData:
    """F1 x F2 x ... on a flattened product source."""
    comps = [compose_functors(f, proj(src, i)) for i, f in enumerate(fs)]
    return tuple_functor(comps)


def validate_homotopy_monoid(
    h, budget: int = DEFAULT_BUDGET, seed: int | None = None
) -> Report:
    """Functoriality, colax axioms, and equivalence-ness of comparisons.

    Dispatches on the flavour.  For the category-valued flavour the colax
    axioms are equalities of functors, and "equivalence" means a
    pseudo-inverse exists: supplied witnesses are trusted after
    re-validation, missing ones are searched within the budget and cached
    on the value."""
    if isinstance(h, MHomotopyMonoid):
        return _validate_m_homotopy_monoid(h)
    if not isinstance(h, CatHomotopyMonoid):
        raise TypeError(f"unsupported homotopy monoid flavour {type(h)!r}")
    c = h
    rep = Report()
    tr = DeltaTruncation(c.truncation)
    mors = tr.all_morphisms()

    bad = []
    for f in mors:
        fun = c.maps.get(f.id)
        if fun is None:
            bad.append(f"missing functor for {f.id}")
            continue
        try:
            validate_functor(fun)
        except InvalidStructure as err:
            bad.append(f"{f.id}: {err}")
    for key in sorted(c.comparisons):
        try:
            validate_functor(c.comparisons[key])
        except InvalidStructure as err:
            bad.append(f"comparison {key}: {err}")
    try:
        validate_functor(c.unit_comparison)
    except InvalidStructure as err:
        bad.append(f"unit comparison: {err}")
    rep.add("functor-validity", bad)
    if bad:
        return rep

    bad = []
    for n in range(c.truncation + 1):
        if not functor_equal(c.maps[identity(n).id], identity_functor(c.levels[n])):
            bad.append(f"identity at level {n}")
    for f in mors:
        for g in mors:
            if g.dom != f.cod:
                continue
            gf = compose_simplex(g, f)
            if not functor_equal(
                compose_functors(c.maps[g.id], c.maps[f.id]), c.maps[gf.id]
            ):
                bad.append(f"({f.id}, {g.id})")
    rep.add("level-functoriality", bad)

    bad = []
    for f in mors:
        for g in mors:
            if f.dom + g.dom > c.truncation or f.cod + g.cod > c.truncation:
                continue
            src = c.level_product(f.dom, g.dom)
            lhs = compose_functors(
                _product_functor(
                    c.level_product(f.dom, g.dom), [c.maps[f.id], c.maps[g.id]]
                ),
                c.comparisons[(f.dom, g.dom)],
            )
            rhs = compose_functors(
                c.comparisons[(f.cod, g.cod)], c.maps[ordinal_sum(f, g).id]
            )
            if not functor_equal(lhs, rhs):
                bad.append(f"({f.id}, {g.id})")
    rep.add("colax-naturality", bad)

    bad = []
    for m in range(c.truncation + 1):
        for n in range(c.truncation + 1):
            for p in range(c.truncation + 1):
                if m + n + p > c.truncation:
                    continue
                left = compose_functors(
                    _product_functor(
                        c.level_product(m + n, p),
                        [c.comparisons[(m, n)], identity_functor(c.levels[p])],
                    ),
                    c.comparisons[(m + n, p)],
                )
                right = compose_functors(
                    _product_functor(
                        c.level_product(m, n + p),
                        [identity_functor(c.levels[m]), c.comparisons[(n, p)]],
                    ),
                    c.comparisons[(m, n + p)],
                )
                if not functor_equal(left, right):
                    bad.append(f"({m},{n},{p})")
    rep.add("colax-associativity", bad)

    bad = []
    for n in range(c.truncation + 1):
        if n + 0 > c.truncation:
            continue
        right = compose_functors(
            _product_functor(
                c.level_product(n, 0),
                [identity_functor(c.levels[n]), c.unit_comparison],
            ),
            c.comparisons[(n, 0)],
        )
        if not functor_equal(right, identity_functor(c.levels[n])):
            bad.append(f"right({n})")
        left = compose_functors(
            _product_functor(
                c.level_product(0, n),
                [c.unit_comparison, identity_functor(c.levels[n])],
            ),
            c.comparisons[(0, n)],
        )
        if not functor_equal(left, identity_functor(c.levels[n])):
            bad.append(f"left({n})")
    rep.add("colax-counit", bad)

    bad = []
    for key in sorted(c.comparisons):
        if key in c.witnesses:
            continue
        w = find_pseudo_inverse(c.comparisons[key], budget=budget, seed=seed)
        if w is None:
            bad.append(f"comparison {key} is not an equivalence")
        else:
            c.witnesses[key] = w
    if "unit" not in c.witnesses:
        w = find_pseudo_inverse(c.unit_comparison, budget=budget, seed=seed)
        if w is None:
            bad.append("unit comparison is not an equivalence")
        else:
            c.witnesses["unit"] = w
    rep.add("comparisons-are-equivalences", bad)
    return rep


# ---------------------------------------------------------------------------
# The construction of a monoidal category


def build_monoidal_category(
    c: CatHomotopyMonoid,
    budget: int = DEFAULT_BUDGET,
    seed: int | None = None,
    promote: bool = True,
    validate_input: bool = True,
) -> tuple[MonoidalStructure, Report]:
    """Construct a monoidal structure on level 1 and verify it completely.

    Pipeline: choose pseudo-inverses for the needed comparisons, promote
    each to an adjoint equivalence (skipped in diagnostic mode), define the
    tensor through level 2, assemble the associator through level 3 and the
    unitors through the unit level, then re-verify naturality, the pentagon
    and the triangle from scratch.  With promotion enabled a verification
    failure raises :class:`ConstructionInvariantBreach`; in diagnostic mode
    the failing report is returned for inspection.
    """
    if c.truncation < 3:
        raise ValueError("the construction needs levels up to 3")
    if validate_input:
        pre = validate_homotopy_monoid(c, budget=budget, seed=seed)
        if not pre.ok:
            raise InvalidStructure(
                [Violation("ComponentIllTyped", (e.name,), "; ".join(e.witnesses))
                 for e in pre.failures()]
            )

    needed = [(1, 1), (2, 1), (1, 2), (1, 0), (0, 1)]
    reuse = seed is None  # a seed must control the choices, not the cache
    wit: dict = {}
    for key in needed:
        w = (c.witnesses.get(key) if reuse else None) or find_pseudo_inverse(
            c.comparisons[key], budget=budget, seed=seed
        )
        if w is None:
            raise InvalidStructure(
                [Violation("ComponentIllTyped", (str(key),), "no pseudo-inverse")]
            )
        wit[key] = promote_to_adjoint(w, budget=budget) if promote else w
    w0 = (c.witnesses.get("unit") if reuse else None) or find_pseudo_inverse(
        c.unit_comparison, budget=budget, seed=seed
    )
    if w0 is None:
        raise InvalidStructure(
            [Violation("ComponentIllTyped", ("unit",), "no pseudo-inverse")]
        )
    wit["unit"] = promote_to_adjoint(w0, budget=budget) if promote else w0

    c1 = c.levels[1]
    psi11, psi21, psi12 = wit[(1, 1)], wit[(2, 1)], wit[(1, 2)]
    psi10, psi01, psi0 = wit[(1, 0)], wit[(0, 1)], wit["unit"]
    bang2 = c.maps[SimplexMorphism(2, 1, (1, 1)).id]
    bang3 = c.maps[SimplexMorphism(3, 1, (1, 1, 1)).id]
    iota = c.maps[SimplexMorphism(0, 1, ()).id]
    c_u = c.maps[SimplexMorphism(3, 2, (1, 1, 2)).id]
    c_v = c.maps[SimplexMorphism(3, 2, (1, 2, 2)).id]
    c_u0 = c.maps[SimplexMorphism(1, 2, (2,)).id]
    c_u1 = c.maps[SimplexMorphism(1, 2, (1,)).id]

    p11 = c.level_product(1, 1)
    p21 = c.level_product(2, 1)
    p12 = c.level_product(1, 2)
    p10 = c.level_product(1, 0)
    p01 = c.level_product(0, 1)
    p3 = c.level_product(1, 1, 1)

    tensor = compose_functors(bang2, psi11.forward)

    # pairings out of the triple product
    pi = [proj(p3, i) for i in range(3)]
    front = tuple_functor([pi[0], pi[1]])
    back = tuple_functor([pi[1], pi[2]])
    t_x_1 = tuple_functor([compose_functors(tensor, front), pi[2]])
    one_x_t = tuple_functor([pi[0], compose_functors(tensor, back)])
    phi_l = compose_functors(
        psi21.forward, tuple_functor([compose_functors(psi11.forward, front), pi[2]])
    )
    phi_r = compose_functors(
        psi12.forward, tuple_functor([pi[0], compose_functors(psi11.forward, back)])
    )
    # H = psi11 . (C(!) x 1) on the (2,1) product, and its (1,2) mirror
    h_l = compose_functors(
        psi11.forward,
        tuple_functor([compose_functors(bang2, proj(p21, 0)), proj(p21, 1)]),
    )
    h_r = compose_functors(
        psi11.forward,
        tuple_functor([proj(p12, 0), compose_functors(bang2, proj(p12, 1))]),
    )
    # (1 x xi11): C(1) x C(2) -> C(1)^3
    one_x_xi11 = tuple_functor(
        [proj(p12, 0), compose_functors(psi11.backward, proj(p12, 1))]
    )

    c2 = c.levels[2]
    c3 = c.levels[3]
    eta11, eps11 = psi11.unit.components, psi11.counit.components
    eta21, eps21 = psi21.unit.components, psi21.counit.components
    eta12, eps12 = psi12.unit.components, psi12.counit.components
    eta10, eps10 = psi10.unit.components, psi10.counit.components
    eta01, eps01 = psi01.unit.components, psi01.counit.components
    eps0 = psi0.counit.components

    def gamma_l(a: str, b: str, cx: str) -> str:
        pab = psi11.forward.object_map[pair_obj(p11, a, b)]
        b_obj = pair_obj(p21, pab, cx)
        step1 = h_l.morphism_map[eta21[b_obj]]
        w_obj = psi21.forward.object_map[b_obj]
        step2 = eps11[c_u.object_map[w_obj]]
        return bang2.morphism_map[c2.compose(step2, step1)]

    def gamma_r(a: str, b: str, cx: str) -> str:
        pbc = psi11.forward.object_map[pair_obj(p11, b, cx)]
        b_obj = pair_obj(p12, a, pbc)
        step1 = h_r.morphism_map[eta12[b_obj]]
        w_obj = psi12.forward.object_map[b_obj]
        step2 = eps11[c_v.object_map[w_obj]]
        return bang2.morphism_map[c2.compose(step2, step1)]

    def iota_r(a: str, b: str, cx: str) -> str:
        eta_bc = eta11[pair_obj(p11, b, cx)]
        comps = mor_components(p11, eta_bc)
        part1 = pair_mor(p3, c1.id_of(a), comps[0], comps[1])
        pbc = psi11.forward.object_map[pair_obj(p11, b, cx)]
        part2 = one_x_xi11.morphism_map[eta12[pair_obj(p12, a, pbc)]]
        return p3.compose(part2, part1)

    def kappa_l(w_obj: str) -> str:
        z = psi21.backward.object_map[w_obj]
        p, q = obj_components(p21, z)
        inner = pair_mor(p21, eps11[p], c1.id_of(q))
        return c3.compose(eps21[w_obj], psi21.forward.morphism_map[inner])

    assoc: dict[tuple[str, str, str], str] = {}
    for a, b, cx in itertools.product(c1.objects, repeat=3):
        x = pair_obj(p3, a, b, cx)
        mu_x = c3.compose(kappa_l(phi_r.object_map[x]), phi_l.morphism_map[iota_r(a, b, cx)])
        g_r = gamma_r(a, b, cx)
        ok, g_r_inv = is_isomorphism(c1, g_r)
        if not ok:
            diag = Report()
            diag.add_error("associator-assembly", f"leg at ({a},{b},{cx}) not invertible")
            raise ConstructionInvariantBreach(diag)
        assoc[(a, b, cx)] = c1.compose(
            g_r_inv, c1.compose(bang3.morphism_map[mu_x], gamma_l(a, b, cx))
        )

    term_obj = psi0.forward.source.objects[0]
    psi0_obj = psi0.forward.object_map[term_obj]
    unit_obj = iota.object_map[psi0_obj]

    h_l0 = compose_functors(
        bang2,
        compose_functors(
            psi11.forward,
            tuple_functor([compose_functors(iota, proj(p01, 0)), proj(p01, 1)]),
        ),
    )
    h_r0 = compose_functors(
        bang2,
        compose_functors(
            psi11.forward,
            tuple_functor([proj(p10, 0), compose_functors(iota, proj(p10, 1))]),
        ),
    )

    lunit: dict[str, str] = {}
    runit: dict[str, str] = {}
    for a in c1.objects:
        b_obj = pair_obj(p01, psi0_obj, a)
        s1 = h_l0.morphism_map[eta01[b_obj]]
        s2 = bang2.morphism_map[
            eps11[c_u0.object_map[psi01.forward.object_map[b_obj]]]
        ]
        z_a, a_check = obj_components(p01, psi01.backward.object_map[a])
        assert a_check == a, "counit strictness violated at the (0,1) comparison"
        s3 = psi01.forward.morphism_map[pair_mor(p01, eps0[z_a], c1.id_of(a))]
        s4 = eps01[a]
        lunit[a] = c1.compose(s4, c1.compose(s3, c1.compose(s2, s1)))

        b_obj = pair_obj(p10, a, psi0_obj)
        s1 = h_r0.morphism_map[eta10[b_obj]]
        s2 = bang2.morphism_map[
            eps11[c_u1.object_map[psi10.forward.object_map[b_obj]]]
        ]
        a_check, z_a = obj_components(p10, psi10.backward.object_map[a])
        assert a_check == a, "counit strictness violated at the (1,0) comparison"
        s3 = psi10.forward.morphism_map[pair_mor(p10, c1.id_of(a), eps0[z_a])]
        s4 = eps10[a]
        runit[a] = c1.compose(s4, c1.compose(s3, c1.compose(s2, s1)))

    tensor_obj_table = {}
    tensor_mor_table = {}
    for a in c1.objects:
        for b in c1.objects:
            tensor_obj_table[(a, b)] = tensor.object_map[pair_obj(p11, a, b)]
    for f in c1.dom:
        for g in c1.dom:
            tensor_mor_table[(f, g)] = tensor.morphism_map[pair_mor(p11, f, g)]

    structure = MonoidalStructure(
        base=c1,
        tensor_obj_table=tensor_obj_table,
        tensor_mor_table=tensor_mor_table,
        unit=unit_obj,
        associator=assoc,
        left_unitor=lunit,
        right_unitor=runit,
        name="constructed",
    )

    report = Report()
    try:
        validate_monoidal(structure)
        report.add("structure-validity", [])
    except InvalidStructure as err:
        report.add("structure-validity", [v.describe() for v in err.violations])
    report.extend(check_pentagon(structure))
    report.extend(check_triangle(structure))
    if promote and not report.ok:
        raise ConstructionInvariantBreach(report)
    return structure, report


# ---------------------------------------------------------------------------
# Strong monoidal comparison of two constructed structures


def find_strong_monoidal_iso(
    m1: MonoidalStructure,
    m2: MonoidalStructure,
    budget: int = DEFAULT_BUDGET,
) -> ColaxData | None:
    """Search for an invertible strong monoidal functor m1 -> m2.

    Intended for small structures only: enumerates invertible functors of
    the bases and, for each, searches comparison components making the
    colax axioms hold with all components isomorphisms.
    """
    bud = _Budget(budget)
    b1, b2 = m1.base, m2.base
    if len(b1.objects) != len(b2.objects) or len(b1.morphisms) != len(b2.morphisms):
        return None
    for f in enumerate_functors(b1, b2, bud, faithful=True):
        if len(set(f.object_map.values())) != len(b2.objects):
            continue
        if len(set(f.morphism_map.values())) != len(b2.morphisms):
            continue
        d = _search_strong_components(m1, m2, f, bud)
        if d is not None:
            return d
    return None


def _search_strong_components(m1, m2, f: FunctorData, bud) -> ColaxData | None:
    b2 = m2.base
    iso2 = {m for m in b2.dom if is_isomorphism(b2, m)[0]}
    pairs = sorted(
        (a, b) for a in m1.base.objects for b in m1.base.objects
        if m1.tensor_obj(a, b) is not None
    )

    def candidates(a, b):
        dom = f.object_map[m1.tensor_obj(a, b)]
        cod = m2.tensor_obj(f.object_map[a], f.object_map[b])
        if cod is None:
            return []
        return [m for m in b2.hom(dom, cod) if m in iso2]

    unit_candidates = [
        m for m in b2.hom(f.object_map[m1.unit], m2.unit) if m in iso2
    ]
    chosen: dict[tuple[str, str], str] = {}

    def place(i: int):
        if i == len(pairs):
            for u in unit_candidates:
                bud.spend()
                d = ColaxData(m1, m2, f, dict(chosen), u)
                try:
                    if validate_colax(d).ok:
                        return d
                except InvalidStructure:
                    continue
            return None
        a, b = pairs[i]
        for cand in candidates(a, b):
            bud.spend()
            chosen[(a, b)] = cand
            result = place(i + 1)
            if result is not None:
                return result
            del chosen[(a, b)]
        return None

    return place(0)
