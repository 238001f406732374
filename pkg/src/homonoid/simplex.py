"""The truncated category of finite ordinals under ordinal sum.

Objects are the ordinals 0..N (the object n is the totally ordered set
{1,..,n}); a morphism m -> n is a weakly increasing list of length m with
entries in 1..n, composed by value substitution.  Ordinal sum concatenates
value lists (shifting the second block), giving a strict monoidal structure
whose unit is the empty ordinal.

``interval_dual`` realizes each morphism geometrically: f: m -> n maps to
the endpoint-preserving monotone vertex map {0..n} -> {0..m} given by
d(j) = #{i : f(i) <= j}.  This is the vertex action used to build the
collapsed-simplex complexes in :mod:`homonoid.loopspace`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .fincat import FinCat
from .report import Report


class OutOfTruncation(ValueError):
    pass


@dataclass(frozen=True)
class SimplexMorphism:
    dom: int
    cod: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.dom < 0 or self.cod < 0 or len(self.values) != self.dom:
            raise ValueError(f"bad morphism data {self}")
        last = 1
        for v in self.values:
            if not (last <= v <= self.cod):
                raise ValueError(f"values not weakly increasing within 1..{self.cod}")
            last = v

    def __call__(self, i: int) -> int:
        return self.values[i - 1]

    @property
    def id(self) -> str:
        return f"{self.dom}>{self.cod}:" + ",".join(map(str, self.values))


def identity(n: int) -> SimplexMorphism:
    return SimplexMorphism(n, n, tuple(range(1, n + 1)))


def compose(g: SimplexMorphism, f: SimplexMorphism) -> SimplexMorphism:
    """g after f, by value substitution."""
    if f.cod != g.dom:
        raise ValueError(f"not composable: {f.id} then {g.id}")
    return SimplexMorphism(f.dom, g.cod, tuple(g.values[v - 1] for v in f.values))


def enumerate_hom(m: int, n: int) -> list[SimplexMorphism]:
    """All morphisms m -> n in lexicographic order of their value lists."""
    if m < 0 or n < 0:
        raise ValueError("negative ordinal")
    return [
        SimplexMorphism(m, n, vals)
        for vals in itertools.combinations_with_replacement(range(1, n + 1), m)
    ]


def hom_count(m: int, n: int) -> int:
    if n == 0:
        return 1 if m == 0 else 0
    return comb(m + n - 1, m)


def ordinal_sum(
    f: SimplexMorphism, g: SimplexMorphism, limit: int | None = None
) -> SimplexMorphism:
    """Monoidal product: f's values followed by g's shifted by cod(f)."""
    if limit is not None and (f.dom + g.dom > limit or f.cod + g.cod > limit):
        raise OutOfTruncation(
            f"{f.id} + {g.id} leaves the truncation at {limit}"
        )
    return SimplexMorphism(
        f.dom + g.dom,
        f.cod + g.cod,
        f.values + tuple(v + f.cod for v in g.values),
    )


def interval_dual(f: SimplexMorphism) -> tuple[int, ...]:
    """Vertex map {0..cod} -> {0..dom}, j -> #{i : f(i) <= j}.

    Contravariant: interval_dual(compose(g, f)) is the composite of the
    duals in the opposite order, with d(0) = 0 and d(cod) = dom.
    """
    return tuple(sum(1 for v in f.values if v <= j) for j in range(f.cod + 1))


def generators(m: int) -> tuple[list[SimplexMorphism], list[SimplexMorphism]]:
    """Face maps (m-1) -> m and degeneracy maps (m+1) -> m.

    Faces are the injective monotone maps, degeneracies the surjective ones;
    for m = 0 both lists are empty (there is no object -1, and no morphism
    1 -> 0 exists).
    """
    if m == 0:
        return [], []
    faces = [
        SimplexMorphism(m - 1, m, vals)
        for vals in itertools.combinations(range(1, m + 1), m - 1)
    ]
    degeneracies = []
    for i in range(1, m + 1):
        vals = tuple(range(1, i + 1)) + (i,) + tuple(range(i + 1, m + 1))
        degeneracies.append(SimplexMorphism(m + 1, m, vals))
    return faces, degeneracies


@dataclass
class DeltaTruncation:
    """All ordinals 0..N with every morphism between them."""

    N: int

    def check_bounds(self, *ordinals: int) -> None:
        for n in ordinals:
            if not (0 <= n <= self.N):
                raise OutOfTruncation(f"ordinal {n} outside 0..{self.N}")

    def hom(self, m: int, n: int) -> list[SimplexMorphism]:
        self.check_bounds(m, n)
        return enumerate_hom(m, n)

    def all_morphisms(self) -> list[SimplexMorphism]:
        out = []
        for m in range(self.N + 1):
            for n in range(self.N + 1):
                out.extend(enumerate_hom(m, n))
        return out

    def ordinal_sum(self, f: SimplexMorphism, g: SimplexMorphism) -> SimplexMorphism:
        return ordinal_sum(f, g, limit=self.N)


def delta_fincat(N: int) -> FinCat:
    """The truncation materialized as an explicit finite category."""
    tr = DeltaTruncation(N)
    objects = tuple(str(n) for n in range(N + 1))
    mors = tr.all_morphisms()
    morphisms = tuple((f.id, str(f.dom), str(f.cod)) for f in mors)
    identities = {str(n): identity(n).id for n in range(N + 1)}
    composition = {}
    by_pair: dict[tuple[int, int], list[SimplexMorphism]] = {}
    for f in mors:
        by_pair.setdefault((f.dom, f.cod), []).append(f)
    for (a, b), fs in by_pair.items():
        for c in range(N + 1):
            for g in by_pair.get((b, c), ()):
                for f in fs:
                    composition[(g.id, f.id)] = compose(g, f).id
    return FinCat(objects, morphisms, identities, composition, name=f"Delta<= {N}")


def delta_tensor_tables(N: int) -> tuple[dict, dict]:
    """Partial tensor tables (object and morphism level) for the truncation.

    Defined exactly on pairs whose ordinal sum stays within the truncation.
    """
    tr = DeltaTruncation(N)
    obj_table = {
        (str(m), str(n)): str(m + n)
        for m in range(N + 1)
        for n in range(N + 1)
        if m + n <= N
    }
    mor_table = {}
    mors = tr.all_morphisms()
    for f in mors:
        for g in mors:
            if f.dom + g.dom <= N and f.cod + g.cod <= N:
                mor_table[(f.id, g.id)] = ordinal_sum(f, g).id
    return obj_table, mor_table


def _endpoint_monotone_maps(n: int, m: int) -> list[tuple[int, ...]]:
    out = []
    for vals in itertools.product(range(m + 1), repeat=n + 1):
        if vals[0] != 0 or vals[-1] != m:
            continue
        if any(vals[i] > vals[i + 1] for i in range(n)):
            continue
        out.append(vals)
    return out


def delta_check(N: int) -> Report:
    """Run every structural invariant of the truncation, exhaustively.

    Internally works with integer-indexed composition and ordinal-sum
    tables so the associativity/interchange sweeps are pure dict lookups.
    """
    rep = Report()
    tr = DeltaTruncation(N)

    bad = []
    for m in range(N + 1):
        for n in range(N + 1):
            got = len(enumerate_hom(m, n))
            if got != hom_count(m, n):
                bad.append(f"hom({m},{n}): {got} != {hom_count(m, n)}")
    rep.add("hom-counts", bad)

    mors = tr.all_morphisms()
    index = {(f.dom, f.cod, f.values): i for i, f in enumerate(mors)}
    by_pair: dict[tuple[int, int], list[int]] = {}
    for i, f in enumerate(mors):
        by_pair.setdefault((f.dom, f.cod), []).append(i)

    comp: dict[tuple[int, int], int] = {}
    bad = []
    for (a, b), fs in by_pair.items():
        for c in range(N + 1):
            for gi in by_pair.get((b, c), ()):
                g = mors[gi]
                for fi in fs:
                    gf = compose(g, mors[fi])
                    key = (gf.dom, gf.cod, gf.values)
                    if key not in index:
                        bad.append(f"composite escapes truncation: {g.id}")
                        continue
                    comp[(gi, fi)] = index[key]
    for (gi, fi), gfi in comp.items():
        c = mors[gi].cod
        for c2 in range(N + 1):
            for hi in by_pair.get((c, c2), ()):
                if comp[(hi, gfi)] != comp[(comp[(hi, gi)], fi)]:
                    bad.append(
                        f"associativity: {mors[hi].id}, {mors[gi].id}, {mors[fi].id}"
                    )
    rep.add("composition-associativity", bad)

    osum: dict[tuple[int, int], int] = {}
    for i, f in enumerate(mors):
        for j, g in enumerate(mors):
            if f.dom + g.dom <= N and f.cod + g.cod <= N:
                s = ordinal_sum(f, g)
                osum[(i, j)] = index[(s.dom, s.cod, s.values)]

    bad = []
    ids = {n: index[(n, n, identity(n).values)] for n in range(N + 1)}
    for m in range(N + 1):
        for n in range(N + 1 - m):
            if osum[(ids[m], ids[n])] != ids[m + n]:
                bad.append(f"id{m}+id{n}")
    empty = ids[0]
    for i, f in enumerate(mors):
        if f.dom + f.cod == 0 or (f.dom <= N and f.cod <= N):
            if (i, empty) in osum and osum[(i, empty)] != i:
                bad.append(f"unit law: {f.id}")
            if (empty, i) in osum and osum[(empty, i)] != i:
                bad.append(f"unit law: {f.id}")
    for (i, j), ij in osum.items():
        for k in range(len(mors)):
            if (ij, k) in osum and (j, k) in osum and (i, osum[(j, k)]) in osum:
                if osum[(ij, k)] != osum[(i, osum[(j, k)])]:
                    bad.append(f"sum associativity: {mors[i].id},{mors[j].id},{mors[k].id}")
    # interchange: (f2.f1)+(g2.g1) == (f2+g2).(f1+g1), grouped by endpoint
    # signatures so only quadruples inside the truncation are visited
    comp_by_sig: dict[tuple[int, int, int], list[tuple[int, int, int]]] = {}
    for (gi, fi), gfi in comp.items():
        sig = (mors[fi].dom, mors[fi].cod, mors[gi].cod)
        comp_by_sig.setdefault(sig, []).append((fi, gi, gfi))
    for (a, b, c), left in comp_by_sig.items():
        for (a2, b2, c2), right in comp_by_sig.items():
            if a + a2 > N or b + b2 > N or c + c2 > N:
                continue
            for f1i, f2i, f21 in left:
                for g1i, g2i, g21 in right:
                    if osum[(f21, g21)] != comp[(osum[(f2i, g2i)], osum[(f1i, g1i)])]:
                        bad.append(
                            f"interchange: {mors[f1i].id},{mors[f2i].id},"
                            f"{mors[g1i].id},{mors[g2i].id}"
                        )
    rep.add("ordinal-sum-strictness", bad)

    bad = []
    duals = [interval_dual(f) for f in mors]
    for (gi, fi), gfi in comp.items():
        df, dg = duals[fi], duals[gi]
        if duals[gfi] != tuple(df[v] for v in dg):
            bad.append(f"dual contravariance: {mors[gi].id} . {mors[fi].id}")
    for m in range(N + 1):
        for n in range(N + 1):
            dual_set = {duals[i] for i in by_pair.get((m, n), ())}
            if len(dual_set) != hom_count(m, n):
                bad.append(f"dual injectivity: hom({m},{n})")
            if len(_endpoint_monotone_maps(n, m)) != hom_count(m, n):
                bad.append(f"dual count: hom({m},{n})")
    rep.add("interval-duality", bad)

    bad = []
    limit = min(N, 3)
    reachable: set[tuple[int, int, tuple[int, ...]]] = set()
    gens: list[SimplexMorphism] = []
    for m in range(N + 1):
        faces, degens = generators(m)
        gens.extend(x for x in faces + degens if x.dom <= N)
    frontier = [identity(n) for n in range(N + 1)] + gens
    for f in frontier:
        reachable.add((f.dom, f.cod, f.values))
    changed = True
    while changed:
        changed = False
        current = list(reachable)
        for d1, c1, v1 in current:
            for g in gens + [identity(n) for n in range(N + 1)]:
                if g.dom == c1:
                    h = compose(g, SimplexMorphism(d1, c1, v1))
                    key = (h.dom, h.cod, h.values)
                    if key not in reachable:
                        reachable.add(key)
                        changed = True
    for m in range(limit + 1):
        for n in range(limit + 1):
            for f in enumerate_hom(m, n):
                if (f.dom, f.cod, f.values) not in reachable:
                    bad.append(f"not generator-reachable: {f.id}")
    rep.add("generator-factorization", bad)

    return rep
