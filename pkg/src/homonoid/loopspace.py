"""Collapsed simplices, wedges, cellular maps and integer homology.

``collapsed_simplex(n)`` is the standard n-simplex with all n+1 vertices
identified to a single basepoint: one 0-cell and one k-cell per
(k+1)-subset of the vertices for k >= 1.  ``collapsed_simplex(1)`` is the
circle.  Every complex in this module is a finite wedge of such pieces, so
a complex is just its word of piece sizes, and every cellular map is given
per piece by a weakly increasing vertex map; cells whose image repeats a
vertex are degenerate and contribute zero at the chain level, which is
exactly what makes the induced maps functorial on normalized chains.

The homotopy-theoretic claims are certified at the level of integer
homology: a map is accepted as an equivalence when its mapping cone is
acyclic (Smith normal form of the cone boundaries), and
``verify_comonoid`` checks that the face-map inclusions of wedges into
larger collapsed simplices satisfy co-naturality, co-associativity and the
counit laws strictly, with every comparison map a quasi-isomorphism.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import comb

from .report import Report
from .simplex import (
    SimplexMorphism,
    enumerate_hom,
    identity,
    interval_dual,
    ordinal_sum,
)
from .snf import is_zero, mat_mul, matrix_rank, smith_divisors, zero_matrix

DEFAULT_MAX_SIMPLEX = 6


class TooLarge(ValueError):
    pass


Cell = tuple[int, tuple[int, ...]]  # (piece index, vertex tuple), dim = len-1


@dataclass(frozen=True)
class PointedDeltaComplex:
    """A finite wedge of collapsed simplices, identified by its word."""

    word: tuple[int, ...]

    @property
    def dim(self) -> int:
        return max(self.word, default=0)

    def cells(self, k: int) -> list[Cell]:
        """All k-cells for k >= 1, ordered by piece then vertex tuple."""
        out = []
        for i, n in enumerate(self.word):
            out.extend(
                (i, verts) for verts in itertools.combinations(range(n + 1), k + 1)
            )
        return out

    def all_cells(self) -> list[Cell]:
        return [c for k in range(1, self.dim + 1) for c in self.cells(k)]

    def has_cell(self, cell: Cell) -> bool:
        i, verts = cell
        return (
            0 <= i < len(self.word)
            and len(verts) >= 2
            and all(0 <= v <= self.word[i] for v in verts)
            and all(verts[j] < verts[j + 1] for j in range(len(verts) - 1))
        )

    def face(self, cell: Cell, j: int):
        """The j-th face; faces of 1-cells are the basepoint (None)."""
        i, verts = cell
        if len(verts) == 2:
            return None
        return (i, verts[:j] + verts[j + 1 :])

    def cell_count(self) -> int:
        return 1 + sum(len(self.cells(k)) for k in range(1, self.dim + 1))


def collapsed_simplex(n: int, max_size: int = DEFAULT_MAX_SIMPLEX) -> PointedDeltaComplex:
    """The n-simplex with every vertex collapsed to the basepoint."""
    if not 0 <= n <= max_size:
        raise TooLarge(f"collapsed simplex size {n} outside 0..{max_size}")
    return PointedDeltaComplex((n,))


def point_complex() -> PointedDeltaComplex:
    return PointedDeltaComplex(())


def validate_complex(k: PointedDeltaComplex) -> PointedDeltaComplex:
    """Face closure and the simplicial identities d_i d_j = d_{j-1} d_i."""
    for c in k.all_cells():
        n_faces = len(c[1])
        for j in range(n_faces):
            f = k.face(c, j)
            if f is not None:
                assert k.has_cell(f), (c, j)
        for j in range(n_faces):
            for i in range(j):
                fj = k.face(c, j)
                fi = k.face(c, i)
                lhs = k.face(fj, i) if fj is not None else None
                rhs = k.face(fi, j - 1) if fi is not None else None
                assert lhs == rhs, (c, i, j)
    return k


# ---------------------------------------------------------------------------
# Cellular maps


@dataclass(frozen=True)
class CellularMap:
    """A basepoint-preserving map given per piece by a monotone vertex map.

    ``piece_map[i]`` names the target piece carrying source piece i, and
    ``vertex_maps[i][v]`` the image vertex.  The observable content is the
    induced action on cells; two maps are equal when those actions agree.
    """

    source: PointedDeltaComplex
    target: PointedDeltaComplex
    piece_map: tuple[int, ...]
    vertex_maps: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        assert len(self.piece_map) == len(self.source.word)
        assert len(self.vertex_maps) == len(self.source.word)
        for i, n in enumerate(self.source.word):
            q = self.piece_map[i]
            vm = self.vertex_maps[i]
            assert 0 <= q < len(self.target.word)
            assert len(vm) == n + 1
            assert all(
                vm[v] <= vm[v + 1] for v in range(n)
            ), f"vertex map on piece {i} not monotone"
            assert all(0 <= x <= self.target.word[q] for x in vm)

    def cell_action(self, cell: Cell) -> tuple[int, tuple[int, ...]]:
        """Image piece and (possibly repeating) image vertex tuple."""
        i, verts = cell
        vm = self.vertex_maps[i]
        return (self.piece_map[i], tuple(vm[v] for v in verts))

    def cell_image(self, cell: Cell) -> Cell | None:
        """The image cell, or None when the image is degenerate."""
        q, mapped = self.cell_action(cell)
        if any(mapped[j] == mapped[j + 1] for j in range(len(mapped) - 1)):
            return None
        return (q, mapped)

    def action_table(self) -> dict[Cell, tuple[int, tuple[int, ...]]]:
        return {c: self.cell_action(c) for c in self.source.all_cells()}


def identity_cellular(k: PointedDeltaComplex) -> CellularMap:
    return CellularMap(
        k,
        k,
        tuple(range(len(k.word))),
        tuple(tuple(range(n + 1)) for n in k.word),
        name="1",
    )


def compose_cellular(g: CellularMap, f: CellularMap) -> CellularMap:
    assert f.target.word == g.source.word, "cellular maps not composable"
    piece = tuple(g.piece_map[q] for q in f.piece_map)
    vmaps = tuple(
        tuple(g.vertex_maps[f.piece_map[i]][x] for x in f.vertex_maps[i])
        for i in range(len(f.source.word))
    )
    return CellularMap(f.source, g.target, piece, vmaps)


def cellular_equal(f: CellularMap, g: CellularMap) -> bool:
    """Equality of the induced cell actions (vertex maps on cell-free
    pieces are unobservable and ignored)."""
    if f.source.word != g.source.word or f.target.word != g.target.word:
        return False
    return f.action_table() == g.action_table()


def cellular_diff(f: CellularMap, g: CellularMap) -> list[str]:
    """Cells on which two parallel maps disagree, smallest first."""
    if f.source.word != g.source.word or f.target.word != g.target.word:
        return ["<different endpoints>"]
    ta, tb = f.action_table(), g.action_table()
    return [f"cell {c}: {ta[c]} != {tb[c]}" for c in sorted(ta) if ta[c] != tb[c]]


def validate_cellular(f: CellularMap) -> CellularMap:
    """Nondegenerate images are cells, and faces commute with the map."""
    for c in f.source.all_cells():
        im = f.cell_image(c)
        if im is not None:
            assert f.target.has_cell(im), (c, im)
        for j in range(len(c[1])):
            fc = f.source.face(c, j)
            want = f.cell_image(fc) if fc is not None else None
            if im is not None:
                got = f.target.face(im, j)
            else:
                got = None
                # a degenerate image collapses all faces except the two that
                # drop the repeated vertex; those agree, which is what the
                # chain-level cancellation uses.  nothing to compare here.
                continue
            if fc is None:
                assert got is None or len(got[1]) >= 2
            elif want is not None:
                assert got == want, (c, j)
    return f


def build_wedge(
    k: PointedDeltaComplex, l: PointedDeltaComplex
) -> tuple[PointedDeltaComplex, CellularMap, CellularMap]:
    """Join at the basepoint; returns the wedge and both inclusions."""
    w = PointedDeltaComplex(k.word + l.word)
    inc_k = CellularMap(
        k,
        w,
        tuple(range(len(k.word))),
        tuple(tuple(range(n + 1)) for n in k.word),
    )
    inc_l = CellularMap(
        l,
        w,
        tuple(range(len(k.word), len(k.word) + len(l.word))),
        tuple(tuple(range(n + 1)) for n in l.word),
    )
    return w, inc_k, inc_l


def wedge_map(components: list[CellularMap]) -> CellularMap:
    """The wedge of maps, with source and target words concatenated."""
    src = PointedDeltaComplex(tuple(n for f in components for n in f.source.word))
    tgt = PointedDeltaComplex(tuple(n for f in components for n in f.target.word))
    piece: list[int] = []
    vmaps: list[tuple[int, ...]] = []
    tgt_offset = 0
    for f in components:
        piece.extend(q + tgt_offset for q in f.piece_map)
        vmaps.extend(f.vertex_maps)
        tgt_offset += len(f.target.word)
    return CellularMap(src, tgt, tuple(piece), tuple(vmaps))


def build_omega(
    m: int, n: int, max_size: int = DEFAULT_MAX_SIMPLEX
) -> CellularMap:
    """The front/back face inclusion of W(m) v W(n) into W(m+n)."""
    if m + n > max_size:
        raise TooLarge(f"{m}+{n} exceeds the configured bound {max_size}")
    src = PointedDeltaComplex((m, n))
    tgt = collapsed_simplex(m + n, max_size)
    return CellularMap(
        src,
        tgt,
        (0, 0),
        (tuple(range(m + 1)), tuple(m + v for v in range(n + 1))),
        name=f"omega({m},{n})",
    )


def omega0() -> CellularMap:
    """The basepoint map into the collapsed 0-simplex."""
    return CellularMap(point_complex(), collapsed_simplex(0), (), (), name="omega0")


def induced_map_W(
    f: SimplexMorphism, max_size: int = DEFAULT_MAX_SIMPLEX
) -> CellularMap:
    """The contravariant action on collapsed simplices, via interval duals."""
    return CellularMap(
        collapsed_simplex(f.cod, max_size),
        collapsed_simplex(f.dom, max_size),
        (0,),
        (interval_dual(f),),
        name=f"W({f.id})",
    )


# ---------------------------------------------------------------------------
# Chains and homology


@dataclass
class ChainComplex:
    dims: list[int]  # rank of C_k for k = 0..top
    boundaries: list[list[list[int]]] = field(default_factory=list)
    # boundaries[k] maps C_{k+1} -> C_k (rows indexed by C_k)

    def boundary(self, k: int) -> list[list[int]]:
        """The matrix of C_k -> C_{k-1}; zero-shaped outside range."""
        if 1 <= k <= len(self.boundaries):
            return self.boundaries[k - 1]
        rows = self.dims[k - 1] if 0 <= k - 1 < len(self.dims) else 0
        cols = self.dims[k] if 0 <= k < len(self.dims) else 0
        return zero_matrix(rows, cols)

    @property
    def top(self) -> int:
        return len(self.dims) - 1


def validate_chain_complex(cc: ChainComplex) -> ChainComplex:
    for k in range(2, cc.top + 1):
        assert is_zero(mat_mul(cc.boundary(k - 1), cc.boundary(k))), k
    return cc


def chain_complex(k: PointedDeltaComplex) -> ChainComplex:
    """Cellular chains: C_0 = Z (the basepoint), C_k free on the k-cells."""
    dims = [1] + [len(k.cells(d)) for d in range(1, k.dim + 1)]
    boundaries = []
    for d in range(1, k.dim + 1):
        lower = {c: i for i, c in enumerate(k.cells(d - 1))} if d >= 2 else {}
        rows = dims[d - 1]
        mat = zero_matrix(rows, dims[d])
        for col, cell in enumerate(k.cells(d)):
            if d == 1:
                continue  # both endpoints are the basepoint: boundary zero
            for j in range(d + 1):
                face = k.face(cell, j)
                mat[lower[face]][col] += (-1) ** j
        boundaries.append(mat)
    return ChainComplex(dims, boundaries)


def chain_map(f: CellularMap) -> dict[int, list[list[int]]]:
    """Integer matrices of the induced chain map; degenerate cells map to 0."""
    out = {0: [[1]]}
    top = max(f.source.dim, f.target.dim)
    for d in range(1, top + 1):
        src_cells = f.source.cells(d)
        tgt_index = {c: i for i, c in enumerate(f.target.cells(d))}
        mat = zero_matrix(len(tgt_index), len(src_cells))
        for col, cell in enumerate(src_cells):
            im = f.cell_image(cell)
            if im is not None:
                mat[tgt_index[im]][col] = 1
        out[d] = mat
    return out


@dataclass(frozen=True)
class HomologyReport:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    euler: int

    def describe(self, k: int) -> str:
        parts = ["Z"] * self.betti[k] if k < len(self.betti) else []
        if k < len(self.torsion):
            parts += [f"Z/{d}" for d in self.torsion[k]]
        return " + ".join(parts) if parts else "0"


def homology(cc: ChainComplex) -> HomologyReport:
    """Betti numbers and torsion coefficients by Smith normal form."""
    top = cc.top
    divisors = {k: smith_divisors(cc.boundary(k)) for k in range(1, top + 2)}
    betti = []
    torsion = []
    for k in range(top + 1):
        r_k = len(divisors.get(k, []))
        r_next = len(divisors.get(k + 1, []))
        betti.append(cc.dims[k] - r_k - r_next)
        torsion.append(tuple(d for d in divisors.get(k + 1, []) if d != 1))
    euler = sum((-1) ** k * d for k, d in enumerate(cc.dims))
    rep = HomologyReport(tuple(betti), tuple(torsion), euler)
    assert euler == sum((-1) ** k * b for k, b in enumerate(betti)), "Euler mismatch"
    return rep


def homology_of(k: PointedDeltaComplex) -> HomologyReport:
    return homology(chain_complex(k))


def mapping_cone(f: CellularMap) -> ChainComplex:
    """cone(f)_k = C_{k-1} (+) D_k with boundary (c,d) -> (-dc, f(c)+dd)."""
    c = chain_complex(f.source)
    d = chain_complex(f.target)
    fm = chain_map(f)
    top = max(c.top + 1, d.top)
    dims = []
    for k in range(top + 1):
        ck = c.dims[k - 1] if 1 <= k and k - 1 <= c.top else 0
        dk = d.dims[k] if k <= d.top else 0
        dims.append(ck + dk)
    boundaries = []
    for k in range(1, top + 1):
        c_rows = c.dims[k - 2] if k >= 2 and k - 2 <= c.top else 0
        d_rows = d.dims[k - 1] if k - 1 <= d.top else 0
        c_cols = c.dims[k - 1] if k - 1 <= c.top else 0
        d_cols = d.dims[k] if k <= d.top else 0
        mat = zero_matrix(c_rows + d_rows, c_cols + d_cols)
        if c_cols and c_rows:
            bc = c.boundary(k - 1)
            for i in range(c_rows):
                for j in range(c_cols):
                    mat[i][j] = -bc[i][j]
        if c_cols and d_rows:
            fk = fm.get(k - 1, zero_matrix(d_rows, c_cols))
            for i in range(d_rows):
                for j in range(c_cols):
                    mat[c_rows + i][j] = fk[i][j]
        if d_cols and d_rows:
            bd = d.boundary(k)
            for i in range(d_rows):
                for j in range(d_cols):
                    mat[c_rows + i][c_cols + j] = bd[i][j]
        boundaries.append(mat)
    return ChainComplex(dims, boundaries)


def check_quasi_iso(f: CellularMap) -> tuple[bool, Report]:
    """True iff homology is an isomorphism in every degree.

    Certified through the mapping cone: the induced maps are isomorphisms
    in all degrees exactly when the cone has trivial homology everywhere.
    """
    cone = validate_chain_complex(mapping_cone(f))
    h = homology(cone)
    rep = Report()
    for k in range(len(h.betti)):
        bad = []
        if h.betti[k] != 0 or h.torsion[k]:
            bad.append(f"H{k}(cone) = {h.describe(k)}")
        rep.add(f"cone-degree-{k}", bad)
    return rep.ok, rep


def cellular_site(maxlevel: int = 2, max_word: int = 3):
    """The finite category of wedge words and generated cellular maps.

    Objects are wedge words over 0..maxlevel of length at most ``max_word``;
    morphisms are the cellular maps generated by identities, the induced
    maps of ordinal morphisms, and the wedge inclusions, closed under
    composition and (cap-respecting) wedging.  Maps are identified by their
    action on cells.  Returns (category, tensor tables, id-of-map lookup).
    """
    from .fincat import FinCat

    words = [
        w
        for length in range(max_word + 1)
        for w in itertools.product(range(maxlevel + 1), repeat=length)
    ]
    word_id = {w: json.dumps(list(w)) for w in words}

    def map_id(f: CellularMap) -> str:
        action = sorted(
            (list(c[1]), c[0], f.cell_action(c)[0], list(f.cell_action(c)[1]))
            for c in f.source.all_cells()
        )
        action = [
            [[piece, verts], [q, list(mapped)]]
            for (verts, piece, q, mapped) in action
        ]
        return json.dumps(
            [list(f.source.word), list(f.target.word), action],
            separators=(",", ":"),
        )

    maps: dict[str, CellularMap] = {}

    def add(f: CellularMap) -> str:
        k = map_id(f)
        if k not in maps:
            maps[k] = f
        return k

    for w in words:
        add(identity_cellular(PointedDeltaComplex(w)))
    for m in range(maxlevel + 1):
        for n in range(maxlevel + 1):
            for f in enumerate_hom(m, n):
                add(induced_map_W(f, maxlevel))
            if m + n <= maxlevel:
                add(build_omega(m, n, maxlevel))
    add(omega0())

    changed = True
    while changed:
        changed = False
        current = list(maps.values())
        for f in current:
            for g in current:
                if f.target.word == g.source.word:
                    k = map_id(compose_cellular(g, f))
                    if k not in maps:
                        maps[k] = compose_cellular(g, f)
                        changed = True
                if (
                    len(f.source.word) + len(g.source.word) <= max_word
                    and len(f.target.word) + len(g.target.word) <= max_word
                ):
                    k = map_id(wedge_map([f, g]))
                    if k not in maps:
                        maps[k] = wedge_map([f, g])
                        changed = True

    morphisms = tuple(
        (k, word_id[m.source.word], word_id[m.target.word])
        for k, m in sorted(maps.items())
    )
    identities = {
        word_id[w]: map_id(identity_cellular(PointedDeltaComplex(w))) for w in words
    }
    composition = {}
    by_word: dict[tuple[int, ...], list[str]] = {}
    for k, m in maps.items():
        by_word.setdefault(m.source.word, []).append(k)
    for k, m in maps.items():
        for k2 in by_word.get(m.target.word, ()):
            composition[(k2, k)] = map_id(compose_cellular(maps[k2], m))
    cat = FinCat(
        tuple(word_id[w] for w in words), morphisms, identities, composition,
        name=f"cells<= {maxlevel}",
    )

    tensor_obj = {
        (word_id[a], word_id[b]): word_id[a + b]
        for a in words
        for b in words
        if len(a) + len(b) <= max_word
    }
    tensor_mor = {}
    for k, m in maps.items():
        for k2, m2 in maps.items():
            if (
                len(m.source.word) + len(m2.source.word) <= max_word
                and len(m.target.word) + len(m2.target.word) <= max_word
            ):
                tensor_mor[(k, k2)] = map_id(wedge_map([m, m2]))
    return cat, tensor_obj, tensor_mor, map_id


def comonoid_as_colax(maxlevel: int = 2):
    """Package the collapsed-simplex comonoid as colax data over the
    opposite of the cellular site, for the generic validator."""
    from .fincat import FunctorData, opposite
    from .monoidal import delta_monoidal, strict_monoidal, ColaxData

    cat, tensor_obj, tensor_mor, map_id = cellular_site(maxlevel)
    op = opposite(cat)
    target = strict_monoidal(
        op, tensor_obj, tensor_mor, json.dumps([]), partial=True,
        name="cells-op",
    )
    source = delta_monoidal(maxlevel)
    functor = FunctorData(
        source.base,
        op,
        {str(n): json.dumps([n]) for n in range(maxlevel + 1)},
        {
            f.id: map_id(induced_map_W(f, maxlevel))
            for m in range(maxlevel + 1)
            for n in range(maxlevel + 1)
            for f in enumerate_hom(m, n)
        },
    )
    comparisons = {
        (str(m), str(n)): map_id(build_omega(m, n, maxlevel))
        for m in range(maxlevel + 1)
        for n in range(maxlevel + 1)
        if m + n <= maxlevel
    }
    return ColaxData(source, target, functor, comparisons, map_id(omega0()))


def verify_comonoid(
    maxlevel: int, max_size: int = DEFAULT_MAX_SIMPLEX
) -> Report:
    """Certify the comonoid structure on the collapsed simplices.

    Checks, for all levels within ``maxlevel``: strict co-naturality of the
    wedge inclusions against the induced maps, strict co-associativity,
    both counit laws, and quasi-isomorphy of every inclusion.
    """
    if maxlevel > max_size:
        raise TooLarge(f"maxlevel {maxlevel} exceeds bound {max_size}")
    rep = Report()
    levels = range(maxlevel + 1)

    bad = []
    mors = [
        f
        for m in levels
        for n in levels
        for f in enumerate_hom(m, n)
    ]
    for f in mors:
        for g in mors:
            if f.dom + g.dom > maxlevel or f.cod + g.cod > maxlevel:
                continue
            lhs = compose_cellular(
                build_omega(f.dom, g.dom, max_size),
                wedge_map([induced_map_W(f, max_size), induced_map_W(g, max_size)]),
            )
            rhs = compose_cellular(
                induced_map_W(ordinal_sum(f, g), max_size),
                build_omega(f.cod, g.cod, max_size),
            )
            if not cellular_equal(lhs, rhs):
                bad.append(f"({f.id}, {g.id}) at {cellular_diff(lhs, rhs)[0]}")
    rep.add("co-naturality", bad)

    bad = []
    for m in levels:
        for n in levels:
            for p in levels:
                if m + n + p > maxlevel:
                    continue
                left = compose_cellular(
                    build_omega(m + n, p, max_size),
                    wedge_map(
                        [build_omega(m, n, max_size), identity_cellular(collapsed_simplex(p, max_size))]
                    ),
                )
                right = compose_cellular(
                    build_omega(m, n + p, max_size),
                    wedge_map(
                        [identity_cellular(collapsed_simplex(m, max_size)), build_omega(n, p, max_size)]
                    ),
                )
                if not cellular_equal(left, right):
                    bad.append(f"({m},{n},{p}) at {cellular_diff(left, right)[0]}")
    rep.add("co-associativity", bad)

    bad = []
    for n in levels:
        w_n = collapsed_simplex(n, max_size)
        # wedging with the point is literally the identity on words, so the
        # counit laws are plain equalities with the identity map
        right_path = compose_cellular(
            build_omega(n, 0, max_size),
            wedge_map([identity_cellular(w_n), omega0()]),
        )
        if not cellular_equal(right_path, identity_cellular(w_n)):
            bad.append(f"right({n})")
        left_path = compose_cellular(
            build_omega(0, n, max_size),
            wedge_map([omega0(), identity_cellular(w_n)]),
        )
        if not cellular_equal(left_path, identity_cellular(w_n)):
            bad.append(f"left({n})")
    rep.add("counit", bad)

    bad = []
    for m in levels:
        for n in levels:
            if m + n > maxlevel:
                continue
            ok, _ = check_quasi_iso(build_omega(m, n, max_size))
            if not ok:
                bad.append(f"omega({m},{n})")
    ok, _ = check_quasi_iso(omega0())
    if not ok:
        bad.append("omega0")
    rep.add("quasi-isomorphism", bad)
    return rep
