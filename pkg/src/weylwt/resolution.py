"""Graded C_E-modules, minimal projective covers and Betti tables.

A C_E-module is a graded vector space split over the vertices, with one
operator A_i per coordinate (the arrows toggling i); these raise degree by
one, square to zero and commute.  Everything is finite-dimensional and
computed exactly over Q.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable

from . import linalg
from .quiver import Vertex, arrow, identity, path_compose, subsets, vertex_label


class ResolutionError(RuntimeError):
    pass


@dataclass
class GradedModule:
    """Basis elements carry (vertex, degree); ``ops[i][b]`` is A_i applied to b."""

    E: tuple
    basis: list
    ops: dict

    @property
    def dim(self) -> int:
        return len(self.basis)

    def blocks(self) -> dict:
        out = defaultdict(list)
        for b, key in enumerate(self.basis):
            out[key].append(b)
        return dict(out)

    def apply(self, i: int, vec: dict) -> dict:
        out: dict = {}
        for b, c in vec.items():
            for b2, k in self.ops[i][b].items():
                v = out.get(b2, 0) + c * k
                if v:
                    out[b2] = v
                else:
                    out.pop(b2, None)
        return out

    def apply_path(self, toggles: Iterable[int], vec: dict) -> dict:
        for i in sorted(toggles):
            vec = self.apply(i, vec)
        return vec

    def check_grading(self) -> list[str]:
        problems = []
        for i in self.E:
            for b, image in enumerate(self.ops[i]):
                V, d = self.basis[b]
                for b2 in image:
                    if self.basis[b2] != (V ^ {i}, d + 1):
                        problems.append(f"A_{i} sends {b} to the wrong component")
        return problems

    def check_relations(self) -> list[str]:
        problems = []
        for b in range(self.dim):
            e = {b: Fraction(1)}
            for i in self.E:
                if self.apply(i, self.apply(i, e)):
                    problems.append(f"A_{i}^2 != 0 on basis element {b}")
                for j in self.E:
                    if j > i and self.apply(i, self.apply(j, e)) != self.apply(j, self.apply(i, e)):
                        problems.append(f"A_{i}A_{j} != A_{j}A_{i} on basis element {b}")
        return problems

    def radical_rows(self, key) -> tuple[list[int], list[list[Fraction]]]:
        """Block coordinates of rad(M) in component ``key`` = (vertex, degree)."""
        blocks = self.blocks()
        idx = blocks.get(key, [])
        pos = {b: k for k, b in enumerate(idx)}
        V, d = key
        rows = []
        for i in self.E:
            for b in blocks.get((V ^ {i}, d - 1), []):
                image = self.ops[i][b]
                if image:
                    row = [Fraction(0)] * len(idx)
                    for b2, c in image.items():
                        row[pos[b2]] = Fraction(c)
                    rows.append(row)
        return idx, rows

    def top(self) -> list[tuple[tuple, dict]]:
        """Homogeneous basis vectors spanning a complement of the radical."""
        gens = []
        for key in sorted(self.blocks(), key=_block_order):
            idx, rows = self.radical_rows(key)
            for k in linalg.complement_of_span(rows, len(idx)):
                gens.append((key, {idx[k]: Fraction(1)}))
        return gens

    def socle_dim(self) -> int:
        total = 0
        for key, idx in self.blocks().items():
            rows = []
            for i in self.E:
                # columns: basis elements of the block; rows: images in all other blocks
                targets = sorted({b2 for b in idx for b2 in self.ops[i][b]})
                for b2 in targets:
                    rows.append([Fraction(self.ops[i][b].get(b2, 0)) for b in idx])
            total += len(linalg.nullspace(rows, len(idx)))
        return total


def _block_order(key):
    V, d = key
    return (d, len(V), sorted(V))


def projective(U: Iterable[int], E: Iterable[int], shift: int = 0) -> GradedModule:
    """P_U<shift>: basis the reduced paths out of U, acted on by post-composition."""
    E = tuple(sorted(set(E)))
    U = frozenset(U)
    paths = [path_compose(identity(U), _toggle_path(U, T)) for T in subsets(E)]
    index = {p.toggles: k for k, p in enumerate(paths)}
    basis = [(p.target, shift + p.length) for p in paths]
    ops = {}
    for i in E:
        col = []
        for p in paths:
            q = path_compose(p, arrow(p.target, i))
            col.append({} if q.is_zero else {index[q.toggles]: Fraction(1)})
        ops[i] = col
    return GradedModule(E, basis, ops)


def _toggle_path(U, T):
    path = identity(U)
    for i in sorted(T):
        path = path_compose(path, arrow(path.target, i))
    return path


def simple(U: Iterable[int], E: Iterable[int], shift: int = 0) -> GradedModule:
    E = tuple(sorted(set(E)))
    return GradedModule(E, [(frozenset(U), shift)], {i: [{}] for i in E})


def build_module(kind: str, U: Iterable[int], E: Iterable[int]) -> GradedModule:
    if kind == "projective":
        return projective(U, E)
    if kind == "simple":
        return simple(U, E)
    raise ValueError(f"unknown module kind {kind!r}")


def radical(M: GradedModule) -> int:
    """Dimension of rad(M)."""
    return sum(linalg.rank(rows) for key in M.blocks() for _, rows in [M.radical_rows(key)] if rows)


def dual_module(M: GradedModule) -> GradedModule:
    """Vector-space dual with transposed arrows and negated degrees.

    The quiver is symmetric and so are its relations, so this is again a
    C_E-module.
    """
    basis = [(V, -d) for V, d in M.basis]
    ops = {}
    for i in M.E:
        col = [dict() for _ in range(M.dim)]
        for b, image in enumerate(M.ops[i]):
            for b2, c in image.items():
                col[b2][b] = c
        ops[i] = col
    return GradedModule(M.E, basis, ops)


@dataclass
class Cover:
    generators: list          # (vertex, degree) of each summand P_V<d>
    source: GradedModule      # the direct sum of projectives
    images: list              # image in M of each source basis element
    kernel: GradedModule
    kernel_vectors: list      # kernel basis in source coordinates
    minimal: bool
    surjective: bool
    exact: bool


def projective_cover(M: GradedModule, generators: list | None = None) -> Cover:
    """Projective cover of M with its kernel.

    ``generators`` defaults to a basis of a complement of rad(M), which makes
    the cover minimal; a caller may pass a redundant list, in which case the
    returned certificate reports ``minimal=False``.
    """
    gens = M.top() if generators is None else generators
    E = M.E
    sub = [projective(V, E, d) for (V, d), _ in gens]
    basis, images, offsets = [], [], []
    for (key, g), P in zip(gens, sub):
        offsets.append(len(basis))
        for (W, e), T in zip(P.basis, subsets(E)):
            basis.append((W, e))
            images.append(M.apply_path(T, g))
    ops = {i: [] for i in E}
    for off, P in zip(offsets, sub):
        for i in E:
            for image in P.ops[i]:
                ops[i].append({off + b: c for b, c in image.items()})
    source = GradedModule(E, basis, ops)
    generator_slots = set(offsets)

    mblocks = M.blocks()
    kernel_vectors, kernel_basis = [], []
    rank_pi = 0
    for key, idx in sorted(source.blocks().items(), key=lambda kv: _block_order(kv[0])):
        midx = mblocks.get(key, [])
        mpos = {b: k for k, b in enumerate(midx)}
        rows = [[Fraction(0)] * len(idx) for _ in midx]
        for col, b in enumerate(idx):
            for mb, c in images[b].items():
                rows[mpos[mb]][col] = Fraction(c)
        if midx:
            rank_pi += linalg.rank(rows)
        for x in linalg.nullspace(rows, len(idx)):
            vec = {idx[k]: c for k, c in enumerate(x) if c}
            kernel_vectors.append(vec)
            kernel_basis.append(key)

    by_block = defaultdict(list)
    for k, key in enumerate(kernel_basis):
        by_block[key].append(k)
    kops = {}
    for i in E:
        col = []
        for vec, (V, d) in zip(kernel_vectors, kernel_basis):
            image = source.apply(i, vec)
            target_key = (V ^ {i}, d + 1)
            members = by_block.get(target_key, [])
            if not image:
                col.append({})
                continue
            sidx = sorted({b for k in members for b in kernel_vectors[k]} | set(image))
            spos = {b: n for n, b in enumerate(sidx)}
            vecs = [[Fraction(0)] * len(sidx) for _ in members]
            for row, k in zip(vecs, members):
                for b, c in kernel_vectors[k].items():
                    row[spos[b]] = c
            target = [Fraction(0)] * len(sidx)
            for b, c in image.items():
                target[spos[b]] = c
            coeffs = linalg.coordinates(vecs, target)
            col.append({members[n]: c for n, c in enumerate(coeffs) if c})
        kops[i] = col
    kernel = GradedModule(E, kernel_basis, kops)

    minimal = all(not (set(vec) & generator_slots) for vec in kernel_vectors)
    surjective = rank_pi == M.dim
    exact = surjective and len(kernel_vectors) == source.dim - rank_pi
    return Cover([key for key, _ in gens], source, images, kernel, kernel_vectors, minimal, surjective, exact)


@dataclass
class BettiTable:
    """Homological degree -> Counter over (vertex, internal degree)."""

    entries: dict = field(default_factory=dict)

    def record(self, k: int, generators: Iterable[tuple]) -> None:
        self.entries[k] = Counter(generators)

    def total(self, k: int) -> int:
        return sum(self.entries.get(k, Counter()).values())

    def degrees(self) -> list[int]:
        return sorted(self.entries)

    def is_linear(self) -> bool:
        return all(d == k for k, row in self.entries.items() for (_, d) in row)

    def violations(self) -> list[tuple]:
        return [(k, sorted(V), d) for k, row in self.entries.items() for (V, d) in row if d != k]

    def matrix(self) -> tuple[list[int], list[int], list[list[int]]]:
        ks = self.degrees()
        ds = sorted({d for row in self.entries.values() for (_, d) in row}) or [0]
        ds = list(range(min(ds), max(ds) + 1))
        grid = [[sum(n for (V, d), n in self.entries[k].items() if d == col) for col in ds] for k in ks]
        return ks, ds, grid

    def render_text(self) -> str:
        ks, ds, grid = self.matrix()
        width = max([len(str(x)) for row in grid for x in row] + [len(str(d)) for d in ds] + [1])
        head = "k\\d " + " ".join(str(d).rjust(width) for d in ds)
        lines = [head]
        for k, row in zip(ks, grid):
            lines.append(f"{str(k).rjust(3)} " + " ".join((str(x) if x else ".").rjust(width) for x in row))
        return "\n".join(lines)

    def to_json(self) -> dict:
        out = {}
        for k in self.degrees():
            out[str(k)] = [
                {"vertex": sorted(V), "degree": d, "multiplicity": n}
                for (V, d), n in sorted(self.entries[k].items(), key=lambda kv: (kv[0][1], sorted(kv[0][0])))
            ]
        return out

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        keys = set(self.entries) | set(other.entries)
        return all(+self.entries.get(k, Counter()) == +other.entries.get(k, Counter()) for k in keys)


@dataclass
class Resolution:
    vertex: Vertex
    E: tuple
    betti: BettiTable
    covers: list


def minimal_resolution(U: Iterable[int], E: Iterable[int], upto: int) -> Resolution:
    """Iterated minimal projective covers of the simple S_U, degrees 0..upto."""
    if upto < 0:
        raise ValueError("upto must be nonnegative")
    E = tuple(sorted(set(E)))
    U = frozenset(U)
    if not U <= set(E):
        raise ValueError(f"vertex {vertex_label(U)} is not a subset of E")
    M = simple(U, E)
    betti = BettiTable()
    covers = []
    for k in range(upto + 1):
        problems = M.check_grading() + M.check_relations()
        if problems:
            raise ResolutionError(f"syzygy {k} is not a C_E-module: {problems[0]}")
        cover = projective_cover(M)
        if not cover.minimal:
            raise ResolutionError(f"cover at degree {k} is not minimal")
        if not cover.exact:
            raise ResolutionError(f"rank bookkeeping fails at degree {k}")
        betti.record(k, cover.generators)
        covers.append(cover)
        M = cover.kernel
    return Resolution(U, E, betti, covers)


def totalized_betti(U: Iterable[int], E: Iterable[int], upto: int) -> BettiTable:
    """Betti table of the tensor product of the rank-one linear resolutions.

    Over C_{i} the simple at a vertex has resolution with one summand in each
    degree k, at the vertex toggled k times and internal degree k.
    """
    E = tuple(sorted(set(E)))
    U = frozenset(U)
    table = BettiTable()
    for k in range(upto + 1):
        counts = Counter()
        for ks in product(range(k + 1), repeat=len(E)):
            if sum(ks) != k:
                continue
            V = U ^ {i for i, ki in zip(E, ks) if ki % 2}
            counts[(frozenset(V), k)] += 1
        if not E:
            counts = Counter({(U, 0): 1}) if k == 0 else Counter()
        table.record(k, counts.elements())
    return table


def expected_total(k: int, n: int) -> int:
    return comb(k + n - 1, n - 1) if n else int(k == 0)


def default_upto(n: int) -> int:
    return {0: 2, 1: 6, 2: 5, 3: 4}.get(n, 3)


@dataclass
class KoszulReport:
    E: tuple
    upto: int
    koszul: bool
    violations: list
    tables: dict

    def to_json(self) -> dict:
        return {
            "E": list(self.E),
            "upto": self.upto,
            "koszul": self.koszul,
            "certified_up_to_degree": self.upto,
            "violations": [
                {"vertex": sorted(U), "k": k, "entry_vertex": V, "degree": d} for U, k, V, d in self.violations
            ],
            "betti": {vertex_label(U): t.to_json() for U, t in self.tables.items()},
        }


def koszul_check(E: Iterable[int], upto: int | None = None) -> KoszulReport:
    """Linearity of the minimal resolution of every simple, up to ``upto``."""
    E = tuple(sorted(set(E)))
    upto = default_upto(len(E)) if upto is None else upto
    tables, violations = {}, []
    for U in subsets(E):
        res = minimal_resolution(U, E, upto)
        tables[U] = res.betti
        violations.extend((U, k, V, d) for k, V, d in res.betti.violations())
    return KoszulReport(E, upto, not violations, violations, tables)
