"""The block of a weight as modules over C_E, checked through explicit maps.

Each vertex U of the quiver gets the projective P(p^(U)) and its generator
v_U; each arrow becomes a ModHom chasing v_U to a power of X_i or Y_i times
the neighbouring generator.  Every relation is decided by evaluating
WeightVectors, independent of the path normal form in ``quiver``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable

from .classify import integral_indices
from .modules import InducedModule, ModHom, hom_dim
from .quiver import PathNF, Vertex, reduce_word, subsets, vertex_label
from .weyl import Int, Weight, WeylElement, lattice_difference


class BlockError(ValueError):
    pass


def _integer_at(p: Weight, i: int) -> int:
    c = p[i]
    if not c.is_int:
        raise BlockError(f"coordinate {i} of {p} is not an integer")
    return c.value


def weight_pU(p: Weight, U: Iterable[int]) -> Weight:
    """Move p across the walls in U: negatives go to 0, nonnegatives to -1."""
    out = p
    for i in sorted(set(U)):
        out = out.with_value(i, Int(0) if _integer_at(p, i) < 0 else Int(-1))
    return out


def vertex_of_weight(p: Weight, m: Weight) -> Vertex:
    """Integer coordinates where m sits on the other side of the wall from p."""
    delta = lattice_difference(m, p)
    if delta is None:
        raise BlockError(f"{m} is not in the lattice coset of {p}")
    out = set()
    for i in delta.support:
        a, b = p[i], m[i]
        if a.is_int and (a.value >= 0) != (b.value >= 0):
            out.add(i)
    return frozenset(out)


def _exponent(p: Weight, i: int) -> int:
    v = _integer_at(p, i)
    return -v if v < 0 else v + 1


def generator_word(p: Weight, i: int, direction: str) -> WeylElement:
    """The element carrying one generator to the other along coordinate i."""
    negative = _integer_at(p, i) < 0
    k = _exponent(p, i)
    if direction == "alpha":
        return WeylElement.Y(i, k) if negative else WeylElement.X(i, k)
    if direction == "beta":
        return WeylElement.X(i, k) if negative else WeylElement.Y(i, k)
    raise BlockError(f"direction must be alpha or beta, not {direction!r}")


def block_generator_map(p: Weight, U: Iterable[int], i: int, direction: str) -> ModHom:
    """alpha: P(p^(U)) -> P(p^(U+i)) and beta: P(p^(U+i)) -> P(p^(U))."""
    U = frozenset(U)
    if i in U:
        raise BlockError(f"coordinate {i} already lies in {vertex_label(U)}")
    lower = InducedModule(weight_pU(p, U))
    upper = InducedModule(weight_pU(p, U | {i}))
    a = generator_word(p, i, direction)
    if direction == "alpha":
        source, target = lower, upper
    else:
        source, target = upper, lower
    image = target.act(a, target.generator())
    if image.weights() and image.weights() != {source.base}:
        raise BlockError(f"image of the generator has the wrong weight for {direction}_{i}")
    return ModHom(source, target, image)


def arrow_hom(p: Weight, U: Iterable[int], i: int) -> ModHom:
    """The map attached to the arrow U -> U toggled at i."""
    U = frozenset(U)
    if i in U:
        return block_generator_map(p, U - {i}, i, "beta")
    return block_generator_map(p, U, i, "alpha")


def identity_hom(p: Weight, U: Iterable[int]) -> ModHom:
    P = InducedModule(weight_pU(p, U))
    return ModHom(P, P, P.generator())


def word_hom(p: Weight, U: Iterable[int], coords: Iterable[int]) -> ModHom:
    """Chase the generator along an arrow word, first arrow first."""
    current = frozenset(U)
    h = identity_hom(p, current)
    for i in coords:
        h = h.then(arrow_hom(p, current, i))
        current = current ^ {i}
    return h


def path_hom(p: Weight, path: PathNF) -> ModHom | None:
    """Composite along the sorted route of a reduced path; None for Zero."""
    if path.is_zero:
        return None
    return word_hom(p, path.source, sorted(path.toggles))


@dataclass
class BlockReport:
    p: Weight
    E: tuple
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def count(self, name: str) -> None:
        self.checks[name] = self.checks.get(name, 0) + 1

    def fail(self, name: str, what: str, lhs, rhs) -> None:
        self.failures.append({"check": name, "identity": what, "lhs": str(lhs), "rhs": str(rhs)})

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "E": list(self.E),
            "passed": self.passed,
            "checks": dict(sorted(self.checks.items())),
            "failures": self.failures,
        }


def _check_E(p: Weight, E) -> tuple:
    E = tuple(sorted(set(E)))
    J = integral_indices(p)
    if J.is_empty():
        raise BlockError("p has no integral coordinates: the block is semisimple (modules over k)")
    if not E:
        raise BlockError("E must be nonempty")
    outside = [i for i in E if i not in J]
    if outside:
        raise BlockError(f"E contains non-integral coordinates {outside}")
    return E


def verify_block(p: Weight, E: Iterable[int], words: int = 64, seed: int = 0) -> BlockReport:
    """Check that the projectives P(p^(U)), U in E, realize C_E.

    Beyond the relation checks, ``words`` random arrow words are chased and
    compared against their normal form.
    """
    E = _check_E(p, E)
    report = BlockReport(p, E)
    V = subsets(E)

    for U in V:
        pU = weight_pU(p, U)
        if vertex_of_weight(p, pU) != U:
            report.fail("vertex", f"U(p^{vertex_label(U)})", vertex_label(vertex_of_weight(p, pU)), vertex_label(U))
        report.count("vertex")

    for U in V:
        for i in E:
            if i in U:
                continue
            a = block_generator_map(p, U, i, "alpha")
            b = block_generator_map(p, U, i, "beta")
            for name, h in (("alpha", a), ("beta", b)):
                report.count("nonzero generator map")
                if h.is_zero():
                    report.fail("nonzero generator map", f"{name}_{vertex_label(U)},{i}", h.image, "nonzero")
            for what, h in ((f"beta.alpha at {vertex_label(U)},{i}", a.then(b)),
                            (f"alpha.beta at {vertex_label(U)},{i}", b.then(a))):
                report.count("back-and-forth is zero")
                if not h.is_zero():
                    report.fail("back-and-forth is zero", what, h.image, 0)

    for U in V:
        for i, j in combinations(E, 2):
            one = word_hom(p, U, (i, j))
            two = word_hom(p, U, (j, i))
            report.count("commuting square")
            if one.image != two.image:
                report.fail("commuting square", f"square at {vertex_label(U)} on {i},{j}", one.image, two.image)

    for U in V:
        for W in V:
            path = PathNF(U, U ^ W)
            h = path_hom(p, path)
            report.count("reduced path nonzero")
            if h.is_zero():
                report.fail("reduced path nonzero", str(path), h.image, "nonzero")
            d = hom_dim(weight_pU(p, U), InducedModule(weight_pU(p, W)))
            report.count("hom dimension")
            if d != 1:
                report.fail("hom dimension", f"dim Hom(P(p^{vertex_label(U)}), P(p^{vertex_label(W)}))", d, 1)

    rng = random.Random(seed)
    for _ in range(words):
        U = rng.choice(V)
        coords = [rng.choice(E) for _ in range(rng.randint(1, 2 * len(E) + 1))]
        _check_word(p, U, coords, report)

    for U, (i, j, k) in product(V, product(E, repeat=3)):
        _check_word(p, U, (i, j, k), report)
    return report


def _check_word(p: Weight, U, coords, report: BlockReport) -> None:
    nf = reduce_word(U, coords)
    h = word_hom(p, U, coords)
    report.count("word chase")
    what = f"word {list(coords)} from {vertex_label(U)}"
    if nf.is_zero:
        if not h.is_zero():
            report.fail("word chase", what, h.image, 0)
        return
    expected = path_hom(p, nf)
    if h.image != expected.image:
        report.fail("word chase", what, h.image, expected.image)
