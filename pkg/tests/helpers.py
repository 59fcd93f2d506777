"""Random inputs shared by the test modules."""

from __future__ import annotations

import os
import random
from itertools import product

from oracles import apply_element, monomial

from weylwt.weyl import Int, NonInt, Shift, Weight, WeylElement

SEED = int(os.environ.get("WEYLWT_SEED", "20240601"))
SYMBOLS = ("s", "u")


def rng(salt: str = "") -> random.Random:
    return random.Random(f"{SEED}:{salt}")


def random_coord(r: random.Random, kinds=("neg", "nonneg", "nonint")):
    kind = r.choice(kinds)
    if kind == "neg":
        return Int(r.randint(-4, -1))
    if kind == "nonneg":
        return Int(r.randint(0, 4))
    return NonInt(r.choice((1, -1)), r.choice(SYMBOLS), r.randint(-2, 2))


def random_weight(r: random.Random, indices=range(1, 5), kinds=("neg", "nonneg", "nonint"), default=None, k=None):
    """A weight with up to ``k`` overrides on ``indices`` (all of them if k is None)."""
    chosen = list(indices) if k is None else r.sample(list(indices), r.randint(0, min(k, len(indices))))
    overrides = {i: random_coord(r, kinds) for i in chosen}
    if default is None:
        default = r.choice([Int(0), Int(-1), NonInt(1, "w", 0)])
    return Weight.of(overrides, default=default)


def random_shift(r: random.Random, indices=range(1, 5), size: int = 2) -> Shift:
    return Shift({i: r.randint(-size, size) for i in indices})


def random_element(r: random.Random, indices=(1, 2, 3), max_degree: int = 3, terms: int = 3) -> WeylElement:
    """Sum of products of generators and t's with total degree at most ``max_degree``."""
    out = WeylElement()
    for _ in range(r.randint(1, terms)):
        piece = WeylElement.const(r.randint(-3, 3) or 1)
        for _ in range(r.randint(0, max_degree)):
            i = r.choice(indices)
            piece = piece * r.choice([WeylElement.X(i), WeylElement.Y(i), WeylElement.t(i) + r.randint(-1, 1)])
        out = out + piece
    return out


def relation_failures(M, v, i: int, j: int) -> list[str]:
    """Defining relations of A applied to v in M, generator by generator.

    Six checks: X and Y commute among themselves, X_i and Y_j commute for
    i != j in both orders, [Y_i, X_i] = 1, and X_i Y_i acts by the weight.
    """
    def g(name, k, w):
        return M.act_generator(name, k, w)

    out = []
    if g("X", i, g("X", j, v)) != g("X", j, g("X", i, v)):
        out.append("XX")
    if g("Y", i, g("Y", j, v)) != g("Y", j, g("Y", i, v)):
        out.append("YY")
    if i != j:
        if g("X", i, g("Y", j, v)) != g("Y", j, g("X", i, v)):
            out.append("XY")
        if g("Y", i, g("X", j, v)) != g("X", j, g("Y", i, v)):
            out.append("YX")
    if g("Y", i, g("X", i, v)) - g("X", i, g("Y", i, v)) != v:
        out.append("YX-XY=1")
    weighted = M.vector({m: c * M.weight_of(m)[i].as_scalar() for m, c in v.items()})
    if g("X", i, g("Y", i, v)) != weighted:
        out.append("t=weight")
    return out


def oracle_terms(a: WeylElement):
    """An element as plain (shift dict, t-polynomial dict) pairs for the oracle."""
    return [(v.as_dict(), q.terms) for v, q in a.items()]


def probe(a: WeylElement, indices=(1, 2, 3), top: int = 6) -> list:
    """Images under the defining representation of all x^e with exponents 0..top."""
    out = []
    for exps in product(range(top + 1), repeat=len(indices)):
        out.append(apply_element(oracle_terms(a), monomial(dict(zip(indices, exps)))))
    return out
