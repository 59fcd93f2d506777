"""Classification of simple weight modules by the sets bar(p)."""

from __future__ import annotations

from dataclasses import dataclass

from .modules import realize
from .scalars import Scalar
from .weyl import (
    IndexSet,
    Weight,
    WeylElement,
    indices_where,
    joint_indices,
    lattice_difference,
    theta_weight,
)


def _same_class(a, b) -> bool:
    if not a.is_int:
        return True
    return (a.value >= 0) == (b.value >= 0)


def bar_contains(p: Weight, k: Weight) -> bool:
    """Whether k lies in bar(p), the support of L(p)."""
    if lattice_difference(k, p) is None:
        return False
    if not _same_class(p.default, k.default):
        return False
    return all(_same_class(p[i], k[i]) for i in joint_indices(p, k))


def equivalent(p: Weight, q: Weight) -> bool:
    return bar_contains(p, q) and bar_contains(q, p)


def is_isomorphic_simple(p: Weight, q: Weight) -> bool:
    """L(p) = L(q) exactly when q lies in bar(p)."""
    return bar_contains(p, q)


def negative_indices(p: Weight) -> IndexSet:
    return indices_where(p, lambda c: c.is_int and c.value < 0)


def integral_indices(p: Weight) -> IndexSet:
    """J_p: the coordinates where p is an integer."""
    return indices_where(p, lambda c: c.is_int)


def in_k_plus(p: Weight) -> bool:
    return negative_indices(p).is_empty()


@dataclass(frozen=True)
class CanonicalForm:
    p_plus: Weight
    J: IndexSet


def canonical_form(p: Weight) -> CanonicalForm:
    """(p_+, J) with p_+ in k^I_+ and J the negative integral coordinates.

    theta_weight(J, p_+) recovers p, so L(p) = L(p_+)^{theta_J}.
    """
    J = negative_indices(p)
    return CanonicalForm(theta_weight(J, p), J)


def block_key(p: Weight) -> Weight:
    """Representative of the coset p + Z_f^N.

    Integers go to 0 and non-integers to offset 0.  The sign of a symbol is
    kept: s + Z and -s + Z are different cosets.
    """
    return p.map(lambda c: c.normalized())


def simple_class(p: Weight) -> tuple[Weight, IndexSet]:
    """A complete invariant of L(p): (block of p_+, J)."""
    form = canonical_form(p)
    return block_key(form.p_plus), form.J


@dataclass(frozen=True)
class Reachability:
    ok: bool
    word: tuple
    coefficient: Scalar
    diagnostic: str = ""

    def element(self) -> WeylElement:
        out = WeylElement.const(1)
        for g, i in self.word:
            out = (WeylElement.X(i) if g == "X" else WeylElement.Y(i)) * out
        return out


def simple_reachability(p: Weight, m_from: Weight, m_to: Weight) -> Reachability:
    """Carry x^{m_from} to a nonzero multiple of x^{m_to} inside L(p).

    The word is applied generator by generator (rightmost first); every
    intermediate vector must stay nonzero.
    """
    for name, m in (("source", m_from), ("target", m_to)):
        if not bar_contains(p, m):
            raise ValueError(f"{name} weight {m} is outside bar({p})")
    L = realize("L", p)
    delta = lattice_difference(m_to, m_from)
    word = []
    for i, k in delta.items():
        word.extend([("X" if k > 0 else "Y", i)] * abs(k))
    v = L.monomial(m_from)
    for step, (g, i) in enumerate(word):
        v = L.act_generator(g, i, v)
        if v.is_zero():
            return Reachability(False, tuple(word), Scalar(), f"vanished at step {step} ({g}{i})")
    c = v.coefficient(m_to)
    ok = not c.is_zero() and len(v.terms) == 1
    return Reachability(ok, tuple(word), c, "" if ok else "landed outside the target weight")


def describe_index_set(J: IndexSet) -> dict:
    if J.cofinite:
        return {"kind": "cofinite", "except": sorted(J.listed)}
    return {"kind": "finite", "indices": sorted(J.listed)}
