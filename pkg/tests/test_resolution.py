from __future__ import annotations

from collections import Counter
from fractions import Fraction

import pytest

from oracles import tensor_betti
from weylwt.quiver import subsets
from weylwt.resolution import (
    ResolutionError,
    build_module,
    dual_module,
    expected_total,
    koszul_check,
    minimal_resolution,
    projective,
    projective_cover,
    radical,
    simple,
    totalized_betti,
)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_projective_and_simple_dimensions(n):
    E = range(1, n + 1)
    for U in subsets(E):
        P = build_module("projective", U, E)
        assert P.dim == 2**n
        assert radical(P) == 2**n - 1
        assert P.check_grading() == [] and P.check_relations() == []
        assert build_module("simple", U, E).dim == 1


def test_cover_of_simple_and_projective():
    E = (1, 2)
    S = simple({1}, E)
    cover = projective_cover(S)
    assert cover.generators == [(frozenset({1}), 0)]
    assert cover.minimal and cover.exact
    assert cover.kernel.dim == 3
    assert projective_cover(projective({1}, E)).kernel.dim == 0


def test_cover_of_radical_in_one_variable():
    E = (1,)
    P = projective((), E)
    rad = projective_cover(simple((), E)).kernel
    assert rad.dim == 1 and radical(P) == 1
    cover = projective_cover(rad)
    assert cover.generators == [(frozenset({1}), 1)]
    # kernel: the one-dimensional radical of P_{1}<1>, sitting at the empty vertex in degree 2
    assert cover.kernel.basis == [(frozenset(), 2)]


def test_non_minimal_cover_is_flagged():
    E = (1,)
    S = simple((), E)
    (key, g), = S.top()
    doubled = projective_cover(S, [(key, g), (key, {0: Fraction(2)})])
    assert not doubled.minimal
    assert doubled.surjective


@pytest.mark.parametrize("n,upto", [(1, 6), (2, 5), (3, 3)])
def test_betti_tables_match_tensor_oracle(n, upto):
    E = tuple(range(1, n + 1))
    for U in subsets(E):
        table = minimal_resolution(U, E, upto).betti
        oracle = tensor_betti(U, E, upto)
        for k in range(upto + 1):
            assert Counter(table.entries.get(k, Counter())) == oracle.get(k, Counter())
            assert table.total(k) == expected_total(k, n)
        assert table == totalized_betti(U, E, upto)


def test_one_variable_resolution_alternates():
    table = minimal_resolution((), (1,), 6).betti
    for k in range(7):
        target = frozenset({1}) if k % 2 else frozenset()
        assert table.entries[k] == Counter({(target, k): 1})


def test_koszul_report():
    report = koszul_check((1, 2), 3)
    assert report.koszul and report.violations == []
    assert set(report.tables) == set(subsets((1, 2)))
    assert report.to_json()["certified_up_to_degree"] == 3


def test_minimal_resolution_rejects_bad_input():
    with pytest.raises(ValueError):
        minimal_resolution({3}, (1, 2), 2)
    with pytest.raises(ValueError):
        minimal_resolution((), (1,), -1)
    assert issubclass(ResolutionError, RuntimeError)


@pytest.mark.parametrize("E", [(1,), (1, 2)])
def test_projectives_are_self_injective(E):
    for U in subsets(E):
        P = projective(U, E)
        assert P.socle_dim() == 1
        D = dual_module(P)
        assert D.check_relations() == []
        assert len(D.top()) == 1
        # the transpose is again projective: its cover has no kernel
        assert projective_cover(D).kernel.dim == 0


def test_betti_rendering():
    table = minimal_resolution((), (1, 2), 2).betti
    text = table.render_text()
    assert text.splitlines()[0].split()[0] == "k\\d"
    assert table.to_json()
