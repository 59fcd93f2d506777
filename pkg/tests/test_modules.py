from __future__ import annotations

import pytest

from helpers import random_weight, relation_failures, rng
from weylwt.modules import (
    DUAL_PLAIN,
    DUAL_TWISTED,
    PLAIN,
    TWISTED,
    Constraint,
    InducedModule,
    dual,
    find_iso_failure,
    hom_dim,
    hom_from_projective,
    induced_act,
    iso_on_box,
    nilpotency_index,
    probe_indices,
    realize,
    theta_twist,
)
from weylwt.scalars import Scalar
from weylwt.weyl import Int, NonInt, Shift, Weight, WeylElement, sigma_shift, theta_weight

X, Y, t = WeylElement.X, WeylElement.Y, WeylElement.t
s = Scalar.symbol("s")
ZERO_P = Weight.of({})


def test_mode_duality_and_twist():
    assert PLAIN.dual() == DUAL_PLAIN and DUAL_PLAIN.dual() == PLAIN
    assert TWISTED.dual() == DUAL_TWISTED and DUAL_TWISTED.dual() == TWISTED
    assert PLAIN.twisted() == TWISTED
    assert PLAIN.twisted().twisted().twisted().twisted() == PLAIN


def test_act_examples():
    B = realize("B", ZERO_P)
    v = B.monomial(Weight.of({1: Int(3)}))
    assert B.act(Y(1), v) == B.monomial(Weight.of({1: Int(2)}), 3)

    p = Weight.of({1: Int(-1)})
    L = realize("L", p)
    assert L.act(X(1), L.monomial(p)).is_zero()

    q = Weight.of({1: NonInt(1, "s", 0)})
    Bq = realize("B", q)
    assert Bq.act(Y(1), Bq.monomial(q)) == Bq.monomial(sigma_shift(q, Shift.unit(1, -1)), s)


def test_l_of_zero_is_polynomial_representation():
    L = realize("L", ZERO_P)
    assert L.support.default is Constraint.GEQ0
    assert not L.support_contains(Weight.of({4: Int(-1)}))


def test_supports():
    p = Weight.of({1: Int(2), 2: NonInt(1, "s", 0)})
    B = realize("B", p)
    assert B.support_contains(sigma_shift(p, Shift({1: -9, 2: 4, 7: -3})))
    L = realize("L", p)
    assert not L.support_contains(p.with_value(1, Int(-1)))
    Lneg = realize("L", Weight.of({1: Int(-1)}))
    assert Lneg.support_contains(Weight.of({1: Int(-5)}))
    r = rng("dual-support")
    for _ in range(30):
        q = random_weight(r, k=3)
        m = sigma_shift(q, Shift({1: r.randint(-3, 3), 2: r.randint(-3, 3)}))
        for label in ("B", "N", "NPrime", "L"):
            M = realize(label, q)
            assert dual(M).support_contains(m) == M.support_contains(m)


def test_twisted_support_maps_by_theta():
    r = rng("twist-support")
    for _ in range(30):
        p = random_weight(r, k=3)
        M = realize("L", p)
        T = theta_twist({1, 3}, M)
        for k in range(-3, 4):
            m = sigma_shift(p, Shift({1: k, 3: -k}))
            assert T.support_contains(theta_weight({1, 3}, m)) == M.support_contains(m)


def test_theta_twist_rejects_infinite_index_set():
    from weylwt.weyl import IndexSet

    with pytest.raises(ValueError):
        theta_twist(IndexSet.all_but([1]), realize("B", ZERO_P))


def test_relations_on_realized_modules():
    r = rng("module-relations")
    for _ in range(40):
        p = random_weight(r, k=3)
        for M in (realize("B", p), realize("L", p), theta_twist({2}, realize("L", p)), dual(realize("B", p))):
            for m in list(M.labels_in_box(1, [1, 2]))[:4]:
                i, j = r.choice([1, 2, 5]), r.choice([1, 2, 5])
                assert relation_failures(M, M.monomial(m), i, j) == []


def test_n_over_n_prime_is_l():
    # with at most one negative integral coordinate, supp N minus supp N' is bar(p)
    p = Weight.of({1: Int(-2), 2: Int(1), 3: NonInt(1, "s", 0)})
    N, Np, L = realize("N", p), realize("NPrime", p), realize("L", p)
    for m in N.labels_in_box(3, [1, 2, 3]):
        assert (N.contains_label(m) and not Np.contains_label(m)) == L.contains_label(m)


def test_induced_action():
    p = Weight.of({1: NonInt(1, "s", 0)})
    P = InducedModule(p)
    g = P.generator()
    assert induced_act(p, t(1), g) == g.scale(s)
    assert induced_act(p, Y(1) * X(1), g) == g.scale(s + 1)
    r = rng("induced")
    for _ in range(10):
        v = Shift({1: r.randint(-3, 3), 2: r.randint(-3, 3)})
        w = sigma_shift(p, v)
        assert P.weight_space(w) == P.basis_vector(v)


def test_hom_from_projective():
    p = Weight.of({1: Int(-1), 2: Int(-3)}, default=Int(-1))
    B = realize("B", p)
    h = hom_from_projective(p, B, B.monomial(p))
    assert not h.is_zero()
    assert hom_from_projective(p, B, B.zero()).is_zero()
    assert hom_dim(p, B) == 1
    assert hom_dim(p, realize("B", Weight.of({1: NonInt(1, "s", 0)}))) == 0
    mixed = B.monomial(p) + B.monomial(sigma_shift(p, Shift.unit(1)))
    with pytest.raises(ValueError):
        hom_from_projective(p, B, mixed)


def test_projective_cover_of_b_on_box():
    p = Weight.of({1: Int(-2), 2: Int(-1)}, default=Int(-1))
    B = realize("B", p)
    h = hom_from_projective(p, B, B.monomial(p))
    assert iso_on_box(h, 3, probe_indices(p))


def test_iso_fails_with_nonnegative_coordinate():
    B = realize("B", ZERO_P)
    h = hom_from_projective(ZERO_P, B, B.monomial(ZERO_P))
    witness = find_iso_failure(h, 2, [1, 2])
    # Y_1 kills x^0, so the weight space at -e_1 is missed
    assert witness is not None and witness.degree() == 1 and min(k for _, k in witness.items()) == -1


def test_generator_chasing_matches_act():
    p = Weight.of({1: NonInt(1, "s", 2)}, default=Int(-1))
    B = realize("B", p)
    h = hom_from_projective(p, B, B.monomial(p))
    P = h.source
    a = X(1, 2) * Y(3) + t(1) * Y(1)
    assert h.evaluate(P.act(a, P.generator())) == B.act(a, B.monomial(p))


def test_all_ones_default_local_nilpotency():
    p = Weight.of({}, default=Int(1))
    L = realize("L", p)
    v = L.monomial(p) + L.monomial(sigma_shift(p, Shift({2: 3})), 2)
    assert nilpotency_index(L, "Y", 2, v) == 5
    assert not L.act_generator("Y", 9, v).is_zero()
