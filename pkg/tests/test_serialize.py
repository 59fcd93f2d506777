from __future__ import annotations

import json
from fractions import Fraction

import pytest

from helpers import random_element, random_shift, random_weight, rng
from weylwt import serialize as ser
from weylwt.modules import dual, realize, theta_twist
from weylwt.localization import localize, phi_twist
from weylwt.scalars import Scalar
from weylwt.weyl import A0Poly, IndexSet, Int, NonInt, Shift, Weight

s = Scalar.symbol("s")


def _json_cycle(obj):
    return json.loads(json.dumps(obj))


def test_weight_round_trip():
    r = rng("serialize-weight")
    for _ in range(100):
        p = random_weight(r, k=4)
        data = ser.weight_to_json(p)
        assert ser.weight_from_json(_json_cycle(data)) == p
        assert ser.weight_to_json(ser.weight_from_json(data)) == data


def test_small_schemas_round_trip():
    r = rng("serialize-small")
    for J in (IndexSet.finite([1, 3]), IndexSet.all_but([2]), IndexSet.all_but([])):
        assert ser.index_set_from_json(_json_cycle(ser.index_set_to_json(J))) == J
    for _ in range(30):
        v = random_shift(r)
        assert ser.shift_from_json(_json_cycle(ser.shift_to_json(v))) == v
        a = random_element(r)
        assert ser.element_from_json(_json_cycle(ser.element_to_json(a))) == a
    for x in (Scalar(), s * s * 2 - Scalar.const(Fraction(1, 3)), s + 1):
        assert ser.scalar_from_json(_json_cycle(ser.scalar_to_json(x))) == x
    q = A0Poly.t(1) * A0Poly.t(2) + 3
    assert ser.a0_from_json(_json_cycle(ser.a0_to_json(q))) == q


def test_module_and_vector_round_trip():
    p = Weight.of({1: Int(2), 2: NonInt(1, "s", 0)})
    L = realize("L", p)
    modules = [
        realize("B", p),
        L,
        theta_twist({1}, L),
        dual(realize("N", p)),
        theta_twist({2}, dual(L)),
        localize(L, {1}),
        phi_twist(localize(realize("L", Weight.of({})), {1}), Shift({1: 2})),
    ]
    for M in modules:
        data = ser.module_to_json(M)
        again = ser.module_from_json(_json_cycle(data))
        assert again == M
        assert ser.module_to_json(again) == data
    v = L.monomial(p, s) + L.monomial(p.with_value(1, Int(0)), 3)
    assert ser.vector_from_json(_json_cycle(ser.vector_to_json(v)), L) == v


def test_parse_index_set():
    assert ser.parse_index_set("{1,2}") == IndexSet.finite([1, 2])
    assert ser.parse_index_set("1, 2") == IndexSet.finite([1, 2])
    assert ser.parse_index_set("{}") == IndexSet.finite([])
    assert ser.parse_index_set("all") == IndexSet.all_but([])
    assert ser.parse_index_set("all-{3}") == IndexSet.all_but([3])
    with pytest.raises(ser.SchemaError):
        ser.parse_index_set("{1,,2}")


@pytest.mark.parametrize(
    "payload,pointer",
    [
        ({"default": {"kind": "int", "value": "x"}}, "/default/value"),
        ({"overrides": {"2": {"kind": "nonint", "sign": 2, "symbol": "s"}}}, "/overrides/2/sign"),
        ({"overrides": {"a": {"kind": "int", "value": 1}}}, "/overrides/a"),
        ({"overrides": {"1": {"kind": "real", "value": 1}}}, "/overrides/1/kind"),
        ({"colour": 1}, "/colour"),
        ({"default": {"kind": "int", "value": True}}, "/default/value"),
    ],
)
def test_schema_errors_carry_pointers(payload, pointer):
    with pytest.raises(ser.SchemaError) as info:
        ser.weight_from_json(payload)
    assert info.value.path == pointer


def test_module_schema_errors():
    with pytest.raises(ser.SchemaError) as info:
        ser.module_from_json({"label": "Q", "base": {}})
    assert info.value.path == "/label"
    with pytest.raises(ser.SchemaError) as info:
        ser.module_from_json({"label": "Dual"})
    assert info.value.path == "/inner"


def test_load_payload(tmp_path):
    f = tmp_path / "p.json"
    f.write_text('{"default": {"kind": "int", "value": 1}}')
    assert ser.load_payload(str(f)) == {"default": {"kind": "int", "value": 1}}
    with pytest.raises(ser.SchemaError, match="malformed JSON"):
        ser.load_payload("{oops")
