"""JSON encodings of weights, scalars, algebra elements, modules and vectors.

Every ``*_from_json`` validates its payload and raises SchemaError with a
JSON-pointer style path to the offending field.
"""

from __future__ import annotations

import json
import os
import re
from fractions import Fraction

from .localization import localize, phi_twist
from .modules import BASIC_KINDS, Construction, MonomialModule, WeightVector, dual, realize, theta_twist
from .scalars import Scalar
from .weyl import A0Poly, IndexSet, Int, NonInt, Shift, Weight, WeylElement


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path or "/"
        self.message = message


def _at(path: str, key) -> str:
    return f"{path}/{key}"


def _expect(value, types, path: str, what: str):
    if not isinstance(value, types) or (isinstance(value, bool) and types is int):
        raise SchemaError(path, f"expected {what}, got {type(value).__name__}")
    return value


def _object(value, path: str, required=(), optional=()) -> dict:
    _expect(value, dict, path, "an object")
    for key in required:
        if key not in value:
            raise SchemaError(_at(path, key), "missing field")
    extra = set(value) - set(required) - set(optional)
    if extra:
        raise SchemaError(_at(path, sorted(extra)[0]), "unexpected field")
    return value


def _integer(value, path: str) -> int:
    return _expect(value, int, path, "an integer")


def _index(key, path: str) -> int:
    if isinstance(key, int) and not isinstance(key, bool):
        i = key
    elif isinstance(key, str) and re.fullmatch(r"\d+", key):
        i = int(key)
    else:
        raise SchemaError(path, f"expected a natural-number index, got {key!r}")
    if i < 0:
        raise SchemaError(path, "indices are natural numbers")
    return i


def _fraction(value, path: str) -> Fraction:
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            pass
    raise SchemaError(path, f"expected a rational like \"-3/4\", got {value!r}")


# ---------------------------------------------------------------------------
# coordinates and weights
# ---------------------------------------------------------------------------


def coord_to_json(c) -> dict:
    if c.is_int:
        return {"kind": "int", "value": c.value}
    return {"kind": "nonint", "sign": c.sign, "symbol": c.symbol, "offset": c.offset}


def coord_from_json(obj, path: str = ""):
    _object(obj, path, required=("kind",), optional=("value", "sign", "symbol", "offset"))
    kind = obj["kind"]
    if kind == "int":
        _object(obj, path, required=("kind", "value"))
        return Int(_integer(obj["value"], _at(path, "value")))
    if kind == "nonint":
        _object(obj, path, required=("kind", "sign", "symbol"), optional=("offset",))
        sign = _integer(obj["sign"], _at(path, "sign"))
        if sign not in (1, -1):
            raise SchemaError(_at(path, "sign"), "sign must be 1 or -1")
        symbol = _expect(obj["symbol"], str, _at(path, "symbol"), "a symbol name")
        offset = _integer(obj.get("offset", 0), _at(path, "offset"))
        try:
            return NonInt(sign, symbol, offset)
        except ValueError as exc:
            raise SchemaError(_at(path, "symbol"), str(exc)) from None
    raise SchemaError(_at(path, "kind"), f"kind must be 'int' or 'nonint', got {kind!r}")


def weight_to_json(p: Weight) -> dict:
    return {
        "default": coord_to_json(p.default),
        "overrides": {str(i): coord_to_json(c) for i, c in p.items()},
    }


def weight_from_json(obj, path: str = "") -> Weight:
    _object(obj, path, optional=("default", "overrides"))
    default = coord_from_json(obj["default"], _at(path, "default")) if "default" in obj else Int(0)
    raw = obj.get("overrides", {})
    _expect(raw, dict, _at(path, "overrides"), "an object of index -> coordinate")
    overrides = {}
    for key, value in raw.items():
        p = _at(_at(path, "overrides"), key)
        overrides[_index(key, p)] = coord_from_json(value, p)
    return Weight.of(overrides, default=default)


def index_set_to_json(J: IndexSet):
    if J.cofinite:
        return {"all_but": sorted(J.listed)}
    return sorted(J.listed)


def index_set_from_json(obj, path: str = "") -> IndexSet:
    if isinstance(obj, list):
        return IndexSet.finite(_index(k, _at(path, n)) for n, k in enumerate(obj))
    _object(obj, path, required=("all_but",))
    raw = _expect(obj["all_but"], list, _at(path, "all_but"), "a list of indices")
    return IndexSet.all_but(_index(k, _at(_at(path, "all_but"), n)) for n, k in enumerate(raw))


def parse_index_set(text: str) -> IndexSet:
    """Command-line form: ``{1,2}``, ``1,2``, ``all`` or ``all-{3}``."""
    s = text.replace(" ", "")
    if s == "all":
        return IndexSet.all_but()
    m = re.fullmatch(r"all-\{([\d,]*)\}", s)
    if m:
        return IndexSet.all_but(_split_indices(m.group(1), text))
    m = re.fullmatch(r"\{?([\d,]*)\}?", s)
    if m:
        return IndexSet.finite(_split_indices(m.group(1), text))
    raise SchemaError("/", f"cannot read index set {text!r}; use e.g. {{1,2}}")


def _split_indices(body: str, text: str) -> list[int]:
    parts = [x for x in body.split(",") if x]
    if len(parts) != len(body.split(",")) and body:
        raise SchemaError("/", f"malformed index list in {text!r}")
    return [int(x) for x in parts]


def shift_to_json(v: Shift) -> dict:
    return {str(i): k for i, k in v.items()}


def shift_from_json(obj, path: str = "") -> Shift:
    _expect(obj, dict, path, "an object of index -> integer")
    return Shift({_index(k, _at(path, k)): _integer(x, _at(path, k)) for k, x in obj.items()})


# ---------------------------------------------------------------------------
# scalars, A0 polynomials and algebra elements
# ---------------------------------------------------------------------------


def scalar_to_json(s: Scalar) -> dict:
    return s.to_json()


def _terms_from_json(obj, path: str, var) -> dict:
    _object(obj, path, required=("terms",))
    raw = _expect(obj["terms"], list, _at(path, "terms"), "a list of terms")
    out: dict = {}
    for n, term in enumerate(raw):
        tp = _at(_at(path, "terms"), n)
        _object(term, tp, required=("coeff",), optional=("exps",))
        c = _fraction(term["coeff"], _at(tp, "coeff"))
        exps = _expect(term.get("exps", {}), dict, _at(tp, "exps"), "an object of variable -> exponent")
        mono = []
        for v, e in exps.items():
            ep = _at(_at(tp, "exps"), v)
            e = _integer(e, ep)
            if e < 0:
                raise SchemaError(ep, "exponents are nonnegative")
            if e:
                mono.append((var(v, ep), e))
        key = tuple(sorted(mono))
        out[key] = out.get(key, 0) + c
    return out


def _symbol(v, path):
    _expect(v, str, path, "a symbol name")
    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
        raise SchemaError(path, f"invalid symbol name {v!r}")
    return v


def scalar_from_json(obj, path: str = "") -> Scalar:
    return Scalar(_terms_from_json(obj, path, _symbol))


def a0_to_json(q: A0Poly) -> dict:
    terms = []
    for mono, c in sorted(q.terms.items()):
        terms.append({"coeff": str(c), "exps": {str(i): e for i, e in mono}})
    return {"terms": terms}


def a0_from_json(obj, path: str = "") -> A0Poly:
    return A0Poly(_terms_from_json(obj, path, _index))


def element_to_json(a: WeylElement) -> list:
    return [{"shift": shift_to_json(v), "a0poly": a0_to_json(q)} for v, q in a.items()]


def element_from_json(obj, path: str = "") -> WeylElement:
    _expect(obj, list, path, "a list of {shift, a0poly} records")
    out = WeylElement()
    for n, rec in enumerate(obj):
        rp = _at(path, n)
        _object(rec, rp, required=("shift", "a0poly"))
        out = out + WeylElement.monomial(
            shift_from_json(rec["shift"], _at(rp, "shift")), a0_from_json(rec["a0poly"], _at(rp, "a0poly"))
        )
    return out


# ---------------------------------------------------------------------------
# module descriptors
# ---------------------------------------------------------------------------


def construction_to_json(c: Construction) -> dict:
    if c.kind in BASIC_KINDS:
        return {"label": c.kind, "base": weight_to_json(c.weight)}
    if c.kind == "ThetaTwist" and c.inner.kind in BASIC_KINDS:
        out = construction_to_json(c.inner)
        out["twist"] = sorted(c.J.listed)
        return out
    inner = construction_to_json(c.inner)
    if c.kind == "ThetaTwist":
        return {"label": "ThetaTwist", "J": sorted(c.J.listed), "inner": inner}
    if c.kind == "Dual":
        return {"label": "Dual", "inner": inner}
    if c.kind == "Localized":
        return {"label": "Localized", "J": index_set_to_json(c.J), "inner": inner}
    if c.kind == "Phi":
        return {"label": "Phi", "shift": shift_to_json(c.shift), "inner": inner}
    raise ValueError(f"cannot serialize construction {c.kind}")


def construction_from_json(obj, path: str = "") -> Construction:
    _object(obj, path, required=("label",), optional=("base", "twist", "inner", "J", "shift"))
    label = obj["label"]
    if label in BASIC_KINDS:
        _object(obj, path, required=("label", "base"), optional=("twist",))
        base = Construction(label, weight=weight_from_json(obj["base"], _at(path, "base")))
        twist = obj.get("twist", [])
        _expect(twist, list, _at(path, "twist"), "a list of indices")
        J = index_set_from_json(twist, _at(path, "twist"))
        return Construction("ThetaTwist", J=J, inner=base) if not J.is_empty() else base
    if label == "Dual":
        _object(obj, path, required=("label", "inner"))
        return Construction("Dual", inner=construction_from_json(obj["inner"], _at(path, "inner")))
    if label in ("ThetaTwist", "Localized"):
        _object(obj, path, required=("label", "J", "inner"))
        J = index_set_from_json(obj["J"], _at(path, "J"))
        if label == "ThetaTwist" and not J.is_finite:
            raise SchemaError(_at(path, "J"), "theta-twists need a finite index set")
        return Construction(label, J=J, inner=construction_from_json(obj["inner"], _at(path, "inner")))
    if label == "Phi":
        _object(obj, path, required=("label", "shift", "inner"))
        return Construction(
            "Phi",
            shift=shift_from_json(obj["shift"], _at(path, "shift")),
            inner=construction_from_json(obj["inner"], _at(path, "inner")),
        )
    raise SchemaError(_at(path, "label"), f"unknown module label {label!r}")


def build(c: Construction) -> MonomialModule:
    if c.kind in BASIC_KINDS:
        return realize(c.kind, c.weight)
    inner = build(c.inner)
    if c.kind == "ThetaTwist":
        return theta_twist(c.J, inner)
    if c.kind == "Dual":
        return dual(inner)
    if c.kind == "Localized":
        return localize(inner, c.J)
    if c.kind == "Phi":
        return phi_twist(inner, c.shift)
    raise ValueError(f"unknown construction {c.kind}")


def module_from_json(obj, path: str = "") -> MonomialModule:
    c = construction_from_json(obj, path)
    try:
        return build(c)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def module_to_json(M: MonomialModule) -> dict:
    return construction_to_json(M.tag)


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------


def vector_to_json(v: WeightVector) -> list:
    M = v.module
    return [{"weight": weight_to_json(M.weight_of(m)), "scalar": scalar_to_json(c)} for m, c in v.items()]


def vector_from_json(obj, M: MonomialModule, path: str = "") -> WeightVector:
    _expect(obj, list, path, "a list of {weight, scalar} records")
    terms: dict = {}
    for n, rec in enumerate(obj):
        rp = _at(path, n)
        _object(rec, rp, required=("weight", "scalar"))
        w = weight_from_json(rec["weight"], _at(rp, "weight"))
        if not M.support_contains(w):
            raise SchemaError(_at(rp, "weight"), f"weight {w} is not in the support of {M}")
        m = M.label_of(w)
        terms[m] = terms.get(m, Scalar()) + scalar_from_json(rec["scalar"], _at(rp, "scalar"))
    return M.vector(terms)


# ---------------------------------------------------------------------------
# payload loading
# ---------------------------------------------------------------------------


def load_payload(text: str, path_hint: str = ""):
    """Inline JSON, or the contents of a file when ``text`` names one."""
    source = text
    if not text.lstrip().startswith(("{", "[")) and os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            source = fh.read()
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise SchemaError(path_hint, f"malformed JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from None
