"""Exact scalars: polynomials over Q in transcendental, non-integer symbols.

Distinct symbol names are treated as algebraically independent and never
integral, so a Scalar is zero exactly when its polynomial is zero.
Division is deliberately absent; compare ratios by cross-multiplication.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from . import _sparse

Rational = Fraction

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def check_symbol(name: str) -> str:
    if not isinstance(name, str) or not _NAME.match(name):
        raise ValueError(f"invalid symbol name {name!r}")
    return name


class Scalar:
    """Element of Q[s_1, s_2, ...] in canonical sparse form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = c if type(c) is int else Fraction(c)
            if c:
                clean[tuple(sorted(mono))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Scalar":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "Scalar":
        return cls._raw(_sparse.const(c))

    @classmethod
    def symbol(cls, name: str) -> "Scalar":
        return cls._raw(_sparse.variable(check_symbol(name)))

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def constant_value(self) -> Fraction | None:
        """The rational value if the scalar has no symbolic part."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {()}:
            return self._terms[()]
        return None

    def symbols(self) -> set[str]:
        return {v for mono in self._terms for v, _ in mono}

    # arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar.const(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar._raw(_sparse.add(self._terms, other._terms))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(_sparse.neg(self._terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar._raw(_sparse.add(self._terms, _sparse.neg(other._terms)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if type(other) is not Scalar:
            if isinstance(other, (int, Fraction)):
                return Scalar._raw(_sparse.scale(self._terms, other))
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        a, b = self._terms, other._terms
        if len(a) == 1 and len(b) == 1 and () in a and () in b:
            return Scalar._raw({(): a[()] * b[()]})
        return Scalar._raw(_sparse.mul(a, b))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not available")
        return Scalar._raw(_sparse.power(self._terms, e))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # rendering --------------------------------------------------------
    def __str__(self):
        return _sparse.render(self._terms, str)

    def __repr__(self):
        return f"Scalar({self})"

    def to_json(self) -> dict:
        terms = []
        for mono, c in sorted(self._terms.items(), key=lambda kv: kv[0]):
            terms.append({"coeff": str(c), "exps": {v: e for v, e in mono}})
        return {"terms": terms}


def scalar_arith(op: str, a, b=None) -> Scalar:
    a = Scalar._coerce(a)
    if op == "neg":
        return -a
    b = Scalar._coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown scalar operation {op!r}")


def scalar_is_zero(a) -> bool:
    return Scalar._coerce(a).is_zero()


ZERO = Scalar.const(0)
ONE = Scalar.const(1)
