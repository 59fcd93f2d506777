"""Dictionary-backed sparse polynomial arithmetic shared by Scalar and A0Poly.

A polynomial is a dict mapping a monomial to a nonzero rational (an int or
a Fraction; ints are kept as they are since they are much cheaper).  A monomial
is a sorted tuple of ``(variable, exponent)`` pairs with positive exponents;
the empty tuple is the constant monomial.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

ONE_MONO: tuple = ()


def mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for var, e in b:
        exps[var] = exps.get(var, 0) + e
    return tuple(sorted(exps.items()))


def add_into(acc: dict, poly: dict, scale=1) -> None:
    for mono, c in poly.items():
        v = acc.get(mono, 0) + scale * c
        if v:
            acc[mono] = v
        else:
            acc.pop(mono, None)


def add(a: dict, b: dict) -> dict:
    out = dict(a)
    add_into(out, b)
    return out


def neg(a: dict) -> dict:
    return {m: -c for m, c in a.items()}


def scale(a: dict, s) -> dict:
    if not s:
        return {}
    return {m: c * s for m, c in a.items()}


def mul(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mono_mul(ma, mb)
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def const(c) -> dict:
    if type(c) is not int:
        c = Fraction(c)
    return {ONE_MONO: c} if c else {}


def variable(var) -> dict:
    return {((var, 1),): 1}


def power(a: dict, e: int) -> dict:
    out = const(1)
    base = a
    while e:
        if e & 1:
            out = mul(out, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return out


def affine_power(var, a, b, e: int) -> dict:
    """Expand ``(a*var + b)**e`` binomially."""
    out: dict = {}
    for k in range(e + 1):
        c = comb(e, k) * Fraction(a) ** k * Fraction(b) ** (e - k)
        if c:
            out[((var, k),) if k else ONE_MONO] = c
    return out


def substitute(poly: dict, images: dict, power_of) -> dict:
    """Replace variables by polynomials.

    ``images`` maps a variable to its image (variables absent stay put);
    ``power_of(var, e)`` returns the image of ``var**e`` and is expected to
    be memoised by the caller when it matters.
    """
    out: dict = {}
    for mono, c in poly.items():
        term = const(c)
        kept = []
        for var, e in mono:
            if var in images:
                term = mul(term, power_of(var, e))
            else:
                kept.append((var, e))
        if kept:
            term = mul(term, {tuple(kept): Fraction(1)})
        add_into(out, term)
    return out


def degree(mono: tuple) -> int:
    return sum(e for _, e in mono)


def render(poly: dict, var_name, *, spaced: bool = True) -> str:
    """Render as ``2*s^2 - 1/3``; highest total degree first."""
    if not poly:
        return "0"

    def key(item):
        mono, _ = item
        return (-degree(mono), tuple((str(v), -e) for v, e in mono))

    pieces = []
    for mono, c in sorted(poly.items(), key=key):
        mag = abs(c)
        factors = [var_name(v) + (f"^{e}" if e > 1 else "") for v, e in mono]
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        pieces.append(("-" if c < 0 else "+", body))
    sep = " " if spaced else ""
    first_sign, first = pieces[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        text += f"{sep}{sign}{sep}{body}"
    return text
