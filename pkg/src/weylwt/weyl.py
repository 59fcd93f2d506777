"""The Weyl algebra over the index set N = {0, 1, 2, ...}.

Weights are points of k^N stored as a default coordinate plus finitely many
overrides.  Elements of the algebra are kept in the normal form
``sum_v X_v * q_v(t)`` with the A0-coefficient on the right of the ordered
monomial ``X_v = prod_{v_i>0} X_i^{v_i} prod_{v_i<0} Y_i^{-v_i}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping

from . import _sparse
from .scalars import Scalar, check_symbol


# ---------------------------------------------------------------------------
# coordinate values
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _small_int(value: int) -> "Int":
    return Int(value)


@lru_cache(maxsize=8192)
def _nonint(sign: int, symbol: str, offset: int) -> "NonInt":
    return NonInt(sign, symbol, offset)


@dataclass(frozen=True)
class Int:
    value: int

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            raise TypeError(f"Int coordinate needs an int, got {self.value!r}")

    is_int = True

    def shift(self, k: int) -> "Int":
        return _small_int(self.value + k) if k else self

    def flip(self) -> "Int":
        """The coordinate map c -> -c - 1."""
        return Int(-self.value - 1)

    def coset(self):
        return ("int",)

    def sign_class(self) -> str:
        return "nonneg" if self.value >= 0 else "neg"

    def as_scalar(self) -> Scalar:
        return Scalar.const(self.value)

    def normalized(self) -> "Int":
        return Int(0)

    def sort_key(self):
        return (0, self.value)

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class NonInt:
    """The value ``sign * symbol + offset`` for a transcendental symbol."""

    sign: int
    symbol: str
    offset: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        check_symbol(self.symbol)
        if isinstance(self.offset, bool) or not isinstance(self.offset, int):
            raise TypeError(f"offset must be an int, got {self.offset!r}")

    is_int = False

    def shift(self, k: int) -> "NonInt":
        return _nonint(self.sign, self.symbol, self.offset + k) if k else self

    def flip(self) -> "NonInt":
        return NonInt(-self.sign, self.symbol, -self.offset - 1)

    def coset(self):
        return ("nonint", self.sign, self.symbol)

    def sign_class(self) -> None:
        return None

    def as_scalar(self) -> Scalar:
        return _symbolic_value(self.sign, self.symbol, self.offset)

    def normalized(self) -> "NonInt":
        return NonInt(self.sign, self.symbol, 0)

    def sort_key(self):
        return (1, self.symbol, self.sign, self.offset)

    def __str__(self):
        head = self.symbol if self.sign == 1 else f"-{self.symbol}"
        if self.offset > 0:
            return f"{head}+{self.offset}"
        if self.offset < 0:
            return f"{head}{self.offset}"
        return head


CoordValue = Int | NonInt


@lru_cache(maxsize=4096)
def _symbolic_value(sign: int, symbol: str, offset: int) -> Scalar:
    s = Scalar.symbol(symbol)
    return (s if sign == 1 else -s) + offset


def coord(x) -> CoordValue:
    if isinstance(x, (Int, NonInt)):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Int(x)
    raise TypeError(f"cannot interpret {x!r} as a coordinate value")


def coord_diff(a: CoordValue, b: CoordValue) -> int | None:
    """``a - b`` when both lie in the same Z-coset, else None."""
    if a.is_int and b.is_int:
        return a.value - b.value
    if not a.is_int and not b.is_int and a.coset() == b.coset():
        return a.offset - b.offset
    return None


def coord_add(a: CoordValue, b: CoordValue) -> CoordValue:
    """Sum of two coordinates; at least one of them must be an integer."""
    if a.is_int:
        return b.shift(a.value)
    if b.is_int:
        return a.shift(b.value)
    raise ValueError(f"sum {a} + {b} leaves the represented field")


def coord_sub(a: CoordValue, b: CoordValue) -> CoordValue:
    d = coord_diff(a, b)
    if d is not None:
        return Int(d)
    if b.is_int:
        return a.shift(-b.value)
    raise ValueError(f"difference {a} - {b} leaves the represented field")


# ---------------------------------------------------------------------------
# finitely overridden tables
# ---------------------------------------------------------------------------


def _check_index(i) -> int:
    if isinstance(i, bool) or not isinstance(i, int) or i < 0:
        raise ValueError(f"indices are natural numbers, got {i!r}")
    return i


class Pointwise:
    """A value at every natural index: a default plus finite overrides.

    Overrides equal to the default are dropped, so two tables are equal
    exactly when they agree at every index.
    """

    __slots__ = ("default", "_map", "_items", "_hash")

    def _coerce(self, v):
        return v

    def __init__(self, default, overrides: Mapping | Iterable = ()):
        default = self._coerce(default)
        items = overrides.items() if type(overrides) is dict or isinstance(overrides, Mapping) else overrides
        table = {}
        for i, v in items:
            v = self._coerce(v)
            if v != default:
                table[_check_index(i)] = v
        self.default = default
        self._map = table
        self._items = tuple(sorted(table.items()))
        self._hash = None

    @classmethod
    def _make(cls, default, table: dict):
        obj = cls.__new__(cls)
        obj.default = default
        obj._map = table
        obj._items = tuple(sorted(table.items()))
        obj._hash = None
        return obj

    def __getitem__(self, i: int):
        return self._map.get(i, self.default)

    @property
    def overrides(self) -> dict:
        return dict(self._map)

    @property
    def indices(self) -> tuple:
        return tuple(i for i, _ in self._items)

    def items(self):
        return self._items

    def _replace(self, i: int, v):
        """``with_value`` for an already coerced value at a valid index."""
        table = dict(self._map)
        if v == self.default:
            table.pop(i, None)
        else:
            table[i] = v
        return self._make(self.default, table)

    def with_value(self, i: int, v):
        v = self._coerce(v)
        table = dict(self._map)
        if v == self.default:
            table.pop(i, None)
        else:
            table[i if i in table else _check_index(i)] = v
        return self._make(self.default, table)

    def map(self, f: Callable):
        d = f(self.default)
        table = {}
        for i, v in self._items:
            w = f(v)
            if w != d:
                table[i] = w
        return self._make(d, table)

    def map_indexed(self, f: Callable, at: Iterable[int], default_f: Callable | None = None):
        """Apply ``f(i, value)`` at the listed indices, ``default_f`` elsewhere."""
        d = default_f(self.default) if default_f else self.default
        table = {}
        if default_f:
            for i, v in self._items:
                w = default_f(v)
                if w != d:
                    table[i] = w
        else:
            table = dict(self._map)
        for i in at:
            w = f(i, self[i])
            if w == d:
                table.pop(i, None)
            else:
                table[_check_index(i)] = w
        return self._make(d, table)

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and self.default == other.default
            and self._items == other._items
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.default, self._items))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{i}: {v}" for i, v in self._items)
        return f"{type(self).__name__}(default={self.default}, {{{body}}})"


def joint_indices(*tables: Pointwise) -> list[int]:
    seen = set()
    for t in tables:
        seen.update(t.indices)
    return sorted(seen)


class Weight(Pointwise):
    """A point of k^N."""

    __slots__ = ()

    def _coerce(self, v):
        return coord(v)

    @classmethod
    def of(cls, overrides: Mapping | None = None, default=0) -> "Weight":
        return cls(default, overrides or {})

    def sort_key(self):
        return (self.default.sort_key(), tuple((i, v.sort_key()) for i, v in self._items))

    def __str__(self):
        body = ", ".join(f"{i}:{v}" for i, v in self._items)
        return f"({self.default}; {body})" if body else f"({self.default})"


ZERO_WEIGHT = Weight(Int(0))


# ---------------------------------------------------------------------------
# shifts (the lattice Z_f^N)
# ---------------------------------------------------------------------------


class Shift:
    """Finitely supported integer vector; also the group H acting on weights."""

    __slots__ = ("_map", "_items", "_hash")

    def __init__(self, entries: Mapping[int, int] | Iterable = ()):
        items = entries.items() if type(entries) is dict or isinstance(entries, Mapping) else entries
        table = {}
        for i, k in items:
            if isinstance(k, bool) or not isinstance(k, int):
                raise TypeError(f"shift entries are integers, got {k!r}")
            if k:
                table[_check_index(i)] = table.get(i, 0) + k
                if not table[i]:
                    del table[i]
        self._map = table
        self._items = tuple(sorted(table.items()))
        self._hash = None

    @classmethod
    def _raw(cls, table: dict) -> "Shift":
        """Trusted constructor: ``table`` has valid indices and nonzero ints."""
        obj = cls.__new__(cls)
        obj._map = table
        obj._items = tuple(sorted(table.items()))
        obj._hash = None
        return obj

    @classmethod
    def unit(cls, i: int, k: int = 1) -> "Shift":
        return cls({i: k})

    def __getitem__(self, i: int) -> int:
        return self._map.get(i, 0)

    @property
    def support(self) -> tuple:
        return tuple(i for i, _ in self._items)

    def items(self):
        return self._items

    def as_dict(self) -> dict:
        return dict(self._map)

    def __bool__(self):
        return bool(self._map)

    def __add__(self, other: "Shift") -> "Shift":
        table = dict(self._map)
        for i, k in other._items:
            v = table.get(i, 0) + k
            if v:
                table[i] = v
            else:
                table.pop(i, None)
        return Shift._raw(table)

    def __neg__(self) -> "Shift":
        return Shift._raw({i: -k for i, k in self._items})

    def __sub__(self, other: "Shift") -> "Shift":
        return self + (-other)

    def degree(self) -> int:
        return sum(abs(k) for _, k in self._items)

    def __eq__(self, other):
        return isinstance(other, Shift) and self._items == other._items

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("Shift", self._items))
        return self._hash

    def __lt__(self, other):
        return self._items < other._items

    def __repr__(self):
        return f"Shift({dict(self._items)})"


ZERO_SHIFT = Shift()


def sigma_shift(p: Weight, v: Shift) -> Weight:
    """Translate p by v, keeping each coordinate in its Z-coset."""
    if not v:
        return p
    d = p.default
    table = dict(p._map)
    for i, k in v._items:
        w = table.get(i, d).shift(k)
        if w == d:
            table.pop(i, None)
        else:
            table[i] = w
    return p._make(d, table)


def lattice_difference(m: Weight, p: Weight) -> Shift | None:
    """The shift v with m = p + v, or None when m is outside p + Z_f^N."""
    if m.default != p.default:
        return None
    entries = {}
    for i in joint_indices(m, p):
        d = coord_diff(m[i], p[i])
        if d is None:
            return None
        if d:
            entries[i] = d
    return Shift(entries)


def in_lattice(m: Weight, p: Weight) -> bool:
    if m is p:
        return True
    if m.default != p.default:
        return False
    d = p.default
    for i, a in m._map.items():
        b = p._map.get(i, d)
        if a.is_int != b.is_int or (not a.is_int and a.coset() != b.coset()):
            return False
    for i, b in p._map.items():
        if i not in m._map and (b.is_int != d.is_int or (not b.is_int and b.coset() != d.coset())):
            return False
    return True


def weight_add(a: Weight, b: Weight) -> Weight:
    d = coord_add(a.default, b.default)
    table = {}
    for i in joint_indices(a, b):
        v = coord_add(a[i], b[i])
        if v != d:
            table[i] = v
    return Weight._make(d, table)


def weight_sub(a: Weight, b: Weight) -> Weight:
    d = coord_sub(a.default, b.default)
    table = {}
    for i in joint_indices(a, b):
        v = coord_sub(a[i], b[i])
        if v != d:
            table[i] = v
    return Weight._make(d, table)


# ---------------------------------------------------------------------------
# index sets: finite or cofinite subsets of N
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndexSet:
    """A finite set, or (``cofinite=True``) the complement of a finite set."""

    listed: frozenset = frozenset()
    cofinite: bool = False

    def __post_init__(self):
        object.__setattr__(self, "listed", frozenset(_check_index(i) for i in self.listed))

    @classmethod
    def finite(cls, indices: Iterable[int] = ()) -> "IndexSet":
        return cls(frozenset(indices), False)

    @classmethod
    def all_but(cls, excluded: Iterable[int] = ()) -> "IndexSet":
        return cls(frozenset(excluded), True)

    @classmethod
    def coerce(cls, x) -> "IndexSet":
        if isinstance(x, IndexSet):
            return x
        return cls.finite(x)

    def __contains__(self, i: int) -> bool:
        return (i in self.listed) != self.cofinite

    @property
    def is_finite(self) -> bool:
        return not self.cofinite

    def elements(self) -> list[int]:
        if self.cofinite:
            raise ValueError("a cofinite index set cannot be enumerated")
        return sorted(self.listed)

    def complement(self) -> "IndexSet":
        return IndexSet(self.listed, not self.cofinite)

    def union(self, other: "IndexSet") -> "IndexSet":
        other = IndexSet.coerce(other)
        if not self.cofinite and not other.cofinite:
            return IndexSet(self.listed | other.listed)
        if self.cofinite and other.cofinite:
            return IndexSet(self.listed & other.listed, True)
        fin, cof = (self, other) if other.cofinite else (other, self)
        return IndexSet(cof.listed - fin.listed, True)

    def intersection(self, other: "IndexSet") -> "IndexSet":
        other = IndexSet.coerce(other)
        return self.complement().union(other.complement()).complement()

    def difference(self, other: "IndexSet") -> "IndexSet":
        return self.intersection(IndexSet.coerce(other).complement())

    def issubset(self, other: "IndexSet") -> bool:
        return self.difference(other) == IndexSet()

    def is_empty(self) -> bool:
        return not self.cofinite and not self.listed

    def boundary(self) -> list[int]:
        """The finitely many indices needed to describe the set."""
        return sorted(self.listed)

    def __str__(self):
        body = "{" + ",".join(str(i) for i in sorted(self.listed)) + "}"
        if self.cofinite:
            return "all" if not self.listed else f"all-{body}"
        return body


def indices_where(p: Pointwise, pred: Callable) -> IndexSet:
    """The (finite or cofinite) set of indices whose value satisfies pred."""
    if pred(p.default):
        return IndexSet.all_but(i for i, v in p.items() if not pred(v))
    return IndexSet.finite(i for i, v in p.items() if pred(v))


def theta_weight(J, p: Weight) -> Weight:
    """Apply p_j -> -p_j - 1 on J."""
    J = IndexSet.coerce(J)
    if J.cofinite:
        # the default flips; the excluded indices keep their value
        table = {i: v.flip() for i, v in p.items() if i in J}
        for i in J.listed:
            table[i] = p[i]
        return Weight(p.default.flip(), table)
    return p.map_indexed(lambda i, c: c.flip(), J.elements())


# ---------------------------------------------------------------------------
# the commutative subalgebra A0 = k[t_i]
# ---------------------------------------------------------------------------


class A0Poly:
    """Polynomial in the commuting generators t_i = X_i Y_i."""

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
    def _raw(cls, terms: dict) -> "A0Poly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "A0Poly":
        return cls._raw(_sparse.const(c))

    @classmethod
    def t(cls, i: int) -> "A0Poly":
        return cls._raw(_sparse.variable(_check_index(i)))

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> set[int]:
        return {v for mono in self._terms for v, _ in mono}

    def degree(self) -> int:
        return max((_sparse.degree(m) for m in self._terms), default=0)

    def __add__(self, other):
        other = _as_a0(other)
        return A0Poly._raw(_sparse.add(self._terms, other._terms))

    __radd__ = __add__

    def __neg__(self):
        return A0Poly._raw(_sparse.neg(self._terms))

    def __sub__(self, other):
        return self + (-_as_a0(other))

    def __rsub__(self, other):
        return _as_a0(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return A0Poly._raw(_sparse.scale(self._terms, Fraction(other)))
        other = _as_a0(other)
        return A0Poly._raw(_sparse.mul(self._terms, other._terms))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = A0Poly.const(other)
        return isinstance(other, A0Poly) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def affine_substitute(self, rules: Mapping[int, tuple]) -> "A0Poly":
        """Substitute t_i -> a*t_i + b for each ``i: (a, b)`` in rules."""
        rules = {i: ab for i, ab in rules.items() if ab != (1, 0)}
        if not rules or not self._terms:
            return self
        cache: dict = {}

        def power_of(var, e):
            key = (var, e)
            if key not in cache:
                a, b = rules[var]
                cache[key] = _sparse.affine_power(var, a, b, e)
            return cache[key]

        return A0Poly._raw(_sparse.substitute(self._terms, rules, power_of))

    def shift_vars(self, v: Shift) -> "A0Poly":
        """q(t) -> q(t + v)."""
        return self.affine_substitute({i: (1, k) for i, k in v.items()})

    def evaluate(self, p: Weight) -> Scalar:
        return eval_a0(self, p)

    def __str__(self):
        return _sparse.render(self._terms, lambda i: f"t{i}", spaced=False)

    def __repr__(self):
        return f"A0Poly({self})"


def _as_a0(x) -> A0Poly:
    if isinstance(x, A0Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return A0Poly.const(x)
    raise TypeError(f"cannot use {x!r} as an A0 polynomial")


def eval_a0(q: A0Poly, p: Weight) -> Scalar:
    """Substitute t_i -> p_i."""
    total = Scalar()
    powers: dict = {}
    for mono, c in q._terms.items():
        term = Scalar.const(c)
        for i, e in mono:
            key = (i, e)
            if key not in powers:
                powers[key] = p[i].as_scalar() ** e
            term = term * powers[key]
        total = total + term
    return total


# ---------------------------------------------------------------------------
# normal-form elements
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _falling(k: int, start: int) -> dict:
    """prod_{j=0}^{k-1} (t - start - j) as a one-variable sparse poly in var 0."""
    out = _sparse.const(1)
    for j in range(k):
        out = _sparse.mul(out, _sparse.add(_sparse.variable(0), _sparse.const(-start - j)))
    return out


@lru_cache(maxsize=4096)
def _rising(k: int, start: int) -> dict:
    """prod_{j=1}^{k} (t + start + j)."""
    out = _sparse.const(1)
    for j in range(1, k + 1):
        out = _sparse.mul(out, _sparse.add(_sparse.variable(0), _sparse.const(start + j)))
    return out


def _relabel(poly: dict, i: int) -> A0Poly:
    return A0Poly._raw({tuple((i, e) for _, e in mono): c for mono, c in poly.items()})


def merge_factor(i: int, a: int, b: int) -> A0Poly | None:
    """Right coefficient f with (coord-i part of X_v)(coord-i part of X_w) = X_{v+w} f.

    ``a`` and ``b`` are the i-th entries of v and w.  Returns None for 1.
    """
    if a >= 0 and b >= 0 or a <= 0 and b <= 0:
        return None
    if a > 0:
        nb = -b  # X^a Y^nb
        if a >= nb:
            return _relabel(_falling(nb, 0), i)
        # X^a Y^a Y^c with the coefficient moved right past Y^c
        return _relabel(_falling(a, nb - a), i)
    na = -a  # Y^na X^b
    if na >= b:
        return _relabel(_rising(b, 0), i)
    return _relabel(_rising(na, b - na), i)


class WeylElement:
    """Finite sum of X_v * q_v(t), keyed by shift v."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Shift, A0Poly] | None = None):
        clean = {}
        for v, q in (terms or {}).items():
            q = _as_a0(q)
            if not q.is_zero():
                clean[v] = q
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "WeylElement":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors ------------------------------------------------------
    @classmethod
    def const(cls, c) -> "WeylElement":
        return cls({ZERO_SHIFT: A0Poly.const(c)})

    @classmethod
    def monomial(cls, v: Shift, q: A0Poly | int = 1) -> "WeylElement":
        return cls({v: q})

    @classmethod
    def X(cls, i: int, k: int = 1) -> "WeylElement":
        return cls.monomial(Shift.unit(i, k))

    @classmethod
    def Y(cls, i: int, k: int = 1) -> "WeylElement":
        return cls.monomial(Shift.unit(i, -k))

    @classmethod
    def t(cls, i: int) -> "WeylElement":
        return cls.monomial(ZERO_SHIFT, A0Poly.t(i))

    @classmethod
    def from_a0(cls, q: A0Poly) -> "WeylElement":
        return cls.monomial(ZERO_SHIFT, q)

    # access --------------------------------------------------------------
    def items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def indices(self) -> set[int]:
        out = set()
        for v, q in self._terms.items():
            out.update(v.support)
            out.update(q.variables())
        return out

    def degree(self) -> int:
        """Total degree with deg X_i = deg Y_i = 1 and deg t_i = 2."""
        return max((v.degree() + 2 * q.degree() for v, q in self._terms.items()), default=0)

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = _as_weyl(other)
        out = dict(self._terms)
        for v, q in other._terms.items():
            s = out[v] + q if v in out else q
            if s.is_zero():
                out.pop(v, None)
            else:
                out[v] = s
        return WeylElement._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._raw({v: -q for v, q in self._terms.items()})

    def __sub__(self, other):
        return self + (-_as_weyl(other))

    def __rsub__(self, other):
        return _as_weyl(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return WeylElement()
            return WeylElement._raw({v: q * other for v, q in self._terms.items()})
        return weyl_normal_product(self, _as_weyl(other))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return weyl_normal_product(_as_weyl(other), self)

    def __pow__(self, e: int):
        out = WeylElement.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.const(other)
        return isinstance(other, WeylElement) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for v, q in self.items():
            mono = []
            for i, k in v.items():
                g = "X" if k > 0 else "Y"
                mono.append(f"{g}{i}" + (f"^{abs(k)}" if abs(k) > 1 else ""))
            qs = str(q)
            if not mono:
                parts.append(f"({qs})" if len(q._terms) > 1 else qs)
            elif q == A0Poly.const(1):
                parts.append(" ".join(mono))
            else:
                parts.append(" ".join(mono) + f" * ({qs})")
        return " + ".join(parts)

    def __repr__(self):
        return f"WeylElement({self})"


def _as_weyl(x) -> WeylElement:
    if isinstance(x, WeylElement):
        return x
    if isinstance(x, A0Poly):
        return WeylElement.from_a0(x)
    if isinstance(x, (int, Fraction)):
        return WeylElement.const(x)
    raise TypeError(f"cannot use {x!r} as a Weyl algebra element")


def weyl_normal_product(a: WeylElement, b: WeylElement) -> WeylElement:
    """Product in normal form.

    Uses q(t) X_w = X_w q(t + w) and the closed forms
    X^k Y^k = prod_{j<k} (t - j),  Y^k X^k = prod_{j=1..k} (t + j).
    """
    out: dict = {}
    for v, q in a._terms.items():
        for w, r in b._terms.items():
            coeff = q.shift_vars(w) * r
            for i in set(v.support) & set(w.support):
                f = merge_factor(i, v[i], w[i])
                if f is not None:
                    coeff = f * coeff
            key = v + w
            s = out[key] + coeff if key in out else coeff
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return WeylElement._raw(out)


def involution(a: WeylElement) -> WeylElement:
    """The anti-automorphism X_i <-> Y_i fixing A0 pointwise.

    (X_v q)^op = q X_{-v} = X_{-v} q(t - v).
    """
    out = {}
    for v, q in a._terms.items():
        out[-v] = q.shift_vars(-v)
    return WeylElement._raw(out)


def theta_algebra(J, a: WeylElement) -> WeylElement:
    """The automorphism X_j -> Y_j, Y_j -> -X_j on J (identity off J)."""
    J = IndexSet.coerce(J)
    out: dict = {}
    for v, q in a._terms.items():
        sign = 1
        entries = {}
        rules = {}
        for i, k in v.items():
            if i in J:
                entries[i] = -k
                if k < 0 and k % 2:
                    sign = -sign
            else:
                entries[i] = k
        for i in q.variables():
            if i in J:
                rules[i] = (-1, -1)
        w = Shift(entries)
        image = q.affine_substitute(rules) * sign
        s = out[w] + image if w in out else image
        if s.is_zero():
            out.pop(w, None)
        else:
            out[w] = s
    return WeylElement._raw(out)


def generator_word(word: Iterable[tuple[str, int]]) -> WeylElement:
    """Product of generators given as ("X", i) / ("Y", i) pairs, left to right."""
    out = WeylElement.const(1)
    for g, i in word:
        out = out * (WeylElement.X(i) if g == "X" else WeylElement.Y(i))
    return out


def iter_box(indices: Iterable[int], radius: int) -> Iterator[Shift]:
    """All shifts with entries in [-radius, radius] on the listed indices."""
    indices = list(indices)
    for i in indices:
        _check_index(i)

    def rec(pos, acc):
        if pos == len(indices):
            yield Shift._raw({i: k for i, k in acc.items() if k})
            return
        for k in range(-radius, radius + 1):
            acc[indices[pos]] = k
            yield from rec(pos + 1, acc)
        del acc[indices[pos]]

    yield from rec(0, {})
