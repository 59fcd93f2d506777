"""Weight modules with one-dimensional weight spaces.

A monomial module has basis ``x^m`` for labels m in ``base + Z_f^N`` cut
out by per-coordinate sign constraints.  At each coordinate X_i and Y_i move
the label by one step and multiply by an affine function of m_i; the four
standard rule tables come from the polynomial action, theta-twisting and
restricted duality.  Monomials that leave the support are dropped, which is
how submodules and quotients (N, N', L) are realized.

The induced projective P(p) = A / A m_p has basis X_v (x) 1 indexed by shifts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .scalars import Scalar
from .weyl import (
    ZERO_SHIFT,
    IndexSet,
    Pointwise,
    Shift,
    Weight,
    WeylElement,
    eval_a0,
    in_lattice,
    indices_where,
    iter_box,
    joint_indices,
    lattice_difference,
    sigma_shift,
    theta_weight,
)


# ---------------------------------------------------------------------------
# per-coordinate action rules
# ---------------------------------------------------------------------------


def _affine_at(ab: tuple, d: int) -> tuple:
    """c(m) = a*m + b  ->  c(m + d)."""
    a, b = ab
    return (a, b + a * d)


@dataclass(frozen=True)
class CoordMode:
    """Action of X_i and Y_i at one coordinate.

    ``x_step`` is the label move of X_i and ``x_coeff = (a, b)`` its
    coefficient ``a*m_i + b``; likewise for Y_i.
    """

    x_step: int
    x_coeff: tuple
    y_step: int
    y_coeff: tuple

    def __post_init__(self):
        if {self.x_step, self.y_step} != {1, -1}:
            raise ValueError("X and Y must move the label in opposite directions")

    @property
    def flips_weight(self) -> bool:
        # label m has weight m when X raises the label, -m-1 when it lowers it
        return self.x_step == -1

    def twisted(self) -> "CoordMode":
        """Rules of the theta-twist: X acts as Y, Y acts as -X."""
        a, b = self.x_coeff
        return CoordMode(self.y_step, self.y_coeff, self.x_step, (-a, -b))

    def dual(self) -> "CoordMode":
        """Rules on the dual basis: (X f)(v) = f(Y v), (Y f)(v) = f(X v)."""
        return CoordMode(
            -self.y_step,
            _affine_at(self.y_coeff, -self.y_step),
            -self.x_step,
            _affine_at(self.x_coeff, -self.x_step),
        )

    @property
    def name(self) -> str:
        for name, mode in _NAMED.items():
            if mode == self:
                return name
        return f"Mode(X:{self.x_step:+d},{self.x_coeff};Y:{self.y_step:+d},{self.y_coeff})"

    def __str__(self):
        return self.name


PLAIN = CoordMode(1, (0, 1), -1, (1, 0))
DUAL_PLAIN = CoordMode(1, (1, 1), -1, (0, 1))
TWISTED = CoordMode(-1, (1, 0), 1, (0, -1))
DUAL_TWISTED = CoordMode(-1, (0, -1), 1, (1, 1))

_NAMED = {
    "Plain": PLAIN,
    "DualPlain": DUAL_PLAIN,
    "Twisted": TWISTED,
    "DualTwisted": DUAL_TWISTED,
}


def mode_by_name(name: str) -> CoordMode:
    return _NAMED[name]


_UNIT = {(): 1}


@lru_cache(maxsize=8192)
def _coefficient(ab: tuple, value) -> Scalar:
    a, b = ab
    if value.is_int:
        return Scalar.const(a * value.value + b)
    return value.as_scalar() * a + b


class Constraint(enum.Enum):
    FREE = "free"
    GEQ0 = "geq0"
    LEQM1 = "leqm1"

    def holds(self, value) -> bool:
        if self is Constraint.FREE:
            return True
        if not value.is_int:
            return False
        return value.value >= 0 if self is Constraint.GEQ0 else value.value <= -1

    def describe(self, value) -> str:
        if self is Constraint.FREE:
            return f"{value}+Z"
        return "{0,1,2,...}" if self is Constraint.GEQ0 else "{...,-2,-1}"


class ModeTable(Pointwise):
    __slots__ = ()


class SupportConstraint(Pointwise):
    __slots__ = ()

    def _coerce(self, v):
        return v if isinstance(v, Constraint) else Constraint(v)


# ---------------------------------------------------------------------------
# construction tags
# ---------------------------------------------------------------------------


BASIC_KINDS = ("B", "N", "NPrime", "L")


@dataclass(frozen=True)
class Construction:
    """How a module was built; used for descriptors and rendering."""

    kind: str
    weight: Weight | None = None
    J: IndexSet | None = None
    shift: Shift | None = None
    inner: "Construction | None" = None

    def __str__(self):
        if self.kind in BASIC_KINDS:
            name = "N'" if self.kind == "NPrime" else self.kind
            return f"{name}({self.weight})"
        if self.kind == "ThetaTwist":
            return f"{self.inner}^theta{self.J}"
        if self.kind == "Dual":
            return f"({self.inner})*"
        if self.kind == "Localized":
            return f"F_{self.J}({self.inner})"
        if self.kind == "Phi":
            return f"({self.inner})^phi{dict(self.shift.items())}"
        return self.kind


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------


class WeightVector:
    """Finite combination of basis vectors of a module.

    Keys are labels (Weight) for monomial modules and shifts for induced
    modules.
    """

    __slots__ = ("module", "_terms")

    def __init__(self, module, terms: dict | None = None):
        self.module = module
        clean = {}
        for key, c in (terms or {}).items():
            c = Scalar._coerce(c)
            if not c.is_zero():
                clean[key] = c
        self._terms = clean

    @classmethod
    def _raw(cls, module, terms: dict) -> "WeightVector":
        obj = cls.__new__(cls)
        obj.module = module
        obj._terms = terms
        return obj

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: _key_order(kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, key) -> Scalar:
        return self._terms.get(key, Scalar())

    def weights(self) -> set:
        return {self.module.weight_of(k) for k in self._terms}

    def __add__(self, other: "WeightVector") -> "WeightVector":
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out[k] + c if k in out else c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return WeightVector._raw(self.module, out)

    def __neg__(self):
        return WeightVector._raw(self.module, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "WeightVector":
        s = Scalar._coerce(s)
        if s.is_zero():
            return WeightVector._raw(self.module, {})
        out = {}
        for k, c in self._terms.items():
            v = c * s
            if not v.is_zero():
                out[k] = v
        return WeightVector._raw(self.module, out)

    def __eq__(self, other):
        return (
            isinstance(other, WeightVector)
            and self._terms == other._terms
            and (self.module is other.module or self.module == other.module)
        )

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in self.items():
            basis = f"x^{k}" if isinstance(k, Weight) else f"{WeylElement.monomial(k) if k else 1}(x)1"
            parts.append(f"({c})*{basis}")
        return " + ".join(parts)

    __repr__ = __str__


def _key_order(key):
    if isinstance(key, Weight):
        return key.sort_key()
    return key.items()


# ---------------------------------------------------------------------------
# monomial modules
# ---------------------------------------------------------------------------


class MonomialModule:
    """A weight module with one-dimensional weight spaces on monomials."""

    def __init__(self, base: Weight, modes: ModeTable, support: SupportConstraint, tag: Construction):
        for i in [None] + joint_indices(support):
            c = support.default if i is None else support[i]
            v = base.default if i is None else base[i]
            if c is not Constraint.FREE and not v.is_int:
                raise ValueError(f"sign constraint at non-integral coordinate {i}")
        self.base = base
        self.modes = modes
        self.support = support
        self.tag = tag
        self._flips = indices_where(modes, lambda m: m.flips_weight)

    # identity --------------------------------------------------------------
    def _lattice_key(self):
        return (
            self.base.default,
            tuple((i, v.coset()) for i, v in self.base.items()),
        )

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, MonomialModule)
            and self.modes == other.modes
            and self.support == other.support
            and in_lattice(other.base, self.base)
        )

    def __hash__(self):
        return hash((self.modes, self.support, self.base.default))

    def __str__(self):
        return str(self.tag)

    __repr__ = __str__

    # support -----------------------------------------------------------------
    def coordinate_ok(self, i: int, value) -> bool:
        return self.support[i].holds(value)

    def contains_label(self, m: Weight) -> bool:
        if not in_lattice(m, self.base):
            return False
        support = self.support
        if not support.default.holds(m.default):
            return False
        if not all(support[i].holds(v) for i, v in m._items):
            return False
        return all(c.holds(m[i]) for i, c in support._items)

    def weight_of(self, m: Weight) -> Weight:
        return theta_weight(self._flips, m) if not self._flips.is_empty() else m

    def label_of(self, w: Weight) -> Weight:
        return self.weight_of(w)

    def support_contains(self, w: Weight) -> bool:
        return self.contains_label(self.label_of(w))

    def weight_space(self, w: Weight) -> WeightVector | None:
        """Basis vector of the weight space M_w, or None if it is zero."""
        m = self.label_of(w)
        if not self.contains_label(m):
            return None
        return WeightVector._raw(self, {m: Scalar.const(1)})

    def monomial(self, m: Weight, coeff=1) -> WeightVector:
        if not self.contains_label(m):
            raise ValueError(f"{m} is not a label of {self}")
        return WeightVector(self, {m: coeff})

    def vector(self, terms: dict) -> WeightVector:
        for m in terms:
            if not self.contains_label(m):
                raise ValueError(f"{m} is not a label of {self}")
        return WeightVector(self, terms)

    def zero(self) -> WeightVector:
        return WeightVector._raw(self, {})

    def labels_in_box(self, radius: int, indices: Iterable[int], center: Weight | None = None):
        center = self.base if center is None else center
        for sigma in iter_box(indices, radius):
            m = sigma_shift(center, sigma)
            if self.contains_label(m):
                yield m

    # action ------------------------------------------------------------------
    def act_generator(self, g: str, i: int, v: WeightVector) -> WeightVector:
        """Apply X_i (g="X") or Y_i (g="Y") to v."""
        mode = self.modes[i]
        step, ab = (mode.x_step, mode.x_coeff) if g == "X" else (mode.y_step, mode.y_coeff)
        constraint = self.support[i]
        out: dict = {}
        for m, c in v._terms.items():
            value = m._map.get(i, m.default)
            new_value = value.shift(step)
            if not constraint.holds(new_value):
                continue
            k = _coefficient(ab, value)
            if k.is_zero():
                continue
            key = m._replace(i, new_value)
            ck = c if k._terms == _UNIT else c * k
            s = out[key] + ck if key in out else ck
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return WeightVector._raw(self, out)

    def act(self, a: WeylElement, v: WeightVector) -> WeightVector:
        """Linear extension of the coordinate rules to a normal-form element."""
        if v.module != self:
            raise ValueError("vector does not belong to this module")
        total: dict = {}
        for shift, q in a.items():
            part: dict = {}
            for m, c in v._terms.items():
                k = eval_a0(q, self.weight_of(m))
                if not k.is_zero():
                    part[m] = c * k
            w = WeightVector._raw(self, part)
            for i, k in shift.items():
                if k < 0:
                    for _ in range(-k):
                        w = self.act_generator("Y", i, w)
            for i, k in shift.items():
                if k > 0:
                    for _ in range(k):
                        w = self.act_generator("X", i, w)
            for key, c in w._terms.items():
                s = total[key] + c if key in total else c
                if s.is_zero():
                    total.pop(key, None)
                else:
                    total[key] = s
        return WeightVector._raw(self, total)

    def describe_support(self) -> dict:
        """Per-coordinate interval description of the label set."""
        out = {"default": self.support.default.describe(self.base.default)}
        for i in joint_indices(self.support, self.base):
            out[str(i)] = self.support[i].describe(self.base[i])
        return out


def _integral_pred(pred):
    return lambda c: c.is_int and pred(c.value)


def realize(label: str, p: Weight, J=None) -> MonomialModule:
    """Build B(p), N(p), N'(p) or L(p), optionally twisted by theta_J."""
    if label not in BASIC_KINDS:
        raise ValueError(f"unknown module label {label!r}")

    def constraint(c):
        if not c.is_int:
            return Constraint.FREE
        if label == "B":
            return Constraint.FREE
        if label == "N":
            return Constraint.GEQ0 if c.value >= 0 else Constraint.FREE
        if label == "NPrime":
            return Constraint.GEQ0
        return Constraint.GEQ0 if c.value >= 0 else Constraint.LEQM1

    support = SupportConstraint(
        constraint(p.default), {i: constraint(v) for i, v in p.items()}
    )
    module = MonomialModule(p, ModeTable(PLAIN), support, Construction(label, weight=p))
    if J is not None:
        module = theta_twist(J, module)
    return module


def theta_twist(J, M: MonomialModule) -> MonomialModule:
    J = IndexSet.coerce(J)
    if not J.is_finite:
        raise ValueError("theta-twists are only built for finite index sets")
    if J.is_empty():
        return M
    modes = M.modes.map_indexed(lambda i, md: md.twisted(), J.elements())
    return MonomialModule(M.base, modes, M.support, Construction("ThetaTwist", J=J, inner=M.tag))


def dual(M: MonomialModule) -> MonomialModule:
    """Restricted dual; same labels and support, dual rule tables."""
    return MonomialModule(M.base, M.modes.map(CoordMode.dual), M.support, Construction("Dual", inner=M.tag))


# ---------------------------------------------------------------------------
# the induced projective P(p)
# ---------------------------------------------------------------------------


class InducedModule:
    """P(p) = Ind_p k_p with basis X_v (x) 1, v in Z_f^N."""

    def __init__(self, base: Weight):
        self.base = base

    def __eq__(self, other):
        return isinstance(other, InducedModule) and self.base == other.base

    def __hash__(self):
        return hash(("P", self.base))

    def __str__(self):
        return f"P({self.base})"

    __repr__ = __str__

    def generator(self) -> WeightVector:
        return WeightVector._raw(self, {ZERO_SHIFT: Scalar.const(1)})

    def basis_vector(self, v: Shift) -> WeightVector:
        return WeightVector._raw(self, {v: Scalar.const(1)})

    def zero(self) -> WeightVector:
        return WeightVector._raw(self, {})

    def vector(self, terms: dict) -> WeightVector:
        return WeightVector(self, terms)

    def weight_of(self, v: Shift) -> Weight:
        return sigma_shift(self.base, v)

    def support_contains(self, w: Weight) -> bool:
        return in_lattice(w, self.base)

    def weight_space(self, w: Weight) -> WeightVector | None:
        v = lattice_difference(w, self.base)
        return None if v is None else self.basis_vector(v)

    def act(self, a: WeylElement, vec: WeightVector) -> WeightVector:
        """Multiply in A, then evaluate right A0-coefficients at the base weight."""
        out: dict = {}
        for v, c in vec._terms.items():
            prod = a * WeylElement.monomial(v)
            for w, q in prod.items():
                k = eval_a0(q, self.base)
                if k.is_zero():
                    continue
                s = out[w] + c * k if w in out else c * k
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        return WeightVector._raw(self, out)

    def act_generator(self, g: str, i: int, vec: WeightVector) -> WeightVector:
        return self.act(WeylElement.X(i) if g == "X" else WeylElement.Y(i), vec)


def induced_act(p: Weight, a: WeylElement, w: WeightVector) -> WeightVector:
    return InducedModule(p).act(a, w)


# ---------------------------------------------------------------------------
# homomorphisms out of induced modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ModHom:
    """The homomorphism P(p) -> M determined by the image of the generator."""

    source: InducedModule
    target: object
    image: WeightVector

    def evaluate(self, vec: WeightVector) -> WeightVector:
        if vec.module != self.source:
            raise ValueError("vector is not in the source module")
        out = self.target.zero()
        for v, c in vec._terms.items():
            out = out + self.target.act(WeylElement.monomial(v), self.image).scale(c)
        return out

    def then(self, other: "ModHom") -> "ModHom":
        """Composite ``other o self``, computed by chasing the generator."""
        if other.source != self.target:
            raise ValueError("homomorphisms are not composable")
        return ModHom(self.source, other.target, other.evaluate(self.image))

    def is_zero(self) -> bool:
        return self.image.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, ModHom)
            and self.source == other.source
            and self.target == other.target
            and self.image == other.image
        )

    def __hash__(self):
        return hash((self.source, self.image))


def hom_from_projective(p: Weight, M, target: WeightVector) -> ModHom:
    """The unique map P(p) -> M sending the generator to ``target``."""
    if target.module != M:
        raise ValueError("target vector does not belong to M")
    weights = target.weights()
    if weights and weights != {p}:
        raise ValueError(f"target must have pure weight {p}, has weights {sorted(map(str, weights))}")
    return ModHom(InducedModule(p), M, target)


def hom_dim(p: Weight, M) -> int:
    """dim Hom(P(p), M) = dim M_p."""
    return 0 if M.weight_space(p) is None else 1


def find_iso_failure(h: ModHom, radius: int, indices: Iterable[int]) -> Shift | None:
    """First shift in the probe box where h fails to be bijective, else None.

    Images of X_s (x) 1 are built outward from the generator one generator at
    a time, since X_i X_s = X_{s+e_i} when s_i >= 0 (and dually for Y_i).
    """
    if h.is_zero():
        return ZERO_SHIFT
    src, tgt = h.source, h.target
    indices = sorted(set(indices))
    shifts = sorted(iter_box(indices, radius), key=lambda s: (s.degree(), s.items()))
    images = {}
    for sigma in shifts:
        if not sigma:
            img = h.image
        else:
            i, k = next((i, k) for i, k in sigma.items())
            prev = sigma - Shift.unit(i, 1 if k > 0 else -1)
            img = tgt.act_generator("X" if k > 0 else "Y", i, images[prev])
        images[sigma] = img
        w = src.weight_of(sigma)
        if not tgt.support_contains(w) or img.is_zero():
            return sigma
    return None


def iso_on_box(h: ModHom, radius: int, indices: Iterable[int]) -> bool:
    return find_iso_failure(h, radius, indices) is None


def probe_indices(*weights: Weight, fresh: int = 2) -> list[int]:
    """Union of override indices plus ``fresh`` indices beyond all of them."""
    used = set(joint_indices(*weights))
    top = max(used, default=0)
    return sorted(used) + [top + 1 + k for k in range(fresh)]


def nilpotency_index(M, g: str, i: int, v: WeightVector, limit: int = 64) -> int | None:
    """Least N with g_i^N v = 0, or None if none up to ``limit``."""
    for n in range(limit + 1):
        if v.is_zero():
            return n
        v = M.act_generator(g, i, v)
    return None
