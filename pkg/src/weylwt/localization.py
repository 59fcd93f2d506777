"""Ore localization at the X_i and the twists phi_x, on monomial modules.

``localize`` is the functor F_J read off on bases (support constraints on J
become free).  ``OreLocalizedModule`` is an independent model of
D_J A (x)_A M built from the commutation rule Y X^k = X^k Y + k X^{k-1};
the verifier checks that both pictures agree with B(p) and L(p).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classify import in_k_plus, integral_indices
from .modules import (
    PLAIN,
    Constraint,
    Construction,
    MonomialModule,
    WeightVector,
    probe_indices,
    realize,
    theta_twist,
)
from .scalars import ONE, Scalar
from .weyl import (
    ZERO_WEIGHT,
    IndexSet,
    Int,
    Shift,
    Weight,
    WeylElement,
    eval_a0,
    iter_box,
    joint_indices,
    sigma_shift,
    weight_add,
    weight_sub,
)


class LocalizationError(ValueError):
    pass


def _coordinates_in(J: IndexSet, *tables) -> tuple[list[int], bool]:
    """Indices of J to inspect individually, and whether the default is in J."""
    if J.cofinite:
        return [i for i in joint_indices(*tables) if i in J], True
    return J.elements(), False


def _check_localizable(M: MonomialModule, J: IndexSet) -> None:
    at, with_default = _coordinates_in(J, M.modes, M.support, M.base)
    checks = [(i, M.modes[i], M.support[i]) for i in at]
    if with_default:
        checks.append(("default", M.modes.default, M.support.default))
    for i, mode, constraint in checks:
        if mode != PLAIN:
            raise LocalizationError(
                f"X_{i} does not act injectively at coordinate {i} (mode {mode.name})"
            )
        if constraint is Constraint.LEQM1:
            raise LocalizationError(
                f"X_{i} is locally nilpotent at coordinate {i}; the localization vanishes"
            )


def localize(M: MonomialModule, J) -> MonomialModule:
    """F_J M: invert X_j for j in J; the support becomes free on J."""
    J = IndexSet.coerce(J)
    _check_localizable(M, J)
    if J.cofinite:
        table = {i: M.support[i] for i in J.listed}
        support = type(M.support)(Constraint.FREE, table)
    else:
        support = M.support.map_indexed(lambda i, c: Constraint.FREE, J.elements())
    return MonomialModule(M.base, M.modes, support, Construction("Localized", J=J, inner=M.tag))


def _free_plain(M: MonomialModule, i) -> bool:
    if i == "default":
        return M.modes.default == PLAIN and M.support.default is Constraint.FREE
    return M.modes[i] == PLAIN and M.support[i] is Constraint.FREE


def phi_twist(M: MonomialModule, x: Shift, J=None) -> MonomialModule:
    """Twist by phi_x(a) = X^{-x} a X^{x} for an integral x supported on J.

    The twisted module is again plain; its labels are those of M moved by x.
    """
    if J is not None:
        J = IndexSet.coerce(J)
        outside = [i for i in x.support if i not in J]
        if outside:
            raise LocalizationError(f"shift is supported outside J at {outside}")
    for i in x.support:
        if not _free_plain(M, i):
            raise LocalizationError(f"module is not localized at coordinate {i}")
    if not x:
        return M
    return MonomialModule(
        sigma_shift(M.base, x), M.modes, M.support, Construction("Phi", shift=x, inner=M.tag)
    )


class PhiTwistedModule:
    """M^{phi_x} for x in k^J, acting through phi_x(Y_i) = Y_i + x_i X_i^{-1}.

    ``x`` is a Weight vanishing off J; it may have symbolic coordinates.
    Basis vectors keep the labels of M; the weight of label n is wt(n) + x.
    """

    def __init__(self, inner: MonomialModule, x: Weight, J):
        J = IndexSet.coerce(J)
        for i in joint_indices(x):
            if i not in J and x[i] != Int(0):
                raise LocalizationError(f"twist parameter is nonzero off J at {i}")
        if x.default != Int(0) and not J.cofinite:
            raise LocalizationError("twist parameter is nonzero off J")
        at, with_default = _coordinates_in(J, inner.modes, inner.support, inner.base, x)
        for i in at + (["default"] if with_default else []):
            if not _free_plain(inner, i):
                raise LocalizationError(f"module is not localized at coordinate {i}")
        self.inner = inner
        self.x = x
        self.J = J

    def __eq__(self, other):
        return (
            isinstance(other, PhiTwistedModule)
            and self.inner == other.inner
            and self.x == other.x
        )

    def __hash__(self):
        return hash((self.inner, self.x))

    def contains_label(self, n: Weight) -> bool:
        return self.inner.contains_label(n)

    def weight_of(self, n: Weight) -> Weight:
        return weight_add(self.inner.weight_of(n), self.x)

    def monomial(self, n: Weight) -> WeightVector:
        if not self.contains_label(n):
            raise ValueError(f"{n} is not a label")
        return WeightVector(self, {n: 1})

    def zero(self) -> WeightVector:
        return WeightVector(self, {})

    def _rewrap(self, v: WeightVector) -> WeightVector:
        return WeightVector._raw(self, v._terms)

    def act_generator(self, g: str, i: int, v: WeightVector) -> WeightVector:
        inner_v = WeightVector._raw(self.inner, v._terms)
        out = self.inner.act_generator(g, i, inner_v)
        xi = self.x[i]
        if g == "Y" and xi != _ZERO:
            k = xi.as_scalar()
            lowered = {n._replace(i, n[i].shift(-1)): c * k for n, c in v._terms.items()}
            out = out + WeightVector(self.inner, lowered)
        return self._rewrap(out)

    def act(self, a: WeylElement, v: WeightVector) -> WeightVector:
        total = self.zero()
        for shift, q in a.items():
            part = WeightVector(self, {n: c * eval_a0(q, self.weight_of(n)) for n, c in v._terms.items()})
            for i, k in shift.items():
                if k < 0:
                    for _ in range(-k):
                        part = self.act_generator("Y", i, part)
            for i, k in shift.items():
                if k > 0:
                    for _ in range(k):
                        part = self.act_generator("X", i, part)
            total = total + part
        return total


_ZERO = Int(0)


class OreLocalizedModule:
    """D_J A (x)_A M with elements X^m (x) x^q, m <= 0 supported on J.

    Pairs are kept normalised: X^m (x) X_i x^q = X^{m+e_i} (x) x^q is used
    to push exponent from q into m until m_i = 0 or q_i = 0.
    """

    def __init__(self, inner: MonomialModule, J):
        J = IndexSet.coerce(J)
        at, with_default = _coordinates_in(J, inner.modes, inner.support, inner.base)
        for i in at + (["default"] if with_default else []):
            mode = inner.modes.default if i == "default" else inner.modes[i]
            constraint = inner.support.default if i == "default" else inner.support[i]
            if mode != PLAIN or constraint is not Constraint.GEQ0:
                raise LocalizationError(f"coordinate {i} is not of polynomial type")
        self.inner = inner
        self.J = J

    def normalize(self, m: Shift, q: Weight) -> tuple[Shift, Weight]:
        entries = m.as_dict()
        for i, k in list(entries.items()):
            qi = q[i].value
            move = min(-k, qi)
            if move > 0:
                entries[i] = k + move
                q = q._replace(i, q[i].shift(-move))
        return Shift(entries), q

    def element(self, m: Shift, q: Weight) -> dict:
        key = self.normalize(m, q)
        return {key: Scalar.const(1)}

    @staticmethod
    def _accumulate(out: dict, key, c) -> None:
        s = out[key] + c if key in out else c
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s

    def act_generator(self, g: str, i: int, elt: dict) -> dict:
        out: dict = {}
        for (m, q), c in elt.items():
            mi = m[i]
            if g == "X" and mi < 0:
                self._accumulate(out, self.normalize(m + Shift.unit(i), q), c)
                continue
            image = self.inner.act_generator(g, i, WeightVector._raw(self.inner, {q: ONE}))
            for q2, k in image._terms.items():
                self._accumulate(out, self.normalize(m, q2), c * k)
            if g == "Y" and mi < 0:
                self._accumulate(out, self.normalize(m - Shift.unit(i), q), c * mi)
        return out

    def preimage(self, n: Weight) -> tuple[Shift, Weight]:
        """Normal-form pair mapping to the label n."""
        m = {}
        q = n
        for i in joint_indices(n):
            if i in self.J and n[i].is_int and n[i].value < 0:
                m[i] = n[i].value
                q = q.with_value(i, Int(0))
        return Shift(m), q

    @staticmethod
    def image_label(m: Shift, q: Weight) -> Weight:
        return sigma_shift(q, m)

    def to_module(self, elt: dict, target: MonomialModule) -> WeightVector:
        out: dict = {}
        for (m, q), c in elt.items():
            self._accumulate(out, self.image_label(m, q), c)
        return WeightVector._raw(target, out)


@dataclass
class ClaimReport:
    claim: str
    description: str
    probes: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, probe, **sides):
        self.failures.append({"probe": str(probe), **{k: str(v) for k, v in sides.items()}})

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "description": self.description,
            "probes": self.probes,
            "passed": self.passed,
            "failures": self.failures,
        }


def _relabel(v: WeightVector, x: Weight, target) -> WeightVector:
    return WeightVector._raw(target, {weight_add(n, x): c for n, c in v._terms.items()})


def _check_realization_of_simple(p: Weight, radius: int, indices: list[int]) -> ClaimReport:
    report = ClaimReport("a", "L(p) against the phi_{p'}-twisted localization of L(0) at I minus J_p")
    Jp = integral_indices(p)
    K = Jp.complement()
    x = p.map(lambda c: Int(0) if c.is_int else c)
    F = localize(realize("L", ZERO_WEIGHT), K)
    phi = PhiTwistedModule(F, x, K)
    Lp = realize("L", p)
    for sigma in iter_box(indices, radius):
        m = sigma_shift(p, sigma)
        n = weight_sub(m, x)
        report.probes += 1
        in_phi = phi.contains_label(n)
        in_L = Lp.contains_label(m)
        if in_phi != in_L:
            report.fail(m, lhs=f"in twisted localization: {in_phi}", rhs=f"in bar(p): {in_L}")
            continue
        if not in_L:
            continue
        if phi.weight_of(n) != m:
            report.fail(m, lhs=phi.weight_of(n), rhs=m)
            continue
        vn, vm = phi.monomial(n), Lp.monomial(m)
        for i in indices:
            for g in ("X", "Y"):
                lhs = _relabel(phi.act_generator(g, i, vn), x, Lp)
                rhs = Lp.act_generator(g, i, vm)
                if lhs != rhs:
                    report.fail(f"{g}{i} on {m}", lhs=lhs, rhs=rhs)
    return report


def _check_localization_of_simple(p: Weight, radius: int, indices: list[int]) -> ClaimReport:
    report = ClaimReport("b", "F_{J_p} L(p) against B(p) via x^m x^q -> x^{m+q}")
    Jp = integral_indices(p)
    Lp = realize("L", p)
    Bp = realize("B", p)
    if localize(Lp, Jp) != Bp:
        report.fail("constraint relaxation", lhs=localize(Lp, Jp).describe_support(), rhs=Bp.describe_support())
    ore = OreLocalizedModule(Lp, Jp)
    for sigma in iter_box(indices, radius):
        n = sigma_shift(p, sigma)
        report.probes += 1
        m, q = ore.preimage(n)
        if not Lp.contains_label(q) or ore.normalize(m, q) != (m, q) or ore.image_label(m, q) != n:
            report.fail(n, lhs=f"preimage {m.as_dict()} * x^{q}", rhs=n)
            continue
        elt = {(m, q): ONE}
        vn = Bp.monomial(n)
        for i in indices:
            for g in ("X", "Y"):
                lhs = ore.to_module(ore.act_generator(g, i, elt), Bp)
                rhs = Bp.act_generator(g, i, vn)
                if lhs != rhs:
                    report.fail(f"{g}{i} on {n}", lhs=lhs, rhs=rhs)
    return report


def verify_localization_realizations(p: Weight, radius: int = 3, indices=None) -> list[ClaimReport]:
    """Check both localization realizations of L(p) and B(p) on a probe box."""
    if not in_k_plus(p):
        raise ValueError(f"{p} has a negative integral coordinate")
    indices = probe_indices(p, fresh=1) if indices is None else sorted(indices)
    return [
        _check_realization_of_simple(p, radius, indices),
        _check_localization_of_simple(p, radius, indices),
    ]


def injective_envelope_by_localization(p: Weight, J) -> MonomialModule:
    """theta_J twist of F_{J_p} L(p); compare with B(p)^{theta_J}."""
    return theta_twist(J, localize(realize("L", p), integral_indices(p)))
