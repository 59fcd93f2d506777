"""Acceptance criteria 1-11, each with its sample size and time budget.

Every criterion prints one PASS/FAIL line with its wall time.  Randomness is
seeded from WEYLWT_SEED (see helpers.SEED).
"""

from __future__ import annotations

import json
import time
from collections import Counter
from contextlib import contextmanager
from itertools import product

import networkx as nx
from networkx.algorithms.isomorphism import categorical_multiedge_match

from dot import read_dot
from helpers import SEED, oracle_terms, probe, random_element, random_shift, random_weight, relation_failures, rng
from oracles import apply_element, rewrite_word, tensor_betti
from test_classify import box_members
from weylwt import serialize as ser
from weylwt.blocks import verify_block
from weylwt.classify import (
    bar_contains,
    canonical_form,
    equivalent,
    in_k_plus,
    is_isomorphic_simple,
    simple_class,
    simple_reachability,
)
from weylwt.cli import main
from weylwt.localization import verify_localization_realizations
from weylwt.modules import (
    dual,
    find_iso_failure,
    hom_from_projective,
    nilpotency_index,
    probe_indices,
    realize,
    theta_twist,
)
from weylwt.quiver import hom_basis, reduce_word, subsets, algebra_dim
from weylwt.resolution import expected_total, koszul_check
from weylwt.weyl import Int, NonInt, Shift, Weight, iter_box, sigma_shift, theta_weight, weyl_normal_product


@contextmanager
def criterion(capsys, number: int, title: str, budget: float):
    """Collect failures in the body, then print one line and assert."""
    failures: list = []
    start = time.perf_counter()
    yield failures
    elapsed = time.perf_counter() - start
    if elapsed >= budget:
        failures.append(f"took {elapsed:.2f} s, budget {budget} s")
    verdict = "PASS" if not failures else "FAIL"
    with capsys.disabled():
        print(f"\ncriterion {number:2d} {verdict}  {title}  ({elapsed:.2f} s / {budget} s, seed {SEED})")
        for f in failures[:5]:
            print(f"    {f}")
    assert not failures, failures[:5]


def test_criterion_01_relations(capsys):
    r = rng("accept-1")
    with criterion(capsys, 1, "defining relations on B, L, theta-twists and duals", 5.0) as bad:
        cases = 0
        while cases < 240:
            p = random_weight(r, indices=(1, 2, 3), k=3)
            M = r.choice([
                realize("B", p),
                realize("L", p),
                theta_twist({r.choice((1, 2, 3))}, realize(r.choice(("B", "L")), p)),
                dual(realize(r.choice(("B", "L", "N")), p)),
            ])
            labels = list(M.labels_in_box(2, [1, 2, 3]))
            if not labels:
                continue
            m = r.choice(labels)
            i, j = r.choice((1, 2, 3, 6)), r.choice((1, 2, 3, 6))
            cases += 1
            problems = relation_failures(M, M.monomial(m), i, j)
            if problems:
                bad.append(f"{M} at {m}, i={i}, j={j}: {problems}")


def test_criterion_02_normal_form(capsys):
    r = rng("accept-2")
    with criterion(capsys, 2, "normal-form product vs operators; associativity", 10.0) as bad:
        for n in range(100):
            a, b = random_element(r), random_element(r)
            lhs = probe(weyl_normal_product(a, b), top=3)
            rhs = [apply_element(oracle_terms(a), v) for v in probe(b, top=3)]
            if lhs != rhs:
                bad.append(f"pair {n}: {a} * {b}")
        for n in range(50):
            a, b, c = (random_element(r, max_degree=2) for _ in range(3))
            if (a * b) * c != a * (b * c):
                bad.append(f"triple {n}: {a}, {b}, {c}")


def test_criterion_03_classification(capsys):
    r = rng("accept-3")
    with criterion(capsys, 3, "canonical forms, equivalence and iso-simple", 5.0) as bad:
        for n in range(200):
            p = random_weight(r, indices=(1, 2), k=2)
            q = sigma_shift(p, random_shift(r, indices=(1, 2), size=3)) if r.random() < 0.7 \
                else random_weight(r, indices=(1, 2), k=2)
            form = canonical_form(p)
            if not in_k_plus(form.p_plus) or theta_weight(form.J, form.p_plus) != p:
                bad.append(f"round trip {p}")
            for _ in range(3):
                m = sigma_shift(p, random_shift(r, indices=(1, 2, 3), size=3))
                if bar_contains(form.p_plus, theta_weight(form.J, m)) != bar_contains(p, m):
                    bad.append(f"theta_J(bar(p_+)) != bar(p) at {m}")
            eq = equivalent(p, q)
            if eq != (simple_class(p) == simple_class(q)):
                bad.append(f"equivalent vs canonical class: {p}, {q}")
            if canonical_form(p) == canonical_form(q) and not eq:
                bad.append(f"equal canonical forms but inequivalent: {p}, {q}")
            if lattice_box_oracle(p, q) != eq:
                bad.append(f"equivalent vs box oracle: {p}, {q}")
            if is_isomorphic_simple(p, q) != (bar_contains(p, q) and bar_contains(q, p)):
                bad.append(f"iso-simple vs bar membership: {p}, {q}")


def lattice_box_oracle(p: Weight, q: Weight) -> bool:
    if q.default != p.default or any(p[i].is_int != q[i].is_int for i in (1, 2)):
        return False
    if any(not p[i].is_int and p[i].coset() != q[i].coset() for i in (1, 2)):
        return False
    return box_members(p, p, (1, 2), 4) == box_members(q, p, (1, 2), 4)


def test_criterion_04_projective_realization(capsys):
    r = rng("accept-4")
    with criterion(capsys, 4, "P(p) -> B(p) iso on box, documented witness otherwise", 10.0) as bad:
        for n in range(20):
            p = random_weight(r, indices=(1, 2, 3), kinds=("neg", "nonint"), k=3,
                              default=r.choice([Int(-1), NonInt(1, "w", 0)]))
            B = realize("B", p)
            h = hom_from_projective(p, B, B.monomial(p))
            witness = find_iso_failure(h, 3, probe_indices(p))
            if witness is not None:
                bad.append(f"{p}: fails at {witness}")
        for n in range(20):
            p = random_weight(r, indices=(1, 2, 3), k=3, default=r.choice([Int(-1), NonInt(1, "w", 0)]))
            i = r.choice((1, 2, 3))
            p = p.with_value(i, Int(r.randint(0, 2)))
            nonneg = {j: p[j].value for j in probe_indices(p) if p[j].is_int and p[j].value >= 0}
            expected = {Shift.unit(j, -(c + 1)) for j, c in nonneg.items() if c == min(nonneg.values())}
            B = realize("B", p)
            witness = find_iso_failure(hom_from_projective(p, B, B.monomial(p)), 3, probe_indices(p))
            if witness not in expected:
                bad.append(f"{p}: witness {witness}, expected one of {sorted(map(str, expected))}")


def test_criterion_05_simplicity(capsys):
    r = rng("accept-5")
    with criterion(capsys, 5, "simple reachability between all box monomials of bar(p)", 10.0) as bad:
        for n in range(20):
            p = random_weight(r, indices=(1, 2, 3), k=2)
            box = [sigma_shift(p, s) for s in iter_box(probe_indices(p, fresh=1), 2)]
            members = [m for m in box if bar_contains(p, m)]
            for a, b in product(members, repeat=2):
                res = simple_reachability(p, a, b)
                if not res.ok:
                    bad.append(f"{p}: {a} -> {b}: {res.diagnostic}")


def test_criterion_06_local_nilpotency(capsys):
    r = rng("accept-6")
    p = Weight.of({}, default=Int(1))
    L = realize("L", p)
    with criterion(capsys, 6, "default-one weight: local nilpotency of each Y_i", 2.0) as bad:
        for n in range(20):
            v = L.zero()
            while v.is_zero():
                for _ in range(r.randint(1, 3)):
                    shift = Shift({i: r.randint(-1, 3) for i in r.sample(range(1, 7), 3)})
                    v = v + L.monomial(sigma_shift(p, shift), r.randint(-3, 3))
            touched = sorted({i for m in v.terms for i, _ in m.items()})
            fresh = max(touched, default=0) + 1
            if all(L.act_generator("Y", i, v).is_zero() for i in touched + [fresh]):
                bad.append(f"{v}: every Y_i kills it")
            for i in touched + [fresh, fresh + 5]:
                if nilpotency_index(L, "Y", i, v, limit=16) is None:
                    bad.append(f"{v}: Y_{i} is not nilpotent on it")


def test_criterion_07_localization(capsys):
    r = rng("accept-7")
    with criterion(capsys, 7, "localization realizations (a) and (b) at radius 3", 10.0) as bad:
        for n in range(20):
            p = random_weight(r, indices=range(1, 6), kinds=("nonneg", "nonint"), k=3,
                              default=r.choice([Int(0), NonInt(1, "w", 0)]))
            for report in verify_localization_realizations(p, radius=3):
                if not report.passed:
                    bad.append(f"{p}: claim ({report.claim}) {report.failures[:1]}")


def test_criterion_08_quiver(capsys):
    r = rng("accept-8")
    with criterion(capsys, 8, "path rewriting, hom bases, algebra dimension", 5.0) as bad:
        E = [1, 2, 3]
        for n in range(500):
            word = [r.choice(E) for _ in range(r.randint(0, 8))]
            forms = {rewrite_word(word, r) for _ in range(3)}
            nf = reduce_word(r.choice(subsets(E)), word)
            ours = None if nf.is_zero else tuple(sorted(nf.toggles))
            if len(forms) != 1 or ours not in forms:
                bad.append(f"word {word}: oracle {forms}, ours {ours}")
        for k in range(4):
            Ek = range(1, k + 1)
            for U in subsets(Ek):
                for W in subsets(Ek):
                    if len(hom_basis(U, W)) != 1:
                        bad.append(f"hom({U}, {W})")
            if algebra_dim(Ek) != 4**k:
                bad.append(f"algebra_dim |E|={k}")


def test_criterion_09_koszul(capsys):
    with criterion(capsys, 9, "Koszulity with tensor-oracle Betti numbers", 60.0) as bad:
        for n, upto in ((1, 6), (2, 5), (3, 4)):
            E = tuple(range(1, n + 1))
            report = koszul_check(E, upto)
            if not report.koszul:
                bad.append(f"|E|={n}: {report.violations[:3]}")
            for U, table in report.tables.items():
                oracle = tensor_betti(U, E, upto)
                for k in range(upto + 1):
                    if Counter(table.entries.get(k, Counter())) != oracle.get(k, Counter()):
                        bad.append(f"|E|={n}, S_{sorted(U)}, k={k}: tables differ")
                    if table.total(k) != expected_total(k, n):
                        bad.append(f"|E|={n}, S_{sorted(U)}, k={k}: total {table.total(k)}")


def test_criterion_10_blocks(capsys):
    r = rng("accept-10")
    with criterion(capsys, 10, "block description via explicit maps", 60.0) as bad:
        for n in (1, 2, 3):
            for _ in range(10):
                values = [r.choice([-3, -2, -1, 0, 1, 2, 3]) for _ in range(n)]
                if n > 1 and len({v < 0 for v in values}) == 1:
                    values[0] = -values[0] - 1  # make the signs mixed
                p = Weight.of(dict(zip(range(1, n + 1), map(Int, values))),
                              default=r.choice([NonInt(1, "w", 0), Int(r.randint(-2, 2))]))
                report = verify_block(p, range(1, n + 1), seed=r.randint(0, 10**6))
                if not report.passed:
                    bad.append(f"{p}: {report.failures[:2]}")


def _displayed_square() -> nx.MultiDiGraph:
    g = nx.MultiDiGraph()
    for a, b, name in [("0", "1", "eta"), ("2", "12", "eta"), ("0", "2", "xi"), ("1", "12", "xi")]:
        g.add_edge(a, b, label=name)
        g.add_edge(b, a, label=name)
    return g


def test_criterion_11_cli(capsys):
    r = rng("accept-11")
    with criterion(capsys, 11, "quiver DOT isomorphic to the square; JSON round trips", 1.0) as bad:
        code = main(["quiver", "{1,2}", "--format", "dot"])
        out = capsys.readouterr().out
        g, relations = read_dot(out)
        for _, _, d in g.edges(data=True):
            d["label"] = {"a1": "eta", "a2": "xi"}.get(d["label"], d["label"])
        match = categorical_multiedge_match("label", None)
        if code != 0 or not nx.is_isomorphic(g, _displayed_square(), edge_match=match):
            bad.append("DOT graph is not the displayed square")
        if sorted(relations) != sorted(["a1^2=0", "a2^2=0", "a1a2=a2a1"]):
            bad.append(f"relations {relations}")
        schemas = []
        for _ in range(20):
            p = random_weight(r, k=3)
            schemas.append((ser.weight_to_json(p), ser.weight_from_json, ser.weight_to_json))
            a = random_element(r, max_degree=2)
            schemas.append((ser.element_to_json(a), ser.element_from_json, ser.element_to_json))
            v = random_shift(r)
            schemas.append((ser.shift_to_json(v), ser.shift_from_json, ser.shift_to_json))
            M = realize(r.choice(("B", "L", "N", "NPrime")), p)
            M = r.choice([M, dual(M), theta_twist({1}, M)])
            schemas.append((ser.module_to_json(M), ser.module_from_json, ser.module_to_json))
        for J in ([1, 3], {"all_but": [2]}):
            schemas.append((J, ser.index_set_from_json, ser.index_set_to_json))
        for data, parse, render in schemas:
            text = json.dumps(data, sort_keys=True)
            again = render(parse(json.loads(text)))
            if json.dumps(again, sort_keys=True) != text:
                bad.append(f"round trip changed {text}")
