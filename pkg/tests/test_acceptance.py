"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear in the summary)
or directly with ``python tests/test_acceptance.py``.
"""

import itertools
import random
from math import comb
from pathlib import Path

import pytest

from leviflat import (
    EXAMPLE_NAMES,
    MixedPoly,
    RationalMap,
    SignedDecomposition,
    Verdict,
    bihomogenize,
    certify_leviflat,
    check_leaf_family,
    coefficient_matrix,
    degenerate_locus_generators,
    holomorphic_decomposition,
    is_algebraic_degenerate,
    parse,
    pullback,
    quadratic_cone,
    rank_signature,
    reexpand,
    worked_example,
)
from leviflat.coefficient import Coefficient
from leviflat.constructions import (
    CUSP_AFFINE_TEXT,
    QUARTIC_FAMILY,
    RESULTANT_FAMILY,
    UMBRELLA_AFFINE_TEXT,
    UMBRELLA_TEXT,
    imaginary_part,
)
from leviflat.levi import parse_family

from _support import random_bihomogeneous, random_holomorphic, report

ROOT = Path(__file__).resolve().parent.parent


def test_criterion_1_bihomogenization_golden():
    cusp = bihomogenize(parse(CUSP_AFFINE_TEXT)) == worked_example("cusp-curve").polynomial
    umbrella = bihomogenize(parse(UMBRELLA_AFFINE_TEXT)) == parse(UMBRELLA_TEXT)
    assert report("1", cusp and umbrella,
                  f"cusp term-for-term={cusp}, umbrella term-for-term={umbrella}")


def test_criterion_2_cusp_matrix_and_inertia():
    form = coefficient_matrix(worked_example("cusp-curve").polynomial)
    expected = [[0, 0, 0, 1], [0, 0, 3, 2], [0, 3, -4, 0], [1, 2, 0, 0]]
    matrix_ok = list(form.basis) == [(3, 0), (2, 1), (1, 2), (0, 3)] and \
        [list(r) for r in form.matrix] == expected
    inertia = tuple(rank_signature(form))
    assert report("2", matrix_ok and inertia == (4, 2, 2),
                  f"matrix exact={matrix_ok}, (rank, +, -)={inertia}")


def test_criterion_3_quadratic_cone():
    cone = quadratic_cone(2)
    inertia = tuple(rank_signature(coefficient_matrix(cone)))
    verdict = certify_leviflat(cone).verdict
    rep = degenerate_locus_generators(cone, reduce=True)
    locus_ok = rep.generators == (parse("z1", 3), parse("z2", 3))
    origin = is_algebraic_degenerate(cone, [0, 0, 0])
    ok = inertia == (2, 1, 1) and verdict is Verdict.CERTIFIED and locus_ok and origin
    assert report("3", ok, f"inertia={inertia}, verdict={verdict.value}, "
                           f"locus z1=z2=0: {locus_ok}, origin degenerate={origin}")


def test_criterion_4a_quartic_rank_and_locus():
    P = worked_example("nodegen-quartic").polynomial
    rank = rank_signature(coefficient_matrix(P)).rank
    reduced = degenerate_locus_generators(P, reduce=True)
    # z1^2, z2^2 and z3^2 among the generators force every coordinate to vanish
    squares = all(parse(f"z{j}^2", 3) in reduced.generators for j in (1, 2, 3))
    full = degenerate_locus_generators(P)
    values = [Coefficient(a, b) for a, b in ((0, 0), (1, 0), (-1, 0), (0, 1), (1, -2))]
    only_origin = all(
        full.vanishes_at(list(p)) == all(v == 0 for v in p)
        and is_algebraic_degenerate(P, list(p)) == all(v == 0 for v in p)
        for p in itertools.product(values, repeat=3))
    leaves = check_leaf_family(P, parse_family(QUARTIC_FAMILY, 3))
    ok = rank == 6 and squares and only_origin and leaves
    assert report("4a", ok, f"rank={rank}, squares in reduced generators={squares}, "
                            f"5^3 grid only origin={only_origin}, "
                            f"planes {QUARTIC_FAMILY!r} contained={leaves}")


@pytest.mark.xfail(strict=True, reason="the registry quartic equals the resultant of the stated "
                   "planes composed with (z1, z2, z3) -> (-z1, i z2, z3), so the literal family "
                   "is not contained; criterion 4a checks the family it does contain")
def test_criterion_4b_quartic_literal_leaf_family():
    P = worked_example("nodegen-quartic").polynomial
    ok = check_leaf_family(P, parse_family(RESULTANT_FAMILY, 3))
    report("4b", ok, f"{RESULTANT_FAMILY!r} contained in the registry quartic={ok}")
    assert ok


def test_criterion_5_decomposition_identity():
    failures = []
    for name in EXAMPLE_NAMES:
        P = worked_example(name).polynomial
        if reexpand(holomorphic_decomposition(coefficient_matrix(P))) != P:
            failures.append(name)
    rng = random.Random(2024)
    checked = 0
    while checked < 50:
        k, d = rng.randint(1, 3), rng.randint(1, 4)
        P = random_bihomogeneous(rng, k, d, terms=rng.randint(1, 5))
        if P.is_zero():
            continue
        checked += 1
        if reexpand(holomorphic_decomposition(coefficient_matrix(P))) != P:
            failures.append(str(P))
    assert report("5", not failures,
                  f"registry {len(EXAMPLE_NAMES)} + random {checked} re-expand exactly; "
                  f"failures={len(failures)}")


def test_criterion_5_four_term_decomposition_expands_to_factor_2_times_cusp():
    a, b = parse("z1^3 + 2*z1^2*z2"), parse("z2^3", 2)
    c, e = parse("3*z1^2*z2 - 2*z1*z2^2"), parse("z1*z2^2")
    expansion = SignedDecomposition(2, (a + b, c + e), (a - b, c - e)).reexpand()
    P = worked_example("cusp-curve").polynomial
    ok = expansion == P.scale(2)
    assert report("5 (four-term decomposition)", ok,
                  f"expansion equals 2*P exactly={ok}, equals P={expansion == P}")


def _det3(L):
    (a, b, c), (d, e, f), (g, h, i) = L
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _compose(P, L):
    k = P.num_vars
    z = [MixedPoly.var(k, j) for j in range(1, k + 1)]
    images = {}
    for r in range(k):
        img = MixedPoly.zero(k)
        for c in range(k):
            img = img + z[c].scale(L[r][c])
        images[r + 1] = img
    conj = {j: v.conjugate() for j, v in images.items()}
    return P.substitute(images, conj)


def test_criterion_6_rank_invariance():
    rng = random.Random(6)
    polys = [worked_example("nodegen-quartic").polynomial]
    while len(polys) < 5:
        P = random_bihomogeneous(rng, 3, rng.randint(1, 2), terms=4)
        if not P.is_zero():
            polys.append(P)
    mismatches = 0
    for P in polys:
        r = rank_signature(coefficient_matrix(P, full_basis=True))
        count = 0
        while count < 20:
            L = [[Coefficient(rng.randint(-2, 2), rng.randint(-1, 1)) for _ in range(3)]
                 for _ in range(3)]
            if not _det3(L):
                continue
            count += 1
            Q = _compose(P, L)
            if rank_signature(coefficient_matrix(Q, full_basis=True)) != r:
                mismatches += 1
    assert report("6", mismatches == 0,
                  f"5 polynomials x 20 invertible substitutions, inertia mismatches={mismatches}")


def test_criterion_7_levi_soundness():
    rng = random.Random(7)
    certified = 0
    for _ in range(100):
        k = rng.randint(2, 3)
        p, q = random_holomorphic(rng, k, 3), random_holomorphic(rng, k, 3)
        rho = p * p.conjugate() - q * q.conjugate()
        if rho.is_zero():
            q = q + MixedPoly.var(k, 1)
            rho = p * p.conjugate() - q * q.conjugate()
        if certify_leviflat(rho).verdict is Verdict.CERTIFIED:
            certified += 1
    witnesses = []
    for text in ("z1*~z1 + z2*~z2 - 1", "z1*~z1 + z2*~z2 - z3*~z3"):
        cert = certify_leviflat(parse(text))
        w = cert.witness
        witnesses.append(cert.verdict is Verdict.REFUTED and w.residual <= 1e-12
                         and w.minor_value >= 1e-6 and w.exact_minor_value >= 1e-6)
    ok = certified == 100 and all(witnesses)
    assert report("7", ok, f"rank-2 forms certified {certified}/100; sphere refuted={witnesses[0]}, "
                           f"(2,1) quadric refuted={witnesses[1]}")


def test_criterion_8_pullback():
    zmap = RationalMap(parse("z1", 2), parse("z2"))
    cone_ok = pullback(zmap, imaginary_part(1, 1)) == quadratic_cone(1)
    cusp_ok = pullback(zmap, parse(CUSP_AFFINE_TEXT)) == worked_example("cusp-curve").polynomial
    # circle |zeta - 1|^2 = 2 pulled back by (z1^2 + z2)/(z1 - 2 z2 + 1)
    f, g = parse("z1^2 + z2", 2), parse("z1 - 2*z2 + 1", 2)
    S = parse("(z1 - 1)*(~z1 - 1) - 2")
    Q = pullback(RationalMap(f, g), S)
    on_curve = [Coefficient(2, 1), Coefficient(0, 1), Coefficient(2, -1), Coefficient(-1, 1)]
    rng = random.Random(8)
    agree = checked = on = 0
    while checked < 50:
        z1 = Coefficient(rng.randint(-3, 3), rng.randint(-3, 3))
        zeta = rng.choice(on_curve) if checked % 2 else Coefficient(rng.randint(-3, 3), rng.randint(-3, 3))
        if not 1 + 2 * zeta:
            continue
        p = [z1, (zeta * (z1 + 1) - z1 * z1) / (1 + 2 * zeta)]
        gp = g.evaluate(p)
        if not gp:
            continue
        checked += 1
        s_zero = S.evaluate([f.evaluate(p) / gp]) == 0
        on += s_zero
        agree += (Q.evaluate(p) == 0) == s_zero
    ok = cone_ok and cusp_ok and agree == 50 and 0 < on < 50
    assert report("8", ok, f"cone={cone_ok}, cusp={cusp_ok}, zero-set agreement {agree}/50 "
                           f"({on} on the curve)")


def test_criterion_9_rank_bounds():
    rows = []
    for name in EXAMPLE_NAMES:
        P = worked_example(name).polynomial
        d, _ = P.bidegree()
        n = P.num_vars - 1
        r = rank_signature(coefficient_matrix(P)).rank
        rows.append((name, r, comb(d + n, n), 2 <= r <= comb(d + n, n)))
    ok = all(row[3] for row in rows)
    assert report("9", ok, ", ".join(f"{name} {r}<= {b}" for name, r, b, _ in rows))


def test_criterion_10_scope_documented():
    readme = (ROOT / "README.md").read_text(encoding="utf-8")
    section = readme.split("## Scope", 1)[-1] if "## Scope" in readme else ""
    ok = "not computed" in section and "existence" in section
    assert report("10", ok, "README documents which existence results are out of computational scope")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
