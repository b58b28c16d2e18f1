import random

import pytest

from leviflat import (
    EXAMPLE_NAMES,
    LeviflatError,
    MixedPoly,
    RationalMap,
    Verdict,
    bihomogenize,
    certify_leviflat,
    coefficient_matrix,
    parse,
    pullback,
    quadratic_cone,
    rank_signature,
    worked_example,
)
from leviflat.coefficient import Coefficient
from leviflat.constructions import CUSP_AFFINE_TEXT, curve_degree, imaginary_part
from leviflat.geometry import degenerate_locus_generators, row_reduce_generators

from _support import random_holomorphic


def test_cone_from_imaginary_part():
    F = RationalMap(parse("z1", 2), parse("z2"))
    assert pullback(F, imaginary_part(1, 1)) == quadratic_cone(1)


def test_unit_circle():
    F = RationalMap(parse("z1", 2), parse("z2"))
    assert pullback(F, parse("z1*~z1 - 1")) == parse("z1*~z1 - z2*~z2")


def test_cusp_pullback_matches_bihomogenization():
    F = RationalMap(parse("z1", 2), parse("z2"))
    S = parse(CUSP_AFFINE_TEXT)
    Q = pullback(F, S)
    assert Q == worked_example("cusp-curve").polynomial == bihomogenize(S)
    assert Q.bidegree() == (3, 3)


def test_rational_map_validation():
    with pytest.raises(ZeroDivisionError):
        RationalMap(parse("z1"), MixedPoly.zero(1))
    with pytest.raises(ValueError):
        RationalMap(parse("~z1"), parse("1", 1))
    with pytest.raises(ValueError):
        pullback(RationalMap(parse("z1"), parse("1", 1)), parse("z1"))
    assert curve_degree(parse("z1^2*~z1 + ~z1^2*z1")) == 2


def test_quadratic_cone_examples():
    c1 = quadratic_cone(1)
    assert rank_signature(coefficient_matrix(c1)) == (2, 1, 1)
    c2 = quadratic_cone(2)
    assert c2.num_vars == 3 and c2 == parse("-1/2*i*(z1*~z2 - ~z1*z2)", 3)
    rep = degenerate_locus_generators(c2)
    assert row_reduce_generators(rep.generators) == [parse("z1", 3), parse("z2", 3)]
    assert rep.dimension_bound + 1 == 1
    assert certify_leviflat(c2).verdict is Verdict.CERTIFIED
    with pytest.raises(ValueError):
        quadratic_cone(0)


def test_registry():
    assert set(EXAMPLE_NAMES) == {"cartan-umbrella", "cusp-curve", "nodegen-quartic",
                                  "quadratic-cone", "brunella"}
    with pytest.raises(LeviflatError):
        worked_example("sphere")


def test_registry_metadata_reproduced():
    for name in EXAMPLE_NAMES:
        rec = worked_example(name)
        P = rec.polynomial
        assert P.is_real_valued() and P.is_bihomogeneous()
        inertia = rank_signature(coefficient_matrix(P))
        exp = rec.expected
        if "rank" in exp:
            assert inertia.rank == exp["rank"][0]
        if "signature" in exp:
            assert (inertia.positives, inertia.negatives) == exp["signature"][0]
        if "leviflat" in exp:
            assert (certify_leviflat(P).verdict is Verdict.CERTIFIED) == exp["leviflat"][0]
        assert all(basis in ("published", "derived") for _, basis in exp.values())
        doc = rec.to_json()
        assert doc["name"] == name and doc["polynomial"]["schema_version"] == 1
        if rec.affine is not None:
            assert bihomogenize(rec.affine) == P


def test_pullback_always_real():
    rng = random.Random(8)
    for _ in range(10):
        f, g = random_holomorphic(rng, 2, 2), random_holomorphic(rng, 2, 2)
        S = parse("z1^2*~z1 + z1*~z1^2 - 2*z1*~z1 + 1/3")
        assert pullback(RationalMap(f, g), S).is_real_valued()


def test_pullback_zero_sets_agree():
    rng = random.Random(12)
    f, g = parse("z1^2 + z2", 2), parse("z1 - 2*z2 + 1", 2)
    S = parse("z1*~z1 - 5")  # the circle |zeta|^2 = 5
    Q = pullback(RationalMap(f, g), S)
    on = off = 0
    while on + off < 50:
        # points with F(p) on the curve: pick z1, then solve f = zeta g for z2
        z1 = Coefficient(rng.randint(-3, 3), rng.randint(-3, 3))
        zeta = rng.choice([Coefficient(1, 2), Coefficient(2, 1), Coefficient(-2, 1),
                           Coefficient(3, 1)]) if on <= off else Coefficient(rng.randint(-3, 3), 1)
        denom = 1 + 2 * zeta
        if not denom:
            continue
        z2 = (zeta * (z1 + 1) - z1 * z1) / denom
        p = [z1, z2]
        gp = g.evaluate(p)
        if not gp:
            continue
        value = S.evaluate([f.evaluate(p) / gp])
        assert (Q.evaluate(p) == 0) == (value == 0)
        if value == 0:
            on += 1
        else:
            off += 1
    assert on >= 10 and off >= 10
