"""Shift-map surjectivity, variety membership, s-regularity certificates."""

from fractions import Fraction

import pytest

from fpowers.gb import IdealHandle, ideal_colon
from fpowers.ring import Poly, VarContext, parse_poly
from fpowers.logder import FactorizationSpec
from fpowers.weyl import WeylOp
from fpowers.bside import bs_ideal
from fpowers.nabla import (
    bs_variety_membership,
    nabla_surjective,
    s_regularity_check,
)


VC1 = VarContext([("X", ["x"])])
VC2 = VarContext([("X", ["x", "y"])])
VC3 = VarContext([("X", ["x", "y", "z"])])


def p(s, vc):
    return parse_poly(s, vc)


def F_x():
    return FactorizationSpec(["x"], [p("x", VC1)])


def F_xy():
    return FactorizationSpec(["x", "y"], [p("x", VC2), p("y", VC2)])


def F_lines():
    return FactorizationSpec(
        ["x", "y"], [p("x", VC2), p("y", VC2), p("x + y", VC2)])


def F_mixed():
    return FactorizationSpec(["x", "y", "z"],
                             [p("x", VC3), p("2*x^2 + y*z", VC3)])


def F_cubic():
    return FactorizationSpec(["x", "y", "z"], [p("2*x^3 + x*y*z", VC3)])


# ---------------------------------------------------------------------------
# nabla_surjective


def test_surjective_at_generic_point():
    rep = nabla_surjective(F_xy(), [1, 1])
    assert rep.surjective
    # certificate multiplies out to 1 against the specialized generators
    total = WeylOp.zero(rep.generators[0].ctx)
    for c, g in zip(rep.certificate, rep.generators):
        total = total + c * g
    assert total == WeylOp.const(rep.generators[0].ctx, Fraction(1))


def test_not_surjective_at_origin():
    rep = nabla_surjective(F_xy(), [0, 0])
    assert not rep.surjective
    assert rep.certificate is None


def test_reduced_free_reports_injectivity_both_ways():
    assert nabla_surjective(F_xy(), [1, 1]).injective == "yes"
    assert nabla_surjective(F_xy(), [0, 0]).injective == "no"


def test_arrangement_resonance_point():
    # A-1 = (-2/3, -2/3, -2/3) lies on {s1+s2+s3+2 = 0}
    rep = nabla_surjective(F_lines(), [Fraction(1, 3)] * 3)
    assert not rep.surjective
    assert rep.injective == "no"


def test_point_length_checked():
    with pytest.raises(ValueError):
        nabla_surjective(F_xy(), [1])


def test_non_free_fixture_one_way_implication():
    # 2x^3+xyz is not free, so only injective => surjective applies
    rep = nabla_surjective(F_mixed(), [0, 0])
    assert not rep.surjective
    assert rep.injective == "no"
    rep = nabla_surjective(F_mixed(), [1, 1])
    assert rep.surjective
    assert rep.injective == "unknown"


# ---------------------------------------------------------------------------
# consistency with the variety of B_F


def test_off_variety_implies_surjective():
    cases = [
        (F_xy(), [(1, 1), (2, -3), (0, 1)]),
        (F_mixed(), [(1, 1), (-2, -3), (0, 0)]),
    ]
    for F, points in cases:
        B = bs_ideal(F)
        for A in points:
            Am1 = [Fraction(a) - 1 for a in A]
            rep = nabla_surjective(F, list(A))
            if not bs_variety_membership(B, Am1):
                assert rep.surjective


def test_on_variety_examples_not_surjective():
    # the converse is not a theorem, but it holds at these worked points
    assert not nabla_surjective(F_xy(), [0, 0]).surjective
    assert not nabla_surjective(F_mixed(), [0, 0]).surjective
    assert not nabla_surjective(F_mixed(),
                                [Fraction(-1, 3), Fraction(-1, 3)]).surjective


def test_diagonal_compatibility():
    # A = (a, a) against the single-factor picture at a
    Fm, Ff = F_mixed(), F_cubic()
    for a in (Fraction(1), Fraction(0), Fraction(-1, 3)):
        assert nabla_surjective(Fm, [a, a]).surjective == \
            nabla_surjective(Ff, [a]).surjective


# ---------------------------------------------------------------------------
# bs_variety_membership


def test_membership_basic():
    B = bs_ideal(F_xy())
    assert bs_variety_membership(B, [-1, 5])
    assert bs_variety_membership(B, [7, -1])
    assert not bs_variety_membership(B, [0, 0])


def test_membership_cubic_roots():
    B = bs_ideal(F_cubic())
    for root in (Fraction(-1), Fraction(-4, 3), Fraction(-5, 3)):
        assert bs_variety_membership(B, [root])
    assert not bs_variety_membership(B, [Fraction(-2, 3)])


def test_membership_length_checked():
    B = bs_ideal(F_xy())
    with pytest.raises(ValueError):
        bs_variety_membership(B, [1])


# ---------------------------------------------------------------------------
# s-regularity


def test_s_regularity_normal_crossing():
    rep = s_regularity_check(F_xy())
    assert rep.passed
    assert rep.steps == [("s1", True), ("s2", True)]
    assert rep.final_quotient_matches
    assert bool(rep)


def test_s_regularity_single_smooth():
    rep = s_regularity_check(F_x())
    assert rep.passed and rep.final_quotient_matches


def test_s_regularity_mixed():
    rep = s_regularity_check(F_mixed())
    assert rep.passed and rep.final_quotient_matches


def test_s_regularity_three_lines():
    rep = s_regularity_check(F_lines())
    assert rep.passed and rep.final_quotient_matches


def test_s_regularity_permutation_invariant():
    # homogeneous regular sequences permute
    F = F_mixed()
    assert s_regularity_check(F, s_order=[1, 0]).passed
    F3 = F_lines()
    for perm in ([2, 0, 1], [1, 2, 0]):
        assert s_regularity_check(F3, s_order=perm).passed


def test_s_regularity_rejects_bad_permutation():
    with pytest.raises(ValueError):
        s_regularity_check(F_xy(), s_order=[0, 0])


# ---------------------------------------------------------------------------
# the commutative regular-sequence lemmas behind the Koszul reductions,
# exercised on small instances


def test_colon_detects_regularity():
    vc = VarContext([("X", ["u", "v"])])
    zero = IdealHandle.zero(vc)
    u, v = p("u", vc), p("v", vc)
    # u regular on Q[u,v]; v regular on Q[u,v]/(u)
    assert zero.contains_ideal(ideal_colon(zero, u))
    I = IdealHandle([u])
    assert I.contains_ideal(ideal_colon(I, v))
    # but u*v is a zero divisor mod (u)
    assert not I.contains_ideal(ideal_colon(I, p("u*v", vc)))


def test_central_powers_stay_regular():
    # if c is regular mod I then so is c^k
    vc = VarContext([("X", ["u", "v", "w"])])
    I = IdealHandle([p("u*v - w^2", vc)])
    c = p("u + v + w", vc)
    for k in (1, 2, 3):
        ck = Poly.const(vc, Fraction(1))
        for _ in range(k):
            ck = ck * c
        assert I.contains_ideal(ideal_colon(I, ck))


def test_koszul_two_term_exactness_small():
    # for a length-2 regular sequence (a, b): syzygies of (a, b) are the
    # Koszul one, i.e. (b, -a) generates them over Q[u,v]
    from fpowers.gb import syzygies, module_contains
    vc = VarContext([("X", ["u", "v"])])
    a, b = p("u", vc), p("v", vc)
    syz = syzygies([[a], [b]])
    koszul = [b, a * Fraction(-1)]
    for row in syz:
        assert module_contains([koszul], list(row))
