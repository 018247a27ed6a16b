import math
import random
from fractions import Fraction as F

import pytest

from bicheb.bipartite import QuarticCoeffs
from bicheb.elliptic import (
    BRANCH_ARCCOS,
    BRANCH_ARCSINH,
    BRANCH_LOG,
    ClassNotCovered,
    ClosedForm,
    IntervalNotValid,
    Refusal,
    closed_form_for_divisor,
    complete_coefficient,
    decide,
    numeric_check,
    render,
    render_refusal,
    sign_regions,
    validity_intervals,
)
from bicheb.poly import Poly

WORKED = QuarticCoeffs.of(-2, -3, 2, 2)
SYMMETRIC = QuarticCoeffs.of(0, -5, 0, 4)
HYPER = QuarticCoeffs.of(0, -2, 0, 2)
LOG = QuarticCoeffs.of(0, 2, 0, 1)
AUX_FAIL = QuarticCoeffs.of(0, -3, 1, 1)


# -- decisions ----------------------------------------------------------------


def test_decide_symmetric_quartic():
    cf = decide(2, SYMMETRIC)
    assert isinstance(cf, ClosedForm)
    assert cf.s == 2 and cf.branch == BRANCH_ARCCOS
    assert cf.m2 == F(9, 4)
    assert cf.g_over_m() == Poly((F(-5, 3), F(0), F(2, 3)))


def test_decide_worked_circular():
    cf = decide(3, WORKED)
    assert cf.s == 3 and cf.d == 9 and cf.m2 == 1
    assert cf.G == Poly((F(3), F(0), F(-3), F(1))) and cf.convention == "g"
    assert not cf.residual()


def test_decide_hyperbolic_and_composition():
    cf = decide(2, HYPER)
    assert cf.branch == BRANCH_ARCSINH and cf.d == -4
    cf6 = decide(6, HYPER)
    u = Poly((F(-1), F(0), F(1)))
    assert cf6.G == (u * u * u).scale(4) + u.scale(3)
    assert not cf6.residual()


def test_decide_first_hit_refusal_even_outer():
    out = decide(4, HYPER)
    assert isinstance(out, Refusal)
    assert "even outer degree" in out.reason
    by_s = {dv.s: dv for dv in out.divisors}
    assert by_s[2].note == "rejected-even-outer-on-hyperbolic"
    # the scan is pinned to the first conditions-satisfying divisor even
    # though s = 4 would admit a circular solution; its diagnostics are
    # still reported
    assert by_s[4].f1 == 0 and by_s[4].aux == 0 and by_s[4].d == 4


def test_decide_logarithmic():
    cf = decide(2, LOG)
    assert cf.branch == BRANCH_LOG and cf.d == 0 and cf.m2 == 0
    assert cf.G == Poly((F(1), F(0), F(1)))


def test_decide_negative_control():
    out = decide(2, AUX_FAIL)
    assert isinstance(out, Refusal)
    dv = out.divisors[0]
    assert dv.f1 == 0 and dv.aux == 1


def test_decide_n1_has_no_divisors():
    out = decide(1, WORKED)
    assert isinstance(out, Refusal)


def test_decide_smallest_divisor_preferred():
    cf = decide(4, SYMMETRIC)
    assert cf.s == 2 and cf.N == 2 and cf.convention == "g-over-m"
    u = Poly((F(-5, 2), F(0), F(1)))
    assert cf.G == (u * u).scale(F(8, 9)) - Poly.one()


# -- validity intervals ---------------------------------------------------------


def test_validity_intervals_worked():
    regions = validity_intervals(WORKED.poly(), BRANCH_ARCCOS)
    assert len(regions) == 2
    (lo1, hi1), (lo2, hi2) = regions
    assert lo1.exact and lo1.lo == -1
    assert abs(hi1.value() - (1 - math.sqrt(3))) < 1e-9
    assert lo2.exact and lo2.lo == 1
    assert abs(hi2.value() - (1 + math.sqrt(3))) < 1e-9


def test_validity_intervals_everywhere_positive():
    regions = validity_intervals(HYPER.poly(), BRANCH_ARCSINH)
    assert regions == [(None, None)]
    assert sign_regions(LOG.poly(), -1) == []


def test_validity_intervals_log():
    regions = validity_intervals(LOG.poly(), BRANCH_LOG)
    assert regions == [(None, None)]


# -- pieces and signs -------------------------------------------------------------


def test_pieces_split_at_interior_stationary_points():
    cf = decide(3, WORKED)
    # g' = 3x(x-2): x = 2 lies inside (1, 1+sqrt3) and forces a sign flip;
    # x = 0 lies in a p>0 gap and is not a kink
    assert len(cf.pieces) == 3
    sigmas = [p.sigma for p in cf.pieces]
    assert sigmas[1] != sigmas[2]


def test_piece_sign_matches_derivative_everywhere():
    rng = random.Random(4)
    for cf in (decide(3, WORKED), decide(2, SYMMETRIC), decide(2, HYPER),
               decide(2, LOG), decide(6, HYPER), decide(4, SYMMETRIC)):
        pf = cf.c.poly().to_float()
        for piece in cf.pieces:
            lo, hi = piece.lo_float(), piece.hi_float()
            lo = max(lo, -4.0)
            hi = min(hi, 4.0)
            if hi - lo < 1e-3:
                continue
            span = hi - lo
            h = 1e-6 * span
            for _ in range(25):
                x = rng.uniform(lo + 0.02 * span, hi - 0.02 * span)
                rad = cf.radicand_sign * pf.eval(x)
                if rad <= 1e-7:
                    continue
                got = (
                    cf.antiderivative(piece, x + h) - cf.antiderivative(piece, x - h)
                ) / (2 * h)
                want = x / math.sqrt(rad)
                assert abs(got - want) <= 1e-6 * max(1.0, abs(want)), (cf.branch, x)


# -- numeric checks ----------------------------------------------------------------


def test_numeric_check_worked():
    cf = decide(3, WORKED)
    assert numeric_check(cf, (-0.95, -0.75), 1e-10) <= 1e-8


def test_numeric_check_hyperbolic_and_log():
    assert numeric_check(decide(2, HYPER), (0.0, 1.0), 1e-10) <= 1e-8
    assert numeric_check(decide(2, LOG), (1.0, 2.0), 1e-12) <= 1e-10


def test_numeric_check_rejects_wrong_region():
    cf = decide(3, WORKED)
    with pytest.raises(IntervalNotValid):
        numeric_check(cf, (0.0, 0.5), 1e-8)  # p > 0 there
    with pytest.raises(IntervalNotValid):
        numeric_check(cf, (1.2, 2.5), 1e-8)  # spans the kink at x = 2


def test_divisor_consistency_modulo_sign_and_constant():
    # both s = 2 and s = 4 are admissible for n = 4 over (x^2-1)(x^2-4)
    cf2 = decide(4, SYMMETRIC)
    cf4 = closed_form_for_divisor(4, 4, SYMMETRIC)
    assert cf2.s == 2 and cf4.s == 4
    assert not cf4.residual()
    p2 = cf2.piece_for(1.2, 1.5)
    p4 = cf4.piece_for(1.2, 1.5)
    x0 = 1.25
    xs = [1.3 + 0.05 * i for i in range(5)]
    d2 = [cf2.antiderivative(p2, x) - cf2.antiderivative(p2, x0) for x in xs]
    d4 = [cf4.antiderivative(p4, x) - cf4.antiderivative(p4, x0) for x in xs]
    flip = 1.0 if abs(d2[0] - d4[0]) < abs(d2[0] + d4[0]) else -1.0
    for a, b in zip(d2, d4):
        assert abs(a - flip * b) <= 1e-8


# -- rendering -----------------------------------------------------------------------


def test_render_deterministic():
    cf = decide(3, WORKED)
    assert render(cf, "text") == render(cf, "text")
    assert render(cf, "json") == render(cf, "json")
    text = render(cf, "text")
    assert "arccos" in text and "(1/3)" in text
    latex = render(cf, "latex")
    assert r"\arccos" in latex


def test_render_json_schema():
    import json

    cf = decide(2, SYMMETRIC)
    payload = json.loads(render(cf, "json"))
    assert payload["status"] == "decided-yes"
    assert set(payload) >= {"n", "s", "branch", "d", "m2", "G", "intervals",
                            "residual_zero", "numeric_error"}
    assert payload["d"] == "9" and payload["m2"] == "9/4"
    assert payload["G"]["convention"] == "g"
    assert payload["residual_zero"] is True
    assert all(set(iv) >= {"lo", "hi", "sigma"} for iv in payload["intervals"])


def test_render_refusal_lists_divisors():
    out = decide(2, AUX_FAIL)
    txt = render_refusal(out, "text")
    assert "aux=1" in txt
    import json

    payload = json.loads(render_refusal(out, "json"))
    assert payload["status"] == "decided-no"
    assert payload["divisors"][0]["F1"] == "0"


# -- coefficient completion ------------------------------------------------------------


def test_complete_even_class():
    r = complete_coefficient(2, {2: F(-5), 3: F(0), 4: F(4)}, 1)
    assert r.s == 2
    assert [e.root.lo for e in r.entries] == [0]
    assert r.entries[0].note == "decided-yes"


def test_complete_c2_class():
    r = complete_coefficient(3, {1: F(-2), 3: F(2), 4: F(2)}, 2)
    assert r.s == 3
    assert [e.root.lo for e in r.entries] == [-3]
    assert r.entries[0].note == "decided-yes"


def test_complete_negative_control():
    r = complete_coefficient(2, {2: F(-3), 3: F(1), 4: F(1)}, 1)
    assert [e.root.lo for e in r.entries] == [0]
    assert r.entries[0].note == "decided-no"
    assert isinstance(r.entries[0].outcome, Refusal)


def test_complete_class_not_covered():
    with pytest.raises(ClassNotCovered):
        complete_coefficient(9, {2: F(-1), 3: F(0), 4: F(1)}, 1)  # no even divisor
    with pytest.raises(ClassNotCovered):
        complete_coefficient(9, {1: F(0), 2: F(-1), 3: F(0)}, 4)  # none = 5 mod 8
    with pytest.raises(ClassNotCovered):
        complete_coefficient(6, {1: F(0), 2: F(-1), 4: F(1)}, 3)  # c3 never covered


def test_complete_forced_divisor():
    r = complete_coefficient(4, {2: F(-2), 3: F(0), 4: F(0)}, 1, force_s=2)
    assert r.s == 2 and [e.root.lo for e in r.entries] == [0]


def test_complete_c4_class():
    # n = 5: s = 5 is 5 mod 8, F_1 linear in c4
    r = complete_coefficient(5, {1: F(1), 2: F(-1), 3: F(0)}, 4)
    assert r.s == 5 and len(r.entries) == 1
    assert r.entries[0].root.exact


def test_complete_nonempty_spot_check():
    rng = random.Random(71)
    for n in (2, 6, 10):
        for _ in range(3):
            fixed = {
                k: F(rng.randint(-12, 12), rng.randint(1, 4)) for k in (2, 3, 4)
            }
            r = complete_coefficient(n, fixed, 1)
            assert len(r.entries) >= 1


# -- edge cases and randomized branch sweep ---------------------------------------


def test_log_branch_with_double_roots():
    # p = (x^2 - 1)^2: both roots double, g = x^2 - 1 changes sign inside (-1, 1)
    cf = decide(2, QuarticCoeffs.of(0, -2, 0, 1))
    assert cf.branch == BRANCH_LOG and cf.G == Poly((F(-1), F(0), F(1)))
    sigmas = {(p.lo_float(), p.hi_float()): p.sigma for p in cf.pieces}
    assert sigmas[(-1.0, 1.0)] == -1
    assert sigmas[(1.0, math.inf)] == 1
    assert numeric_check(cf, (-0.5, 0.5), 1e-10) <= 1e-10


def test_hyperbolic_with_irrational_m():
    # x^4 - x^2 + 1: d = -3, m = sqrt(3)/2
    c = QuarticCoeffs.of(0, -1, 0, 1)
    cf = decide(2, c)
    assert cf.branch == BRANCH_ARCSINH and cf.m2 == F(3, 4)
    assert numeric_check(cf, (0.0, 1.5), 1e-10) <= 1e-8
    cf6 = decide(6, c)
    assert not cf6.residual()
    assert numeric_check(cf6, (-1.0, 1.0), 1e-10) <= 1e-8


def test_randomized_branch_sweep_s2():
    # the s = 2 solvable locus is c1 = c3 = 0; random (c2, c4) reach all
    # three branches, every decision re-verified numerically on one piece
    rng = random.Random(1234)
    seen = set()
    for _ in range(40):
        c2 = F(rng.randint(-8, 8), rng.randint(1, 3))
        c4 = F(rng.randint(-8, 8), rng.randint(1, 3))
        out = decide(2, QuarticCoeffs.of(0, c2, 0, c4))
        assert isinstance(out, ClosedForm)
        assert not out.residual()
        seen.add(out.branch)
        span = out.default_check_interval()
        if span is not None and span[1] - span[0] > 1e-3:
            assert numeric_check(out, span, 1e-9) <= 1e-7
    assert {BRANCH_ARCCOS, BRANCH_ARCSINH} <= seen


def test_randomized_branch_sweep_s3_family():
    rng = random.Random(4321)
    for _ in range(10):
        c1 = F(rng.randint(-6, 6), rng.randint(1, 3))
        c3 = F(rng.randint(-6, 6), rng.randint(1, 3))
        c = QuarticCoeffs(c1, -F(3, 4) * c1 * c1, c3, -c1 * c3 / 2)
        out = decide(3, c)
        assert isinstance(out, ClosedForm)
        assert not out.residual()
        span = out.default_check_interval()
        if span is not None and span[1] - span[0] > 1e-3:
            assert numeric_check(out, span, 1e-9) <= 1e-7


def test_higher_degree_compositions():
    # n = 6 over (x^2+1)^2: logarithmic with outer power 3
    cf6 = decide(6, QuarticCoeffs.of(0, 2, 0, 1))
    assert cf6.branch == BRANCH_LOG and cf6.G == Poly((F(1), F(0), F(1))) ** 3
    assert numeric_check(cf6, (1.0, 2.0), 1e-10) <= 1e-8

    # n = 9 over the worked quartic: T_3 of the cubic inner polynomial;
    # |g| = m preimages (u = +-1/2) refine the pieces inside each region
    cf9 = decide(9, WORKED)
    assert cf9.s == 3 and cf9.G.degree == 9 and not cf9.residual()
    assert len(cf9.pieces) == 9
    assert numeric_check(cf9, (-0.93, -0.82), 1e-10) <= 1e-8
    assert numeric_check(cf9, (1.6, 1.95), 1e-10) <= 1e-8

    # n = 10 hyperbolic: outer degree 5 is odd, single piece across the line
    cf10 = decide(10, HYPER)
    assert cf10.s == 2 and cf10.G.degree == 10 and not cf10.residual()
    assert numeric_check(cf10, (-2.0, 2.0), 1e-10) <= 1e-8
