import random
from fractions import Fraction as F

import pytest

from bicheb.poly import Poly
from bicheb.roots import (
    count_roots_halfopen,
    isolate_squarefree,
    real_roots,
    squarefree_decomposition,
    sturm_chain,
    variations_at,
)


def roots_of(p, **kw):
    return real_roots(p, **kw)


def as_values(found):
    return [r.lo if r.exact else (r.lo, r.hi) for r in found]


def test_simple_quadratic():
    found = roots_of(Poly((F(-1), F(0), F(1))))
    assert [r.lo for r in found] == [-1, 1]
    assert all(r.exact and r.multiplicity == 1 for r in found)


def test_quartic_with_mixed_rational_irrational_roots():
    # x^4 - 2x^3 - 3x^2 + 2x + 2 = (x^2 - 1)(x^2 - 2x - 2)
    p = Poly((F(2), F(2), F(-3), F(-2), F(1)))
    found = roots_of(p)
    assert len(found) == 4
    assert found[0].exact and found[0].lo == -1
    assert found[2].exact and found[2].lo == 1
    # irrational pair 1 -+ sqrt3
    import math

    assert abs(found[1].value() - (1 - math.sqrt(3))) < 1e-9
    assert abs(found[3].value() - (1 + math.sqrt(3))) < 1e-9
    assert not found[1].exact and not found[3].exact


def test_derivative_roots():
    p = Poly((F(0), F(-6), F(3)))  # 3x^2 - 6x
    assert [r.lo for r in roots_of(p)] == [0, 2]


def test_multiplicities():
    p = Poly.from_roots([F(1), F(1), F(1), F(-2), F(-2)])
    found = roots_of(p)
    assert [(r.lo, r.multiplicity) for r in found] == [(-2, 2), (1, 3)]


def test_no_real_roots():
    p = Poly((F(2), F(0), F(-2), F(0), F(1)))  # (x^2-1)^2 + 1
    assert roots_of(p) == []


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        real_roots(Poly(()))


def test_interval_restriction_closed():
    p = Poly.from_roots([F(-1), F(0), F(1), F(2)])
    inside = roots_of(p, interval=(F(0), F(2)))
    assert [r.lo for r in inside] == [0, 1, 2]  # closed interval keeps endpoints


def test_known_random_rational_roots_roundtrip():
    rng = random.Random(99)
    for _ in range(15):
        roots = sorted(
            {F(rng.randint(-8, 8), rng.randint(1, 6)) for _ in range(rng.randint(1, 5))}
        )
        p = Poly.from_roots(roots)
        found = roots_of(p)
        assert [r.lo for r in found] == roots
        assert all(r.exact for r in found)


def test_sturm_count_matches_found_roots():
    rng = random.Random(7)
    for _ in range(10):
        p = Poly([F(rng.randint(-9, 9)) for _ in range(rng.randint(3, 7))] + [F(1)])
        sq = squarefree_decomposition(p)
        base = Poly.one()
        for f, _ in sq:
            base = base * f
        chain = sturm_chain(base)
        lo, hi = F(-100), F(100)
        count = count_roots_halfopen(chain, lo, hi)
        assert count == len(real_roots(p, interval=(lo, hi)))


def test_variation_count_interval_query():
    # roots of (x-1)(x-2)(x-3) counted in assorted half-open intervals
    p = Poly.from_roots([F(1), F(2), F(3)])
    chain = sturm_chain(p)
    assert count_roots_halfopen(chain, F(0), F(4)) == 3
    assert count_roots_halfopen(chain, F(1), F(2)) == 1  # (1, 2] holds only 2
    assert count_roots_halfopen(chain, F(3, 2), F(5, 2)) == 1
    assert variations_at(chain, F(0)) - variations_at(chain, F(4)) == 3


def test_isolate_respects_width():
    p = Poly((F(-2), F(0), F(1)))  # sqrt2
    wide = isolate_squarefree(p, width=F(1, 8))
    assert all(r.hi - r.lo <= F(1, 8) for r in wide if not r.exact)
    tight = isolate_squarefree(p, width=F(1, 2**40))
    assert all(r.hi - r.lo <= F(1, 2**40) for r in tight if not r.exact)


def test_disjoint_isolating_intervals():
    # cluster of close roots
    p = Poly.from_roots([F(1), F(101, 100), F(102, 100)]) * Poly((F(-2), F(0), F(1)))
    found = roots_of(p)
    assert len(found) == 5
    for a, b in zip(found, found[1:]):
        assert a.hi < b.lo or (a.exact and b.exact and a.lo < b.lo)


def test_squarefree_decomposition():
    p = Poly.from_roots([F(1), F(1), F(2)])
    decomp = squarefree_decomposition(p)
    assert (Poly.from_roots([F(2)]), 1) in decomp
    assert (Poly.from_roots([F(1)]), 2) in decomp
